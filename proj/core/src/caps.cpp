#include "gclab/caps.hpp"

#include <cstdlib>
#include <string>

namespace gclab {

i64 enumeration_cap() {
  i64 cap = kDefaultEnumerationCap;
  if (const char* env = std::getenv("GCLAB_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) {
      cap = static_cast<i64>(v);
      if (cap > kHardEnumerationCap) cap = kHardEnumerationCap;
    }
  }
  return cap;
}

void check_enumeration_budget(i64 need, const char* what) {
  if (need < 0 || need > enumeration_cap()) {
    throw CapExceeded(std::string(what) + ": search space of size " +
                      (need < 0 ? std::string(">2^62") : std::to_string(need)) +
                      " exceeds enumeration cap " +
                      std::to_string(enumeration_cap()) +
                      " (raise with GCLAB_CAP up to " +
                      std::to_string(kHardEnumerationCap) + ")");
  }
}

}  // namespace gclab
