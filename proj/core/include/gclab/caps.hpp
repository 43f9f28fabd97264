#pragma once

#include "gclab/errors.hpp"

namespace gclab {

// Desk-scale guard rails. Exhaustive validators refuse inputs past these
// rather than checking them partially.
inline constexpr int kGroupOrderCap = 512;
inline constexpr int kGroupoidArrowCap = 2048;
inline constexpr int kTorsorIsoCarrierCap = 64;
inline constexpr i64 kDefaultEnumerationCap = i64(1) << 20;
inline constexpr i64 kHardEnumerationCap = i64(1) << 24;

// Current enumeration cap: default, or GCLAB_CAP from the environment,
// clamped to the hard cap.
i64 enumeration_cap();

// Throws CapExceeded when a search of `need` nodes is over the current cap
// (negative `need` means a size computation already overflowed).
void check_enumeration_budget(i64 need, const char* what);

}  // namespace gclab
