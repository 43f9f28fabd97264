#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gclab/cochain.hpp"
#include "gclab/extension.hpp"
#include "gclab/galois.hpp"
#include "gclab/gmodule.hpp"
#include "gclab/group.hpp"
#include "gclab/groupoid.hpp"
#include "gclab/morita.hpp"
#include "gclab/torsor.hpp"

namespace gclab {

// A parsed input file: named records in one namespace, each validated by its
// module's validator at parse time. References are by name and must point at
// an earlier record of the expected kind. The format is strict JSON: unknown
// keys, non-integer numbers, duplicate names, and dangling references are
// all rejected (see docs/spec-format.md for the record reference).
struct SpecDocument {
  struct CochainRecord {
    std::string module;
    Cochain value;
  };
  struct ExtensionRecord {
    std::string module, cocycle;
    GroupExtension value;
  };
  struct SectionRecord {
    std::string extension;
    Section value;
  };
  struct TorsorRecord {
    std::string groupoid;
    GroupoidTorsor value;
  };
  struct FamilyRecord {
    std::string groupoid, coefficients;
    BoundingFamily value;
  };
  struct EquivariantGroupoidRecord {
    std::string groupoid, module, family;  // family empty when absent
    EquivariantGroupoid value;
  };
  struct EquivariantTorsorRecord {
    std::string groupoid, torsor;  // groupoid names an equivariant_groupoid
    EquivariantTorsor value;
  };
  struct BitorsorRecord {
    std::string left, right;
    Bitorsor value;
  };

  std::vector<std::pair<std::string, std::string>> order;  // (name, kind)
  std::map<std::string, FiniteGroup> groups;  // "group" and "cyclic_product"
  std::map<std::string, AbelianGroup> abelians;  // "cyclic_product" only
  std::map<std::string, GModule> modules;
  std::map<std::string, CochainRecord> cochains;
  std::map<std::string, ExtensionRecord> extensions;
  std::map<std::string, SectionRecord> sections;
  std::map<std::string, Groupoid> groupoids;
  std::map<std::string, TorsorRecord> torsors;
  std::map<std::string, FamilyRecord> families;
  std::map<std::string, EquivariantGroupoidRecord> equivariant_groupoids;
  std::map<std::string, EquivariantTorsorRecord> equivariant_torsors;
  std::map<std::string, BitorsorRecord> bitorsors;
};

// Parses and validates a document from JSON text. ValidationError for
// format or mathematical violations.
SpecDocument parse_spec_document(const std::string& text);

// Reads the file (IoError when unreadable) and parses it.
SpecDocument load_spec_document(const std::string& path);

}  // namespace gclab
