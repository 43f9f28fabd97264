#include "gclab/specdoc.hpp"

#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gclab {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& msg) {
  fail(ValidationError::Code::InvalidInput, {}, msg);
}

void check_keys(const Json& obj, const std::string& where,
                const std::set<std::string>& required,
                const std::set<std::string>& optional = {}) {
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    if (!required.count(key) && !optional.count(key))
      bad("unknown key '" + key + "' in " + where);
  }
  for (const std::string& key : required)
    if (!obj.contains(key)) bad(where + " needs key '" + key + "'");
}

i64 get_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(where + " must be an integer");
  return v.get<i64>();
}

std::string get_string(const Json& v, const std::string& where) {
  if (!v.is_string()) bad(where + " must be a string");
  return v.get<std::string>();
}

std::vector<i64> get_ints(const Json& v, const std::string& where) {
  if (!v.is_array()) bad(where + " must be an array of integers");
  std::vector<i64> out;
  out.reserve(v.size());
  for (const Json& e : v) out.push_back(get_int(e, where + " entry"));
  return out;
}

template <typename Int>
std::vector<Int> get_row(const Json& v, const std::string& where) {
  std::vector<i64> raw = get_ints(v, where);
  return std::vector<Int>(raw.begin(), raw.end());
}

template <typename Int>
std::vector<std::vector<Int>> get_matrix(const Json& v, const std::string& where) {
  if (!v.is_array()) bad(where + " must be an array of integer rows");
  std::vector<std::vector<Int>> out;
  out.reserve(v.size());
  for (const Json& row : v) out.push_back(get_row<Int>(row, where + " row"));
  return out;
}

struct Parser {
  SpecDocument doc;
  std::map<std::string, std::string> kinds;  // name -> kind

  void claim(const std::string& name, const std::string& kind) {
    if (name.empty()) bad("record names must be nonempty");
    if (kinds.count(name)) bad("duplicate record name '" + name + "'");
    kinds[name] = kind;
    doc.order.emplace_back(name, kind);
  }

  std::string ref(const Json& v, const std::string& where, const std::string& kind) {
    std::string name = get_string(v, where);
    auto it = kinds.find(name);
    if (it == kinds.end())
      bad(where + " references '" + name + "' which is not defined yet");
    bool group_like = kind == "group" && it->second == "cyclic_product";
    if (it->second != kind && !group_like)
      bad(where + " references '" + name + "' of kind " + it->second + ", expected " +
          kind);
    return name;
  }

  void parse_record(const Json& rec) {
    if (!rec.is_object()) bad("records must be objects");
    if (!rec.contains("kind") || !rec.contains("name"))
      bad("every record needs 'kind' and 'name'");
    std::string kind = get_string(rec["kind"], "record kind");
    std::string name = get_string(rec["name"], "record name");
    std::string where = "record '" + name + "'";

    if (kind == "cyclic_product") {
      check_keys(rec, where, {"kind", "name", "moduli"});
      AbelianGroup A = group_from_cyclic_factors(get_ints(rec["moduli"], where));
      claim(name, kind);
      doc.abelians[name] = A;
      doc.groups[name] = A.to_group();
    } else if (kind == "group") {
      check_keys(rec, where, {"kind", "name", "cayley"}, {"labels"});
      auto rows = get_matrix<int>(rec["cayley"], where);
      int order = static_cast<int>(rows.size());
      std::vector<int> flat;
      for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != order)
          bad(where + " cayley rows must form a square table");
        flat.insert(flat.end(), row.begin(), row.end());
      }
      std::vector<std::string> labels;
      if (rec.contains("labels")) {
        if (!rec["labels"].is_array()) bad(where + " labels must be an array");
        for (const Json& l : rec["labels"])
          labels.push_back(get_string(l, where + " label"));
      }
      claim(name, kind);
      doc.groups[name] = validate_group(order, std::move(flat), std::move(labels));
    } else if (kind == "gmodule") {
      check_keys(rec, where, {"kind", "name", "group", "coefficients"},
                 {"action", "trivial"});
      std::string gname = ref(rec["group"], where, "group");
      std::string aname = ref(rec["coefficients"], where, "cyclic_product");
      const FiniteGroup& G = doc.groups.at(gname);
      const AbelianGroup& A = doc.abelians.at(aname);
      bool trivial = rec.contains("trivial");
      if (trivial == rec.contains("action"))
        bad(where + " needs exactly one of 'action' and 'trivial'");
      GModule M;
      if (trivial) {
        if (!rec["trivial"].is_boolean() || !rec["trivial"].get<bool>())
          bad(where + " key 'trivial' must be true when present");
        M = trivial_gmodule(G, A);
      } else {
        M = validate_gmodule(G, A, get_matrix<i64>(rec["action"], where));
      }
      claim(name, kind);
      doc.modules[name] = std::move(M);
    } else if (kind == "cochain") {
      check_keys(rec, where, {"kind", "name", "module", "degree", "values"});
      std::string mname = ref(rec["module"], where, "gmodule");
      Cochain c;
      c.degree = static_cast<int>(get_int(rec["degree"], where + " degree"));
      c.values = get_ints(rec["values"], where);
      check_cochain_shape(doc.modules.at(mname), c);
      claim(name, kind);
      doc.cochains[name] = {mname, std::move(c)};
    } else if (kind == "extension") {
      check_keys(rec, where, {"kind", "name", "cocycle"});
      std::string cname = ref(rec["cocycle"], where, "cochain");
      const auto& crec = doc.cochains.at(cname);
      GroupExtension E = extension_from_cocycle(doc.modules.at(crec.module), crec.value);
      claim(name, kind);
      doc.extensions[name] = {crec.module, cname, std::move(E)};
    } else if (kind == "section") {
      check_keys(rec, where, {"kind", "name", "extension", "images"});
      std::string ename = ref(rec["extension"], where, "extension");
      Section s =
          section_from_images(doc.extensions.at(ename).value, get_ints(rec["images"], where));
      claim(name, kind);
      doc.sections[name] = {ename, std::move(s)};
    } else if (kind == "groupoid") {
      check_keys(rec, where, {"kind", "name", "n_objects", "src", "tgt", "compose"});
      int n_objects = static_cast<int>(get_int(rec["n_objects"], where + " n_objects"));
      auto src = get_row<int>(rec["src"], where + " src");
      auto tgt = get_row<int>(rec["tgt"], where + " tgt");
      auto rows = get_matrix<int>(rec["compose"], where + " compose");
      std::vector<std::array<int, 3>> triples;
      triples.reserve(rows.size());
      for (const auto& row : rows) {
        if (row.size() != 3)
          bad(where + " compose entries must be [f, g, f-then-g] triples");
        triples.push_back({row[0], row[1], row[2]});
      }
      claim(name, kind);
      doc.groupoids[name] = assemble_groupoid(n_objects, std::move(src), std::move(tgt), triples);
    } else if (kind == "torsor") {
      check_keys(rec, where,
                 {"kind", "name", "groupoid", "carrier", "base", "proj", "anchor", "action"});
      std::string xname = ref(rec["groupoid"], where, "groupoid");
      GroupoidTorsor P;
      P.X = doc.groupoids.at(xname);
      P.n_carrier = get_int(rec["carrier"], where + " carrier");
      P.n_base = get_int(rec["base"], where + " base");
      P.proj = get_ints(rec["proj"], where + " proj");
      P.anchor = get_ints(rec["anchor"], where + " anchor");
      P.action = get_matrix<i64>(rec["action"], where + " action");
      claim(name, kind);
      doc.torsors[name] = {xname, validate_torsor(P)};
    } else if (kind == "bounding_family") {
      check_keys(rec, where, {"kind", "name", "groupoid", "coefficients", "iso"});
      std::string xname = ref(rec["groupoid"], where, "groupoid");
      std::string aname = ref(rec["coefficients"], where, "cyclic_product");
      BoundingFamily fam;
      fam.A = doc.abelians.at(aname);
      fam.iso = get_matrix<i64>(rec["iso"], where + " iso");
      validate_bounding_family(doc.groupoids.at(xname), fam);
      claim(name, kind);
      doc.families[name] = {xname, aname, std::move(fam)};
    } else if (kind == "equivariant_groupoid") {
      check_keys(rec, where,
                 {"kind", "name", "groupoid", "module", "object_action", "arrow_action"},
                 {"family"});
      std::string xname = ref(rec["groupoid"], where, "groupoid");
      std::string mname = ref(rec["module"], where, "gmodule");
      EquivariantGroupoid EX;
      EX.X = doc.groupoids.at(xname);
      EX.gal = doc.modules.at(mname).G;
      EX.obj_act = get_matrix<int>(rec["object_action"], where + " object_action");
      EX.arr_act = get_matrix<int>(rec["arrow_action"], where + " arrow_action");
      std::string fname;
      if (rec.contains("family")) {
        fname = ref(rec["family"], where, "bounding_family");
        const auto& frec = doc.families.at(fname);
        if (frec.groupoid != xname)
          bad(where + " family '" + fname + "' is over a different groupoid");
        EX.fam = frec.value;
      }
      GaloisContext ctx{doc.modules.at(mname)};
      validate_equivariant_groupoid(ctx, EX);
      claim(name, kind);
      doc.equivariant_groupoids[name] = {xname, mname, fname, std::move(EX)};
    } else if (kind == "equivariant_torsor") {
      check_keys(rec, where,
                 {"kind", "name", "groupoid", "torsor", "base_action", "carrier_action",
                  "basepoint"});
      std::string gname = ref(rec["groupoid"], where, "equivariant_groupoid");
      std::string tname = ref(rec["torsor"], where, "torsor");
      const auto& grec = doc.equivariant_groupoids.at(gname);
      const auto& trec = doc.torsors.at(tname);
      if (!(trec.value.X == grec.value.X))
        bad(where + " torsor '" + tname + "' lives over a different groupoid");
      EquivariantTorsor EP;
      EP.P = trec.value;
      EP.base_act = get_matrix<i64>(rec["base_action"], where + " base_action");
      EP.carrier_act = get_matrix<i64>(rec["carrier_action"], where + " carrier_action");
      EP.basepoint = get_int(rec["basepoint"], where + " basepoint");
      GaloisContext ctx{doc.modules.at(grec.module)};
      validate_equivariant_torsor(ctx, grec.value, EP);
      claim(name, kind);
      doc.equivariant_torsors[name] = {gname, tname, std::move(EP)};
    } else if (kind == "bitorsor") {
      check_keys(rec, where,
                 {"kind", "name", "left", "right", "carrier", "left_anchor", "right_anchor",
                  "left_action", "right_action"});
      std::string lname = ref(rec["left"], where, "groupoid");
      std::string rname = ref(rec["right"], where, "groupoid");
      Bitorsor Q;
      Q.X = doc.groupoids.at(lname);
      Q.Y = doc.groupoids.at(rname);
      Q.n_carrier = static_cast<int>(get_int(rec["carrier"], where + " carrier"));
      Q.l = get_row<int>(rec["left_anchor"], where + " left_anchor");
      Q.r = get_row<int>(rec["right_anchor"], where + " right_anchor");
      Q.act_x = get_matrix<int>(rec["left_action"], where + " left_action");
      Q.act_y = get_matrix<int>(rec["right_action"], where + " right_action");
      validate_bitorsor(Q);
      claim(name, kind);
      doc.bitorsors[name] = {lname, rname, std::move(Q)};
    } else {
      bad("unknown record kind '" + kind + "' in record '" + name + "'");
    }
  }
};

}  // namespace

SpecDocument parse_spec_document(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) bad("the top level must be an object");
  check_keys(root, "the top level", {"records"});
  if (!root["records"].is_array()) bad("'records' must be an array");

  Parser parser;
  for (const Json& rec : root["records"]) parser.parse_record(rec);
  return parser.doc;
}

SpecDocument load_spec_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure on file: " + path);
  return parse_spec_document(buffer.str());
}

}  // namespace gclab
