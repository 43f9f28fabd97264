#include "gclab/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "gclab/baer.hpp"
#include "gclab/caps.hpp"
#include "gclab/cohomology.hpp"
#include "gclab/dxg.hpp"
#include "gclab/galois.hpp"
#include "gclab/quantum.hpp"
#include "gclab/specdoc.hpp"

namespace gclab {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt_list(const std::vector<i64>& v) {
  std::ostringstream s;
  s << "(";
  for (size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  s << ")";
  return s.str();
}

std::string fmt_factors(const std::vector<i64>& factors) {
  if (factors.empty()) return "trivial";
  std::ostringstream s;
  for (size_t i = 0; i < factors.size(); ++i)
    s << (i ? " x " : "") << "Z/" << factors[i];
  return s.str();
}

bool any_nonzero(const std::vector<i64>& v) {
  return std::any_of(v.begin(), v.end(), [](i64 c) { return c != 0; });
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// Record emitters: every certificate a command prints is itself an input
// document, so it can be re-parsed and re-validated.
Json emit_group(const std::string& name, const FiniteGroup& G) {
  std::vector<std::vector<int>> rows(G.order, std::vector<int>(G.order));
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b) rows[a][b] = G.op(a, b);
  Json r{{"kind", "group"}, {"name", name}, {"cayley", rows}};
  if (!G.labels.empty()) r["labels"] = G.labels;
  return r;
}

Json emit_cyclic(const std::string& name, const AbelianGroup& A) {
  return Json{{"kind", "cyclic_product"}, {"name", name}, {"moduli", A.moduli}};
}

Json emit_module(const std::string& name, const std::string& gname,
                 const std::string& aname, const GModule& M) {
  return Json{{"kind", "gmodule"},
              {"name", name},
              {"group", gname},
              {"coefficients", aname},
              {"action", M.action}};
}

Json emit_cochain(const std::string& name, const std::string& mname, const Cochain& c) {
  return Json{{"kind", "cochain"},
              {"name", name},
              {"module", mname},
              {"degree", c.degree},
              {"values", c.values}};
}

Json emit_groupoid(const std::string& name, const Groupoid& X) {
  std::vector<std::vector<int>> triples;
  for (int f = 0; f < X.n_arrows; ++f)
    for (int g = 0; g < X.n_arrows; ++g) {
      int h = X.table[static_cast<size_t>(f) * X.n_arrows + g];
      if (h >= 0) triples.push_back({f, g, h});
    }
  return Json{{"kind", "groupoid"},
              {"name", name},
              {"n_objects", X.n_objects},
              {"src", X.src},
              {"tgt", X.tgt},
              {"compose", triples}};
}

Json emit_torsor(const std::string& name, const std::string& xname,
                 const GroupoidTorsor& P) {
  return Json{{"kind", "torsor"},   {"name", name},     {"groupoid", xname},
              {"carrier", P.n_carrier}, {"base", P.n_base}, {"proj", P.proj},
              {"anchor", P.anchor}, {"action", P.action}};
}

Json emit_family(const std::string& name, const std::string& xname,
                 const std::string& aname, const BoundingFamily& fam) {
  return Json{{"kind", "bounding_family"},
              {"name", name},
              {"groupoid", xname},
              {"coefficients", aname},
              {"iso", fam.iso}};
}

Json emit_equivariant_groupoid(const std::string& name, const std::string& xname,
                               const std::string& mname, const std::string& fname,
                               const EquivariantGroupoid& EX) {
  Json r{{"kind", "equivariant_groupoid"}, {"name", name},
         {"groupoid", xname},              {"module", mname},
         {"object_action", EX.obj_act},    {"arrow_action", EX.arr_act}};
  if (!fname.empty()) r["family"] = fname;
  return r;
}

Json emit_equivariant_torsor(const std::string& name, const std::string& gname,
                             const std::string& tname, const EquivariantTorsor& EP) {
  return Json{{"kind", "equivariant_torsor"},
              {"name", name},
              {"groupoid", gname},
              {"torsor", tname},
              {"base_action", EP.base_act},
              {"carrier_action", EP.carrier_act},
              {"basepoint", EP.basepoint}};
}

Json emit_bitorsor(const std::string& name, const std::string& lname,
                   const std::string& rname, const Bitorsor& Q) {
  return Json{{"kind", "bitorsor"},      {"name", name},
              {"left", lname},           {"right", rname},
              {"carrier", Q.n_carrier},  {"left_anchor", Q.l},
              {"right_anchor", Q.r},     {"left_action", Q.act_x},
              {"right_action", Q.act_y}};
}

std::string sole_record(const SpecDocument& doc, const std::string& kind) {
  std::string found;
  for (const auto& [name, k] : doc.order) {
    if (k != kind) continue;
    if (!found.empty())
      fail(ValidationError::Code::InvalidInput, {},
           "the file must contain exactly one " + kind + " record, found several");
    found = name;
  }
  if (found.empty())
    fail(ValidationError::Code::InvalidInput, {},
         "the file contains no " + kind + " record");
  return found;
}

int cmd_validate(const std::string& path, bool json, std::ostream& out) {
  SpecDocument doc = load_spec_document(path);
  if (json) {
    Json j{{"command", "validate"}, {"records", Json::array()}};
    for (const auto& [name, kind] : doc.order)
      j["records"].push_back(Json{{"name", name}, {"kind", kind}});
    j["count"] = doc.order.size();
    print_json(out, j);
  } else {
    for (const auto& [name, kind] : doc.order)
      out << name << " (" << kind << "): ok\n";
    out << "validated " << doc.order.size() << " record(s)\n";
  }
  return 0;
}

int cmd_cohomology(int degree, const std::string& path, bool json, std::ostream& out) {
  SpecDocument doc = load_spec_document(path);
  bool seen = false;
  Json j{{"command", "cohomology"}, {"degree", degree}, {"groups", Json::array()}};
  std::ostringstream text;
  for (const auto& [name, kind] : doc.order) {
    if (kind != "gmodule") continue;
    seen = true;
    CohomologyGroup H = cohomology_group(doc.modules.at(name), degree);
    text << name << ": H^" << degree << " = " << fmt_factors(H.invariant_factors)
         << " (order " << H.order() << ")\n";
    Json entry{{"module", name},
               {"invariant_factors", H.invariant_factors},
               {"order", H.order()},
               {"certificate", Json{{"records", Json::array()}}}};
    const GModule& M = doc.modules.at(name);
    auto& records = entry["certificate"]["records"];
    records.push_back(emit_group("G", M.G));
    records.push_back(emit_cyclic("A", M.A));
    records.push_back(emit_module("M", "G", "A", M));
    for (size_t i = 0; i < H.generators.size(); ++i)
      records.push_back(
          emit_cochain("generator_" + std::to_string(i), "M", H.generators[i]));
    j["groups"].push_back(std::move(entry));
  }
  if (!seen)
    fail(ValidationError::Code::InvalidInput, {},
         "the file contains no gmodule record");
  if (json)
    print_json(out, j);
  else
    out << text.str();
  return 0;
}

int cmd_extension(const std::string& cocycle_name, const std::string& path, bool json,
                  std::ostream& out) {
  SpecDocument doc = load_spec_document(path);
  auto it = doc.cochains.find(cocycle_name);
  if (it == doc.cochains.end())
    fail(ValidationError::Code::InvalidInput, {},
         "no cochain record named '" + cocycle_name + "'");
  const GModule& M = doc.modules.at(it->second.module);
  GroupExtension E = extension_from_cocycle(M, it->second.value);
  Section s = canonical_section(E);
  Cochain back = cocycle_from_extension(E, s);
  bool round_trip = back == it->second.value;

  if (json) {
    Json j{{"command", "extension"},
           {"cocycle", cocycle_name},
           {"total_order", E.total.order},
           {"abelian", E.total.is_abelian()},
           {"canonical_section_homomorphic", s.homomorphic},
           {"round_trip_exact", round_trip},
           {"certificate",
            Json{{"records", Json::array({emit_group("total", E.total)})}}}};
    print_json(out, j);
  } else {
    out << "extension from cocycle '" << cocycle_name << "'\n"
        << "  total order: " << E.total.order << "\n"
        << "  abelian: " << (E.total.is_abelian() ? "yes" : "no") << "\n"
        << "  canonical section homomorphic: " << (s.homomorphic ? "yes" : "no") << "\n"
        << "  round trip recovers the input cocycle: "
        << (round_trip ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_cocycle(const std::string& ext_name, const std::string& sec_name,
                const std::string& path, bool json, std::ostream& out) {
  SpecDocument doc = load_spec_document(path);
  auto eit = doc.extensions.find(ext_name);
  if (eit == doc.extensions.end())
    fail(ValidationError::Code::InvalidInput, {},
         "no extension record named '" + ext_name + "'");
  auto sit = doc.sections.find(sec_name);
  if (sit == doc.sections.end())
    fail(ValidationError::Code::InvalidInput, {},
         "no section record named '" + sec_name + "'");
  if (sit->second.extension != ext_name)
    fail(ValidationError::Code::InvalidInput, {},
         "section '" + sec_name + "' belongs to extension '" + sit->second.extension +
             "'");
  const GModule& M = doc.modules.at(eit->second.module);
  Cochain h = cocycle_from_extension(eit->second.value, sit->second.value);
  CohomologyGroup H2 = cohomology_group(M, 2);
  std::vector<i64> coords = H2.class_of(h);

  if (json) {
    Json j{{"command", "cocycle"},
           {"extension", ext_name},
           {"section", sec_name},
           {"values", h.values},
           {"invariant_factors", H2.invariant_factors},
           {"class", coords},
           {"certificate", Json{{"records", Json::array()}}}};
    auto& records = j["certificate"]["records"];
    records.push_back(emit_group("G", M.G));
    records.push_back(emit_cyclic("A", M.A));
    records.push_back(emit_module("M", "G", "A", M));
    records.push_back(emit_cochain("h", "M", h));
    print_json(out, j);
  } else {
    out << "cocycle of extension '" << ext_name << "' along section '" << sec_name
        << "'\n"
        << "  values: " << fmt_list(h.values) << "\n"
        << "  H^2 = " << fmt_factors(H2.invariant_factors) << "\n"
        << "  class coordinates: " << fmt_list(coords) << "\n";
  }
  return 0;
}

int cmd_morita(const std::string& path_a, const std::string& path_b, bool json,
               std::ostream& out) {
  SpecDocument da = load_spec_document(path_a);
  SpecDocument db = load_spec_document(path_b);
  const Groupoid& X = da.groupoids.at(sole_record(da, "groupoid"));
  const Groupoid& Y = db.groupoids.at(sole_record(db, "groupoid"));
  auto Q = are_morita_equivalent(X, Y);
  if (!Q) {
    if (json)
      print_json(out, Json{{"command", "morita"}, {"equivalent", false}});
    else
      out << "not Morita equivalent\n";
    return 2;
  }
  LinkingGroupoid L = linking_groupoid(*Q);
  if (json) {
    Json j{{"command", "morita"},
           {"equivalent", true},
           {"bitorsor_carrier", Q->n_carrier},
           {"linking_objects", L.W.n_objects},
           {"linking_arrows", L.W.n_arrows},
           {"certificate", Json{{"records", Json::array()}}}};
    auto& records = j["certificate"]["records"];
    records.push_back(emit_groupoid("left", X));
    records.push_back(emit_groupoid("right", Y));
    records.push_back(emit_bitorsor("bridge", "left", "right", *Q));
    print_json(out, j);
  } else {
    out << "Morita equivalent: yes\n"
        << "  bitorsor carrier: " << Q->n_carrier << "\n"
        << "  linking groupoid: " << L.W.n_objects << " objects, " << L.W.n_arrows
        << " arrows\n";
  }
  return 0;
}

int cmd_eliminable(const std::string& path, bool json, std::ostream& out) {
  SpecDocument doc = load_spec_document(path);
  std::string name = sole_record(doc, "equivariant_groupoid");
  const auto& rec = doc.equivariant_groupoids.at(name);
  GaloisContext ctx{doc.modules.at(rec.module)};
  EquivariantGroupoid EX = rec.value;
  ensure_compatible_family(ctx, EX);
  EliminabilityVerdict v = is_eliminable(ctx, EX);

  if (json) {
    Json j{{"command", "eliminable"},
           {"record", name},
           {"invariant_factors", v.invariant_factors},
           {"class", v.class_coords},
           {"eliminable", v.eliminable},
           {"paths_agree", v.paths_agree},
           {"search_ran", v.search_ran}};
    if (v.eliminable && v.invariant_torsor) {
      Json records = Json::array();
      records.push_back(emit_group("G", ctx.coeff.G));
      records.push_back(emit_cyclic("A", ctx.coeff.A));
      records.push_back(emit_module("M", "G", "A", ctx.coeff));
      records.push_back(emit_groupoid("X", EX.X));
      records.push_back(emit_family("fam", "X", "A", *EX.fam));
      records.push_back(
          emit_equivariant_groupoid("EX", "X", "M", "fam", EX));
      records.push_back(emit_torsor("P", "X", v.invariant_torsor->P));
      records.push_back(emit_equivariant_torsor("EP", "EX", "P", *v.invariant_torsor));
      if (v.coboundary_witness)
        records.push_back(emit_cochain("witness", "M", *v.coboundary_witness));
      j["certificate"] = Json{{"records", std::move(records)}};
    }
    print_json(out, j);
  } else {
    out << "equivariant groupoid '" << name << "'\n"
        << "  H^2 = " << fmt_factors(v.invariant_factors) << "\n"
        << "  class coordinates: " << fmt_list(v.class_coords) << "\n"
        << "  eliminable: " << (v.eliminable ? "yes" : "NO") << "\n"
        << "  class path and torsor search agree: " << (v.paths_agree ? "yes" : "no")
        << (v.search_ran ? "" : " (search skipped: over budget)") << "\n";
    if (v.eliminable && v.coboundary_witness)
      out << "  coboundary witness: " << fmt_list(v.coboundary_witness->values) << "\n";
    if (v.eliminable && v.invariant_torsor)
      out << "  invariant torsor certificate: carrier " << v.invariant_torsor->P.n_carrier
          << ", basepoint " << v.invariant_torsor->basepoint << "\n";
  }
  return v.eliminable ? 0 : 2;
}

struct LoadedBundle {
  EquivariantGroupoid EX;
  EquivariantTorsor EP;
  GModule coeff;
};

LoadedBundle load_bundle(const std::string& path) {
  SpecDocument doc = load_spec_document(path);
  std::string tname = sole_record(doc, "equivariant_torsor");
  const auto& trec = doc.equivariant_torsors.at(tname);
  const auto& grec = doc.equivariant_groupoids.at(trec.groupoid);
  return {grec.value, trec.value, doc.modules.at(grec.module)};
}

int cmd_baer(const std::string& path_p, const std::string& path_q, bool json,
             std::ostream& out) {
  LoadedBundle a = load_bundle(path_p);
  LoadedBundle b = load_bundle(path_q);
  GaloisContext ctx{a.coeff};
  ensure_compatible_family(ctx, a.EX);
  ensure_compatible_family(ctx, b.EX);
  Cochain ha = cocycle_from_torsor(ctx, a.EX, a.EP);
  Cochain hb = cocycle_from_torsor(ctx, b.EX, b.EP);
  EquivariantBundle sum = equivariant_baer_sum(ctx, {a.EX, a.EP}, {b.EX, b.EP});
  Cochain hs = cocycle_from_torsor(ctx, sum.X, sum.P);
  bool additive = hs == cochain_add(ctx.coeff, ha, hb);
  CohomologyGroup H2 = cohomology_group(ctx.coeff, 2);

  if (json) {
    Json j{{"command", "baer"},
           {"class_first", H2.class_of(ha)},
           {"class_second", H2.class_of(hb)},
           {"class_sum", H2.class_of(hs)},
           {"invariant_factors", H2.invariant_factors},
           {"pointwise_additive", additive},
           {"sum_objects", sum.X.X.n_objects},
           {"sum_arrows", sum.X.X.n_arrows},
           {"sum_carrier", sum.P.P.n_carrier},
           {"certificate", Json{{"records", Json::array()}}}};
    auto& records = j["certificate"]["records"];
    records.push_back(emit_group("G", ctx.coeff.G));
    records.push_back(emit_cyclic("A", ctx.coeff.A));
    records.push_back(emit_module("M", "G", "A", ctx.coeff));
    records.push_back(emit_cochain("first", "M", ha));
    records.push_back(emit_cochain("second", "M", hb));
    records.push_back(emit_cochain("sum", "M", hs));
    print_json(out, j);
  } else {
    out << "Baer sum\n"
        << "  H^2 = " << fmt_factors(H2.invariant_factors) << "\n"
        << "  class of first summand:  " << fmt_list(H2.class_of(ha)) << "\n"
        << "  class of second summand: " << fmt_list(H2.class_of(hb)) << "\n"
        << "  class of the sum:        " << fmt_list(H2.class_of(hs)) << "\n"
        << "  extraction is pointwise additive: " << (additive ? "yes" : "no") << "\n"
        << "  sum groupoid: " << sum.X.X.n_objects << " objects, " << sum.X.X.n_arrows
        << " arrows; carrier " << sum.P.P.n_carrier << "\n";
  }
  return 0;
}

int cmd_demo_quantum(int n, i64 p, bool json, std::ostream& out) {
  QuantumTorusData data = quantum_torus_data(n, p);
  Cochain h = pgl_obstruction_cocycle(data);
  GModule M = deck_module(n);
  CohomologyGroup H2 = cohomology_group(M, 2);
  std::vector<i64> coords = H2.class_of(h);
  SplittingGroupoid S = splitting_groupoid(data);
  bool connected = is_connected(S.X);
  i64 points = (p - 1) * (p - 1);

  if (json) {
    print_json(out, Json{{"command", "demo quantum-torus"},
                         {"n", n},
                         {"p", p},
                         {"zeta", data.zeta},
                         {"points_verified", points},
                         {"obstruction_values", h.values},
                         {"invariant_factors", H2.invariant_factors},
                         {"class", coords},
                         {"class_nontrivial", any_nonzero(coords)},
                         {"splitting_objects", S.X.n_objects},
                         {"splitting_arrows", S.X.n_arrows},
                         {"splitting_connected", connected}});
  } else {
    out << "quantum torus: n = " << n << ", p = " << p << "\n"
        << "  zeta = " << data.zeta << "\n"
        << "  matrix identities verified at " << points << " points\n"
        << "  obstruction cocycle values: " << fmt_list(h.values) << "\n"
        << "  class in H^2 = " << fmt_factors(H2.invariant_factors) << ": "
        << fmt_list(coords) << (any_nonzero(coords) ? " (nontrivial)" : " (trivial)")
        << "\n"
        << "  splitting groupoid: " << S.X.n_objects << " objects, " << S.X.n_arrows
        << " arrows, " << (connected ? "connected" : "disconnected")
        << ", bounded by Z/" << n << "\n";
  }
  return 0;
}

int cmd_demo_dxg(int orbits, const std::string& ext, bool json, std::ostream& out) {
  if (orbits < 1)
    fail(ValidationError::Code::InvalidInput, {orbits}, "need at least one orbit");
  int n_points = 2 * orbits;
  FiniteGroup H = cyclic_group(2);
  std::vector<std::vector<int>> swap_action(2, std::vector<int>(n_points));
  for (int x = 0; x < n_points; ++x) {
    swap_action[0][x] = x;
    swap_action[1][x] = x ^ 1;
  }
  GModule m = trivial_gmodule(cyclic_group(2), group_from_cyclic_factors({2}));
  Cochain h = zero_cochain(m, 2);
  if (ext == "z4") h.values[3] = 1;  // position (1,1): the nonsplit class
  GroupExtension E = extension_from_cocycle(m, h);

  DxgStructure D = dxg_structure(n_points, H, swap_action, E);
  std::vector<int> other_reps;
  for (int alpha = 0; alpha < static_cast<int>(D.representatives.size()); ++alpha)
    other_reps.push_back(swap_action[1][D.representatives[alpha]]);
  DxgStructure D2 = dxg_structure(n_points, H, swap_action, E, other_reps);
  auto iso = torsor_isomorphism(D.cover, D2.cover);

  if (json) {
    Json j{{"command", "demo dxg"},
           {"orbits", orbits},
           {"extension", ext},
           {"total_group_order", E.total.order},
           {"carrier", D.cover.n_carrier},
           {"representatives", D.representatives},
           {"alternate_representatives", other_reps},
           {"representative_independent", iso.has_value()}};
    if (iso) j["isomorphism"] = *iso;
    print_json(out, j);
  } else {
    out << "D(X, G): " << n_points << " points, H = Z/2, G order " << E.total.order
        << " (" << ext << ")\n"
        << "  carrier size: " << D.cover.n_carrier << "\n"
        << "  orbit representatives: "
        << fmt_list(std::vector<i64>(D.representatives.begin(), D.representatives.end()))
        << "\n"
        << "  torsor over the orbit set: valid\n"
        << "  representative change gives an isomorphic torsor: "
        << (iso ? "yes" : "no") << "\n";
    if (iso) out << "  isomorphism: " << fmt_list(*iso) << "\n";
  }
  return iso ? 0 : 2;
}

int cmd_demo_heisenberg(int n, bool json, std::ostream& out) {
  HeisenbergData h = heisenberg_extension(n);
  CohomologyGroup H2 = cohomology_group(h.module, 2);
  std::vector<i64> coords = H2.class_of(h.cocycle);
  const FiniteGroup& G = h.ext.total;
  Section s = canonical_section(h.ext);
  // alpha = (1,0) and beta = (0,1) in the deck group, mixed-radix indexed.
  int u = static_cast<int>(s.images[n >= 2 ? n : 0]);
  int v = static_cast<int>(s.images[n >= 2 ? 1 : 0]);
  int comm = G.op(G.op(u, v), G.op(G.inv(u), G.inv(v)));
  bool central = true;
  for (int g = 0; g < G.order; ++g)
    if (G.op(comm, g) != G.op(g, comm)) central = false;

  if (json) {
    print_json(out, Json{{"command", "demo heisenberg"},
                         {"n", n},
                         {"p", h.p},
                         {"order", G.order},
                         {"abelian", G.is_abelian()},
                         {"commutator_central", central},
                         {"commutator_order", element_order(G, comm)},
                         {"invariant_factors", H2.invariant_factors},
                         {"class", coords},
                         {"class_nontrivial", any_nonzero(coords)}});
  } else {
    out << "Heisenberg extension: n = " << n << " (obstruction computed over p = "
        << h.p << ")\n"
        << "  order: " << G.order << "\n"
        << "  abelian: " << (G.is_abelian() ? "yes" : "no") << "\n"
        << "  [u, v] central: " << (central ? "yes" : "no") << ", order "
        << element_order(G, comm) << "\n"
        << "  class in H^2 = " << fmt_factors(H2.invariant_factors) << ": "
        << fmt_list(coords) << (any_nonzero(coords) ? " (nontrivial)" : " (trivial)")
        << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact computations on finite groupoids, torsors, and group cohomology"};
  app.name("gclab");
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  auto* validate = app.add_subcommand("validate", "parse and validate an input file");
  std::string v_file;
  validate->add_option("file", v_file, "input file")->required();
  validate->fallthrough();

  auto* cohomology = app.add_subcommand("cohomology", "cohomology of gmodule records");
  int c_degree = 2;
  std::string c_file;
  cohomology->add_option("--degree", c_degree, "cohomology degree")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  cohomology->add_option("file", c_file, "input file")->required();
  cohomology->fallthrough();

  auto* extension = app.add_subcommand("extension", "build an extension from a cocycle");
  std::string e_cocycle, e_file;
  extension->add_option("--cocycle", e_cocycle, "cochain record name")->required();
  extension->add_option("file", e_file, "input file")->required();
  extension->fallthrough();

  auto* cocycle = app.add_subcommand("cocycle", "extract a cocycle from an extension");
  std::string k_ext, k_sec, k_file;
  cocycle->add_option("--extension", k_ext, "extension record name")->required();
  cocycle->add_option("--section", k_sec, "section record name")->required();
  cocycle->add_option("file", k_file, "input file")->required();
  cocycle->fallthrough();

  auto* morita = app.add_subcommand("morita", "decide Morita equivalence");
  std::string m_a, m_b;
  morita->add_option("file_a", m_a, "input file with one groupoid record")->required();
  morita->add_option("file_b", m_b, "input file with one groupoid record")->required();
  morita->fallthrough();

  auto* eliminable = app.add_subcommand("eliminable", "equivariant eliminability verdict");
  std::string l_file;
  eliminable->add_option("file", l_file, "input file with one equivariant_groupoid")
      ->required();
  eliminable->fallthrough();

  auto* baer = app.add_subcommand("baer", "Baer sum of two equivariant torsors");
  std::string b_p, b_q;
  baer->add_option("file_p", b_p, "input file with one equivariant_torsor")->required();
  baer->add_option("file_q", b_q, "input file with one equivariant_torsor")->required();
  baer->fallthrough();

  auto* demo = app.add_subcommand("demo", "built-in demonstrations");
  demo->require_subcommand(1);
  demo->fallthrough();

  auto* d_quantum = demo->add_subcommand("quantum-torus", "quantum torus matrices");
  int q_n = 2;
  i64 q_p = 5;
  d_quantum->add_option("--n", q_n, "rank")->required();
  d_quantum->add_option("--p", q_p, "prime with p = 1 mod n")->required();
  d_quantum->fallthrough();

  auto* d_dxg = demo->add_subcommand("dxg", "cover of a free involution");
  int x_orbits = 2;
  std::string x_ext = "z4";
  d_dxg->add_option("--orbits", x_orbits, "number of size-2 orbits")->required();
  d_dxg->add_option("--ext", x_ext, "extension of Z/2 by Z/2")
      ->check(CLI::IsMember({"z4", "split"}));
  d_dxg->fallthrough();

  auto* d_heis = demo->add_subcommand("heisenberg", "Heisenberg extension");
  int h_n = 2;
  d_heis->add_option("--n", h_n, "rank (at most 5)")->required();
  d_heis->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(v_file, json, out);
    if (cohomology->parsed()) return cmd_cohomology(c_degree, c_file, json, out);
    if (extension->parsed()) return cmd_extension(e_cocycle, e_file, json, out);
    if (cocycle->parsed()) return cmd_cocycle(k_ext, k_sec, k_file, json, out);
    if (morita->parsed()) return cmd_morita(m_a, m_b, json, out);
    if (eliminable->parsed()) return cmd_eliminable(l_file, json, out);
    if (baer->parsed()) return cmd_baer(b_p, b_q, json, out);
    if (d_quantum->parsed()) return cmd_demo_quantum(q_n, q_p, json, out);
    if (d_dxg->parsed()) return cmd_demo_dxg(x_orbits, x_ext, json, out);
    if (d_heis->parsed()) return cmd_demo_heisenberg(h_n, json, out);
    err << "no command selected\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const NegativeResult& e) {
    if (json) {
      print_json(out, Json{{"negative", NegativeResult::kind_name(e.kind())},
                           {"witness", e.witness()},
                           {"message", e.what()}});
    } else {
      out << "negative result: " << e.what() << "\n";
    }
    return 2;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gclab
