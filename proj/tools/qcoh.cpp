// qcoh command line front end.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcoh/qcoh.hpp"

using namespace qcoh;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::size_t max_cosets = 1000000;
  int oracle_cap = 12;
  int base_point = 0;
  bool json_out = false;
  bool render_exp = false;
  std::string coeff = "Z2";
};

Quandle read_quandle(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    impl::fail(ErrorKind::argument, "cannot open " + path);
  try {
    return parse_quandle(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

Cocycle read_cocycle(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    impl::fail(ErrorKind::argument, "cannot open " + path);
  try {
    return parse_cocycle(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string render(const CoefficientGroup& A, const Coeff& c, bool exp) {
  std::string s = A.format(c);
  if (exp && !A.is_cyclic()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.6f)", static_cast<double>(c.num) / static_cast<double>(c.den));
    s += buf;
  }
  return s;
}

Config config_of(const Globals& g) {
  Config c;
  c.max_cosets = g.max_cosets;
  c.oracle_cap = g.oracle_cap;
  c.base_point = g.base_point;
  return c;
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json_out)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

json datum_json(const CoefficientGroup& A, const CocycleDatum& d) {
  json g = json::array();
  for (const Coeff& v : d.g)
    g.push_back(A.format(v));
  return {{"a", A.format(d.a)}, {"g", g}};
}

// Exponents e_i select g(b_i) = e_i * (generator of the d_i-torsion of A).
CocycleDatum datum_from_args(const Analysis& an, const CoefficientGroup& A, const std::string& a_text,
                             const std::vector<long>& exps) {
  CocycleDatum d;
  auto a = A.parse(a_text);
  if (!a)
    impl::fail(ErrorKind::argument, "--a: '" + a_text + "' is not an element of " + A.name());
  d.a = *a;
  const auto& f = an.factors();
  if (exps.size() == 1 && exps[0] == 0 && f.empty()) {
  } else if (exps.size() != f.size()) {
    impl::fail(ErrorKind::argument, "--g needs " + std::to_string(f.size()) + " exponent(s), one per factor of (N0)_ab");
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto tor = A.torsion(f[i]);
    long k = static_cast<long>(tor.size());
    if (exps[i] < 0 || exps[i] >= k)
      impl::fail(ErrorKind::argument, "--g: exponent " + std::to_string(exps[i]) + " out of range [0," +
                                          std::to_string(k) + ") for factor Z" + std::to_string(f[i]));
    d.g.push_back(tor[exps[i]]);
  }
  return d;
}

std::string nx_list(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

int cmd_info(const Globals& g, const std::string& file) {
  std::ifstream in(file);
  if (!in)
    impl::fail(ErrorKind::argument, "cannot open " + file);
  TableText t = parse_table(in);
  Classification c = validate(t.n, t.table);
  json j{{"size", t.n}};
  if (!c.valid()) {
    j["kind"] = "invalid";
    j["violation"] = c.describe();
    emit(g, j, "not a rack: " + c.describe() + "\n");
    return 3;
  }
  Quandle q = Quandle::from_table(t.n, t.table);
  InnerAction a = inner_action(q);
  std::string kind = q.is_quandle() ? "quandle" : "rack";
  std::string conn = a.indecomposable() ? "indecomposable" : "decomposable";
  j["kind"] = kind;
  j["indecomposable"] = a.indecomposable();
  j["orbits"] = a.orbits.size();
  j["phi_orders"] = a.phi_orders;
  emit(g, j,
       kind + ", " + conn + ", n=" + std::to_string(t.n) + "\norbits: " + std::to_string(a.orbits.size()) +
           "\nn_x: " + nx_list(a.phi_orders) + "\n");
  return 0;
}

int cmd_h2(const Globals& g, const std::string& file, const std::string& out_dir) {
  Quandle q = read_quandle(file);
  CoefficientGroup A = parse_coefficient_group(g.coeff);
  Analysis an = analyze(q, config_of(g));
  H2Summary s = h2_description(an, A);
  json gens = json::array();
  std::string text;
  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    Cocycle c = reconstruct_cocycle(an, A, s.generators[i]);
    std::string ref = "g" + std::to_string(i);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      ref = (std::filesystem::path(out_dir) / ("generator_" + std::to_string(i) + ".coc")).string();
      std::ofstream(ref) << serialize(c);
    }
    json d = datum_json(A, s.generators[i]);
    d["ref"] = ref;
    gens.push_back(d);
    text += "generator " + ref + ": a=" + A.format(s.generators[i].a) + "\n";
  }
  json j{{"quandle_size", s.quandle_size},
         {"fx_order", s.fx_order},
         {"nx_order", s.nx_order},
         {"n0_order", s.n0_order},
         {"n0_invariant_factors", s.n0_factors}};
  if (s.h2_order)
    j["h2_order"] = *s.h2_order;
  j["h2_type"] = s.h2_type;
  j["generators"] = gens;
  std::string head = "|X| = " + std::to_string(s.quandle_size) + "\n|F_X| = " + std::to_string(s.fx_order) +
                     "\n|N_X| = " + std::to_string(s.nx_order) + "\n|N0| = " + std::to_string(s.n0_order) +
                     "\n(N0)_ab = " + cyclic_sum(s.n0_factors) + "\nH^2(X," + A.name() + ") = " + s.h2_type +
                     (s.h2_order ? "\n|H^2| = " + std::to_string(*s.h2_order) : std::string()) + "\n";
  emit(g, j, head + text);
  return 0;
}

int cmd_cocycle(const Globals& g, const std::string& file, const std::string& a, const std::vector<long>& exps,
                const std::string& out) {
  Quandle q = read_quandle(file);
  CoefficientGroup A = parse_coefficient_group(g.coeff);
  Analysis an = analyze(q, config_of(g));
  Cocycle c = reconstruct_cocycle(an, A, datum_from_args(an, A, a, exps));
  if (!out.empty())
    std::ofstream(out) << serialize(c);
  else
    std::cout << serialize(c);
  return 0;
}

int cmd_verify(const Globals& g, const std::string& qf, const std::string& cf) {
  Quandle q = read_quandle(qf);
  Cocycle c = read_cocycle(cf);
  if (c.n != q.size())
    impl::fail(ErrorKind::argument, "cocycle has size " + std::to_string(c.n) + ", quandle " + std::to_string(q.size()));
  CocycleCheck chk = verify_cocycle(q, c);
  json j{{"cocycle", chk.ok}, {"quandle_cocycle", chk.ok && is_quandle_cocycle(q, c)}};
  std::string text = chk.ok ? "cocycle: yes\n" : "cocycle: no\n";
  if (!chk.ok) {
    j["witness"] = {chk.x, chk.y, chk.z};
    text += "fails at (x,y,z) = (" + std::to_string(chk.x) + "," + std::to_string(chk.y) + "," +
            std::to_string(chk.z) + ")\n";
  }
  emit(g, j, text);
  return 0;
}

int cmd_decompose(const Globals& g, const std::string& qf, const std::string& cf) {
  Quandle q = read_quandle(qf);
  Cocycle c = read_cocycle(cf);
  if (c.n != q.size())
    impl::fail(ErrorKind::argument, "cocycle size does not match quandle size");
  Analysis an = analyze(q, config_of(g));
  CocycleDatum d = decompose_cocycle(an, c);
  json j = datum_json(c.group, d);
  j["n0_invariant_factors"] = an.factors();
  std::string text = "a = " + render(c.group, d.a, g.render_exp) + "\ng = [";
  for (std::size_t i = 0; i < d.g.size(); ++i)
    text += (i ? ", " : "") + render(c.group, d.g[i], g.render_exp);
  emit(g, j, text + "]\n");
  return 0;
}

int cmd_equiv(const Globals& g, const std::string& qf, const std::string& c1, const std::string& c2) {
  Quandle q = read_quandle(qf);
  Cocycle a = read_cocycle(c1), b = read_cocycle(c2);
  if (a.n != q.size() || b.n != q.size())
    impl::fail(ErrorKind::argument, "cocycle size does not match quandle size");
  for (const Cocycle* c : {&a, &b})
    if (!verify_cocycle(q, *c).ok)
      impl::fail(ErrorKind::precondition, "input is not-a-cocycle");
  if (g.base_point < 0 || g.base_point >= q.size())
    impl::fail(ErrorKind::argument, "base point out of range");
  auto gamma = are_cohomologous(q, a, b, g.base_point);
  json j{{"cohomologous", gamma.has_value()}};
  std::string text = gamma ? "cohomologous: yes\ngamma =" : "cohomologous: no\n";
  if (gamma) {
    json arr = json::array();
    for (const Coeff& v : *gamma) {
      arr.push_back(a.group.format(v));
      text += " " + render(a.group, v, g.render_exp);
    }
    j["gamma"] = arr;
    text += "\n";
  }
  emit(g, j, text);
  return 0;
}

json homology_json(const HomologyResult& h) { return {{"free_rank", h.free_rank}, {"torsion", h.torsion_longs()}}; }

int cmd_homology(const Globals& g, const std::string& file, bool oracle) {
  Quandle q = read_quandle(file);
  Analysis an = analyze(q, config_of(g));
  HomologyResult rack, quandle;
  rack.free_rank = 1;
  for (long d : an.factors())
    quandle.torsion.push_back(BigInt(d));
  rack.torsion = quandle.torsion;
  json j{{"engine", {{"rack", homology_json(rack)}, {"quandle", homology_json(quandle)}}}};
  std::string text = "engine: H2 = " + rack.str() + ", H2Q = " + quandle.str() + "\n";
  if (oracle) {
    if (q.size() > g.oracle_cap) {
      j["oracle"] = nullptr;
      j["note"] = "oracle skipped";
      text += "oracle skipped (|X| = " + std::to_string(q.size()) + " > cap " + std::to_string(g.oracle_cap) + ")\n";
    } else {
      HomologyResult orack = rack_h2(q, g.oracle_cap), oq = quandle_h2(q, g.oracle_cap);
      j["oracle"] = {{"rack", homology_json(orack)}, {"quandle", homology_json(oq)}};
      j["agree"] = orack == rack && oq == quandle;
      text += "oracle: H2 = " + orack.str() + ", H2Q = " + oq.str() + "\n" +
              ((orack == rack && oq == quandle) ? "agree\n" : "DISAGREE\n");
    }
  }
  emit(g, j, text);
  return 0;
}

std::vector<long> parse_longs(const std::string& s, char sep) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size())
        throw std::invalid_argument(item);
    } catch (const std::exception&) {
      impl::fail(ErrorKind::argument, "not an integer: '" + item + "'");
    }
  }
  return out;
}

struct AffineArgs {
  std::string moduli, gamma, family;
  long p = 0;
  std::vector<long> alpha;
  long beta = 0;
  bool qnd = false;
  long explicit_l = -1;
};

int cmd_affine(const Globals& g, const AffineArgs& a) {
  AffineSpec s;
  std::optional<P2Params> P;
  if (!a.family.empty()) {
    P = P2Params{parse_family(a.family), a.p, a.alpha};
    if (P->family == P2Family::A1 && a.alpha.size() == 1)
      P->alpha.push_back(a.beta);
    s = p2_spec(*P);
  } else {
    if (a.moduli.empty() || a.gamma.empty())
      impl::fail(ErrorKind::argument, "affine needs --moduli and --gamma, or --family and --p");
    s.moduli = parse_longs(a.moduli, ',');
    std::stringstream ss(a.gamma);
    std::string row;
    while (std::getline(ss, row, ';'))
      s.gamma.push_back(parse_longs(row, ','));
    AffineCheck c = check_affine(s);
    if (!c.homomorphism)
      impl::fail(ErrorKind::argument, "gamma is not a well-defined endomorphism of L");
  }
  Quandle q = affine_quandle(s);
  if (a.qnd) {
    std::cout << serialize(q);
    return 0;
  }
  if (a.explicit_l >= 0) {
    if (!P)
      impl::fail(ErrorKind::argument, "--explicit needs a family");
    std::cout << serialize(explicit_p2_cocycle(*P, a.explicit_l, Coeff()));
    return 0;
  }
  SGroup S = s_group(s);
  long ord = gamma_order(s);
  json j{{"spec", s.str()}, {"size", q.size()}, {"gamma_order", ord}, {"s_invariant_factors", S.factors}};
  std::string text = s.str() + "\n|X| = " + std::to_string(q.size()) + "\nord(gamma) = " + std::to_string(ord) +
                     "\nS(L,gamma) = " + cyclic_sum(S.factors) + "\n";
  if (P) {
    HomologyResult h = p2_invariants(*P);
    j["predicted_h2"] = homology_json(h);
    text += "predicted H2 = " + h.str() + "\n";
  }
  emit(g, j, text);
  return 0;
}

int cmd_catalog_list(const Globals& g) {
  json arr = json::array();
  std::string text;
  for (const auto& name : catalog_names()) {
    Fixture f = catalog_get(name);
    json e{{"name", f.name}, {"size", f.quandle.size()}, {"note", f.note}};
    if (f.expected)
      e["expected"] = {{"fx_order", f.expected->fx_order},
                       {"n0_order", f.expected->n0_order},
                       {"n0_factors", f.expected->n0_factors},
                       {"h2q_factors", f.expected->h2q_factors}};
    arr.push_back(e);
    text += f.name + "\t" + std::to_string(f.quandle.size()) + "\t" + f.note + "\n";
  }
  emit(g, arr, text);
  return 0;
}

int cmd_catalog_get(const std::string& name) {
  Fixture f = catalog_get(name);
  std::cout << "# " << f.name << ": " << f.note << "\n" << serialize(f.quandle);
  return 0;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse: return 2;
    case ErrorKind::precondition: return 3;
    case ErrorKind::argument: return 4;
    case ErrorKind::resource: return 5;
    case ErrorKind::internal: return 70;
  }
  return 70;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second quandle cohomology via the enveloping group"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--max-cosets", g.max_cosets, "Coset table cap for Todd-Coxeter")->check(CLI::PositiveNumber);
  app.add_option("--oracle-cap", g.oracle_cap, "Largest |X| for the homology oracle")->check(CLI::PositiveNumber);
  app.add_option("--base-point", g.base_point, "Base point x0");
  app.add_flag("--json", g.json_out, "JSON output");
  app.add_flag("--render-exp", g.render_exp, "Also print Q/Z values as decimals");
  app.add_option("--coeff", g.coeff, "Coefficient group Z<m> or QZ");

  std::string qf, cf, cf2, out_dir, out, a_text = "0", name;
  std::vector<long> exps;
  bool oracle = false;
  AffineArgs aa;

  auto* info = app.add_subcommand("info", "Axioms, orbits and n_x of a quandle file");
  info->add_option("quandle", qf)->required();
  auto* h2 = app.add_subcommand("h2", "H^2(X, A) via the main theorem");
  h2->add_option("quandle", qf)->required();
  h2->add_option("--out-dir", out_dir, "Write one .coc per character basis vector");
  auto* coc = app.add_subcommand("cocycle", "Reconstruct a cocycle from (a, g)");
  coc->add_option("quandle", qf)->required();
  coc->add_option("--a", a_text, "Constant part a");
  coc->add_option("--g", exps, "Character exponents, one per factor of (N0)_ab")->delimiter(',');
  coc->add_option("-o,--out", out, "Output .coc file");
  auto* ver = app.add_subcommand("verify", "Check the cocycle condition");
  ver->add_option("quandle", qf)->required();
  ver->add_option("cocycle", cf)->required();
  auto* dec = app.add_subcommand("decompose", "Cocycle -> (a, g)");
  dec->add_option("quandle", qf)->required();
  dec->add_option("cocycle", cf)->required();
  auto* eqv = app.add_subcommand("equiv", "Test whether two cocycles are cohomologous");
  eqv->add_option("quandle", qf)->required();
  eqv->add_option("cocycle1", cf)->required();
  eqv->add_option("cocycle2", cf2)->required();
  auto* hom = app.add_subcommand("homology", "Predicted H2 and H2Q, optionally checked by the oracle");
  hom->add_option("quandle", qf)->required();
  hom->add_flag("--oracle", oracle, "Run the Smith normal form oracle");
  auto* aff = app.add_subcommand("affine", "Affine quandles Aff(L, gamma)");
  aff->add_option("--moduli", aa.moduli, "m1,m2,...");
  aff->add_option("--gamma", aa.gamma, "rows separated by ';', entries by ','");
  aff->add_option("--family", aa.family, "A1|A2|A3|A4");
  aff->add_option("--p", aa.p, "prime");
  aff->add_option("--alpha", aa.alpha, "alpha (A3: alpha0,alpha1)")->delimiter(',');
  aff->add_option("--beta", aa.beta, "beta for A1");
  aff->add_flag("--qnd", aa.qnd, "Print the quandle table");
  aff->add_option("--explicit", aa.explicit_l, "Print the zeta-pairing cocycle for this l");
  auto* cat = app.add_subcommand("catalog", "Built-in fixtures");
  cat->require_subcommand(1);
  cat->fallthrough();
  auto* cat_list = cat->add_subcommand("list", "List fixtures");
  auto* cat_get = cat->add_subcommand("get", "Print a fixture as .qnd");
  cat_get->add_option("name", name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    if (*info)
      return cmd_info(g, qf);
    if (*h2)
      return cmd_h2(g, qf, out_dir);
    if (*coc)
      return cmd_cocycle(g, qf, a_text, exps, out);
    if (*ver)
      return cmd_verify(g, qf, cf);
    if (*dec)
      return cmd_decompose(g, qf, cf);
    if (*eqv)
      return cmd_equiv(g, qf, cf, cf2);
    if (*hom)
      return cmd_homology(g, qf, oracle);
    if (*aff)
      return cmd_affine(g, aa);
    if (*cat_list)
      return cmd_catalog_list(g);
    if (*cat_get)
      return cmd_catalog_get(name);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
