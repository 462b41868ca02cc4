#include "detrep/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <sstream>

#include "detrep/fixtures.hpp"

namespace detrep {

namespace {

struct Config {
  int jet_order = 12;
  bool jet_given = false;
  std::uint64_t seed = 0;
  std::string output = "human";
  std::string mode = "saturated";
  std::string filter;
  std::string catalog = DETREP_CATALOG_PATH;
  std::vector<std::string> inputs;
};

std::string status_word(SatStatus s) {
  switch (s) {
    case SatStatus::Saturated: return "true";
    case SatStatus::NotSaturated: return "false";
    default: return "inconclusive";
  }
}

std::string sizes_of(const DecompCertificate &c) {
  std::string s;
  for (const auto &b : c.blocks) s += (s.empty() ? "" : " ") + std::to_string(b.rows());
  return s;
}

Poly rest_of(const HypersurfaceSpec &H, std::size_t skip) {
  Poly r = Poly::constant(H.nvars, 1);
  for (std::size_t j = 0; j < H.factors.size(); ++j)
    if (j != skip) r = r * pow(H.factors[j].first, H.factors[j].second);
  return r;
}

void emit(const Report &r, const Config &cfg, std::ostream &out) { out << (cfg.output == "structured" ? r.structured() : r.human()); }

int order_for(const Config &cfg, const InputDoc &doc) {
  if (cfg.jet_given) return cfg.jet_order;
  return doc.jet_order.value_or(cfg.jet_order);
}

int cmd_analyze(const Config &cfg, std::ostream &out) {
  InputDoc doc = read_input_file(cfg.inputs.at(0));
  const int N = order_for(cfg, doc);
  const PolyMatrix &M = doc.matrix;
  const HypersurfaceSpec &H = doc.spec;
  validate_spec(H);
  check_determinant(M, H.product());
  const int d = M.dim();
  Report r("detrep-report/1");
  r.add("command", std::string("analyze"));
  r.add("jet_order", N);
  r.add("dim", d);
  r.add("factors", to_string(H, doc.vars));
  Poly det = determinant(M);
  r.add("multiplicity", multiplicity(det));
  r.add("corank0", corank_at_origin(M));
  r.add_bool("max_gen_at_origin", is_max_generated_at_origin(M, H.product()));
  r.add_bool("max_gen_smooth_locus", is_max_generated_smooth_locus(M, H));
  TangentCone tc = tangent_cone(det);
  std::string cone;
  if (tc.factored) {
    for (const auto &[l, mu] : tc.linear_factors) cone += (cone.empty() ? "" : " ") + ("(" + to_string(l, doc.vars) + ")^" + std::to_string(mu));
  } else {
    cone = to_string(tc.form, doc.vars) + " [" + tc.note + "]";
  }
  r.add("tangent_cone", cone);
  if (H.factors.size() >= 2) {
    const std::size_t k = H.factors.size() == 2 ? 1 : H.factors.size();
    for (std::size_t i = 0; i < k; ++i) {
      auto s = is_saturated(M, pow(H.factors[i].first, H.factors[i].second), rest_of(H, i), N);
      std::string v = status_word(s.status);
      if (s.status != SatStatus::Saturated && !s.detail.empty()) v += " (" + s.detail + ")";
      r.add("saturated.factor" + std::to_string(i + 1) + "_vs_rest", v);
    }
  }
  if (H.factors.size() == 2 && M.nvars() == 2) {
    auto by = branches_by_factor(H, doc.branches);
    Poly f1 = pow(H.factors[0].first, H.factors[0].second), f2 = pow(H.factors[1].first, H.factors[1].second);
    auto e = extension_criterion(M, f1, f2, N, by[0], by[1]);
    r.add("extension.counts", "d=" + std::to_string(e.d) + " dE1=" + std::to_string(e.dE1) + " dE2=" + std::to_string(e.dE2) +
                                  " dtrE1=" + std::to_string(e.dtrE1) + " dtrE2=" + std::to_string(e.dtrE2));
    r.add_bool("extension.holds_12", e.holds_12);
    r.add_bool("extension.holds_21", e.holds_21);
    r.add_bool("extension.upper_bound", e.upper_bound);
  }
  std::vector<Poly> entries;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (!M(i, j).is_zero()) entries.push_back(M(i, j));
  int mg = entries.empty() ? 0 : min_generators_mod(IdealGens(M.nvars(), entries), N);
  r.add("fitting_min_gens", mg);
  for (int p1 = 1; 2 * p1 <= d; ++p1) {
    auto o = triangular_obstruction(M, p1, d - p1, N);
    std::string key = "triangular_obstruction." + std::to_string(p1) + "+" + std::to_string(d - p1);
    r.add(key, std::string(o.obstructed ? "true" : "false") + " (min_gens " + std::to_string(o.min_gens) + ", bound " +
                   std::to_string(o.tri_bound) + ")");
  }
  if (M.nvars() == 2) {
    auto fi = fibre_independence_test(M, doc.branches, N);
    r.add("fibre_independent", std::string(fi.independent ? "true" : "false") + (fi.flag.empty() ? "" : " (" + fi.flag + ")"));
  }
  emit(r, cfg, out);
  return kExitOk;
}

int cmd_decompose(const Config &cfg, std::ostream &out) {
  InputDoc doc = read_input_file(cfg.inputs.at(0));
  const int N = order_for(cfg, doc);
  const PolyMatrix &M = doc.matrix;
  const HypersurfaceSpec &H = doc.spec;
  validate_spec(H);
  check_determinant(M, H.product());
  DecompCertificate c;
  if (cfg.mode == "saturated") {
    if (H.factors.size() < 2) throw SpecError("saturated mode needs at least two factors");
    c = decompose_saturated(M, pow(H.factors[0].first, H.factors[0].second), rest_of(H, 0), N);
  } else if (cfg.mode == "tangential") {
    c = tangential_decompose(M, N, cfg.seed);
  } else if (cfg.mode == "triangular") {
    c = curve_triangularize(M, H, branches_by_factor(H, doc.branches), N);
  } else if (cfg.mode == "multiple") {
    if (H.factors.size() != 1) throw SpecError("multiple mode needs a single factor f^r");
    if (doc.branches.empty()) throw SpecError("multiple mode needs a branch parametrization");
    c = multiple_curve_decompose(M, H.factors[0].first, doc.branches[0], H.factors[0].second, N);
  } else {
    throw ParseError("unknown mode '" + cfg.mode + "'");
  }
  auto v = verify_certificate(M, c);
  if (!v.ok) throw InconclusiveError("certificate failed self-verification: " + v.message);
  if (cfg.output == "human") {
    out << "mode " << cfg.mode << ": " << c.blocks.size() << " block(s) of sizes " << sizes_of(c) << ", "
        << (c.structure == Structure::Diagonal ? "diagonal" : "upper-triangular") << ", certified to order " << N << "\n";
    for (std::size_t i = 0; i < c.blocks.size(); ++i)
      out << "block " << i + 1 << " det: " << to_string(jet(determinant(c.blocks[i]), N), doc.vars) << "\n";
    out << "\n";
  }
  out << serialize_certificate(c, doc.vars);
  return kExitOk;
}

int cmd_verify(const Config &cfg, std::ostream &out, std::ostream &err) {
  if (cfg.inputs.size() != 2) throw ParseError("verify needs a certificate file and a matrix file");
  std::vector<std::string> cvars;
  DecompCertificate c = parse_certificate(read_file(cfg.inputs[0]), &cvars);
  InputDoc doc = read_input_file(cfg.inputs[1]);
  VerifyResult v;
  if (cvars != doc.vars)
    v = {false, "variables of the certificate and the matrix file differ"};
  else
    v = verify_certificate(doc.matrix, c);
  Report r("detrep-report/1");
  r.add("command", std::string("verify"));
  r.add_bool("verified", v.ok);
  r.add("certified_order", c.certified_order);
  r.add("detail", v.message);
  emit(r, cfg, out);
  if (!v.ok) {
    err << "verification failed: " << v.message << "\n";
    return kExitVerify;
  }
  return kExitOk;
}

int cmd_fixtures(const Config &cfg, std::ostream &out, std::ostream &err) {
  auto cat = load_catalog(cfg.catalog);
  std::vector<std::string> failed;
  Report r("detrep-report/1");
  r.add("command", std::string("fixtures"));
  std::size_t w = 0;
  for (const auto &f : cat) w = std::max(w, f.name.size());
  int ran = 0;
  for (const auto &f : cat) {
    if (!cfg.filter.empty() && f.name.find(cfg.filter) == std::string::npos) continue;
    ++ran;
    auto rep = run_fixture(f, cfg.jet_order);
    std::string detail;
    for (const auto &e : rep.results)
      if (!e.pass) detail += " [" + e.predicate + ": expected " + e.expected + ", got " + e.actual + "]";
    if (cfg.output == "structured") {
      r.add("fixture." + f.name, std::string(rep.pass() ? "pass" : "FAIL") + detail);
    } else {
      out << f.name << std::string(w + 2 - f.name.size(), ' ') << (rep.pass() ? "pass" : "FAIL") << detail << "\n";
    }
    if (!rep.pass()) failed.push_back(f.name);
  }
  r.add("ran", ran);
  r.add("failed", static_cast<int>(failed.size()));
  if (cfg.output == "structured")
    out << r.structured();
  else
    out << ran << " fixture(s), " << failed.size() << " failed\n";
  if (!failed.empty()) {
    err << "failing fixtures:";
    for (const auto &n : failed) err << " " << n;
    err << "\n";
    return kExitFixtures;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"detrep: decomposition of determinantal representations"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--jet-order", cfg.jet_order, "jet order N (default 12)")->check(CLI::PositiveNumber)->each([&](const std::string &) {
    cfg.jet_given = true;
  });
  app.add_option("--seed", cfg.seed, "random seed (default 0)");
  app.add_option("--output", cfg.output, "human or structured")->check(CLI::IsMember({"human", "structured"}));
  auto *an = app.add_subcommand("analyze", "run the diagnostics on an input file");
  an->add_option("input", cfg.inputs, "input file")->required()->expected(1);
  auto *de = app.add_subcommand("decompose", "decompose and print a certificate");
  de->add_option("input", cfg.inputs, "input file")->required()->expected(1);
  de->add_option("--mode", cfg.mode, "saturated, tangential, triangular or multiple")
      ->check(CLI::IsMember({"saturated", "tangential", "triangular", "multiple"}));
  auto *ve = app.add_subcommand("verify", "check a certificate against a matrix file");
  ve->add_option("files", cfg.inputs, "certificate file and matrix file")->required()->expected(2);
  auto *fx = app.add_subcommand("fixtures", "run the fixture catalog");
  fx->add_option("--filter", cfg.filter, "only fixtures whose name contains this");
  fx->add_option("--catalog", cfg.catalog, "catalog path");
  for (auto *s : {an, de, ve, fx}) s->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }
  try {
    if (an->parsed()) return cmd_analyze(cfg, out);
    if (de->parsed()) return cmd_decompose(cfg, out);
    if (ve->parsed()) return cmd_verify(cfg, out, err);
    return cmd_fixtures(cfg, out, err);
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SpecError &e) {
    err << "specification mismatch: " << e.what() << "\n";
    return kExitSpec;
  } catch (const ObstructionError &e) {
    Report r("detrep-report/1");
    r.add("result", std::string("obstruction"));
    r.add("detail", std::string(e.what()));
    out << r.structured();
    err << "obstruction: " << e.what() << "\n";
    return kExitObstruction;
  } catch (const AlgebraError &e) {
    Report r("detrep-report/1");
    r.add("result", std::string("inconclusive"));
    r.add("detail", std::string(e.what()));
    out << r.structured();
    err << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace detrep
