#include "detrep/fixtures.hpp"

#include <sstream>

namespace detrep {

namespace {

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string squash(const std::string &s) {
  std::istringstream in(s);
  std::string out, w;
  while (in >> w) out += (out.empty() ? "" : " ") + w;
  return out;
}

std::string yes(bool b) { return b ? "true" : "false"; }

std::string sizes_of(const DecompCertificate &c) {
  std::string s;
  for (const auto &b : c.blocks) s += (s.empty() ? "" : " ") + std::to_string(b.rows());
  return s;
}

// runs an engine and maps the outcome to ok / obstruction / inconclusive
template <class F>
std::string outcome(F f, std::string *sizes = nullptr) {
  try {
    auto [m, c] = f();
    bool v = verify_certificate(m, c).ok;
    if (sizes) *sizes = sizes_of(c);
    return v ? "ok" : "unverified";
  } catch (const ObstructionError &) {
    return "obstruction";
  } catch (const InconclusiveError &) {
    return "inconclusive";
  }
}

Poly rest_product(const HypersurfaceSpec &H) {
  Poly r = Poly::constant(H.nvars, 1);
  for (std::size_t i = 1; i < H.factors.size(); ++i) r = r * pow(H.factors[i].first, H.factors[i].second);
  return r;
}

IdealGens parse_ideal(const std::string &text, const std::vector<std::string> &vars) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '<' || s.back() != '>') throw ParseError("ideal must be written <g1, g2, ...>");
  s = s.substr(1, s.size() - 2);
  std::vector<Poly> g;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) g.push_back(parse_poly(trim(part), vars));
  return IdealGens(static_cast<int>(vars.size()), g);
}

std::string ideal_string(const GroebnerBasis &G, const std::vector<std::string> &vars) {
  std::string s = "<";
  for (std::size_t i = 0; i < G.basis.size(); ++i) s += (i ? ", " : "") + to_string(G.basis[i], vars);
  return s + ">";
}

const BranchParam &find_branch(const Fixture &f, const std::string &label) {
  for (const auto &b : f.branches)
    if (b.label == label) return b;
  throw ParseError("fixture " + f.name + ": no branch '" + label + "'");
}

}  // namespace

bool FixtureReport::pass() const {
  for (const auto &r : results)
    if (!r.pass) return false;
  return !results.empty();
}

std::vector<Fixture> parse_catalog(const std::string &text) {
  std::vector<Fixture> out;
  std::istringstream in(text);
  std::string line, matrix_text, factors_text;
  int lineno = 0;
  auto close = [&]() {
    if (out.empty()) return;
    Fixture &f = out.back();
    const std::string where = "fixture " + f.name;
    if (f.vars.empty()) throw ParseError(where + ": missing vars");
    if (matrix_text.empty() || factors_text.empty()) throw ParseError(where + ": missing matrix or factors");
    if (f.expectations.empty()) throw ParseError(where + ": no expectations");
    try {
      f.matrix = parse_matrix(matrix_text, f.vars);
      f.spec = parse_factors(factors_text, f.vars);
      validate_spec(f.spec);
      check_determinant(f.matrix, f.spec.product());
    } catch (const AlgebraError &e) {
      throw ParseError(where + ": " + e.what());
    }
    matrix_text.clear();
    factors_text.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("fixture ", 0) == 0) {
      close();
      Fixture f;
      f.name = trim(line.substr(8));
      if (f.name.empty()) throw ParseError("line " + std::to_string(lineno) + ": fixture without a name");
      for (const auto &g : out)
        if (g.name == f.name) throw ParseError("duplicate fixture " + f.name);
      out.push_back(f);
      continue;
    }
    if (out.empty()) throw ParseError("line " + std::to_string(lineno) + ": content before the first fixture");
    Fixture &f = out.back();
    if (line.rfind("expect ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ParseError("fixture " + f.name + ": expect line without '='");
      f.expectations.emplace_back(trim(line.substr(7, eq - 7)), squash(line.substr(eq + 1)));
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("fixture " + f.name + ": cannot read line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, colon)), val = trim(line.substr(colon + 1));
    if (key == "vars") {
      f.vars = parse_vars(val);
    } else if (key == "matrix") {
      matrix_text = val;
    } else if (key == "factors") {
      factors_text = val;
    } else if (key == "source") {
      f.source = val;
    } else if (key.rfind("branch", 0) == 0) {
      if (f.vars.empty()) throw ParseError("fixture " + f.name + ": branch before vars");
      try {
        f.branches.push_back(parse_branch(line, f.vars));
      } catch (const AlgebraError &e) {
        throw ParseError("fixture " + f.name + ": " + e.what());
      }
    } else {
      throw ParseError("fixture " + f.name + ": unknown key '" + key + "'");
    }
  }
  close();
  return out;
}

std::vector<Fixture> load_catalog(const std::string &path) { return parse_catalog(read_file(path)); }

std::string evaluate_predicate(const Fixture &f, const std::string &predicate, const std::string &arg, int N) {
  const PolyMatrix &M = f.matrix;
  const HypersurfaceSpec &H = f.spec;
  auto two_way = [&]() {
    if (H.factors.size() < 2) throw SpecError("needs at least two factors");
    return std::make_pair(pow(H.factors[0].first, H.factors[0].second), rest_product(H));
  };
  if (predicate == "multiplicity") return std::to_string(multiplicity(determinant(M)));
  if (predicate == "corank0") return std::to_string(corank_at_origin(M));
  if (predicate == "max-gen-origin") return yes(is_max_generated_at_origin(M, H.product()));
  if (predicate == "max-gen-smooth") return yes(is_max_generated_smooth_locus(M, H));
  if (predicate == "mf-augment") {
    try {
      mf_augment(M, H);
      return "ok";
    } catch (const ObstructionError &) {
      return "fails";
    }
  }
  if (predicate == "saturated") {
    auto r = is_saturated_spec(M, H, N);
    if (r.status == SatStatus::Saturated) return "true";
    if (r.status == SatStatus::NotSaturated) return "false";
    return "inconclusive";
  }
  if (predicate == "decompose-saturated") {
    auto [a, b] = two_way();
    return outcome([&] { return std::make_pair(M, decompose_saturated(M, a, b, N)); });
  }
  if (predicate == "tangential-blocks" || predicate == "triangular-blocks" || predicate == "multiple-blocks") {
    std::string sizes;
    std::string o = outcome(
        [&] {
          if (predicate == "tangential-blocks") return std::make_pair(M, tangential_decompose(M, N));
          if (predicate == "triangular-blocks")
            return std::make_pair(M, curve_triangularize(M, H, branches_by_factor(H, f.branches), N));
          if (f.branches.empty()) throw SpecError("multiple-blocks needs a branch");
          return std::make_pair(M, multiple_curve_decompose(M, H.factors[0].first, f.branches[0], H.factors[0].second, N));
        },
        &sizes);
    return o == "ok" ? sizes : o;
  }
  if (predicate == "adjugate-ideal") {
    auto adj = adjugate(M);
    std::vector<Poly> g;
    for (int i = 0; i < M.dim(); ++i)
      for (int j = 0; j < M.dim(); ++j)
        if (!adj.matrix(i, j).is_zero()) g.push_back(adj.matrix(i, j));
    return ideal_string(buchberger(IdealGens(M.nvars(), g)), f.vars);
  }
  if (predicate == "min-gens-I1") return std::to_string(triangular_obstruction(M, 1, 1, N).min_gens);
  if (predicate == "triangular-obstruction") {
    int p1 = 1, p2 = 1;
    if (!arg.empty()) {
      auto c = arg.find(',');
      if (c == std::string::npos) throw ParseError("triangular-obstruction(p1,p2) expected");
      p1 = std::stoi(arg.substr(0, c));
      p2 = std::stoi(arg.substr(c + 1));
    }
    return yes(triangular_obstruction(M, p1, p2, N).obstructed);
  }
  if (predicate == "fibre-independent") return yes(fibre_independence_test(M, f.branches, N).independent);
  if (predicate == "kernel-limit") {
    auto lim = kernel_fibre_limit(M, find_branch(f, arg), N);
    if (!lim.defined) return "indeterminate";
    std::string s;
    for (const auto &v : lim.direction) s += (s.empty() ? "" : ":") + to_string(v);
    return s;
  }
  throw ParseError("unknown predicate '" + predicate + "'");
}

FixtureReport run_fixture(const Fixture &f, int jet_order) {
  FixtureReport rep;
  rep.name = f.name;
  for (const auto &[pred, want] : f.expectations) {
    ExpectationResult r;
    r.predicate = pred;
    r.expected = want;
    std::string name = pred, arg;
    auto p = pred.find('(');
    if (p != std::string::npos && pred.back() == ')') {
      name = pred.substr(0, p);
      arg = pred.substr(p + 1, pred.size() - p - 2);
    }
    try {
      r.actual = squash(evaluate_predicate(f, name, arg, jet_order));
      if (name == "adjugate-ideal") {
        // compare reduced bases, not spellings
        auto mine = buchberger(parse_ideal(r.actual, f.vars));
        auto theirs = buchberger(parse_ideal(want, f.vars));
        r.pass = mine.basis == theirs.basis;
      } else {
        r.pass = r.actual == want;
      }
    } catch (const std::exception &e) {
      r.actual = std::string("error: ") + e.what();
      r.pass = false;
    }
    rep.results.push_back(r);
  }
  return rep;
}

}  // namespace detrep
