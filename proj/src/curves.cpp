#include "detrep/curves.hpp"

#include <algorithm>
#include <sstream>

namespace detrep {

int max_exponent(const BranchParam &b) {
  int m = 1;
  for (const auto &c : b.comps) m = std::max(m, c.degree());
  return m;
}

int default_t_precision(const BranchParam &b) { return 4 * max_exponent(b); }

int valuation(const Poly &g, const BranchParam &b, int T) {
  if (static_cast<int>(b.comps.size()) != g.nvars()) throw AlgebraError("valuation: branch arity mismatch");
  Poly s = substitute_curve(g, b.comps, T);
  return s.is_zero() ? kInf : s.ord();
}

// the pullback of a polynomial along a polynomial branch has degree <= deg g * maxexp
int exact_precision(const Poly &g, const BranchParam &b) { return std::max(1, g.degree()) * max_exponent(b) + 1; }

int valuation(const Poly &g, const BranchParam &b) { return valuation(g, b, exact_precision(g, b)); }

bool vanishes_on(const Poly &g, const BranchParam &b, int T) { return valuation(g, b, std::max(T, exact_precision(g, b))) == kInf; }

ValuationPair pair_valuation(const Poly &g, const Poly &f, const BranchParam &b) {
  if (g.is_zero()) throw AlgebraError("pair_valuation: zero element");
  ValuationPair v;
  Poly h = g;
  for (;;) {
    auto q = exact_divide(h, f);
    if (!q) break;
    h = std::move(*q);
    ++v.f_order;
  }
  v.residual = valuation(h, b);
  return v;
}

ConductorAdjoint an_conductor_adjoint(int l, int lp, Parity parity) {
  if (l < 1 || lp < 0 || lp >= l) throw AlgebraError("an_conductor_adjoint: need 0 <= l' < l");
  ConductorAdjoint c;
  std::vector<std::string> xy{"x", "y"};
  c.adjoint = IdealGens(2, {parse_poly("x^" + std::to_string(l - lp), xy), parse_poly("y", xy)});
  std::ostringstream os;
  if (parity == Parity::Even)
    os << "<t^" << 2 * l - 2 * lp << ", t^" << 2 * l + 1 << ">";
  else
    os << "<t1^" << l - lp << " + t2^" << l - lp << ", t1^" << l << " - t2^" << l << ">";
  c.conductor = os.str();
  return c;
}

BranchParam parse_branch(const std::string &line, const std::vector<std::string> &vars) {
  std::string s = line;
  auto trim = [](std::string v) {
    auto a = v.find_first_not_of(" \t");
    auto b = v.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : v.substr(a, b - a + 1);
  };
  s = trim(s);
  if (s.rfind("branch", 0) == 0) s = trim(s.substr(6));
  auto colon = s.find(':');
  if (colon == std::string::npos) throw AlgebraError("branch line needs '<label>: ...'");
  BranchParam b;
  b.label = trim(s.substr(0, colon));
  if (b.label.empty()) throw AlgebraError("branch label is empty");
  b.comps.assign(vars.size(), Poly(1));
  std::vector<bool> seen(vars.size(), false);
  std::stringstream rest(s.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw AlgebraError("branch component needs 'var = expr'");
    std::string v = trim(item.substr(0, eq));
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) throw AlgebraError("branch names unknown variable '" + v + "'");
    auto k = it - vars.begin();
    b.comps[k] = parse_poly(item.substr(eq + 1), {"t"});
    seen[k] = true;
  }
  for (std::size_t k = 0; k < vars.size(); ++k)
    if (!seen[k]) throw AlgebraError("branch " + b.label + " misses variable " + vars[k]);
  bool all_zero = std::all_of(b.comps.begin(), b.comps.end(), [](const Poly &p) { return p.is_zero(); });
  if (all_zero) throw AlgebraError("branch " + b.label + " is constant");
  for (const auto &c : b.comps)
    if (c.constant_term() != 0) throw AlgebraError("branch " + b.label + " does not pass through the origin");
  return b;
}

std::string to_string(const BranchParam &b, const std::vector<std::string> &vars) {
  std::ostringstream os;
  os << "branch " << b.label << ":";
  for (std::size_t k = 0; k < b.comps.size(); ++k)
    os << (k ? ", " : " ") << vars[k] << " = " << to_string(b.comps[k], {"t"});
  return os.str();
}

namespace {

const std::vector<std::string> kXY{"x", "y"};

// y - lam(x) -> lam
Poly branch_lambda(const Poly &f) {
  if (f.nvars() != 2) throw AlgebraError("normal forms live in two variables");
  Poly y = Poly::var(2, 1);
  Poly lam = y - f;
  if (deg_var(lam, 1) > 0) throw AlgebraError("diagonal entry " + to_string(f, kXY) + " is not of the form y - lam(x)");
  return lam;
}

bool univariate_x(const Poly &p) { return deg_var(p, 1) <= 0; }

}  // namespace

int contact_order(const Poly &fi, const Poly &fj) { return (branch_lambda(fi) - branch_lambda(fj)).ord(); }

bool operator==(const NormalFormSpec &a, const NormalFormSpec &b) {
  if (a.family != b.family) return false;
  if (a.family == NormalFamily::Cusp) return a.l == b.l && a.m == b.m && a.p1 == b.p1 && a.p2 == b.p2;
  return a.diag == b.diag && a.beta == b.beta && a.n == b.n && a.h == b.h;
}

void check_normal_form(const NormalFormSpec &s) {
  if (s.family == NormalFamily::Cusp) {
    if (s.l < 1 || s.m < 1 || s.m > 2 * s.l) throw AlgebraError("cusp normal form needs 1 <= m <= 2l");
    if (!univariate_x(s.p1) || !univariate_x(s.p2)) throw AlgebraError("p1, p2 must be polynomials in x");
    if (s.p1.constant_term() != 0 || s.p2.constant_term() != 0) throw AlgebraError("p1(0) = p2(0) = 0 required");
    if (s.p1.degree() >= s.m) throw AlgebraError("deg p1 < m violated");
    if (s.p2.degree() >= 2 * s.l + 1 - s.m) throw AlgebraError("deg p2 < 2l+1-m violated");
    return;
  }
  const int p = static_cast<int>(s.diag.size());
  if (p < 1) throw AlgebraError("chain normal form needs a diagonal");
  if (static_cast<int>(s.beta.size()) != p - 1 || static_cast<int>(s.n.size()) != p - 1)
    throw AlgebraError("chain normal form needs p-1 superdiagonal entries");
  for (int i = 0; i < p; ++i) {
    Poly lam = branch_lambda(s.diag[i]);
    if (lam.constant_term() != 0 || lam.homogeneous(1).coeff(Monomial({1, 0})) != 0)
      throw AlgebraError("branches must be tangent to y = 0");
    for (int j = 0; j < i; ++j)
      if (contact_order(s.diag[i], s.diag[j]) == kInf) throw AlgebraError("repeated branch on the diagonal");
  }
  for (int i = 0; i + 1 < p; ++i) {
    if (s.beta[i] != 0 && s.beta[i] != 1) throw AlgebraError("beta must be 0 or 1");
    int c = contact_order(s.diag[i], s.diag[i + 1]);
    if (s.beta[i] && (s.n[i] < 1 || s.n[i] >= c))
      throw AlgebraError("superdiagonal exponent must satisfy 1 <= n < contact order");
  }
  for (const auto &[ij, hv] : s.h) {
    auto [i, j] = ij;
    if (i < 0 || j >= p || j < i + 2) throw AlgebraError("h entries live strictly above the superdiagonal");
    if (hv.is_zero()) continue;
    if (!univariate_x(hv)) throw AlgebraError("h must be a polynomial in x");
    if (hv.ord() < 1) throw AlgebraError("ord h >= 1 violated");
    if (hv.degree() >= contact_order(s.diag[i], s.diag[j])) throw AlgebraError("deg h < contact order violated");
  }
}

PolyMatrix normal_form_build(const NormalFormSpec &s) {
  check_normal_form(s);
  Poly x = Poly::var(2, 0), y = Poly::var(2, 1);
  if (s.family == NormalFamily::Cusp) {
    PolyMatrix M(3, 3, 2);
    M(0, 0) = y;
    M(0, 1) = s.p1;
    M(0, 2) = s.p2;
    M(1, 1) = y;
    M(1, 2) = pow(x, 2 * s.l + 1 - s.m);
    M(2, 1) = pow(x, s.m);
    M(2, 2) = y;
    Poly expect = y * (y * y - pow(x, 2 * s.l + 1));
    if (!(determinant(M) == expect)) throw AlgebraError("normal_form_build: determinant check failed");
    return M;
  }
  const int p = static_cast<int>(s.diag.size());
  PolyMatrix M(p, p, 2);
  Poly prod = Poly::constant(2, 1);
  for (int i = 0; i < p; ++i) {
    M(i, i) = s.diag[i];
    prod = prod * s.diag[i];
  }
  for (int i = 0; i + 1 < p; ++i)
    if (s.beta[i]) M(i, i + 1) = pow(x, s.n[i]);
  for (const auto &[ij, hv] : s.h) M(ij.first, ij.second) = hv;
  if (!(determinant(M) == prod)) throw AlgebraError("normal_form_build: determinant check failed");
  return M;
}

std::string to_string(const NormalFormSpec &s) {
  std::ostringstream os;
  if (s.family == NormalFamily::Cusp) {
    os << "cusp l=" << s.l << " m=" << s.m << " p1=" << to_string(s.p1, kXY) << " p2=" << to_string(s.p2, kXY);
    return os.str();
  }
  os << "chain diag=[";
  for (std::size_t i = 0; i < s.diag.size(); ++i) os << (i ? ", " : "") << to_string(s.diag[i], kXY);
  os << "] super=[";
  for (std::size_t i = 0; i < s.beta.size(); ++i)
    os << (i ? ", " : "") << (s.beta[i] ? "x^" + std::to_string(s.n[i]) : std::string("0"));
  os << "]";
  for (const auto &[ij, hv] : s.h)
    if (!hv.is_zero()) os << " h" << ij.first + 1 << ij.second + 1 << "=" << to_string(hv, kXY);
  return os.str();
}

}  // namespace detrep
