#include "detrep/psring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace detrep {

Monomial::Monomial(const std::vector<int> &exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVars))
    throw AlgebraError("too many variables (max " + std::to_string(kMaxVars) + ")");
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0) throw AlgebraError("negative exponent");
    e[i] = static_cast<std::uint16_t>(exps[i]);
    deg += exps[i];
  }
}

Monomial lcm(const Monomial &a, const Monomial &b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

bool grevlex_greater(const Monomial &a, const Monomial &b) {
  if (a.deg != b.deg) return a.deg > b.deg;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

Poly::Poly(int nvars) : nvars_(nvars) {
  if (nvars < 1 || nvars > kMaxVars) throw AlgebraError("bad variable count");
}

Poly Poly::constant(int nvars, const Rat &c) {
  Poly p(nvars);
  if (c != 0) p.terms_.emplace_back(Monomial(), c);
  return p;
}

Poly Poly::var(int nvars, int i) {
  Poly p(nvars);
  Monomial m;
  m.set(i, 1);
  p.terms_.emplace_back(m, Rat(1));
  return p;
}

Poly Poly::term(int nvars, const Monomial &m, const Rat &c) {
  Poly p(nvars);
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

Poly Poly::from_terms(int nvars, std::vector<Term> ts) {
  Poly p(nvars);
  std::sort(ts.begin(), ts.end(),
            [](const Term &a, const Term &b) { return GrlexLess{}(a.first, b.first); });
  for (auto &t : ts) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Rat Poly::coeff(const Monomial &m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term &t, const Monomial &k) { return GrlexLess{}(t.first, k); });
  if (it != terms_.end() && it->first == m) return it->second;
  return Rat(0);
}

Rat Poly::constant_term() const {
  if (!terms_.empty() && terms_.front().first.deg == 0) return terms_.front().second;
  return Rat(0);
}

void check_same_nvars(const Poly &a, const Poly &b) {
  if (a.nvars() != b.nvars())
    throw AlgebraError("variable-count mismatch: " + std::to_string(a.nvars()) + " vs " +
                       std::to_string(b.nvars()));
}

namespace {
void merge_into(std::vector<Term> &out, const std::vector<Term> &a, const std::vector<Term> &b, bool negate) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  GrlexLess lt;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && lt(a[i].first, b[j].first))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || lt(b[j].first, a[i].first)) {
      out.emplace_back(b[j].first, negate ? Rat(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rat c = negate ? Rat(a[i].second - b[j].second) : Rat(a[i].second + b[j].second);
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
}
}  // namespace

Poly &Poly::operator+=(const Poly &o) {
  check_same_nvars(*this, o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  merge_into(out, terms_, o.terms_, false);
  terms_ = std::move(out);
  return *this;
}

Poly &Poly::operator-=(const Poly &o) {
  check_same_nvars(*this, o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  merge_into(out, terms_, o.terms_, true);
  terms_ = std::move(out);
  return *this;
}

Poly &Poly::operator*=(const Rat &c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto &t : terms_) t.second *= c;
  return *this;
}

Poly operator*(const Poly &a, const Poly &b) { return mul_trunc(a, b, kInf); }

Poly Poly::homogeneous(int k) const {
  Poly r(nvars_);
  for (const auto &t : terms_)
    if (t.first.deg == k) r.terms_.push_back(t);
  return r;
}

Poly add(const Poly &a, const Poly &b) { return a + b; }
Poly mul(const Poly &a, const Poly &b) { return a * b; }

Poly mul_trunc(const Poly &a, const Poly &b, int N) {
  check_same_nvars(a, b);
  Poly r(a.nvars());
  if (a.is_zero() || b.is_zero()) return r;
  if (a.ord() != kInf && b.ord() != kInf && N != kInf && a.ord() + b.ord() > N) return r;
  if (b.size() == 1 && b.terms()[0].first.deg == 0) {
    r = jet(a, N);
    return r *= b.terms()[0].second;
  }
  if (a.size() == 1 && a.terms()[0].first.deg == 0) {
    r = jet(b, N);
    return r *= a.terms()[0].second;
  }
  std::map<Monomial, Rat, GrlexLess> acc;
  Rat prod;
  for (const auto &ta : a.terms()) {
    if (N != kInf && ta.first.deg + b.ord() > N) break;
    for (const auto &tb : b.terms()) {
      if (N != kInf && ta.first.deg + tb.first.deg > N) break;
      Monomial m = ta.first * tb.first;
      mpq_mul(prod.get_mpq_t(), ta.second.get_mpq_t(), tb.second.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(m, prod);
      if (!inserted) it->second += prod;
    }
  }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto &kv : acc)
    if (kv.second != 0) ts.emplace_back(kv.first, std::move(kv.second));
  return Poly::from_terms(a.nvars(), std::move(ts));
}

Poly pow(const Poly &p, int k) { return pow_trunc(p, k, kInf); }

Poly pow_trunc(const Poly &p, int k, int N) {
  if (k < 0) throw AlgebraError("negative power");
  Poly r = Poly::constant(p.nvars(), 1);
  Poly base = p;
  while (k > 0) {
    if (k & 1) r = mul_trunc(r, base, N);
    k >>= 1;
    if (k) base = mul_trunc(base, base, N);
  }
  return jet(r, N);
}

Poly jet(const Poly &p, int N) {
  if (N == kInf || p.degree() <= N) return p;
  std::vector<Term> ts;
  for (const auto &t : p.terms())
    if (t.first.deg <= N) ts.push_back(t);
  return Poly::from_terms(p.nvars(), std::move(ts));
}

int ord(const Poly &p) { return p.ord(); }

int ord_var(const Poly &p, int i) {
  if (p.is_zero()) return kInf;
  int m = kInf;
  for (const auto &t : p.terms()) m = std::min(m, static_cast<int>(t.first[i]));
  return m;
}

int deg_var(const Poly &p, int i) {
  int m = -1;
  for (const auto &t : p.terms()) m = std::max(m, static_cast<int>(t.first[i]));
  return m;
}

namespace {
Rat small_det(std::vector<std::vector<Rat>> a) {
  const std::size_t n = a.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}
}  // namespace

Poly linear_change(const Poly &p, const std::vector<std::vector<Rat>> &T) {
  const int n = p.nvars();
  if (static_cast<int>(T.size()) != n) throw AlgebraError("linear_change: size mismatch");
  for (const auto &row : T)
    if (static_cast<int>(row.size()) != n) throw AlgebraError("linear_change: size mismatch");
  if (small_det(T) == 0) throw AlgebraError("linear_change: singular matrix");
  std::vector<Poly> images;
  for (int i = 0; i < n; ++i) {
    Poly img(n);
    for (int j = 0; j < n; ++j) img += Poly::var(n, j) * T[i][j];
    images.push_back(img);
  }
  return substitute(p, images);
}

std::optional<Poly> exact_divide(const Poly &p, const Poly &q) {
  check_same_nvars(p, q);
  if (q.is_zero()) throw AlgebraError("exact_divide: division by zero");
  Poly r = p;
  std::vector<Term> quot;
  const Term &lq = q.terms().back();
  // quotient terms come out in decreasing order; the remainder's grlex-leading term is last
  while (!r.is_zero()) {
    const Term &lr = r.terms().back();
    if (!lq.first.divides(lr.first)) return std::nullopt;
    Monomial m = lr.first / lq.first;
    Rat c = lr.second / lq.second;
    quot.emplace_back(m, c);
    r -= Poly::term(p.nvars(), m, c) * q;
  }
  return Poly::from_terms(p.nvars(), std::move(quot));
}

Poly invert_unit_jet(const Poly &p, int N) {
  Rat c = p.constant_term();
  if (c == 0) throw AlgebraError("invert_unit_jet: constant term is zero (not a unit)");
  const int n = p.nvars();
  Rat ci = 1 / c;
  // u = 1 - p/c has order >= 1; 1/p = (1/c) * sum u^k
  Poly u = Poly::constant(n, 1) - p * ci;
  u = jet(u, N);
  Poly q = Poly::constant(n, 1);
  for (int k = 0; k < N; ++k) q = Poly::constant(n, 1) + mul_trunc(u, q, N);
  return q * ci;
}

Poly substitute_trunc(const Poly &p, const std::vector<Poly> &images, int N) {
  if (static_cast<int>(images.size()) != p.nvars()) throw AlgebraError("substitute: arity mismatch");
  if (images.empty()) throw AlgebraError("substitute: no images");
  const int m = images[0].nvars();
  for (const auto &im : images) check_same_nvars(im, images[0]);
  std::vector<std::vector<Poly>> pw(p.nvars());
  for (int i = 0; i < p.nvars(); ++i) {
    int dmax = deg_var(p, i);
    pw[i].push_back(Poly::constant(m, 1));
    for (int k = 1; k <= dmax; ++k) pw[i].push_back(mul_trunc(pw[i].back(), images[i], N));
  }
  Poly r(m);
  for (const auto &t : p.terms()) {
    Poly acc = Poly::constant(m, t.second);
    for (int i = 0; i < p.nvars() && !acc.is_zero(); ++i)
      if (t.first[i] > 0) acc = mul_trunc(acc, pw[i][t.first[i]], N);
    r += acc;
  }
  return r;
}

Poly substitute(const Poly &p, const std::vector<Poly> &images) { return substitute_trunc(p, images, kInf); }

Poly substitute_curve(const Poly &p, const std::vector<Poly> &comps, int N) {
  for (const auto &c : comps)
    if (c.nvars() != 1) throw AlgebraError("substitute_curve: components must be univariate");
  return substitute_trunc(p, comps, N);
}

Rat evaluate(const Poly &p, const std::vector<Rat> &pt) {
  if (static_cast<int>(pt.size()) != p.nvars()) throw AlgebraError("evaluate: arity mismatch");
  Rat s = 0;
  for (const auto &t : p.terms()) {
    Rat v = t.second;
    for (int i = 0; i < p.nvars(); ++i)
      for (int k = 0; k < t.first[i]; ++k) v *= pt[i];
    s += v;
  }
  return s;
}

Poly derivative(const Poly &p, int i) {
  std::vector<Term> ts;
  for (const auto &t : p.terms()) {
    if (t.first[i] == 0) continue;
    Monomial m = t.first;
    int e = m[i];
    m.set(i, e - 1);
    ts.emplace_back(m, t.second * e);
  }
  return Poly::from_terms(p.nvars(), std::move(ts));
}

Poly lowest_form(const Poly &p) { return p.is_zero() ? p : p.homogeneous(p.ord()); }

Poly reembed(const Poly &p, int nvars_new) {
  std::vector<Term> ts;
  for (const auto &t : p.terms()) {
    for (int i = nvars_new; i < kMaxVars; ++i)
      if (t.first[i] != 0) throw AlgebraError("reembed: variable out of range");
    ts.push_back(t);
  }
  return Poly::from_terms(nvars_new, std::move(ts));
}

std::string to_string(const Rat &r) { return r.get_str(); }

std::string to_string(const Poly &p, const std::vector<std::string> &vars) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &t : p.terms()) {
    Rat c = t.second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool one = (c == 1);
    bool wrote = false;
    if (!one || t.first.deg == 0) {
      os << c.get_str();
      wrote = true;
    }
    for (int i = 0; i < p.nvars(); ++i) {
      int e = t.first[i];
      if (e == 0) continue;
      if (wrote) os << "*";
      os << (i < static_cast<int>(vars.size()) ? vars[i] : "v" + std::to_string(i));
      if (e > 1) os << "^" << e;
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace detrep
