#include "detrep/linalg.hpp"

#include <algorithm>

namespace detrep {

RatMat rat_identity(int n) {
  RatMat m(n, RatVec(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat rat_mul(const RatMat &a, const RatMat &b) {
  if (a.empty()) return {};
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RatMat r(n, RatVec(m, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

RatMat rat_transpose(const RatMat &a) {
  if (a.empty()) return {};
  RatMat t(a[0].size(), RatVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

namespace {
// in-place RREF; returns pivot columns
std::vector<int> rref(RatMat &a, int ncols) {
  std::vector<int> piv;
  int r = 0;
  const int nrows = static_cast<int>(a.size());
  for (int c = 0; c < ncols && r < nrows; ++c) {
    int p = r;
    while (p < nrows && a[p][c] == 0) ++p;
    if (p == nrows) continue;
    std::swap(a[p], a[r]);
    Rat inv = 1 / a[r][c];
    for (int j = c; j < static_cast<int>(a[r].size()); ++j) a[r][j] *= inv;
    for (int i = 0; i < nrows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (int j = c; j < static_cast<int>(a[i].size()); ++j) a[i][j] -= f * a[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}
}  // namespace

int rat_rank(RatMat a) {
  if (a.empty()) return 0;
  return static_cast<int>(rref(a, static_cast<int>(a[0].size())).size());
}

Rat rat_det(RatMat a) {
  const int n = static_cast<int>(a.size());
  Rat det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rat f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

std::optional<RatMat> rat_inverse(const RatMat &a) {
  const int n = static_cast<int>(a.size());
  RatMat aug(n, RatVec(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug, n);
  if (static_cast<int>(piv.size()) < n) return std::nullopt;
  RatMat inv(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

std::vector<RatVec> rat_nullspace(const RatMat &a, int ncols) {
  RatMat m = a;
  auto piv = rref(m, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<RatVec> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    RatVec v(ncols, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    basis.push_back(v);
  }
  return basis;
}

std::optional<RatVec> rat_solve(const RatMat &a, const RatVec &b, int ncols) {
  RatMat m = a;
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i].resize(ncols);
    m[i].push_back(b[i]);
  }
  auto piv = rref(m, ncols + 1);
  if (!piv.empty() && piv.back() == ncols) return std::nullopt;
  RatVec x(ncols, Rat(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = m[r][ncols];
  return x;
}

RatMat complete_basis(const std::vector<RatVec> &cols, int n) {
  std::vector<RatVec> basis = cols;
  for (int e = 0; e < n && static_cast<int>(basis.size()) < n; ++e) {
    RatVec v(n, Rat(0));
    v[e] = 1;
    basis.push_back(v);
    if (rat_rank(basis) < static_cast<int>(basis.size())) basis.pop_back();
  }
  // as columns
  RatMat m(n, RatVec(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m[i][j] = basis[j][i];
  return m;
}

namespace {
std::vector<mpz_class> divisors(mpz_class v) {
  if (v < 0) v = -v;
  std::vector<mpz_class> ds{1};
  mpz_class p = 2;
  while (p * p <= v) {
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e) {
      std::size_t cur = ds.size();
      mpz_class pk = 1;
      for (int k = 1; k <= e; ++k) {
        pk *= p;
        for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
      }
    }
    p += (p == 2) ? 1 : 2;
  }
  if (v > 1) {
    std::size_t cur = ds.size();
    for (std::size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * v);
  }
  return ds;
}

// synthetic division by (t - r); returns remainder
Rat deflate(RatVec &c, const Rat &r) {
  // c ascending: c[0] + c[1] t + ...
  const int n = static_cast<int>(c.size()) - 1;
  RatVec q(n);
  Rat acc = c[n];
  for (int i = n - 1; i >= 0; --i) {
    q[i] = acc;
    acc = c[i] + acc * r;
  }
  c = q;
  return acc;
}
}  // namespace

std::vector<std::pair<Rat, int>> rational_roots(const RatVec &coef) {
  RatVec c = coef;
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::vector<std::pair<Rat, int>> out;
  if (c.size() <= 1) return out;
  int zero_mult = 0;
  while (c.size() > 1 && c[0] == 0) {
    c.erase(c.begin());
    ++zero_mult;
  }
  if (zero_mult) out.emplace_back(Rat(0), zero_mult);
  if (c.size() <= 1) return out;
  mpz_class l = 1;
  for (auto &x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> ic;
  for (auto &x : c) ic.push_back(mpz_class(x * l));
  auto dp = divisors(ic.front());
  auto dq = divisors(ic.back());
  std::vector<Rat> cands;
  for (auto &p : dp)
    for (auto &q : dq) {
      Rat r(p, q);
      r.canonicalize();
      cands.push_back(r);
      cands.push_back(-r);
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  for (const auto &r : cands) {
    int m = 0;
    for (;;) {
      if (c.size() <= 1) break;
      RatVec trial = c;
      if (deflate(trial, r) != 0) break;
      c = trial;
      ++m;
    }
    if (m) out.emplace_back(r, m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
// r -= f * s
void axpy(SparseRow &r, const Rat &f, const SparseRow &s) {
  SparseRow out;
  out.reserve(r.size() + s.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < s.size()) {
    if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
      out.push_back(std::move(r[i++]));
    } else if (i == r.size() || s[j].first < r[i].first) {
      out.emplace_back(s[j].first, -f * s[j].second);
      ++j;
    } else {
      Rat v = r[i].second - f * s[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r = std::move(out);
}
}  // namespace

SparseRow SparseEchelon::reduce(SparseRow r) const {
  for (std::size_t k = 0; k < rows_.size() && !r.empty(); ++k) {
    int pc = piv_[k];
    auto it = std::lower_bound(r.begin(), r.end(), std::make_pair(pc, Rat(0)),
                               [](const auto &a, const auto &b) { return a.first < b.first; });
    if (it == r.end() || it->first != pc) continue;
    Rat f = it->second;
    axpy(r, f, rows_[k]);
  }
  return r;
}

bool SparseEchelon::add(SparseRow r) {
  r = reduce(std::move(r));
  if (r.empty()) return false;
  Rat inv = 1 / r.front().second;
  for (auto &e : r) e.second *= inv;
  int pc = r.front().first;
  rows_.push_back(std::move(r));
  piv_.push_back(pc);
  return true;
}

std::optional<RatVec> sparse_solve(const std::vector<SparseRow> &eqs, int nunk) {
  SparseEchelon ech;
  for (const auto &e : eqs) {
    SparseRow r = ech.reduce(e);
    if (r.empty()) continue;
    if (r.front().first == nunk) return std::nullopt;
    ech.add(std::move(r));
  }
  RatVec x(nunk, Rat(0));
  const auto &rows = ech.rows();
  const auto &piv = ech.pivots();
  for (int k = static_cast<int>(rows.size()) - 1; k >= 0; --k) {
    Rat v = 0;
    for (const auto &[c, a] : rows[k]) {
      if (c == piv[k]) continue;
      if (c == nunk)
        v += a;
      else
        v -= a * x[c];
    }
    x[piv[k]] = v;
  }
  return x;
}

}  // namespace detrep
