// Exact multivariate polynomials over Q, doubling as truncated power series.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace detrep {

using Rat = mpq_class;

// ord/valuation of zero
inline constexpr int kInf = std::numeric_limits<int>::max();
inline constexpr int kMaxVars = 6;

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  int deg = 0;

  Monomial() = default;
  explicit Monomial(const std::vector<int> &exps);

  int operator[](int i) const { return e[i]; }
  void set(int i, int v) {
    deg += v - e[i];
    e[i] = static_cast<std::uint16_t>(v);
  }
  bool divides(const Monomial &o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  friend Monomial operator*(const Monomial &a, const Monomial &b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] + b.e[i];
    r.deg = a.deg + b.deg;
    return r;
  }
  // caller guarantees b divides a
  friend Monomial operator/(const Monomial &a, const Monomial &b) {
    Monomial r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] - b.e[i];
    r.deg = a.deg - b.deg;
    return r;
  }
  friend bool operator==(const Monomial &a, const Monomial &b) { return a.e == b.e; }
};

Monomial lcm(const Monomial &a, const Monomial &b);

// Storage/serialization order: ascending total degree, then x1^a before x2^a.
struct GrlexLess {
  bool operator()(const Monomial &a, const Monomial &b) const {
    if (a.deg != b.deg) return a.deg < b.deg;
    for (int i = 0; i < kMaxVars; ++i)
      if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    return false;
  }
};

// true when a > b in graded reverse lexicographic order
bool grevlex_greater(const Monomial &a, const Monomial &b);

using Term = std::pair<Monomial, Rat>;

class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars);
  static Poly constant(int nvars, const Rat &c);
  static Poly var(int nvars, int i);
  static Poly term(int nvars, const Monomial &m, const Rat &c);

  int nvars() const { return nvars_; }
  const std::vector<Term> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rat coeff(const Monomial &m) const;
  Rat constant_term() const;
  int ord() const { return terms_.empty() ? kInf : terms_.front().first.deg; }
  int degree() const { return terms_.empty() ? -1 : terms_.back().first.deg; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.deg == 0); }

  // builds from unsorted terms, combining duplicates
  static Poly from_terms(int nvars, std::vector<Term> ts);

  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  Poly &operator*=(const Rat &c);
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rat(-1); }
  friend Poly operator*(Poly a, const Rat &c) { return a *= c; }
  friend Poly operator*(const Rat &c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly &a, const Poly &b);
  friend bool operator==(const Poly &a, const Poly &b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  // terms of total degree exactly k
  Poly homogeneous(int k) const;

 private:
  int nvars_ = 0;
  std::vector<Term> terms_;  // sorted by GrlexLess, no zero coefficients
};

void check_same_nvars(const Poly &a, const Poly &b);

Poly add(const Poly &a, const Poly &b);
Poly mul(const Poly &a, const Poly &b);
// jet(a*b, N) without forming high-degree products
Poly mul_trunc(const Poly &a, const Poly &b, int N);
Poly pow(const Poly &p, int k);
Poly pow_trunc(const Poly &p, int k, int N);
Poly jet(const Poly &p, int N);
int ord(const Poly &p);
int ord_var(const Poly &p, int i);
int deg_var(const Poly &p, int i);

// x_i -> sum_j T[i][j] x_j
Poly linear_change(const Poly &p, const std::vector<std::vector<Rat>> &T);
// exact quotient p/q or nullopt
std::optional<Poly> exact_divide(const Poly &p, const Poly &q);
// q with jet(p*q, N) = 1
Poly invert_unit_jet(const Poly &p, int N);
// p(c_1(t),...,c_n(t)) truncated above t^N; components are univariate (nvars 1)
Poly substitute_curve(const Poly &p, const std::vector<Poly> &comps, int N);
// general substitution x_i -> images[i] (images share an nvars)
Poly substitute(const Poly &p, const std::vector<Poly> &images);
Poly substitute_trunc(const Poly &p, const std::vector<Poly> &images, int N);
Rat evaluate(const Poly &p, const std::vector<Rat> &pt);
Poly derivative(const Poly &p, int i);
Poly lowest_form(const Poly &p);
// drops variables past nvars_new (must not occur) or pads
Poly reembed(const Poly &p, int nvars_new);

std::string to_string(const Poly &p, const std::vector<std::string> &vars);
std::string to_string(const Rat &r);

Poly parse_poly(const std::string &text, const std::vector<std::string> &vars);
Rat parse_rat(const std::string &text);

}  // namespace detrep
