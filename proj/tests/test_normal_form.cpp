#include <gtest/gtest.h>

#include "detrep/decompose.hpp"
#include "detrep/textio.hpp"
#include "gen.hpp"

using namespace detrep;

namespace {
const std::vector<std::string> XY{"x", "y"};
Poly P(const std::string &s) { return parse_poly(s, XY); }
BranchParam B(const std::string &s) { return parse_branch(s, XY); }
constexpr int kN = 12;

HypersurfaceSpec spec_of(const NormalFormSpec &s) {
  HypersurfaceSpec H;
  H.nvars = 2;
  if (s.family == NormalFamily::Cusp) {
    H.factors = {{P("y"), 1}, {P("y^2") - pow(P("x"), 2 * s.l + 1), 1}};
  } else {
    for (const auto &f : s.diag) H.factors.emplace_back(f, 1);
  }
  return H;
}

std::vector<BranchParam> branches_of(const NormalFormSpec &s) {
  if (s.family == NormalFamily::Cusp)
    return {B("branch a: x = t, y = 0"), B("branch b: x = t^2, y = t^" + std::to_string(2 * s.l + 1))};
  return {B("branch a: x = t, y = -t^2"), B("branch b: x = t, y = 0"), B("branch c: x = t, y = t^3")};
}

// unit-conjugate, triangularize in the spec's order, reduce
NormalFormSpec round_trip(const NormalFormSpec &canon, testgen::Rng &rng) {
  PolyMatrix M0 = normal_form_build(canon);
  auto Q = testgen::random_unit_pair(rng, M0.dim(), 2, 1);
  PolyMatrix M = Q.A * M0 * Q.B;
  auto H = spec_of(canon);
  auto cert = curve_triangularize(M, H, branches_by_factor(H, branches_of(canon)), kN);
  EXPECT_TRUE(verify_certificate(M, cert).ok);
  PolyMatrix R = jet(apply_equiv(M, cert.P), kN);
  return normal_form_reduce(R, canon, kN);
}
}  // namespace

TEST(NormalForm, CornerAbsorbedBySuperdiagonal) {
  // conjugating by 1 + c E_23 moves h_13 by c x^{n_1}
  NormalFormSpec s;
  s.family = NormalFamily::Chain;
  s.diag = {P("y + x^2"), P("y"), P("y - x^3")};
  s.beta = {1, 1};
  s.n = {1, 2};
  s.h[{0, 2}] = P("x");
  auto r = normal_form_reduce(normal_form_build(s), s, kN);
  s.h.clear();
  EXPECT_EQ(r, s) << to_string(r);
  EXPECT_EQ(normal_form_reduce(normal_form_build(r), r, kN), r);
}

TEST(NormalForm, DiagonalChainStaysDiagonal) {
  NormalFormSpec s;
  s.family = NormalFamily::Chain;
  s.diag = {P("y + x^2"), P("y"), P("y - x^3")};
  s.beta = {0, 0};
  s.n = {0, 0};
  EXPECT_EQ(normal_form_reduce(normal_form_build(s), s, kN), s);
}

TEST(NormalForm, ScalingOfCornerIsAbsorbed) {
  // with a zero superdiagonal only ord h_13 is invariant
  NormalFormSpec s;
  s.family = NormalFamily::Chain;
  s.diag = {P("y + x^2"), P("y"), P("y - x^3")};
  s.beta = {0, 1};
  s.n = {0, 1};
  s.h[{0, 2}] = P("-3*x");
  auto r = normal_form_reduce(normal_form_build(s), s, kN);
  EXPECT_EQ(r.h.at({0, 2}), P("x"));
}

TEST(NormalForm, CuspCanonicalIsIdempotent) {
  testgen::Rng rng(5);
  for (int it = 0; it < 20; ++it) {
    auto s = testgen::random_cusp_spec(rng);
    auto c = normal_form_reduce(normal_form_build(s), s, kN);
    EXPECT_NO_THROW(check_normal_form(c));
    EXPECT_EQ(normal_form_reduce(normal_form_build(c), c, kN), c) << to_string(s);
  }
}

TEST(NormalForm, CuspLeadingCoefficientNormalizes) {
  NormalFormSpec s;
  s.family = NormalFamily::Cusp;
  s.l = 2;
  s.m = 2;
  s.p1 = P("5*x");
  s.p2 = Poly(2);
  auto c = normal_form_reduce(normal_form_build(s), s, kN);
  EXPECT_EQ(c.p1, P("x"));
}

TEST(NormalForm, RoundTripChain) {
  testgen::Rng rng(21);
  for (int it = 0; it < 3; ++it) {
    auto s = testgen::random_chain_spec(rng);
    auto canon = normal_form_reduce(normal_form_build(s), s, kN);
    EXPECT_EQ(round_trip(canon, rng), canon) << to_string(canon);
  }
}

TEST(NormalForm, RoundTripCusp) {
  testgen::Rng rng(22);
  for (int it = 0; it < 3; ++it) {
    auto s = testgen::random_cusp_spec(rng);
    auto canon = normal_form_reduce(normal_form_build(s), s, kN);
    EXPECT_EQ(round_trip(canon, rng), canon) << to_string(canon);
  }
}

TEST(NormalForm, RejectsWrongContext) {
  NormalFormSpec s;
  s.family = NormalFamily::Chain;
  s.diag = {P("y + x^2"), P("y"), P("y - x^3")};
  s.beta = {0, 0};
  s.n = {0, 0};
  NormalFormSpec other = s;
  std::swap(other.diag[0], other.diag[2]);
  EXPECT_THROW(normal_form_reduce(normal_form_build(s), other, kN), AlgebraError);
}
