#include <gtest/gtest.h>

#include "detrep/matring.hpp"
#include "gen.hpp"

using namespace detrep;

namespace {
const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};
PolyMatrix M2(const std::string &s) { return parse_matrix(s, XY); }
PolyMatrix M3(const std::string &s) { return parse_matrix(s, XYZ); }
Poly P(const std::string &s) { return parse_poly(s, XY); }
Poly P3(const std::string &s) { return parse_poly(s, XYZ); }
}  // namespace

TEST(Matring, DeterminantExamples) {
  EXPECT_EQ(determinant(M2("[y, x^2; x^5, y]")), P("y^2 - x^7"));
  EXPECT_EQ(determinant(PolyMatrix::identity(3, 2)), P("1"));
  EXPECT_EQ(determinant(M3("[x, y; 0, z]")), P3("x*z"));
  // the printed 3x3 example has zero determinant; one sign flip gives 2xyz
  EXPECT_TRUE(determinant(M3("[x, -y, 0; z, 0, y; 0, z, x]")).is_zero());
  EXPECT_EQ(determinant(M3("[x, -y, 0; z, 0, y; 0, -z, x]")), P3("2*x*y*z"));
}

TEST(Matring, BareissMatchesLaplace) {
  testgen::Rng rng(5);
  for (int it = 0; it < 5; ++it) {
    PolyMatrix m = testgen::random_matrix(rng, 5, 2, 2, 2);
    // expand along the first row with 4x4 minors (Laplace path)
    Poly s(2);
    for (int j = 0; j < 5; ++j) {
      std::vector<int> rows{1, 2, 3, 4}, cols;
      for (int c = 0; c < 5; ++c)
        if (c != j) cols.push_back(c);
      Poly t = m(0, j) * determinant(submatrix(m, rows, cols));
      s += (j % 2) ? -t : t;
    }
    EXPECT_EQ(determinant(m), s);
  }
}

TEST(Matring, AdjugateExamples) {
  auto a = adjugate(M3("[x, y; 0, z]"));
  EXPECT_EQ(a.matrix, M3("[z, -y; 0, x]"));
  auto b = adjugate(M2("[y + x^2, x; 0, y - x^2]"));
  EXPECT_EQ(b.matrix, M2("[y - x^2, -x; 0, y + x^2]"));
  auto c = adjugate(M2("[3, 0; 0, 3]"));
  EXPECT_EQ(c.matrix, M2("[3, 0; 0, 3]"));
  EXPECT_EQ(adjugate(M2("[x]")).matrix, M2("[1]"));
}

TEST(Matring, AdjugateParallelMatchesSerial) {
  testgen::Rng rng(9);
  for (int it = 0; it < 20; ++it) {
    int d = testgen::uniform(rng, 1, 4);
    PolyMatrix m = testgen::random_matrix(rng, d, 3, 3, 3);
    auto p = adjugate(m), s = adjugate_serial(m);
    EXPECT_EQ(p.matrix, s.matrix);
    EXPECT_EQ(p.det, s.det);
    for (int k = 1; k <= d; ++k) EXPECT_EQ(fitting_ideal(m, k).gens, fitting_ideal_serial(m, k).gens);
  }
}

TEST(Matring, AdjugateIdentities) {
  testgen::Rng rng(11);
  for (int it = 0; it < 25; ++it) {
    int d = testgen::uniform(rng, 2, 4);
    PolyMatrix m = testgen::random_matrix(rng, d, 2, 2, 3);
    auto a = adjugate(m);
    EXPECT_EQ(a.matrix * m, scale(PolyMatrix::identity(d, 2), a.det));
    EXPECT_EQ(determinant(a.matrix), pow(a.det, d - 1));
    EXPECT_EQ(adjugate(a.matrix).matrix, scale(m, pow(a.det, d - 2)));
  }
}

TEST(Matring, BlockTriangularAdjugate) {
  testgen::Rng rng(21);
  for (int it = 0; it < 10; ++it) {
    PolyMatrix a = testgen::random_matrix(rng, 2, 2, 2, 2), b = testgen::random_matrix(rng, 1, 2, 2, 2);
    PolyMatrix c(2, 1, 2);
    c(0, 0) = testgen::random_poly(rng, 2, 2, 2);
    c(1, 0) = testgen::random_poly(rng, 2, 2, 2);
    PolyMatrix m(3, 3, 2);
    m.set_block(0, 0, a);
    m.set_block(0, 2, c);
    m.set_block(2, 2, b);
    auto aa = adjugate(a), ab = adjugate(b);
    PolyMatrix expect(3, 3, 2);
    expect.set_block(0, 0, scale(aa.matrix, ab.det));
    expect.set_block(0, 2, aa.matrix * c * ab.matrix * Rat(-1));
    expect.set_block(2, 2, scale(ab.matrix, aa.det));
    EXPECT_EQ(adjugate(m).matrix, expect);
  }
}

TEST(Matring, CorankExamples) {
  EXPECT_EQ(corank_at_origin(M3("[x, y; 0, z]")), 2);
  EXPECT_EQ(corank_at_origin(PolyMatrix::identity(2, 2)), 0);
  PolyMatrix x3 = M3("[x, -y, 0; z, 0, y; 0, -z, x]");
  EXPECT_EQ(corank_at_origin(x3), 3);
  EXPECT_EQ(corank_at_point(x3, {0, 0, 1}), 1);
  EXPECT_EQ(corank_at_point(M3("[x, y; 0, z]"), {0, 1, 0}), 1);
  EXPECT_EQ(corank_at_point(M3("[x, y; 0, z]"), {1, 1, 1}), 0);
}

TEST(Matring, ReduceMinimalExamples) {
  auto r = reduce_minimal(M3("[1, x; y, x*y + z]"));
  EXPECT_EQ(r.corank, 1);
  EXPECT_EQ(r.reduced, M3("[z]"));
  EXPECT_EQ(apply_equiv(M3("[1, x; y, x*y + z]"), r.P), M3("[1, 0; 0, z]"));
  auto s = reduce_minimal(M2("[y, x; x^2, y]"));
  EXPECT_EQ(s.corank, 2);
  EXPECT_EQ(s.P.A, PolyMatrix::identity(2, 2));
  EXPECT_EQ(s.reduced, M2("[y, x; x^2, y]"));
  auto t = reduce_minimal(M2("[1, 0; 0, x]"));
  EXPECT_EQ(t.corank, 1);
  EXPECT_EQ(t.reduced, M2("[x]"));
}

TEST(Matring, ReduceMinimalNonConstantPivot) {
  // unit pivot 1 + x is kept on the diagonal
  PolyMatrix m = M2("[1 + x, y; x, y^2]");
  auto r = reduce_minimal(m);
  EXPECT_EQ(r.corank, 1);
  PolyMatrix w = apply_equiv(m, r.P);
  EXPECT_TRUE(w(0, 1).is_zero());
  EXPECT_TRUE(w(1, 0).is_zero());
  EXPECT_EQ(w(0, 0), r.pivots[0]);
  EXPECT_EQ(r.reduced(0, 0).constant_term(), 0);
}

TEST(Matring, ReduceMinimalRandom) {
  testgen::Rng rng(31);
  for (int it = 0; it < 20; ++it) {
    int d = testgen::uniform(rng, 2, 4);
    PolyMatrix m = testgen::random_matrix(rng, d, 2, 2, 3);
    auto r = reduce_minimal(m);
    EXPECT_EQ(r.corank, corank_at_origin(m));
    for (int i = 0; i < r.corank; ++i)
      for (int j = 0; j < r.corank; ++j) EXPECT_EQ(r.reduced(i, j).constant_term(), 0);
    PolyMatrix w = apply_equiv(m, r.P);
    int k = d - r.corank;
    EXPECT_EQ(w.block(k, k, r.corank, r.corank), r.reduced);
  }
}

TEST(Matring, FittingExamples) {
  auto I = fitting_ideal(M2("[x^2*y, x^3 - y^3; x^3 + y^3, x*y^2]"), 1);
  EXPECT_EQ(I.gens.size(), 4u);
  EXPECT_EQ(min_generators_mod(I, 8), 4);
  auto J = fitting_ideal(M2("[y + x^3, x; 0, y - x^3]"), 1);
  EXPECT_TRUE(same_ideal(J, IdealGens(2, {P("y"), P("x")})));
  auto J2 = fitting_ideal(M2("[y + x^3, x^2; 0, y - x^3]"), 1);
  EXPECT_TRUE(same_ideal(J2, IdealGens(2, {P("y"), P("x^2")})));
  PolyMatrix m = M2("[y, x; x^2, y]");
  EXPECT_EQ(fitting_ideal(m, 2).gens, std::vector<Poly>{determinant(m)});
  EXPECT_THROW(fitting_ideal(m, 3), AlgebraError);
}

TEST(Matring, FittingEquivalenceInvariant) {
  testgen::Rng rng(41);
  for (int it = 0; it < 10; ++it) {
    PolyMatrix m = testgen::random_matrix(rng, 2, 2, 2, 2);
    EquivPair P{testgen::random_unit_triangular(rng, 2, 2, 2, true), testgen::random_unit_triangular(rng, 2, 2, 2, false)};
    PolyMatrix w = apply_equiv(m, P);
    for (int k = 1; k <= 2; ++k) {
      auto a = fitting_ideal(m, k), b = fitting_ideal(w, k);
      if (a.gens.empty() || b.gens.empty()) {
        EXPECT_EQ(a.gens.empty(), b.gens.empty());
        continue;
      }
      EXPECT_TRUE(same_ideal(a, b));
    }
  }
}

TEST(Matring, ApplyEquivExamples) {
  PolyMatrix m = M2("[y, x; x^2, y]");
  EquivPair id{PolyMatrix::identity(2, 2), PolyMatrix::identity(2, 2)};
  EXPECT_EQ(apply_equiv(m, id), m);
  EquivPair sc{M2("[2, 0; 0, 1]"), PolyMatrix::identity(2, 2)};
  EXPECT_EQ(determinant(apply_equiv(m, sc)), determinant(m) * Rat(2));
  EquivPair bad{M2("[x, 0; 0, 1]"), PolyMatrix::identity(2, 2)};
  EXPECT_THROW(apply_equiv(m, bad), AlgebraError);
}

TEST(Matring, InvertJetExamples) {
  PolyMatrix N = M2("[0, x; 0, 0]");
  PolyMatrix I = PolyMatrix::identity(2, 2);
  EXPECT_EQ(invert_jet(I + N, 2), I - N);
  EXPECT_EQ(invert_jet(I * Rat(2), 4), I * Rat(1, 2));
  EXPECT_EQ(invert_jet(M2("[1 - x, 0; 0, 1]"), 3), M2("[1 + x + x^2 + x^3, 0; 0, 1]"));
  EXPECT_THROW(invert_jet(M2("[x, 0; 0, 1]"), 3), AlgebraError);
  testgen::Rng rng(3);
  for (int it = 0; it < 10; ++it) {
    PolyMatrix A = testgen::random_unit_triangular(rng, 3, 2, 2, true) * testgen::random_unit_triangular(rng, 3, 2, 2, false);
    EXPECT_EQ(jet(A * invert_jet(A, 6), 6), PolyMatrix::identity(3, 2));
  }
}

TEST(Matring, LiftEquivalenceExamples) {
  PolyMatrix m = M2("[x^2]");
  EquivPair P{M2("[1]"), M2("[1 + x^2]")};
  auto q = lift_equivalence_mod_det(m, m, P, 8);
  EXPECT_TRUE(jet(q.A * m * q.B - m, 8).is_zero());
  PolyMatrix c = M2("[y, x; x^2, y]");
  EquivPair id{PolyMatrix::identity(2, 2), PolyMatrix::identity(2, 2)};
  auto r = lift_equivalence_mod_det(c, c, id, 6);
  EXPECT_EQ(r.B, id.B);
  // congruent modulo det: add det * Q to c
  Poly f = determinant(c);
  PolyMatrix c2 = c + scale(M2("[0, 1; 0, 0]"), f);
  auto s = lift_equivalence_mod_det(c2, c, id, 7);
  EXPECT_TRUE(jet(s.A * c * s.B - c2, 7).is_zero());
  EXPECT_THROW(lift_equivalence_mod_det(c, M2("[y, x; x^3, y]"), id, 5), AlgebraError);
}

TEST(Matring, TextRoundTrip) {
  PolyMatrix m = M2("[ y + x^2 , x^3 ; 0 , y - x^2 ]");
  EXPECT_EQ(to_string(m, XY), "[ y + x^2, x^3; 0, y - x^2 ]");
  EXPECT_EQ(parse_matrix(to_string(m, XY), XY), m);
  EXPECT_THROW(parse_matrix("[x, y; z]", XY), AlgebraError);
  EXPECT_THROW(parse_matrix("x, y", XY), AlgebraError);
}
