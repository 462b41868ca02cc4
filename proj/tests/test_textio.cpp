#include <gtest/gtest.h>

#include "detrep/decompose.hpp"
#include "detrep/textio.hpp"

using namespace detrep;

namespace {
const std::vector<std::string> XY{"x", "y"};
Poly P(const std::string &s) { return parse_poly(s, XY); }

const char *kInput = R"(# tacnode
vars: x y
jet_order: 9
matrix: [ y + x^2, x ;
          0, y - x^2 ]
factors: (y + x^2)^1 (y - x^2)^1
branch b1: x = t, y = -t^2
branch b2: x = t, y = t^2
)";
}  // namespace

TEST(Textio, ParseVars) {
  EXPECT_EQ(parse_vars("x y z"), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_THROW(parse_vars("x x"), ParseError);
  EXPECT_THROW(parse_vars("  "), ParseError);
}

TEST(Textio, ParseFactors) {
  auto H = parse_factors("(y + x^2)^1 (y - x^2)^3", XY);
  ASSERT_EQ(H.factors.size(), 2u);
  EXPECT_EQ(H.nvars, 2);
  EXPECT_EQ(H.factors[0].first, P("y + x^2"));
  EXPECT_EQ(H.factors[1].second, 3);
  EXPECT_EQ(to_string(H, XY), "(y + x^2)^1 (y - x^2)^3");
  EXPECT_EQ(parse_factors(to_string(H, XY), XY).factors, H.factors);
  EXPECT_THROW(parse_factors("y + x^2", XY), ParseError);
  EXPECT_THROW(parse_factors("(y + x^2", XY), ParseError);
  EXPECT_THROW(parse_factors("(y)^", XY), ParseError);
  EXPECT_THROW(parse_factors("", XY), ParseError);
}

TEST(Textio, ParseInput) {
  InputDoc d = parse_input(kInput);
  EXPECT_EQ(d.vars, XY);
  ASSERT_TRUE(d.jet_order.has_value());
  EXPECT_EQ(*d.jet_order, 9);
  EXPECT_EQ(d.matrix, parse_matrix("[y + x^2, x; 0, y - x^2]", XY));
  EXPECT_EQ(d.spec.factors.size(), 2u);
  ASSERT_EQ(d.branches.size(), 2u);
  EXPECT_EQ(d.branches[1].label, "b2");
}

TEST(Textio, ParseInputErrors) {
  EXPECT_THROW(parse_input("vars: x y\nfactors: (y)^1\n"), ParseError);
  EXPECT_THROW(parse_input("vars: x y\nmatrix: [y]\n"), ParseError);
  EXPECT_THROW(parse_input("matrix: [y]\nfactors: (y)^1\n"), ParseError);
  EXPECT_THROW(parse_input("vars: x y\nmatrix: [y]\nfactors: (y)^1\ncolour: red\n"), ParseError);
  EXPECT_THROW(parse_input("vars: x y\njet_order: 0\nmatrix: [y]\nfactors: (y)^1\n"), ParseError);
  EXPECT_THROW(parse_input("vars: x y\nmatrix: [y, x]\nfactors: (y)^1\n"), ParseError);
  EXPECT_THROW(parse_input("vars: x y\nmatrix: [y + w]\nfactors: (y)^1\n"), ParseError);
  EXPECT_THROW(read_input_file("/nonexistent/input.txt"), ParseError);
}

TEST(Textio, BranchesByFactor) {
  InputDoc d = parse_input(kInput);
  auto b = branches_by_factor(d.spec, d.branches);
  ASSERT_EQ(b.size(), 2u);
  ASSERT_EQ(b[0].size(), 1u);
  EXPECT_EQ(b[0][0].label, "b1");
  EXPECT_EQ(b[1][0].label, "b2");
}

TEST(Textio, CertificateRoundTrip) {
  PolyMatrix M = parse_matrix("[2*y, y + x; y + x, y + x]", XY);
  auto c = tangential_decompose(M, 6);
  std::string s = serialize_certificate(c, XY);
  EXPECT_EQ(s.rfind("schema: detrep-cert/1\n", 0), 0u);
  std::vector<std::string> vars;
  auto back = parse_certificate(s, &vars);
  EXPECT_EQ(vars, XY);
  EXPECT_EQ(back.P.A, c.P.A);
  EXPECT_EQ(back.P.B, c.P.B);
  EXPECT_EQ(back.blocks, c.blocks);
  EXPECT_EQ(back.certified_order, 6);
  EXPECT_EQ(serialize_certificate(back, vars), s);
  EXPECT_TRUE(verify_certificate(M, back).ok);
}

TEST(Textio, CertificateRejectsDamage) {
  PolyMatrix M = parse_matrix("[y, 0; 0, x]", XY);
  DecompCertificate c;
  c.P = {PolyMatrix::identity(2, 2), PolyMatrix::identity(2, 2)};
  c.blocks = {parse_matrix("[y]", XY), parse_matrix("[x]", XY)};
  c.certified_order = 4;
  std::string s = serialize_certificate(c, XY);
  auto drop = [&](const std::string &key) {
    auto p = s.find(key);
    auto e = s.find('\n', p);
    return s.substr(0, p) + s.substr(e + 1);
  };
  EXPECT_THROW(parse_certificate(drop("A:")), ParseError);
  EXPECT_THROW(parse_certificate(drop("schema:")), ParseError);
  EXPECT_THROW(parse_certificate(s + "A: [1, 0; 0, 1]\n"), ParseError);
  std::string wrong = s;
  wrong.replace(wrong.find("detrep-cert/1"), 13, "detrep-cert/9");
  EXPECT_THROW(parse_certificate(wrong), ParseError);
  std::string sizes = s;
  sizes.replace(sizes.find("block_sizes: 1 1"), 16, "block_sizes: 2 1");
  EXPECT_THROW(parse_certificate(sizes), ParseError);
  std::string order = s;
  order.replace(order.find("certified_order: 4"), 18, "certified_order: x");
  EXPECT_THROW(parse_certificate(order), ParseError);
}

TEST(Textio, ReportFormats) {
  Report r("detrep-report/1");
  r.add("multiplicity", 2);
  r.add_bool("max_gen_at_origin", true);
  r.add("tangent_cone", std::string("y^2"));
  EXPECT_EQ(r.structured(), "schema: detrep-report/1\nmultiplicity: 2\nmax_gen_at_origin: true\ntangent_cone: y^2\n");
  std::string h = r.human();
  EXPECT_EQ(h.find("schema"), std::string::npos);
  EXPECT_NE(h.find("max gen at origin"), std::string::npos);
  EXPECT_EQ(r.entries().size(), 4u);
}
