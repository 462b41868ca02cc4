#include <gtest/gtest.h>

#include <set>

#include "detrep/fixtures.hpp"

using namespace detrep;

namespace {
const char *kGood = R"(fixture tiny
vars: x y
matrix: [ y - x, 0; 0, y + x ]
factors: (y - x)^1 (y + x)^1
expect multiplicity = 2
expect saturated = true
source: two lines
)";

std::string with(const std::string &from, const std::string &to) {
  std::string s = kGood;
  s.replace(s.find(from), from.size(), to);
  return s;
}

std::string table(const std::vector<Fixture> &fs) {
  std::string out;
  for (const auto &f : fs) {
    auto r = run_fixture(f);
    for (const auto &e : r.results) out += f.name + " " + e.predicate + " " + e.actual + "\n";
  }
  return out;
}
}  // namespace

TEST(Fixtures, CatalogLoadsAndPasses) {
  auto fs = load_catalog();
  EXPECT_GE(fs.size(), 20u);
  std::set<std::string> names;
  for (const auto &f : fs) {
    EXPECT_TRUE(names.insert(f.name).second) << f.name;
    EXPECT_FALSE(f.source.empty()) << f.name;
    auto r = run_fixture(f);
    EXPECT_TRUE(r.pass()) << f.name;
    for (const auto &e : r.results)
      EXPECT_TRUE(e.pass) << f.name << ": " << e.predicate << " want '" << e.expected << "' got '" << e.actual << "'";
  }
}

TEST(Fixtures, CatalogRunIsDeterministic) {
  auto fs = load_catalog();
  EXPECT_EQ(table(fs), table(load_catalog()));
}

TEST(Fixtures, ParseGood) {
  auto fs = parse_catalog(kGood);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_EQ(fs[0].name, "tiny");
  EXPECT_EQ(fs[0].expectations.size(), 2u);
  EXPECT_TRUE(run_fixture(fs[0]).pass());
}

TEST(Fixtures, WrongExpectationFails) {
  auto fs = parse_catalog(with("multiplicity = 2", "multiplicity = 3"));
  auto r = run_fixture(fs[0]);
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.results[0].actual, "2");
}

TEST(Fixtures, RejectsEmptyExpectations) {
  std::string s = with("expect multiplicity = 2\nexpect saturated = true\n", "");
  EXPECT_THROW(parse_catalog(s), ParseError);
}

TEST(Fixtures, RejectsDeterminantMismatch) {
  try {
    parse_catalog(with("(y + x)^1", "(y + 2*x)^1"));
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_NE(std::string(e.what()).find("tiny"), std::string::npos);
  }
}

TEST(Fixtures, RejectsMalformedStanzas) {
  EXPECT_THROW(parse_catalog(std::string(kGood) + kGood), ParseError);
  EXPECT_THROW(parse_catalog(with("source:", "origin:")), ParseError);
  EXPECT_THROW(parse_catalog(with("vars: x y\n", "")), ParseError);
  EXPECT_THROW(parse_catalog(with("expect saturated = true", "expect saturated true")), ParseError);
  EXPECT_THROW(parse_catalog("vars: x y\n"), ParseError);
  EXPECT_THROW(parse_catalog(with("source: two lines", "branch b: x = t^2")), ParseError);
}

TEST(Fixtures, UnknownPredicateIsAFailureNotACrash) {
  auto fs = parse_catalog(with("expect saturated = true", "expect colour = blue"));
  auto r = run_fixture(fs[0]);
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.results[1].actual.rfind("error:", 0), 0u);
}

TEST(Fixtures, PredicateArguments) {
  auto fs = load_catalog();
  for (const auto &f : fs) {
    if (f.name != "omp_p3") continue;
    EXPECT_EQ(evaluate_predicate(f, "triangular-obstruction", "1,1", 12), "true");
    EXPECT_THROW(evaluate_predicate(f, "triangular-obstruction", "1", 12), ParseError);
    EXPECT_THROW(evaluate_predicate(f, "kernel-limit", "nope", 12), ParseError);
  }
}
