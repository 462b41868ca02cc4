// The example catalog: parsing, validation and expectation dispatch.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "detrep/textio.hpp"

namespace detrep {

struct Fixture {
  std::string name;
  std::vector<std::string> vars;
  PolyMatrix matrix;
  HypersurfaceSpec spec;
  std::vector<BranchParam> branches;
  std::vector<std::pair<std::string, std::string>> expectations;  // predicate, value
  std::string source;
};

struct ExpectationResult {
  std::string predicate;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct FixtureReport {
  std::string name;
  std::vector<ExpectationResult> results;
  bool pass() const;
};

std::vector<Fixture> parse_catalog(const std::string &text);
std::vector<Fixture> load_catalog(const std::string &path = DETREP_CATALOG_PATH);
FixtureReport run_fixture(const Fixture &f, int jet_order = 12);
// the value a predicate currently evaluates to on a fixture
std::string evaluate_predicate(const Fixture &f, const std::string &predicate, const std::string &arg, int jet_order);

}  // namespace detrep
