// Input stanzas, certificates and structured reports as line-oriented text.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "detrep/curves.hpp"
#include "detrep/decompose.hpp"
#include "detrep/diagnostics.hpp"

namespace detrep {

struct ParseError : AlgebraError {
  using AlgebraError::AlgebraError;
};

struct InputDoc {
  std::vector<std::string> vars;
  std::optional<int> jet_order;
  PolyMatrix matrix;
  HypersurfaceSpec spec;
  std::vector<BranchParam> branches;
};

// "(y + x^2)^1 (y - x^2)^1"
HypersurfaceSpec parse_factors(const std::string &text, const std::vector<std::string> &vars);
std::string to_string(const HypersurfaceSpec &H, const std::vector<std::string> &vars);
std::vector<std::string> parse_vars(const std::string &text);

InputDoc parse_input(const std::string &text);
InputDoc read_input_file(const std::string &path);

// branches of each factor of H, matched by vanishing of the pullback
std::vector<std::vector<BranchParam>> branches_by_factor(const HypersurfaceSpec &H,
                                                         const std::vector<BranchParam> &branches);

std::string serialize_certificate(const DecompCertificate &c, const std::vector<std::string> &vars);
DecompCertificate parse_certificate(const std::string &text, std::vector<std::string> *vars = nullptr);

// line-oriented key/value document
class Report {
 public:
  explicit Report(std::string schema) { add("schema", std::move(schema)); }
  void add(const std::string &key, const std::string &value) { kv_.emplace_back(key, value); }
  void add(const std::string &key, long long v) { add(key, std::to_string(v)); }
  void add(const std::string &key, int v) { add(key, std::to_string(v)); }
  void add_bool(const std::string &key, bool v) { add(key, std::string(v ? "true" : "false")); }
  std::string structured() const;
  std::string human() const;
  const std::vector<std::pair<std::string, std::string>> &entries() const { return kv_; }

 private:
  std::vector<std::pair<std::string, std::string>> kv_;
};

std::string read_file(const std::string &path);

}  // namespace detrep
