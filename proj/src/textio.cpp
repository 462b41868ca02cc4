#include "detrep/textio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace detrep {

namespace {

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class F>
auto rethrow_as_parse(const std::string &where, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError &) {
    throw;
  } catch (const SpecError &) {
    throw;
  } catch (const AlgebraError &e) {
    throw ParseError(where + ": " + e.what());
  }
}

int bracket_balance(const std::string &s) {
  int b = 0;
  for (char c : s) b += (c == '[') - (c == ']');
  return b;
}

}  // namespace

std::vector<std::string> parse_vars(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> v;
  for (std::string w; in >> w;) {
    if (std::find(v.begin(), v.end(), w) != v.end()) throw ParseError("duplicate variable '" + w + "'");
    v.push_back(w);
  }
  if (v.empty()) throw ParseError("empty variable list");
  return v;
}

HypersurfaceSpec parse_factors(const std::string &text, const std::vector<std::string> &vars) {
  HypersurfaceSpec H;
  H.nvars = static_cast<int>(vars.size());
  std::size_t i = 0;
  const std::string s = text;
  auto skip = [&]() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '*')) ++i;
  };
  skip();
  while (i < s.size()) {
    if (s[i] != '(') throw ParseError("factors: expected '(' at column " + std::to_string(i + 1));
    int depth = 0;
    std::size_t j = i;
    for (; j < s.size(); ++j) {
      depth += (s[j] == '(') - (s[j] == ')');
      if (depth == 0) break;
    }
    if (j == s.size()) throw ParseError("factors: unbalanced parentheses");
    std::string body = s.substr(i + 1, j - i - 1);
    i = j + 1;
    int e = 1;
    skip();
    if (i < s.size() && s[i] == '^') {
      ++i;
      skip();
      std::size_t k = i;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      if (k == i) throw ParseError("factors: expected an exponent");
      e = std::stoi(s.substr(i, k - i));
      i = k;
    }
    Poly f = rethrow_as_parse("factors", [&] { return parse_poly(body, vars); });
    H.factors.emplace_back(f, e);
    skip();
  }
  if (H.factors.empty()) throw ParseError("factors: empty list");
  return H;
}

std::string to_string(const HypersurfaceSpec &H, const std::vector<std::string> &vars) {
  std::string out;
  for (const auto &[f, p] : H.factors) {
    if (!out.empty()) out += " ";
    out += "(" + to_string(f, vars) + ")^" + std::to_string(p);
  }
  return out;
}

InputDoc parse_input(const std::string &text) {
  std::istringstream in(text);
  std::string line, matrix_text, factors_text;
  std::vector<std::string> branch_lines;
  std::optional<std::string> vars_text;
  InputDoc doc;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(line.substr(0, colon)), val = trim(line.substr(colon + 1));
    if (key == "vars") {
      vars_text = val;
    } else if (key == "jet_order") {
      try {
        std::size_t used = 0;
        int n = std::stoi(val, &used);
        if (used != val.size() || n < 1) throw std::invalid_argument(val);
        doc.jet_order = n;
      } catch (const std::exception &) {
        throw ParseError("line " + std::to_string(lineno) + ": jet_order must be a positive integer");
      }
    } else if (key == "matrix") {
      matrix_text = val;
      while (bracket_balance(matrix_text) > 0 && std::getline(in, line)) {
        ++lineno;
        matrix_text += " " + trim(line);
      }
    } else if (key == "factors") {
      factors_text = val;
    } else if (key.rfind("branch", 0) == 0) {
      branch_lines.push_back(line);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!vars_text) throw ParseError("missing 'vars:'");
  if (matrix_text.empty()) throw ParseError("missing 'matrix:'");
  if (factors_text.empty()) throw ParseError("missing 'factors:'");
  doc.vars = parse_vars(*vars_text);
  doc.matrix = rethrow_as_parse("matrix", [&] { return parse_matrix(matrix_text, doc.vars); });
  if (!doc.matrix.is_square()) throw ParseError("matrix: not square");
  doc.spec = parse_factors(factors_text, doc.vars);
  for (const auto &b : branch_lines)
    doc.branches.push_back(rethrow_as_parse("branch", [&] { return parse_branch(b, doc.vars); }));
  return doc;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InputDoc read_input_file(const std::string &path) { return parse_input(read_file(path)); }

std::vector<std::vector<BranchParam>> branches_by_factor(const HypersurfaceSpec &H,
                                                         const std::vector<BranchParam> &branches) {
  std::vector<std::vector<BranchParam>> out(H.factors.size());
  for (const auto &b : branches)
    for (std::size_t i = 0; i < H.factors.size(); ++i)
      if (vanishes_on(H.factors[i].first, b, default_t_precision(b))) {
        out[i].push_back(b);
        break;
      }
  return out;
}

std::string Report::structured() const {
  std::string out;
  for (const auto &[k, v] : kv_) out += k + ": " + v + "\n";
  return out;
}

std::string Report::human() const {
  std::size_t w = 0;
  for (const auto &kv : kv_) w = std::max(w, kv.first.size());
  std::string out;
  for (const auto &[k, v] : kv_) {
    if (k == "schema") continue;
    std::string key = k;
    std::replace(key.begin(), key.end(), '_', ' ');
    out += key + std::string(w + 2 - k.size(), ' ') + v + "\n";
  }
  return out;
}

}  // namespace detrep
