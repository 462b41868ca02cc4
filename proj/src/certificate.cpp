#include <map>
#include <sstream>

#include "detrep/textio.hpp"

namespace detrep {

namespace {
const char *kCertSchema = "detrep-cert/1";
}

std::string serialize_certificate(const DecompCertificate &c, const std::vector<std::string> &vars) {
  std::ostringstream o;
  o << "schema: " << kCertSchema << "\n";
  o << "structure: " << (c.structure == Structure::Diagonal ? "diagonal" : "upper-triangular") << "\n";
  o << "certified_order: " << c.certified_order << "\n";
  o << "vars:";
  for (const auto &v : vars) o << " " << v;
  o << "\n";
  o << "dim: " << c.P.A.rows() << "\n";
  o << "block_sizes:";
  for (const auto &b : c.blocks) o << " " << b.rows();
  o << "\n";
  o << "A: " << to_string(c.P.A, vars) << "\n";
  o << "B: " << to_string(c.P.B, vars) << "\n";
  for (std::size_t i = 0; i < c.blocks.size(); ++i) o << "block." << i + 1 << ": " << to_string(c.blocks[i], vars) << "\n";
  return o.str();
}

DecompCertificate parse_certificate(const std::string &text, std::vector<std::string> *vars_out) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    auto c = line.find(':');
    if (c == std::string::npos) throw ParseError("certificate: expected 'key: value'");
    std::string k = line.substr(0, c), v = line.substr(c + 1);
    while (!v.empty() && (v.front() == ' ')) v.erase(v.begin());
    while (!v.empty() && (v.back() == ' ' || v.back() == '\r')) v.pop_back();
    if (kv.count(k)) throw ParseError("certificate: duplicate key '" + k + "'");
    kv[k] = v;
  }
  auto need = [&](const std::string &k) -> const std::string & {
    auto it = kv.find(k);
    if (it == kv.end()) throw ParseError("certificate: missing '" + k + "'");
    return it->second;
  };
  if (need("schema") != kCertSchema) throw ParseError("certificate: unknown schema '" + need("schema") + "'");
  DecompCertificate c;
  const std::string &st = need("structure");
  if (st == "diagonal")
    c.structure = Structure::Diagonal;
  else if (st == "upper-triangular")
    c.structure = Structure::UpperTriangular;
  else
    throw ParseError("certificate: unknown structure '" + st + "'");
  auto to_int = [&](const std::string &k, const std::string &s) {
    try {
      std::size_t used = 0;
      int n = std::stoi(s, &used);
      if (used != s.size() || n < 0) throw std::invalid_argument(s);
      return n;
    } catch (const std::exception &) {
      throw ParseError("certificate: bad integer for '" + k + "'");
    }
  };
  c.certified_order = to_int("certified_order", need("certified_order"));
  std::vector<std::string> vars = parse_vars(need("vars"));
  int dim = to_int("dim", need("dim"));
  std::vector<int> sizes;
  {
    std::istringstream s(need("block_sizes"));
    for (std::string w; s >> w;) sizes.push_back(to_int("block_sizes", w));
  }
  auto mat = [&](const std::string &k) {
    try {
      return parse_matrix(need(k), vars);
    } catch (const ParseError &) {
      throw;
    } catch (const AlgebraError &e) {
      throw ParseError("certificate: " + k + ": " + e.what());
    }
  };
  c.P.A = mat("A");
  c.P.B = mat("B");
  if (c.P.A.rows() != dim || c.P.A.cols() != dim || c.P.B.rows() != dim || c.P.B.cols() != dim)
    throw ParseError("certificate: transform size differs from dim");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    PolyMatrix b = mat("block." + std::to_string(i + 1));
    if (b.rows() != sizes[i] || b.cols() != sizes[i]) throw ParseError("certificate: block " + std::to_string(i + 1) + " has the wrong size");
    c.blocks.push_back(b);
  }
  if (vars_out) *vars_out = vars;
  return c;
}

}  // namespace detrep
