// Recursive-descent parser for the polynomial grammar.
#include <cctype>

#include "detrep/psring.hpp"

namespace detrep {

namespace {

struct Parser {
  const std::string &s;
  const std::vector<std::string> &vars;
  std::size_t pos = 0;
  int n;

  Parser(const std::string &text, const std::vector<std::string> &v)
      : s(text), vars(v), n(static_cast<int>(v.size())) {}

  [[noreturn]] void fail(const std::string &what) const {
    throw AlgebraError("parse error at column " + std::to_string(pos + 1) + ": " + what + " in '" + s + "'");
  }

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip();
    std::size_t b = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (b == pos) fail("expected digits");
    return s.substr(b, pos - b);
  }

  Poly expr() {
    Poly acc(n);
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly t = term();
    acc = neg ? Poly(n) - t : t;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    if (eat('-')) return -factor();
    Poly b = base();
    if (eat('^')) {
      std::string d = digits();
      if (d.size() > 6) fail("exponent too large");
      b = pow(b, std::stoi(d));
    }
    return b;
  }

  Poly base() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den = "1";
      std::size_t save = pos;
      if (eat('/')) {
        skip();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
          den = digits();
        else
          pos = save, fail("expected denominator");
      }
      Rat r(num + "/" + den);
      if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
      r.canonicalize();
      return Poly::constant(n, r);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
      std::string name = s.substr(b, pos - b);
      for (int i = 0; i < n; ++i)
        if (vars[i] == name) return Poly::var(n, i);
      pos = b;
      fail("unknown variable '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Poly parse_poly(const std::string &text, const std::vector<std::string> &vars) {
  if (vars.empty() || static_cast<int>(vars.size()) > kMaxVars) throw AlgebraError("bad variable list");
  Parser p(text, vars);
  Poly r = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

Rat parse_rat(const std::string &text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  bool neg = false;
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '-' || t[i] == '+')) neg = t[i++] == '-';
  std::string body = t.substr(i);
  auto slash = body.find('/');
  auto ok = [](const std::string &d) {
    return !d.empty() && d.find_first_not_of("0123456789") == std::string::npos;
  };
  std::string num = slash == std::string::npos ? body : body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!ok(num) || !ok(den) || den.find_first_not_of('0') == std::string::npos)
    throw AlgebraError("bad rational '" + text + "'");
  Rat r(num + "/" + den);
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

}  // namespace detrep
