#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "conslaw/poly.hpp"

namespace conslaw {

/// Plain-text S-expression form of a polynomial. Canonical output looks like
///
///   (+ (* 1/2 (^ h -2) U[0,1]) (* -1 U[0,0]))
///
/// with variables named U[k,l], t, x, h, tau, eps, lam and jet symbols
/// u[i,j]; rationals are printed as p or p/q. The parser additionally
/// accepts (- ...) and nested products/sums.
inline std::string to_sexpr(const Poly& p) {
  if (p.is_zero()) return "0";
  auto term_str = [](const Monomial& m, const Rational& c) {
    if (m.is_unit()) return to_string(c);
    std::string s = "(* " + to_string(c);
    for (const auto& f : m.factors()) {
      s += " ";
      if (f.exp == 1)
        s += f.var.name();
      else
        s += "(^ " + f.var.name() + " " + std::to_string(f.exp) + ")";
    }
    s += ")";
    return s;
  };
  if (p.term_count() == 1) {
    const auto& [m, c] = *p.terms().begin();
    return term_str(m, c);
  }
  std::string s = "(+";
  for (const auto& [m, c] : p.terms()) s += " " + term_str(m, c);
  return s + ")";
}

namespace detail {

inline std::vector<std::string> sexpr_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (ch == '(' || ch == ')') {
      if (!cur.empty()) tokens.push_back(cur), cur.clear();
      tokens.push_back(std::string(1, ch));
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) tokens.push_back(cur), cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

inline bool parse_bracket_var(const std::string& tok, char head, int& a,
                              int& b) {
  if (tok.size() < 6 || tok[0] != head || tok[1] != '[' ||
      tok.back() != ']')
    return false;
  const auto comma = tok.find(',');
  if (comma == std::string::npos) return false;
  try {
    a = std::stoi(tok.substr(2, comma - 2));
    b = std::stoi(tok.substr(comma + 1, tok.size() - comma - 2));
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

class SexprParser {
 public:
  explicit SexprParser(const std::string& text)
      : tokens_(sexpr_tokens(text)) {}

  Poly parse() {
    if (tokens_.empty()) throw Error("empty expression");
    Poly p = parse_expr();
    if (pos_ != tokens_.size())
      throw Error("trailing tokens after expression: '" + tokens_[pos_] +
                  "'");
    return p;
  }

 private:
  const std::string& peek() const {
    if (pos_ >= tokens_.size()) throw Error("unexpected end of expression");
    return tokens_[pos_];
  }
  std::string next() {
    std::string t = peek();
    ++pos_;
    return t;
  }

  Poly parse_expr() {
    std::string tok = next();
    if (tok == ")") throw Error("unexpected ')'");
    if (tok != "(") return parse_atom(tok);

    const std::string op = next();
    std::vector<Poly> args;
    while (peek() != ")") args.push_back(parse_expr());
    next();  // consume ')'

    if (op == "+") {
      Poly r;
      for (const auto& a : args) r += a;
      return r;
    }
    if (op == "*") {
      Poly r = Rational(1);
      for (const auto& a : args) r *= a;
      return r;
    }
    if (op == "-") {
      if (args.empty()) throw Error("'-' needs at least one argument");
      if (args.size() == 1) return -args[0];
      Poly r = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) r -= args[i];
      return r;
    }
    if (op == "^") {
      if (args.size() != 2) throw Error("'^' needs exactly two arguments");
      const Poly& base = args[0];
      const Poly& ep = args[1];
      if (ep.term_count() != 1 || !ep.terms().begin()->first.is_unit() ||
          denominator(ep.terms().begin()->second) != 1)
        throw Error("'^' exponent must be an integer");
      const long long e =
          numerator(ep.terms().begin()->second).convert_to<long long>();
      if (e >= 0) return base.pow(static_cast<unsigned>(e));
      // Negative exponents are only meaningful on the mesh steps.
      if (base.term_count() == 1) {
        const auto& [m, c] = *base.terms().begin();
        if (c == 1 && m.factors().size() == 1 && m.factors()[0].exp == 1 &&
            m.factors()[0].var.allows_laurent())
          return Poly::var(m.factors()[0].var, static_cast<int>(e));
      }
      throw Error("negative exponent is only allowed on h or tau");
    }
    throw Error("unknown operator '" + op + "'");
  }

  Poly parse_atom(const std::string& tok) {
    if (tok == "t") return Poly::var(Var::t());
    if (tok == "x") return Poly::var(Var::x());
    if (tok == "h") return Poly::var(Var::h());
    if (tok == "tau") return Poly::var(Var::tau());
    if (tok == "eps") return Poly::var(Var::eps());
    if (tok == "lam") return Poly::var(Var::lam());
    int a = 0, b = 0;
    if (parse_bracket_var(tok, 'U', a, b)) return Poly::var(Var::grid(a, b));
    if (parse_bracket_var(tok, 'u', a, b)) return Poly::var(Var::jet(a, b));
    return Poly(parse_rational(tok));
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_sexpr(const std::string& text) {
  return detail::SexprParser(text).parse();
}

}  // namespace conslaw
