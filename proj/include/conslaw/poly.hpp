#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "conslaw/rational.hpp"
#include "conslaw/variable.hpp"

namespace conslaw {

struct VarPow {
  Var var;
  int exp;
};

/// A power product of Vars. Factors are kept sorted by the variable
/// enumeration with nonzero exponents; negative exponents are legal only on
/// h and tau.
class Monomial {
 public:
  Monomial() = default;

  static Monomial unit() { return Monomial(); }

  static Monomial of(Var v, int exp = 1) {
    Monomial m;
    if (exp != 0) {
      check_exp(v, exp);
      m.factors_.push_back({v, exp});
    }
    return m;
  }

  const std::vector<VarPow>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }

  int exponent(Var v) const {
    for (const auto& f : factors_)
      if (f.var == v) return f.exp;
    return 0;
  }

  Monomial times(const Monomial& o) const {
    Monomial r;
    r.factors_.reserve(factors_.size() + o.factors_.size());
    std::size_t i = 0, j = 0;
    while (i < factors_.size() || j < o.factors_.size()) {
      if (j == o.factors_.size() ||
          (i < factors_.size() && factors_[i].var < o.factors_[j].var)) {
        r.factors_.push_back(factors_[i++]);
      } else if (i == factors_.size() || o.factors_[j].var < factors_[i].var) {
        r.factors_.push_back(o.factors_[j++]);
      } else {
        const int e = factors_[i].exp + o.factors_[j].exp;
        if (e != 0) {
          check_exp(factors_[i].var, e);
          r.factors_.push_back({factors_[i].var, e});
        }
        ++i, ++j;
      }
    }
    return r;
  }

  /// Monomial with the exponent of v removed entirely.
  Monomial without(Var v) const {
    Monomial r;
    for (const auto& f : factors_)
      if (f.var != v) r.factors_.push_back(f);
    return r;
  }

  int degree_grid() const {
    int d = 0;
    for (const auto& f : factors_)
      if (f.var.is_grid()) d += f.exp;
    return d;
  }

  int degree_tx() const {
    int d = 0;
    for (const auto& f : factors_)
      if (f.var.kind() == VarKind::TimeCoord ||
          f.var.kind() == VarKind::SpaceCoord)
        d += f.exp;
    return d;
  }

  /// Sum of derivative orders over the jet factors of the monomial.
  int jet_weight() const {
    int w = 0;
    for (const auto& f : factors_)
      if (f.var.is_jet()) w += f.exp * f.var.jet_weight();
    return w;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    if (a.factors_.size() != b.factors_.size()) return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i)
      if (a.factors_[i].var != b.factors_[i].var ||
          a.factors_[i].exp != b.factors_[i].exp)
        return false;
    return true;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return !(a == b);
  }

  std::string str() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += "*";
      s += factors_[i].var.name();
      if (factors_[i].exp != 1)
        s += "^" + std::to_string(factors_[i].exp);
    }
    return s;
  }

 private:
  static void check_exp(Var v, int exp) {
    if (exp < 0 && !v.allows_laurent())
      throw Error("negative exponent on " + v.name() +
                  " (only h and tau admit Laurent exponents)");
  }
  std::vector<VarPow> factors_;
};

/// Lexicographic order over the deterministic variable enumeration: the
/// first variable (in enumeration order) whose exponents differ decides,
/// higher exponent first. Gives every polynomial a canonical term order.
struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
      if (j == fb.size() || (i < fa.size() && fa[i].var < fb[j].var)) {
        // var present only in a: exponent ea vs 0
        if (fa[i].exp != 0) return fa[i].exp > 0;
        ++i;
      } else if (i == fa.size() || fb[j].var < fa[i].var) {
        if (fb[j].exp != 0) return fb[j].exp < 0;
        ++j;
      } else {
        if (fa[i].exp != fb[j].exp) return fa[i].exp > fb[j].exp;
        ++i, ++j;
      }
    }
    return false;
  }
};

/// Sparse exact polynomial over the stencil/jet variables with Rational
/// coefficients. Canonical form: no zero coefficients stored, terms keyed by
/// the fixed monomial order, so equality is syntactic and decidable.
///
/// Instances are immutable in spirit: every operation returns a new value
/// and the type is freely shareable across threads.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, MonoLess>;

  Poly() = default;
  Poly(const Rational& c) { add_term(Monomial::unit(), c); }
  explicit Poly(long long c) : Poly(Rational(c)) {}

  static Poly var(Var v, int exp = 1) {
    Poly p;
    p.add_term(Monomial::of(v, exp), 1);
    return p;
  }
  static Poly term(const Rational& c, const Monomial& m) {
    Poly p;
    p.add_term(m, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// The coefficient of the constant monomial.
  Rational constant_part() const { return coeff(Monomial::unit()); }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  Poly& operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
    return r;
  }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib)
      if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const {
    Poly r = Rational(1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Formal partial derivative with respect to one variable.
  Poly derivative(Var v) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
      const int e = m.exponent(v);
      if (e == 0) continue;
      r.add_term(m.without(v).times(Monomial::of(v, e - 1)), c * e);
    }
    return r;
  }

  /// Substitutes `value` for `v`; every occurrence of v must have a
  /// non-negative exponent.
  Poly substituted(Var v, const Poly& value) const {
    Poly r;
    std::map<int, Poly> powers;  // cache value^e
    for (const auto& [m, c] : terms_) {
      const int e = m.exponent(v);
      if (e == 0) {
        r.add_term(m, c);
        continue;
      }
      if (e < 0)
        throw Error("cannot substitute into negative power of " + v.name());
      auto it = powers.find(e);
      if (it == powers.end())
        it = powers.emplace(e, value.pow(static_cast<unsigned>(e))).first;
      r += Poly::term(c, m.without(v)) * it->second;
    }
    return r;
  }

  bool contains_kind(VarKind k) const {
    for (const auto& [m, c] : terms_)
      for (const auto& f : m.factors())
        if (f.var.kind() == k) return true;
    return false;
  }

  /// All distinct grid variables occurring in the polynomial.
  std::vector<Var> grid_vars() const {
    std::vector<Var> vs;
    for (const auto& [m, c] : terms_)
      for (const auto& f : m.factors())
        if (f.var.is_grid() &&
            std::find(vs.begin(), vs.end(), f.var) == vs.end())
          vs.push_back(f.var);
    std::sort(vs.begin(), vs.end());
    return vs;
  }

  int max_degree_grid() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_grid());
    return d;
  }
  int max_degree_tx() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_tx());
    return d;
  }

  /// Exponent range of one variable over all terms (0 if absent everywhere).
  std::pair<int, int> exponent_range(Var v) const {
    int lo = 0, hi = 0;
    for (const auto& [m, c] : terms_) {
      const int e = m.exponent(v);
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    return {lo, hi};
  }

  /// Naive numeric evaluation; the audit layer uses this as the independent
  /// oracle for the compiled kernels.
  double eval(const std::function<double(Var)>& value_of) const {
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
      double term = to_double(c);
      for (const auto& f : m.factors())
        term *= std::pow(value_of(f.var), f.exp);
      sum += term;
    }
    return sum;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) s += c >= 0 ? " + " : " - ";
      Rational a = (!first && c < 0) ? Rational(-c) : c;
      first = false;
      if (m.is_unit()) {
        s += to_string(a);
      } else {
        if (a != 1) s += to_string(a) + "*";
        s += m.str();
      }
    }
    return s;
  }

 private:
  TermMap terms_;
};

/// Product of two polynomials keeping only monomials with jet weight at most
/// `max_jet_weight`; the truncated multiplication the Taylor expansion is a
/// homomorphism for.
inline Poly mul_jet_truncated(const Poly& a, const Poly& b,
                              int max_jet_weight) {
  Poly r;
  for (const auto& [ma, ca] : a.terms()) {
    const int wa = ma.jet_weight();
    for (const auto& [mb, cb] : b.terms()) {
      if (wa + mb.jet_weight() > max_jet_weight) continue;
      r.add_term(ma.times(mb), ca * cb);
    }
  }
  return r;
}

}  // namespace conslaw
