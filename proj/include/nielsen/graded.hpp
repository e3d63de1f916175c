#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nielsen/numeric.hpp"

namespace nielsen {

/// Exponent map generator-name → power; the empty monomial is 1.
using Monomial = std::map<std::string, unsigned>;

inline Monomial operator*(Monomial a, const Monomial &b) {
  for (const auto &[g, e] : b) a[g] += e;
  return a;
}

inline std::string to_string(const Monomial &m) {
  if (m.empty()) return "1";
  std::string out;
  for (const auto &[g, e] : m) {
    if (!out.empty()) out += "*";
    out += g;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

/// Commutative polynomial with exact rational coefficients in named graded
/// generators. Generator degrees travel with the polynomial and must agree
/// when polynomials are combined.
class GradedPolynomial {
public:
  using Terms = std::map<Monomial, Rational>;
  using Degrees = std::map<std::string, int>;

  GradedPolynomial() = default;

  static GradedPolynomial constant(const Rational &c) {
    GradedPolynomial p;
    p.add_term({}, c);
    return p;
  }

  static GradedPolynomial generator(const std::string &name, int degree,
                                    unsigned power = 1) {
    GradedPolynomial p;
    p.degrees_[name] = degree;
    p.add_term(power ? Monomial{{name, power}} : Monomial{}, 1);
    return p;
  }

  const Terms &terms() const noexcept { return terms_; }
  const Degrees &degrees() const noexcept { return degrees_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Monomial &m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int degree_of(const Monomial &m) const {
    int d = 0;
    for (const auto &[g, e] : m) d += degrees_.at(g) * static_cast<int>(e);
    return d;
  }

  /// Component of the given total degree.
  GradedPolynomial component(int degree) const {
    GradedPolynomial p;
    p.degrees_ = degrees_;
    for (const auto &[m, c] : terms_)
      if (degree_of(m) == degree) p.terms_.emplace(m, c);
    return p;
  }

  bool homogeneous() const {
    if (terms_.empty()) return true;
    const int d = degree_of(terms_.begin()->first);
    for (const auto &[m, c] : terms_)
      if (degree_of(m) != d) return false;
    return true;
  }

  void add_term(const Monomial &m, const Rational &c) {
    if (c == 0) return;
    Monomial clean;
    for (const auto &[g, e] : m)
      if (e) clean.emplace(g, e);
    auto [it, inserted] = terms_.try_emplace(clean, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void declare(const std::string &name, int degree) { merge_degree(name, degree); }

  GradedPolynomial &operator+=(const GradedPolynomial &o) {
    merge_degrees(o);
    for (const auto &[m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedPolynomial &operator-=(const GradedPolynomial &o) {
    merge_degrees(o);
    for (const auto &[m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial &b) {
    return a += b;
  }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial &b) {
    return a -= b;
  }
  friend GradedPolynomial operator*(const GradedPolynomial &a,
                                    const GradedPolynomial &b) {
    GradedPolynomial p;
    p.degrees_ = a.degrees_;
    p.merge_degrees(b);
    for (const auto &[ma, ca] : a.terms_)
      for (const auto &[mb, cb] : b.terms_) p.add_term(ma * mb, ca * cb);
    return p;
  }
  friend GradedPolynomial operator*(const Rational &s, GradedPolynomial a) {
    if (s == 0) {
      a.terms_.clear();
      return a;
    }
    for (auto &[m, c] : a.terms_) c *= s;
    return a;
  }

  GradedPolynomial pow(unsigned e) const {
    GradedPolynomial r = constant(1);
    r.degrees_ = degrees_;
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  /// Replaces every occurrence of `name` by `value`.
  GradedPolynomial substitute(const std::string &name,
                              const GradedPolynomial &value) const {
    GradedPolynomial out;
    out.degrees_ = degrees_;
    out.degrees_.erase(name);
    out.merge_degrees(value);
    for (const auto &[m, c] : terms_) {
      Monomial rest = m;
      unsigned e = 0;
      if (auto it = rest.find(name); it != rest.end()) {
        e = it->second;
        rest.erase(it);
      }
      GradedPolynomial t;
      t.degrees_ = out.degrees_;
      t.add_term(rest, c);
      out += t * value.pow(e);
    }
    return out;
  }

  /// If a = c·b for a rational c, returns c.
  friend std::optional<Rational> proportionality(const GradedPolynomial &a,
                                                 const GradedPolynomial &b) {
    if (b.is_zero()) return std::nullopt;
    const auto &[mb, cb] = *b.terms_.begin();
    const Rational c = a.coefficient(mb) / cb;
    if (a == c * b) return c;
    return std::nullopt;
  }

  /// Equality of values; generator degree tables are not compared.
  friend bool operator==(const GradedPolynomial &a, const GradedPolynomial &b) {
    return a.terms_ == b.terms_;
  }

private:
  void merge_degree(const std::string &name, int degree) {
    auto [it, inserted] = degrees_.try_emplace(name, degree);
    if (!inserted && it->second != degree)
      throw Error(Errc::InvalidArgument,
                  "generator " + name + " declared with two degrees");
  }
  void merge_degrees(const GradedPolynomial &o) {
    for (const auto &[g, d] : o.degrees_) merge_degree(g, d);
  }

  Terms terms_;
  Degrees degrees_;
};

/// Sorted monomial list, e.g. "1/12*p1^2 + 3".
inline std::string to_string(const GradedPolynomial &p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto &[m, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    if (m.empty()) out += to_string(c);
    else if (c == 1) out += to_string(m);
    else out += to_string(c) + "*" + to_string(m);
  }
  return out;
}

} // namespace nielsen
