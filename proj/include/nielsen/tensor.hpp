#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "nielsen/graded.hpp"

namespace nielsen {

/// Simple tensor of monomials, one per slot.
using SimpleTensor = std::vector<Monomial>;

/// Number of slots holding a non-unit monomial.
inline std::size_t length(const SimpleTensor &t) {
  return static_cast<std::size_t>(
      std::count_if(t.begin(), t.end(), [](const Monomial &m) { return !m.empty(); }));
}

/// Formal sum of simple tensors with rational coefficients in the tensor
/// power A^{⊗arity} of a graded polynomial ring; multiplication is slotwise.
class TensorClass {
public:
  using Terms = std::map<SimpleTensor, Rational>;

  explicit TensorClass(std::size_t arity = 1) : arity_(arity) {}

  static TensorClass unit(std::size_t arity) {
    TensorClass t(arity);
    t.add_term(SimpleTensor(arity), 1);
    return t;
  }

  /// 1 ⊗ … ⊗ p ⊗ … ⊗ 1 with p in `slot`.
  static TensorClass embed(const GradedPolynomial &p, std::size_t slot,
                           std::size_t arity) {
    if (slot >= arity) throw Error(Errc::InvalidArgument, "slot out of range");
    TensorClass t(arity);
    t.degrees_ = p.degrees();
    for (const auto &[m, c] : p.terms()) {
      SimpleTensor s(arity);
      s[slot] = m;
      t.add_term(s, c);
    }
    return t;
  }

  /// a_1 ⊗ … ⊗ a_n (external product of one polynomial per slot).
  static TensorClass external(const std::vector<GradedPolynomial> &factors) {
    TensorClass t = unit(factors.size());
    for (std::size_t s = 0; s < factors.size(); ++s)
      t = t * embed(factors[s], s, factors.size());
    return t;
  }

  std::size_t arity() const noexcept { return arity_; }
  const Terms &terms() const noexcept { return terms_; }
  const GradedPolynomial::Degrees &degrees() const noexcept { return degrees_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const SimpleTensor &s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const SimpleTensor &s, const Rational &c) {
    if (s.size() != arity_) throw Error(Errc::ArityMismatch, "tensor arity");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t max_length() const {
    std::size_t best = 0;
    for (const auto &[s, c] : terms_) best = std::max(best, length(s));
    return best;
  }

  /// Terms whose length equals max_length().
  TensorClass maximal_length_part() const {
    TensorClass t(arity_);
    t.degrees_ = degrees_;
    const std::size_t best = max_length();
    for (const auto &[s, c] : terms_)
      if (length(s) == best) t.terms_.emplace(s, c);
    return t;
  }

  /// Slot i of the result is slot perm[i] of this.
  TensorClass permuted(const std::vector<std::size_t> &perm) const {
    if (perm.size() != arity_) throw Error(Errc::ArityMismatch, "permutation arity");
    TensorClass t(arity_);
    t.degrees_ = degrees_;
    for (const auto &[s, c] : terms_) {
      SimpleTensor p(arity_);
      for (std::size_t i = 0; i < arity_; ++i) p[i] = s[perm[i]];
      t.add_term(p, c);
    }
    return t;
  }

  friend TensorClass operator+(TensorClass a, const TensorClass &b) {
    a.check_arity(b);
    for (const auto &[g, d] : b.degrees_) a.degrees_.try_emplace(g, d);
    for (const auto &[s, c] : b.terms_) a.add_term(s, c);
    return a;
  }
  friend TensorClass operator*(const Rational &k, TensorClass a) {
    if (k == 0) a.terms_.clear();
    for (auto &[s, c] : a.terms_) c *= k;
    return a;
  }
  friend TensorClass operator*(const TensorClass &a, const TensorClass &b) {
    a.check_arity(b);
    TensorClass t(a.arity_);
    t.degrees_ = a.degrees_;
    for (const auto &[g, d] : b.degrees_) t.degrees_.try_emplace(g, d);
    for (const auto &[sa, ca] : a.terms_)
      for (const auto &[sb, cb] : b.terms_) {
        SimpleTensor s(a.arity_);
        for (std::size_t i = 0; i < a.arity_; ++i) s[i] = sa[i] * sb[i];
        t.add_term(s, ca * cb);
      }
    return t;
  }

  friend bool operator==(const TensorClass &a, const TensorClass &b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

private:
  void check_arity(const TensorClass &o) const {
    if (o.arity_ != arity_)
      throw Error(Errc::ArityMismatch, "tensor classes of different arity");
  }

  std::size_t arity_;
  Terms terms_;
  GradedPolynomial::Degrees degrees_;
};

inline std::string to_string(const SimpleTensor &s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " ⊗ ";
    out += to_string(s[i]);
  }
  return out;
}

inline std::string to_string(const TensorClass &t) {
  if (t.is_zero()) return "0";
  std::string out;
  for (const auto &[s, c] : t.terms()) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += to_string(c) + "*";
    out += "(" + to_string(s) + ")";
  }
  return out;
}

} // namespace nielsen
