#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nielsen/lattice.hpp"

namespace nielsen {

/// Codimension-3 linear subspace of Q^N given by three independent normals.
struct Subspace {
  std::vector<RatVector> normals;
};

/// Finite arrangement of codimension-3 linear subspaces in Q^N.
class Arrangement {
public:
  Arrangement(std::size_t ambient_dim, std::vector<Subspace> subspaces)
      : n_(ambient_dim), subspaces_(std::move(subspaces)) {
    if (n_ == 0) throw Error(Errc::InvalidArgument, "ambient dimension must be positive");
    for (std::size_t i = 0; i < subspaces_.size(); ++i) {
      const auto &s = subspaces_[i];
      if (s.normals.size() != 3)
        throw Error(Errc::InvalidArgument, "subspace " + std::to_string(i) +
                                               " needs exactly 3 normals");
      for (const auto &v : s.normals)
        if (v.size() != n_)
          throw Error(Errc::DimensionMismatch, "normal length differs from ambient dim");
      if (normal_rank({i}) != 3)
        throw Error(Errc::InvalidArgument,
                    "normals of subspace " + std::to_string(i) + " are dependent");
    }
    for (std::size_t i = 0; i < subspaces_.size(); ++i)
      for (std::size_t j = i + 1; j < subspaces_.size(); ++j)
        if (normal_rank({i, j}) == 3)
          throw Error(Errc::InvalidArgument, "subspaces " + std::to_string(i) + " and " +
                                                 std::to_string(j) + " coincide");
  }

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return subspaces_.size(); }
  const std::vector<Subspace> &subspaces() const noexcept { return subspaces_; }

  /// Rank of the stacked normals of the given subspaces.
  std::size_t normal_rank(const std::vector<std::size_t> &subset) const {
    RatMatrix m(3 * subset.size(), n_);
    std::size_t r = 0;
    for (std::size_t idx : subset)
      for (const auto &v : subspaces_.at(idx).normals) {
        for (std::size_t c = 0; c < n_; ++c) m(r, c) = v[c];
        ++r;
      }
    return rank(std::move(m));
  }

private:
  std::size_t n_;
  std::vector<Subspace> subspaces_;
};

struct TransversalityResult {
  bool transversal = true;
  std::vector<std::size_t> witness; ///< first failing subset, if any
  std::size_t witness_rank = 0;
};

/// Every subset S with |S| ≤ max_subset must have normal rank min(3|S|, N).
/// Subsets are visited by size, then lexicographically.
inline TransversalityResult transversality_check(const Arrangement &a,
                                                 std::size_t max_subset) {
  if (max_subset > a.size())
    throw Error(Errc::InvalidArgument, "max_subset exceeds number of subspaces");
  TransversalityResult res;
  std::vector<std::size_t> subset;
  for (std::size_t size = 1; size <= max_subset; ++size) {
    subset.assign(size, 0);
    for (std::size_t t = 0; t < size; ++t) subset[t] = t;
    while (true) {
      const std::size_t expect = std::min(3 * size, a.ambient_dim());
      const std::size_t got = a.normal_rank(subset);
      if (got != expect) {
        res.transversal = false;
        res.witness = subset;
        res.witness_rank = got;
        return res;
      }
      // next combination
      std::size_t t = size;
      while (t > 0 && subset[t - 1] == a.size() - size + t - 1) --t;
      if (t == 0) break;
      ++subset[t - 1];
      for (std::size_t u = t; u < size; ++u) subset[u] = subset[u - 1] + 1;
    }
  }
  return res;
}

struct BettiTable {
  std::map<int, Integer> betti;
  int valid_upto = 0;
};

/// Largest n for which H_{2n} of the complement is given by n-subsets:
/// n ≤ ⌊N/4⌋ + 1 and 3n ≤ N.
inline int validity_window(std::size_t ambient_dim) {
  const int n = static_cast<int>(ambient_dim);
  return std::min(n / 4 + 1, n / 3);
}

inline Integer binomial(std::size_t m, std::size_t n) {
  if (n > m) return 0;
  Integer r = 1;
  for (std::size_t t = 0; t < n; ++t) r = r * (m - t) / (t + 1);
  return r;
}

/// Homology ranks of the complement of a transversal codim-3 arrangement in
/// odd dimension N: rank H_{2n} = C(m, n), odd degrees vanish, inside the
/// validity window. Degrees past the window are not reported.
inline BettiTable betti_complement(const Arrangement &a, int max_degree) {
  if (a.ambient_dim() % 2 == 0)
    throw Error(Errc::EvenAmbient, "ambient dimension must be odd");
  if (max_degree < 0) throw Error(Errc::InvalidArgument, "max_degree must be >= 0");
  const int window = validity_window(a.ambient_dim());
  BettiTable t;
  t.valid_upto = std::min(max_degree, 2 * window);
  // Once more than r = ⌊(N−1)/3⌋ subspaces are present, the origin is an
  // intersection whose truncated boolean interval adds classes in degree
  // N − 1 − r; for small N this lands inside the window.
  const int n = static_cast<int>(a.ambient_dim());
  if (static_cast<int>(a.size()) > (n - 1) / 3)
    t.valid_upto = std::min(t.valid_upto, n - 2 - (n - 1) / 3);
  const std::size_t tuples =
      std::min<std::size_t>(a.size(), static_cast<std::size_t>(t.valid_upto / 2));
  if (tuples >= 2) {
    const auto tr = transversality_check(a, tuples);
    if (!tr.transversal) {
      std::string w;
      for (std::size_t i : tr.witness) w += (w.empty() ? "" : ",") + std::to_string(i);
      throw Error(Errc::TransversalityFailure, "subspaces {" + w + "} not transversal");
    }
  }
  for (int d = 0; d <= t.valid_upto; ++d)
    t.betti[d] = d % 2 ? Integer(0) : binomial(a.size(), static_cast<std::size_t>(d / 2));
  return t;
}

/// Chart data for Gr⁺₃ of a (3,q) form: a positive-definite 3-plane τ₀ and
/// a basis f_b of τ₀^⊥, all integral and mutually orthogonal.
struct PositiveFrame {
  std::vector<Vector> positive;   ///< u_a spanning τ₀
  std::vector<Vector> negative;   ///< f_b spanning τ₀^⊥
};

inline PositiveFrame positive_frame(const Lattice &l) {
  const Diagonalization d = diagonalize(l.gram());
  PositiveFrame f;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (d.values[i] > 0) f.positive.push_back(clear_denominators(d.basis[i]));
    else if (d.values[i] < 0) f.negative.push_back(clear_denominators(d.basis[i]));
    else throw Error(Errc::DegenerateForm, "form is degenerate");
  }
  return f;
}

/// Linear model of the root hyperplane arrangement in Gr⁺₃(R^{3,19}) ≅
/// Hom(τ₀, τ₀^⊥) ≅ R^57. In the graph chart X ↦ {u + Xu}, the locus
/// A_δ = {τ : δ ⊥ τ} is {X : ⟨u_a, δ⟩ + Σ_b X_ab ⟨f_b, δ⟩ = 0, a = 1..3};
/// its linear part has normals e_a ⊗ (⟨f_b, δ⟩)_b.
inline Arrangement k3_arrangement_from_roots(const Lattice &l, const std::vector<Vector> &roots) {
  if (roots.empty()) throw Error(Errc::EmptyInput, "no roots given");
  for (const auto &r : roots)
    if (l.norm(r) != -2) throw Error(Errc::NotARoot, to_string(r) + " is not a root");
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      RatMatrix m(2, l.rank());
      for (std::size_t c = 0; c < l.rank(); ++c) {
        m(0, c) = Rational(roots[i][c]);
        m(1, c) = Rational(roots[j][c]);
      }
      if (rank(m) < 2)
        throw Error(Errc::ProportionalRoots,
                    to_string(roots[i]) + " and " + to_string(roots[j]) +
                        " define the same subspace");
    }
  const PositiveFrame frame = positive_frame(l);
  if (frame.positive.size() != 3)
    throw Error(Errc::InvalidArgument, "ambient form must have 3 positive directions");
  const std::size_t cols = frame.negative.size();
  const std::size_t dim = 3 * cols;
  std::vector<Subspace> subs;
  for (const auto &r : roots) {
    RatVector w(cols);
    for (std::size_t b = 0; b < cols; ++b) w[b] = Rational(l.pair(frame.negative[b], r));
    Subspace s;
    for (std::size_t a = 0; a < 3; ++a) {
      RatVector n(dim, Rational(0));
      for (std::size_t b = 0; b < cols; ++b) n[a * cols + b] = w[b];
      s.normals.push_back(std::move(n));
    }
    subs.push_back(std::move(s));
  }
  return Arrangement(dim, std::move(subs));
}

} // namespace nielsen
