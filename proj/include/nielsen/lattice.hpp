#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nielsen/numeric.hpp"

namespace nielsen {

using Vector = IntVector;

/// Finite-rank free Z-module with a symmetric integer Gram matrix.
class Lattice {
public:
  Lattice() = default;

  explicit Lattice(IntMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.square())
      throw Error(Errc::DimensionMismatch, "Gram matrix must be square");
    if (gram_.rows() == 0)
      throw Error(Errc::EmptyInput, "Gram matrix must have positive rank");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      for (std::size_t j = i + 1; j < gram_.cols(); ++j)
        if (gram_(i, j) != gram_(j, i))
          throw Error(Errc::NonSymmetric,
                      "gram[" + std::to_string(i) + "][" + std::to_string(j) +
                          "] != gram[" + std::to_string(j) + "][" +
                          std::to_string(i) + "]");
  }

  std::size_t rank() const noexcept { return gram_.rows(); }
  const IntMatrix &gram() const noexcept { return gram_; }

  Integer det() const { return determinant(gram_); }
  bool unimodular() const { return abs(det()) == 1; }
  bool degenerate() const { return det() == 0; }
  bool even() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram_(i, i) % 2 != 0) return false;
    return true;
  }

  Integer pair(const Vector &u, const Vector &v) const {
    check_dim(u);
    check_dim(v);
    return bilinear(gram_, u, v);
  }
  Integer norm(const Vector &v) const { return pair(v, v); }

  void check_dim(const Vector &v) const {
    if (v.size() != rank())
      throw Error(Errc::DimensionMismatch,
                  "vector of length " + std::to_string(v.size()) +
                      " in lattice of rank " + std::to_string(rank()));
  }

  friend bool operator==(const Lattice &a, const Lattice &b) {
    return a.gram_ == b.gram_;
  }

private:
  IntMatrix gram_;
};

inline Lattice make_lattice(IntMatrix gram) { return Lattice(std::move(gram)); }

inline Lattice direct_sum(const Lattice &a, const Lattice &b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  return Lattice(std::move(g));
}

inline Lattice direct_sum(const std::vector<Lattice> &parts) {
  if (parts.empty()) throw Error(Errc::EmptyInput, "empty direct sum");
  Lattice acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_sum(acc, parts[i]);
  return acc;
}

inline Lattice negate(const Lattice &l) { return Lattice(-l.gram()); }

inline Lattice power(const Lattice &l, std::size_t times) {
  return direct_sum(std::vector<Lattice>(times, l));
}

namespace lattices {

inline Lattice hyperbolic_plane() { return Lattice(IntMatrix{{0, 1}, {1, 0}}); }

inline Lattice unit(int s) { return Lattice(IntMatrix{{Integer(s)}}); }

/// Cartan matrix of E8 (Bourbaki labelling: chain 1-3-4-5-6-7-8, node 2 on 4).
inline IntMatrix e8_gram() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {4, 5}, {5, 6},
                                       {6, 7}, {7, 8}, {2, 4}};
  for (auto [a, b] : edges) {
    g(a - 1, b - 1) = -1;
    g(b - 1, a - 1) = -1;
  }
  return g;
}

inline Lattice e8() { return Lattice(e8_gram()); }

/// H^3 + (-E8)^2, signature (3,19).
inline Lattice k3() {
  const Lattice h = hyperbolic_plane();
  const Lattice me8 = negate(e8());
  return direct_sum({h, h, h, me8, me8});
}

/// Intersection form of F_g x F_h: even, unimodular, signature (1+2gh, 1+2gh),
/// hence H^(1+2gh).
inline Lattice surface_product(int g, int h) {
  if (g < 0 || h < 0)
    throw Error(Errc::InvalidArgument, "genera must be nonnegative");
  return power(hyperbolic_plane(), static_cast<std::size_t>(1 + 2 * g * h));
}

/// Resolves "H", "E8", "-E8", "K3", "(1)", "(-1)"; nullopt otherwise.
inline std::optional<Lattice> by_name(const std::string &name) {
  if (name == "H") return hyperbolic_plane();
  if (name == "E8") return e8();
  if (name == "-E8") return negate(e8());
  if (name == "K3") return k3();
  if (name == "(1)") return unit(1);
  if (name == "(-1)") return unit(-1);
  return std::nullopt;
}

inline const std::vector<std::string> &names() {
  static const std::vector<std::string> n{"H", "E8", "-E8", "K3", "(1)", "(-1)"};
  return n;
}

} // namespace lattices

// ---------------------------------------------------------------------------
// Signature

/// Congruence diagonalization over Q: basisᵀ · gram · basis = diag(values).
/// Basis vectors are stored as lattice-coordinate vectors.
struct Diagonalization {
  std::vector<RatVector> basis;
  RatVector values;
};

inline Diagonalization diagonalize(const IntMatrix &gram) {
  const std::size_t n = gram.rows();
  RatMatrix a = to_rational(gram);
  std::vector<RatVector> basis(n, RatVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) basis[i][i] = 1;

  auto swap_idx = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t t = 0; t < n; ++t) std::swap(a(i, t), a(j, t));
    for (std::size_t t = 0; t < n; ++t) std::swap(a(t, i), a(t, j));
    std::swap(basis[i], basis[j]);
  };
  // b_i <- b_i + f * b_j
  auto add_multiple = [&](std::size_t i, std::size_t j, const Rational &f) {
    for (std::size_t t = 0; t < n; ++t) a(i, t) += f * a(j, t);
    for (std::size_t t = 0; t < n; ++t) a(t, i) += f * a(t, j);
    for (std::size_t t = 0; t < n; ++t) basis[i][t] += f * basis[j][t];
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv == n) {
      // all remaining diagonal entries vanish: b_i + b_j has norm 2 a(i,j)
      for (std::size_t i = k; i < n && piv == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            add_multiple(i, j, 1);
            piv = i;
            break;
          }
      if (piv == n) break; // remaining block is zero
    }
    swap_idx(k, piv);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      add_multiple(i, k, -a(i, k) / a(k, k));
    }
  }

  Diagonalization d;
  d.basis = std::move(basis);
  d.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.values[i] = a(i, i);
  return d;
}

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t deficit = 0; ///< rank − (p + q); nonzero iff degenerate

  bool degenerate() const noexcept { return deficit != 0; }
  friend bool operator==(const Signature &, const Signature &) = default;
};

inline std::string to_string(const Signature &s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) +
         ")";
}

inline Signature signature(const IntMatrix &gram) {
  Signature s;
  for (const auto &v : diagonalize(gram).values) {
    if (v > 0) ++s.positive;
    else if (v < 0) ++s.negative;
    else ++s.deficit;
  }
  return s;
}

inline Signature signature(const Lattice &l) { return signature(l.gram()); }

// ---------------------------------------------------------------------------
// Vector enumeration

/// Per-coordinate inclusive ranges.
struct CoordBox {
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;

  static CoordBox cube(std::size_t rank, std::int64_t half_width) {
    return {std::vector<std::pair<std::int64_t, std::int64_t>>(
        rank, {-half_width, half_width})};
  }

  long double points() const {
    long double p = 1;
    for (auto [lo, hi] : ranges) p *= hi < lo ? 0 : static_cast<long double>(hi - lo + 1);
    return p;
  }
};

/// Splits the first coordinate range with width > 1 into up to `parts`
/// contiguous pieces; enumerating the pieces in order and concatenating
/// reproduces the enumeration of the whole box.
inline std::vector<CoordBox> split_box(const CoordBox &box, std::size_t parts) {
  std::size_t axis = 0;
  while (axis < box.ranges.size() &&
         box.ranges[axis].second <= box.ranges[axis].first)
    ++axis;
  if (axis == box.ranges.size() || parts <= 1) return {box};
  const auto [lo, hi] = box.ranges[axis];
  const std::int64_t width = hi - lo + 1;
  const std::int64_t k = std::min<std::int64_t>(static_cast<std::int64_t>(parts), width);
  std::vector<CoordBox> out;
  std::int64_t start = lo;
  for (std::int64_t i = 0; i < k; ++i) {
    const std::int64_t len = width / k + (i < width % k ? 1 : 0);
    CoordBox piece = box;
    piece.ranges[axis] = {start, start + len - 1};
    out.push_back(std::move(piece));
    start += len;
  }
  return out;
}

inline constexpr long double kMaxBoxPoints = 2e8L;

namespace detail {

inline void scan_box(const Lattice &l, const Integer &target,
                     const CoordBox &box, std::vector<Vector> &out) {
  const std::size_t n = l.rank();
  const IntMatrix &g = l.gram();
  std::vector<std::int64_t> x(n);
  // partial[i] = sum_{j<i} 2 g(i,j) x_j  (cross terms towards earlier coords)
  auto rec = [&](auto &&self, std::size_t i, const Integer &acc) -> void {
    if (i == n) {
      if (acc == target) out.emplace_back(x.begin(), x.end());
      return;
    }
    Integer cross = 0;
    for (std::size_t j = 0; j < i; ++j)
      if (x[j] != 0 && g(i, j) != 0) cross += 2 * g(i, j) * x[j];
    for (std::int64_t v = box.ranges[i].first; v <= box.ranges[i].second; ++v) {
      x[i] = v;
      self(self, i + 1, acc + g(i, i) * v * v + cross * v);
    }
  };
  rec(rec, 0, Integer(0));
}

/// Fincke–Pohst style enumeration of {x : xᵀ G x = target} for positive
/// definite G. Bounds are computed in floating point with a slack of one
/// and every candidate is checked exactly.
inline std::vector<Vector> definite_enumerate(const IntMatrix &gram,
                                              const Integer &target) {
  const std::size_t n = gram.rows();
  // q(i,i) = pivots, q(i,j) (j>i) = multipliers: Q(x) = sum q_ii (x_i + sum_{j>i} q_ij x_j)^2
  RatMatrix q = to_rational(gram);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) = q(i, j) / q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }
  std::vector<Vector> out;
  std::vector<Integer> x(n, 0);
  const Rational t0(target);
  auto rec = [&](auto &&self, std::size_t level, const Rational &remaining) -> void {
    // level counts down from n to 1; coordinate index i = level - 1
    const std::size_t i = level - 1;
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center += q(i, j) * Rational(x[j]);
    const double r = static_cast<double>(remaining / q(i, i));
    const double s = std::sqrt(std::max(0.0, r));
    const double c = static_cast<double>(center);
    const auto lo = static_cast<std::int64_t>(std::floor(-c - s)) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil(-c + s)) + 1;
    for (std::int64_t v = lo; v <= hi; ++v) {
      const Rational shifted = Rational(v) + center;
      const Rational used = q(i, i) * shifted * shifted;
      if (used > remaining) continue;
      x[i] = v;
      if (i == 0) {
        if (used == remaining) out.push_back(x);
      } else {
        self(self, level - 1, remaining - used);
      }
    }
    x[i] = 0;
  };
  if (target >= 0) rec(rec, n, t0);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace detail

/// Vectors of the given norm inside a coordinate box, in lexicographic order.
inline std::vector<Vector> enumerate_in_box(const Lattice &l, const Integer &norm,
                                            const CoordBox &box) {
  if (box.ranges.size() != l.rank())
    throw Error(Errc::DimensionMismatch, "box rank differs from lattice rank");
  if (box.points() > kMaxBoxPoints)
    throw Error(Errc::BoxTooLarge, "coordinate box has too many points");
  std::vector<Vector> out;
  detail::scan_box(l, norm, box, out);
  return out;
}

/// Definite lattices: complete set (box optional, used as a filter).
/// Indefinite or degenerate lattices: exhaustive scan of the cube
/// [-box, box]^rank, which must be given.
inline std::vector<Vector> enumerate_vectors(const Lattice &l, const Integer &norm,
                                             std::optional<std::int64_t> box = {}) {
  const Signature sig = signature(l);
  const bool pos_def = sig.positive == l.rank();
  const bool neg_def = sig.negative == l.rank();
  if (!pos_def && !neg_def) {
    if (!box)
      throw Error(Errc::BoxRequired,
                  "lattice of signature " + to_string(sig) +
                      " is not definite; a coordinate box is required");
    if (*box < 0) throw Error(Errc::InvalidArgument, "box must be nonnegative");
    return enumerate_in_box(l, norm, CoordBox::cube(l.rank(), *box));
  }
  std::vector<Vector> all = pos_def ? detail::definite_enumerate(l.gram(), norm)
                                    : detail::definite_enumerate(-l.gram(), -norm);
  if (box) {
    std::erase_if(all, [&](const Vector &v) {
      return std::any_of(v.begin(), v.end(),
                         [&](const Integer &c) { return abs(c) > *box; });
    });
  }
  return all;
}

// ---------------------------------------------------------------------------
// Sublattices

struct SublatticeReport {
  std::vector<Vector> span_basis;
  IntMatrix span_gram;
  std::size_t span_rank = 0;
  Signature span_signature;
  std::vector<Vector> complement_basis;
  IntMatrix complement_gram;
  Signature complement_signature;
  /// [L : P ⊕ P^⊥]; empty when the span (or ambient form) is degenerate.
  std::optional<Integer> index_in_ambient;
};

inline IntMatrix gram_of(const Lattice &l, const std::vector<Vector> &basis) {
  IntMatrix g(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j)
      g(i, j) = g(j, i) = l.pair(basis[i], basis[j]);
  return g;
}

inline SublatticeReport sublattice_report(const Lattice &l,
                                          const std::vector<Vector> &vecs) {
  if (vecs.empty()) throw Error(Errc::EmptyInput, "no vectors given");
  for (const auto &v : vecs) l.check_dim(v);

  SublatticeReport r;
  r.span_basis = hermite_rows(vecs);
  r.span_rank = r.span_basis.size();
  if (r.span_rank == 0)
    throw Error(Errc::EmptyInput, "vectors span the zero sublattice");
  r.span_gram = gram_of(l, r.span_basis);
  r.span_signature = signature(r.span_gram);

  // P^⊥ = ker(x ↦ B G x), saturated
  const IntMatrix pairing = IntMatrix::from_rows(r.span_basis) * l.gram();
  r.complement_basis = integer_kernel(pairing);
  if (!r.complement_basis.empty()) {
    r.complement_gram = gram_of(l, r.complement_basis);
    r.complement_signature = signature(r.complement_gram);
  }

  const Integer det_ambient = abs(l.det());
  const Integer det_span = abs(determinant(r.span_gram));
  if (det_ambient != 0 && det_span != 0) {
    const Integer det_comp =
        r.complement_basis.empty() ? Integer(1) : abs(determinant(r.complement_gram));
    const Integer squared = det_span * det_comp / det_ambient;
    const Integer root = boost::multiprecision::sqrt(squared);
    if (root * root != squared || squared * det_ambient != det_span * det_comp)
      throw Error(Errc::DegenerateForm, "index identity failed to produce a square");
    r.index_in_ambient = root;
  }
  return r;
}

} // namespace nielsen
