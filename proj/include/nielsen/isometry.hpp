#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nielsen/lattice.hpp"

namespace nielsen {

/// Integer matrix g acting on lattice coordinates with gᵀ G g = G.
class Isometry {
public:
  Isometry(Lattice lattice, IntMatrix matrix)
      : lattice_(std::move(lattice)), matrix_(std::move(matrix)) {
    const std::size_t n = lattice_.rank();
    if (matrix_.rows() != n || matrix_.cols() != n)
      throw Error(Errc::DimensionMismatch, "isometry matrix shape");
    if (matrix_.transpose() * lattice_.gram() * matrix_ != lattice_.gram())
      throw Error(Errc::NotAnIsometry, "matrix does not preserve the Gram form");
    const Integer d = nielsen::determinant(matrix_);
    if (d != 1 && d != -1)
      throw Error(Errc::NotAnIsometry, "determinant " + d.str() + " is not a unit");
    det_ = static_cast<int>(d);
  }

  static Isometry identity(const Lattice &l) {
    return Isometry(l, IntMatrix::identity(l.rank()));
  }

  const Lattice &lattice() const noexcept { return lattice_; }
  const IntMatrix &matrix() const noexcept { return matrix_; }
  int determinant() const noexcept { return det_; }

  Vector operator()(const Vector &v) const { return matrix_.apply(v); }

  friend bool operator==(const Isometry &a, const Isometry &b) {
    return a.lattice_ == b.lattice_ && a.matrix_ == b.matrix_;
  }

private:
  Lattice lattice_;
  IntMatrix matrix_;
  int det_ = 1;
};

/// Rational reflection matrix x ↦ x − 2⟨x,v⟩/⟨v,v⟩ v in lattice coordinates.
inline RatMatrix reflection_matrix(const RatMatrix &gram, const RatVector &v) {
  const std::size_t n = gram.rows();
  const Rational vv = bilinear(gram, v, v);
  if (vv == 0) throw Error(Errc::IsotropicVector, "reflection through isotropic vector");
  const RatVector gv = gram.apply(v); // ⟨e_j, v⟩ = (G v)_j
  RatMatrix r = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) -= 2 * v[i] * gv[j] / vv;
  return r;
}

inline Isometry reflection(const Lattice &l, const Vector &v) {
  l.check_dim(v);
  const Integer vv = l.norm(v);
  if (vv == 0)
    throw Error(Errc::IsotropicVector, "vector " + to_string(v) + " has norm 0");
  const std::size_t n = l.rank();
  const Vector gv = l.gram().apply(v);
  IntMatrix r = IntMatrix::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (gv[j] == 0) continue;
    const Integer num = 2 * gv[j];
    if (num % vv != 0)
      throw Error(Errc::NotIntegral, "reflection through " + to_string(v) +
                                         " is not integral on the lattice");
    const Integer c = num / vv;
    for (std::size_t i = 0; i < n; ++i) r(i, j) -= c * v[i];
  }
  return Isometry(l, std::move(r));
}

inline Isometry compose(const Isometry &g, const Isometry &h) {
  if (!(g.lattice() == h.lattice()))
    throw Error(Errc::LatticeMismatch, "isometries act on different lattices");
  return Isometry(g.lattice(), g.matrix() * h.matrix());
}

/// Factorization g = s_{v_1} ∘ … ∘ s_{v_m} into rational reflections,
/// m ≤ 2·rank, by constructive Cartan–Dieudonné over an orthogonal basis.
struct ReflectionFactorization {
  std::vector<RatVector> vectors;
  std::vector<Rational> norms;
};

inline ReflectionFactorization reflection_factorization(const Isometry &g) {
  const Lattice &l = g.lattice();
  if (l.degenerate())
    throw Error(Errc::DegenerateForm, "spinor norm needs a nondegenerate form");
  const std::size_t n = l.rank();
  const IntMatrix &gram = l.gram();
  std::vector<IntVector> basis;
  for (const auto &f : diagonalize(gram).basis) basis.push_back(clear_denominators(f));

  // Fraction-free: the current map is hmat / denom. Reflection vectors are
  // kept integral; rescaling v does not change s_v.
  ReflectionFactorization out;
  IntMatrix hmat = g.matrix();
  Integer denom = 1;
  auto reflect = [&](const IntVector &v) {
    // h <- s_v h = h − (2/⟨v,v⟩) v (vᵀ G h)
    const Integer vv = bilinear(gram, v, v);
    const IntVector gv = gram.apply(v);
    for (std::size_t j = 0; j < n; ++j) {
      Integer w = 0;
      for (std::size_t t = 0; t < n; ++t)
        if (gv[t] != 0) w += gv[t] * hmat(t, j);
      w *= 2;
      for (std::size_t i = 0; i < n; ++i) {
        hmat(i, j) *= vv;
        if (v[i] != 0) hmat(i, j) -= w * v[i];
      }
    }
    denom *= vv;
    Integer c = abs(denom);
    for (std::size_t i = 0; i < n && c != 1; ++i)
      for (std::size_t j = 0; j < n && c != 1; ++j)
        if (hmat(i, j) != 0) c = boost::multiprecision::gcd(c, hmat(i, j));
    if (denom < 0) c = -c;
    if (c != 1) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) hmat(i, j) /= c;
      denom /= c;
    }
    out.vectors.push_back(to_rational(v));
    out.norms.push_back(Rational(vv));
  };
  auto primitive = [](IntVector v) {
    Integer c = 0;
    for (const auto &x : v) c = boost::multiprecision::gcd(c, x);
    if (c > 1)
      for (auto &x : v) x /= c;
    return v;
  };
  // h fixes f_0..f_{i-1} and so preserves span(f_i..f_{n-1})
  for (std::size_t i = 0; i < n; ++i) {
    const IntVector &f = basis[i];
    const IntVector hf = hmat.apply(f); // denom · h(f)
    IntVector v(n), u(n);
    for (std::size_t t = 0; t < n; ++t) {
      v[t] = hf[t] - denom * f[t];
      u[t] = hf[t] + denom * f[t];
    }
    if (std::all_of(v.begin(), v.end(), [](const Integer &x) { return x == 0; })) continue;
    if (bilinear(gram, v, v) != 0) {
      reflect(primitive(v)); // s_v(hf) = f
      continue;
    }
    // ⟨hf − f⟩ isotropic: s_f ∘ s_{hf+f} sends hf to f
    reflect(primitive(u));
    reflect(f);
  }
  bool done = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) done = done && hmat(i, j) == (i == j ? denom : Integer(0));
  if (!done)
    throw Error(Errc::DegenerateForm, "reflection factorization did not terminate");
  if (out.vectors.size() > 2 * n)
    throw Error(Errc::DegenerateForm, "factorization longer than 2·rank");
  const int parity = out.vectors.size() % 2 == 0 ? 1 : -1;
  if (parity != g.determinant())
    throw Error(Errc::DegenerateForm, "reflection count parity disagrees with det");
  return out;
}

/// Real spinor norm: product of sign⟨v,v⟩ over a reflection factorization.
inline int spinor_norm(const Isometry &g) {
  int s = 1;
  for (const auto &nv : reflection_factorization(g).norms) s *= sign(nv);
  return s;
}

enum class SubgroupTag {
  AutDoublePrime,     ///< det = +1, spin = +1
  AutPrimeOnly,       ///< det = −1, spin = −1
  OutsidePrimeDetSpin,///< det = −1, spin = +1
  OutsidePrimeOther,  ///< det = +1, spin = −1
};

inline std::string to_string(SubgroupTag t) {
  switch (t) {
  case SubgroupTag::AutDoublePrime: return "Aut''";
  case SubgroupTag::AutPrimeOnly: return "Aut'\\Aut''";
  case SubgroupTag::OutsidePrimeDetSpin: return "Aut\\Aut'-detspin";
  case SubgroupTag::OutsidePrimeOther: return "Aut\\Aut'-other";
  }
  return "?";
}

struct IsometryClass {
  int determinant = 1;
  int spinor_norm = 1;
  SubgroupTag tag = SubgroupTag::AutDoublePrime;

  bool in_aut_prime() const noexcept { return determinant * spinor_norm == 1; }
  bool in_aut_double_prime() const noexcept {
    return determinant == 1 && spinor_norm == 1;
  }
};

inline SubgroupTag subgroup_tag(int det, int spin) {
  if (det == 1 && spin == 1) return SubgroupTag::AutDoublePrime;
  if (det == -1 && spin == -1) return SubgroupTag::AutPrimeOnly;
  if (det == -1) return SubgroupTag::OutsidePrimeDetSpin;
  return SubgroupTag::OutsidePrimeOther;
}

inline IsometryClass classify(const Isometry &g) {
  IsometryClass c;
  c.determinant = g.determinant();
  c.spinor_norm = spinor_norm(g);
  c.tag = subgroup_tag(c.determinant, c.spinor_norm);
  return c;
}

/// g ⊕ id on l ⊕ rest.
inline Isometry extend_by_identity(const Isometry &g, const Lattice &rest) {
  const Lattice sum = direct_sum(g.lattice(), rest);
  const std::size_t n = g.lattice().rank();
  IntMatrix m = IntMatrix::identity(sum.rank());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = g.matrix()(i, j);
  return Isometry(sum, std::move(m));
}

} // namespace nielsen
