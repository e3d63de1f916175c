#pragma once

#include <string>
#include <vector>

#include "nielsen/graded.hpp"
#include "nielsen/series.hpp"
#include "nielsen/tensor.hpp"

namespace nielsen {

namespace gens {

inline std::string kappa(unsigned m) { return "kappa_" + std::to_string(m); }
inline std::string ell(unsigned i) { return "l_" + std::to_string(i); }

inline GradedPolynomial euler() { return GradedPolynomial::generator("e", 2); }
inline GradedPolynomial p1() { return GradedPolynomial::generator("p1", 4); }
inline GradedPolynomial kappa_class(unsigned m) {
  return GradedPolynomial::generator(kappa(m), static_cast<int>(2 * m));
}
inline GradedPolynomial ell_class(unsigned i) {
  return GradedPolynomial::generator(ell(i), static_cast<int>(4 * i));
}

} // namespace gens

/// Degree-4j component of the modified L-class of an oriented rank-2 bundle:
/// c_j · e^{2j}, c_j the x^{2j} coefficient of x/tanh(x/2).
inline GradedPolynomial l_tilde_rank2(unsigned j) {
  const Rational c = l_tilde_series(2 * j)[2 * j];
  GradedPolynomial p = c * gens::euler().pow(2 * j);
  p.declare("e", 2);
  return p;
}

/// Integration along the fibre of a surface bundle: e^{m+1} ↦ κ_m, e^0 ↦ 0.
inline GradedPolynomial fiber_integrate_surface(const GradedPolynomial &poly) {
  GradedPolynomial out;
  for (const auto &[m, c] : poly.terms()) {
    if (m.empty()) continue;
    if (m.size() != 1 || m.begin()->first != "e")
      throw Error(Errc::InvalidArgument,
                  "fibre integration expects a polynomial in e only, got " +
                      to_string(m));
    const unsigned power = m.begin()->second;
    out += c * gens::kappa_class(power - 1);
  }
  return out;
}

/// κ_0 = π_*(e) = 2 − 2g for a closed genus-g fibre.
inline GradedPolynomial substitute_kappa0(const GradedPolynomial &poly, int genus) {
  return poly.substitute(gens::kappa(0), GradedPolynomial::constant(Rational(2 - 2 * genus)));
}

/// Total Chern character of a real bundle of rank 1..3 as a polynomial in p1,
/// truncated above `max_degree`. The complexification has Chern roots ±x
/// (and 0 for odd rank), with x² = p1.
inline GradedPolynomial chern_character_real(unsigned rank, unsigned max_degree) {
  if (rank < 1 || rank > 3)
    throw Error(Errc::UnsupportedRank,
                "real Chern character implemented for rank 1..3, got " +
                    std::to_string(rank));
  if (max_degree % 2 != 0)
    throw Error(Errc::InvalidArgument, "max_degree must be even");
  GradedPolynomial ch;
  ch.declare("p1", 4);
  if (rank % 2 == 1) ch += GradedPolynomial::constant(1);
  if (rank >= 2) {
    // 2 cosh(x) = sum_j 2 x^{2j} / (2j)!
    for (unsigned j = 0; 4 * j <= max_degree; ++j)
      ch += (Rational(2) / factorial(2 * j)) * gens::p1().pow(j);
  }
  return ch;
}

inline GradedPolynomial chern_character_component(unsigned rank, unsigned degree) {
  return chern_character_real(rank, degree + degree % 2).component(static_cast<int>(degree));
}

struct RelationCheck {
  GradedPolynomial lhs;
  GradedPolynomial rhs;
  bool equal = false;
};

/// ch_4² against 12·ch_8 in H*(BO_3; Q) = Q[p1].
inline RelationCheck verify_bo3_relation() {
  const GradedPolynomial ch4 = chern_character_component(3, 4);
  const GradedPolynomial ch8 = chern_character_component(3, 8);
  RelationCheck r{ch4 * ch4, Rational(12) * ch8, false};
  r.equal = r.lhs == r.rhs;
  return r;
}

/// ch_4·ch_8 against ch_12 for rank 3; reports the proportionality constant.
struct DegreeTwelveCheck {
  GradedPolynomial product;
  GradedPolynomial ch12;
  Rational ratio;
};

inline DegreeTwelveCheck degree_twelve_check() {
  const GradedPolynomial ch4 = chern_character_component(3, 4);
  const GradedPolynomial ch8 = chern_character_component(3, 8);
  const GradedPolynomial ch12 = chern_character_component(3, 12);
  DegreeTwelveCheck d{ch4 * ch8, ch12, 0};
  d.ratio = *proportionality(d.product, d.ch12);
  return d;
}

/// l_i = 2·ch_{4i} for a rank-3 positive part, as a polynomial in p1.
inline GradedPolynomial ell_from_ch(unsigned i) {
  if (i < 1) throw Error(Errc::InvalidArgument, "l_i needs i >= 1");
  return Rational(2) * chern_character_component(3, 4 * i);
}

/// The constant c with l_1² = c·l_2 in Q[p1].
inline Rational ell_relation_constant() {
  const GradedPolynomial l1 = ell_from_ch(1);
  return *proportionality(l1 * l1, ell_from_ch(2));
}

/// l_i of the product bundle with fibre F_{g_1} × … × F_{g_2k}: the degree
/// 4(i+k) part of ∏_s π_*L̃(T^ν E_s), expanded into external products of
/// κ classes (one tensor slot per surface). Only slot patterns
/// (j_1..j_2k) with every j_s ≥ 1 and Σ j_s = i + k survive, since
/// π_*L̃_0 = π_*(2) = 0.
inline TensorClass ell_product_of_surfaces(const std::vector<int> &genera,
                                           unsigned i) {
  if (genera.empty()) throw Error(Errc::EmptyInput, "no surface factors");
  if (genera.size() % 2 != 0)
    throw Error(Errc::OddArity, "dimension 4k needs an even number of surfaces");
  if (i < 1) throw Error(Errc::InvalidArgument, "l_i needs i >= 1");
  const std::size_t slots = genera.size();
  const unsigned total = i + static_cast<unsigned>(slots / 2);

  std::vector<GradedPolynomial> integrated(total + 1);
  for (unsigned j = 1; j <= total; ++j)
    integrated[j] = fiber_integrate_surface(l_tilde_rank2(j));

  TensorClass out(slots);
  std::vector<unsigned> parts(slots, 1);
  auto rec = [&](auto &&self, std::size_t s, unsigned left) -> void {
    if (s + 1 == slots) {
      parts[s] = left;
      std::vector<GradedPolynomial> factors;
      for (unsigned j : parts) factors.push_back(integrated[j]);
      out = out + TensorClass::external(factors);
      return;
    }
    for (unsigned j = 1; j + (slots - s - 1) <= left; ++j) {
      parts[s] = j;
      self(self, s + 1, left - j);
    }
  };
  if (total >= slots) rec(rec, 0, total);
  return out;
}

/// Base degree of a simple tensor of κ classes: Σ deg κ_{a_s} = Σ 2 a_s.
inline int base_degree(const SimpleTensor &t) {
  int d = 0;
  for (const auto &m : t)
    for (const auto &[g, e] : m) {
      if (g.rfind("kappa_", 0) != 0)
        throw Error(Errc::InvalidArgument, "not a kappa monomial: " + g);
      d += 2 * std::stoi(g.substr(6)) * static_cast<int>(e);
    }
  return d;
}

} // namespace nielsen
