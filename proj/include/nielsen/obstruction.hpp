#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nielsen/genus.hpp"
#include "nielsen/lattice.hpp"
#include "nielsen/tensor.hpp"

namespace nielsen {

// ---------------------------------------------------------------------------
// Thresholds

/// Stable ranges for arithmetic subgroups of SO⁺(p,q).
struct StableRange {
  int p = 0, q = 0;
  int bijective_upto = 0;   ///< ⌊(p+q)/2⌋ − 2
  int iso_upto_with_2q = 0; ///< min(2q, ⌊(p+q)/2⌋ − 2)
};

inline int floor_half_minus_two(int n) { return n / 2 - 2; }

inline StableRange borel_stable_range(int p, int q) {
  if (p < 0 || q < 0) throw Error(Errc::InvalidArgument, "negative signature");
  if (p + q < 2)
    throw Error(Errc::RankTooSmall, "SO+(p,q) needs p + q >= 2");
  StableRange r{p, q, floor_half_minus_two(p + q), 0};
  r.iso_upto_with_2q = std::min(2 * q, r.bijective_upto);
  return r;
}

/// l_i vanishes on flat bundles (discrete structure group) when i > k.
inline bool bott_obstruction(int i, int k) {
  if (i < 1 || k < 1) throw Error(Errc::InvalidArgument, "i, k must be >= 1");
  return i > k;
}

/// Smallest genus g with g/2 − 1 ≥ class_degree.
inline int harer_genus_threshold(int class_degree) {
  if (class_degree < 1) throw Error(Errc::InvalidArgument, "class degree must be >= 1");
  return 2 * (class_degree + 1);
}

// ---------------------------------------------------------------------------
// Connected sums

/// μ*: l_i ↦ Σ_j 1 ⊗ … ⊗ l_i ⊗ … ⊗ 1 over n slots, extended multiplicatively
/// and linearly to polynomials in the l classes.
inline TensorClass connected_sum_pullback(const GradedPolynomial &poly, std::size_t n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "need at least one summand");
  TensorClass out(n);
  std::map<std::string, TensorClass> image;
  for (const auto &[m, c] : poly.terms()) {
    TensorClass term = TensorClass::unit(n);
    for (const auto &[g, e] : m) {
      auto it = image.find(g);
      if (it == image.end()) {
        const GradedPolynomial gen =
            GradedPolynomial::generator(g, poly.degrees().at(g));
        TensorClass sum(n);
        for (std::size_t j = 0; j < n; ++j) sum = sum + TensorClass::embed(gen, j, n);
        it = image.emplace(g, std::move(sum)).first;
      }
      for (unsigned t = 0; t < e; ++t) term = term * it->second;
    }
    out = out + c * term;
  }
  return out;
}

/// ℓ_1^{m_1} ⋯ ℓ_n^{m_n} from an exponent vector.
inline GradedPolynomial ell_monomial(const std::vector<unsigned> &exponents) {
  GradedPolynomial p = GradedPolynomial::constant(1);
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    const unsigned idx = static_cast<unsigned>(i + 1);
    p.declare(gens::ell(idx), static_cast<int>(4 * idx));
    if (exponents[i]) p = p * gens::ell_class(idx).pow(exponents[i]);
  }
  return p;
}

struct CertificateEntry {
  Monomial monomial;
  std::size_t max_length = 0;
  /// Sorted non-unit slot contents shared by every maximal-length term.
  std::vector<std::string> slot_multiset;
  std::size_t maximal_terms = 0;
  bool all_permutations = false;
};

struct IndependenceCertificate {
  bool independent = false;
  std::size_t slots = 0;
  std::vector<CertificateEntry> entries;
};

namespace detail {

inline Integer falling_factorial(std::size_t n, std::size_t k) {
  Integer r = 1;
  for (std::size_t t = 0; t < k; ++t) r *= n - t;
  return r;
}

} // namespace detail

/// Certifies linear independence of the given ℓ-monomials under μ* into an
/// N-fold connected sum: distinct monomials must have distinct maximal-length
/// parts, and each maximal-length part must be exactly the set of slot
/// permutations of the monomial's factors.
inline IndependenceCertificate
independence_certificate(const std::vector<Monomial> &monomials, std::size_t slots) {
  if (slots < 1) throw Error(Errc::InvalidArgument, "need at least one slot");
  std::set<Monomial> unique(monomials.begin(), monomials.end());
  IndependenceCertificate cert;
  cert.slots = slots;
  cert.independent = true;
  std::set<std::vector<std::string>> seen;
  for (const auto &m : unique) {
    GradedPolynomial poly;
    std::vector<std::string> factors;
    std::size_t total = 0;
    for (const auto &[g, e] : m) {
      if (g.rfind("l_", 0) != 0)
        throw Error(Errc::InvalidArgument, "not an l-monomial: " + to_string(m));
      poly.declare(g, 4 * std::stoi(g.substr(2)));
      for (unsigned t = 0; t < e; ++t) factors.push_back(g);
      total += e;
    }
    if (total > slots)
      throw Error(Errc::InvalidArgument, "monomial degree exceeds slot count");
    poly.add_term(m, 1);
    const TensorClass top = connected_sum_pullback(poly, slots).maximal_length_part();

    CertificateEntry entry;
    entry.monomial = m;
    entry.max_length = top.max_length();
    std::set<std::vector<std::string>> shapes;
    for (const auto &[s, c] : top.terms()) {
      std::vector<std::string> shape;
      for (const auto &slot : s)
        if (!slot.empty()) shape.push_back(to_string(slot));
      std::sort(shape.begin(), shape.end());
      shapes.insert(shape);
    }
    std::sort(factors.begin(), factors.end());
    entry.maximal_terms = top.terms().size();
    Integer expected = detail::falling_factorial(slots, total);
    for (const auto &[g, e] : m) expected /= detail::falling_factorial(e, e);
    entry.all_permutations = shapes.size() == 1 && *shapes.begin() == factors &&
                             Integer(entry.maximal_terms) == expected &&
                             entry.max_length == total;
    entry.slot_multiset = shapes.empty() ? std::vector<std::string>{} : *shapes.begin();
    if (!entry.all_permutations || !seen.insert(entry.slot_multiset).second)
      cert.independent = false;
    cert.entries.push_back(std::move(entry));
  }
  return cert;
}

inline constexpr std::size_t kDeskScale = 5;

/// All monomials ℓ_1^{m_1} ⋯ ℓ_n^{m_n} with Σ m_i ≤ N, over N slots.
inline IndependenceCertificate independence_certificate(std::size_t n, std::size_t big_n) {
  if (n < 1 || big_n < 1) throw Error(Errc::InvalidArgument, "n, N must be >= 1");
  if (n > kDeskScale || big_n > kDeskScale)
    throw Error(Errc::ScaleExceeded, "n, N limited to " + std::to_string(kDeskScale));
  std::vector<Monomial> monomials;
  std::vector<unsigned> exps(n, 0);
  auto rec = [&](auto &&self, std::size_t i, std::size_t left) -> void {
    if (i == n) {
      Monomial m;
      for (std::size_t t = 0; t < n; ++t)
        if (exps[t]) m[gens::ell(static_cast<unsigned>(t + 1))] = exps[t];
      monomials.push_back(std::move(m));
      return;
    }
    for (std::size_t e = 0; e <= left; ++e) {
      exps[i] = static_cast<unsigned>(e);
      self(self, i + 1, left - e);
    }
    exps[i] = 0;
  };
  rec(rec, 0, big_n);
  return independence_certificate(monomials, big_n);
}

// ---------------------------------------------------------------------------
// Root-tuple stabilizers

struct StabilizerReport {
  std::size_t tuple_size = 0;
  Signature span_signature;
  std::size_t span_rank = 0;
  bool degenerate_span = false;
  int ambient_p = 0, ambient_q = 0; ///< SO⁺(p − n₁, q − n₂)
  StableRange stable_range;
  int odd_vanishing_upto = 0;
  Integer finite_quotient_bound; ///< |G_x| ≤ n!
  SublatticeReport sublattice;
};

inline StabilizerReport stabilizer_report(const Lattice &l, const std::vector<Vector> &roots) {
  if (roots.empty()) throw Error(Errc::EmptyInput, "no roots given");
  for (const auto &r : roots) {
    const Integer nv = l.norm(r);
    if (nv != -2)
      throw Error(Errc::NotARoot, to_string(r) + " has norm " + nv.str());
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i] == roots[j])
        throw Error(Errc::InvalidArgument, "roots must be distinct");
  if (l.degenerate()) throw Error(Errc::DegenerateForm, "ambient form is degenerate");

  const Signature amb = signature(l);
  StabilizerReport rep;
  rep.tuple_size = roots.size();
  rep.sublattice = sublattice_report(l, roots);
  rep.span_signature = rep.sublattice.span_signature;
  rep.span_rank = rep.sublattice.span_rank;
  rep.degenerate_span = rep.span_signature.degenerate();
  rep.ambient_p = static_cast<int>(amb.positive) - static_cast<int>(rep.span_signature.positive);
  rep.ambient_q = static_cast<int>(amb.negative) - static_cast<int>(rep.span_signature.negative);
  rep.stable_range = borel_stable_range(rep.ambient_p, rep.ambient_q);
  rep.odd_vanishing_upto = rep.stable_range.bijective_upto;
  rep.finite_quotient_bound = detail::falling_factorial(roots.size(), roots.size());
  return rep;
}

struct RegionRow {
  int tuple_size = 0;
  int n1 = 0, n2 = 0;
  int max_odd_degree = -1; ///< largest odd p with p + 2n ≤ max total degree; −1 if none
  int vanishing_range = 0;
  bool ok = false;
};

struct RegionCheck {
  int max_total_degree = 9;
  std::vector<RegionRow> rows;
  bool all_ok = false;
};

/// E_2-page bookkeeping for the root-tuple filtration over a (3,19) form:
/// every odd p with p + 2n ≤ max_total_degree must lie in the odd-degree
/// vanishing range of SO⁺(3 − n₁, 19 − n₂).
inline RegionCheck e2_region_check(int max_total_degree = 9, int min_tuple = 1,
                                   int max_tuple = 4) {
  if (max_total_degree > 9)
    throw Error(Errc::RegionTooLarge, "region limited to total degree <= 9");
  if (max_total_degree < 0 || min_tuple < 1 || max_tuple < min_tuple)
    throw Error(Errc::InvalidArgument, "bad region parameters");
  RegionCheck c;
  c.max_total_degree = max_total_degree;
  c.all_ok = true;
  for (int n = min_tuple; n <= max_tuple; ++n) {
    for (int n1 = 0; n1 <= std::min(3, n); ++n1) {
      const int n2 = n - n1;
      if (n2 > 19) continue;
      RegionRow row{n, n1, n2, -1, 0, true};
      int top = max_total_degree - 2 * n;
      if (top >= 1) row.max_odd_degree = top % 2 == 1 ? top : top - 1;
      row.vanishing_range = borel_stable_range(3 - n1, 19 - n2).bijective_upto;
      row.ok = row.max_odd_degree <= row.vanishing_range;
      c.all_ok = c.all_ok && row.ok;
      c.rows.push_back(row);
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Nielsen-realization report

struct Candidate {
  int i = 0;
  int degree = 0;
  bool in_stable_range = false;
  bool bott_obstruction = false;
};

struct Reason {
  std::string text;
  std::string anchor;
};

enum class Verdict { SectionObstructed, CandidatesOnly };

inline std::string to_string(Verdict v) {
  return v == Verdict::SectionObstructed
             ? "section obstructed"
             : "candidates only: nontriviality not certified";
}

struct ObstructionReport {
  int k = 1;
  Signature signature;
  int iso_range = 0;
  std::vector<Candidate> candidates;
  Verdict verdict = Verdict::CandidatesOnly;
  std::vector<Reason> reasons;
};

/// Candidates are the l_i with i > k (vanishing on flat bundles) whose
/// degree 4i lies in min(2q, ⌊(p+q)/2⌋ − 2). The verdict needs a
/// nonvanishing certificate: a K3 summand (k = 1, l_2) or a surface-product
/// fibre with a genus past the stability threshold for degree 4(k+1).
inline ObstructionReport obstruction_report(const Lattice &l, int k, bool k3_summand,
                                            const std::optional<std::vector<int>> &surface_factors = {}) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be >= 1");
  if (l.degenerate()) throw Error(Errc::DegenerateForm, "intersection form is degenerate");
  ObstructionReport rep;
  rep.k = k;
  rep.signature = signature(l);
  const int p = static_cast<int>(rep.signature.positive);
  const int q = static_cast<int>(rep.signature.negative);
  rep.iso_range = std::min(2 * q, floor_half_minus_two(p + q));
  for (int i = 1; 4 * i <= rep.iso_range; ++i) {
    if (!bott_obstruction(i, k)) continue;
    rep.candidates.push_back({i, 4 * i, true, true});
  }

  if (k3_summand) {
    if (k != 1)
      throw Error(Errc::InvalidArgument, "a K3 summand forces dimension 4 (k = 1)");
    rep.verdict = Verdict::SectionObstructed;
    rep.reasons.push_back(
        {"l_2 (degree 8) is nonzero for manifolds with a K3 connected summand and "
         "vanishes on flat bundles since 2 > k = 1",
         "l_2 = 2ch_8 pulled back from BSO_3; injective on H^8 via the "
         "stable range of SO+(3,19) (degrees <= 9)"});
  }
  if (surface_factors) {
    if (surface_factors->size() % 2 != 0)
      throw Error(Errc::OddArity, "surface factors must come in an even number");
    if (surface_factors->size() != static_cast<std::size_t>(2 * k))
      throw Error(Errc::ArityMismatch, "need exactly 2k surface factors");
    const int degree = 4 * (k + 1);
    const int threshold = harer_genus_threshold(degree);
    const int best = *std::max_element(surface_factors->begin(), surface_factors->end());
    if (best >= threshold) {
      rep.verdict = Verdict::SectionObstructed;
      rep.reasons.push_back(
          {"l_" + std::to_string(k + 1) + " (degree " + std::to_string(degree) +
               ") is nonzero on the surface-product family: max genus " +
               std::to_string(best) + " >= " + std::to_string(threshold),
           "kappa classes independent up to degree g/2 - 1 (surface mapping class "
           "group stability); l expands into external kappa products"});
    } else {
      rep.reasons.push_back(
          {"max genus " + std::to_string(best) + " below threshold " +
               std::to_string(threshold) + " for degree " + std::to_string(degree),
           "kappa classes independent up to degree g/2 - 1"});
    }
  }
  if (rep.verdict == Verdict::CandidatesOnly)
    rep.reasons.push_back({"no nonvanishing certificate supplied",
                           "flat-bundle vanishing gives an obstruction only if the class is nonzero"});
  return rep;
}

} // namespace nielsen
