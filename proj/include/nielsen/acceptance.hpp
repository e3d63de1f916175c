#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nielsen/io.hpp"

namespace nielsen::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Inputs the suite may be run against; the default is the shipped data.
struct AcceptanceConfig {
  IntMatrix e8_gram = lattices::e8_gram();
  unsigned seed = 1729;
};

namespace detail {

inline std::string yesno(bool b) { return b ? "yes" : "no"; }

inline Vector negated(Vector v) {
  for (auto &x : v) x = -x;
  return v;
}

inline Isometry word(const Lattice &l, const std::vector<Vector> &pool, std::mt19937 &rng,
                     std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len), pick(0, pool.size() - 1);
  Isometry g = Isometry::identity(l);
  for (std::size_t t = len(rng); t > 0; --t) g = compose(g, reflection(l, pool[pick(rng)]));
  return g;
}

inline std::vector<Vector> k3_root_pool() {
  std::vector<Vector> pool;
  const auto e8roots = enumerate_vectors(negate(lattices::e8()), -2);
  for (std::size_t idx = 0; idx < e8roots.size(); idx += 11)
    for (int block = 0; block < 2; ++block) {
      Vector v(22, 0);
      for (std::size_t i = 0; i < 8; ++i) v[6 + 8 * block + i] = e8roots[idx][i];
      pool.push_back(v);
      v[2 * block] = 1; // plus an isotropic vector of an H summand
      pool.push_back(v);
    }
  for (int b = 0; b < 3; ++b) {
    Vector v(22, 0);
    v[2 * b] = 1;
    v[2 * b + 1] = -1;
    pool.push_back(v);
  }
  return pool;
}

// Homology ranks of ∂Δ³ from its boundary matrices.
inline std::vector<int> two_sphere_betti() {
  std::vector<std::vector<int>> cells[3];
  for (int a = 0; a < 4; ++a) {
    cells[0].push_back({a});
    for (int b = a + 1; b < 4; ++b) {
      cells[1].push_back({a, b});
      for (int c = b + 1; c < 4; ++c) cells[2].push_back({a, b, c});
    }
  }
  std::size_t r[4] = {0, 0, 0, 0}; // r[d] = rank ∂_d
  for (int d = 1; d <= 2; ++d) {
    RatMatrix m(cells[d - 1].size(), cells[d].size());
    for (std::size_t c = 0; c < cells[d].size(); ++c)
      for (std::size_t drop = 0; drop < cells[d][c].size(); ++drop) {
        auto f = cells[d][c];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
        const auto it = std::find(cells[d - 1].begin(), cells[d - 1].end(), f);
        m(static_cast<std::size_t>(it - cells[d - 1].begin()), c) = drop % 2 ? -1 : 1;
      }
    r[d] = rank(m);
  }
  std::vector<int> b;
  for (int d = 0; d <= 2; ++d)
    b.push_back(static_cast<int>(cells[d].size() - r[d] - r[d + 1]));
  return b;
}

inline Arrangement coordinate_arrangement(std::size_t n, std::vector<std::vector<std::size_t>> coords) {
  std::vector<Subspace> subs;
  for (const auto &c : coords) {
    Subspace s;
    for (std::size_t i : c) {
      RatVector v(n, Rational(0));
      v[i] = 1;
      s.normals.push_back(v);
    }
    subs.push_back(s);
  }
  return Arrangement(n, subs);
}

/// Wraps a check so that thrown errors become a failing line.
inline CriterionResult guarded(int id, std::string name,
                               const std::function<bool(std::ostringstream &)> &body) {
  CriterionResult r{id, std::move(name), false, ""};
  std::ostringstream detail;
  try {
    r.pass = body(detail);
  } catch (const std::exception &e) {
    detail << "error: " << e.what();
    r.pass = false;
  }
  r.detail = detail.str();
  return r;
}

} // namespace detail

inline CriterionResult k3_lattice() {
  return detail::guarded(1, "K3 lattice invariants", [](auto &out) {
    const Lattice k3 = lattices::k3();
    const Signature s = signature(k3);
    out << "rank " << k3.rank() << ", even " << detail::yesno(k3.even()) << ", unimodular "
        << detail::yesno(k3.unimodular()) << ", signature " << to_string(s);
    return k3.rank() == 22 && k3.even() && k3.unimodular() && s == Signature{3, 19, 0};
  });
}

inline CriterionResult e8_roots(const AcceptanceConfig &cfg) {
  return detail::guarded(2, "E8 has 240 roots", [&](auto &out) {
    const Lattice e8(cfg.e8_gram);
    const auto roots = enumerate_vectors(e8, 2);
    std::set<Vector> set(roots.begin(), roots.end());
    bool closed = true;
    for (const auto &v : roots) closed = closed && set.count(detail::negated(v));
    out << roots.size() << " vectors of norm 2, closed under negation "
        << detail::yesno(closed) << ", distinct " << detail::yesno(set.size() == roots.size());
    return roots.size() == 240 && closed && set.size() == roots.size();
  });
}

inline CriterionResult hyperbolic_reflections() {
  return detail::guarded(3, "reflections in H", [](auto &out) {
    const Lattice h = lattices::hyperbolic_plane();
    const Isometry rp = reflection(h, {1, 1});
    const Isometry rm = reflection(h, {1, -1});
    const auto cp = classify(rp), cm = classify(rm);
    const Isometry id = Isometry::identity(h);
    const bool involutions = compose(rp, rp) == id && compose(rm, rm) == id;
    const auto ext = classify(extend_by_identity(rm, lattices::k3()));
    out << "R+ (" << cp.determinant << "," << cp.spinor_norm << "), R- (" << cm.determinant
        << "," << cm.spinor_norm << "), involutions " << detail::yesno(involutions)
        << ", R- + id in " << to_string(ext.tag);
    return cp.determinant == -1 && cp.spinor_norm == 1 && cm.determinant == -1 &&
           cm.spinor_norm == -1 && involutions && ext.tag == SubgroupTag::AutPrimeOnly;
  });
}

inline CriterionResult spinor_multiplicativity(const AcceptanceConfig &cfg) {
  return detail::guarded(4, "spinor norm is multiplicative on K3 words", [&](auto &out) {
    const Lattice k3 = lattices::k3();
    const auto pool = detail::k3_root_pool();
    std::mt19937 rng(cfg.seed);
    int ok = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
      const Isometry g = detail::word(k3, pool, rng, 6);
      const Isometry h = detail::word(k3, pool, rng, 6);
      const Isometry gh = compose(g, h);
      const int sg = spinor_norm(g), sh = spinor_norm(h), sgh = spinor_norm(gh);
      if (sgh == sg * sh && gh.determinant() == g.determinant() * h.determinant()) ++ok;
    }
    out << ok << "/" << trials << " pairs satisfy spin(gh) = spin(g)spin(h), det(gh) = det(g)det(h)";
    return ok == trials;
  });
}

inline CriterionResult series_identity() {
  return detail::guarded(5, "L-tilde series", [](auto &out) {
    const auto l = l_tilde_series(20);
    const bool times_tanh = l * tanh_half_series(20) == FormalPowerSeries::x(20);
    out << "x^0,x^2,x^4 = " << to_string(l[0]) << ", " << to_string(l[2]) << ", "
        << to_string(l[4]) << "; product with tanh(x/2) is x to order 20: "
        << detail::yesno(times_tanh);
    return times_tanh && l[0] == 2 && l[2] == Rational(1, 6) && l[4] == Rational(-1, 360);
  });
}

inline CriterionResult bo3_relation() {
  return detail::guarded(6, "BO3 relation", [](auto &out) {
    const auto r = verify_bo3_relation();
    const Rational c = ell_relation_constant();
    out << "ch4^2 = " << to_string(r.lhs) << ", 12*ch8 = " << to_string(r.rhs)
        << "; l_1^2 = " << to_string(c) << "*l_2 (not 12: l_i = 2ch_4i doubles the "
        << "constant of ch4^2 = 12ch8)";
    return r.equal && c == 24;
  });
}

inline CriterionResult fiber_integration() {
  return detail::guarded(7, "fibre integration of L-tilde", [](auto &out) {
    const auto a = fiber_integrate_surface(l_tilde_rank2(1));
    const auto b = fiber_integrate_surface(l_tilde_rank2(2));
    out << "pi_* L1 = " << to_string(a) << ", pi_* L2 = " << to_string(b);
    return a == Rational(1, 6) * gens::kappa_class(1) &&
           b == Rational(-1, 360) * gens::kappa_class(3);
  });
}

inline CriterionResult thresholds() {
  return detail::guarded(8, "stable range and thresholds", [](auto &out) {
    const int range = borel_stable_range(3, 19).bijective_upto;
    const int harer = harer_genus_threshold(8);
    const bool b21 = bott_obstruction(2, 1), b11 = bott_obstruction(1, 1);
    out << "range(3,19) = " << range << ", genus threshold(8) = " << harer
        << ", bott(2,1) = " << detail::yesno(b21) << ", bott(1,1) = " << detail::yesno(b11);
    return range == 9 && harer == 18 && b21 && !b11;
  });
}

inline CriterionResult connected_sum(const AcceptanceConfig &cfg) {
  return detail::guarded(9, "connected-sum calculus", [&](auto &out) {
    std::mt19937 rng(cfg.seed + 9);
    std::uniform_int_distribution<unsigned> ex(0, 2);
    std::uniform_int_distribution<std::size_t> slots(1, 4);
    auto monomial = [&] { return ell_monomial({ex(rng), ex(rng), ex(rng)}); };
    int ok = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
      const auto x = monomial(), y = monomial();
      const std::size_t n = slots(rng);
      if (connected_sum_pullback(x * y, n) ==
          connected_sum_pullback(x, n) * connected_sum_pullback(y, n))
        ++ok;
    }
    const auto cert = independence_certificate(2, 3);
    std::vector<std::string> l2, l1sq;
    for (const auto &e : cert.entries) {
      if (e.monomial == Monomial{{gens::ell(2), 1}}) l2 = e.slot_multiset;
      if (e.monomial == Monomial{{gens::ell(1), 2}}) l1sq = e.slot_multiset;
    }
    const bool distinct = !l2.empty() && !l1sq.empty() && l2 != l1sq;
    out << ok << "/" << trials << " products preserved; certificate(2,3) independent "
        << detail::yesno(cert.independent) << " over " << cert.entries.size()
        << " monomials; l_2 vs l_1^2 multisets differ " << detail::yesno(distinct);
    return ok == trials && cert.independent && distinct;
  });
}

inline CriterionResult stabilizers() {
  return detail::guarded(10, "root stabilizers and E2 region", [](auto &out) {
    Vector root(22, 0);
    root[6] = 1;
    const auto r = stabilizer_report(lattices::k3(), {root});
    const auto region = e2_region_check(9, 1, 4);
    out << "single root: SO+(" << r.ambient_p << "," << r.ambient_q << ") range "
        << r.odd_vanishing_upto << "; region rows " << region.rows.size() << ", all ok "
        << detail::yesno(region.all_ok);
    return r.ambient_p == 3 && r.ambient_q == 18 && r.odd_vanishing_upto == 8 && region.all_ok;
  });
}

inline CriterionResult arrangement_betti() {
  return detail::guarded(11, "arrangement Betti numbers", [](auto &out) {
    bool ok = true;
    // m = 1 against the simplicial two-sphere
    const auto one = betti_complement(detail::coordinate_arrangement(7, {{0, 1, 2}}), 2);
    const auto sphere = detail::two_sphere_betti();
    for (int d = 0; d <= 2; ++d) ok = ok && one.betti.at(d) == sphere[static_cast<std::size_t>(d)];
    out << "m=1: " << one.betti.at(0) << "," << one.betti.at(1) << "," << one.betti.at(2);

    // three orthogonal K3 roots in the 57-dimensional chart
    Vector a(22, 0), b(22, 0), c(22, 0);
    a[6] = 1;
    b[14] = 1;
    c[0] = 1;
    c[1] = -1;
    const auto three = betti_complement(k3_arrangement_from_roots(lattices::k3(), {a, b, c}), 6);
    out << "; m=3,N=57:";
    for (int d = 0; d <= 6; d += 2) out << " " << three.betti.at(d);
    ok = ok && three.betti.at(0) == 1 && three.betti.at(2) == 3 && three.betti.at(4) == 3 &&
         three.betti.at(6) == 1;

    // Σ betti[2n] t^n = (1 + t)^m
    bool binomial_ok = true;
    for (std::size_t m = 1; m <= 6; ++m) {
      std::vector<std::vector<std::size_t>> coords;
      for (std::size_t s = 0; s < m; ++s) coords.push_back({3 * s, 3 * s + 1, 3 * s + 2});
      const auto t = betti_complement(detail::coordinate_arrangement(57, coords), 2 * static_cast<int>(m));
      for (std::size_t n = 0; n <= m; ++n)
        binomial_ok = binomial_ok && t.betti.at(static_cast<int>(2 * n)) == binomial(m, n);
    }
    out << "; (1+t)^m for m<=6 " << detail::yesno(binomial_ok);
    ok = ok && binomial_ok;

    // a non-transversal pair sharing a normal
    const auto bad = detail::coordinate_arrangement(7, {{0, 1, 2}, {0, 3, 4}});
    const auto tr = transversality_check(bad, 2);
    bool rejected = false;
    try {
      betti_complement(bad, 4);
    } catch (const Error &e) {
      rejected = e.code() == Errc::TransversalityFailure;
    }
    const bool witness_ok = !tr.transversal && tr.witness == std::vector<std::size_t>{0, 1} &&
                            tr.witness_rank == 5;
    out << "; shared-normal pair rejected " << detail::yesno(rejected && witness_ok);
    return ok && rejected && witness_ok;
  });
}

inline std::vector<CriterionResult> computational_criteria(const AcceptanceConfig &cfg) {
  return {k3_lattice(),       e8_roots(cfg),       hyperbolic_reflections(),
          spinor_multiplicativity(cfg), series_identity(), bo3_relation(),
          fiber_integration(), thresholds(),        connected_sum(cfg),
          stabilizers(),      arrangement_betti()};
}

inline io::json to_json(const std::vector<CriterionResult> &results) {
  io::json arr = io::json::array();
  bool all = true;
  for (const auto &r : results) {
    arr.push_back(io::json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all = all && r.pass;
  }
  return io::json{{"criteria", arr}, {"all_pass", all}};
}

/// Criterion 12 recomputes 1-11 and compares the serialized results byte for byte.
inline CriterionResult determinism(const AcceptanceConfig &cfg,
                                   const std::vector<CriterionResult> &first) {
  return detail::guarded(12, "deterministic output", [&](auto &out) {
    const std::string a = to_json(first).dump();
    const std::string b = to_json(computational_criteria(cfg)).dump();
    out << "two runs, " << a.size() << " bytes each, identical " << detail::yesno(a == b);
    return a == b;
  });
}

inline std::vector<CriterionResult> run_all(const AcceptanceConfig &cfg = {}) {
  auto results = computational_criteria(cfg);
  results.push_back(determinism(cfg, results));
  return results;
}

inline bool all_pass(const std::vector<CriterionResult> &results) {
  return std::all_of(results.begin(), results.end(), [](const auto &r) { return r.pass; });
}

inline std::string to_text(const std::vector<CriterionResult> &results) {
  std::string out;
  for (const auto &r : results)
    out += std::string(r.pass ? "PASS" : "FAIL") + "  " + (r.id < 10 ? " " : "") +
           std::to_string(r.id) + "  " + r.name + ": " + r.detail + "\n";
  out += all_pass(results) ? "all criteria pass\n" : "some criteria FAILED\n";
  return out;
}

/// E8 Gram with one diagonal entry altered; still positive definite.
inline IntMatrix corrupted_e8_gram() {
  IntMatrix g = lattices::e8_gram();
  g(0, 0) = 4;
  return g;
}

} // namespace nielsen::acceptance
