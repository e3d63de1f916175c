#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "nielsen/obstruction.hpp"

using namespace nielsen;

namespace {

Errc code_of(auto &&f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

GradedPolynomial l(unsigned i) { return gens::ell_class(i); }

Monomial mono(std::initializer_list<std::pair<unsigned, unsigned>> parts) {
  Monomial m;
  for (auto [i, e] : parts) m[gens::ell(i)] = e;
  return m;
}

SimpleTensor slots(std::initializer_list<Monomial> ms) { return SimpleTensor(ms); }

Vector k3_vec(std::initializer_list<std::pair<std::size_t, int>> entries) {
  Vector v(22, 0);
  for (auto [i, x] : entries) v[i] = x;
  return v;
}

} // namespace

TEST(StableRange, Formula) {
  EXPECT_EQ(borel_stable_range(3, 19).bijective_upto, 9);
  EXPECT_EQ(borel_stable_range(3, 19).iso_upto_with_2q, 9);
  EXPECT_EQ(borel_stable_range(3, 18).bijective_upto, 8);
  EXPECT_EQ(borel_stable_range(2, 2).bijective_upto, 0);
  EXPECT_EQ(borel_stable_range(20, 1).iso_upto_with_2q, 2);
  EXPECT_EQ(code_of([] { borel_stable_range(1, 0); }), Errc::RankTooSmall);
}

TEST(Thresholds, BottAndHarer) {
  EXPECT_TRUE(bott_obstruction(2, 1));
  EXPECT_FALSE(bott_obstruction(1, 1));
  EXPECT_TRUE(bott_obstruction(3, 2));
  for (int k = 1; k < 6; ++k)
    for (int i = 1; i < 10; ++i) EXPECT_EQ(bott_obstruction(i, k), 4 * (i + k) > 8 * k);
  EXPECT_EQ(harer_genus_threshold(8), 18);
  EXPECT_EQ(harer_genus_threshold(4), 10);
  EXPECT_EQ(harer_genus_threshold(1), 4);
  for (int d = 1; d < 30; ++d) {
    const int g = harer_genus_threshold(d);
    EXPECT_GE(g / 2 - 1, d);
    EXPECT_LT((g - 1) / 2.0 - 1, d);
  }
}

TEST(ConnectedSum, Examples) {
  const TensorClass a = connected_sum_pullback(l(1), 2);
  TensorClass expect_a(2);
  expect_a.add_term(slots({mono({{1, 1}}), {}}), 1);
  expect_a.add_term(slots({{}, mono({{1, 1}})}), 1);
  EXPECT_EQ(a, expect_a);

  const TensorClass b = connected_sum_pullback(l(1).pow(2), 2);
  TensorClass expect_b(2);
  expect_b.add_term(slots({mono({{1, 2}}), {}}), 1);
  expect_b.add_term(slots({mono({{1, 1}}), mono({{1, 1}})}), 2);
  expect_b.add_term(slots({{}, mono({{1, 2}})}), 1);
  EXPECT_EQ(b, expect_b);

  const GradedPolynomial p = Rational(3, 2) * l(2) * l(1) + l(3);
  const TensorClass one = connected_sum_pullback(p, 1);
  for (const auto &[s, c] : one.terms()) EXPECT_EQ(c, p.coefficient(s[0]));
  EXPECT_EQ(one.terms().size(), p.terms().size());
}

TEST(ConnectedSum, RingHomomorphismOnRandomMonomials) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<unsigned> idx(1, 3), ex(0, 2);
  std::uniform_int_distribution<std::size_t> nslots(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    auto rnd = [&] {
      GradedPolynomial m = GradedPolynomial::constant(1);
      for (int t = 0; t < 2; ++t) {
        const unsigned i = idx(rng);
        m = m * l(i).pow(ex(rng));
      }
      return m;
    };
    const GradedPolynomial x = rnd(), y = rnd();
    const std::size_t n = nslots(rng);
    EXPECT_EQ(connected_sum_pullback(x * y, n),
              connected_sum_pullback(x, n) * connected_sum_pullback(y, n));
    EXPECT_EQ(connected_sum_pullback(x + y, n),
              connected_sum_pullback(x, n) + connected_sum_pullback(y, n));
  }
}

TEST(ConnectedSum, MaximalLengthCommutesWithSlotPermutation) {
  std::mt19937 rng(8);
  const GradedPolynomial p = l(1).pow(2) * l(2) + Rational(5) * l(3) * l(1);
  const TensorClass t = connected_sum_pullback(p, 4);
  std::vector<std::size_t> perm(4);
  std::iota(perm.begin(), perm.end(), 0);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(t.permuted(perm).maximal_length_part(), t.maximal_length_part().permuted(perm));
    // the pullback is symmetric under slot permutation
    EXPECT_EQ(t.permuted(perm), t);
  }
}

TEST(Independence, SmallCases) {
  const auto c12 = independence_certificate(1, 2);
  EXPECT_TRUE(c12.independent);
  ASSERT_EQ(c12.entries.size(), 3u);
  EXPECT_EQ(c12.entries[0].slot_multiset, std::vector<std::string>{});
  EXPECT_EQ(c12.entries[1].slot_multiset, std::vector<std::string>{"l_1"});
  EXPECT_EQ(c12.entries[2].slot_multiset, (std::vector<std::string>{"l_1", "l_1"}));

  const auto c22 = independence_certificate(2, 2);
  EXPECT_TRUE(c22.independent);
  const CertificateEntry *l2 = nullptr, *l1sq = nullptr;
  for (const auto &e : c22.entries) {
    if (e.monomial == mono({{2, 1}})) l2 = &e;
    if (e.monomial == mono({{1, 2}})) l1sq = &e;
  }
  ASSERT_TRUE(l2 && l1sq);
  EXPECT_EQ(l2->max_length, 1u);
  EXPECT_EQ(l2->maximal_terms, 2u); // l_2⊗1, 1⊗l_2
  EXPECT_EQ(l1sq->max_length, 2u);
  EXPECT_EQ(l1sq->maximal_terms, 1u); // 2·l_1⊗l_1
  EXPECT_NE(l2->slot_multiset, l1sq->slot_multiset);
}

TEST(Independence, DuplicatesCollapse) {
  const auto once = independence_certificate({mono({{1, 1}})}, 1);
  const auto twice = independence_certificate({mono({{1, 1}}), mono({{1, 1}})}, 1);
  EXPECT_EQ(once.entries.size(), twice.entries.size());
  EXPECT_EQ(once.entries[0].slot_multiset, twice.entries[0].slot_multiset);
  EXPECT_TRUE(twice.independent);
}

TEST(Independence, AllDeskScaleCases) {
  for (std::size_t n = 1; n <= kDeskScale; ++n)
    for (std::size_t big_n = 1; big_n <= kDeskScale; ++big_n) {
      const auto c = independence_certificate(n, big_n);
      EXPECT_TRUE(c.independent) << n << "," << big_n;
      for (const auto &e : c.entries) EXPECT_TRUE(e.all_permutations);
    }
  EXPECT_EQ(code_of([] { independence_certificate(6, 2); }), Errc::ScaleExceeded);
}

TEST(Stabilizer, SingleRoot) {
  const auto r = stabilizer_report(lattices::k3(), {k3_vec({{6, 1}})});
  EXPECT_EQ(r.span_signature, (Signature{0, 1, 0}));
  EXPECT_EQ(r.ambient_p, 3);
  EXPECT_EQ(r.ambient_q, 18);
  EXPECT_EQ(r.odd_vanishing_upto, 8);
  EXPECT_EQ(r.finite_quotient_bound, 1);
  ASSERT_TRUE(r.sublattice.index_in_ambient);
  EXPECT_EQ(*r.sublattice.index_in_ambient, 2);
}

TEST(Stabilizer, TwoOrthogonalRoots) {
  // simple roots 1 and 2 of E8 are orthogonal (Bourbaki labelling)
  const auto r = stabilizer_report(lattices::k3(), {k3_vec({{6, 1}}), k3_vec({{7, 1}})});
  EXPECT_EQ(r.span_signature, (Signature{0, 2, 0}));
  EXPECT_EQ(r.ambient_p, 3);
  EXPECT_EQ(r.ambient_q, 17);
  EXPECT_EQ(r.odd_vanishing_upto, (22 - 2) / 2 - 2);
  EXPECT_EQ(r.finite_quotient_bound, 2);
}

TEST(Stabilizer, Errors) {
  EXPECT_EQ(code_of([] { stabilizer_report(lattices::k3(), {k3_vec({{6, 1}, {7, 1}})}); }),
            Errc::NotARoot); // norm −4
  EXPECT_EQ(code_of([] {
              stabilizer_report(lattices::k3(), {k3_vec({{6, 1}}), k3_vec({{6, 1}})});
            }),
            Errc::InvalidArgument);
}

TEST(Stabilizer, DegenerateSpanFlagged) {
  // α and e − α with e isotropic, e ⊥ α: Gram [[−2,2],[2,−2]]
  const auto r = stabilizer_report(lattices::k3(), {k3_vec({{6, 1}}), k3_vec({{0, 1}, {6, -1}})});
  EXPECT_TRUE(r.degenerate_span);
  EXPECT_FALSE(r.sublattice.index_in_ambient.has_value());
}

TEST(Stabilizer, SignatureBoundsOnRandomTuples) {
  const Lattice k3 = lattices::k3();
  const auto e8 = enumerate_vectors(negate(lattices::e8()), -2);
  std::vector<Vector> pool;
  for (std::size_t t = 0; t < e8.size(); t += 23) {
    Vector v(22, 0);
    for (std::size_t i = 0; i < 8; ++i) v[6 + i] = e8[t][i];
    pool.push_back(v);
    Vector w = v;
    w[0] = 1; // + isotropic e of the first H, orthogonal to the −E8 block
    pool.push_back(w);
  }
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Vector> tuple;
    for (int t = 0; t < 3; ++t) {
      const Vector &c = pool[pick(rng)];
      if (std::find(tuple.begin(), tuple.end(), c) == tuple.end()) tuple.push_back(c);
    }
    const auto r = stabilizer_report(k3, tuple);
    EXPECT_LE(r.span_signature.positive, 3u);
    EXPECT_LE(r.span_signature.negative, 19u);
    if (!r.degenerate_span && r.span_rank == tuple.size()) {
      EXPECT_EQ(r.odd_vanishing_upto, (22 - static_cast<int>(tuple.size())) / 2 - 2);
    }
  }
}

TEST(E2Region, DefaultRegion) {
  const auto c = e2_region_check(9, 1, 4);
  EXPECT_TRUE(c.all_ok);
  for (const auto &row : c.rows) {
    EXPECT_LE(row.n1, 3);
    EXPECT_EQ(row.vanishing_range, (22 - row.tuple_size) / 2 - 2);
    if (row.tuple_size == 1) {
      EXPECT_EQ(row.max_odd_degree, 7);
      EXPECT_EQ(row.vanishing_range, 8);
    }
    if (row.tuple_size == 4) {
      EXPECT_EQ(row.max_odd_degree, 1);
      EXPECT_EQ(row.vanishing_range, 7);
    }
  }
  // partitions: n=1 → 2, n=2 → 3, n=3 → 4, n=4 → 4
  EXPECT_EQ(c.rows.size(), 13u);
  EXPECT_EQ(code_of([] { e2_region_check(11); }), Errc::RegionTooLarge);
}

TEST(Report, K3Summand) {
  const auto r = obstruction_report(lattices::k3(), 1, true);
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0].i, 2);
  EXPECT_EQ(r.candidates[0].degree, 8);
  EXPECT_EQ(r.iso_range, 9);
  EXPECT_EQ(r.verdict, Verdict::SectionObstructed);
}

TEST(Report, SurfaceProducts) {
  const auto yes = obstruction_report(lattices::surface_product(18, 2), 1, false,
                                      std::vector<int>{18, 2});
  EXPECT_EQ(yes.verdict, Verdict::SectionObstructed);
  const auto no = obstruction_report(lattices::surface_product(17, 2), 1, false,
                                     std::vector<int>{17, 2});
  EXPECT_EQ(no.verdict, Verdict::CandidatesOnly);
  EXPECT_FALSE(no.candidates.empty());
  EXPECT_EQ(code_of([] {
              obstruction_report(lattices::surface_product(18, 2), 1, false,
                                 std::vector<int>{18, 2, 3, 4});
            }),
            Errc::ArityMismatch);
}

TEST(Report, SmallOddForm) {
  const auto r = obstruction_report(direct_sum(lattices::unit(1), lattices::unit(-1)), 1, false);
  EXPECT_TRUE(r.candidates.empty());
  EXPECT_EQ(r.verdict, Verdict::CandidatesOnly);
  EXPECT_EQ(code_of([] { obstruction_report(Lattice(IntMatrix{{-2, -2}, {-2, -2}}), 1, false); }),
            Errc::DegenerateForm);
}

TEST(Report, DegreeEightCandidateWheneverInRange) {
  for (int p = 0; p <= 12; ++p)
    for (int q = 0; q <= 12; ++q) {
      if (p + q == 0) continue;
      std::vector<Lattice> parts;
      for (int t = 0; t < p; ++t) parts.push_back(lattices::unit(1));
      for (int t = 0; t < q; ++t) parts.push_back(lattices::unit(-1));
      const auto r = obstruction_report(direct_sum(parts), 1, false);
      const bool listed = std::any_of(r.candidates.begin(), r.candidates.end(),
                                      [](const Candidate &c) { return c.i == 2; });
      EXPECT_EQ(listed, std::min(2 * q, (p + q) / 2 - 2) >= 8) << p << "," << q;
      for (const auto &c : r.candidates) EXPECT_TRUE(c.bott_obstruction && c.i > 1);
    }
}
