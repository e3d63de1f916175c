#include <gtest/gtest.h>

#include <random>
#include <set>

#include "nielsen/arrangement.hpp"

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

RatVector unit_vec(std::size_t n, std::size_t i) {
  RatVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

Subspace coords(std::size_t n, std::size_t a, std::size_t b, std::size_t c) {
  return Subspace{{unit_vec(n, a), unit_vec(n, b), unit_vec(n, c)}};
}

Arrangement coordinate_arrangement(std::size_t n, std::size_t m) {
  std::vector<Subspace> s;
  for (std::size_t i = 0; i < m; ++i) s.push_back(coords(n, 3 * i, 3 * i + 1, 3 * i + 2));
  return Arrangement(n, s);
}

Arrangement random_arrangement(std::size_t n, std::size_t m, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<Subspace> s(m);
  for (auto &sub : s)
    for (int t = 0; t < 3; ++t) {
      RatVector v(n);
      for (auto &x : v) x = Rational(d(rng), 1 + (d(rng) + 9) % 4);
      sub.normals.push_back(v);
    }
  return Arrangement(n, s);
}

// Reduced rational Betti numbers of a simplicial complex given by its
// simplices (all faces included), via boundary-matrix ranks.
std::map<int, int> reduced_betti(const std::vector<std::vector<int>> &simplices) {
  std::map<int, std::vector<std::vector<int>>> by_dim;
  by_dim[-1].push_back({});
  for (const auto &s : simplices) by_dim[static_cast<int>(s.size()) - 1].push_back(s);
  std::map<int, std::size_t> boundary_rank;
  for (const auto &[d, cells] : by_dim) {
    if (d < 0) continue;
    const auto &faces = by_dim[d - 1];
    RatMatrix m(faces.size(), cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (std::size_t drop = 0; drop < cells[c].size(); ++drop) {
        std::vector<int> f = cells[c];
        f.erase(f.begin() + static_cast<std::ptrdiff_t>(drop));
        const auto it = std::find(faces.begin(), faces.end(), f);
        m(static_cast<std::size_t>(it - faces.begin()), c) = drop % 2 ? -1 : 1;
      }
    boundary_rank[d] = rank(m);
  }
  std::map<int, int> out;
  for (const auto &[d, cells] : by_dim)
    out[d] = static_cast<int>(cells.size() - boundary_rank[d] - boundary_rank[d + 1]);
  return out;
}

// Goresky–MacPherson: rank H^i(M) = Σ_x rank H̃_{codim x − 2 − i}(Δ(0̂, x)) over
// intersections x ≠ ambient (and 1 in degree 0). Each intersection is stored
// as the set of subspaces containing it.
std::map<int, int> goresky_macpherson(const Arrangement &a, int max_degree) {
  const std::size_t m = a.size();
  std::set<std::vector<std::size_t>> closures;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s.push_back(i);
    const std::size_t r = a.normal_rank(s);
    std::vector<std::size_t> closure;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::size_t> t = s;
      t.push_back(i);
      if (a.normal_rank(t) == r) closure.push_back(i);
    }
    closures.insert(closure);
  }
  const std::vector<std::vector<std::size_t>> elems(closures.begin(), closures.end());
  auto below = [](const std::vector<std::size_t> &x, const std::vector<std::size_t> &y) {
    return x.size() < y.size() && std::includes(y.begin(), y.end(), x.begin(), x.end());
  };
  std::map<int, int> betti;
  betti[0] = 1;
  for (const auto &x : elems) {
    const int codim = static_cast<int>(a.normal_rank(x));
    std::vector<int> interval;
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (below(elems[i], x)) interval.push_back(static_cast<int>(i));
    // order complex: all chains in the open interval
    std::vector<std::vector<int>> chains;
    auto extend = [&](auto &&self, std::vector<int> chain) -> void {
      for (int e : interval)
        if (chain.empty() || below(elems[chain.back()], elems[e])) {
          chain.push_back(e);
          chains.push_back(chain);
          self(self, chain);
          chain.pop_back();
        }
    };
    extend(extend, {});
    for (const auto &[d, b] : reduced_betti(chains)) {
      const int deg = codim - 2 - d;
      if (b && deg <= max_degree) betti[deg] += b;
    }
  }
  return betti;
}

} // namespace

TEST(Arrangement, Validation) {
  EXPECT_EQ(code_of([] { Arrangement(7, {Subspace{{unit_vec(7, 0), unit_vec(7, 1)}}}); }),
            Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { Arrangement(7, {Subspace{{unit_vec(7, 0), unit_vec(7, 1), unit_vec(7, 0)}}}); }),
            Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { Arrangement(7, {coords(7, 0, 1, 2), coords(7, 2, 1, 0)}); }),
            Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { Arrangement(7, {Subspace{{unit_vec(6, 0), unit_vec(7, 1), unit_vec(7, 2)}}}); }),
            Errc::DimensionMismatch);
}

TEST(Transversality, DisjointCoordinates) {
  const auto a = coordinate_arrangement(7, 2);
  EXPECT_TRUE(transversality_check(a, 2).transversal);
}

TEST(Transversality, SharedCoordinateWitness) {
  const Arrangement a(7, {coords(7, 0, 1, 2), coords(7, 0, 3, 4)});
  const auto r = transversality_check(a, 2);
  EXPECT_FALSE(r.transversal);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.witness_rank, 5u);
  EXPECT_TRUE(transversality_check(a, 1).transversal);
}

TEST(Transversality, GenericRationalNormals) {
  for (unsigned seed = 0; seed < 5; ++seed)
    EXPECT_TRUE(transversality_check(random_arrangement(15, 5, seed), 5).transversal);
}

TEST(Transversality, MonotoneInSubsetSize) {
  for (unsigned seed = 0; seed < 5; ++seed) {
    auto a = random_arrangement(9, 4, seed);
    // break genericity: force subspace 3 to share a normal with subspace 0
    std::vector<Subspace> subs = a.subspaces();
    subs[3].normals[0] = subs[0].normals[0];
    const Arrangement b(9, subs);
    bool failed = false;
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto r = transversality_check(b, k);
      if (failed) {
        EXPECT_FALSE(r.transversal);
      }
      failed = failed || !r.transversal;
      if (!r.transversal) {
        EXPECT_LE(r.witness.size(), k);
      }
    }
    EXPECT_TRUE(failed);
  }
}

TEST(Betti, SingleSubspaceIsTwoSphere) {
  // complement of a codim-3 subspace retracts onto S² = ∂(tetrahedron)
  std::vector<std::vector<int>> tetra;
  for (int a = 0; a < 4; ++a) {
    tetra.push_back({a});
    for (int b = a + 1; b < 4; ++b) {
      tetra.push_back({a, b});
      for (int c = b + 1; c < 4; ++c) tetra.push_back({a, b, c});
    }
  }
  auto sphere = reduced_betti(tetra);
  sphere[0] += 1; // unreduced
  const auto t = betti_complement(coordinate_arrangement(7, 1), 2);
  for (int d = 0; d <= 2; ++d) EXPECT_EQ(t.betti.at(d), sphere[d]) << d;
}

TEST(Betti, ThreeSubspacesInK3Chart) {
  const auto t = betti_complement(random_arrangement(57, 3, 1), 6);
  const std::vector<int> expect{1, 0, 3, 0, 3, 0, 1};
  for (int d = 0; d <= 6; ++d) EXPECT_EQ(t.betti.at(d), expect[static_cast<std::size_t>(d)]);
}

TEST(Betti, AgreesWithGoreskyMacPherson) {
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n : {5u, 7u, 9u, 11u, 13u}) {
      const auto a = random_arrangement(n, m, static_cast<unsigned>(10 * m + n));
      const auto t = betti_complement(a, 4 * static_cast<int>(n));
      const auto gm = goresky_macpherson(a, t.valid_upto);
      for (int d = 0; d <= t.valid_upto; ++d) {
        const auto it = gm.find(d);
        EXPECT_EQ(t.betti.at(d), it == gm.end() ? 0 : it->second) << m << "," << n << "," << d;
      }
    }
}

TEST(Betti, WedgeOfSpheres) {
  // two transversal codim-3 subspaces in R^7: S² ∨ S² ∨ S⁴
  const auto t = betti_complement(coordinate_arrangement(7, 2), 4);
  EXPECT_EQ(t.valid_upto, 4);
  const std::vector<int> expect{1, 0, 2, 0, 1};
  for (int d = 0; d <= 4; ++d) EXPECT_EQ(t.betti.at(d), expect[static_cast<std::size_t>(d)]);
}

TEST(Betti, PoincarePolynomialIsBinomial) {
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto t = betti_complement(random_arrangement(57, m, static_cast<unsigned>(m)), 2 * static_cast<int>(m));
    // coefficients of (1 + t²)^m
    std::vector<Integer> row{1};
    for (std::size_t s = 0; s < m; ++s) {
      std::vector<Integer> next(row.size() + 1, 0);
      for (std::size_t j = 0; j < row.size(); ++j) {
        next[j] += row[j];
        next[j + 1] += row[j];
      }
      row = next;
    }
    for (std::size_t k = 0; k <= m; ++k) {
      EXPECT_EQ(t.betti.at(static_cast<int>(2 * k)), row[k]);
      if (k < m) {
        EXPECT_EQ(t.betti.at(static_cast<int>(2 * k + 1)), 0);
      }
    }
  }
}

TEST(Betti, WindowStopsBelowOriginClasses) {
  // three generic subspaces in R^7 meet only at 0, which adds a class in degree 4
  const auto a = random_arrangement(7, 3, 4);
  const auto t = betti_complement(a, 10);
  EXPECT_EQ(t.valid_upto, 3);
  EXPECT_EQ(goresky_macpherson(a, 4).at(4), 4);
  EXPECT_EQ(betti_complement(coordinate_arrangement(7, 2), 10).valid_upto, 4);
}

TEST(Betti, WindowAndErrors) {
  EXPECT_EQ(validity_window(57), 15);
  EXPECT_EQ(validity_window(7), 2);
  EXPECT_EQ(betti_complement(coordinate_arrangement(7, 2), 100).valid_upto, 4);
  EXPECT_EQ(code_of([] { betti_complement(coordinate_arrangement(6, 2), 2); }), Errc::EvenAmbient);
  const Arrangement bad(7, {coords(7, 0, 1, 2), coords(7, 0, 3, 4)});
  EXPECT_EQ(code_of([&] { betti_complement(bad, 4); }), Errc::TransversalityFailure);
}

namespace {
Vector k3_vec(std::initializer_list<std::pair<std::size_t, int>> entries) {
  Vector v(22, 0);
  for (auto [i, x] : entries) v[i] = x;
  return v;
}
} // namespace

TEST(K3Arrangement, PositiveFrame) {
  const Lattice k3 = lattices::k3();
  const auto f = positive_frame(k3);
  ASSERT_EQ(f.positive.size(), 3u);
  ASSERT_EQ(f.negative.size(), 19u);
  std::vector<Vector> all = f.positive;
  all.insert(all.end(), f.negative.begin(), f.negative.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      const Integer p = k3.pair(all[i], all[j]);
      if (i == j) {
        EXPECT_EQ(sign(Rational(p)), i < 3 ? 1 : -1);
      } else {
        EXPECT_EQ(p, 0);
      }
    }
}

TEST(K3Arrangement, OrthogonalRootsAreTransversal) {
  const Lattice k3 = lattices::k3();
  const std::vector<Vector> roots{k3_vec({{6, 1}}), k3_vec({{14, 1}}), k3_vec({{0, 1}, {1, -1}})};
  const auto a = k3_arrangement_from_roots(k3, roots);
  EXPECT_EQ(a.ambient_dim(), 57u);
  EXPECT_TRUE(transversality_check(a, 3).transversal);
  const auto t = betti_complement(a, 6);
  EXPECT_EQ(t.betti.at(4), 3);
  EXPECT_EQ(t.betti.at(6), 1);
}

TEST(K3Arrangement, RootModelErrors) {
  const Lattice k3 = lattices::k3();
  const Vector d = k3_vec({{6, 1}});
  const Vector minus_d = k3_vec({{6, -1}});
  EXPECT_EQ(code_of([&] { k3_arrangement_from_roots(k3, {d, minus_d}); }), Errc::ProportionalRoots);
  EXPECT_EQ(code_of([&] { k3_arrangement_from_roots(k3, {k3_vec({{6, 1}, {7, 1}})}); }),
            Errc::NotARoot);
  EXPECT_EQ(code_of([&] { k3_arrangement_from_roots(k3, {}); }), Errc::EmptyInput);
  const auto one = k3_arrangement_from_roots(k3, {d});
  EXPECT_EQ(one.size(), 1u);
  const auto t = betti_complement(one, 4);
  EXPECT_EQ(t.betti.at(2), 1);
  EXPECT_EQ(t.betti.at(4), 0);
}
