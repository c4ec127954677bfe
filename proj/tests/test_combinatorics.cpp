#include <gtest/gtest.h>

#include "segal/combinatorics.hpp"

using namespace segal;

namespace {

Subset S(int n, std::vector<int> v) { return Subset(n, std::move(v)); }

std::vector<Subset> list(int n, std::vector<std::vector<int>> vs) {
  std::vector<Subset> out;
  for (auto& v : vs) out.push_back(S(n, v));
  std::sort(out.begin(), out.end());
  return out;
}

// Independent parity check straight from the gap definition, by bitmask.
int brute_parity(unsigned mask, int n) {
  bool ev = true, od = true, gap = false;
  for (int j = 0; j <= n; ++j) {
    if (mask >> j & 1u) continue;
    gap = true;
    int above = 0;
    for (int i = j + 1; i <= n; ++i) above += (mask >> i) & 1u;
    (above % 2 ? ev : od) = false;
  }
  if (!gap) return 3;
  return ev ? 1 : od ? 2 : 0;
}

} // namespace

TEST(Subset, NormalizesAndValidates) {
  auto I = S(5, {3, 1, 3});
  EXPECT_EQ(I.members, (std::vector<int>{1, 3}));
  EXPECT_THROW(S(3, {4}), error);
}

TEST(Classify, HandExamples) {
  EXPECT_EQ(classify_subset(S(3, {0, 2, 3})), Parity::Even);
  EXPECT_EQ(classify_subset(S(3, {0, 1, 3})), Parity::Odd);
  EXPECT_EQ(classify_subset(S(3, {0, 2})), Parity::Neither);
  EXPECT_EQ(classify_subset(Subset::full(4)), Parity::Both);
}

TEST(Classify, AgreesWithBitmaskOracle) {
  for (int n = 0; n <= 9; ++n)
    for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
      std::vector<int> v;
      for (int i = 0; i <= n; ++i)
        if (mask >> i & 1u) v.push_back(i);
      auto p = classify_subset(S(n, v));
      int expect = brute_parity(mask, n);
      int got = p == Parity::Neither ? 0 : p == Parity::Even ? 1 : p == Parity::Odd ? 2 : 3;
      ASSERT_EQ(got, expect) << S(n, v).str();
    }
}

TEST(Gale, Examples) {
  auto g = gale_facets(3, 2);
  EXPECT_EQ(g.lower, list(3, {{0, 1, 2}, {0, 2, 3}}));
  EXPECT_EQ(g.upper, list(3, {{0, 1, 3}, {1, 2, 3}}));
  auto h = gale_facets(3, 1);
  EXPECT_EQ(h.lower, list(3, {{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(h.upper, list(3, {{0, 3}}));
  EXPECT_THROW(gale_facets(1, 2), error);
}

TEST(Gale, EvenDimensionMinusOneIsAdjacentPairs) {
  for (int k = 1; k <= 4; ++k)
    for (auto& I : gale_facets(2 * k, 2 * k - 1).lower) {
      ASSERT_EQ(I.size(), 2 * k);
      for (int i = 0; i < 2 * k; i += 2) EXPECT_EQ(I.members[i + 1], I.members[i] + 1) << I.str();
    }
}

TEST(Gale, FacetCountMatchesClosedForm) {
  // f-vector of the cyclic polytope boundary, counted independently.
  auto binom = [](int a, int b) {
    if (b < 0 || b > a) return 0L;
    long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int D = 2; D <= 6; ++D)
    for (int n = D; n <= 10; ++n) {
      int N = n + 1;
      long expect;
      if (N == D + 1)
        expect = D + 1;
      else if (D % 2 == 0)
        expect = N * binom(N - D / 2 - 1, D / 2 - 1) / (D / 2);
      else
        expect = 2 * binom(N - (D + 1) / 2, (D - 1) / 2);
      auto g = gale_facets(n, D - 1);
      std::set<Subset> all(g.lower.begin(), g.lower.end());
      all.insert(g.upper.begin(), g.upper.end());
      EXPECT_EQ(static_cast<long>(all.size()), expect) << "n=" << n << " D=" << D;
    }
}

TEST(SegalPoset, Examples) {
  auto p = segal_poset(4, 1, Side::Lower);
  EXPECT_EQ(p.maximal, list(4, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}));
  for (int n = 3; n <= 7; ++n) {
    auto u = segal_poset(n, 3, Side::Upper);
    std::vector<std::vector<int>> expect;
    for (int i = 1; i + 1 < n; ++i) expect.push_back({0, i, i + 1, n});
    EXPECT_EQ(u.maximal, list(n, expect)) << n;
  }
  auto l = segal_poset(5, 3, Side::Lower);
  EXPECT_EQ(l.maximal, list(5, {{0, 1, 2, 3}, {0, 1, 3, 4}, {0, 1, 4, 5}, {1, 2, 4, 5},
                                {2, 3, 4, 5}, {1, 2, 3, 4}}));
}

TEST(SegalPoset, ClosureIsDownwardClosed) {
  auto p = segal_poset(6, 3, Side::Lower);
  for (auto& e : p.elements)
    for (int x : e.members) {
      auto v = e.members;
      v.erase(std::find(v.begin(), v.end(), x));
      EXPECT_TRUE(p.contains(S(6, v)));
    }
  EXPECT_TRUE(p.contains(S(6, {})));
  EXPECT_TRUE(std::is_sorted(p.elements.begin(), p.elements.end()));
}

TEST(Decompose, PiecesPartitionMaximalElements) {
  for (int d = 1; d <= 4; ++d)
    for (int n = d; n <= 8; ++n) {
      auto pieces = decompose_lower_poset(n, d);
      std::vector<Subset> all;
      for (auto& p : pieces) all.insert(all.end(), p.shifted_maximal.begin(), p.shifted_maximal.end());
      std::sort(all.begin(), all.end());
      EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
      EXPECT_EQ(all, segal_poset(n, d, Side::Lower).maximal) << n << "," << d;
    }
  auto p = decompose_lower_poset(5, 3);
  EXPECT_EQ(p.back().i, 5);
  EXPECT_EQ(p.back().shifted_maximal, list(5, {{0, 1, 4, 5}, {1, 2, 4, 5}, {2, 3, 4, 5}}));
  auto q = decompose_lower_poset(3, 3);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0].shifted_maximal, list(3, {{0, 1, 2, 3}}));
  std::size_t tot = 0;
  for (auto& x : decompose_lower_poset(4, 2)) tot += x.shifted_maximal.size();
  EXPECT_EQ(tot, 3u);  // even 3-subsets of [4]: {0,1,2},{0,2,3},{0,3,4}
}

TEST(Poset, AppendTopBijectionForEvenDegree) {
  for (int d = 2; d <= 4; d += 2)
    for (int n = d; n <= 8; ++n) {
      std::vector<Subset> img;
      for (auto& I : segal_poset(n - 1, d - 1, Side::Lower).maximal) img.push_back(append_top(I));
      std::sort(img.begin(), img.end());
      EXPECT_EQ(img, segal_poset(n, d, Side::Upper).maximal) << n << "," << d;
    }
}

TEST(Poset, EpsilonIsTheOnlyUncoveredSimplex) {
  for (int k = 1; k <= 4; ++k) {
    auto L = segal_poset(2 * k, 2 * k - 1, Side::Lower);
    std::vector<Subset> uncovered;
    for (auto& g : subsets_of_size(2 * k, k + 1))
      if (!L.contains(g)) uncovered.push_back(g);
    std::vector<int> eps;
    for (int i = 0; i <= 2 * k; i += 2) eps.push_back(i);
    ASSERT_EQ(uncovered.size(), 1u) << k;
    EXPECT_EQ(uncovered[0], S(2 * k, eps));
  }
}

TEST(EmbedInEven, Examples) {
  EXPECT_EQ(embed_in_even(S(4, {0, 1, 3}), 4, 2), S(4, {0, 1, 3, 4}));
  EXPECT_EQ(embed_in_even(S(4, {1, 2}), 4, 1), S(4, {1, 2}));
  EXPECT_EQ(embed_in_even(S(4, {0, 2, 4}), 4, 2), std::nullopt);
  EXPECT_THROW(embed_in_even(S(4, {0, 1}), 4, 2), error);
}

TEST(EmbedInEven, AgreesWithSearch) {
  for (int k = 1; k <= 3; ++k)
    for (int n = 2 * k; n <= 2 * k + 4; ++n)
      for (auto& g : subsets_of_size(n, k + 1)) {
        bool exists = false;
        for (auto& I : subsets_of_size(n, 2 * k))
          if (is_even(I) && g.subset_of(I)) exists = true;
        auto r = embed_in_even(g, n, k);
        ASSERT_EQ(r.has_value(), exists) << g.str() << " n=" << n;
        if (r) {
          EXPECT_TRUE(is_even(*r));
          EXPECT_TRUE(g.subset_of(*r));
        }
        if (has_adjacent_pair(g)) {
          EXPECT_TRUE(exists);
        }
      }
}

TEST(MonotoneMap, FacesAndDegeneracies) {
  EXPECT_EQ(MonotoneMap(2, {0, 1, 2}).face(1), MonotoneMap(2, {0, 2}));
  EXPECT_EQ(MonotoneMap(2, {0, 2}).degeneracy(0), MonotoneMap(2, {0, 0, 2}));
  EXPECT_THROW(MonotoneMap(2, {0, 2}).face(2), error);
  EXPECT_THROW(MonotoneMap(2, {1, 0}), error);
}

TEST(MonotoneMap, SimplicialIdentities) {
  for (int n = 0; n <= 5; ++n)
    for (int k = 0; k <= 5; ++k)
      for (auto& b : all_monotone(k, n)) {
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i < j && k >= 2; ++i)
            ASSERT_EQ(b.face(j).face(i), b.face(i).face(j - 1));
        for (int j = 0; j <= k; ++j)
          for (int i = 0; i <= j; ++i)
            ASSERT_EQ(b.degeneracy(j).degeneracy(i), b.degeneracy(i).degeneracy(j + 1));
        for (int j = 0; j <= k; ++j) {
          ASSERT_EQ(b.degeneracy(j).face(j), b);
          ASSERT_EQ(b.degeneracy(j).face(j + 1), b);
        }
      }
}

TEST(MonotoneMap, EnumerationCountAndOrder) {
  // C(n+k+1, k+1) weakly increasing sequences
  EXPECT_EQ(all_monotone(2, 4).size(), 35u);
  auto v = all_monotone(1, 3);
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
  auto th = coface_map(3, 1);
  EXPECT_EQ(MonotoneMap(2, {0, 2}).then(th), MonotoneMap(3, {0, 3}));
  EXPECT_EQ(codegeneracy_map(2, 1).v, (std::vector<int>{0, 1, 1, 2}));
}

TEST(EmbedInEven, InductiveSwapNeedsEvenTopBlock) {
  // top interior gap m = 4 with n - m odd: the swap lands on {0,1,3,5}, which is not even
  auto r = embed_in_even_traced(S(5, {0, 1, 5}), 5, 2);
  EXPECT_EQ(r.method, EmbedMethod::Pairs);
  EXPECT_EQ(r.subset, S(5, {0, 1, 4, 5}));
  auto q = embed_in_even_traced(S(4, {0, 1, 3}), 4, 2);
  EXPECT_EQ(q.method, EmbedMethod::Induction);
}
