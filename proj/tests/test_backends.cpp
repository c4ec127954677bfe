#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "segal/proto_exact.hpp"

using namespace segal;

namespace {

F1Map f1(int s, int t, std::vector<int> img) { return F1::make(s, t, std::move(img)); }

// Draws until `count` instances satisfy the lemma's hypotheses; returns the
// number of those for which the conclusion failed.
template <class B, class Gen, class Check>
int run_random(const B& b, Gen gen, Check check, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int valid = 0, bad = 0, tries = 0;
  while (valid < count && tries < 100 * count) {
    ++tries;
    auto d = gen(b, rng);
    if (!d) continue;
    auto v = check(b, *d);
    if (!v.hypotheses) continue;
    ++valid;
    if (!v.holds) ++bad;
  }
  EXPECT_EQ(valid, count);
  return bad;
}

} // namespace

TEST(F1, KernelCokernelExample) {
  // {*,a,b} -> {*,c}, a -> c, b -> *
  auto f = f1(2, 1, {0, -1});
  auto k = F1::kernel(f);
  auto c = F1::cokernel(f);
  ASSERT_TRUE(k && c);
  EXPECT_EQ(*k, f1(1, 2, {1}));
  EXPECT_EQ(F1::dst(*c), 0);
  F1 b;
  EXPECT_TRUE(verify_kernel(b, f, *k, 3));
  EXPECT_TRUE(verify_cokernel(b, f, *c, 3));
  auto em = F1::factor_admissible(f);
  ASSERT_TRUE(em);
  EXPECT_EQ(em->first, f1(2, 1, {0, -1}));
  EXPECT_EQ(em->second, F1::identity(1));
}

TEST(F1, RejectsNonInjectiveMaps) { EXPECT_THROW(f1(2, 1, {0, 0}), error); }

TEST(F1, HomCounts) {
  // partial injections [a] -> [b]: sum_j C(a,j) b!/(b-j)!
  EXPECT_EQ(F1::homs(2, 2).size(), 7u);
  EXPECT_EQ(F1::homs(3, 3).size(), 34u);
  EXPECT_EQ(F1::homs(0, 3).size(), 1u);
  EXPECT_EQ(F1::automorphisms(3).size(), 6u);
}

TEST(Fq, KernelCokernelExample) {
  Fq b(2);
  auto f = b.make(1, 2, {{1, 0}});
  auto k = b.kernel(f);
  auto c = b.cokernel(f);
  ASSERT_TRUE(k && c);
  EXPECT_EQ(*k, b.make(2, 1, {{0}, {1}}));
  EXPECT_EQ(Fq::dst(*c), 0);
  EXPECT_TRUE(verify_kernel(b, f, *k, 2));
  EXPECT_TRUE(verify_cokernel(b, f, *c, 2));
}

TEST(Fq, CountsAndInverse) {
  Fq b(3);
  EXPECT_EQ(b.homs(2, 2).size(), 81u);
  EXPECT_EQ(b.automorphisms(2).size(), 48u);  // |GL_2(F_3)|
  for (auto& g : b.automorphisms(2)) EXPECT_EQ(b.compose(g, b.inverse(g)), Fq::identity(2));
  EXPECT_THROW(Fq(4), error);
}

TEST(FreeAb, TimesTwo) {
  FreeAb b(2);
  auto f = FreeAb::make(1, 1, {{2}});
  auto k = FreeAb::kernel(f);
  auto c = FreeAb::cokernel(f);
  ASSERT_TRUE(k && c);
  EXPECT_EQ(FreeAb::src(*k), 0);
  EXPECT_EQ(FreeAb::dst(*c), 0);
  EXPECT_TRUE(verify_kernel(b, f, *k, 2));
  EXPECT_TRUE(verify_cokernel(b, f, *c, 2));
  EXPECT_FALSE(FreeAb::factor_admissible(f));
  EXPECT_FALSE(FreeAb::is_adm_mono(f));
  EXPECT_FALSE(FreeAb::is_adm_epi(f));
}

TEST(FreeAb, SmithNormalForm) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> e(-4, 4), d(0, 3);
  for (int it = 0; it < 200; ++it) {
    int r = d(rng), c = d(rng);
    ZMat A = detail::zmat(r, c);
    for (auto& x : A.a) x = e(rng);
    auto s = smith_normal_form(A);
    EXPECT_EQ(FreeAb::compose(FreeAb::compose(s.U, A), s.V), s.D);
    EXPECT_EQ(FreeAb::compose(s.U, s.Uinv), FreeAb::identity(r));
    EXPECT_EQ(FreeAb::compose(s.Vinv, s.V), FreeAb::identity(c));
    for (int i = 0; i + 1 < s.rank; ++i) EXPECT_EQ(s.divisors[i + 1] % s.divisors[i], 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (i != j || i >= s.rank) {
          EXPECT_EQ(s.D.at(i, j), 0);
        }
  }
  auto s = smith_normal_form(FreeAb::make(2, 2, {{2, 0}, {0, 3}}));
  EXPECT_EQ(s.divisors, (std::vector<Int>{1, 6}));
}

TEST(FactorAdmissible, Identities) {
  F1 a;
  Fq b(2);
  FreeAb c;
  for (int n = 0; n <= 3; ++n) {
    auto x = a.factor_admissible(F1::identity(n));
    ASSERT_TRUE(x);
    EXPECT_TRUE(F1::is_iso(x->first) && F1::is_iso(x->second));
    auto y = b.factor_admissible(Fq::identity(n));
    ASSERT_TRUE(y);
    EXPECT_EQ(y->first, Fq::identity(n));
    auto z = c.factor_admissible(FreeAb::identity(n));
    ASSERT_TRUE(z);
    EXPECT_EQ(FreeAb::compose(z->second, z->first), FreeAb::identity(n));
  }
}

TEST(FactorAdmissible, RecomposesExhaustively) {
  F1 a;
  Fq b(3);
  FreeAb c(1);
  for (int x = 0; x <= 3; ++x)
    for (int y = 0; y <= 3; ++y)
      for (auto& f : a.homs(x, y)) {
        auto em = a.factor_admissible(f);
        ASSERT_TRUE(em);
        EXPECT_TRUE(a.is_adm_epi(em->first) && a.is_adm_mono(em->second));
        EXPECT_EQ(a.compose(em->second, em->first), f);
      }
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y) {
      for (auto& f : b.homs(x, y)) {
        auto em = b.factor_admissible(f);
        ASSERT_TRUE(em);
        EXPECT_TRUE(b.is_adm_epi(em->first) && b.is_adm_mono(em->second));
        EXPECT_EQ(b.compose(em->second, em->first), f);
      }
      for (auto& f : c.homs(x, y)) {
        auto em = c.factor_admissible(f);
        if (!em) continue;
        EXPECT_TRUE(c.is_adm_epi(em->first) && c.is_adm_mono(em->second));
        EXPECT_EQ(c.compose(em->second, em->first), f);
      }
    }
}

TEST(SequenceClassify, Examples) {
  F1 a;
  EXPECT_EQ(classify_sequence(a, {f1(1, 2, {0}), f1(2, 1, {-1, 0})}).cls, SeqClass::Exact);
  EXPECT_EQ(classify_sequence(a, {F1::zero(0, 2), F1::identity(2)}).cls, SeqClass::Exact);
  EXPECT_EQ(classify_sequence(a, {f1(1, 2, {0}), f1(2, 1, {0, -1})}).cls, SeqClass::NotAcyclic);
  EXPECT_EQ(classify_sequence(a, {f1(1, 2, {0}), f1(2, 2, {-1, 1})}).cls, SeqClass::LeftExact);
  EXPECT_EQ(classify_sequence(a, {f1(1, 1, {-1}), F1::identity(1)}).cls, SeqClass::RightExact);
  FreeAb z;
  auto r = classify_sequence(z, {FreeAb::make(1, 1, {{2}}), FreeAb::zero(1, 0)});
  EXPECT_EQ(r.cls, SeqClass::NotAcyclic);
  EXPECT_EQ(r.position, 0);
  EXPECT_EQ(violation_name(SeqClass::RightExact, Variant::LeftExact), "NotLeftExact");
  EXPECT_TRUE(satisfies(SeqClass::Exact, Variant::LeftExact));
  EXPECT_FALSE(satisfies(SeqClass::LeftExact, Variant::Exact));
}

TEST(SequenceClassify, LongFqSequence) {
  Fq b(2);
  // F -> F^2 -> F^2 -> F with images of dimension 1, 1, 1
  auto m1 = b.make(2, 1, {{1}, {0}});
  auto m2 = b.make(2, 2, {{0, 1}, {0, 0}});
  auto m3 = b.make(1, 2, {{0, 1}});
  EXPECT_EQ(classify_sequence(b, {m1, m2, m3}).cls, SeqClass::Exact);
  auto m2bad = b.make(2, 2, {{1, 0}, {0, 0}});
  EXPECT_EQ(classify_sequence(b, {m1, m2bad, m3}).cls, SeqClass::NotAcyclic);
}

TEST(Stringency, Probe) {
  EXPECT_FALSE(stringency_probe(F1(), 3));
  EXPECT_FALSE(stringency_probe(Fq(2), 2));
  EXPECT_FALSE(stringency_probe(Fq(3), 2));
  auto w = stringency_probe(FreeAb(2), 1);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->f, FreeAb::make(1, 1, {{2}}));
  EXPECT_EQ(w->coim_to_im, FreeAb::make(1, 1, {{2}}));
}

TEST(UniversalProperties, KernelsAndCokernelsExhaustive) {
  F1 a;
  for (int x = 0; x <= 3; ++x)
    for (int y = 0; y <= 3; ++y)
      for (auto& f : a.homs(x, y)) {
        ASSERT_TRUE(verify_kernel(a, f, *a.kernel(f), 3));
        ASSERT_TRUE(verify_cokernel(a, f, *a.cokernel(f), 3));
      }
  Fq b(2);
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y)
      for (auto& f : b.homs(x, y)) {
        ASSERT_TRUE(verify_kernel(b, f, *b.kernel(f), 2));
        ASSERT_TRUE(verify_cokernel(b, f, *b.cokernel(f), 2));
      }
}

TEST(UniversalProperties, FreeAbExhaustive) {
  // rank <= 2, entries <= 2; test objects of rank <= 1 with entries <= 2
  FreeAb c(2);
  FreeAb probe(2);
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y)
      for (auto& f : c.homs(x, y)) {
        ASSERT_TRUE(verify_kernel(probe, f, *c.kernel(f), 1)) << FreeAb::to_json(f);
        ASSERT_TRUE(verify_cokernel(probe, f, *c.cokernel(f), 1)) << FreeAb::to_json(f);
      }
}

TEST(Axioms, AllBackends) {
  auto r1 = proto_exact_axioms(F1(), 3, 2);
  EXPECT_TRUE(r1.ok) << r1.failure;
  auto r2 = proto_exact_axioms(Fq(2), 2, 2);
  EXPECT_TRUE(r2.ok) << r2.failure;
  auto r3 = proto_exact_axioms(Fq(3), 2, 1);
  EXPECT_TRUE(r3.ok) << r3.failure;
  auto r4 = proto_exact_axioms(FreeAb(1), 2, 1);
  EXPECT_TRUE(r4.ok) << r4.failure;
  auto r5 = proto_exact_axioms(Opposite<F1>(), 3, 2);
  EXPECT_TRUE(r5.ok) << r5.failure;
  EXPECT_GT(r1.checked, 500u);
}

TEST(Opposite, SwapsStructure) {
  Opposite<F1> o;
  auto f = f1(2, 1, {0, -1});  // in the opposite: 1 -> 2
  EXPECT_EQ(o.src(f), 1);
  EXPECT_EQ(o.dst(f), 2);
  EXPECT_EQ(*o.kernel(f), *F1::cokernel(f));
  auto em = o.factor_admissible(f);
  ASSERT_TRUE(em);
  EXPECT_EQ(o.compose(em->second, em->first), f);
  EXPECT_TRUE(o.is_adm_epi(em->first) && o.is_adm_mono(em->second));
}

TEST(NineLemma, ZeroAndExample) {
  F1 a;
  NineDiagram<F1Map> Z;
  auto z = F1::zero(0, 0);
  Z.rows = {std::make_pair(z, z), std::make_pair(z, z), std::make_pair(z, z)};
  Z.cols = Z.rows;
  auto v = nine_lemma_check(a, Z);
  EXPECT_TRUE(v.hypotheses && v.holds) << v.detail;

  NineDiagram<F1Map> D;
  auto m = f1(1, 2, {0}), e = f1(2, 1, {-1, 0});
  D.rows = {std::make_pair(F1::zero(0, 0), F1::zero(0, 0)), std::make_pair(m, e), std::make_pair(m, e)};
  D.cols = {std::make_pair(F1::zero(0, 1), F1::identity(1)), std::make_pair(F1::zero(0, 2), F1::identity(2)),
            std::make_pair(F1::zero(0, 1), F1::identity(1))};
  v = nine_lemma_check(a, D);
  EXPECT_TRUE(v.hypotheses && v.holds) << v.detail;
}

TEST(NineLemma, Randomized) {
  auto gen = [](const auto& b, std::mt19937_64& rng) { return random_nine_diagram(b, rng, 2); };
  auto chk = [](const auto& b, const auto& d) { return nine_lemma_check(b, d); };
  EXPECT_EQ(run_random(F1(), gen, chk, 100, 1), 0);
  EXPECT_EQ(run_random(Fq(2), gen, chk, 100, 2), 0);
  EXPECT_EQ(run_random(Fq(3), gen, chk, 100, 3), 0);
  EXPECT_EQ(run_random(FreeAb(1), gen, chk, 100, 4), 0);
}

TEST(MonoPullbackCoker, Examples) {
  F1 a;
  auto m = f1(1, 2, {0});
  auto v = mono_pullback_coker(a, MonoSquare<F1Map>{m, m, F1::identity(1), F1::identity(2)});
  EXPECT_TRUE(v.verdict.hypotheses && v.verdict.holds) << v.verdict.detail;
  EXPECT_EQ(*v.induced, F1::identity(1));
  // B1 = {*}, A1 = {*,x}, B0 = {*,y}, A0 = {*,x,y}
  MonoSquare<F1Map> s{F1::zero(0, 1), f1(1, 2, {1}), F1::zero(0, 1), f1(1, 2, {0})};
  auto w = mono_pullback_coker(a, s);
  EXPECT_TRUE(w.verdict.hypotheses && w.verdict.holds) << w.verdict.detail;
  EXPECT_EQ(*w.induced, F1::identity(1));
  // not a pullback: B1 too small
  MonoSquare<F1Map> t{F1::zero(0, 1), f1(1, 2, {0}), F1::zero(0, 1), f1(1, 2, {0})};
  EXPECT_FALSE(mono_pullback_coker(a, t).verdict.hypotheses);
}

TEST(MonoPullbackCoker, Randomized) {
  auto gen = [](const auto& b, std::mt19937_64& rng) { return random_mono_square(b, rng, 2); };
  auto chk = [](const auto& b, const auto& d) { return mono_pullback_coker(b, d).verdict; };
  EXPECT_EQ(run_random(F1(), gen, chk, 100, 11), 0);
  EXPECT_EQ(run_random(Fq(2), gen, chk, 100, 12), 0);
  EXPECT_EQ(run_random(Fq(3), gen, chk, 100, 13), 0);
}

TEST(Snake, RandomizedComposablePairs) {
  auto run = [](const auto& b, int bound, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> sz(0, bound);
    int done = 0, bad = 0;
    while (done < 100) {
      int x = sz(rng), y = sz(rng), z = sz(rng);
      auto hf = b.homs(x, y), hg = b.homs(y, z);
      auto f = hf[std::uniform_int_distribution<std::size_t>(0, hf.size() - 1)(rng)];
      auto g = hg[std::uniform_int_distribution<std::size_t>(0, hg.size() - 1)(rng)];
      if (!is_admissible(b, f) || !is_admissible(b, g) || !is_admissible(b, b.compose(g, f))) continue;
      ++done;
      if (!snake_check(b, f, g)) ++bad;
    }
    return bad;
  };
  EXPECT_EQ(run(F1(), 3, 21), 0);
  EXPECT_EQ(run(Fq(2), 2, 22), 0);
  EXPECT_EQ(run(Fq(3), 2, 23), 0);
}

TEST(Json, RoundTrip) {
  auto f = f1(3, 2, {1, -1, 0});
  EXPECT_EQ(F1::from_json(F1::to_json(f)), f);
  Fq b(3);
  auto g = b.make(2, 3, {{1, 2, 0}, {0, 1, 1}});
  EXPECT_EQ(b.from_json(Fq::to_json(g)), g);
  auto h = FreeAb::make(2, 1, {{-2}, {5}});
  EXPECT_EQ(FreeAb::from_json(FreeAb::to_json(h)), h);
}
