// Acceptance run: one PASS/FAIL line per criterion, limits pinned below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "segal/backends/f1.hpp"
#include "segal/backends/fq.hpp"
#include "segal/backends/freeab.hpp"
#include "segal/backends/opposite.hpp"
#include "segal/combinatorics.hpp"
#include "segal/counterexamples.hpp"
#include "segal/cyclic_polytope.hpp"
#include "segal/hall.hpp"
#include "segal/indexed.hpp"
#include "segal/proto_exact.hpp"
#include "segal/segal_sum.hpp"
#include "segal/simplicial.hpp"
#include "segal/waldhausen.hpp"

using namespace segal;

namespace {

struct Result {
  bool pass = true;
  std::ostringstream note;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) note << "first failure: ";
      else note << "; ";
      note << what;
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Result&)> body;
};

std::string set_str(const std::vector<std::vector<int>>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    for (int v : xs[i]) s += std::to_string(v);
  }
  return s + "}";
}

// ---------------------------------------------------------------------------

void gale_agreement(Result& r) {
  std::size_t subsets = 0;
  for (int d = 0; d <= 4; ++d)
    for (int n = d; n <= 8; ++n)
      for (const auto& I : subsets_of_size(n, d + 1)) {
        ++subsets;
        const auto p = classify_subset(I);
        const auto g = facet_side_geometric(I, n, d);
        const auto want = p == Parity::Even ? FacetSide::Lower
                          : p == Parity::Odd ? FacetSide::Upper
                          : p == Parity::Both ? FacetSide::Both
                                              : FacetSide::NotAFacet;
        r.check(want == g, "n=" + std::to_string(n) + " d=" + std::to_string(d) + " " + I.str());
      }
  r.note << subsets << " subsets classified";
}

void poset_fixtures(Result& r) {
  for (int n = 3; n <= 8; ++n) {
    std::vector<std::vector<int>> want, got;
    for (int i = 1; i + 1 < n; ++i) want.push_back({0, i, i + 1, n});
    for (const auto& I : segal_poset(n, 3, Side::Upper).maximal) got.push_back(I.members);
    r.check(got == want, "upper n=" + std::to_string(n) + " " + set_str(got));
  }
  const std::vector<std::vector<int>> six = {{0, 1, 2, 3}, {0, 1, 3, 4}, {0, 1, 4, 5},
                                             {1, 2, 3, 4}, {1, 2, 4, 5}, {2, 3, 4, 5}};
  std::vector<std::vector<int>> got;
  for (const auto& I : segal_poset(5, 3, Side::Lower).maximal) got.push_back(I.members);
  r.check(got == six, "lower n=5 " + set_str(got));
  r.note << "upper n=3..8, lower n=5";
}

// Triangulations of a convex polygon on vertices 0..n.
std::uint64_t polygon_oracle(int n) {
  std::vector<std::vector<std::uint64_t>> t(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int len = 1; len <= n; ++len)
    for (int i = 0; i + len <= n; ++i) {
      const int j = i + len;
      if (len == 1) {
        t[i][j] = 1;
        continue;
      }
      for (int m = i + 1; m < j; ++m) t[i][j] += t[i][m] * t[m][j];
    }
  return t[0][n];
}

void triangulation_counts(Result& r) {
  std::ostringstream counts;
  for (int n = 2; n <= 7; ++n) {
    auto G = flip_graph(n, 2);
    const auto want = polygon_oracle(n);
    r.check(G.nodes.size() == want, "C(" + std::to_string(n) + ",2) count " + std::to_string(G.nodes.size()));
    r.check(G.connected, "flip graph disconnected at n=" + std::to_string(n));
    r.check(G.lower_index >= 0 && G.upper_index >= 0, "canonical triangulations missing at n=" + std::to_string(n));
    counts << (n > 2 ? "," : "") << G.nodes.size();
  }
  r.check(polygon_oracle(4) == 5 && polygon_oracle(5) == 14, "oracle fixtures");
  r.note << "counts n=2..7: " << counts.str();
}

void below_order(Result& r) {
  std::size_t cases = 0, triangulations = 0;
  for (int d = 1; d <= 3; ++d)
    for (int n = d; n <= 7; ++n) {
      ++cases;
      auto c = below_order_check(n, d, false);
      r.check(c.acyclic, "cycle at n=" + std::to_string(n) + " d=" + std::to_string(d));
      for (const auto& T : enumerate_triangulations(n, d)) {
        ++triangulations;
        r.check(bottom_simplex(T).has_value(), "no bottom simplex at n=" + std::to_string(n));
      }
    }
  r.note << cases << " (n,d) cases, " << triangulations << " triangulations";
}

void segal_sum_instances(Result& r) {
  F1 b;
  for (int n = 1; n <= 4; ++n) {
    auto s = segal_check_sum(b, 1, n, 1, Side::Lower, 3);
    r.check(s.verdict, "k=1 n=" + std::to_string(n));
  }
  for (int n = 3; n <= 4; ++n) {
    auto s = segal_check_sum(b, 2, n, 3, Side::Lower, 2);
    r.check(s.verdict, "k=2 n=" + std::to_string(n));
  }
  r.note << "6 Segal maps are equivalences";
}

template <class Cat>
void fully_segal(Result& r, const Cat& c, int k, int d, int n_lo, int n_hi, std::size_t& maps) {
  SimplicialCategory<Cat> X(c, k, Variant::Exact);
  for (int n = n_lo; n <= n_hi; ++n)
    for (auto side : {Side::Lower, Side::Upper}) {
      ++maps;
      r.check(X.segal_map_check(n, d, side).eq.verdict, c.name() + " k=" + std::to_string(k) + " n=" +
                                                            std::to_string(n) + " " + side_name(side));
    }
}

void waldhausen_fully(Result& r) {
  std::size_t maps = 0;
  fully_segal(r, Indexed<F1>(F1{}, 3), 1, 2, 2, 5, maps);
  fully_segal(r, Indexed<Fq>(Fq(2), 2), 1, 2, 2, 5, maps);
  fully_segal(r, Indexed<F1>(F1{}, 2), 2, 4, 4, 6, maps);
  fully_segal(r, Indexed<Fq>(Fq(2), 2), 2, 4, 4, 6, maps);
  r.note << maps << " Segal maps are equivalences";
}

template <class Cat>
void upper_three(Result& r, const Cat& c) {
  SimplicialCategory<Cat> X(c, 2, Variant::Exact);
  r.check(X.segal_map_check(3, 3, Side::Upper).eq.verdict, c.name() + " n=3");
  auto s = X.segal_map_check(4, 3, Side::Upper);
  r.check(s.eq.verdict, c.name() + " n=4");
  r.check(s.uncovered == std::vector<std::vector<int>>{{0, 1, 3}, {1, 2, 3}, {1, 3, 4}},
          c.name() + " recovered nodes " + set_str(s.uncovered));
}

void waldhausen_upper(Result& r) {
  upper_three(r, Indexed<F1>(F1{}, 2));
  upper_three(r, Indexed<Fq>(Fq(2), 2));
  r.note << "recovered nodes at n=4: {013,123,134}, unique up to iso";
}

template <class Cat>
std::vector<Cell<int>> cells(const Cat& c, int k, int n, Variant v) {
  DiagramEngine<Cat> e(wald_shape(k, n, v), c);
  std::vector<Cell<int>> out;
  for (auto& d : e.enumerate()) out.push_back({k, n, v, std::move(d)});
  return out;
}

void path_round_trips(Result& r) {
  Indexed<F1> c(F1{}, 1);
  std::size_t trips = 0, equivalences = 0;
  for (int k = 1; k <= 2; ++k)
    for (auto p : {PathSide::Left, PathSide::Right, PathSide::Double}) {
      if (p == PathSide::Double && k != 2) continue;
      const std::string tag = "k=" + std::to_string(k) + " " + path_side_name(p);
      for (int n = 0; n <= 3; ++n) {
        const int j = k - path_dim_drop(p);
        for (const auto& B : cells(c, j, n, forget_variant(p, Variant::Exact))) {
          ++trips;
          auto A = kan_extend(c, B, p);
          r.check(!validate_cell(c, A).has_value(), tag + " extension invalid");
          r.check(forget_path(c, A, p) == B, tag + " forget after extend");
        }
        DiagramEngine<Indexed<F1>> e(wald_shape(k, n + path_shift(p), Variant::Exact), c);
        for (const auto& A : cells(c, k, n + path_shift(p), Variant::Exact)) {
          ++trips;
          auto back = kan_extend(c, forget_path(c, A, p), p);
          r.check(e.canonical_form(back.d) == A.d, tag + " extend after forget n=" + std::to_string(n));
        }
        ++equivalences;
        r.check(path_space_equivalence(c, k, n, p).verdict, tag + " not an equivalence n=" + std::to_string(n));
      }
    }
  Indexed<F1> c2(F1{}, 2);
  for (int n = 0; n <= 3; ++n)
    for (auto p : {PathSide::Left, PathSide::Right}) {
      ++equivalences;
      r.check(path_space_equivalence(c2, 1, n, p).verdict, "bound 2 k=1 n=" + std::to_string(n));
    }
  r.note << trips << " round trips, " << equivalences << " equivalences";
}

void counterexamples(Result& r) {
  auto kx = kernel_counterexample();
  auto sx = sum_counterexample();
  r.check(kx["controls_ok"].get<bool>(), "kernel controls lack preimages");
  r.check(!kx["preimage_exists"].get<bool>(), "kernel display has a preimage");
  if (!kx["candidate_valid"].get<bool>()) {
    std::vector<std::vector<int>> bad;
    for (const auto& piece : kx["candidate"]["pieces"])
      if (!piece["valid"].get<bool>()) bad.push_back(piece["vertices"].get<std::vector<int>>());
    r.check(false, "kernel display is not in the limit: pieces " + set_str(bad) + " invalid");
  }
  r.check(sx["candidate_valid"].get<bool>(), "sum display invalid");
  r.check(!sx["preimage_exists"].get<bool>(), "sum display has a preimage");
  r.check(sx["controls_ok"].get<bool>(), "sum control lacks a preimage");
  r.note << (r.pass ? "" : "; ") << "sum display refuted=" << sx["verdict"].get<bool>()
         << ", kernel display refuted=" << kx["verdict"].get<bool>();
}

template <class B, class Gen, class Check>
int run_random(Result& r, const B& b, Gen gen, Check check, int count, std::uint64_t seed, const std::string& tag) {
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
  r.check(valid == count, tag + " produced " + std::to_string(valid) + " instances");
  r.check(bad == 0, tag + " failed on " + std::to_string(bad) + " instances");
  return valid;
}

void proto_exact_suite(Result& r) {
  r.check(!stringency_probe(F1(), 3), "f1 has a non-strict map");
  r.check(!stringency_probe(Fq(2), 2), "fq:2 has a non-strict map");
  r.check(!stringency_probe(Fq(3), 2), "fq:3 has a non-strict map");
  auto w = stringency_probe(FreeAb(2), 1);
  r.check(w && w->f == FreeAb::make(1, 1, {{2}}), "freeab witness is not x2");

  auto nine = [](const auto& b, std::mt19937_64& rng) { return random_nine_diagram(b, rng, 2); };
  auto nine_chk = [](const auto& b, const auto& d) { return nine_lemma_check(b, d); };
  auto sq = [](const auto& b, std::mt19937_64& rng) { return random_mono_square(b, rng, 2); };
  auto sq_chk = [](const auto& b, const auto& d) { return mono_pullback_coker(b, d).verdict; };
  int instances = 0;
  instances += run_random(r, F1(), nine, nine_chk, 100, 101, "nine f1");
  instances += run_random(r, Fq(2), nine, nine_chk, 100, 102, "nine fq:2");
  instances += run_random(r, Fq(3), nine, nine_chk, 100, 103, "nine fq:3");
  instances += run_random(r, FreeAb(1), nine, nine_chk, 100, 104, "nine freeab");
  instances += run_random(r, F1(), sq, sq_chk, 100, 111, "coker f1");
  instances += run_random(r, Fq(2), sq, sq_chk, 100, 112, "coker fq:2");
  instances += run_random(r, Fq(3), sq, sq_chk, 100, 113, "coker fq:3");

  std::size_t axioms = 0;
  auto ax = [&](const auto& b, int bound, int verify, const std::string& tag) {
    auto a = proto_exact_axioms(b, bound, verify);
    axioms += a.checked;
    r.check(a.ok, tag + ": " + a.failure);
  };
  ax(F1(), 3, 2, "f1");
  ax(Fq(2), 2, 2, "fq:2");
  ax(Fq(3), 2, 1, "fq:3");
  ax(FreeAb(1), 2, 1, "freeab");
  ax(Opposite<F1>(), 3, 2, "op(f1)");
  r.note << "x2 witness; " << instances << " random instances; " << axioms << " axiom checks";
}

template <class B>
void hall_suite(Result& r, const B& b, int bound) {
  auto t = hall_table(b, bound);
  auto a = associativity_check(t);
  r.check(a.associative, b.name() + " not associative: " + a.violation.dump());
  for (int M = 0; M <= bound; ++M)
    for (int N = 0; N <= bound; ++N)
      for (int L = 0; L <= bound; ++L)
        r.check(hall_number(b, M, N, L) == hall_number_from_faces(b, M, N, L),
                b.name() + " face fiber " + std::to_string(M) + std::to_string(N) + std::to_string(L));
  // negative control: some corrupted entry must be caught
  bool caught = false;
  for (int M = 0; M <= bound && !caught; ++M)
    for (int N = 0; N <= M && !caught; ++N) {
      auto bad = t;
      bad.g[M][N][M - N] += 1;
      caught = !associativity_check(bad).associative;
    }
  r.check(caught, b.name() + " corruption not detected");
}

void hall_associativity(Result& r) {
  hall_suite(r, F1(), 3);
  hall_suite(r, Fq(2), 2);
  r.note << "f1 size<=3, fq:2 dim<=2";
}

template <class Cat>
void criterion_cases(Result& r, const Cat& c, int k, int top, std::size_t& pairs, std::size_t& implications) {
  SimplicialCategory<Cat> X(c, k, Variant::Exact);
  auto PR = X.with(Transform::RightPath);
  const std::string tag = c.name() + " k=" + std::to_string(k);
  for (int d : {2, 4})
    for (int n = d - 1; n + 1 <= top; ++n) {
      ++pairs;
      const bool up = X.segal_map_check(n + 1, d, Side::Upper).eq.verdict;
      const bool path = PR.segal_map_check(n, d - 1, Side::Lower).eq.verdict;
      r.check(up == path, tag + " d=" + std::to_string(d) + " level " + std::to_string(n + 1));
    }
  for (int d = 1; d + 1 <= top; ++d) {
    bool lower = true;
    for (int n = d; n <= top; ++n) lower = lower && X.segal_map_check(n, d, Side::Lower).eq.verdict;
    if (!lower) continue;
    ++implications;
    for (int n = d + 1; n <= top; ++n)
      for (auto side : {Side::Lower, Side::Upper})
        r.check(X.segal_map_check(n, d + 1, side).eq.verdict,
                tag + " lower " + std::to_string(d) + " but not fully " + std::to_string(d + 1));
  }
}

void path_criterion(Result& r) {
  std::size_t pairs = 0, implications = 0;
  criterion_cases(r, Indexed<F1>(F1{}, 2), 1, 5, pairs, implications);
  criterion_cases(r, Indexed<Fq>(Fq(2), 2), 1, 5, pairs, implications);
  criterion_cases(r, Indexed<F1>(F1{}, 1), 2, 5, pairs, implications);
  criterion_cases(r, Indexed<Fq>(Fq(2), 1), 2, 5, pairs, implications);
  r.note << pairs << " verdict pairs agree; " << implications << " lower-d passes all fully (d+1)";
}

} // namespace

int main() {
  const std::vector<Criterion> all = {
      {1, "gale-agreement", 10, gale_agreement},
      {2, "poset-fixtures", 10, poset_fixtures},
      {3, "triangulation-counts-and-flips", 60, triangulation_counts},
      {4, "below-order-acyclic", 120, below_order},
      {5, "segal-sum-lower-segal", 300, segal_sum_instances},
      {6, "waldhausen-fully-2k-segal", 900, waldhausen_fully},
      {7, "waldhausen-upper-3-segal", 120, waldhausen_upper},
      {8, "path-space-round-trips", 300, path_round_trips},
      {9, "counterexamples", 300, counterexamples},
      {10, "proto-exact-suite", 120, proto_exact_suite},
      {11, "hall-associativity", 60, hall_associativity},
      {12, "path-space-criterion", 300, path_criterion},
  };
  int failed = 0;
  for (const auto& c : all) {
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(r);
    } catch (const std::exception& e) {
      r.check(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_s) r.check(false, "over the time limit");
    failed += !r.pass;
    std::printf("%s %2d %-32s %8.2fs (limit %4.0fs)  %s\n", r.pass ? "PASS" : "FAIL", c.id, c.name, s, c.limit_s,
                r.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
