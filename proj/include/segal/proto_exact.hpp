#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "segal/backends/f1.hpp"
#include "segal/backends/fq.hpp"
#include "segal/backends/freeab.hpp"
#include "segal/backends/opposite.hpp"
#include "segal/error.hpp"

namespace segal {

enum class SeqClass { NotAcyclic, Acyclic, LeftExact, RightExact, Exact };

inline const char* seq_class_name(SeqClass c) {
  switch (c) {
    case SeqClass::NotAcyclic: return "NotAcyclic";
    case SeqClass::Acyclic: return "Acyclic";
    case SeqClass::LeftExact: return "LeftExact";
    case SeqClass::RightExact: return "RightExact";
    case SeqClass::Exact: return "Exact";
  }
  return "?";
}

enum class Variant { Acyclic, LeftExact, RightExact, Exact };

inline const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Acyclic: return "acyclic";
    case Variant::LeftExact: return "left-exact";
    case Variant::RightExact: return "right-exact";
    case Variant::Exact: return "exact";
  }
  return "?";
}

inline Variant parse_variant(const std::string& s) {
  if (s == "acyclic") return Variant::Acyclic;
  if (s == "left-exact" || s == "lco") return Variant::LeftExact;
  if (s == "right-exact" || s == "rco") return Variant::RightExact;
  if (s == "exact" || s == "pair") return Variant::Exact;
  fail(errc::invalid_arguments, "unknown variant '" + s + "'");
}

/// Opposite category swaps the one-sided variants.
inline Variant dual_variant(Variant v) {
  if (v == Variant::LeftExact) return Variant::RightExact;
  if (v == Variant::RightExact) return Variant::LeftExact;
  return v;
}

inline bool satisfies(SeqClass c, Variant v) {
  switch (v) {
    case Variant::Acyclic: return c != SeqClass::NotAcyclic;
    case Variant::LeftExact: return c == SeqClass::LeftExact || c == SeqClass::Exact;
    case Variant::RightExact: return c == SeqClass::RightExact || c == SeqClass::Exact;
    case Variant::Exact: return c == SeqClass::Exact;
  }
  return false;
}

/// Name of the failed requirement, e.g. "NotLeftExact".
inline std::string violation_name(SeqClass c, Variant v) {
  if (c == SeqClass::NotAcyclic) return "NotAcyclic";
  bool le = c == SeqClass::LeftExact || c == SeqClass::Exact;
  bool re = c == SeqClass::RightExact || c == SeqClass::Exact;
  if ((v == Variant::LeftExact || v == Variant::Exact) && !le) return "NotLeftExact";
  if ((v == Variant::RightExact || v == Variant::Exact) && !re) return "NotRightExact";
  return "None";
}

struct SeqClassification {
  SeqClass cls = SeqClass::Exact;
  int position = -1;  // index into the map list of the first failure, if any
  std::string reason;
};

template <class B>
bool is_admissible(const B& b, const typename B::Mor& f) {
  return b.factor_admissible(f).has_value();
}

/// m is a kernel of e and e is a cokernel of m.
template <class B>
bool is_short_exact(const B& b, const typename B::Mor& m, const typename B::Mor& e) {
  if (b.dst(m) != b.src(e)) return false;
  if (!b.is_adm_mono(m) || !b.is_adm_epi(e)) return false;
  if (!b.is_zero(b.compose(e, m))) return false;
  auto k = b.kernel(e);
  auto c = b.cokernel(m);
  if (!k || !c) return false;
  auto h = b.lift_mono(*k, m);
  auto h2 = b.descend_epi(*c, e);
  return h && h2 && b.is_iso(*h) && b.is_iso(*h2);
}

/// Short exactness through a backend's own table when it keeps one.
template <class B>
bool short_exact(const B& b, const typename B::Mor& m, const typename B::Mor& e) {
  if constexpr (requires { b.ses(m, e); })
    return b.ses(m, e);
  else
    return is_short_exact(b, m, e);
}

/// Classifies A_k -> A_{k-1} -> ... -> A_0 given as maps[0] = (A_k -> A_{k-1}), ...,
/// maps[k-1] = (A_1 -> A_0).
template <class B>
SeqClassification classify_sequence(const B& b, const std::vector<typename B::Mor>& maps) {
  using Mor = typename B::Mor;
  SeqClassification r;
  if (maps.empty()) return r;
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    require(b.dst(maps[i]) == b.src(maps[i + 1]), errc::invalid_input, "sequence: maps not composable");
  std::vector<std::pair<Mor, Mor>> fac;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    auto em = b.factor_admissible(maps[i]);
    if (!em) {
      r.cls = SeqClass::NotAcyclic;
      r.position = static_cast<int>(i);
      r.reason = "map not admissible";
      return r;
    }
    fac.push_back(*em);
  }
  for (std::size_t i = 0; i + 1 < maps.size(); ++i)
    if (!short_exact(b, fac[i].second, fac[i + 1].first)) {
      r.cls = SeqClass::NotAcyclic;
      r.position = static_cast<int>(i);
      r.reason = "image sequence not short exact";
      return r;
    }
  bool le = b.is_adm_mono(maps.front());
  bool re = b.is_adm_epi(maps.back());
  r.cls = le && re ? SeqClass::Exact : le ? SeqClass::LeftExact : re ? SeqClass::RightExact : SeqClass::Acyclic;
  if (!le) r.position = 0, r.reason = "first map not an admissible mono";
  if (le && !re) r.position = static_cast<int>(maps.size()) - 1, r.reason = "last map not an admissible epi";
  return r;
}

// ---------------------------------------------------------------------------
// Universal properties, verified by bounded enumeration.

/// k : K -> A is a kernel of f : A -> B against every test object of size <= bound.
template <class B>
bool verify_kernel(const B& b, const typename B::Mor& f, const typename B::Mor& k, int bound) {
  if (b.dst(k) != b.src(f) || !b.is_zero(b.compose(f, k))) return false;
  for (int x = 0; x <= bound; ++x) {
    auto hk = b.homs(x, b.src(k));
    for (auto& g : b.homs(x, b.src(f))) {
      if (!b.is_zero(b.compose(f, g))) continue;
      int hits = 0;
      for (auto& h : hk)
        if (b.compose(k, h) == g) ++hits;
      if (hits != 1) return false;
    }
  }
  return true;
}

template <class B>
bool verify_cokernel(const B& b, const typename B::Mor& f, const typename B::Mor& c, int bound) {
  if (b.src(c) != b.dst(f) || !b.is_zero(b.compose(c, f))) return false;
  for (int x = 0; x <= bound; ++x) {
    auto hc = b.homs(b.dst(c), x);
    for (auto& g : b.homs(b.dst(f), x)) {
      if (!b.is_zero(b.compose(g, f))) continue;
      int hits = 0;
      for (auto& h : hc)
        if (b.compose(h, c) == g) ++hits;
      if (hits != 1) return false;
    }
  }
  return true;
}

template <class Mor>
struct Span {
  Mor left, right;  // P -> X, P -> Y
};

/// Pullback of an admissible epi e : Y -> Z along an admissible mono m : X -> Z,
/// built as the kernel of Y -> Z -> coker(m). Returns (P -> X, P -> Y).
template <class B>
std::optional<Span<typename B::Mor>> pullback_epi_along_mono(const B& b, const typename B::Mor& m,
                                                             const typename B::Mor& e) {
  auto q = b.cokernel(m);
  if (!q) return std::nullopt;
  auto k = b.kernel(b.compose(*q, e));
  if (!k) return std::nullopt;
  auto l = b.lift_mono(m, b.compose(e, *k));
  if (!l) return std::nullopt;
  return Span<typename B::Mor>{*l, *k};
}

/// Pushout of an admissible mono m : X -> Y along an admissible epi e : X -> Z,
/// built as the cokernel of ker(e) -> X -> Y. Returns (Y -> Q, Z -> Q).
template <class B>
std::optional<Span<typename B::Mor>> pushout_mono_along_epi(const B& b, const typename B::Mor& m,
                                                            const typename B::Mor& e) {
  auto k = b.kernel(e);
  if (!k) return std::nullopt;
  auto c = b.cokernel(b.compose(m, *k));
  if (!c) return std::nullopt;
  auto d = b.descend_epi(e, b.compose(*c, m));
  if (!d) return std::nullopt;
  return Span<typename B::Mor>{*c, *d};
}

/// (px, py) is a pullback of (f : X -> Z, g : Y -> Z) against test objects of size <= bound.
template <class B>
bool verify_pullback(const B& b, const typename B::Mor& f, const typename B::Mor& g,
                     const typename B::Mor& px, const typename B::Mor& py, int bound) {
  if (b.compose(f, px) != b.compose(g, py)) return false;
  int P = b.src(px);
  for (int t = 0; t <= bound; ++t) {
    auto hs = b.homs(t, P);
    auto xs = b.homs(t, b.src(f));
    auto ys = b.homs(t, b.src(g));
    for (auto& u : xs)
      for (auto& v : ys) {
        if (b.compose(f, u) != b.compose(g, v)) continue;
        int hits = 0;
        for (auto& h : hs)
          if (b.compose(px, h) == u && b.compose(py, h) == v) ++hits;
        if (hits != 1) return false;
      }
  }
  return true;
}

template <class B>
bool verify_pushout(const B& b, const typename B::Mor& f, const typename B::Mor& g,
                    const typename B::Mor& qx, const typename B::Mor& qy, int bound) {
  Opposite<B> op(b);
  return verify_pullback(op, f, g, qx, qy, bound);
}

// ---------------------------------------------------------------------------
// Stringency.

template <class Mor>
struct StringencyWitness {
  Mor f;
  Mor coim_to_im;
};

/// Natural map coim(f) -> im(f), when f has a kernel and a cokernel.
template <class B>
std::optional<typename B::Mor> coimage_to_image(const B& b, const typename B::Mor& f) {
  auto k = b.kernel(f);
  auto c = b.cokernel(f);
  if (!k || !c) return std::nullopt;
  auto coim = b.cokernel(*k);  // A -> coim
  auto im = b.kernel(*c);      // im -> B
  if (!coim || !im) return std::nullopt;
  auto g = b.lift_mono(*im, f);
  if (!g) return std::nullopt;
  return b.descend_epi(*coim, *g);
}

/// First morphism (sizes ascending, homs in backend order) with a kernel and a
/// cokernel whose coimage-to-image map is not invertible.
template <class B>
std::optional<StringencyWitness<typename B::Mor>> stringency_probe(const B& b, int size_bound) {
  for (int a = 0; a <= size_bound; ++a)
    for (int c = 0; c <= size_bound; ++c)
      for (auto& f : b.homs(a, c)) {
        auto phi = coimage_to_image(b, f);
        if (!phi) continue;
        if (!b.is_iso(*phi)) return StringencyWitness<typename B::Mor>{f, *phi};
      }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// 3x3 diagrams.

/// rows[i] = (X_i -> Y_i, Y_i -> Z_i) for i = top, middle, bottom;
/// cols[j] = (top_j -> middle_j, middle_j -> bottom_j) for j = first, second, third column.
template <class Mor>
struct NineDiagram {
  std::array<std::pair<Mor, Mor>, 3> rows, cols;
};

struct LemmaVerdict {
  bool hypotheses = false;
  bool holds = false;
  std::string detail;
};

template <class B>
LemmaVerdict nine_lemma_check(const B& b, const NineDiagram<typename B::Mor>& D) {
  LemmaVerdict v;
  for (int i = 0; i < 3; ++i)
    if (!is_short_exact(b, D.rows[i].first, D.rows[i].second)) {
      v.detail = "row " + std::to_string(i) + " not short exact";
      return v;
    }
  for (int j = 1; j < 3; ++j)
    if (!is_short_exact(b, D.cols[j].first, D.cols[j].second)) {
      v.detail = "column " + std::to_string(j) + " not short exact";
      return v;
    }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto h_top = j == 0 ? D.rows[i].first : D.rows[i].second;
      auto h_bot = j == 0 ? D.rows[i + 1].first : D.rows[i + 1].second;
      auto v_left = i == 0 ? D.cols[j].first : D.cols[j].second;
      auto v_right = i == 0 ? D.cols[j + 1].first : D.cols[j + 1].second;
      if (b.compose(h_bot, v_left) != b.compose(v_right, h_top)) {
        v.detail = "square (" + std::to_string(i) + "," + std::to_string(j) + ") does not commute";
        return v;
      }
    }
  v.hypotheses = true;
  v.holds = is_short_exact(b, D.cols[0].first, D.cols[0].second);
  if (!v.holds) v.detail = "first column not short exact";
  return v;
}

template <class B>
typename B::Mor random_adm_mono(const B& b, std::mt19937_64& rng, int target, int max_src) {
  std::vector<typename B::Mor> monos;
  for (int s = 0; s <= std::min(target, max_src); ++s)
    for (auto& f : b.homs(s, target))
      if (b.is_adm_mono(f)) monos.push_back(f);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  return monos[pick(rng)];
}

/// Random 3x3 diagram from two admissible subobjects A, B' of a middle object B:
/// A' = A meet B', everything else by cokernels.
template <class B>
std::optional<NineDiagram<typename B::Mor>> random_nine_diagram(const B& b, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> sz(0, bound);
  int mid = sz(rng);
  auto a = random_adm_mono(b, rng, mid, bound);   // A -> B
  auto bp = random_adm_mono(b, rng, mid, bound);  // B' -> B
  auto qbp = b.cokernel(bp);                      // B -> B''
  auto qa = b.cokernel(a);                        // B -> C
  if (!qbp || !qa) return std::nullopt;
  auto k = b.kernel(b.compose(*qbp, a));  // A' -> A
  if (!k) return std::nullopt;
  auto ab = b.lift_mono(bp, b.compose(a, *k));  // A' -> B'
  auto qab = b.cokernel(*ab);                   // B' -> C'
  auto qk = b.cokernel(*k);                     // A -> A''
  if (!ab || !qab || !qk) return std::nullopt;
  auto cc = b.descend_epi(*qab, b.compose(*qa, bp));   // C' -> C
  auto ab2 = b.descend_epi(*qk, b.compose(*qbp, a));   // A'' -> B''
  if (!cc || !ab2) return std::nullopt;
  auto qcc = b.cokernel(*cc);  // C -> C''
  if (!qcc) return std::nullopt;
  auto bc2 = b.descend_epi(*qbp, b.compose(*qcc, *qa));  // B'' -> C''
  if (!bc2) return std::nullopt;
  NineDiagram<typename B::Mor> D;
  D.rows = {std::make_pair(*ab, *qab), std::make_pair(a, *qa), std::make_pair(*ab2, *bc2)};
  D.cols = {std::make_pair(*k, *qk), std::make_pair(bp, *qbp), std::make_pair(*cc, *qcc)};
  return D;
}

// ---------------------------------------------------------------------------
// Pullback squares of monos.

/// top : B1 -> A1, bottom : B0 -> A0 admissible monos; vertical maps left : B1 -> B0,
/// right : A1 -> A0.
template <class Mor>
struct MonoSquare {
  Mor top, bottom, left, right;
};

template <class Mor>
struct CokerVerdict {
  LemmaVerdict verdict;
  std::optional<Mor> induced;  // C1 -> C0
};

template <class B>
CokerVerdict<typename B::Mor> mono_pullback_coker(const B& b, const MonoSquare<typename B::Mor>& s) {
  CokerVerdict<typename B::Mor> out;
  auto& v = out.verdict;
  if (!b.is_adm_mono(s.top) || !b.is_adm_mono(s.bottom)) {
    v.detail = "horizontal maps must be admissible monos";
    return out;
  }
  if (!is_admissible(b, s.left) || !is_admissible(b, s.right)) {
    v.detail = "vertical maps must be admissible";
    return out;
  }
  if (b.compose(s.right, s.top) != b.compose(s.bottom, s.left)) {
    v.detail = "square does not commute";
    return out;
  }
  auto q0 = b.cokernel(s.bottom);
  if (!q0) {
    v.detail = "bottom mono has no cokernel";
    return out;
  }
  // B1 must be the kernel of A1 -> A0 -> C0.
  auto k = b.kernel(b.compose(*q0, s.right));
  auto h = k ? b.lift_mono(*k, s.top) : std::nullopt;
  if (!h || !b.is_iso(*h)) {
    v.detail = "square is not a pullback";
    return out;
  }
  v.hypotheses = true;
  auto q1 = b.cokernel(s.top);
  if (!q1) {
    v.detail = "top mono has no cokernel";
    return out;
  }
  out.induced = b.descend_epi(*q1, b.compose(*q0, s.right));
  v.holds = out.induced && b.is_adm_mono(*out.induced);
  if (!v.holds) v.detail = "induced map on cokernels is not an admissible mono";
  return out;
}

template <class B>
std::optional<MonoSquare<typename B::Mor>> random_mono_square(const B& b, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> sz(0, bound);
  int a0 = sz(rng), a1 = sz(rng);
  auto bottom = random_adm_mono(b, rng, a0, bound);
  auto hs = b.homs(a1, a0);
  std::vector<typename B::Mor> adm;
  for (auto& f : hs)
    if (is_admissible(b, f)) adm.push_back(f);
  if (adm.empty()) return std::nullopt;
  auto right = adm[std::uniform_int_distribution<std::size_t>(0, adm.size() - 1)(rng)];
  auto q0 = b.cokernel(bottom);
  if (!q0) return std::nullopt;
  auto top = b.kernel(b.compose(*q0, right));
  if (!top) return std::nullopt;
  auto left = b.lift_mono(bottom, b.compose(right, *top));
  if (!left) return std::nullopt;
  return MonoSquare<typename B::Mor>{*top, bottom, *left, right};
}

// ---------------------------------------------------------------------------
// Snake sequence of a composable pair.

/// For admissible f : A -> B, g : B -> C with g f admissible, the six-term sequence
/// ker f -> ker gf -> ker g -> coker f -> coker gf -> coker g, or nullopt when a
/// piece is missing.
template <class B>
std::optional<std::vector<typename B::Mor>> snake_sequence(const B& b, const typename B::Mor& f,
                                                           const typename B::Mor& g) {
  auto gf = b.compose(g, f);
  auto kf = b.kernel(f), kgf = b.kernel(gf), kg = b.kernel(g);
  auto cf = b.cokernel(f), cgf = b.cokernel(gf), cg = b.cokernel(g);
  if (!kf || !kgf || !kg || !cf || !cgf || !cg) return std::nullopt;
  auto m1 = b.lift_mono(*kgf, *kf);
  auto m2 = b.lift_mono(*kg, b.compose(f, *kgf));
  auto m3 = b.compose(*cf, *kg);
  auto m4 = b.descend_epi(*cf, b.compose(*cgf, g));
  auto m5 = b.descend_epi(*cgf, *cg);
  if (!m1 || !m2 || !m4 || !m5) return std::nullopt;
  return std::vector<typename B::Mor>{*m1, *m2, m3, *m4, *m5};
}

/// The snake sequence is exact (left exact at ker f, right exact at coker g).
template <class B>
bool snake_check(const B& b, const typename B::Mor& f, const typename B::Mor& g) {
  auto s = snake_sequence(b, f, g);
  if (!s) return false;
  return classify_sequence(b, *s).cls == SeqClass::Exact;
}

// ---------------------------------------------------------------------------
// Proto-exact axioms, exhaustively.

struct AxiomReport {
  bool ok = true;
  std::size_t checked = 0;
  std::string failure;

  nlohmann::json to_json() const { return {{"ok", ok}, {"checked", checked}, {"failure", failure}}; }
};

/// Isos are admissible both ways; admissible monos/epis compose; pullbacks of
/// admissible epis along admissible monos and pushouts of admissible monos along
/// admissible epis exist with the right type. Universal properties are verified
/// against test objects of size <= verify_bound.
template <class B>
AxiomReport proto_exact_axioms(const B& b, int bound, int verify_bound) {
  using Mor = typename B::Mor;
  AxiomReport r;
  auto bad = [&](const std::string& what) {
    if (r.ok) r.failure = what;
    r.ok = false;
  };
  std::vector<std::vector<std::vector<Mor>>> H(bound + 1, std::vector<std::vector<Mor>>(bound + 1));
  for (int x = 0; x <= bound; ++x)
    for (int y = 0; y <= bound; ++y) H[x][y] = b.homs(x, y);
  for (int x = 0; x <= bound; ++x) {
    for (auto& f : b.automorphisms(x)) {
      ++r.checked;
      if (!b.is_adm_mono(f) || !b.is_adm_epi(f)) bad("iso not admissible");
    }
    if (!b.is_zero(b.identity(0))) bad("zero object has a nonzero endomorphism");
    if (H[0][x].size() != 1 || H[x][0].size() != 1) bad("0 is not a zero object");
  }
  for (int x = 0; x <= bound; ++x)
    for (int y = 0; y <= bound; ++y)
      for (int z = 0; z <= bound; ++z)
        for (auto& f : H[x][y])
          for (auto& g : H[y][z]) {
            bool mf = b.is_adm_mono(f), mg = b.is_adm_mono(g);
            bool ef = b.is_adm_epi(f), eg = b.is_adm_epi(g);
            if (!(mf && mg) && !(ef && eg)) continue;
            ++r.checked;
            auto h = b.compose(g, f);
            if (mf && mg && !b.is_adm_mono(h)) bad("admissible monos do not compose");
            if (ef && eg && !b.is_adm_epi(h)) bad("admissible epis do not compose");
          }
  for (int x = 0; x <= bound; ++x)
    for (int y = 0; y <= bound; ++y)
      for (int z = 0; z <= bound; ++z)
        for (auto& m : H[x][z]) {
          if (!b.is_adm_mono(m)) continue;
          for (auto& e : H[y][z]) {
            if (!b.is_adm_epi(e)) continue;
            ++r.checked;
            auto p = pullback_epi_along_mono(b, m, e);
            if (!p) {
              bad("pullback of admissible epi along admissible mono missing");
              continue;
            }
            if (!b.is_adm_epi(p->left) || !b.is_adm_mono(p->right)) bad("pullback has the wrong type");
            if (x <= verify_bound && y <= verify_bound && z <= verify_bound &&
                !verify_pullback(b, m, e, p->left, p->right, verify_bound))
              bad("pullback universal property fails");
          }
        }
  for (int x = 0; x <= bound; ++x)
    for (int y = 0; y <= bound; ++y)
      for (int z = 0; z <= bound; ++z)
        for (auto& m : H[x][y]) {
          if (!b.is_adm_mono(m)) continue;
          for (auto& e : H[x][z]) {
            if (!b.is_adm_epi(e)) continue;
            ++r.checked;
            auto p = pushout_mono_along_epi(b, m, e);
            if (!p) {
              bad("pushout of admissible mono along admissible epi missing");
              continue;
            }
            if (!b.is_adm_epi(p->left) || !b.is_adm_mono(p->right)) bad("pushout has the wrong type");
            if (x <= verify_bound && y <= verify_bound && z <= verify_bound &&
                !verify_pushout(b, m, e, p->left, p->right, verify_bound))
              bad("pushout universal property fails");
          }
        }
  return r;
}

} // namespace segal
