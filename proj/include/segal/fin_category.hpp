#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "segal/diagram.hpp"
#include "segal/error.hpp"

namespace segal {

/// A finite category given by explicit tables. Morphisms are numbered; comp[g*M+f]
/// is g . f, or -1 when not composable.
struct FinCategory {
  int objects = 0;
  std::vector<int> src, dst;
  std::vector<int> ident;
  std::vector<std::vector<std::vector<int>>> homs;
  std::vector<int> comp;
  std::vector<std::string> labels;

  int morphisms() const { return static_cast<int>(src.size()); }
  int compose(int g, int f) const {
    const int c = comp[static_cast<std::size_t>(g) * morphisms() + f];
    require(c >= 0, errc::invalid_arguments, "fin category: morphisms not composable");
    return c;
  }
  const std::vector<int>& hom(int a, int b) const { return homs[a][b]; }

  bool is_iso(int f) const {
    for (int g : homs[dst[f]][src[f]])
      if (compose(g, f) == ident[src[f]] && compose(f, g) == ident[dst[f]]) return true;
    return false;
  }
  bool isomorphic(int a, int b) const {
    for (int f : homs[a][b])
      if (is_iso(f)) return true;
    return false;
  }

  /// Builder: adds an object and its identity.
  int add_object(std::string label = {}) {
    const int a = objects++;
    labels.push_back(label.empty() ? std::to_string(a) : std::move(label));
    for (auto& row : homs) row.resize(objects);
    homs.emplace_back(objects);
    ident.push_back(add_morphism(a, a));
    return a;
  }
  int add_morphism(int a, int b) {
    const int f = morphisms();
    src.push_back(a);
    dst.push_back(b);
    homs[a][b].push_back(f);
    return f;
  }
  /// Sizes the composition table; entries for identities are filled in.
  void start_composition() {
    const int m = morphisms();
    comp.assign(static_cast<std::size_t>(m) * m, -1);
    for (int f = 0; f < m; ++f) {
      set(ident[dst[f]], f, f);
      set(f, ident[src[f]], f);
    }
  }
  void set(int g, int f, int gf) { comp[static_cast<std::size_t>(g) * morphisms() + f] = gf; }

  /// Checks endpoints, identities and associativity; returns the first problem.
  std::optional<std::string> check() const {
    const int m = morphisms();
    if (comp.size() != static_cast<std::size_t>(m) * m) return "composition table has the wrong size";
    for (int g = 0; g < m; ++g)
      for (int f = 0; f < m; ++f) {
        const int c = comp[static_cast<std::size_t>(g) * m + f];
        if ((dst[f] == src[g]) != (c >= 0)) return "composition defined off composable pairs";
        if (c >= 0 && (src[c] != src[f] || dst[c] != dst[g])) return "composite has wrong endpoints";
      }
    for (int f = 0; f < m; ++f)
      if (compose(ident[dst[f]], f) != f || compose(f, ident[src[f]]) != f) return "identity not neutral";
    for (int f = 0; f < m; ++f)
      for (int c = 0; c < objects; ++c)
        for (int g : homs[dst[f]][c])
          for (int d = 0; d < objects; ++d)
            for (int h : homs[c][d])
              if (compose(h, compose(g, f)) != compose(compose(h, g), f)) return "composition not associative";
    return std::nullopt;
  }

  static FinCategory discrete(int n) {
    FinCategory c;
    for (int i = 0; i < n; ++i) c.add_object();
    c.start_composition();
    return c;
  }

  nlohmann::json to_json() const {
    nlohmann::json homs_j = nlohmann::json::array();
    for (int a = 0; a < objects; ++a)
      for (int b = 0; b < objects; ++b)
        if (!homs[a][b].empty()) homs_j.push_back({{"src", labels[a]}, {"dst", labels[b]}, {"morphisms", homs[a][b]}});
    nlohmann::json table = nlohmann::json::array();
    for (int g = 0; g < morphisms(); ++g)
      for (int f = 0; f < morphisms(); ++f) {
        const int c = comp[static_cast<std::size_t>(g) * morphisms() + f];
        if (c >= 0) table.push_back({g, f, c});
      }
    return {{"objects", labels}, {"identities", ident}, {"homs", homs_j}, {"composition", table}};
  }
};

struct CatFunctor {
  const FinCategory* source = nullptr;
  const FinCategory* target = nullptr;
  std::vector<int> on_objects, on_morphisms;

  std::optional<std::string> check() const {
    const auto &s = *source, &t = *target;
    if (static_cast<int>(on_objects.size()) != s.objects || static_cast<int>(on_morphisms.size()) != s.morphisms())
      return "functor tables have the wrong size";
    for (int f = 0; f < s.morphisms(); ++f) {
      const int g = on_morphisms[f];
      if (g < 0 || g >= t.morphisms() || t.src[g] != on_objects[s.src[f]] || t.dst[g] != on_objects[s.dst[f]])
        return "morphism " + std::to_string(f) + " lands on the wrong endpoints";
    }
    for (int a = 0; a < s.objects; ++a)
      if (on_morphisms[s.ident[a]] != t.ident[on_objects[a]]) return "identity not preserved";
    for (int f = 0; f < s.morphisms(); ++f)
      for (int c = 0; c < s.objects; ++c)
        for (int g : s.homs[s.dst[f]][c])
          if (on_morphisms[s.compose(g, f)] != t.compose(on_morphisms[g], on_morphisms[f]))
            return "composition not preserved";
    return std::nullopt;
  }

  static CatFunctor identity(const FinCategory& c) {
    CatFunctor F{&c, &c, {}, {}};
    for (int a = 0; a < c.objects; ++a) F.on_objects.push_back(a);
    for (int f = 0; f < c.morphisms(); ++f) F.on_morphisms.push_back(f);
    return F;
  }
};

inline CatFunctor compose(const CatFunctor& G, const CatFunctor& F) {
  require(F.target == G.source, errc::invalid_arguments, "functors not composable");
  CatFunctor H{F.source, G.target, {}, {}};
  for (int a : F.on_objects) H.on_objects.push_back(G.on_objects[a]);
  for (int f : F.on_morphisms) H.on_morphisms.push_back(G.on_morphisms[f]);
  return H;
}

/// Searches for a natural isomorphism F => G, object by object.
inline bool naturally_isomorphic(const CatFunctor& F, const CatFunctor& G) {
  require(F.source == G.source && F.target == G.target, errc::invalid_arguments, "functors with different endpoints");
  const auto &s = *F.source, &t = *F.target;
  std::vector<int> eta(s.objects, -1);
  auto consistent = [&](int a) {
    for (int f = 0; f < s.morphisms(); ++f) {
      const int u = s.src[f], v = s.dst[f];
      if (u > a || v > a) continue;
      if (t.compose(eta[v], F.on_morphisms[f]) != t.compose(G.on_morphisms[f], eta[u])) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int a) -> bool {
    if (a == s.objects) return true;
    for (int c : t.hom(F.on_objects[a], G.on_objects[a])) {
      if (!t.is_iso(c)) continue;
      eta[a] = c;
      if (consistent(a) && self(self, a + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

/// Essential surjectivity by iso search in the target; full faithfulness by
/// comparing hom sets between iso-class representatives of the source.
inline EquivalenceReport is_equivalence(const CatFunctor& F) {
  if (auto bad = F.check()) fail(errc::invalid_input, "not a functor: " + *bad);
  const auto &s = *F.source, &t = *F.target;
  EquivalenceReport rep;
  std::vector<int> reps;
  for (int a = 0; a < s.objects; ++a) {
    bool fresh = true;
    for (int r : reps)
      if (s.isomorphic(r, a)) fresh = false;
    if (fresh) reps.push_back(a);
  }
  rep.source_classes = reps.size();
  std::vector<int> treps;
  for (int b = 0; b < t.objects; ++b) {
    bool fresh = true;
    for (int r : treps)
      if (t.isomorphic(r, b)) fresh = false;
    if (fresh) treps.push_back(b);
  }
  rep.target_classes = treps.size();
  rep.essentially_surjective = true;
  for (int b = 0; b < t.objects && rep.essentially_surjective; ++b) {
    bool hit = false;
    for (int a : reps)
      if (t.isomorphic(F.on_objects[a], b)) hit = true;
    if (!hit) {
      rep.essentially_surjective = false;
      rep.witness = {{"kind", "not essentially surjective"}, {"object", t.labels[b]}};
    }
  }
  rep.fully_faithful = true;
  for (int a : reps)
    for (int b : reps) {
      if (!rep.fully_faithful) break;
      ++rep.pairs_checked;
      const auto& hs = s.hom(a, b);
      const auto& ht = t.hom(F.on_objects[a], F.on_objects[b]);
      std::vector<int> img;
      for (int f : hs) img.push_back(F.on_morphisms[f]);
      std::sort(img.begin(), img.end());
      const bool injective = std::adjacent_find(img.begin(), img.end()) == img.end();
      if (!injective || img.size() != ht.size()) {
        rep.fully_faithful = false;
        rep.witness = {{"kind", injective ? "not full" : "not faithful"},
                       {"source", s.labels[a]},
                       {"target", s.labels[b]},
                       {"source_homs", hs.size()},
                       {"target_homs", ht.size()}};
      }
    }
  if (rep.witness.is_null() && !rep.essentially_surjective) rep.witness = {{"kind", "not essentially surjective"}};
  rep.verdict = rep.essentially_surjective && rep.fully_faithful;
  return rep;
}

/// Cells over the maximal elements of a poset, glued along pairwise intersections:
/// glue[i] restricts pieces[glue[i].left] and pieces[glue[i].right] to a common
/// category.
struct PosetDiagram {
  struct Glue {
    int left = 0, right = 0;
    const FinCategory* over = nullptr;
    CatFunctor to_left_side, to_right_side;  // pieces[left] -> over, pieces[right] -> over
  };
  std::vector<const FinCategory*> pieces;
  std::vector<Glue> glue;
};

struct PosetLimit {
  FinCategory category;
  std::vector<std::vector<int>> object_tuples, morphism_tuples;

  CatFunctor projection(const PosetDiagram& P, int i) const {
    CatFunctor p{&category, P.pieces[i], {}, {}};
    for (const auto& t : object_tuples) p.on_objects.push_back(t[i]);
    for (const auto& t : morphism_tuples) p.on_morphisms.push_back(t[i]);
    return p;
  }
};

/// Strict limit: families on the maximal elements agreeing after restriction to
/// every pairwise intersection; morphisms componentwise.
inline PosetLimit limit_over_poset(const PosetDiagram& P) {
  const int m = static_cast<int>(P.pieces.size());
  require(m >= 1, errc::invalid_input, "limit over an empty family");
  for (const auto& g : P.glue) {
    require(g.left >= 0 && g.left < m && g.right >= 0 && g.right < m, errc::invalid_input, "glue index out of range");
    require(g.to_left_side.source == P.pieces[g.left] && g.to_right_side.source == P.pieces[g.right] &&
                g.to_left_side.target == g.over && g.to_right_side.target == g.over,
            errc::invalid_input, "restriction functor endpoints do not match the poset");
    if (auto bad = g.to_left_side.check()) fail(errc::invalid_input, "inconsistent restriction functor: " + *bad);
    if (auto bad = g.to_right_side.check()) fail(errc::invalid_input, "inconsistent restriction functor: " + *bad);
  }
  PosetLimit L;
  // tuples by backtracking over the pieces, checking glue as soon as both sides are set
  auto tuples = [&](bool objects) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(m);
    std::size_t steps = 0;
    auto rec = [&](auto&& self, int i) -> void {
      if (i == m) {
        out.push_back(cur);
        check_cap(out.size(), "limit tuples");
        return;
      }
      const int count = objects ? P.pieces[i]->objects : P.pieces[i]->morphisms();
      for (int x = 0; x < count; ++x) {
        check_cap(++steps, "limit search");
        cur[i] = x;
        bool ok = true;
        for (const auto& g : P.glue) {
          if (std::max(g.left, g.right) != i) continue;
          const auto& fl = g.to_left_side;
          const auto& fr = g.to_right_side;
          const int a = objects ? fl.on_objects[cur[g.left]] : fl.on_morphisms[cur[g.left]];
          const int b = objects ? fr.on_objects[cur[g.right]] : fr.on_morphisms[cur[g.right]];
          if (a != b) ok = false;
        }
        if (ok) self(self, i + 1);
      }
    };
    rec(rec, 0);
    return out;
  };
  L.object_tuples = tuples(true);
  L.morphism_tuples = tuples(false);
  auto& C = L.category;
  std::map<std::vector<int>, int> obj_id, mor_id;
  for (const auto& t : L.object_tuples) {
    std::string label;
    for (int i = 0; i < m; ++i) label += (i ? "|" : "") + P.pieces[i]->labels[t[i]];
    obj_id[t] = static_cast<int>(C.labels.size());
    C.objects++;
    C.labels.push_back(label);
  }
  C.homs.assign(C.objects, std::vector<std::vector<int>>(C.objects));
  for (const auto& t : L.morphism_tuples) {
    std::vector<int> s(m), d(m);
    for (int i = 0; i < m; ++i) {
      s[i] = P.pieces[i]->src[t[i]];
      d[i] = P.pieces[i]->dst[t[i]];
    }
    mor_id[t] = C.add_morphism(obj_id.at(s), obj_id.at(d));
  }
  for (const auto& t : L.object_tuples) {
    std::vector<int> id(m);
    for (int i = 0; i < m; ++i) id[i] = P.pieces[i]->ident[t[i]];
    C.ident.push_back(mor_id.at(id));
  }
  C.comp.assign(static_cast<std::size_t>(C.morphisms()) * C.morphisms(), -1);
  for (const auto& tg : L.morphism_tuples)
    for (const auto& tf : L.morphism_tuples) {
      std::vector<int> gf(m);
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) {
        if (P.pieces[i]->dst[tf[i]] != P.pieces[i]->src[tg[i]]) ok = false;
        else gf[i] = P.pieces[i]->compose(tg[i], tf[i]);
      }
      if (ok) C.set(mor_id.at(tg), mor_id.at(tf), mor_id.at(gf));
    }
  return L;
}

/// Explicit category on the given diagrams with every natural transformation.
template <class Cat>
FinCategory materialize(const DiagramEngine<Cat>& e, const std::vector<Diagram<typename Cat::Mor>>& objs,
                        std::vector<std::vector<typename Cat::Mor>>* components = nullptr) {
  using Mor = typename Cat::Mor;
  FinCategory C;
  std::vector<std::vector<Mor>> comps;
  std::map<std::pair<std::pair<int, int>, std::vector<Mor>>, int> ids;
  for (const auto& x : objs) {
    C.objects++;
    C.labels.push_back(e.to_json(x).dump());
  }
  C.homs.assign(C.objects, std::vector<std::vector<int>>(C.objects));
  for (int a = 0; a < C.objects; ++a)
    for (int b = 0; b < C.objects; ++b)
      e.for_each_hom(objs[a], objs[b], [&](const std::vector<Mor>& t) {
        ids[{{a, b}, t}] = C.add_morphism(a, b);
        comps.push_back(t);
        check_cap(comps.size(), "materialized morphisms");
        return true;
      });
  for (int a = 0; a < C.objects; ++a) {
    std::vector<Mor> id;
    for (int v = 0; v < e.shape().size(); ++v) id.push_back(e.cat().identity(objs[a].obj[v]));
    C.ident.push_back(ids.at({{a, a}, id}));
  }
  C.comp.assign(static_cast<std::size_t>(C.morphisms()) * C.morphisms(), -1);
  for (int g = 0; g < C.morphisms(); ++g)
    for (int b = 0; b < C.objects; ++b)
      for (int f : C.homs[b][C.src[g]]) {
        std::vector<Mor> gf;
        for (int v = 0; v < e.shape().size(); ++v) gf.push_back(e.cat().compose(comps[g][v], comps[f][v]));
        C.set(g, f, ids.at({{b, C.dst[g]}, gf}));
      }
  if (components) *components = std::move(comps);
  return C;
}

} // namespace segal
