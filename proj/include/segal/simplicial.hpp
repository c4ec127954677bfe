#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "segal/combinatorics.hpp"
#include "segal/diagram.hpp"
#include "segal/fin_category.hpp"
#include "segal/grid.hpp"

namespace segal {

enum class Transform { LeftPath, RightPath, Edgewise, Constant };

inline const char* transform_name(Transform t) {
  switch (t) {
    case Transform::LeftPath: return "left_path";
    case Transform::RightPath: return "right_path";
    case Transform::Edgewise: return "edgewise";
    case Transform::Constant: return "constant";
  }
  return "?";
}

/// A composite reindexing Δ -> Δ, outermost transform first: the simplicial object
/// T1 T2 ... X has (T1 T2 ... X)_n = X_{N(n)} with N applied T1 first.
struct Reindexing {
  std::vector<Transform> ts;

  static int level_of(Transform t, int n) {
    switch (t) {
      case Transform::LeftPath:
      case Transform::RightPath: return n + 1;
      case Transform::Edgewise: return 2 * n + 1;
      case Transform::Constant: return 0;
    }
    return n;
  }
  int level(int n) const {
    for (auto t : ts) n = level_of(t, n);
    return n;
  }

  static MonotoneMap apply_one(Transform t, const MonotoneMap& th) {
    const int m = th.k(), n = th.n;
    std::vector<int> v;
    switch (t) {
      case Transform::LeftPath:
        v.push_back(0);
        for (int x : th.v) v.push_back(x + 1);
        return MonotoneMap(n + 1, v);
      case Transform::RightPath:
        v = th.v;
        v.push_back(n + 1);
        return MonotoneMap(n + 1, v);
      case Transform::Edgewise:
        v = th.v;
        for (int y = m; y >= 0; --y) v.push_back(2 * n + 1 - th.v[y]);
        return MonotoneMap(2 * n + 1, v);
      case Transform::Constant: return MonotoneMap(0, {0});
    }
    return th;
  }
  /// Image of theta: [m] -> [n] under the reindexing.
  MonotoneMap apply(MonotoneMap th) const {
    for (auto t : ts) th = apply_one(t, th);
    return th;
  }
  /// Vertices of X_{N(n)} seen by the subset I of [n].
  std::vector<int> vertices(const Subset& I) const {
    auto v = apply(inclusion_map(I)).v;
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }
  nlohmann::json to_json() const {
    nlohmann::json a = nlohmann::json::array();
    for (auto t : ts) a.push_back(transform_name(t));
    return a;
  }
};

struct SegalCheck {
  int n = 0, d = 0;
  Side side = Side::Lower;
  std::vector<std::vector<int>> pieces, base_pieces;
  // nonzero grid labels not seen by any piece, recovered by the equivalence
  std::vector<std::vector<int>> uncovered;
  int base_level = 0;
  EquivalenceReport eq;

  nlohmann::json to_json() const {
    auto j = eq.to_json();
    j["n"] = n;
    j["d"] = d;
    j["side"] = side_name(side);
    j["pieces"] = pieces;
    j["base_pieces"] = base_pieces;
    j["base_level"] = base_level;
    j["uncovered"] = uncovered;
    return j;
  }
};

/// Levels of a reindexed k-dimensional grid construction over a bounded skeletal
/// category: level n is the category of valid diagrams on Fun([k], [N(n)]).
template <class Cat>
class SimplicialCategory {
public:
  using Mor = typename Cat::Mor;
  using D = Diagram<Mor>;

  SimplicialCategory(const Cat& c, int k, Variant v, Reindexing r = {}) : c_(c), k_(k), variant_(v), r_(std::move(r)) {}

  const Cat& cat() const { return c_; }
  int k() const { return k_; }
  Variant variant() const { return variant_; }
  const Reindexing& reindexing() const { return r_; }
  int base_level(int n) const { return r_.level(n); }

  /// Same construction with one more transform applied outermost.
  SimplicialCategory with(Transform t) const {
    Reindexing r = r_;
    r.ts.insert(r.ts.begin(), t);
    return SimplicialCategory(c_, k_, variant_, r);
  }

  const Shape& shape(int n) { return glued(pieces_of({Subset::full(n)})); }
  const DiagramEngine<Cat>& engine(int n) { return engine_for(pieces_of({Subset::full(n)})); }
  const std::vector<D>& objects(int n) { return reps_for(pieces_of({Subset::full(n)})); }

  /// The diagram x at level n read along theta: [m] -> [n].
  D reindex(const D& x, int n, const MonotoneMap& theta) {
    const auto& src = shape(n);
    const auto& dst = shape(theta.k());
    return engine(theta.k()).apply(restriction(src, n, dst, theta), x, engine(n));
  }

  /// Materialized level with every natural transformation.
  const FinCategory& cell(int n) {
    auto& lv = level(n);
    return lv.cat;
  }

  /// Face and degeneracy functors between materialized levels, transporting along
  /// chosen isomorphisms onto the stored representatives.
  CatFunctor face(int i, int n) { return along(n, coface_map(n, i)); }
  CatFunctor degeneracy(int j, int n) { return along(n, codegeneracy_map(n, j)); }

  /// X_n -> lim over the maximal elements of the lower or upper d-Segal poset.
  SegalCheck segal_map_check(int n, int d, Side side, bool use_krull_schmidt = true) {
    SegalCheck out;
    out.n = n;
    out.d = d;
    out.side = side;
    out.base_level = base_level(n);
    auto P = segal_poset(n, d, side);
    for (const auto& I : P.maximal) out.pieces.push_back(I.members);
    auto key = pieces_of(P.maximal);
    out.base_pieces = key;
    const auto& sx = shape(n);
    const auto& sl = glued(key);
    for (int v = 0; v < sx.size(); ++v) {
      if (sx.zero[v]) continue;
      const auto& l = sx.labels[v];
      bool seen = false;
      for (const auto& piece : key)
        seen = seen || std::includes(piece.begin(), piece.end(), l.begin(), l.end());
      if (!seen) out.uncovered.push_back(l);
    }
    auto r = grid_restriction(sx, all_vertices(n), sl, [](const std::vector<int>& l) { return l; });
    out.eq = restriction_equivalence(engine(n), objects(n), engine_for(key), reps_for(key), r, use_krull_schmidt);
    return out;
  }

  /// Shape of the glued target for a family of base vertex sets.
  const Shape& glued(const std::vector<std::vector<int>>& key) {
    std::lock_guard<std::mutex> lock(*mu_);
    auto it = shapes_.find(key);
    if (it == shapes_.end()) it = shapes_.emplace(key, std::make_unique<Shape>(grid_shape(k_, key, variant_))).first;
    return *it->second;
  }
  const DiagramEngine<Cat>& engine_for(const std::vector<std::vector<int>>& key) {
    const Shape& s = glued(key);
    std::lock_guard<std::mutex> lock(*mu_);
    auto it = engines_.find(key);
    if (it == engines_.end()) it = engines_.emplace(key, std::make_unique<DiagramEngine<Cat>>(s, c_)).first;
    return *it->second;
  }
  const std::vector<D>& reps_for(const std::vector<std::vector<int>>& key) {
    const auto& e = engine_for(key);
    {
      std::lock_guard<std::mutex> lock(*mu_);
      auto it = reps_.find(key);
      if (it != reps_.end()) return it->second;
    }
    auto xs = e.enumerate();
    std::lock_guard<std::mutex> lock(*mu_);
    return reps_.emplace(key, std::move(xs)).first->second;
  }

  std::vector<std::vector<int>> pieces_of(const std::vector<Subset>& Is) const {
    std::vector<std::vector<int>> out;
    for (const auto& I : Is) out.push_back(r_.vertices(I));
    return out;
  }

private:
  struct Level {
    FinCategory cat;
    std::vector<std::vector<Mor>> comps;
    std::map<std::pair<std::pair<int, int>, std::vector<Mor>>, int> ids;
  };

  std::vector<int> all_vertices(int n) const {
    std::vector<int> V;
    for (int i = 0; i <= base_level(n); ++i) V.push_back(i);
    return V;
  }

  Restriction restriction(const Shape& src, int n, const Shape& dst, const MonotoneMap& theta) const {
    const auto phi = r_.apply(theta);
    return grid_restriction(src, all_vertices(n), dst, [&](const std::vector<int>& l) {
      std::vector<int> out;
      for (int x : l) out.push_back(phi.v[x]);
      return out;
    });
  }

  Level& level(int n) {
    {
      std::lock_guard<std::mutex> lock(*mu_);
      auto it = levels_.find(n);
      if (it != levels_.end()) return *it->second;
    }
    auto lv = std::make_unique<Level>();
    lv->cat = materialize(engine(n), objects(n), &lv->comps);
    for (int f = 0; f < lv->cat.morphisms(); ++f) lv->ids[{{lv->cat.src[f], lv->cat.dst[f]}, lv->comps[f]}] = f;
    std::lock_guard<std::mutex> lock(*mu_);
    return *levels_.emplace(n, std::move(lv)).first->second;
  }

  std::optional<std::vector<Mor>> find_iso(const DiagramEngine<Cat>& e, const D& x, const D& y) const {
    std::optional<std::vector<Mor>> out;
    e.for_each_hom(x, y, [&](const std::vector<Mor>& t) {
      for (int v = 0; v < e.shape().size(); ++v)
        if (!c_.is_iso(t[v])) return true;
      out = t;
      return false;
    });
    return out;
  }

  CatFunctor along(int n, const MonotoneMap& theta) {
    const int m = theta.k();
    auto& S = level(n);
    auto& T = level(m);
    const auto& es = engine(n);
    const auto& et = engine(m);
    const auto r = restriction(es.shape(), n, et.shape(), theta);
    const auto& xs = objects(n);
    const auto& ts = objects(m);
    std::map<D, int> rep_of;
    for (std::size_t i = 0; i < ts.size(); ++i) rep_of[ts[i]] = static_cast<int>(i);
    CatFunctor F{&S.cat, &T.cat, {}, {}};
    std::vector<std::vector<Mor>> iso(xs.size()), iso_inv(xs.size());
    for (std::size_t a = 0; a < xs.size(); ++a) {
      D img = et.apply(r, xs[a], es);
      const int b = rep_of.at(et.canonical_form(img));
      F.on_objects.push_back(b);
      auto phi = find_iso(et, img, ts[b]);
      require(phi.has_value(), errc::internal_error, "no isomorphism onto the canonical representative");
      iso[a] = *phi;
      for (const auto& f : *phi) iso_inv[a].push_back(c_.inverse(f));
    }
    for (int f = 0; f < S.cat.morphisms(); ++f) {
      const int a = S.cat.src[f], b = S.cat.dst[f];
      std::vector<Mor> g;
      for (int v = 0; v < et.shape().size(); ++v) {
        const Mor& comp = S.comps[f][r.node_map[v]];
        g.push_back(c_.compose(iso[b][v], c_.compose(comp, iso_inv[a][v])));
      }
      F.on_morphisms.push_back(T.ids.at({{F.on_objects[a], F.on_objects[b]}, g}));
    }
    return F;
  }

  const Cat& c_;
  int k_;
  Variant variant_;
  Reindexing r_;
  std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
  std::map<std::vector<std::vector<int>>, std::unique_ptr<Shape>> shapes_;
  std::map<std::vector<std::vector<int>>, std::unique_ptr<DiagramEngine<Cat>>> engines_;
  std::map<std::vector<std::vector<int>>, std::vector<D>> reps_;
  std::map<int, std::unique_ptr<Level>> levels_;
};

} // namespace segal
