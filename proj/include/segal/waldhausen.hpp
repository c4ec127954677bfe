#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "segal/combinatorics.hpp"
#include "segal/diagram.hpp"
#include "segal/error.hpp"
#include "segal/grid.hpp"
#include "segal/proto_exact.hpp"

namespace segal {

/// Shape of the cells of the k-dimensional construction in degree n.
inline const Shape& wald_shape(int k, int n, Variant v) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<Shape>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(k, n, static_cast<int>(v));
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<int> V;
    for (int i = 0; i <= n; ++i) V.push_back(i);
    it = cache.emplace(key, std::make_unique<Shape>(grid_shape(k, {V}, v))).first;
  }
  return *it->second;
}

inline std::vector<int> vertex_range(int n) {
  std::vector<int> V;
  for (int i = 0; i <= n; ++i) V.push_back(i);
  return V;
}

template <class Mor>
struct Cell {
  int k = 0, n = 0;
  Variant variant = Variant::Exact;
  Diagram<Mor> d;

  const Shape& shape() const { return wald_shape(k, n, variant); }
  bool operator==(const Cell&) const = default;
};

/// Grid arrows between labels a <= b: the composite along the elementary steps.
template <class Cat>
typename Cat::Mor cell_map(const Cat& c, const Cell<typename Cat::Mor>& A, const std::vector<int>& a,
                           const std::vector<int>& b) {
  const auto& s = A.shape();
  DiagramEngine<Cat> e(s, c);
  return e.composite(A.d, grid_path(s, vertex_range(A.n), a, b));
}

template <class Cat>
int cell_object(const Cell<typename Cat::Mor>& A, const std::vector<int>& label) {
  return A.d.obj[A.shape().node(label)];
}

/// Assembles a cell from objects and elementary arrows; arrows touching a zero
/// object default to zero maps, every other arrow must be given.
template <class Cat>
class CellBuilder {
public:
  using Mor = typename Cat::Mor;

  CellBuilder(const Cat& c, int k, int n, Variant v) : c_(c), k_(k), n_(n), v_(v), s_(wald_shape(k, n, v)) {
    obj_.assign(s_.size(), 0);
    mor_.assign(s_.edges.size(), std::nullopt);
  }

  CellBuilder& object(const std::vector<int>& label, int a) {
    obj_[s_.node(label)] = a;
    return *this;
  }
  CellBuilder& arrow(const std::vector<int>& from, const std::vector<int>& to, const Mor& f) {
    mor_[s_.edge(s_.node(from), s_.node(to))] = f;
    return *this;
  }

  Cell<Mor> build() const {
    Cell<Mor> A{k_, n_, v_, {obj_, {}}};
    for (std::size_t e = 0; e < s_.edges.size(); ++e) {
      auto [u, v] = s_.edges[e];
      if (mor_[e]) {
        A.d.mor.push_back(*mor_[e]);
        continue;
      }
      require(obj_[u] == 0 || obj_[v] == 0, errc::invalid_input,
              "missing arrow " + Shape::label_key(s_.labels[u]) + " -> " + Shape::label_key(s_.labels[v]));
      A.d.mor.push_back(c_.zero(obj_[u], obj_[v]));
    }
    return A;
  }

private:
  const Cat& c_;
  int k_, n_;
  Variant v_;
  const Shape& s_;
  std::vector<int> obj_;
  std::vector<std::optional<Mor>> mor_;
};

/// First failing condition, or nullopt when the cell is valid for its variant.
template <class Cat>
std::optional<nlohmann::json> validate_cell(const Cat& c, const Cell<typename Cat::Mor>& A) {
  DiagramEngine<Cat> e(A.shape(), c);
  return e.validate(A.d);
}

/// Every (k+1)-simplex whose sequence violates `as`.
template <class Cat>
nlohmann::json failing_simplices(const Cat& c, const Cell<typename Cat::Mor>& A, Variant as) {
  const auto& s = A.shape();
  DiagramEngine<Cat> e(s, c);
  nlohmann::json out = nlohmann::json::array();
  for (const auto& sq : s.seqs) {
    auto r = e.classify(A.d, sq);
    if (!satisfies(r.cls, as))
      out.push_back({{"simplex", sq.label}, {"class", seq_class_name(r.cls)}, {"violation", violation_name(r.cls, as)}});
  }
  return out;
}

template <class Cat>
nlohmann::json cell_to_json(const Cat& c, const Cell<typename Cat::Mor>& A) {
  DiagramEngine<Cat> e(A.shape(), c);
  auto j = e.to_json(A.d);
  j["k"] = A.k;
  j["n"] = A.n;
  j["variant"] = variant_name(A.variant);
  return j;
}

/// Cell read through a label map into a new shape.
template <class Cat, class F>
Cell<typename Cat::Mor> restrict_cell(const Cat& c, const Cell<typename Cat::Mor>& A, int k, int n, Variant v, F&& f) {
  const auto& src = A.shape();
  const auto& dst = wald_shape(k, n, v);
  DiagramEngine<Cat> es(src, c), ed(dst, c);
  auto r = grid_restriction(src, vertex_range(A.n), dst, f);
  return {k, n, v, ed.apply(r, A.d, es)};
}

/// theta^*: the cell at [n] read along theta: [m] -> [n].
template <class Cat>
Cell<typename Cat::Mor> reindex(const Cat& c, const Cell<typename Cat::Mor>& A, const MonotoneMap& theta) {
  require(theta.n == A.n, errc::invalid_arguments, "reindexing map has the wrong target");
  return restrict_cell(c, A, A.k, theta.k(), A.variant, [&](const std::vector<int>& l) {
    std::vector<int> out;
    for (int x : l) out.push_back(theta.v[x]);
    return out;
  });
}

template <class Cat>
Cell<typename Cat::Mor> face(const Cat& c, const Cell<typename Cat::Mor>& A, int i) {
  return reindex(c, A, coface_map(A.n, i));
}
template <class Cat>
Cell<typename Cat::Mor> degeneracy(const Cat& c, const Cell<typename Cat::Mor>& A, int j) {
  return reindex(c, A, codegeneracy_map(A.n, j));
}

inline std::vector<int> dual_label(const std::vector<int>& l, int n) {
  std::vector<int> out;
  for (auto it = l.rbegin(); it != l.rend(); ++it) out.push_back(n - *it);
  return out;
}

/// The same data over the opposite category, indices reversed by i -> n - i.
template <class Cat>
Cell<typename Cat::Mor> dualize(const Cat& c, const Cell<typename Cat::Mor>& A) {
  const auto& src = A.shape();
  const Variant v = dual_variant(A.variant);
  const auto& dst = wald_shape(A.k, A.n, v);
  DiagramEngine<Cat> es(src, c);
  Cell<typename Cat::Mor> B{A.k, A.n, v, {}};
  B.d.obj.resize(dst.size());
  for (int u = 0; u < dst.size(); ++u) B.d.obj[u] = A.d.obj[src.node(dual_label(dst.labels[u], A.n))];
  const auto V = vertex_range(A.n);
  for (const auto& [u, w] : dst.edges) {
    const auto from = dual_label(dst.labels[w], A.n), to = dual_label(dst.labels[u], A.n);
    B.d.mor.push_back(es.composite(A.d, grid_path(src, V, from, to)));
  }
  return B;
}

struct HypercubeReport {
  bool holds = true;
  std::size_t cubes_checked = 0;
  nlohmann::json failure = nullptr;

  nlohmann::json to_json() const { return {{"holds", holds}, {"cubes_checked", cubes_checked}, {"failure", failure}}; }
};

/// Limit (LeftExact) or colimit (RightExact) condition on every eligible cube,
/// tested through the universal property against all objects of size <= test_bound.
template <class Cat>
HypercubeReport hypercube_check(const Cat& c, const Cell<typename Cat::Mor>& A, Variant as, int test_bound) {
  using Mor = typename Cat::Mor;
  HypercubeReport rep;
  if (as == Variant::Exact) {
    auto l = hypercube_check(c, A, Variant::LeftExact, test_bound);
    if (!l.holds) return l;
    auto r = hypercube_check(c, A, Variant::RightExact, test_bound);
    r.cubes_checked += l.cubes_checked;
    return r;
  }
  if (as == Variant::Acyclic) return rep;
  const bool lim = as == Variant::LeftExact;
  const auto& s = A.shape();
  DiagramEngine<Cat> e(s, c);
  const auto V = vertex_range(A.n);
  auto map = [&](const std::vector<int>& a, const std::vector<int>& b) { return e.composite(A.d, grid_path(s, V, a, b)); };
  const int k = A.k;
  for (int v = 0; v < s.size(); ++v) {
    if (s.zero[v]) continue;
    const auto& beta = s.labels[v];
    if (lim ? beta[k] >= A.n : beta[0] < 1) continue;
    ++rep.cubes_checked;
    // atoms of the punctured cube: beta +- e_j
    std::vector<std::vector<int>> atoms;
    for (int j = 0; j <= k; ++j) {
      auto b = beta;
      b[j] += lim ? 1 : -1;
      atoms.push_back(b);
    }
    auto obj = [&](const std::vector<int>& l) { return A.d.obj[s.node(l)]; };
    std::vector<Mor> legs;
    for (const auto& a : atoms) legs.push_back(lim ? map(beta, a) : map(a, beta));
    for (int t = 0; t <= test_bound && rep.holds; ++t) {
      // all compatible families on the atoms
      std::vector<std::vector<Mor>> choices;
      for (const auto& a : atoms) choices.push_back(lim ? c.homs(t, obj(a)) : c.homs(obj(a), t));
      std::size_t cones = 0;
      std::vector<Mor> cur(atoms.size());
      std::vector<std::vector<Mor>> pair_maps;
      auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == atoms.size()) {
          ++cones;
          return;
        }
        for (const auto& f : choices[i]) {
          cur[i] = f;
          bool ok = true;
          for (std::size_t j = 0; j < i && ok; ++j) {
            auto top = atoms[j];
            top[i] += lim ? 1 : -1;
            if (lim) ok = c.compose(map(atoms[j], top), cur[j]) == c.compose(map(atoms[i], top), cur[i]);
            else ok = c.compose(cur[j], map(top, atoms[j])) == c.compose(cur[i], map(top, atoms[i]));
          }
          if (ok) self(self, i + 1);
        }
      };
      rec(rec, 0);
      std::set<std::vector<Mor>> images;
      const auto& direct = lim ? c.homs(t, A.d.obj[v]) : c.homs(A.d.obj[v], t);
      for (const auto& h : direct) {
        std::vector<Mor> img;
        for (const auto& l : legs) img.push_back(lim ? c.compose(l, h) : c.compose(h, l));
        images.insert(img);
      }
      if (images.size() != direct.size() || images.size() != cones) {
        rep.holds = false;
        rep.failure = {{"node", beta},
                       {"test_object", t},
                       {"cones", cones},
                       {"maps", direct.size()},
                       {"distinct_images", images.size()},
                       {"condition", lim ? "limit" : "colimit"}};
      }
    }
    if (!rep.holds) break;
  }
  return rep;
}

inline Variant kan_right_output(Variant in) {
  return in == Variant::RightExact || in == Variant::Exact ? Variant::Exact : Variant::LeftExact;
}
inline Variant kan_left_output(Variant in) {
  return in == Variant::LeftExact || in == Variant::Exact ? Variant::Exact : Variant::RightExact;
}

namespace detail {

inline bool degenerate(const std::vector<int>& l) {
  for (std::size_t i = 0; i + 1 < l.size(); ++i)
    if (l[i] == l[i + 1]) return true;
  return false;
}

inline std::vector<int> minus_one(std::vector<int> l) {
  for (int& x : l) --x;
  return l;
}

} // namespace detail

/// Right Kan extension of a (k-1)-dimensional cell at [n] to a k-dimensional cell
/// at [n+1]: labels through n+1 read A, the others are kernels of A's maps.
template <class Cat>
Cell<typename Cat::Mor> kan_extend_right(const Cat& c, const Cell<typename Cat::Mor>& A) {
  using Mor = typename Cat::Mor;
  const int k = A.k + 1, n = A.n + 1;
  const auto& s = wald_shape(k, n, kan_right_output(A.variant));
  DiagramEngine<Cat> ea(A.shape(), c);
  const auto V = vertex_range(A.n);
  auto amap = [&](const std::vector<int>& a, const std::vector<int>& b) {
    return ea.composite(A.d, grid_path(A.shape(), V, a, b));
  };
  auto aobj = [&](const std::vector<int>& l) { return A.d.obj[A.shape().node(l)]; };
  auto head = [&](const std::vector<int>& l) { return std::vector<int>(l.begin(), l.begin() + k); };
  Cell<Mor> B{k, n, s.variant, {}};
  B.d.obj.assign(s.size(), 0);
  std::vector<std::optional<Mor>> incl(s.size());
  for (int v = 0; v < s.size(); ++v) {
    const auto& b = s.labels[v];
    if (s.zero[v]) continue;
    if (b[k] == n) {
      B.d.obj[v] = aobj(head(b));
      continue;
    }
    auto tail = head(b);
    tail[k - 1] = b[k];
    auto K = c.kernel(amap(head(b), tail));
    if (!K) fail(errc::construction_failure, "kernel missing at " + Shape::label_key(b));
    incl[v] = *K;
    B.d.obj[v] = c.src(*K);
  }
  for (const auto& [u, v] : s.edges) {
    const auto &bu = s.labels[u], &bv = s.labels[v];
    if (s.zero[u] || s.zero[v]) {
      B.d.mor.push_back(c.zero(B.d.obj[u], B.d.obj[v]));
    } else if (bu[k] == n) {
      B.d.mor.push_back(amap(head(bu), head(bv)));
    } else if (bv[k] == n) {
      B.d.mor.push_back(*incl[u]);
    } else {
      auto g = c.lift_mono(*incl[v], c.compose(amap(head(bu), head(bv)), *incl[u]));
      if (!g) fail(errc::construction_failure, "no induced map " + Shape::label_key(bu) + " -> " + Shape::label_key(bv));
      B.d.mor.push_back(*g);
    }
  }
  return B;
}

/// Left Kan extension: labels through 0 read A shifted by one, the others are
/// cokernels of A's maps.
template <class Cat>
Cell<typename Cat::Mor> kan_extend_left(const Cat& c, const Cell<typename Cat::Mor>& A) {
  using Mor = typename Cat::Mor;
  const int k = A.k + 1, n = A.n + 1;
  const auto& s = wald_shape(k, n, kan_left_output(A.variant));
  DiagramEngine<Cat> ea(A.shape(), c);
  const auto V = vertex_range(A.n);
  auto amap = [&](const std::vector<int>& a, const std::vector<int>& b) {
    return ea.composite(A.d, grid_path(A.shape(), V, a, b));
  };
  auto aobj = [&](const std::vector<int>& l) { return A.d.obj[A.shape().node(l)]; };
  auto rest = [&](const std::vector<int>& l) { return detail::minus_one(std::vector<int>(l.begin() + 1, l.end())); };
  Cell<Mor> B{k, n, s.variant, {}};
  B.d.obj.assign(s.size(), 0);
  std::vector<std::optional<Mor>> proj(s.size());
  for (int v = 0; v < s.size(); ++v) {
    const auto& b = s.labels[v];
    if (s.zero[v]) continue;
    if (b[0] == 0) {
      B.d.obj[v] = aobj(rest(b));
      continue;
    }
    auto from = b;
    from.erase(from.begin() + 1);
    auto C = c.cokernel(amap(detail::minus_one(from), rest(b)));
    if (!C) fail(errc::construction_failure, "cokernel missing at " + Shape::label_key(b));
    proj[v] = *C;
    B.d.obj[v] = c.dst(*C);
  }
  for (const auto& [u, v] : s.edges) {
    const auto &bu = s.labels[u], &bv = s.labels[v];
    if (s.zero[u] || s.zero[v]) {
      B.d.mor.push_back(c.zero(B.d.obj[u], B.d.obj[v]));
    } else if (bv[0] == 0) {
      B.d.mor.push_back(amap(rest(bu), rest(bv)));
    } else if (bu[0] == 0) {
      B.d.mor.push_back(*proj[v]);
    } else {
      auto g = c.descend_epi(*proj[u], c.compose(*proj[v], amap(rest(bu), rest(bv))));
      if (!g) fail(errc::construction_failure, "no induced map " + Shape::label_key(bu) + " -> " + Shape::label_key(bv));
      B.d.mor.push_back(*g);
    }
  }
  return B;
}

enum class PathSide { Left, Right, Double };

inline const char* path_side_name(PathSide p) {
  switch (p) {
    case PathSide::Left: return "left";
    case PathSide::Right: return "right";
    case PathSide::Double: return "double";
  }
  return "?";
}

/// Index maps of the forgetful functors out of the path spaces, on labels of the
/// smaller construction.
inline std::vector<int> path_label(PathSide p, const std::vector<int>& a, int n) {
  std::vector<int> out;
  if (p != PathSide::Right) out.push_back(0);
  for (int x : a) out.push_back(p == PathSide::Right ? x : x + 1);
  if (p == PathSide::Right) out.push_back(n + 1);
  if (p == PathSide::Double) out.push_back(n + 2);
  return out;
}

/// Variant of the target of the forgetful functor for a given source variant.
inline Variant forget_variant(PathSide p, Variant src) {
  if (p == PathSide::Double) return Variant::Acyclic;
  const bool left_ok = src == Variant::LeftExact || src == Variant::Exact;
  const bool right_ok = src == Variant::RightExact || src == Variant::Exact;
  if (p == PathSide::Left) return left_ok ? Variant::LeftExact : Variant::Acyclic;
  return right_ok ? Variant::RightExact : Variant::Acyclic;
}

/// Level shift of the path space: cells of P X at n are cells of X at n + shift.
inline int path_shift(PathSide p) { return p == PathSide::Double ? 2 : 1; }
inline int path_dim_drop(PathSide p) { return p == PathSide::Double ? 2 : 1; }

/// Restriction of a cell at [n + shift] of the k-dimensional construction to the
/// lower-dimensional construction at [n].
template <class Cat>
Cell<typename Cat::Mor> forget_path(const Cat& c, const Cell<typename Cat::Mor>& A, PathSide p) {
  const int n = A.n - path_shift(p), k = A.k - path_dim_drop(p);
  require(n >= 0 && k >= 0, errc::invalid_arguments, "cell too small for this path space");
  return restrict_cell(c, A, k, n, forget_variant(p, A.variant),
                       [&](const std::vector<int>& a) { return path_label(p, a, n); });
}

/// Inverse of forget_path: Kan extensions in the appropriate order.
template <class Cat>
Cell<typename Cat::Mor> kan_extend(const Cat& c, const Cell<typename Cat::Mor>& A, PathSide p) {
  switch (p) {
    case PathSide::Left: return kan_extend_left(c, A);
    case PathSide::Right: return kan_extend_right(c, A);
    case PathSide::Double: return kan_extend_right(c, kan_extend_left(c, A));
  }
  return A;
}

/// The forgetful functor from the path space p of the k-dimensional construction at
/// [n] onto the lower-dimensional cells, as a bounded equivalence check.
template <class Cat>
EquivalenceReport path_space_equivalence(const Cat& c, int k, int n, PathSide p, bool use_krull_schmidt = true) {
  const int N = n + path_shift(p), j = k - path_dim_drop(p);
  require(j >= 0, errc::invalid_arguments, "path space needs a larger dimension");
  require(p != PathSide::Double || k == 2, errc::invalid_arguments, "double path space is only built for k = 2");
  const auto& sx = wald_shape(k, N, Variant::Exact);
  const auto& sl = wald_shape(j, n, forget_variant(p, Variant::Exact));
  DiagramEngine<Cat> ex(sx, c), el(sl, c);
  auto r = grid_restriction(sx, vertex_range(N), sl, [&](const std::vector<int>& a) { return path_label(p, a, n); });
  return restriction_equivalence(ex, ex.enumerate(), el, el.enumerate(), r, use_krull_schmidt);
}

/// Left hyperplane functor: beta in Fun([k-1],[l]) goes to coker(A_{beta,l} -> A_{beta,m}).
/// Right: gamma in Fun([k-1],[n-m]) goes to ker(A_{l,m+gamma} -> A_{m,m+gamma}).
template <class Cat>
Cell<typename Cat::Mor> hyperplane_functor(const Cat& c, const Cell<typename Cat::Mor>& A, int l, int m, PathSide side) {
  using Mor = typename Cat::Mor;
  const int k = A.k;
  require(k >= 1 && k <= l && l < m && m <= A.n, errc::invalid_arguments, "hyperplane functor needs 1 <= k <= l < m <= n");
  require(side != PathSide::Double, errc::invalid_arguments, "hyperplane functor has a left and a right side only");
  const bool left = side == PathSide::Left;
  Variant out;
  if (A.variant == Variant::Exact) out = Variant::Exact;
  else out = left ? Variant::LeftExact : Variant::RightExact;
  const int level = left ? l : A.n - m;
  const auto& s = wald_shape(k - 1, level, out);
  DiagramEngine<Cat> ea(A.shape(), c);
  const auto V = vertex_range(A.n);
  auto amap = [&](const std::vector<int>& a, const std::vector<int>& b) {
    return ea.composite(A.d, grid_path(A.shape(), V, a, b));
  };
  auto at = [&](const std::vector<int>& b, int x) {
    std::vector<int> r;
    if (left) {
      r = b;
      r.push_back(x);
    } else {
      r.push_back(x);
      for (int y : b) r.push_back(y + m);
    }
    return r;
  };
  Cell<Mor> B{k - 1, level, out, {}};
  B.d.obj.assign(s.size(), 0);
  std::vector<Mor> q(s.size(), c.identity(0));
  for (int v = 0; v < s.size(); ++v) {
    if (s.zero[v]) continue;
    const auto& b = s.labels[v];
    const Mor f = amap(at(b, l), at(b, m));
    auto u = left ? c.cokernel(f) : c.kernel(f);
    if (!u) fail(errc::construction_failure, std::string(left ? "cokernel" : "kernel") + " missing at " + Shape::label_key(b));
    q[v] = *u;
    B.d.obj[v] = left ? c.dst(*u) : c.src(*u);
  }
  for (const auto& [u, v] : s.edges) {
    if (s.zero[u] || s.zero[v]) {
      B.d.mor.push_back(c.zero(B.d.obj[u], B.d.obj[v]));
      continue;
    }
    const auto &bu = s.labels[u], &bv = s.labels[v];
    const int x = left ? m : l;
    auto g = left ? c.descend_epi(q[u], c.compose(q[v], amap(at(bu, x), at(bv, x))))
                  : c.lift_mono(q[v], c.compose(amap(at(bu, x), at(bv, x)), q[u]));
    if (!g) fail(errc::construction_failure, "no induced map " + Shape::label_key(bu) + " -> " + Shape::label_key(bv));
    B.d.mor.push_back(*g);
  }
  return B;
}

} // namespace segal
