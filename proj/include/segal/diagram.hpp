#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "segal/combinatorics.hpp"
#include "segal/error.hpp"
#include "segal/proto_exact.hpp"

namespace segal {

/// A chain of edges from node `from` to node `to`; empty means the identity.
struct Path {
  int from = 0, to = 0;
  std::vector<int> edges;
  auto operator<=>(const Path&) const = default;
};

struct PathEq {
  Path a, b;
  int stage = -1;
};

/// A sequence of composable paths that must classify within the shape's variant.
struct SeqSpec {
  std::vector<Path> maps;
  std::vector<int> label;
  int stage = -1;
};

/// A finite diagram shape: nodes with labels, generating edges, path equations
/// and sequence conditions. Edges are numbered in (dst, src) order so that every
/// constraint can be checked once its last edge is assigned.
struct Shape {
  std::vector<std::vector<int>> labels;
  std::vector<char> zero;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> in, out;
  std::vector<PathEq> eqs;
  std::vector<SeqSpec> seqs;
  std::vector<std::vector<int>> pieces;
  Variant variant = Variant::Exact;
  std::map<std::vector<int>, int> index;
  std::map<std::pair<int, int>, int> edge_index;
  std::vector<std::vector<int>> eqs_at, seqs_at;

  int size() const { return static_cast<int>(labels.size()); }
  int node(const std::vector<int>& label) const {
    auto it = index.find(label);
    require(it != index.end(), errc::invalid_input, "shape has no node " + label_key(label));
    return it->second;
  }
  int edge(int s, int t) const {
    auto it = edge_index.find({s, t});
    require(it != edge_index.end(), errc::invalid_input, "shape has no edge");
    return it->second;
  }

  static std::string label_key(const std::vector<int>& l) {
    std::string s;
    for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + std::to_string(l[i]);
    return s;
  }

  /// Computes adjacency and constraint stages; drops constraints with no edges.
  void finalize() {
    const int n = size();
    index.clear();
    for (int v = 0; v < n; ++v) index[labels[v]] = v;
    edge_index.clear();
    in.assign(n, {});
    out.assign(n, {});
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      edge_index[edges[e]] = e;
      in[edges[e].second].push_back(e);
      out[edges[e].first].push_back(e);
    }
    auto stage = [](const Path& p, int s) {
      for (int e : p.edges) s = std::max(s, e);
      return s;
    };
    eqs_at.assign(edges.size(), {});
    seqs_at.assign(edges.size(), {});
    std::vector<PathEq> keep;
    for (auto& q : eqs) {
      q.stage = stage(q.b, stage(q.a, -1));
      if (q.stage >= 0) keep.push_back(q);
    }
    eqs = std::move(keep);
    for (int i = 0; i < static_cast<int>(eqs.size()); ++i) eqs_at[eqs[i].stage].push_back(i);
    std::vector<SeqSpec> keep2;
    for (auto& s : seqs) {
      s.stage = -1;
      for (auto& p : s.maps) s.stage = stage(p, s.stage);
      if (s.stage >= 0) keep2.push_back(s);
    }
    seqs = std::move(keep2);
    for (int i = 0; i < static_cast<int>(seqs.size()); ++i) seqs_at[seqs[i].stage].push_back(i);
  }
};

template <class Mor>
struct Diagram {
  std::vector<int> obj;
  std::vector<Mor> mor;
  auto operator<=>(const Diagram&) const = default;
  bool operator==(const Diagram&) const = default;
};

/// A functor between shapes given by restriction: each target node reads a source
/// node and each target edge reads a source path.
struct Restriction {
  std::vector<int> node_map;
  std::vector<Path> edge_paths;
};

struct EquivalenceReport {
  bool essentially_surjective = false;
  bool fully_faithful = false;
  bool verdict = false;
  std::size_t source_classes = 0, target_classes = 0, pairs_checked = 0;
  std::string ff_scope = "all pairs";
  nlohmann::json witness = nullptr;

  nlohmann::json to_json() const {
    return {{"essentially_surjective", essentially_surjective},
            {"fully_faithful", fully_faithful},
            {"verdict", verdict},
            {"source_classes", source_classes},
            {"target_classes", target_classes},
            {"pairs_checked", pairs_checked},
            {"ff_scope", ff_scope},
            {"witness", witness}};
  }
};

/// Enumeration, validation, isomorphism reduction and hom sets for diagrams of a
/// fixed shape in a skeletal category `Cat` (objects are ints).
template <class Cat>
class DiagramEngine {
public:
  using Mor = typename Cat::Mor;
  using D = Diagram<Mor>;

  struct Options {
    bool iso_reduce = true;
    int bound = -1;
    std::vector<int> fixed_obj;
    std::vector<std::optional<Mor>> fixed_mor;
    std::vector<std::pair<Path, Mor>> fixed_paths;
    std::size_t limit = 0;
  };

  DiagramEngine(const Shape& s, const Cat& c) : s_(s), c_(c) {
    live_in_.resize(s.size());
    for (int v = 0; v < s.size(); ++v)
      for (int e : s.in[v])
        if (!s.zero[s.edges[e].first]) live_in_[v].push_back(e);
    for (int v = 0; v < s.size(); ++v)
      if (!s.zero[v]) live_.push_back(v);
  }

  const Shape& shape() const { return s_; }
  const Cat& cat() const { return c_; }

  Mor composite(const D& d, const Path& p) const {
    if (p.edges.empty()) return c_.identity(d.obj[p.from]);
    Mor f = d.mor[p.edges.front()];
    for (std::size_t i = 1; i < p.edges.size(); ++i) f = c_.compose(d.mor[p.edges[i]], f);
    return f;
  }

  /// Checks object sizes, zero nodes, edge endpoints and every constraint.
  std::optional<nlohmann::json> validate(const D& d) const {
    const int n = s_.size();
    if (static_cast<int>(d.obj.size()) != n || d.mor.size() != s_.edges.size())
      return nlohmann::json{{"kind", "shape"}, {"reason", "diagram does not match shape"}};
    for (int v = 0; v < n; ++v)
      if (s_.zero[v] && d.obj[v] != 0)
        return nlohmann::json{{"kind", "degenerate"}, {"node", s_.labels[v]}, {"object", d.obj[v]}};
    for (std::size_t e = 0; e < d.mor.size(); ++e) {
      auto [u, v] = s_.edges[e];
      if (c_.src(d.mor[e]) != d.obj[u] || c_.dst(d.mor[e]) != d.obj[v])
        return nlohmann::json{{"kind", "endpoints"}, {"src", s_.labels[u]}, {"dst", s_.labels[v]}};
    }
    for (const auto& q : s_.eqs)
      if (!(composite(d, q.a) == composite(d, q.b)))
        return nlohmann::json{{"kind", "commutativity"}, {"from", s_.labels[q.a.from]}, {"to", s_.labels[q.a.to]}};
    for (const auto& sq : s_.seqs) {
      auto r = classify(d, sq);
      if (!satisfies(r.cls, s_.variant))
        return nlohmann::json{{"kind", "sequence"},
                              {"simplex", sq.label},
                              {"class", seq_class_name(r.cls)},
                              {"violation", violation_name(r.cls, s_.variant)},
                              {"position", r.position},
                              {"reason", r.reason}};
    }
    return std::nullopt;
  }

  SeqClassification classify(const D& d, const SeqSpec& sq) const {
    std::vector<Mor> maps;
    maps.reserve(sq.maps.size());
    for (const auto& p : sq.maps) maps.push_back(composite(d, p));
    return classify_sequence(c_, maps);
  }

  /// All valid diagrams, one per isomorphism class when iso_reduce is set.
  std::vector<D> enumerate(const Options& o = Options()) const {
    Search s(*this, o);
    s.run();
    return std::move(s.results);
  }

  /// Lexicographically least diagram in the isomorphism class, node by node.
  D canonical_form(D d) const {
    const int n = s_.size();
    Stab cur;
    cur.stride = n;
    cur.push_identity(c_, d.obj);
    for (int v = 0; v < n; ++v) {
      if (s_.zero[v]) continue;
      const auto& auts = c_.automorphisms(d.obj[v]);
      std::vector<int> ins;
      for (int e : s_.in[v])
        if (!s_.zero[s_.edges[e].first]) ins.push_back(e);
      std::vector<Mor> best, img(ins.size());
      std::size_t bi = 0, bh = 0;
      bool have = false;
      for (std::size_t i = 0; i < cur.count; ++i)
        for (std::size_t h = 0; h < auts.size(); ++h) {
          for (std::size_t j = 0; j < ins.size(); ++j)
            img[j] = act(cur, i, auts[h], ins[j], d);
          if (!have || img < best) best = img, bi = i, bh = h, have = true;
        }
      const Mor h0inv = c_.inverse(auts[bh]);
      for (std::size_t j = 0; j < ins.size(); ++j) d.mor[ins[j]] = best[j];
      for (int u = 0; u <= v; ++u) {
        if (s_.zero[u]) continue;
        for (int e : s_.out[u]) {
          if (s_.edges[e].second <= v) continue;
          d.mor[e] = c_.compose(d.mor[e], u == v ? h0inv : cur.inv(bi, u));
        }
      }
      Stab next;
      next.stride = n;
      for (std::size_t i = 0; i < cur.count; ++i)
        for (const auto& h : auts) {
          bool fixed = true;
          for (std::size_t j = 0; j < ins.size() && fixed; ++j)
            fixed = act(cur, i, h, ins[j], d) == d.mor[ins[j]];
          if (fixed) next.push_extend(cur, i, v, h, c_.inverse(h));
        }
      check_cap(next.count, "stabilizer");
      cur = std::move(next);
    }
    return d;
  }

  /// Calls fn(components) for every natural transformation x -> y; stops when fn
  /// returns false.
  template <class Fn>
  bool for_each_hom(const D& x, const D& y, Fn&& fn) const {
    std::vector<Mor> t(s_.size(), c_.identity(0));
    std::vector<Mor> rhs(s_.edges.size(), c_.identity(0));
    return hom_rec(x, y, t, rhs, 0, fn);
  }

  /// Nonzero with no idempotent endomorphism other than 0 and 1.
  bool indecomposable(const D& x) const {
    bool nonzero = false;
    for (int v : live_) nonzero = nonzero || x.obj[v] != 0;
    if (!nonzero) return false;
    bool ok = true;
    for_each_hom(x, x, [&](const std::vector<Mor>& e) {
      bool idem = true, zero = true, one = true;
      for (int v : live_) {
        idem = idem && c_.compose(e[v], e[v]) == e[v];
        zero = zero && c_.is_zero(e[v]);
        one = one && e[v] == c_.identity(x.obj[v]);
      }
      if (idem && !zero && !one) ok = false;
      return ok;
    });
    return ok;
  }

  std::size_t count_homs(const D& x, const D& y) const {
    std::size_t c = 0;
    for_each_hom(x, y, [&](const std::vector<Mor>&) {
      ++c;
      return true;
    });
    return c;
  }

  /// How components prescribed on `fixed` nodes are completed to a transformation:
  /// the remaining nonzero nodes in order, and the edges to check along the way.
  /// Edges flagged in `implied` are known to commute already.
  struct ExtensionPlan {
    std::vector<int> free_nodes;
    std::vector<int> fixed_edges;
    std::vector<std::vector<int>> free_edges;
  };

  ExtensionPlan extension_plan(const std::vector<char>& fixed, const std::vector<char>& implied) const {
    ExtensionPlan p;
    std::vector<int> pos(s_.size(), -1);
    for (int v = 0; v < s_.size(); ++v)
      if (!fixed[v] && !s_.zero[v]) {
        pos[v] = static_cast<int>(p.free_nodes.size());
        p.free_nodes.push_back(v);
      }
    p.free_edges.resize(p.free_nodes.size());
    for (int e = 0; e < static_cast<int>(s_.edges.size()); ++e) {
      auto [u, v] = s_.edges[e];
      if (s_.zero[u] || s_.zero[v]) continue;
      if (fixed[u] && fixed[v]) {
        if (!implied[e]) p.fixed_edges.push_back(e);
        continue;
      }
      const int at = std::max(pos[u], pos[v]);
      p.free_edges[at].push_back(e);
    }
    return p;
  }

  /// Number of ways (capped at `limit`) to complete t, whose fixed components are
  /// set, to a natural transformation x -> y.
  std::size_t count_extensions(const D& x, const D& y, std::vector<Mor>& t, const ExtensionPlan& p,
                               std::size_t limit) const {
    for (int e : p.fixed_edges)
      if (!commutes(x, y, t, e)) return 0;
    std::size_t found = 0;
    ext_rec(x, y, t, p, 0, found, limit);
    return found;
  }

  bool is_natural(const D& x, const D& y, const std::vector<Mor>& t) const {
    for (std::size_t e = 0; e < s_.edges.size(); ++e) {
      auto [u, v] = s_.edges[e];
      if (!(c_.compose(t[v], x.mor[e]) == c_.compose(y.mor[e], t[u]))) return false;
    }
    return true;
  }

  D apply(const Restriction& r, const D& x, const DiagramEngine& src) const {
    D out;
    out.obj.resize(s_.size());
    out.mor.reserve(s_.edges.size());
    for (int v = 0; v < s_.size(); ++v) out.obj[v] = x.obj[r.node_map[v]];
    for (const auto& p : r.edge_paths) out.mor.push_back(src.composite(x, p));
    return out;
  }

  nlohmann::json to_json(const D& d) const {
    nlohmann::json objs = nlohmann::json::object(), arrows = nlohmann::json::array();
    for (int v = 0; v < s_.size(); ++v)
      if (!s_.zero[v]) objs[Shape::label_key(s_.labels[v])] = d.obj[v];
    for (std::size_t e = 0; e < s_.edges.size(); ++e) {
      auto [u, v] = s_.edges[e];
      if (s_.zero[u] || s_.zero[v]) continue;
      arrows.push_back({{"src", Shape::label_key(s_.labels[u])},
                        {"dst", Shape::label_key(s_.labels[v])},
                        {"map", c_.to_json(d.mor[e])}});
    }
    return {{"objects", objs}, {"arrows", arrows}};
  }

private:
  // Stabilizer elements: per element, an automorphism and its inverse at every node.
  struct Stab {
    std::size_t count = 0;
    int stride = 0;
    std::vector<std::optional<Mor>> g, ginv;
    const Mor& inv(std::size_t i, int u) const { return *ginv[i * stride + u]; }
    void push_identity(const Cat& c, const std::vector<int>& obj) {
      for (int u = 0; u < stride; ++u) {
        g.emplace_back(c.identity(obj[u]));
        ginv.emplace_back(c.identity(obj[u]));
      }
      ++count;
    }
    void push_extend(const Stab& from, std::size_t i, int v, const Mor& h, const Mor& hinv) {
      g.insert(g.end(), from.g.begin() + i * stride, from.g.begin() + (i + 1) * stride);
      ginv.insert(ginv.end(), from.ginv.begin() + i * stride, from.ginv.begin() + (i + 1) * stride);
      g[count * stride + v] = h;
      ginv[count * stride + v] = hinv;
      ++count;
    }
    void clear() {
      count = 0;
      g.clear();
      ginv.clear();
    }
  };

  Mor act(const Stab& st, std::size_t i, const Mor& h, int e, const D& d) const {
    const int u = s_.edges[e].first;
    return c_.compose(h, c_.compose(d.mor[e], st.inv(i, u)));
  }

  bool commutes(const D& x, const D& y, const std::vector<Mor>& t, int e) const {
    auto [u, v] = s_.edges[e];
    return c_.compose(t[v], x.mor[e]) == c_.compose(y.mor[e], t[u]);
  }

  void ext_rec(const D& x, const D& y, std::vector<Mor>& t, const ExtensionPlan& p, std::size_t i,
               std::size_t& found, std::size_t limit) const {
    if (i == p.free_nodes.size()) {
      ++found;
      return;
    }
    const int v = p.free_nodes[i];
    auto try_f = [&](const Mor& f) {
      t[v] = f;
      for (int e : p.free_edges[i])
        if (!commutes(x, y, t, e)) return;
      ext_rec(x, y, t, p, i + 1, found, limit);
    };
    if constexpr (requires { c_.solve_right(0, 0); }) {
      if (c_.has_solutions() && !p.free_edges[i].empty()) {
        std::span<const int> best;
        bool have = false;
        for (int e : p.free_edges[i]) {
          auto [a, b] = s_.edges[e];
          auto cand = b == v ? c_.solve_right(x.mor[e], c_.compose(y.mor[e], t[a]))
                             : c_.solve_left(y.mor[e], c_.compose(t[b], x.mor[e]));
          if (!have || cand.size() < best.size()) best = cand, have = true;
          if (best.empty()) return;
        }
        for (int f : best) {
          try_f(f);
          if (found >= limit) return;
        }
        return;
      }
    }
    for (const auto& f : c_.homs(x.obj[v], y.obj[v])) {
      try_f(f);
      if (found >= limit) return;
    }
  }

  // Walks the nonzero nodes in order; zero nodes keep the zero component.
  template <class Fn>
  bool hom_rec(const D& x, const D& y, std::vector<Mor>& t, std::vector<Mor>& rhs, std::size_t i, Fn& fn) const {
    if (i == live_.size()) return fn(static_cast<const std::vector<Mor>&>(t));
    const int v = live_[i];
    const auto& ins = live_in_[v];
    for (int e : ins) rhs[e] = c_.compose(y.mor[e], t[s_.edges[e].first]);
    auto natural = [&](const Mor& f) {
      for (int e : ins)
        if (!(c_.compose(f, x.mor[e]) == rhs[e])) return false;
      return true;
    };
    if constexpr (requires { c_.solve_right(0, 0); }) {
      if (c_.has_solutions() && !ins.empty()) {
        std::span<const int> best;
        for (std::size_t j = 0; j < ins.size(); ++j) {
          auto cand = c_.solve_right(x.mor[ins[j]], rhs[ins[j]]);
          if (j == 0 || cand.size() < best.size()) best = cand;
          if (best.empty()) return true;
        }
        for (int f : best) {
          if (!natural(f)) continue;
          t[v] = f;
          if (!hom_rec(x, y, t, rhs, i + 1, fn)) return false;
        }
        return true;
      }
    }
    for (const auto& f : c_.homs(x.obj[v], y.obj[v])) {
      if (!natural(f)) continue;
      t[v] = f;
      if (!hom_rec(x, y, t, rhs, i + 1, fn)) return false;
    }
    return true;
  }

  struct Search {
    const DiagramEngine& E;
    const Options& o;
    const Shape& s;
    const Cat& c;
    int bound;
    D d;
    std::vector<D> results;
    std::vector<Stab> stab;
    std::vector<int> sref;
    std::vector<std::vector<int>> fixed_at;
    std::size_t steps = 0, step_cap;
    bool stop = false;

    Search(const DiagramEngine& e, const Options& opt)
        : E(e), o(opt), s(e.s_), c(e.c_), bound(opt.bound >= 0 ? opt.bound : e.c_.bound()) {
      const int n = s.size();
      d.obj.assign(n, 0);
      d.mor.assign(s.edges.size(), c.identity(0));
      stab.resize(n + 1);
      sref.assign(n + 1, 0);
      for (auto& st : stab) st.stride = n;
      stab[0].count = 1;
      stab[0].g.assign(n, std::nullopt);
      stab[0].ginv.assign(n, std::nullopt);
      fixed_at.assign(s.edges.size(), {});
      for (std::size_t i = 0; i < o.fixed_paths.size(); ++i) {
        int st = -1;
        for (int e : o.fixed_paths[i].first.edges) st = std::max(st, e);
        require(st >= 0, errc::invalid_arguments, "fixed path must contain an edge");
        fixed_at[st].push_back(static_cast<int>(i));
      }
      step_cap = max_cells() * 100;
    }

    void run() { node(0); }

    void node(int v) {
      if (stop) return;
      if (v == s.size()) {
        results.push_back(d);
        check_cap(results.size(), "diagram enumeration");
        if (o.limit && results.size() >= o.limit) stop = true;
        return;
      }
      if (s.zero[v]) {
        d.obj[v] = 0;
        edge(v, 0);
        return;
      }
      int lo = 0, hi = bound;
      if (!o.fixed_obj.empty() && o.fixed_obj[v] >= 0) lo = hi = o.fixed_obj[v];
      for (int a = lo; a <= hi && !stop; ++a) {
        d.obj[v] = a;
        edge(v, 0);
      }
    }

    void edge(int v, std::size_t j) {
      if (stop) return;
      if (j == s.in[v].size()) {
        if (!o.iso_reduce || canonical(v)) node(v + 1);
        return;
      }
      const int e = s.in[v][j];
      const int u = s.edges[e].first;
      if (!o.fixed_mor.empty() && o.fixed_mor[e]) {
        const Mor& f = *o.fixed_mor[e];
        if (c.src(f) != d.obj[u] || c.dst(f) != d.obj[v]) return;
        d.mor[e] = f;
        if (ok(e)) edge(v, j + 1);
        return;
      }
      for (const auto& f : c.homs(d.obj[u], d.obj[v])) {
        if (stop) return;
        if (++steps > step_cap) fail(errc::resource_limit, "diagram search exceeded its step budget");
        d.mor[e] = f;
        if (ok(e)) edge(v, j + 1);
      }
    }

    bool ok(int e) const {
      for (int i : s.eqs_at[e]) {
        const auto& q = s.eqs[i];
        if (!(E.composite(d, q.a) == E.composite(d, q.b))) return false;
      }
      for (int i : fixed_at[e]) {
        const auto& fp = o.fixed_paths[i];
        if (!(E.composite(d, fp.first) == fp.second)) return false;
      }
      for (int i : s.seqs_at[e])
        if (!satisfies(E.classify(d, s.seqs[i]).cls, s.variant)) return false;
      return true;
    }

    // Orderly generation: accept the in-edge tuple of v only if it is minimal in
    // its orbit under (stabilizer of the prefix) x Aut(object at v).
    bool canonical(int v) {
      if (s.zero[v]) {
        sref[v + 1] = sref[v];
        return true;
      }
      const Stab& cur = stab[sref[v]];
      Stab& next = stab[v + 1];
      next.clear();
      sref[v + 1] = v + 1;
      const auto& auts = c.automorphisms(d.obj[v]);
      for (std::size_t i = 0; i < cur.count; ++i)
        for (const auto& h : auts) {
          int cmp = 0;
          for (int e : s.in[v]) {
            if (s.zero[s.edges[e].first]) continue;
            Mor img = E.act(cur, i, h, e, d);
            if (img < d.mor[e]) return false;
            if (d.mor[e] < img) {
              cmp = 1;
              break;
            }
          }
          if (cmp == 0) next.push_extend(cur, i, v, h, c.inverse(h));
        }
      check_cap(next.count, "stabilizer");
      return true;
    }
  };

  const Shape& s_;
  const Cat& c_;
  std::vector<std::vector<int>> live_in_;  // in-edges from nonzero nodes
  std::vector<int> live_;                  // nonzero nodes
};

/// Decides whether restriction along r is an equivalence between the categories of
/// diagrams enumerated by `sx` (source) and `sl` (target), given their iso-class
/// representatives. Representatives of the target must be canonical forms.
template <class Cat>
EquivalenceReport restriction_equivalence(const DiagramEngine<Cat>& sx, const std::vector<Diagram<typename Cat::Mor>>& xs,
                                          const DiagramEngine<Cat>& sl, const std::vector<Diagram<typename Cat::Mor>>& ls,
                                          const Restriction& r, bool use_krull_schmidt = true) {
  using Mor = typename Cat::Mor;
  using D = Diagram<Mor>;
  EquivalenceReport rep;
  rep.source_classes = xs.size();
  rep.target_classes = ls.size();
  std::map<D, int> lindex;
  for (std::size_t i = 0; i < ls.size(); ++i) lindex.emplace(ls[i], static_cast<int>(i));
  std::vector<D> images;
  images.reserve(xs.size());
  std::vector<int> hit(ls.size(), -1);
  bool injective = true;
  nlohmann::json inj_witness = nullptr;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    images.push_back(sl.apply(r, xs[i], sx));
    if (auto bad = sl.validate(images.back()))
      fail(errc::internal_error, "restriction produced an invalid diagram: " + bad->dump());
    auto it = lindex.find(sl.canonical_form(images.back()));
    require(it != lindex.end(), errc::internal_error, "restricted diagram missing from target representatives");
    if (hit[it->second] >= 0 && injective) {
      injective = false;
      inj_witness = {{"kind", "non-isomorphic sources with isomorphic images"},
                     {"first", sx.to_json(xs[hit[it->second]])},
                     {"second", sx.to_json(xs[i])}};
    }
    if (hit[it->second] < 0) hit[it->second] = static_cast<int>(i);
  }
  rep.essentially_surjective = true;
  for (std::size_t j = 0; j < ls.size(); ++j)
    if (hit[j] < 0) {
      rep.essentially_surjective = false;
      rep.witness = {{"kind", "not essentially surjective"}, {"object", sl.to_json(ls[j])}};
      break;
    }
  // Full faithfulness: every natural transformation of the restrictions extends
  // uniquely to the source diagrams.
  rep.fully_faithful = injective;
  if (!injective && rep.witness.is_null()) rep.witness = inj_witness;
  const int nx = sx.shape().size();
  std::vector<char> fixed(nx, 0), implied(sx.shape().edges.size(), 0);
  for (int u : r.node_map) fixed[u] = 1;
  for (const auto& p : r.edge_paths)
    if (p.edges.size() == 1) implied[p.edges[0]] = 1;
  const auto plan = sx.extension_plan(fixed, implied);
  std::vector<Mor> t(nx, sx.cat().identity(0));
  std::vector<int> owner(nx, -1);
  bool clash_possible = false;
  for (std::size_t q = 0; q < r.node_map.size(); ++q) {
    if (owner[r.node_map[q]] >= 0) clash_possible = true;
    owner[r.node_map[q]] = static_cast<int>(q);
  }
  // For additive Krull-Schmidt backends, restriction is additive, so it is fully
  // faithful once it is so on pairs of indecomposables.
  std::vector<std::size_t> probe;
  for (std::size_t i = 0; i < xs.size(); ++i) probe.push_back(i);
  if constexpr (requires { requires Cat::krull_schmidt; }) {
    if (use_krull_schmidt) {
      probe.clear();
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (sx.indecomposable(xs[i])) probe.push_back(i);
      rep.ff_scope = "indecomposable pairs";
    }
  }
  for (std::size_t i : probe)
    for (std::size_t j : probe) {
      if (!rep.fully_faithful) break;
      ++rep.pairs_checked;
      sl.for_each_hom(images[i], images[j], [&](const std::vector<Mor>& sigma) {
        bool clash = false;
        for (std::size_t q = 0; q < sigma.size(); ++q) t[r.node_map[q]] = sigma[q];
        if (clash_possible)
          for (std::size_t q = 0; q < sigma.size(); ++q)
            if (!(t[r.node_map[q]] == sigma[q])) clash = true;
        const std::size_t ext = clash ? 0 : sx.count_extensions(xs[i], xs[j], t, plan, 2);
        if (ext != 1) {
          rep.fully_faithful = false;
          rep.witness = {{"kind", ext == 0 ? "not full" : "not faithful"},
                         {"source", sx.to_json(xs[i])},
                         {"target", sx.to_json(xs[j])}};
        }
        return rep.fully_faithful;
      });
    }
  rep.verdict = rep.essentially_surjective && rep.fully_faithful;
  return rep;
}

} // namespace segal
