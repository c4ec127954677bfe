#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "segal/combinatorics.hpp"
#include "segal/diagram.hpp"

namespace segal {

namespace detail {

inline bool colex_vec_less(const std::vector<int>& a, const std::vector<int>& b) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

// Monotone sequences of length k+1 with values in V (sorted).
inline std::vector<std::vector<int>> monotone_in(int k, const std::vector<int>& V) {
  std::vector<std::vector<int>> out;
  if (V.empty()) return out;
  const int m = static_cast<int>(V.size()) - 1;
  for (const auto& b : all_monotone(k, m)) {
    std::vector<int> l(k + 1);
    for (int i = 0; i <= k; ++i) l[i] = V[b.v[i]];
    out.push_back(l);
  }
  return out;
}

inline int next_in(const std::vector<int>& V, int x) {
  auto it = std::upper_bound(V.begin(), V.end(), x);
  return it == V.end() ? -1 : *it;
}

inline bool within(const std::vector<int>& l, const std::vector<int>& V) {
  for (int x : l)
    if (!std::binary_search(V.begin(), V.end(), x)) return false;
  return true;
}

} // namespace detail

/// Path in `s` from label a to label b (a <= b pointwise) through steps of the
/// vertex set V, raising the last coordinate first.
inline Path grid_path(const Shape& s, const std::vector<int>& V, const std::vector<int>& a, const std::vector<int>& b) {
  Path p;
  p.from = s.node(a);
  p.to = s.node(b);
  auto cur = a;
  int at = p.from;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    while (cur[i] < b[i]) {
      cur[i] = detail::next_in(V, cur[i]);
      require(cur[i] >= 0 && cur[i] <= b[i], errc::internal_error, "grid path overshoots");
      const int nx = s.node(cur);
      p.edges.push_back(s.edge(at, nx));
      at = nx;
    }
  }
  return p;
}

/// Shape of a family of grids Fun([k], V_j), one per piece, glued along shared
/// nodes. Within each piece: elementary squares commute, edges between nodes of
/// the piece agree with the piece's own paths, degenerate nodes are zero, and the
/// sequence of every (k+1)-simplex classifies within `variant`. A single piece
/// [n] gives the cells of the k-dimensional Waldhausen construction in degree n.
inline Shape grid_shape(int k, std::vector<std::vector<int>> pieces, Variant variant) {
  require(k >= 0, errc::invalid_arguments, "grid dimension must be non-negative");
  for (auto& V : pieces) {
    std::sort(V.begin(), V.end());
    V.erase(std::unique(V.begin(), V.end()), V.end());
  }
  Shape s;
  s.variant = variant;
  s.pieces = pieces;
  std::set<std::vector<int>> nodes;
  for (const auto& V : pieces)
    for (auto& l : detail::monotone_in(k, V)) nodes.insert(l);
  s.labels.assign(nodes.begin(), nodes.end());
  std::sort(s.labels.begin(), s.labels.end(), detail::colex_vec_less);
  for (const auto& l : s.labels) {
    bool inj = true;
    for (int i = 0; i < k; ++i)
      if (l[i] == l[i + 1]) inj = false;
    s.zero.push_back(inj ? 0 : 1);
  }
  std::map<std::vector<int>, int> idx;
  for (int v = 0; v < s.size(); ++v) idx[s.labels[v]] = v;

  // elementary steps of every piece and every pairwise intersection
  std::vector<std::vector<int>> stepsets = pieces;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      std::vector<int> w;
      std::set_intersection(pieces[i].begin(), pieces[i].end(), pieces[j].begin(), pieces[j].end(),
                            std::back_inserter(w));
      if (!w.empty()) stepsets.push_back(w);
    }
  std::set<std::pair<int, int>> es;
  auto step = [](const std::vector<int>& V, const std::vector<int>& l, int i) -> std::vector<int> {
    const int nx = detail::next_in(V, l[i]);
    if (nx < 0) return {};
    if (i + 1 < static_cast<int>(l.size()) && nx > l[i + 1]) return {};
    auto r = l;
    r[i] = nx;
    return r;
  };
  for (const auto& V : stepsets)
    for (const auto& l : detail::monotone_in(k, V))
      for (int i = 0; i <= k; ++i) {
        auto r = step(V, l, i);
        if (!r.empty()) es.insert({idx.at(l), idx.at(r)});
      }
  std::vector<std::pair<int, int>> ev(es.begin(), es.end());
  std::sort(ev.begin(), ev.end(), [](auto a, auto b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
  s.edges = ev;
  s.finalize();

  std::set<std::pair<std::vector<int>, std::vector<int>>> seen_eq;
  std::set<std::vector<int>> seen_seq;
  auto add_eq = [&](Path a, Path b) {
    if (a.edges == b.edges) return;
    if (b.edges < a.edges) std::swap(a, b);
    if (seen_eq.insert({a.edges, b.edges}).second) s.eqs.push_back({a, b, -1});
  };
  for (const auto& V : pieces) {
    for (const auto& [u, v] : s.edges) {
      const auto &a = s.labels[u], &b = s.labels[v];
      if (!detail::within(a, V) || !detail::within(b, V)) continue;
      Path direct{u, v, {s.edge(u, v)}};
      add_eq(direct, grid_path(s, V, a, b));
    }
    for (const auto& l : detail::monotone_in(k, V))
      for (int i = 0; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
          auto li = step(V, l, i), lj = step(V, l, j);
          if (li.empty() || lj.empty()) continue;
          auto lij = step(V, li, j);
          if (lij.empty()) continue;
          auto lji = step(V, lj, i);
          if (lji.empty() || lji != lij) continue;
          const int a = idx.at(l), bi = idx.at(li), bj = idx.at(lj), c = idx.at(lij);
          add_eq(Path{a, c, {s.edge(a, bi), s.edge(bi, c)}}, Path{a, c, {s.edge(a, bj), s.edge(bj, c)}});
        }
    for (const auto& g : detail::monotone_in(k + 1, V)) {
      if (!seen_seq.insert(g).second) continue;
      SeqSpec sq;
      sq.label = g;
      for (int i = k; i >= 0; --i) {
        auto from = g, to = g;
        from.erase(from.begin() + i + 1);
        to.erase(to.begin() + i);
        sq.maps.push_back(grid_path(s, V, from, to));
      }
      s.seqs.push_back(sq);
    }
  }
  s.finalize();
  return s;
}

/// Restriction from a grid shape `x` to `l`, reading target node with label t at
/// source label f(t); edges become source grid paths through the vertex set V.
template <class F>
Restriction grid_restriction(const Shape& x, const std::vector<int>& V, const Shape& l, F&& f) {
  Restriction r;
  for (const auto& t : l.labels) r.node_map.push_back(x.node(f(t)));
  for (const auto& [u, v] : l.edges) r.edge_paths.push_back(grid_path(x, V, x.labels[r.node_map[u]], x.labels[r.node_map[v]]));
  return r;
}

} // namespace segal
