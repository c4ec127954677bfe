#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "segal/backends/fq.hpp"
#include "segal/backends/freeab.hpp"
#include "segal/indexed.hpp"
#include "segal/simplicial.hpp"
#include "segal/waldhausen.hpp"

namespace segal {

/// Integer matrix to morphism, rows x cols.
template <class Mor>
using MatrixMaker = std::function<Mor(int, int, const std::vector<std::vector<int>>&)>;

namespace detail {

inline std::vector<std::vector<int>> eye(int a) {
  std::vector<std::vector<int>> m(a, std::vector<int>(a, 0));
  for (int i = 0; i < a; ++i) m[i][i] = 1;
  return m;
}

// [top; bottom] stacked vertically
inline std::vector<std::vector<int>> stack(std::vector<std::vector<int>> top, const std::vector<std::vector<int>>& bottom) {
  top.insert(top.end(), bottom.begin(), bottom.end());
  return top;
}

// [left right] side by side
inline std::vector<std::vector<int>> beside(std::vector<std::vector<int>> left, const std::vector<std::vector<int>>& right) {
  for (std::size_t i = 0; i < left.size(); ++i) left[i].insert(left[i].end(), right[i].begin(), right[i].end());
  return left;
}

inline std::vector<std::vector<int>> zeros(int r, int c) { return std::vector<std::vector<int>>(r, std::vector<int>(c, 0)); }

inline Reindexing reindexing_of(PathSide p) {
  switch (p) {
    case PathSide::Left: return {{Transform::LeftPath}};
    case PathSide::Right: return {{Transform::RightPath}};
    case PathSide::Double: return {{Transform::LeftPath, Transform::RightPath}};
  }
  return {};
}

} // namespace detail

/// The one-dimensional grid over [4] with A_{02} = A_{03} = C = ker f, A_{04} = A_{12} =
/// A_{13} = A, A_{14} = A + B, A_{24} = A_{34} = B and maps (1,f), (1,0), (0,1).
template <class Cat>
Cell<typename Cat::Mor> kernel_display(const Cat& c, const MatrixMaker<typename Cat::Mor>& mk, int a, int b,
                                       const std::vector<std::vector<int>>& f) {
  using namespace detail;
  const auto fm = mk(b, a, f);
  auto K = c.kernel(fm);
  require(K.has_value(), errc::construction_failure, "the map has no kernel");
  const int C = c.src(*K);
  CellBuilder<Cat> cb(c, 1, 4, Variant::LeftExact);
  cb.object({0, 2}, C).object({0, 3}, C).object({0, 4}, a);
  cb.object({1, 2}, a).object({1, 3}, a).object({1, 4}, a + b);
  cb.object({2, 4}, b).object({3, 4}, b);
  cb.arrow({0, 2}, {0, 3}, c.identity(C));
  cb.arrow({0, 3}, {0, 4}, *K);
  cb.arrow({0, 2}, {1, 2}, *K);
  cb.arrow({0, 3}, {1, 3}, *K);
  cb.arrow({0, 4}, {1, 4}, mk(a + b, a, stack(eye(a), f)));
  cb.arrow({1, 2}, {1, 3}, c.identity(a));
  cb.arrow({1, 3}, {1, 4}, mk(a + b, a, stack(eye(a), zeros(b, a))));
  cb.arrow({1, 4}, {2, 4}, mk(b, a + b, beside(zeros(b, a), eye(b))));
  cb.arrow({2, 4}, {3, 4}, c.identity(b));
  return cb.build();
}

/// The acyclic one-dimensional grid over [4] with A_{03} = A_{04} = A_{12} = A_{14} =
/// A_{23} = A, A_{13} = A + A and maps (0,1)^T, (1,0)^T, (1,1), (0,1).
template <class Cat>
Cell<typename Cat::Mor> sum_display(const Cat& c, const MatrixMaker<typename Cat::Mor>& mk, int a) {
  using namespace detail;
  CellBuilder<Cat> cb(c, 1, 4, Variant::Acyclic);
  cb.object({0, 3}, a).object({0, 4}, a).object({1, 2}, a);
  cb.object({1, 3}, 2 * a).object({1, 4}, a).object({2, 3}, a);
  cb.arrow({0, 3}, {0, 4}, c.identity(a));
  cb.arrow({0, 3}, {1, 3}, mk(2 * a, a, stack(zeros(a, a), eye(a))));
  cb.arrow({0, 4}, {1, 4}, c.identity(a));
  cb.arrow({1, 2}, {1, 3}, mk(2 * a, a, stack(eye(a), zeros(a, a))));
  cb.arrow({1, 3}, {1, 4}, mk(a, 2 * a, beside(eye(a), eye(a))));
  cb.arrow({1, 3}, {2, 3}, mk(a, 2 * a, beside(zeros(a, a), eye(a))));
  return cb.build();
}

/// Whether a lower-dimensional cell over [n], viewed through the path space p of
/// the k-dimensional construction, defines an element of the limit over the maximal
/// elements of the (d, side) Segal poset, and whether that element has a preimage.
/// The preimage search fixes the cell on its own labels and, for every valid piece,
/// the piece's Kan extension (determined up to a unique isomorphism that is the
/// identity on those labels), then searches the rest exhaustively within the
/// category's bound.
template <class Cat>
nlohmann::json lift_search(const Cat& c, const Cell<typename Cat::Mor>& display, PathSide p, int d, Side side) {
  using Mor = typename Cat::Mor;
  const int n = display.n, N = n + path_shift(p), k = display.k + path_dim_drop(p);
  const auto& big = wald_shape(k, N, Variant::Exact);
  const auto V = vertex_range(N);
  const auto R = detail::reindexing_of(p);
  nlohmann::json out;
  out["display"] = cell_to_json(c, display);
  out["display_failures"] = failing_simplices(c, display, display.variant);
  out["path_space"] = path_side_name(p);
  out["k"] = k;
  out["level"] = N;

  std::vector<int> fixed_obj(big.size(), -1);
  std::vector<std::optional<Mor>> fixed_mor(big.edges.size());
  std::map<std::vector<int>, Mor> path_vals;
  bool glue_ok = true;
  nlohmann::json glue_conflict = nullptr;
  auto fix_obj = [&](int v, int a) {
    if (fixed_obj[v] >= 0 && fixed_obj[v] != a && glue_ok) {
      glue_ok = false;
      glue_conflict = {{"node", big.labels[v]}};
    }
    fixed_obj[v] = a;
  };
  auto fix_arrow = [&](const std::vector<int>& from, const std::vector<int>& to, const Mor& f) {
    if (from == to) return;
    const int u = big.node(from), v = big.node(to);
    auto it = big.edge_index.find({u, v});
    auto clash = [&](const Mor& old) {
      if (!(old == f) && glue_ok) {
        glue_ok = false;
        glue_conflict = {{"from", from}, {"to", to}};
      }
    };
    if (it != big.edge_index.end()) {
      if (fixed_mor[it->second]) clash(*fixed_mor[it->second]);
      fixed_mor[it->second] = f;
      return;
    }
    auto path = grid_path(big, V, from, to);
    auto pit = path_vals.find(path.edges);
    if (pit != path_vals.end()) clash(pit->second);
    path_vals[path.edges] = f;
  };

  // the display on its own labels
  const auto& ds = display.shape();
  for (int v = 0; v < ds.size(); ++v) fix_obj(big.node(path_label(p, ds.labels[v], n)), display.d.obj[v]);
  for (std::size_t e = 0; e < ds.edges.size(); ++e) {
    auto [u, v] = ds.edges[e];
    fix_arrow(path_label(p, ds.labels[u], n), path_label(p, ds.labels[v], n), display.d.mor[e]);
  }

  const auto P = segal_poset(n, d, side);
  std::set<std::vector<int>> covered;
  bool all_valid = true;
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& I : P.maximal) {
    nlohmann::json pj;
    pj["vertices"] = I.members;
    const auto psi = R.apply(inclusion_map(I));
    pj["base_vertices"] = R.vertices(I);
    auto sub = reindex(c, display, inclusion_map(I));
    auto fails = failing_simplices(c, sub, sub.variant);
    for (auto& f : fails) {
      std::vector<int> g;
      for (int x : f["simplex"].template get<std::vector<int>>()) g.push_back(I.members[x]);
      f["simplex"] = g;
    }
    pj["failures"] = fails;
    pj["valid"] = fails.empty();
    for (const auto& l : wald_shape(k, psi.k(), Variant::Exact).labels) {
      std::vector<int> g;
      for (int x : l) g.push_back(psi.v[x]);
      covered.insert(g);
    }
    if (!fails.empty()) {
      all_valid = false;
      pieces.push_back(pj);
      continue;
    }
    try {
      auto ext = kan_extend(c, sub, p);
      auto bad = validate_cell(c, ext);
      pj["extension_valid"] = !bad.has_value();
      if (bad) {
        all_valid = false;
        pj["extension_failure"] = *bad;
      } else {
        const auto& es = ext.shape();
        auto lift = [&](const std::vector<int>& l) {
          std::vector<int> g;
          for (int x : l) g.push_back(psi.v[x]);
          return g;
        };
        for (int v = 0; v < es.size(); ++v) fix_obj(big.node(lift(es.labels[v])), ext.d.obj[v]);
        for (std::size_t e = 0; e < es.edges.size(); ++e) {
          auto [u, v] = es.edges[e];
          fix_arrow(lift(es.labels[u]), lift(es.labels[v]), ext.d.mor[e]);
        }
      }
    } catch (const error& ex) {
      all_valid = false;
      pj["extension_valid"] = false;
      pj["extension_failure"] = ex.what();
    }
    pieces.push_back(pj);
  }
  out["pieces"] = pieces;
  nlohmann::json uncovered = nlohmann::json::array();
  for (int v = 0; v < big.size(); ++v)
    if (!big.zero[v] && !covered.count(big.labels[v])) uncovered.push_back(big.labels[v]);
  out["uncovered_nodes"] = uncovered;
  out["glue_consistent"] = glue_ok;
  if (!glue_ok) out["glue_conflict"] = glue_conflict;
  out["candidate_valid"] = all_valid && glue_ok;

  typename DiagramEngine<Cat>::Options o;
  o.iso_reduce = false;
  o.limit = 1;
  o.fixed_obj = fixed_obj;
  o.fixed_mor = fixed_mor;
  for (const auto& [edges, f] : path_vals) {
    Path q;
    q.from = big.edges[edges.front()].first;
    q.to = big.edges[edges.back()].second;
    q.edges = edges;
    o.fixed_paths.push_back({q, f});
  }
  std::size_t free_nodes = 0;
  for (int v = 0; v < big.size(); ++v) free_nodes += !big.zero[v] && fixed_obj[v] < 0;
  DiagramEngine<Cat> e(big, c);
  auto found = glue_ok ? e.enumerate(o) : std::vector<Diagram<Mor>>{};
  out["search"] = {{"size_bound", c.bound()}, {"free_nodes", free_nodes}, {"fixed_paths", o.fixed_paths.size()}};
  out["preimage_exists"] = !found.empty();
  if (!found.empty()) out["preimage"] = e.to_json(found.front());
  out["refuted"] = out["candidate_valid"].get<bool>() && found.empty();
  return out;
}

/// Kernel display over FreeAb with A = B = Z and f = x2, plus the controls: f = id
/// over FreeAb, and every f over F_2.
inline nlohmann::json kernel_counterexample(int multiplier = 2, int rank_bound = 2, int entry_bound = 2) {
  nlohmann::json out;
  Cached<FreeAb> z(FreeAb(entry_bound), rank_bound);
  MatrixMaker<ZMat> zm = [](int r, int c, const std::vector<std::vector<int>>& m) {
    std::vector<std::vector<long long>> w(r);
    for (int i = 0; i < r; ++i) w[i].assign(m[i].begin(), m[i].end());
    return FreeAb::make(r, c, w);
  };
  auto run = [&](const auto& cat, const auto& mk, int f) {
    auto disp = kernel_display(cat, mk, 1, 1, {{f}});
    return lift_search(cat, disp, PathSide::Left, 3, Side::Lower);
  };
  auto main = run(z, zm, multiplier);
  out["backend"] = "freeab";
  out["rank_bound"] = rank_bound;
  out["entry_bound"] = entry_bound;
  out["multiplier"] = multiplier;
  out["candidate"] = main;
  out["candidate_valid"] = main["candidate_valid"];
  out["preimage_exists"] = main["preimage_exists"];
  nlohmann::json controls = nlohmann::json::array();
  auto id = run(z, zm, 1);
  controls.push_back({{"backend", "freeab"}, {"multiplier", 1}, {"candidate_valid", id["candidate_valid"]},
                      {"preimage_exists", id["preimage_exists"]}});
  Fq f2(2);
  Indexed<Fq> q(f2, rank_bound);
  MatrixMaker<int> qm = [&](int r, int c, const std::vector<std::vector<int>>& m) { return q.id_of(f2.make(r, c, m)); };
  for (int f : {0, 1}) {
    auto r = run(q, qm, f);
    controls.push_back({{"backend", "fq:2"}, {"multiplier", f}, {"candidate_valid", r["candidate_valid"]},
                        {"preimage_exists", r["preimage_exists"]}});
  }
  out["controls"] = controls;
  bool controls_ok = true;
  for (const auto& ctl : controls) controls_ok = controls_ok && ctl["preimage_exists"].get<bool>();
  out["controls_ok"] = controls_ok;
  out["verdict"] = main["refuted"].get<bool>() && controls_ok;
  return out;
}

/// Three-dimensional instance over F_2 with A = F_2, and the control A = 0.
inline nlohmann::json sum_counterexample(int dim_bound = 2) {
  nlohmann::json out;
  Fq f2(2);
  Indexed<Fq> q(f2, dim_bound);
  MatrixMaker<int> qm = [&](int r, int c, const std::vector<std::vector<int>>& m) { return q.id_of(f2.make(r, c, m)); };
  auto run = [&](int a) { return lift_search(q, sum_display(q, qm, a), PathSide::Double, 3, Side::Lower); };
  auto main = run(1);
  out["backend"] = "fq:2";
  out["dim_bound"] = dim_bound;
  out["candidate"] = main;
  out["candidate_valid"] = main["candidate_valid"];
  out["preimage_exists"] = main["preimage_exists"];
  auto zero = run(0);
  out["controls"] = nlohmann::json::array(
      {{{"backend", "fq:2"}, {"dim", 0}, {"candidate_valid", zero["candidate_valid"]}, {"preimage_exists", zero["preimage_exists"]}}});
  out["controls_ok"] = zero["preimage_exists"].get<bool>();
  out["verdict"] = main["refuted"].get<bool>() && out["controls_ok"].get<bool>();
  return out;
}

} // namespace segal
