#pragma once

#include <deque>
#include <functional>
#include <map>
#include <set>

#include "segal/combinatorics.hpp"
#include "segal/exact.hpp"

namespace segal {

using Point = std::vector<Int>;

/// (t, t^2, ..., t^d)
inline Point moment_point(long t, int d) {
  require(d >= 0, errc::invalid_arguments, "moment_point needs d >= 0");
  Point p(d);
  Int x = 1;
  for (int i = 0; i < d; ++i) {
    x *= t;
    p[i] = x;
  }
  return p;
}

/// Affine form through D points of R^D: f(x) = det[[1,x],[1,P_0],...,[1,P_{D-1}]].
struct Hyperplane {
  std::vector<Point> pts;

  Int eval(const Point& x) const {
    const std::size_t D = x.size();
    std::vector<std::vector<Int>> m(D + 1, std::vector<Int>(D + 1));
    m[0][0] = 1;
    for (std::size_t j = 0; j < D; ++j) m[0][j + 1] = x[j];
    for (std::size_t i = 0; i < D; ++i) {
      m[i + 1][0] = 1;
      for (std::size_t j = 0; j < D; ++j) m[i + 1][j + 1] = pts[i][j];
    }
    return determinant(std::move(m));
  }
  /// Coefficient of the last coordinate; the sign of f(q) relative to it says above/below.
  Int vertical() const {
    const std::size_t D = pts.front().size();
    Point zero(D), e(D);
    e[D - 1] = 1;
    return eval(e) - eval(zero);
  }
};

inline Hyperplane hyperplane_through(const std::vector<int>& verts, int dim) {
  Hyperplane h;
  for (int v : verts) h.pts.push_back(moment_point(v, dim));
  return h;
}

enum class FacetSide { Lower, Upper, Both, NotAFacet };

inline const char* facet_side_name(FacetSide s) {
  switch (s) {
    case FacetSide::Lower: return "lower";
    case FacetSide::Upper: return "upper";
    case FacetSide::Both: return "both";
    case FacetSide::NotAFacet: return "not-a-facet";
  }
  return "?";
}

/// Classifies the simplex on I as a boundary facet of C([n], d+1), |I| = d+1.
inline FacetSide facet_side_geometric(const Subset& I, int n, int d) {
  require(I.size() == d + 1 && I.n == n && n >= d, errc::invalid_arguments,
          "facet_side_geometric needs a (d+1)-subset of [n]");
  auto h = hyperplane_through(I.members, d + 1);
  Int c = h.vertical();
  require(c != 0, errc::internal_error, "vertical hyperplane on the moment curve");
  bool above = false, below = false;
  for (int q = 0; q <= n; ++q) {
    if (I.contains(q)) continue;
    int s = sign(h.eval(moment_point(q, d + 1))) * sign(c);
    require(s != 0, errc::internal_error, "moment points not in general position");
    (s > 0 ? above : below) = true;
  }
  if (above && below) return FacetSide::NotAFacet;
  if (above) return FacetSide::Lower;
  if (below) return FacetSide::Upper;
  return FacetSide::Both;
}

/// Normalized volume d!·vol of the simplex on I in R^d.
inline Int simplex_volume(const Subset& I, int d) {
  require(I.size() == d + 1, errc::invalid_arguments, "simplex_volume needs d+1 vertices");
  Point p0 = moment_point(I.members[0], d);
  std::vector<std::vector<Int>> m;
  for (int i = 1; i <= d; ++i) {
    Point p = moment_point(I.members[i], d);
    for (int j = 0; j < d; ++j) p[j] -= p0[j];
    m.push_back(p);
  }
  return abs(determinant(std::move(m)));
}

inline Int cyclic_polytope_volume(int n, int d) {
  Int v = 0;
  for (auto& I : gale_facets(n, d).lower) v += simplex_volume(I, d);
  return v;
}

/// Facet of the simplex I (in R^d) opposite I[p]: upper when the simplex lies below it.
inline bool simplex_facet_is_upper(const Subset& I, int p, int d) {
  std::vector<int> rest;
  for (int i = 0; i <= d; ++i)
    if (i != p) rest.push_back(I.members[i]);
  auto h = hyperplane_through(rest, d);
  return sign(h.eval(moment_point(I.members[p], d))) * sign(h.vertical()) < 0;
}

namespace detail {
// Variables: lambda over A, then mu over B.
inline std::vector<LinearConstraint> meet_system(const Subset& A, const Subset& B, int d,
                                                  bool normalize_each) {
  using C = LinearConstraint;
  const int na = A.size(), nb = B.size(), nv = na + nb;
  std::vector<C> cs;
  for (int i = 0; i < nv; ++i) {
    C c;
    c.a.assign(nv, 0);
    c.a[i] = 1;
    c.b = 0;
    c.op = C::Ge;
    cs.push_back(c);
  }
  std::vector<Point> pa, pb;
  for (int x : A.members) pa.push_back(moment_point(x, d));
  for (int x : B.members) pb.push_back(moment_point(x, d));
  for (int j = 0; j < d; ++j) {
    C c;
    c.a.assign(nv, 0);
    for (int i = 0; i < na; ++i) c.a[i] = Rational(pa[i][j]);
    for (int i = 0; i < nb; ++i) c.a[na + i] = Rational(-pb[i][j]);
    c.b = 0;
    c.op = C::Eq;
    cs.push_back(c);
  }
  if (normalize_each) {
    C s1, s2;
    s1.a.assign(nv, 0);
    s2.a.assign(nv, 0);
    for (int i = 0; i < na; ++i) s1.a[i] = 1;
    for (int i = 0; i < nb; ++i) s2.a[na + i] = 1;
    s1.b = s2.b = 1;
    s1.op = s2.op = C::Eq;
    cs.push_back(s1);
    cs.push_back(s2);
  } else {
    C s;
    s.a.assign(nv, 0);
    for (int i = 0; i < na; ++i) s.a[i] = 1;
    for (int i = 0; i < nb; ++i) s.a[na + i] = -1;
    s.b = 0;
    s.op = C::Eq;
    cs.push_back(s);
  }
  return cs;
}
} // namespace detail

/// Proper intersection by exact linear feasibility: improper iff some common point
/// puts positive weight on a vertex of A outside B or of B outside A.
inline bool proper_intersection_lp(const Subset& A, const Subset& B, int d) {
  auto cs = detail::meet_system(A, B, d, false);
  const int na = A.size(), nv = na + B.size();
  LinearConstraint s;
  s.a.assign(nv, 0);
  for (int i = 0; i < na; ++i)
    if (!B.contains(A.members[i])) s.a[i] = 1;
  for (int i = 0; i < B.size(); ++i)
    if (!A.contains(B.members[i])) s.a[na + i] = 1;
  s.b = 1;
  s.op = LinearConstraint::Eq;
  cs.push_back(s);
  return !fm_feasible(std::move(cs), nv);
}

/// Proper intersection by the alternating-circuit criterion for moment-curve points:
/// improper iff some (d+2)-subset alternates between A and B.
inline bool proper_intersection_circuit(const Subset& A, const Subset& B, int d) {
  std::vector<int> U;
  std::set_union(A.members.begin(), A.members.end(), B.members.begin(), B.members.end(),
                 std::back_inserter(U));
  const int m = static_cast<int>(U.size()), k = d + 2;
  if (m < k) return true;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    bool ab = true, ba = true;
    for (int i = 0; i < k; ++i) {
      int z = U[idx[i]];
      bool even = i % 2 == 0;
      if (!((even ? A : B).contains(z))) ab = false;
      if (!((even ? B : A).contains(z))) ba = false;
    }
    if (ab || ba) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return true;
}

/// Whether conv(I) ∩ conv(J) lies in an upper facet of I and in a lower facet of J.
inline bool lies_below(const Subset& I, const Subset& J, int n, int d, bool empty_is_below = true) {
  require(I.size() == d + 1 && J.size() == d + 1 && I.n == n && J.n == n,
          errc::invalid_arguments, "lies_below needs two (d+1)-subsets of [n]");
  auto base = detail::meet_system(I, J, d, true);
  const int nv = 2 * (d + 1);
  if (!fm_feasible(base, nv)) return empty_is_below;
  auto vanishes = [&](int var) {
    auto cs = base;
    LinearConstraint c;
    c.a.assign(nv, 0);
    c.a[var] = 1;
    c.b = 0;
    c.op = LinearConstraint::Gt;
    cs.push_back(c);
    return !fm_feasible(std::move(cs), nv);
  };
  bool up = false, low = false;
  for (int p = 0; p <= d && !up; ++p)
    if (simplex_facet_is_upper(I, p, d) && vanishes(p)) up = true;
  if (!up) return false;
  for (int p = 0; p <= d && !low; ++p)
    if (!simplex_facet_is_upper(J, p, d) && vanishes(d + 1 + p)) low = true;
  return low;
}

struct Triangulation {
  int n = 0, d = 0;
  std::vector<Subset> simplices;  // sorted

  Triangulation() = default;
  Triangulation(int n_, int d_, std::vector<Subset> s) : n(n_), d(d_), simplices(std::move(s)) {
    std::sort(simplices.begin(), simplices.end());
    simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
  }
  bool contains(const Subset& s) const {
    return std::binary_search(simplices.begin(), simplices.end(), s);
  }
  friend auto operator<=>(const Triangulation&, const Triangulation&) = default;
  friend bool operator==(const Triangulation&, const Triangulation&) = default;
};

inline Triangulation canonical_triangulation(int n, int d, Side side) {
  auto g = gale_facets(n, d);
  return Triangulation(n, d, side == Side::Lower ? g.lower : g.upper);
}

struct TriangulationCertificate {
  bool ok = false;
  std::string reason;
  Int volume = 0, expected_volume = 0;
  std::optional<std::pair<Subset, Subset>> improper_pair;
};

inline TriangulationCertificate is_triangulation(const Triangulation& T) {
  TriangulationCertificate c;
  const int n = T.n, d = T.d;
  for (auto& s : T.simplices)
    require(s.size() == d + 1 && s.n == n, errc::invalid_arguments,
            "triangulation member is not a (d+1)-subset of [n]");
  c.expected_volume = cyclic_polytope_volume(n, d);
  for (auto& s : T.simplices) {
    Int v = simplex_volume(s, d);
    if (v == 0) {
      c.reason = "degenerate simplex " + s.str();
      return c;
    }
    c.volume += v;
  }
  for (std::size_t i = 0; i < T.simplices.size(); ++i)
    for (std::size_t j = i + 1; j < T.simplices.size(); ++j)
      if (!proper_intersection_lp(T.simplices[i], T.simplices[j], d)) {
        c.improper_pair = std::make_pair(T.simplices[i], T.simplices[j]);
        c.reason = "improper intersection " + T.simplices[i].str() + " " + T.simplices[j].str();
        return c;
      }
  if (c.volume != c.expected_volume) {
    c.reason = "volume " + c.volume.str() + " != " + c.expected_volume.str();
    return c;
  }
  c.ok = true;
  return c;
}

struct EnumerationBounds {
  int max_d = 3, max_n = 7;
};

/// All triangulations of C([n],d) by extension search across interior facets.
inline std::vector<Triangulation> enumerate_triangulations(int n, int d, EnumerationBounds b = {}) {
  require(d >= 1 && n >= d, errc::invalid_arguments, "enumerate_triangulations needs n >= d >= 1");
  if (d > b.max_d || n > b.max_n)
    fail(errc::resource_limit, "enumerate_triangulations bounded by d <= " +
                                   std::to_string(b.max_d) + ", n <= " + std::to_string(b.max_n));
  const Int total = cyclic_polytope_volume(n, d);
  auto cands = subsets_of_size(n, d + 1);
  const int nc = static_cast<int>(cands.size());
  std::map<Subset, int> index;
  for (int i = 0; i < nc; ++i) index[cands[i]] = i;
  std::vector<Int> vol(nc);
  for (int i = 0; i < nc; ++i) vol[i] = simplex_volume(cands[i], d);
  std::vector<std::vector<char>> proper(nc, std::vector<char>(nc, 1));
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j)
      proper[i][j] = proper[j][i] = proper_intersection_circuit(cands[i], cands[j], d);

  std::set<Subset> boundary;
  if (d >= 1) {
    auto bf = gale_facets(n, d - 1);
    boundary.insert(bf.lower.begin(), bf.lower.end());
    boundary.insert(bf.upper.begin(), bf.upper.end());
  }
  std::map<Subset, Hyperplane> hp;
  auto side = [&](const Subset& F, int v) {
    auto it = hp.find(F);
    if (it == hp.end()) it = hp.emplace(F, hyperplane_through(F.members, d)).first;
    return sign(it->second.eval(moment_point(v, d)));
  };
  auto facets_of = [&](const Subset& s) {
    std::vector<Subset> out;
    for (int p = 0; p <= d; ++p) {
      auto v = s.members;
      v.erase(v.begin() + p);
      out.emplace_back(n, v);
    }
    return out;
  };

  std::set<Triangulation> found;
  std::vector<int> chosen;
  std::map<Subset, int> open;  // facet -> number of chosen simplices containing it
  Int used = 0;
  std::size_t steps = 0;

  std::function<void()> rec = [&]() {
    check_cap(++steps, "triangulation search");
    const Subset* F = nullptr;
    int owner = -1;
    for (auto& [f, cnt] : open)
      if (cnt == 1 && !boundary.count(f)) {
        F = &f;
        break;
      }
    if (!F) {
      if (used == total) {
        std::vector<Subset> s;
        for (int i : chosen) s.push_back(cands[i]);
        found.insert(Triangulation(n, d, s));
      }
      return;
    }
    const Subset facet = *F;
    for (int c : chosen)
      if (facet.subset_of(cands[c])) owner = c;
    int apex = -1;
    for (int x : cands[owner].members)
      if (!facet.contains(x)) apex = x;
    const int s0 = side(facet, apex);
    for (int v = 0; v <= n; ++v) {
      if (facet.contains(v) || side(facet, v) != -s0) continue;
      auto m = facet.members;
      m.push_back(v);
      int t = index.at(Subset(n, m));
      if (used + vol[t] > total) continue;
      bool ok = true;
      for (int c : chosen)
        if (c == t || !proper[c][t]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(t);
      used += vol[t];
      auto fs = facets_of(cands[t]);
      for (auto& f : fs) ++open[f];
      rec();
      for (auto& f : fs) {
        auto it = open.find(f);
        if (--it->second == 0) open.erase(it);
      }
      used -= vol[t];
      chosen.pop_back();
    }
  };

  // Seed with every simplex on the first lower boundary facet.
  const Subset F0 = gale_facets(n, d - 1).lower.front();
  for (int v = 0; v <= n; ++v) {
    if (F0.contains(v)) continue;
    auto m = F0.members;
    m.push_back(v);
    int t = index.at(Subset(n, m));
    chosen = {t};
    used = vol[t];
    open.clear();
    for (auto& f : facets_of(cands[t])) open[f] = 1;
    rec();
  }
  std::vector<Triangulation> out(found.begin(), found.end());
  for (auto& T : out)
    require(is_triangulation(T).ok, errc::internal_error, "enumerated a non-triangulation");
  return out;
}

/// Replaces the lower facets of the (d+1)-polytope on I by its upper facets.
inline Triangulation flip(const Triangulation& T, const Subset& I) {
  const int d = T.d;
  require(I.size() == d + 2 && I.n == T.n, errc::invalid_arguments, "flip needs a (d+2)-subset");
  auto g = gale_facets(d + 1, d);
  auto relabel = [&](const Subset& s) {
    std::vector<int> v;
    for (int x : s.members) v.push_back(I.members[x]);
    return Subset(T.n, v);
  };
  std::vector<Subset> lower, upper;
  for (auto& s : g.lower) lower.push_back(relabel(s));
  for (auto& s : g.upper) upper.push_back(relabel(s));
  for (auto& s : lower)
    if (!T.contains(s)) fail(errc::not_flippable, "lower facet " + s.str() + " of " + I.str() + " not in T");
  std::vector<Subset> out;
  for (auto& s : T.simplices)
    if (std::find(lower.begin(), lower.end(), s) == lower.end()) out.push_back(s);
  for (auto& s : upper) out.push_back(s);
  Triangulation R(T.n, d, out);
  require(is_triangulation(R).ok, errc::internal_error, "flip produced a non-triangulation");
  return R;
}

inline bool flippable(const Triangulation& T, const Subset& I) {
  auto g = gale_facets(T.d + 1, T.d);
  for (auto& s : g.lower) {
    std::vector<int> v;
    for (int x : s.members) v.push_back(I.members[x]);
    if (!T.contains(Subset(T.n, v))) return false;
  }
  return true;
}

struct FlipGraph {
  std::vector<Triangulation> nodes;
  std::vector<std::vector<std::pair<int, Subset>>> out;  // target, flipped circuit
  bool connected = false;
  int lower_index = -1, upper_index = -1;
  bool lower_is_source = false, upper_is_sink = false;
  bool acyclic = false;
};

inline FlipGraph flip_graph(int n, int d, EnumerationBounds b = {}) {
  FlipGraph G;
  G.nodes = enumerate_triangulations(n, d, b);
  const int N = static_cast<int>(G.nodes.size());
  std::map<Triangulation, int> idx;
  for (int i = 0; i < N; ++i) idx[G.nodes[i]] = i;
  G.out.resize(N);
  std::vector<int> indeg(N, 0);
  for (int i = 0; i < N; ++i)
    for (auto& I : subsets_of_size(n, d + 2))
      if (flippable(G.nodes[i], I)) {
        int j = idx.at(flip(G.nodes[i], I));
        G.out[i].push_back({j, I});
        ++indeg[j];
      }
  G.lower_index = idx.at(canonical_triangulation(n, d, Side::Lower));
  G.upper_index = idx.at(canonical_triangulation(n, d, Side::Upper));
  G.lower_is_source = indeg[G.lower_index] == 0;
  G.upper_is_sink = G.out[G.upper_index].empty();
  // Undirected connectivity.
  std::vector<std::vector<int>> und(N);
  for (int i = 0; i < N; ++i)
    for (auto& [j, _] : G.out[i]) {
      und[i].push_back(j);
      und[j].push_back(i);
    }
  std::vector<char> seen(N, 0);
  std::deque<int> q{G.lower_index};
  seen[G.lower_index] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : und[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++cnt;
        q.push_back(v);
      }
  }
  G.connected = cnt == N;
  // Kahn for acyclicity.
  auto deg = indeg;
  std::deque<int> z;
  for (int i = 0; i < N; ++i)
    if (!deg[i]) z.push_back(i);
  int seen_count = 0;
  while (!z.empty()) {
    int u = z.front();
    z.pop_front();
    ++seen_count;
    for (auto& [v, _] : G.out[u])
      if (--deg[v] == 0) z.push_back(v);
  }
  G.acyclic = seen_count == N;
  return G;
}

/// Some simplex of T whose lower facets all lie in the lower boundary of C([n],d).
inline std::optional<Subset> bottom_simplex(const Triangulation& T) {
  const int d = T.d;
  auto lb = gale_facets(T.n, d - 1).lower;
  for (auto& s : T.simplices) {
    bool ok = true;
    for (int p = 0; p <= d && ok; ++p) {
      if (simplex_facet_is_upper(s, p, d)) continue;
      auto v = s.members;
      v.erase(v.begin() + p);
      ok = std::binary_search(lb.begin(), lb.end(), Subset(T.n, v));
    }
    if (ok) return s;
  }
  return std::nullopt;
}

struct BelowOrderCertificate {
  int n = 0, d = 0;
  std::vector<Subset> nodes;
  std::vector<std::pair<int, int>> edges;  // local relation: shared (d-1)-face
  bool acyclic = false;
  std::vector<int> cycle;
  // Diagnostics for the unrestricted pairwise relation.
  std::size_t literal_edges = 0, literal_two_cycles = 0;
  std::optional<std::pair<Subset, Subset>> literal_two_cycle;
};

/// Computes ≺ among d-simplices meeting in a common (d-1)-face and checks that its
/// transitive closure is antisymmetric; also records 2-cycles of the unrestricted relation.
inline BelowOrderCertificate below_order_check(int n, int d, bool literal_diagnostics = true,
                                               EnumerationBounds b = {}) {
  require(d >= 1 && n >= d, errc::invalid_arguments, "below_order_check needs n >= d >= 1");
  if (d > b.max_d || n > b.max_n)
    fail(errc::resource_limit, "below_order_check bounded by d <= " + std::to_string(b.max_d) +
                                   ", n <= " + std::to_string(b.max_n));
  BelowOrderCertificate c;
  c.n = n;
  c.d = d;
  c.nodes = subsets_of_size(n, d + 1);
  const int N = static_cast<int>(c.nodes.size());
  std::vector<std::vector<char>> lit(N, std::vector<char>(N, 0));
  std::vector<std::vector<int>> adj(N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      auto& I = c.nodes[i];
      auto& J = c.nodes[j];
      int common = I.intersect(J).size();
      if (common == 0 || (!literal_diagnostics && common != d)) continue;
      if (!lies_below(I, J, n, d, false)) continue;
      lit[i][j] = 1;
      ++c.literal_edges;
      if (common == d) {
        c.edges.push_back({i, j});
        adj[i].push_back(j);
      }
    }
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (lit[i][j] && lit[j][i]) {
        ++c.literal_two_cycles;
        if (!c.literal_two_cycle) c.literal_two_cycle = std::make_pair(c.nodes[i], c.nodes[j]);
      }
  std::vector<int> color(N, 0), parent(N, -1);
  std::function<bool(int)> dfs = [&](int u) {
    color[u] = 1;
    for (int v : adj[u]) {
      if (color[v] == 1) {
        c.cycle = {v};
        for (int w = u; w != v; w = parent[w]) c.cycle.push_back(w);
        std::reverse(c.cycle.begin() + 1, c.cycle.end());
        return true;
      }
      if (color[v] == 0) {
        parent[v] = u;
        if (dfs(v)) return true;
      }
    }
    color[u] = 2;
    return false;
  };
  c.acyclic = true;
  for (int i = 0; i < N && c.acyclic; ++i)
    if (color[i] == 0 && dfs(i)) c.acyclic = false;
  return c;
}

} // namespace segal
