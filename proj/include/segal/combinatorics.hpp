#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "segal/error.hpp"

namespace segal {

// Enumeration cap, overridable through SEGAL_LAB_MAX_CELLS.
inline std::size_t max_cells() {
  if (const char* s = std::getenv("SEGAL_LAB_MAX_CELLS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return static_cast<std::size_t>(v);
  }
  return 5'000'000;
}

inline void check_cap(std::size_t count, const char* what) {
  if (count > max_cells())
    fail(errc::resource_limit, std::string(what) + " exceeded " + std::to_string(max_cells()) +
                                   " items (raise SEGAL_LAB_MAX_CELLS)");
}

/// A subset of [n] = {0,...,n}, kept sorted.
struct Subset {
  int n = 0;
  std::vector<int> members;

  Subset() = default;
  Subset(int ambient, std::vector<int> m) : n(ambient), members(std::move(m)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    require(n >= 0, errc::invalid_arguments, "negative ambient");
    for (int x : members)
      require(x >= 0 && x <= n, errc::invalid_arguments, "subset member out of range");
  }

  static Subset full(int n) {
    std::vector<int> v(n + 1);
    for (int i = 0; i <= n; ++i) v[i] = i;
    return Subset(n, v);
  }

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int x) const { return std::binary_search(members.begin(), members.end(), x); }
  bool subset_of(const Subset& o) const {
    return std::includes(o.members.begin(), o.members.end(), members.begin(), members.end());
  }
  Subset intersect(const Subset& o) const {
    std::vector<int> r;
    std::set_intersection(members.begin(), members.end(), o.members.begin(), o.members.end(),
                          std::back_inserter(r));
    return Subset(n, r);
  }
  std::vector<int> gaps() const {
    std::vector<int> g;
    for (int j = 0; j <= n; ++j)
      if (!contains(j)) g.push_back(j);
    return g;
  }
  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members.size(); ++i) s += (i ? "," : "") + std::to_string(members[i]);
    return s + "}";
  }

  // Ordered by size, then lexicographically; ties in ambient broken last.
  friend std::strong_ordering operator<=>(const Subset& a, const Subset& b) {
    if (auto c = a.members.size() <=> b.members.size(); c != 0) return c;
    if (auto c = a.members <=> b.members; c != 0) return c;
    return a.n <=> b.n;
  }
  friend bool operator==(const Subset& a, const Subset& b) = default;
};

inline std::vector<Subset> subsets_of_size(int n, int size) {
  std::vector<Subset> out;
  if (size < 0 || size > n + 1) return out;
  std::vector<int> c(size);
  for (int i = 0; i < size; ++i) c[i] = i;
  while (true) {
    out.emplace_back(n, c);
    int i = size - 1;
    while (i >= 0 && c[i] == n - size + 1 + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < size; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

enum class Parity { Even, Odd, Both, Neither };

inline const char* parity_name(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Both: return "both";
    case Parity::Neither: return "neither";
  }
  return "?";
}

/// Gap parity: a gap j is even when #{i in I : i > j} is even.
inline Parity classify_subset(const Subset& I) {
  bool all_even = true, all_odd = true, any_gap = false;
  for (int j = 0; j <= I.n; ++j) {
    if (I.contains(j)) continue;
    any_gap = true;
    int above = static_cast<int>(I.members.end() -
                                 std::upper_bound(I.members.begin(), I.members.end(), j));
    if (above % 2 == 0)
      all_odd = false;
    else
      all_even = false;
  }
  if (!any_gap) return Parity::Both;
  if (all_even) return Parity::Even;
  if (all_odd) return Parity::Odd;
  return Parity::Neither;
}

inline bool is_even(const Subset& I) {
  auto p = classify_subset(I);
  return p == Parity::Even || p == Parity::Both;
}
inline bool is_odd(const Subset& I) {
  auto p = classify_subset(I);
  return p == Parity::Odd || p == Parity::Both;
}

enum class Side { Lower, Upper };

inline const char* side_name(Side s) { return s == Side::Lower ? "lower" : "upper"; }

struct GaleFacets {
  std::vector<Subset> lower, upper;
};

inline GaleFacets gale_facets(int n, int d) {
  require(d >= 0 && n >= d, errc::invalid_arguments, "gale_facets needs n >= d >= 0");
  GaleFacets g;
  for (auto& I : subsets_of_size(n, d + 1)) {
    if (is_even(I)) g.lower.push_back(I);
    if (is_odd(I)) g.upper.push_back(I);
  }
  return g;
}

struct SegalPoset {
  int n = 0, d = 0;
  Side side = Side::Lower;
  std::vector<Subset> maximal;
  std::vector<Subset> elements;  // downward closure, sorted

  bool contains(const Subset& J) const {
    return std::binary_search(elements.begin(), elements.end(), J);
  }
};

inline std::vector<Subset> downward_closure(int n, const std::vector<Subset>& gens) {
  std::set<Subset> acc;
  for (auto& g : gens) {
    int m = g.size();
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> v;
      for (int i = 0; i < m; ++i)
        if (mask >> i & 1u) v.push_back(g.members[i]);
      acc.insert(Subset(n, v));
    }
  }
  return {acc.begin(), acc.end()};
}

inline SegalPoset segal_poset(int n, int d, Side side) {
  require(d >= 0 && n >= d, errc::invalid_arguments, "segal_poset needs n >= d >= 0");
  auto g = gale_facets(n, d);
  SegalPoset p;
  p.n = n;
  p.d = d;
  p.side = side;
  p.maximal = side == Side::Lower ? g.lower : g.upper;
  p.elements = downward_closure(n, p.maximal);
  return p;
}

/// I ⊕ [0] (append n+1) or [0] ⊕ I (prepend 0, shift by one).
inline Subset append_top(const Subset& I) {
  auto v = I.members;
  v.push_back(I.n + 1);
  return Subset(I.n + 1, v);
}
inline Subset prepend_bottom(const Subset& I) {
  std::vector<int> v{0};
  for (int x : I.members) v.push_back(x + 1);
  return Subset(I.n + 1, v);
}

struct PosetPiece {
  int i = 0;
  SegalPoset upper;                     // U([i-1], d-1)
  std::vector<Subset> shifted_maximal;  // images J ∪ {i} inside [n]
};

/// Splits max L([n],d) into the pieces U([i-1],d-1) ⊕ {i}, i = d..n.
inline std::vector<PosetPiece> decompose_lower_poset(int n, int d) {
  require(d >= 1 && n >= d, errc::invalid_arguments, "decompose_lower_poset needs n >= d >= 1");
  std::vector<PosetPiece> out;
  for (int i = d; i <= n; ++i) {
    PosetPiece p;
    p.i = i;
    p.upper = segal_poset(i - 1, d - 1, Side::Upper);
    for (auto& J : p.upper.maximal) {
      auto v = J.members;
      v.push_back(i);
      p.shifted_maximal.emplace_back(n, v);
    }
    std::sort(p.shifted_maximal.begin(), p.shifted_maximal.end());
    out.push_back(std::move(p));
  }
  return out;
}

inline bool has_adjacent_pair(const Subset& g) {
  for (std::size_t i = 0; i + 1 < g.members.size(); ++i)
    if (g.members[i + 1] == g.members[i] + 1) return true;
  return false;
}

namespace detail {
inline std::optional<Subset> embed_inductive(const Subset& gamma, int n, int k) {
  if (n == 2 * k) {
    for (int j = 0; j <= n; j += 2)
      if (!gamma.contains(j)) {
        std::vector<int> v;
        for (int x = 0; x <= n; ++x)
          if (x != j) v.push_back(x);
        return Subset(n, v);
      }
    return std::nullopt;
  }
  if (!gamma.contains(n)) {
    auto I = embed_inductive(Subset(n - 1, gamma.members), n - 1, k);
    if (!I) return std::nullopt;
    return Subset(n, I->members);
  }
  int m = -1;
  for (int j = n - 1; j > 0; --j)
    if (!gamma.contains(j)) {
      m = j;
      break;
    }
  if (m <= 0) return std::nullopt;
  std::vector<int> v;
  for (int x : gamma.members)
    if (x != n) v.push_back(x);
  v.push_back(m);
  auto I = embed_inductive(Subset(n - 1, v), n - 1, k);
  if (!I) return std::nullopt;
  std::vector<int> w;
  for (int x : I->members)
    if (x != m) w.push_back(x);
  w.push_back(n);
  return Subset(n, w);
}
} // namespace detail

/// Even 2k-subsets of [n] are exactly disjoint unions of k pairs {i,i+1}; finds one
/// covering gamma by a left-to-right scan with memo on (position, pairs placed).
inline std::optional<Subset> embed_by_pairs(const Subset& gamma, int n, int k) {
  std::vector<std::vector<signed char>> memo(n + 2, std::vector<signed char>(k + 1, -1));
  std::vector<int> out;
  std::function<bool(int, int)> go = [&](int i, int used) -> bool {
    if (i > n) return used == k;
    auto& m = memo[i][used];
    if (m == 0) return false;
    if (used < k && i + 1 <= n) {
      out.push_back(i);
      out.push_back(i + 1);
      if (go(i + 2, used + 1)) return true;
      out.resize(out.size() - 2);
    }
    if (!gamma.contains(i) && go(i + 1, used)) return true;
    m = 0;
    return false;
  };
  if (!go(0, 0)) return std::nullopt;
  return Subset(n, out);
}

enum class EmbedMethod { Induction, Pairs, None };

struct EmbedResult {
  std::optional<Subset> subset;
  EmbedMethod method = EmbedMethod::None;
};

/// An even 2k-subset of [n] containing gamma. With adjacent vertices in gamma the inductive
/// construction (drop n, add the top interior gap, recurse, swap back) is tried first; its
/// output is checked, since the swap preserves evenness only when n - m is even.
inline EmbedResult embed_in_even_traced(const Subset& gamma, int n, int k) {
  require(gamma.size() == k + 1, errc::invalid_arguments, "embed_in_even: |gamma| != k+1");
  require(n >= 2 * k && gamma.n == n, errc::invalid_arguments, "embed_in_even: needs n >= 2k");
  if (k >= 1 && has_adjacent_pair(gamma)) {
    auto I = detail::embed_inductive(gamma, n, k);
    if (I && is_even(*I) && gamma.subset_of(*I) && I->size() == 2 * k)
      return {I, EmbedMethod::Induction};
  }
  if (auto I = embed_by_pairs(gamma, n, k)) return {I, EmbedMethod::Pairs};
  return {};
}

inline std::optional<Subset> embed_in_even(const Subset& gamma, int n, int k) {
  return embed_in_even_traced(gamma, n, k).subset;
}

/// A monotone map [k] -> [n], i.e. a k-simplex of Δ^n.
struct MonotoneMap {
  int n = 0;
  std::vector<int> v;

  MonotoneMap() = default;
  MonotoneMap(int target, std::vector<int> values) : n(target), v(std::move(values)) {
    require(!v.empty(), errc::invalid_arguments, "monotone map needs a source");
    for (std::size_t i = 0; i < v.size(); ++i) {
      require(v[i] >= 0 && v[i] <= n, errc::invalid_arguments, "monotone map value out of range");
      require(i == 0 || v[i - 1] <= v[i], errc::invalid_arguments, "map not monotone");
    }
  }

  int k() const { return static_cast<int>(v.size()) - 1; }
  int operator[](int i) const { return v[i]; }
  bool injective() const {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i] == v[i + 1]) return false;
    return true;
  }
  bool surjective() const {
    if (v.front() != 0 || v.back() != n) return false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i + 1] > v[i] + 1) return false;
    return true;
  }
  /// d_i^*: delete position i.
  MonotoneMap face(int i) const {
    require(i >= 0 && i <= k() && k() >= 1, errc::invalid_arguments, "face index out of range");
    auto w = v;
    w.erase(w.begin() + i);
    return MonotoneMap(n, w);
  }
  /// s_j^*: repeat position j.
  MonotoneMap degeneracy(int j) const {
    require(j >= 0 && j <= k(), errc::invalid_arguments, "degeneracy index out of range");
    auto w = v;
    w.insert(w.begin() + j, v[j]);
    return MonotoneMap(n, w);
  }
  /// Post-composition with theta: [n] -> [m].
  MonotoneMap then(const MonotoneMap& theta) const {
    require(theta.k() == n, errc::invalid_arguments, "composition shape mismatch");
    std::vector<int> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = theta.v[v[i]];
    return MonotoneMap(theta.n, w);
  }
  std::string key() const {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  }

  friend auto operator<=>(const MonotoneMap&, const MonotoneMap&) = default;
  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
};

/// Colexicographic comparison: last coordinate first.
inline bool colex_less(const MonotoneMap& a, const MonotoneMap& b) {
  for (int i = a.k(); i >= 0; --i)
    if (a.v[i] != b.v[i]) return a.v[i] < b.v[i];
  return false;
}

inline std::vector<MonotoneMap> all_monotone(int k, int n) {
  std::vector<MonotoneMap> out;
  std::vector<int> v(k + 1, 0);
  while (true) {
    out.emplace_back(n, v);
    int i = k;
    while (i >= 0 && v[i] == n) --i;
    if (i < 0) break;
    ++v[i];
    for (int j = i + 1; j <= k; ++j) v[j] = v[i];
  }
  return out;
}

inline MonotoneMap coface_map(int n, int i) {  // δ_i: [n-1] -> [n], skipping i
  std::vector<int> v;
  for (int x = 0; x <= n; ++x)
    if (x != i) v.push_back(x);
  return MonotoneMap(n, v);
}
inline MonotoneMap codegeneracy_map(int n, int j) {  // σ_j: [n+1] -> [n], hitting j twice
  std::vector<int> v;
  for (int x = 0; x <= n + 1; ++x) v.push_back(x <= j ? x : x - 1);
  return MonotoneMap(n, v);
}
inline MonotoneMap inclusion_map(const Subset& I) {
  require(I.size() >= 1, errc::invalid_arguments, "empty subset has no inclusion");
  return MonotoneMap(I.n, I.members);
}

} // namespace segal
