#pragma once

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

/// Skeleton of a backend restricted to objects of size <= bound, with morphisms
/// numbered and composition, factorizations and short exactness tabulated. The
/// backend's bounded hom sets must be closed under composition (true for F1 and Fq).
template <class B>
class Indexed {
public:
  using Mor = int;
  using Base = B;
  static constexpr bool krull_schmidt = requires { requires B::krull_schmidt; };
  using Value = typename B::Mor;

  Indexed(B base, int bound) : b_(std::move(base)), bound_(bound) {
    require(bound >= 0, errc::invalid_arguments, "indexed category: negative bound");
    const int n = bound + 1;
    off_.assign(n, std::vector<int>(n, 0));
    cnt_.assign(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        auto hs = b_.homs(a, c);
        off_[a][c] = static_cast<int>(values_.size());
        cnt_[a][c] = static_cast<int>(hs.size());
        check_cap(values_.size() + hs.size(), "indexed morphisms");
        for (auto& f : hs) {
          ids_.emplace(f, static_cast<int>(values_.size()));
          src_.push_back(a);
          dst_.push_back(c);
          values_.push_back(f);
        }
      }
    const int total = static_cast<int>(values_.size());
    homs_.assign(n, std::vector<std::vector<int>>(n));
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        for (int i = 0; i < cnt_[a][c]; ++i) homs_[a][c].push_back(off_[a][c] + i);
    // composition tables per (a, b, c)
    comp_off_.assign(n, std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n, 0)));
    for (int a = 0; a < n; ++a)
      for (int m = 0; m < n; ++m)
        for (int c = 0; c < n; ++c) {
          comp_off_[a][m][c] = comp_.size();
          check_cap(comp_.size() + static_cast<std::size_t>(cnt_[a][m]) * cnt_[m][c], "composition table");
          for (int g = 0; g < cnt_[m][c]; ++g)
            for (int f = 0; f < cnt_[a][m]; ++f)
              comp_.push_back(id_of(b_.compose(values_[off_[m][c] + g], values_[off_[a][m] + f])));
        }
    if (total <= 4096) {
      flat_.assign(static_cast<std::size_t>(total) * total, -1);
      for (int g = 0; g < total; ++g)
        for (int f = 0; f < total; ++f)
          if (dst_[f] == src_[g]) flat_[static_cast<std::size_t>(g) * total + f] = slow_compose(g, f);
    }
    mono_.resize(total);
    epi_.resize(total);
    iso_.resize(total);
    zero_.resize(total);
    inv_.assign(total, -1);
    fac_.assign(total, std::nullopt);
    for (int f = 0; f < total; ++f) {
      mono_[f] = b_.is_adm_mono(values_[f]);
      epi_[f] = b_.is_adm_epi(values_[f]);
      iso_[f] = b_.is_iso(values_[f]);
      zero_[f] = b_.is_zero(values_[f]);
      if (iso_[f]) inv_[f] = id_of(b_.inverse(values_[f]));
      if (auto em = b_.factor_admissible(values_[f])) fac_[f] = std::make_pair(id_of(em->first), id_of(em->second));
    }
    for (int a = 0; a < n; ++a) ident_.push_back(id_of(b_.identity(a)));
    zid_.assign(n, std::vector<int>(n, 0));
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) zid_[a][c] = id_of(b_.zero(a, c));
    auts_.resize(n);
    for (int a = 0; a < n; ++a)
      for (int f : homs_[a][a])
        if (iso_[f]) auts_[a].push_back(f);
    // right-cancellable morphisms and the unique factorizations through them
    epic_.assign(total, 0);
    for (int e = 0; e < total; ++e) {
      bool ok = true;
      for (int c = 0; c < n && ok; ++c) {
        std::set<int> seen;
        for (int f : homs_[dst_[e]][c])
          if (!seen.insert(compose(f, e)).second) ok = false;
      }
      epic_[e] = ok;
    }
    quot_.assign(static_cast<std::size_t>(total) * total, -1);
    for (int e = 0; e < total; ++e) {
      if (!epic_[e]) continue;
      for (int c = 0; c < n; ++c)
        for (int f : homs_[dst_[e]][c]) quot_[static_cast<std::size_t>(e) * total + compose(f, e)] = f;
    }
    // f with f . m = r, and f with m . f = r, bucketed by (m, r)
    if (total <= 1024) {
      solve_table(rs_off_, rs_, total, [&](int m, auto&& put) {
        for (int c = 0; c < n; ++c)
          for (int f : homs_[dst_[m]][c]) put(compose(f, m), f);
      });
      solve_table(ls_off_, ls_, total, [&](int m, auto&& put) {
        for (int a = 0; a < n; ++a)
          for (int f : homs_[a][src_[m]]) put(compose(m, f), f);
      });
    }
    // short exactness for every (mono into x, epi out of x)
    pos_.assign(total, -1);
    into_.resize(n);
    outof_.resize(n);
    for (int f = 0; f < total; ++f) {
      if (mono_[f]) {
        pos_[f] = static_cast<int>(into_[dst_[f]].size());
        into_[dst_[f]].push_back(f);
      }
    }
    epos_.assign(total, -1);
    for (int f = 0; f < total; ++f)
      if (epi_[f]) {
        epos_[f] = static_cast<int>(outof_[src_[f]].size());
        outof_[src_[f]].push_back(f);
      }
    ses_.resize(n);
    for (int x = 0; x < n; ++x) {
      ses_[x].assign(into_[x].size() * outof_[x].size(), 0);
      for (std::size_t i = 0; i < into_[x].size(); ++i)
        for (std::size_t j = 0; j < outof_[x].size(); ++j)
          ses_[x][i * outof_[x].size() + j] =
              is_short_exact(b_, values_[into_[x][i]], values_[outof_[x][j]]) ? 1 : 0;
    }
  }

  const B& base() const { return b_; }
  int bound() const { return bound_; }
  std::string name() const { return b_.name(); }
  std::size_t size() const { return values_.size(); }

  int src(int f) const { return src_[f]; }
  int dst(int f) const { return dst_[f]; }
  int identity(int a) const { return ident_[a]; }
  int zero(int a, int c) const { return zid_[a][c]; }
  int compose(int g, int f) const {
    if (!flat_.empty()) return flat_[static_cast<std::size_t>(g) * values_.size() + f];
    return slow_compose(g, f);
  }
  int slow_compose(int g, int f) const {
    const int a = src_[f], m = dst_[f], c = dst_[g];
    return comp_[comp_off_[a][m][c] + static_cast<std::size_t>(g - off_[m][c]) * cnt_[a][m] + (f - off_[a][m])];
  }
  bool is_zero(int f) const { return zero_[f]; }
  bool is_adm_mono(int f) const { return mono_[f]; }
  bool is_adm_epi(int f) const { return epi_[f]; }
  bool is_iso(int f) const { return iso_[f]; }
  int inverse(int f) const {
    require(inv_[f] >= 0, errc::invalid_arguments, "indexed inverse: not an iso");
    return inv_[f];
  }
  std::optional<std::pair<int, int>> factor_admissible(int f) const { return fac_[f]; }
  /// Whether e is right-cancellable within the bounded category.
  bool is_epic(int e) const { return epic_[e]; }
  /// For epic e, the unique f with f . e = g (-1 if none).
  int factor_through(int e, int g) const { return quot_[static_cast<std::size_t>(e) * values_.size() + g]; }
  bool has_solutions() const { return !rs_off_.empty(); }
  /// Morphisms f with f . m = r.
  std::span<const int> solve_right(int m, int r) const { return span_of(rs_off_, rs_, m, r); }
  /// Morphisms f with m . f = r.
  std::span<const int> solve_left(int m, int r) const { return span_of(ls_off_, ls_, m, r); }
  bool ses(int m, int e) const {
    if (pos_[m] < 0 || epos_[e] < 0 || dst_[m] != src_[e]) return false;
    const int x = dst_[m];
    return ses_[x][static_cast<std::size_t>(pos_[m]) * outof_[x].size() + epos_[e]];
  }

  const std::vector<int>& homs(int a, int c) const {
    require(a <= bound_ && c <= bound_ && a >= 0 && c >= 0, errc::resource_limit, "object outside the indexed bound");
    return homs_[a][c];
  }
  const std::vector<int>& automorphisms(int a) const { return auts_[a]; }

  std::optional<int> kernel(int f) const { return lookup(b_.kernel(values_[f])); }
  std::optional<int> cokernel(int f) const { return lookup(b_.cokernel(values_[f])); }
  std::optional<int> lift_mono(int m, int g) const { return lookup(b_.lift_mono(values_[m], values_[g])); }
  std::optional<int> descend_epi(int e, int g) const { return lookup(b_.descend_epi(values_[e], values_[g])); }

  const Value& value(int f) const { return values_[f]; }
  int id_of(const Value& v) const {
    auto it = ids_.find(v);
    require(it != ids_.end(), errc::resource_limit, "morphism outside the indexed bound");
    return it->second;
  }
  nlohmann::json to_json(int f) const { return b_.to_json(values_[f]); }

private:
  template <class Gen>
  static void solve_table(std::vector<int>& off, std::vector<int>& out, int total, Gen&& gen) {
    const std::size_t keys = static_cast<std::size_t>(total) * total;
    off.assign(keys + 1, 0);
    for (int m = 0; m < total; ++m)
      gen(m, [&](int r, int) { ++off[static_cast<std::size_t>(m) * total + r + 1]; });
    for (std::size_t i = 0; i < keys; ++i) off[i + 1] += off[i];
    out.assign(off[keys], 0);
    std::vector<int> fill(off.begin(), off.end() - 1);
    for (int m = 0; m < total; ++m)
      gen(m, [&](int r, int f) { out[fill[static_cast<std::size_t>(m) * total + r]++] = f; });
  }
  std::span<const int> span_of(const std::vector<int>& off, const std::vector<int>& v, int m, int r) const {
    const std::size_t k = static_cast<std::size_t>(m) * values_.size() + r;
    return {v.data() + off[k], static_cast<std::size_t>(off[k + 1] - off[k])};
  }

  std::optional<int> lookup(const std::optional<Value>& v) const {
    if (!v) return std::nullopt;
    auto it = ids_.find(*v);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  B b_;
  int bound_;
  std::vector<Value> values_;
  std::map<Value, int> ids_;
  std::vector<int> src_, dst_;
  std::vector<std::vector<int>> off_, cnt_, zid_;
  std::vector<std::vector<std::vector<int>>> homs_;
  std::vector<std::vector<std::vector<std::size_t>>> comp_off_;
  std::vector<int> comp_, flat_, quot_, rs_off_, rs_, ls_off_, ls_;
  std::vector<char> epic_;
  std::vector<char> mono_, epi_, iso_, zero_;
  std::vector<int> inv_, ident_;
  std::vector<std::optional<std::pair<int, int>>> fac_;
  std::vector<std::vector<int>> auts_;
  std::vector<int> pos_, epos_;
  std::vector<std::vector<int>> into_, outof_;
  std::vector<std::vector<char>> ses_;
};

/// A backend used directly on values, with hom sets cached. Needed when bounded
/// hom sets are not closed under composition (FreeAb).
template <class B>
class Cached {
public:
  using Mor = typename B::Mor;
  using Base = B;
  static constexpr bool krull_schmidt = requires { requires B::krull_schmidt; };

  Cached(B base, int bound) : b_(std::move(base)), bound_(bound) {
    homs_.assign(bound + 1, std::vector<std::vector<Mor>>(bound + 1));
    auts_.resize(bound + 1);
    for (int a = 0; a <= bound; ++a) {
      for (int c = 0; c <= bound; ++c) homs_[a][c] = b_.homs(a, c);
      auts_[a] = b_.automorphisms(a);
    }
  }

  const B& base() const { return b_; }
  int bound() const { return bound_; }
  std::string name() const { return b_.name(); }

  int src(const Mor& f) const { return b_.src(f); }
  int dst(const Mor& f) const { return b_.dst(f); }
  Mor identity(int a) const { return b_.identity(a); }
  Mor zero(int a, int c) const { return b_.zero(a, c); }
  Mor compose(const Mor& g, const Mor& f) const { return b_.compose(g, f); }
  bool is_zero(const Mor& f) const { return b_.is_zero(f); }
  bool is_adm_mono(const Mor& f) const { return b_.is_adm_mono(f); }
  bool is_adm_epi(const Mor& f) const { return b_.is_adm_epi(f); }
  bool is_iso(const Mor& f) const { return b_.is_iso(f); }
  Mor inverse(const Mor& f) const { return b_.inverse(f); }
  auto factor_admissible(const Mor& f) const { return b_.factor_admissible(f); }
  auto kernel(const Mor& f) const { return b_.kernel(f); }
  auto cokernel(const Mor& f) const { return b_.cokernel(f); }
  auto lift_mono(const Mor& m, const Mor& g) const { return b_.lift_mono(m, g); }
  auto descend_epi(const Mor& e, const Mor& g) const { return b_.descend_epi(e, g); }

  const std::vector<Mor>& homs(int a, int c) const {
    require(a <= bound_ && c <= bound_ && a >= 0 && c >= 0, errc::resource_limit, "object outside the cached bound");
    return homs_[a][c];
  }
  const std::vector<Mor>& automorphisms(int a) const { return auts_[a]; }
  const Mor& value(const Mor& f) const { return f; }
  nlohmann::json to_json(const Mor& f) const { return b_.to_json(f); }

private:
  B b_;
  int bound_;
  std::vector<std::vector<std::vector<Mor>>> homs_;
  std::vector<std::vector<Mor>> auts_;
};

} // namespace segal
