#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "segal/error.hpp"

namespace segal {

/// Pointed map between finite pointed sets {*,0,...,s-1} -> {*,0,...,t-1}.
/// img[i] is the image of element i, or -1 for the basepoint. Away from the
/// basepoint preimage the map is injective.
struct F1Map {
  int s = 0, t = 0;
  std::vector<int> img;

  auto operator<=>(const F1Map&) const = default;
};

/// Finite pointed sets with partially injective pointed maps. Objects are
/// encoded by the number of non-base points.
class F1 {
public:
  using Mor = F1Map;

  std::string name() const { return "f1"; }

  static int src(const Mor& f) { return f.s; }
  static int dst(const Mor& f) { return f.t; }

  static Mor identity(int a) {
    Mor f{a, a, std::vector<int>(a)};
    std::iota(f.img.begin(), f.img.end(), 0);
    return f;
  }
  static Mor zero(int a, int b) { return Mor{a, b, std::vector<int>(a, -1)}; }

  static Mor make(int s, int t, std::vector<int> img) {
    require(static_cast<int>(img.size()) == s, errc::invalid_input, "f1 map: wrong length");
    std::vector<char> hit(t, 0);
    for (int x : img) {
      require(x >= -1 && x < t, errc::invalid_input, "f1 map: image out of range");
      if (x < 0) continue;
      require(!hit[x], errc::invalid_input, "f1 map: not injective away from the basepoint");
      hit[x] = 1;
    }
    return Mor{s, t, std::move(img)};
  }

  /// g after f.
  static Mor compose(const Mor& g, const Mor& f) {
    require(f.t == g.s, errc::invalid_arguments, "f1 compose: shapes differ");
    Mor h{f.s, g.t, std::vector<int>(f.s)};
    for (int i = 0; i < f.s; ++i) h.img[i] = f.img[i] < 0 ? -1 : g.img[f.img[i]];
    return h;
  }

  static bool is_zero(const Mor& f) {
    return std::all_of(f.img.begin(), f.img.end(), [](int x) { return x < 0; });
  }
  static int rank(const Mor& f) {
    return static_cast<int>(std::count_if(f.img.begin(), f.img.end(), [](int x) { return x >= 0; }));
  }
  static bool is_adm_mono(const Mor& f) { return rank(f) == f.s; }
  static bool is_adm_epi(const Mor& f) { return rank(f) == f.t; }
  static bool is_iso(const Mor& f) { return f.s == f.t && rank(f) == f.s; }

  static Mor inverse(const Mor& f) {
    require(is_iso(f), errc::invalid_arguments, "f1 inverse: not an iso");
    Mor g{f.t, f.s, std::vector<int>(f.t)};
    for (int i = 0; i < f.s; ++i) g.img[f.img[i]] = i;
    return g;
  }

  /// Inclusion of the basepoint preimage.
  static std::optional<Mor> kernel(const Mor& f) {
    std::vector<int> k;
    for (int i = 0; i < f.s; ++i)
      if (f.img[i] < 0) k.push_back(i);
    int m = static_cast<int>(k.size());
    return Mor{m, f.s, std::move(k)};
  }

  /// Collapse of the image.
  static std::optional<Mor> cokernel(const Mor& f) {
    std::vector<char> hit(f.t, 0);
    for (int x : f.img)
      if (x >= 0) hit[x] = 1;
    Mor c{f.t, 0, std::vector<int>(f.t, -1)};
    for (int j = 0; j < f.t; ++j)
      if (!hit[j]) c.img[j] = c.t++;
    return c;
  }

  /// f = m after e with e an admissible epi and m an admissible mono. Every
  /// pointed map of this kind factors.
  static std::optional<std::pair<Mor, Mor>> factor_admissible(const Mor& f) {
    std::vector<int> im;
    for (int x : f.img)
      if (x >= 0) im.push_back(x);
    std::sort(im.begin(), im.end());
    int r = static_cast<int>(im.size());
    Mor e{f.s, r, std::vector<int>(f.s, -1)};
    for (int i = 0; i < f.s; ++i)
      if (f.img[i] >= 0)
        e.img[i] = static_cast<int>(std::lower_bound(im.begin(), im.end(), f.img[i]) - im.begin());
    Mor m{r, f.t, im};
    return std::make_pair(e, m);
  }

  /// h with m after h = g, when g factors through the mono m.
  static std::optional<Mor> lift_mono(const Mor& m, const Mor& g) {
    std::vector<int> pre(m.t, -1);
    for (int i = 0; i < m.s; ++i)
      if (m.img[i] >= 0) pre[m.img[i]] = i;
    Mor h{g.s, m.s, std::vector<int>(g.s, -1)};
    for (int i = 0; i < g.s; ++i) {
      if (g.img[i] < 0) continue;
      if (pre[g.img[i]] < 0) return std::nullopt;
      h.img[i] = pre[g.img[i]];
    }
    if (compose(m, h) != g) return std::nullopt;
    return h;
  }

  /// h with h after e = g, when g factors through the epi e.
  static std::optional<Mor> descend_epi(const Mor& e, const Mor& g) {
    Mor h{e.t, g.t, std::vector<int>(e.t, -1)};
    for (int i = 0; i < e.s; ++i)
      if (e.img[i] >= 0) h.img[e.img[i]] = g.img[i];
    std::vector<char> hit(g.t, 0);
    for (int x : h.img) {
      if (x < 0) continue;
      if (hit[x]) return std::nullopt;
      hit[x] = 1;
    }
    if (compose(h, e) != g) return std::nullopt;
    return h;
  }

  static std::vector<Mor> homs(int a, int b) {
    std::vector<Mor> out;
    Mor f{a, b, std::vector<int>(a, -1)};
    std::vector<char> used(b, 0);
    auto rec = [&](auto&& self, int i) -> void {
      if (i == a) {
        out.push_back(f);
        return;
      }
      f.img[i] = -1;
      self(self, i + 1);
      for (int j = 0; j < b; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        f.img[i] = j;
        self(self, i + 1);
        used[j] = 0;
      }
      f.img[i] = -1;
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  static std::vector<Mor> automorphisms(int a) {
    std::vector<Mor> out;
    Mor f = identity(a);
    do out.push_back(f);
    while (std::next_permutation(f.img.begin(), f.img.end()));
    return out;
  }

  static nlohmann::json to_json(const Mor& f) {
    return nlohmann::json{{"src", f.s}, {"dst", f.t}, {"map", f.img}};
  }
  static Mor from_json(const nlohmann::json& j) {
    return make(j.at("src").get<int>(), j.at("dst").get<int>(), j.at("map").get<std::vector<int>>());
  }
};

} // namespace segal
