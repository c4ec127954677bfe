#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "segal/error.hpp"
#include "segal/exact.hpp"

namespace segal {

/// r x c integer matrix, row-major; a homomorphism Z^c -> Z^r.
struct ZMat {
  int r = 0, c = 0;
  std::vector<Int> a;

  const Int& at(int i, int j) const { return a[i * c + j]; }
  Int& at(int i, int j) { return a[i * c + j]; }

  auto operator<=>(const ZMat&) const = default;
  bool operator==(const ZMat&) const = default;
};

/// Smith normal form U A V = D with U, V unimodular; the inverses are kept too.
struct SmithForm {
  ZMat D, U, V, Uinv, Vinv;
  int rank = 0;
  std::vector<Int> divisors;  // nonzero diagonal entries, positive
};

namespace detail {

inline ZMat zmat(int r, int c) { return ZMat{r, c, std::vector<Int>(static_cast<std::size_t>(r) * c, 0)}; }

inline ZMat zeye(int a) {
  ZMat m = zmat(a, a);
  for (int i = 0; i < a; ++i) m.at(i, i) = 1;
  return m;
}

inline void swap_rows(ZMat& m, int i, int j) {
  for (int k = 0; k < m.c; ++k) std::swap(m.at(i, k), m.at(j, k));
}
inline void swap_cols(ZMat& m, int i, int j) {
  for (int k = 0; k < m.r; ++k) std::swap(m.at(k, i), m.at(k, j));
}
// row i += q row t
inline void add_row(ZMat& m, int i, int t, const Int& q) {
  if (q == 0) return;
  for (int k = 0; k < m.c; ++k) m.at(i, k) += q * m.at(t, k);
}
// col j += q col t
inline void add_col(ZMat& m, int j, int t, const Int& q) {
  if (q == 0) return;
  for (int k = 0; k < m.r; ++k) m.at(k, j) += q * m.at(k, t);
}

} // namespace detail

inline SmithForm smith_normal_form(const ZMat& A) {
  using namespace detail;
  SmithForm s{A, zeye(A.r), zeye(A.c), zeye(A.r), zeye(A.c), 0, {}};
  ZMat& D = s.D;
  // Row operation R applied as U <- R U, Uinv <- Uinv R^-1; column operations dually.
  auto rswap = [&](int i, int j) {
    swap_rows(D, i, j);
    swap_rows(s.U, i, j);
    swap_cols(s.Uinv, i, j);
  };
  auto cswap = [&](int i, int j) {
    swap_cols(D, i, j);
    swap_cols(s.V, i, j);
    swap_rows(s.Vinv, i, j);
  };
  auto radd = [&](int i, int t, const Int& q) {  // row i += q row t
    add_row(D, i, t, q);
    add_row(s.U, i, t, q);
    add_col(s.Uinv, t, i, -q);
  };
  auto cadd = [&](int j, int t, const Int& q) {  // col j += q col t
    add_col(D, j, t, q);
    add_col(s.V, j, t, q);
    add_row(s.Vinv, t, j, -q);
  };
  const int m = std::min(A.r, A.c);
  for (int t = 0; t < m; ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < A.r; ++i)
      for (int j = t; j < A.c; ++j)
        if (D.at(i, j) != 0 && (pi < 0 || abs(D.at(i, j)) < abs(D.at(pi, pj)))) pi = i, pj = j;
    if (pi < 0) break;
    rswap(t, pi);
    cswap(t, pj);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < A.r; ++i) {
        if (D.at(i, t) == 0) continue;
        radd(i, t, -(D.at(i, t) / D.at(t, t)));
        if (D.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < A.c; ++j) {
        if (D.at(t, j) == 0) continue;
        cadd(j, t, -(D.at(t, j) / D.at(t, t)));
        if (D.at(t, j) != 0) clean = false;
      }
      if (!clean) {
        int bi = t, bj = t;
        for (int i = t + 1; i < A.r; ++i)
          if (D.at(i, t) != 0 && abs(D.at(i, t)) < abs(D.at(bi, bj))) bi = i, bj = t;
        for (int j = t + 1; j < A.c; ++j)
          if (D.at(t, j) != 0 && abs(D.at(t, j)) < abs(D.at(bi, bj))) bi = t, bj = j;
        if (bi != t) rswap(t, bi);
        if (bj != t) cswap(t, bj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < A.r && bad < 0; ++i)
        for (int j = t + 1; j < A.c; ++j)
          if (D.at(i, j) % D.at(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      radd(t, bad, 1);
    }
    if (D.at(t, t) < 0) {
      for (int k = 0; k < D.c; ++k) D.at(t, k) = -D.at(t, k);
      for (int k = 0; k < s.U.c; ++k) s.U.at(t, k) = -s.U.at(t, k);
      for (int k = 0; k < s.Uinv.r; ++k) s.Uinv.at(k, t) = -s.Uinv.at(k, t);
    }
    s.divisors.push_back(D.at(t, t));
    ++s.rank;
  }
  return s;
}

/// Finitely generated free abelian groups. Admissible monos are split injections
/// (torsion-free cokernel), admissible epis are surjections. Hom enumeration is
/// truncated to matrices with entries in [-entry_bound, entry_bound].
class FreeAb {
public:
  using Mor = ZMat;

  explicit FreeAb(int entry_bound = 2) : bound_(entry_bound) {}

  int entry_bound() const { return bound_; }
  std::string name() const { return "freeab"; }

  static int src(const Mor& f) { return f.c; }
  static int dst(const Mor& f) { return f.r; }
  static Mor zero(int a, int b) { return detail::zmat(b, a); }
  static Mor identity(int a) { return detail::zeye(a); }

  static Mor make(int rows, int cols, const std::vector<std::vector<long long>>& m) {
    require(static_cast<int>(m.size()) == rows, errc::invalid_input, "freeab matrix: wrong row count");
    Mor f = detail::zmat(rows, cols);
    for (int i = 0; i < rows; ++i) {
      require(static_cast<int>(m[i].size()) == cols, errc::invalid_input, "freeab matrix: ragged rows");
      for (int j = 0; j < cols; ++j) f.at(i, j) = m[i][j];
    }
    return f;
  }

  static Mor compose(const Mor& g, const Mor& f) {
    require(g.c == f.r, errc::invalid_arguments, "freeab compose: shapes differ");
    Mor h = detail::zmat(g.r, f.c);
    for (int i = 0; i < g.r; ++i)
      for (int k = 0; k < g.c; ++k) {
        if (g.at(i, k) == 0) continue;
        for (int j = 0; j < f.c; ++j) h.at(i, j) += g.at(i, k) * f.at(k, j);
      }
    return h;
  }

  static Mor transpose(const Mor& f) {
    Mor t = detail::zmat(f.c, f.r);
    for (int i = 0; i < f.r; ++i)
      for (int j = 0; j < f.c; ++j) t.at(j, i) = f.at(i, j);
    return t;
  }

  static bool unit_divisors(const SmithForm& s) {
    for (auto& d : s.divisors)
      if (d != 1) return false;
    return true;
  }

  static bool is_zero(const Mor& f) {
    for (auto& x : f.a)
      if (x != 0) return false;
    return true;
  }
  static bool is_adm_mono(const Mor& f) {
    auto s = smith_normal_form(f);
    return s.rank == f.c && unit_divisors(s);
  }
  static bool is_adm_epi(const Mor& f) {
    auto s = smith_normal_form(f);
    return s.rank == f.r && unit_divisors(s);
  }
  static bool is_iso(const Mor& f) { return f.r == f.c && is_adm_mono(f); }

  static std::optional<Mor> kernel(const Mor& f) {
    auto s = smith_normal_form(f);
    Mor k = detail::zmat(f.c, f.c - s.rank);
    for (int i = 0; i < f.c; ++i)
      for (int j = s.rank; j < f.c; ++j) k.at(i, j - s.rank) = s.V.at(i, j);
    return k;
  }

  /// Projection onto the torsion-free part of Z^r / im f; torsion is invisible
  /// to maps into free groups.
  static std::optional<Mor> cokernel(const Mor& f) {
    auto s = smith_normal_form(f);
    Mor q = detail::zmat(f.r - s.rank, f.r);
    for (int i = s.rank; i < f.r; ++i)
      for (int j = 0; j < f.r; ++j) q.at(i - s.rank, j) = s.U.at(i, j);
    return q;
  }

  static std::optional<std::pair<Mor, Mor>> factor_admissible(const Mor& f) {
    auto s = smith_normal_form(f);
    if (!unit_divisors(s)) return std::nullopt;
    Mor m = detail::zmat(f.r, s.rank), e = detail::zmat(s.rank, f.c);
    for (int i = 0; i < f.r; ++i)
      for (int j = 0; j < s.rank; ++j) m.at(i, j) = s.Uinv.at(i, j);
    for (int i = 0; i < s.rank; ++i)
      for (int j = 0; j < f.c; ++j) e.at(i, j) = s.Vinv.at(i, j);
    return std::make_pair(e, m);
  }

  /// Some integer X with A X = B.
  static std::optional<Mor> solve(const Mor& A, const Mor& B) {
    require(A.r == B.r, errc::invalid_arguments, "freeab solve: shapes differ");
    auto s = smith_normal_form(A);
    Mor UB = compose(s.U, B);
    Mor Y = detail::zmat(A.c, B.c);
    for (int i = 0; i < A.r; ++i)
      for (int j = 0; j < B.c; ++j) {
        if (i < s.rank) {
          if (UB.at(i, j) % s.divisors[i] != 0) return std::nullopt;
          Y.at(i, j) = UB.at(i, j) / s.divisors[i];
        } else if (UB.at(i, j) != 0) {
          return std::nullopt;
        }
      }
    return compose(s.V, Y);
  }

  static std::optional<Mor> lift_mono(const Mor& m, const Mor& g) {
    auto h = solve(m, g);
    if (!h || compose(m, *h) != g) return std::nullopt;
    return h;
  }
  static std::optional<Mor> descend_epi(const Mor& e, const Mor& g) {
    auto ht = solve(transpose(e), transpose(g));
    if (!ht) return std::nullopt;
    Mor h = transpose(*ht);
    if (compose(h, e) != g) return std::nullopt;
    return h;
  }
  static Mor inverse(const Mor& f) {
    require(is_iso(f), errc::invalid_arguments, "freeab inverse: not an iso");
    return *solve(f, identity(f.c));
  }

  /// All b x a matrices with entries in the bound, lexicographic for the entry
  /// order 0, 1, -1, 2, -2, ...
  std::vector<Mor> homs(int a, int b) const {
    std::vector<Int> vals{0};
    for (int v = 1; v <= bound_; ++v) vals.push_back(v), vals.push_back(-v);
    std::vector<Mor> out;
    Mor f = detail::zmat(b, a);
    std::vector<std::size_t> idx(f.a.size(), 0);
    for (;;) {
      for (std::size_t i = 0; i < idx.size(); ++i) f.a[i] = vals[idx[i]];
      out.push_back(f);
      std::size_t i = idx.size();
      for (;;) {
        if (i == 0) return out;
        --i;
        if (++idx[i] < vals.size()) break;
        idx[i] = 0;
      }
    }
  }

  std::vector<Mor> automorphisms(int a) const {
    std::vector<Mor> out;
    for (auto& f : homs(a, a))
      if (is_iso(f)) out.push_back(f);
    return out;
  }

  static nlohmann::json to_json(const Mor& f) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < f.r; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < f.c; ++j) row.push_back(f.at(i, j).convert_to<long long>());
      rows.push_back(row);
    }
    return nlohmann::json{{"src", f.c}, {"dst", f.r}, {"matrix", rows}};
  }
  static Mor from_json(const nlohmann::json& j) {
    return make(j.at("dst").get<int>(), j.at("src").get<int>(),
                j.at("matrix").get<std::vector<std::vector<long long>>>());
  }

private:
  int bound_;
};

} // namespace segal
