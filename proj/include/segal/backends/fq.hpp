#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "segal/error.hpp"

namespace segal {

/// r x c matrix over a prime field, row-major; a linear map F^c -> F^r.
struct FqMat {
  int r = 0, c = 0;
  std::vector<std::uint8_t> a;

  int at(int i, int j) const { return a[i * c + j]; }
  std::uint8_t& at(int i, int j) { return a[i * c + j]; }

  auto operator<=>(const FqMat&) const = default;
};

/// Finite dimensional vector spaces over F_q, q prime. Objects are dimensions.
class Fq {
public:
  using Mor = FqMat;
  // additive, and bounded diagrams decompose uniquely into indecomposables
  static constexpr bool krull_schmidt = true;

  explicit Fq(int q = 2) : q_(q) {
    bool prime = q >= 2;
    for (int p = 2; p * p <= q; ++p)
      if (q % p == 0) prime = false;
    require(prime && q < 256, errc::invalid_arguments, "fq: q must be a prime below 256");
    inv_.assign(q, 0);
    for (int x = 1; x < q; ++x)
      for (int y = 1; y < q; ++y)
        if (x * y % q == 1) inv_[x] = y;
  }

  int q() const { return q_; }
  std::string name() const { return "fq:" + std::to_string(q_); }

  static int src(const Mor& f) { return f.c; }
  static int dst(const Mor& f) { return f.r; }

  static Mor zero(int a, int b) { return Mor{b, a, std::vector<std::uint8_t>(a * b, 0)}; }
  static Mor identity(int a) {
    Mor f = zero(a, a);
    for (int i = 0; i < a; ++i) f.at(i, i) = 1;
    return f;
  }

  Mor make(int rows, int cols, const std::vector<std::vector<int>>& m) const {
    require(static_cast<int>(m.size()) == rows, errc::invalid_input, "fq matrix: wrong row count");
    Mor f = zero(cols, rows);
    for (int i = 0; i < rows; ++i) {
      require(static_cast<int>(m[i].size()) == cols, errc::invalid_input, "fq matrix: ragged rows");
      for (int j = 0; j < cols; ++j) f.at(i, j) = static_cast<std::uint8_t>(((m[i][j] % q_) + q_) % q_);
    }
    return f;
  }

  /// g after f, i.e. the matrix product G F.
  Mor compose(const Mor& g, const Mor& f) const {
    require(g.c == f.r, errc::invalid_arguments, "fq compose: shapes differ");
    Mor h = zero(f.c, g.r);
    for (int i = 0; i < g.r; ++i)
      for (int k = 0; k < g.c; ++k) {
        int x = g.at(i, k);
        if (!x) continue;
        for (int j = 0; j < f.c; ++j) h.at(i, j) = static_cast<std::uint8_t>((h.at(i, j) + x * f.at(k, j)) % q_);
      }
    return h;
  }

  static Mor transpose(const Mor& f) {
    Mor t{f.c, f.r, std::vector<std::uint8_t>(f.a.size())};
    for (int i = 0; i < f.r; ++i)
      for (int j = 0; j < f.c; ++j) t.at(j, i) = f.at(i, j);
    return t;
  }

  /// Reduced row echelon form and pivot columns.
  std::pair<Mor, std::vector<int>> rref(Mor m) const {
    std::vector<int> piv;
    int row = 0;
    for (int col = 0; col < m.c && row < m.r; ++col) {
      int p = row;
      while (p < m.r && m.at(p, col) == 0) ++p;
      if (p == m.r) continue;
      for (int j = 0; j < m.c; ++j) std::swap(m.at(p, j), m.at(row, j));
      int s = inv_[m.at(row, col)];
      for (int j = 0; j < m.c; ++j) m.at(row, j) = static_cast<std::uint8_t>(m.at(row, j) * s % q_);
      for (int i = 0; i < m.r; ++i) {
        if (i == row || m.at(i, col) == 0) continue;
        int x = m.at(i, col);
        for (int j = 0; j < m.c; ++j)
          m.at(i, j) = static_cast<std::uint8_t>(((m.at(i, j) - x * m.at(row, j)) % q_ + q_) % q_);
      }
      piv.push_back(col);
      ++row;
    }
    return {std::move(m), std::move(piv)};
  }

  int rank(const Mor& f) const { return static_cast<int>(rref(f).second.size()); }
  bool is_zero(const Mor& f) const {
    return std::all_of(f.a.begin(), f.a.end(), [](std::uint8_t x) { return x == 0; });
  }
  bool is_adm_mono(const Mor& f) const { return rank(f) == f.c; }
  bool is_adm_epi(const Mor& f) const { return rank(f) == f.r; }
  bool is_iso(const Mor& f) const { return f.r == f.c && rank(f) == f.c; }

  /// Inclusion of the null space, with the basis read off the echelon form.
  std::optional<Mor> kernel(const Mor& f) const {
    auto [R, piv] = rref(f);
    std::vector<int> free;
    for (int j = 0, p = 0; j < f.c; ++j) {
      if (p < static_cast<int>(piv.size()) && piv[p] == j)
        ++p;
      else
        free.push_back(j);
    }
    Mor k = zero(static_cast<int>(free.size()), f.c);
    for (std::size_t t = 0; t < free.size(); ++t) {
      k.at(free[t], static_cast<int>(t)) = 1;
      for (std::size_t i = 0; i < piv.size(); ++i)
        k.at(piv[i], static_cast<int>(t)) = static_cast<std::uint8_t>((q_ - R.at(static_cast<int>(i), free[t])) % q_);
    }
    return k;
  }

  /// Quotient by the image.
  std::optional<Mor> cokernel(const Mor& f) const { return transpose(*kernel(transpose(f))); }

  std::optional<std::pair<Mor, Mor>> factor_admissible(const Mor& f) const {
    auto [R, piv] = rref(f);
    int r = static_cast<int>(piv.size());
    Mor e = zero(f.c, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < f.c; ++j) e.at(i, j) = R.at(i, j);
    Mor m = zero(r, f.r);
    for (int i = 0; i < f.r; ++i)
      for (int j = 0; j < r; ++j) m.at(i, j) = f.at(i, piv[j]);
    return std::make_pair(e, m);
  }

  /// Some X with A X = B.
  std::optional<Mor> solve(const Mor& A, const Mor& B) const {
    require(A.r == B.r, errc::invalid_arguments, "fq solve: shapes differ");
    Mor aug = zero(A.c + B.c, A.r);
    for (int i = 0; i < A.r; ++i) {
      for (int j = 0; j < A.c; ++j) aug.at(i, j) = A.at(i, j);
      for (int j = 0; j < B.c; ++j) aug.at(i, A.c + j) = B.at(i, j);
    }
    auto [R, piv] = rref(aug);
    Mor X = zero(B.c, A.c);
    for (std::size_t i = 0; i < piv.size(); ++i) {
      if (piv[i] >= A.c) return std::nullopt;
      for (int j = 0; j < B.c; ++j) X.at(piv[i], j) = R.at(static_cast<int>(i), A.c + j);
    }
    return X;
  }

  std::optional<Mor> lift_mono(const Mor& m, const Mor& g) const {
    auto h = solve(m, g);
    if (!h || compose(m, *h) != g) return std::nullopt;
    return h;
  }

  std::optional<Mor> descend_epi(const Mor& e, const Mor& g) const {
    auto ht = solve(transpose(e), transpose(g));
    if (!ht) return std::nullopt;
    Mor h = transpose(*ht);
    if (compose(h, e) != g) return std::nullopt;
    return h;
  }

  Mor inverse(const Mor& f) const {
    require(is_iso(f), errc::invalid_arguments, "fq inverse: not an iso");
    return *solve(f, identity(f.c));
  }

  /// All b x a matrices in lexicographic order.
  std::vector<Mor> homs(int a, int b) const {
    std::vector<Mor> out;
    Mor f = zero(a, b);
    const std::size_t n = f.a.size();
    for (;;) {
      out.push_back(f);
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (++f.a[i] < q_) break;
        f.a[i] = 0;
        if (i == 0) return out;
      }
      if (n == 0) return out;
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
      std::vector<int> row(f.c);
      for (int j = 0; j < f.c; ++j) row[j] = f.at(i, j);
      rows.push_back(row);
    }
    return nlohmann::json{{"src", f.c}, {"dst", f.r}, {"matrix", rows}};
  }
  Mor from_json(const nlohmann::json& j) const {
    return make(j.at("dst").get<int>(), j.at("src").get<int>(),
                j.at("matrix").get<std::vector<std::vector<int>>>());
  }

private:
  int q_;
  std::vector<int> inv_;
};

} // namespace segal
