#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "segal/error.hpp"

namespace segal {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
inline int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Int determinant(std::vector<std::vector<Int>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sgn = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sgn = -sgn;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sgn * a[n - 1][n - 1];
}

/// One linear constraint a·x (op) b over the rationals.
struct LinearConstraint {
  enum Op { Eq, Ge, Gt };
  std::vector<Rational> a;
  Rational b;
  Op op = Ge;
};

/// Feasibility of a system of linear (in)equalities by Gaussian elimination of the
/// equalities followed by Fourier–Motzkin elimination. Exact; fine for a dozen variables.
inline bool fm_feasible(std::vector<LinearConstraint> cs, int nvars) {
  using C = LinearConstraint;
  // Eliminate equalities.
  for (;;) {
    auto it = std::find_if(cs.begin(), cs.end(), [](const C& c) { return c.op == C::Eq; });
    if (it == cs.end()) break;
    C eq = *it;
    cs.erase(it);
    int piv = -1;
    for (int j = 0; j < nvars; ++j)
      if (eq.a[j] != 0) {
        piv = j;
        break;
      }
    if (piv < 0) {
      if (eq.b != 0) return false;
      continue;
    }
    for (auto& c : cs) {
      if (c.a[piv] == 0) continue;
      Rational f = c.a[piv] / eq.a[piv];
      for (int j = 0; j < nvars; ++j) c.a[j] -= f * eq.a[j];
      c.b -= f * eq.b;
    }
  }
  for (int var = 0; var < nvars; ++var) {
    std::vector<C> pos, neg, rest;
    for (auto& c : cs) {
      int s = sign(c.a[var]);
      (s > 0 ? pos : s < 0 ? neg : rest).push_back(c);
    }
    for (auto& p : pos)
      for (auto& q : neg) {
        C r;
        Rational alpha = p.a[var], beta = -q.a[var];
        r.a.resize(nvars);
        for (int j = 0; j < nvars; ++j) r.a[j] = beta * p.a[j] + alpha * q.a[j];
        r.a[var] = 0;
        r.b = beta * p.b + alpha * q.b;
        r.op = (p.op == C::Gt || q.op == C::Gt) ? C::Gt : C::Ge;
        bool zero = std::all_of(r.a.begin(), r.a.end(), [](const Rational& x) { return x == 0; });
        if (zero) {
          if (r.op == C::Ge ? !(0 >= r.b) : !(0 > r.b)) return false;
          continue;
        }
        rest.push_back(std::move(r));
      }
    cs = std::move(rest);
  }
  for (auto& c : cs) {
    if (c.op == C::Ge && !(0 >= c.b)) return false;
    if (c.op == C::Gt && !(0 > c.b)) return false;
  }
  return true;
}

} // namespace segal
