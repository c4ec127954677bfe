#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "segal/diagram.hpp"
#include "segal/error.hpp"
#include "segal/indexed.hpp"
#include "segal/waldhausen.hpp"

namespace segal {

/// Number of admissible subobjects A of M with A of class N and M/A of class L.
/// Subobjects are admissible monos N -> M up to Aut(N), which acts freely.
template <class B>
std::uint64_t hall_number(const B& b, int M, int N, int L) {
  if (N + L != M) return 0;
  std::uint64_t monos = 0;
  for (const auto& f : b.homs(N, M)) {
    if (!b.is_adm_mono(f)) continue;
    auto q = b.cokernel(f);
    if (q && b.dst(*q) == L) ++monos;
  }
  const auto auts = b.automorphisms(N).size();
  require(monos % auts == 0, errc::internal_error, "automorphisms do not act freely on monos");
  return monos / auts;
}

/// The same number read off the face d_1: S_2 -> S_1 of the one-dimensional
/// construction: sequences N >-> M ->> L over the fixed middle object M, up to
/// isomorphisms that are the identity on M.
template <class B>
std::uint64_t hall_number_from_faces(const B& b, int M, int N, int L) {
  const int bound = std::max({M, N, L});
  Indexed<B> c(b, bound);
  const auto& s = wald_shape(1, 2, Variant::Exact);
  DiagramEngine<Indexed<B>> e(s, c);
  typename DiagramEngine<Indexed<B>>::Options o;
  o.iso_reduce = false;
  o.fixed_obj.assign(s.size(), -1);
  o.fixed_obj[s.node({0, 1})] = N;
  o.fixed_obj[s.node({0, 2})] = M;
  o.fixed_obj[s.node({1, 2})] = L;
  const auto all = e.enumerate(o).size();
  const auto auts = c.automorphisms(N).size() * c.automorphisms(L).size();
  require(all % auts == 0, errc::internal_error, "automorphisms do not act freely on sequences");
  return all / auts;
}

struct HallTable {
  std::string backend;
  int bound = 0;
  // g[M][N][L]
  std::vector<std::vector<std::vector<std::uint64_t>>> g;

  std::uint64_t at(int M, int N, int L) const { return g[M][N][L]; }

  nlohmann::json to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (int M = 0; M <= bound; ++M)
      for (int N = 0; N <= bound; ++N)
        for (int L = 0; L <= bound; ++L)
          if (g[M][N][L]) entries.push_back({{"M", M}, {"N", N}, {"L", L}, {"count", g[M][N][L]}});
    return {{"backend", backend}, {"bound", bound}, {"constants", entries}};
  }
  std::string to_csv() const {
    std::ostringstream os;
    os << "M,N,L,count\n";
    for (int M = 0; M <= bound; ++M)
      for (int N = 0; N <= bound; ++N)
        for (int L = 0; L <= bound; ++L) os << M << ',' << N << ',' << L << ',' << g[M][N][L] << '\n';
    return os.str();
  }
};

template <class B>
HallTable hall_table(const B& b, int bound) {
  HallTable t{b.name(), bound, {}};
  t.g.assign(bound + 1, std::vector<std::vector<std::uint64_t>>(bound + 1, std::vector<std::uint64_t>(bound + 1, 0)));
  for (int M = 0; M <= bound; ++M)
    for (int N = 0; N <= M; ++N) t.g[M][N][M - N] = hall_number(b, M, N, M - N);
  return t;
}

struct AssociativityReport {
  bool associative = true;
  std::size_t triples = 0;
  nlohmann::json violation = nullptr;

  nlohmann::json to_json() const { return {{"associative", associative}, {"triples", triples}, {"violation", violation}}; }
};

/// (N L) K = N (L K) coefficientwise on every X within the bound.
inline AssociativityReport associativity_check(const HallTable& t) {
  AssociativityReport r;
  const int n = t.bound;
  for (int N = 0; N <= n; ++N)
    for (int L = 0; L <= n; ++L)
      for (int K = 0; K <= n; ++K)
        for (int X = 0; X <= n; ++X) {
          ++r.triples;
          std::uint64_t lhs = 0, rhs = 0;
          for (int M = 0; M <= n; ++M) {
            lhs += t.at(M, N, L) * t.at(X, M, K);
            rhs += t.at(M, L, K) * t.at(X, N, M);
          }
          if (lhs != rhs && r.associative) {
            r.associative = false;
            r.violation = {{"N", N}, {"L", L}, {"K", K}, {"X", X}, {"left", lhs}, {"right", rhs}};
          }
        }
  return r;
}

} // namespace segal
