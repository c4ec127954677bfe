#include <gtest/gtest.h>

#include "segal/backends/f1.hpp"
#include "segal/backends/fq.hpp"
#include "segal/hall.hpp"

using namespace segal;

namespace {

std::uint64_t choose(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Gaussian binomial at q
std::uint64_t gauss(int n, int k, std::uint64_t q) {
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    std::uint64_t a = 1, b = 1;
    for (int j = 0; j < n - i; ++j) a *= q;
    for (int j = 0; j < i + 1; ++j) b *= q;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

} // namespace

TEST(HallNumber, Examples) {
  F1 f1;
  Fq f2(2);
  EXPECT_EQ(hall_number(f1, 2, 1, 1), 2u);
  EXPECT_EQ(hall_number(f2, 2, 1, 1), 3u);
  EXPECT_EQ(hall_number(f1, 2, 1, 0), 0u);
  EXPECT_EQ(hall_number(f2, 3, 2, 2), 0u);
}

TEST(HallNumber, ClosedForms) {
  F1 f1;
  Fq f2(2), f3(3);
  for (int M = 0; M <= 4; ++M)
    for (int N = 0; N <= M; ++N) EXPECT_EQ(hall_number(f1, M, N, M - N), choose(M, N));
  for (int M = 0; M <= 3; ++M)
    for (int N = 0; N <= M; ++N) EXPECT_EQ(hall_number(f2, M, N, M - N), gauss(M, N, 2));
  for (int M = 0; M <= 2; ++M)
    for (int N = 0; N <= M; ++N) EXPECT_EQ(hall_number(f3, M, N, M - N), gauss(M, N, 3));
}

TEST(HallNumber, AgreesWithFaceFibers) {
  F1 f1;
  Fq f2(2);
  for (int M = 0; M <= 3; ++M)
    for (int N = 0; N <= 3; ++N)
      for (int L = 0; L <= 3; ++L) {
        EXPECT_EQ(hall_number(f1, M, N, L), hall_number_from_faces(f1, M, N, L)) << M << N << L;
        if (M <= 2 && N <= 2 && L <= 2) EXPECT_EQ(hall_number(f2, M, N, L), hall_number_from_faces(f2, M, N, L));
      }
}

TEST(Associativity, HoldsWithinBounds) {
  F1 f1;
  Fq f2(2);
  for (int b = 0; b <= 4; ++b) EXPECT_TRUE(associativity_check(hall_table(f1, b)).associative) << b;
  for (int b = 0; b <= 3; ++b) EXPECT_TRUE(associativity_check(hall_table(f2, b)).associative) << b;
}

TEST(Associativity, CorruptedEntryIsDetected) {
  F1 f1;
  auto t = hall_table(f1, 3);
  // g^2_{1,1} enters both sides symmetrically and would go unnoticed
  auto same = t;
  same.g[2][1][1] += 1;
  EXPECT_TRUE(associativity_check(same).associative);
  t.g[3][1][2] += 1;
  auto r = associativity_check(t);
  EXPECT_FALSE(r.associative);
  EXPECT_FALSE(r.violation.is_null());
}

TEST(HallTable, Exports) {
  Fq f2(2);
  auto t = hall_table(f2, 2);
  auto j = t.to_json();
  EXPECT_EQ(j["backend"], "fq:2");
  EXPECT_EQ(j["constants"].size(), 6u);
  auto csv = t.to_csv();
  EXPECT_EQ(csv.rfind("M,N,L,count\n", 0), 0u);
  EXPECT_NE(csv.find("2,1,1,3\n"), std::string::npos);
}
