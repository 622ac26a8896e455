#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "binomlab/binomial.hpp"

using namespace binomlab;

namespace {

// Exact Pascal rows, the independent oracle for everything below.
std::vector<bigint> pascal_row(u64 n) {
  std::vector<bigint> row{1};
  for (u64 i = 1; i <= n; ++i) {
    row.push_back(1);
    for (u64 j = i - 1; j >= 1; --j) row[j] += row[j - 1];
  }
  return row;
}

u64 big_mod(const bigint& x, u64 m) { return static_cast<u64>(x % m); }

}  // namespace

TEST_CASE("binom_exact examples") {
  CHECK(binom_exact(5, 0) == 1);
  CHECK(binom_exact(3, 5) == 0);
  CHECK(binom_exact(8, 3) == 56);
  CHECK(binom_exact(10, -1) == 0);
  CHECK(binom_exact(50, 25) == bigint("126410606437752"));
}

TEST_CASE("binom_mod_prime examples") {
  CHECK(binom_mod_prime(10, 4, 3) == 0);  // 210 mod 3
  CHECK(binom_mod_prime(4, 2, 5) == 1);   // 6 mod 5
  CHECK(binom_mod_prime(3, 5, 7) == 0);
  CHECK_THROWS_AS(binom_mod_prime(4, 2, 6), std::domain_error);
}

TEST_CASE("Lucas digit-product law for a <= 500") {
  for (u64 p : {2, 3, 5, 7, 11}) {
    for (u64 a = 0; a <= 500; ++a)
      for (u64 b = 0; b <= a; ++b) {
        u64 naive = 1;
        u64 x = a, y = b;
        while (x || y) {
          naive = naive * big_mod(binom_exact(x % p, static_cast<i64>(y % p)), p) % p;
          x /= p;
          y /= p;
        }
        CHECK(binom_mod_prime(a, b, p) == naive);
      }
  }
}

TEST_CASE("kummer_valuation examples") {
  CHECK(kummer_valuation(10, 0, 3) == 0);
  CHECK(kummer_valuation(4, 2, 2) == 1);   // C(4,2) = 6 = 2*3
  CHECK(kummer_valuation(9, 3, 3) == 1);   // C(9,3) = 84 = 2^2*3*7
  CHECK_THROWS_AS(kummer_valuation(3, 5, 2), std::domain_error);
}

TEST_CASE("kummer_valuation equals the exact p-adic valuation for a <= 300") {
  for (u64 a = 0; a <= 300; ++a) {
    auto row = pascal_row(a);
    for (u64 b = 0; b <= a; ++b)
      for (u64 p : {2, 3, 7}) {
        unsigned v = 0;
        bigint c = row[b];
        while (c % p == 0) {
          c /= p;
          ++v;
        }
        CHECK(kummer_valuation(a, b, p) == v);
      }
  }
}

TEST_CASE("binom_mod_prime_power examples") {
  CHECK(binom_mod_prime_power(8, 3, 3, 2) == 2);    // 56 mod 9
  CHECK(binom_mod_prime_power(24, 4, 5, 2) == 1);   // 10626 mod 25
  CHECK(binom_mod_prime_power(24, 5, 5, 2) == 4);   // 42504 mod 25
  for (u64 a : {0, 3, 17, 100})
    for (u64 b = 0; b <= a; ++b)
      for (u64 p : {2, 5, 13})
        CHECK(binom_mod_prime_power(a, b, p, 1) == binom_mod_prime(a, b, p));
  CHECK_THROWS_AS(binom_mod_prime_power(8, 3, 4, 2), std::domain_error);
  CHECK_THROWS_AS(binom_mod_prime_power(8, 3, 3, 0), std::domain_error);
}

TEST_CASE("binom_mod examples") {
  CHECK(binom_mod(10, 5, 1) == 0);
  CHECK(binom_mod(10, 5, 12) == 0);  // 252 = 21*12
  CHECK(binom_mod(11, 2, 2) == 1);   // 55 mod 2
  CHECK(binom_mod(5, -2, 7) == 0);
  CHECK(binom_mod(5, 9, 7) == 0);
  CHECK_THROWS_AS(binom_mod(5, 2, 0), std::domain_error);
}

TEST_CASE("oracle equivalence: binom_mod vs binom_exact for a <= 300, m <= 60") {
  std::vector<Factorization> fac;
  for (u64 m = 0; m <= 60; ++m) fac.push_back(m == 0 ? Factorization{} : factorize(m));
  for (u64 a = 0; a <= 300; ++a) {
    auto row = pascal_row(a);
    for (u64 b = 0; b <= a; ++b)
      for (u64 m = 1; m <= 60; ++m)
        CHECK(binom_mod_factored(a, static_cast<i64>(b), fac[m]) == big_mod(row[b], m));
  }
}

TEST_CASE("neg_one_pow") {
  CHECK(neg_one_pow(2, 7) == 1);
  CHECK(neg_one_pow(3, 7) == 6);
  CHECK(neg_one_pow(5, 2) == 1);
  CHECK(neg_one_pow(4, 1) == 0);
  CHECK(neg_one_pow(7, 1) == 0);
}

TEST_CASE("row_stream examples") {
  auto collect = [](u64 n, u64 m) {
    std::vector<u64> out;
    RowCursor c = row_stream(n, m);
    while (!c.done()) out.push_back(c.next());
    return out;
  };
  CHECK(collect(1, 7) == std::vector<u64>{1, 1});
  CHECK(collect(4, 6) == std::vector<u64>{1, 4, 0, 4, 1});
  CHECK(collect(8, 3) == std::vector<u64>{1, 2, 1, 2, 1, 2, 1, 2, 1});
  CHECK(collect(0, 5) == std::vector<u64>{1});
  CHECK(collect(3, 1) == std::vector<u64>{0, 0, 0, 0});
}

TEST_CASE("row symmetry, Pascal recurrence and row sums for n <= 200, m <= 30") {
  for (u64 m = 1; m <= 30; ++m) {
    std::vector<u64> prev;
    for (u64 n = 0; n <= 200; ++n) {
      std::vector<u64> row;
      row.reserve(n + 1);
      RowCursor c = row_stream(n, m);
      while (!c.done()) row.push_back(c.next());
      REQUIRE(row.size() == n + 1);

      u64 sum = 0, alt = 0;
      for (u64 k = 0; k <= n; ++k) {
        CHECK(row[k] == row[n - k]);
        if (n > 0) {
          u64 left = k > 0 ? prev[k - 1] : 0;
          u64 right = k < n ? prev[k] : 0;
          CHECK(row[k] == (left + right) % m);
        }
        sum = (sum + row[k]) % m;
        alt = (alt + mul_mod(row[k], neg_one_pow(k, m), m)) % m;
      }
      CHECK(sum == pow_mod(2, n, m));
      if (n >= 1) CHECK(alt == 0);
      prev = std::move(row);
    }
  }
}

TEST_CASE("streaming consistency on sampled rows up to n = 2000") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 12; ++trial) {
    u64 n = rng() % 2001;
    u64 m = 1 + rng() % 10000;
    Factorization fac = factorize(m);
    RowCursor c = row_stream(n, m);
    for (u64 k = 0; k <= n; ++k)
      CHECK(c.next() == binom_mod_factored(n, static_cast<i64>(k), fac));
    CHECK(c.done());
  }
}
