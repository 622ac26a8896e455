#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace binomlab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(u128(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// p^e with an overflow guard; throws when the result would not fit in 64 bits.
inline u64 ipow_checked(u64 p, unsigned e) {
  u64 r = 1;
  while (e--) {
    if (p != 0 && r > UINT64_MAX / p)
      throw std::domain_error("ipow_checked: value exceeds the 64-bit input bound");
    r *= p;
  }
  return r;
}

// Reference primality oracle: deterministic trial division.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;
  u64 value = 0;  // prime^exponent
};

struct Factorization {
  u64 value = 1;
  std::vector<PrimePower> parts;  // primes strictly increasing; empty for value 1
};

inline Factorization factorize(u64 m) {
  if (m == 0) throw std::domain_error("factorize: argument must be >= 1");
  Factorization f;
  f.value = m;
  auto strip = [&](u64 p) {
    if (m % p) return;
    PrimePower pp{p, 0, 1};
    while (m % p == 0) {
      m /= p;
      ++pp.exponent;
      pp.value *= p;
    }
    f.parts.push_back(pp);
  };
  strip(2);
  for (u64 d = 3; d * d <= m; d += 2) strip(d);
  if (m > 1) f.parts.push_back({m, 1, m});
  return f;
}

// Inverse of a modulo m, canonical in [0, m); throws when gcd(a, m) != 1.
inline u64 mod_inverse(u64 a, u64 m) {
  if (m < 2) throw std::domain_error("mod_inverse: modulus must be >= 2");
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("mod_inverse: argument not coprime to modulus");
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

struct CrtValue {
  u64 residue = 0;
  u64 modulus = 1;
};

// Unique residue modulo the product of pairwise-coprime moduli.
inline CrtValue crt_combine(const std::vector<std::pair<u64, u64>>& parts) {
  CrtValue acc;
  for (auto [ri, mi] : parts) {
    if (mi < 2) throw std::domain_error("crt_combine: moduli must be >= 2");
    if (std::gcd(acc.modulus, mi) != 1)
      throw std::domain_error("crt_combine: moduli must be pairwise coprime");
    if (acc.modulus > UINT64_MAX / mi)
      throw std::domain_error("crt_combine: combined modulus exceeds 64 bits");
    ri %= mi;
    u64 diff = (ri + mi - acc.residue % mi) % mi;
    u64 t = mul_mod(diff, mod_inverse(acc.modulus % mi, mi), mi);
    acc.residue += acc.modulus * t;
    acc.modulus *= mi;
  }
  return acc;
}

struct DigitExpansion {
  u64 base = 2;
  std::vector<u64> digits;  // least-significant first; [0] for the value 0
};

inline DigitExpansion digits(u64 a, u64 base) {
  if (base < 2) throw std::domain_error("digits: base must be >= 2");
  DigitExpansion d{base, {}};
  do {
    d.digits.push_back(a % base);
    a /= base;
  } while (a);
  return d;
}

inline u64 integer_sqrt(u64 n) {
  if (n == 0) return 0;
  u64 s = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && u128(s) * s > n) --s;
  while (u128(s + 1) * (s + 1) <= n) ++s;
  return s;
}

// Exponent f >= 1 with q^f == n exactly, when one exists.
inline std::optional<unsigned> perfect_power_of(u64 n, u64 q) {
  if (n < 2 || q < 2) throw std::domain_error("perfect_power_of: arguments must be >= 2");
  u64 v = q;
  unsigned f = 1;
  while (v < n) {
    if (v > n / q) return std::nullopt;
    v *= q;
    ++f;
  }
  return v == n ? std::optional<unsigned>(f) : std::nullopt;
}

}  // namespace binomlab
