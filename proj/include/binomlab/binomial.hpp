#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

#include "binomlab/core_arith.hpp"

namespace binomlab {

using bigint = boost::multiprecision::cpp_int;

// Exact C(a, b); 0 when b < 0 or b > a.
inline bigint binom_exact(u64 a, i64 b) {
  if (b < 0 || static_cast<u64>(b) > a) return 0;
  u64 bb = std::min<u64>(static_cast<u64>(b), a - static_cast<u64>(b));
  bigint r = 1;
  for (u64 j = 0; j < bb; ++j) {
    r *= a - j;
    r /= j + 1;  // exact: prefix products of the multiplicative formula are integers
  }
  return r;
}

namespace detail {

// C(ai, bi) mod p for single base-p digits (ai, bi < p).
inline u64 binom_digit_mod_p(u64 ai, u64 bi, u64 p) {
  if (bi > ai) return 0;
  bi = std::min(bi, ai - bi);
  if (bi == 0) return 1 % p;
  u64 num = 1, den = 1;
  for (u64 j = 0; j < bi; ++j) {
    num = mul_mod(num, ai - j, p);
    den = mul_mod(den, j + 1, p);
  }
  return mul_mod(num, mod_inverse(den, p), p);
}

// Number of carries when adding b and a-b in base p; no validation.
inline unsigned carry_count(u64 a, u64 b, u64 p) {
  u64 x = b, y = a - b, c = 0;
  unsigned carries = 0;
  while (x || y || c) {
    u64 s = x % p + y % p + c;
    c = s >= p ? 1 : 0;
    carries += static_cast<unsigned>(c);
    x /= p;
    y /= p;
  }
  return carries;
}

// Product over every digit level j of (floor(n/p^j)!)_p mod p^e, where
// (m!)_p is m! with all multiples of p removed. Satisfies
// n! = p^{v_p(n!)} * factorial_p_removed(n).
inline u64 factorial_p_removed(u64 n, u64 p, u64 pe) {
  u64 block = 1;
  if (n >= pe) {
    for (u64 i = 1; i < pe; ++i)
      if (i % p) block = mul_mod(block, i, pe);
  }
  u64 r = 1 % pe;
  while (n) {
    if (n >= pe) r = mul_mod(r, pow_mod(block, n / pe, pe), pe);
    for (u64 i = n % pe; i >= 1; --i)
      if (i % p) r = mul_mod(r, i, pe);
    n /= p;
  }
  return r;
}

// Generalized-factorial kernel; trusts p prime and pe = p^e.
inline u64 binom_mod_prime_power_impl(u64 a, u64 b, u64 p, unsigned e, u64 pe) {
  if (b > a) return 0;
  unsigned v = carry_count(a, b, p);
  if (v >= e) return 0;
  u64 num = factorial_p_removed(a, p, pe);
  u64 den = mul_mod(factorial_p_removed(b, p, pe), factorial_p_removed(a - b, p, pe), pe);
  u64 unit = mul_mod(num, mod_inverse(den, pe), pe);
  return mul_mod(pow_mod(p, v, pe), unit, pe);
}

}  // namespace detail

// Lucas digit product: C(a,b) mod p over the base-p expansions.
inline u64 binom_mod_prime(u64 a, u64 b, u64 p) {
  if (!is_prime(p)) throw std::domain_error("binom_mod_prime: modulus must be prime");
  if (b > a) return 0;
  u64 r = 1;
  while ((a || b) && r) {
    r = mul_mod(r, detail::binom_digit_mod_p(a % p, b % p, p), p);
    a /= p;
    b /= p;
  }
  return r;
}

// Carries when adding b and a-b in base p == the p-adic valuation of C(a,b).
inline unsigned kummer_valuation(u64 a, u64 b, u64 p) {
  if (b > a) throw std::domain_error("kummer_valuation: requires 0 <= b <= a");
  if (!is_prime(p)) throw std::domain_error("kummer_valuation: base must be prime");
  return detail::carry_count(a, b, p);
}

// C(a,b) mod p^e via p-removed factorial blocks and the Kummer valuation.
inline u64 binom_mod_prime_power(u64 a, u64 b, u64 p, unsigned e) {
  if (e < 1) throw std::domain_error("binom_mod_prime_power: exponent must be >= 1");
  if (!is_prime(p)) throw std::domain_error("binom_mod_prime_power: base must be prime");
  u64 pe = ipow_checked(p, e);
  return detail::binom_mod_prime_power_impl(a, b, p, e, pe);
}

// C(a,b) mod m with m pre-factored; CRT over the prime-power parts.
inline u64 binom_mod_factored(u64 a, i64 b, const Factorization& m) {
  if (m.value == 1) return 0;
  if (b < 0 || static_cast<u64>(b) > a) return 0;
  std::vector<std::pair<u64, u64>> residues;
  residues.reserve(m.parts.size());
  for (const auto& pp : m.parts)
    residues.emplace_back(
        detail::binom_mod_prime_power_impl(a, static_cast<u64>(b), pp.prime, pp.exponent, pp.value),
        pp.value);
  return crt_combine(residues).residue;
}

inline u64 binom_mod(u64 a, i64 b, u64 m) {
  if (m == 0) throw std::domain_error("binom_mod: modulus must be >= 1");
  if (m == 1) return 0;
  return binom_mod_factored(a, b, factorize(m));
}

// (-1)^k as a canonical residue mod m.
inline u64 neg_one_pow(u64 k, u64 m) {
  if (m == 0) throw std::domain_error("neg_one_pow: modulus must be >= 1");
  return k % 2 == 0 ? 1 % m : (m - 1) % m;
}

// Streams C(n, k) mod m for k = 0..n. Per prime-power part it tracks the
// exact p-adic valuation and the p-free unit of C(n, k), updating both by
// the ratio (n-k)/(k+1) at each step.
class RowCursor {
 public:
  RowCursor(u64 n, Factorization modulus) : n_(n), mod_(std::move(modulus)) {
    state_.reserve(mod_.parts.size());
    for (const auto& pp : mod_.parts) state_.push_back({0, 1 % pp.value});
  }

  u64 row() const { return n_; }
  u64 column() const { return k_; }
  u64 modulus() const { return mod_.value; }
  bool done() const { return k_ > n_; }

  // Emits the residue at the current column, then advances.
  u64 next() {
    u64 r = current();
    advance();
    return r;
  }

 private:
  struct PartState {
    i64 valuation;
    u64 unit;  // C(n,k) / p^valuation mod p^e
  };

  u64 current() const {
    if (mod_.value == 1) return 0;
    CrtValue acc;
    for (std::size_t idx = 0; idx < mod_.parts.size(); ++idx) {
      const auto& pp = mod_.parts[idx];
      const auto& st = state_[idx];
      u64 res = st.valuation >= static_cast<i64>(pp.exponent)
                    ? 0
                    : mul_mod(pow_mod(pp.prime, static_cast<u64>(st.valuation), pp.value),
                              st.unit, pp.value);
      u64 diff = (res + pp.value - acc.residue % pp.value) % pp.value;
      u64 t = mul_mod(diff, mod_inverse(acc.modulus % pp.value, pp.value), pp.value);
      acc.residue += acc.modulus * t;
      acc.modulus *= pp.value;
    }
    return acc.residue;
  }

  void advance() {
    if (k_ == n_) {
      ++k_;
      return;
    }
    u64 mul = n_ - k_, div = k_ + 1;
    for (std::size_t idx = 0; idx < mod_.parts.size(); ++idx) {
      const auto& pp = mod_.parts[idx];
      auto& st = state_[idx];
      u64 x = mul;
      while (x % pp.prime == 0) {
        x /= pp.prime;
        ++st.valuation;
      }
      u64 y = div;
      while (y % pp.prime == 0) {
        y /= pp.prime;
        --st.valuation;
      }
      st.unit = mul_mod(st.unit, x % pp.value, pp.value);
      st.unit = mul_mod(st.unit, mod_inverse(y % pp.value, pp.value), pp.value);
    }
    ++k_;
  }

  u64 n_;
  u64 k_ = 0;
  Factorization mod_;
  std::vector<PartState> state_;
};

inline RowCursor row_stream(u64 n, u64 m) {
  if (m == 0) throw std::domain_error("row_stream: modulus must be >= 1");
  return RowCursor(n, factorize(m));
}

}  // namespace binomlab
