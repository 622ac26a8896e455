#pragma once

#include <optional>

#include "binomlab/binomial.hpp"
#include "binomlab/core_arith.hpp"

namespace binomlab {

enum class ScanMode { early_exit, full_scan };
enum class ModulusForm { row_index, paper_literal };

struct CongruenceFailure {
  u64 index = 0;  // k, m or n, depending on the criterion's scan variable
  u64 lhs = 0;
  u64 rhs = 0;
  u64 modulus = 0;
};

struct CriterionVerdict {
  bool holds = true;
  u64 checked_count = 0;
  std::optional<CongruenceFailure> first_failure;
};

// Raised when the congruence family holds but the classified pair violates
// the expected conclusion. Firing would falsify the criterion.
class theorem_violation : public std::logic_error {
  using std::logic_error::logic_error;
};

// Scans C(n-1, k) ?= (-1)^k (mod q) for k = 0..k_max.
inline CriterionVerdict lucas_congruence_check(u64 n, u64 q, u64 k_max,
                                               ScanMode mode = ScanMode::early_exit) {
  if (n < 2 || q < 2) throw std::domain_error("lucas_congruence_check: n, q must be >= 2");
  if (k_max > n - 1) throw std::domain_error("lucas_congruence_check: k_max out of range");
  CriterionVerdict v;
  RowCursor cursor = row_stream(n - 1, q);
  for (u64 k = 0; k <= k_max; ++k) {
    u64 lhs = cursor.next();
    u64 rhs = neg_one_pow(k, q);
    ++v.checked_count;
    if (lhs != rhs && v.holds) {
      v.holds = false;
      v.first_failure = {k, lhs, rhs, q};
      if (mode == ScanMode::early_exit) break;
    }
  }
  return v;
}

struct ClassificationResult {
  CriterionVerdict verdict;
  bool q_is_prime = false;
  std::optional<unsigned> exponent_f;
};

// Full-range scan plus the conclusion check: when the family holds, q must be
// prime and n an exact power of q.
inline ClassificationResult theorem_classify(u64 n, u64 q) {
  ClassificationResult r;
  r.verdict = lucas_congruence_check(n, q, n - 1);
  r.q_is_prime = is_prime(q);
  r.exponent_f = perfect_power_of(n, q);
  if (r.verdict.holds && !(r.q_is_prime && r.exponent_f))
    throw theorem_violation("congruence family holds but q is composite or n is not a power of q");
  return r;
}

inline CriterionVerdict deutsch_gessel_check(u64 n, ScanMode mode = ScanMode::early_exit) {
  return lucas_congruence_check(n, n, n - 1, mode);
}

inline bool deutsch_gessel_test(u64 n) { return deutsch_gessel_check(n).holds; }

// Shortened range k <= floor(sqrt(n)), capped at n-1.
inline CriterionVerdict cai_granville_check(u64 n, ScanMode mode = ScanMode::early_exit) {
  if (n < 2) throw std::domain_error("cai_granville_check: n must be >= 2");
  return lucas_congruence_check(n, n, std::min(integer_sqrt(n), n - 1), mode);
}

inline bool cai_granville_test(u64 n) { return cai_granville_check(n).holds; }

// C(n+m, n) ?= 1 (mod n) for m = 0..n-1.
inline CriterionVerdict babbage_check(u64 n, ScanMode mode = ScanMode::early_exit) {
  if (n < 2) throw std::domain_error("babbage_check: n must be >= 2");
  CriterionVerdict v;
  Factorization fac = factorize(n);
  for (u64 m = 0; m < n; ++m) {
    u64 lhs = binom_mod_factored(n + m, static_cast<i64>(n), fac);
    ++v.checked_count;
    if (lhs != 1 && v.holds) {
      v.holds = false;
      v.first_failure = {m, lhs, 1, n};
      if (mode == ScanMode::early_exit) break;
    }
  }
  return v;
}

inline bool babbage_test(u64 n) { return babbage_check(n).holds; }

// For odd N = 2n+1: C(2n-k, k-1) ?= 0 (mod k) for k = 1..n.
inline CriterionVerdict piza_check(u64 N, ScanMode mode = ScanMode::early_exit) {
  if (N < 3 || N % 2 == 0) throw std::domain_error("piza_check: requires an odd integer >= 3");
  CriterionVerdict v;
  u64 n = (N - 1) / 2;
  for (u64 k = 1; k <= n; ++k) {
    u64 lhs = binom_mod(2 * n - k, static_cast<i64>(k) - 1, k);
    ++v.checked_count;
    if (lhs != 0 && v.holds) {
      v.holds = false;
      v.first_failure = {k, lhs, 0, k};
      if (mode == ScanMode::early_exit) break;
    }
  }
  return v;
}

inline bool piza_test(u64 N) { return piza_check(N).holds; }

// C(n, k-2n) ?= 0 for ceil(k/3) <= n <= floor(k/2); modulus n (row_index)
// or k (paper_literal).
inline CriterionVerdict mann_shanks_check(u64 k, ModulusForm form = ModulusForm::row_index,
                                          ScanMode mode = ScanMode::early_exit) {
  if (k < 2) throw std::domain_error("mann_shanks_check: k must be >= 2");
  CriterionVerdict v;
  for (u64 n = (k + 2) / 3; n <= k / 2; ++n) {
    u64 m = form == ModulusForm::row_index ? n : k;
    u64 lhs = m == 1 ? 0 : binom_mod(n, static_cast<i64>(k) - 2 * static_cast<i64>(n), m);
    ++v.checked_count;
    if (lhs != 0 && v.holds) {
      v.holds = false;
      v.first_failure = {n, lhs, 0, m};
      if (mode == ScanMode::early_exit) break;
    }
  }
  return v;
}

inline bool mann_shanks_test(u64 k, ModulusForm form = ModulusForm::row_index) {
  return mann_shanks_check(k, form).holds;
}

// C(-n, j) = (-1)^j C(n+j-1, j) for j >= 0, and 0 for j < 0.
inline u64 binom_neg_upper_mod(u64 n, i64 j, u64 m) {
  if (m == 0) throw std::domain_error("binom_neg_upper_mod: modulus must be >= 1");
  if (j < 0 || m == 1) return 0;
  u64 c = binom_mod(n + static_cast<u64>(j) - 1, j, m);
  return j % 2 == 0 ? c : (m - c) % m;
}

// Dual criterion: C(-n, k-2n) ?= 0 for 1 <= n <= floor(k/2).
inline CriterionVerdict gould_greig_check(u64 k, ModulusForm form = ModulusForm::row_index,
                                          ScanMode mode = ScanMode::early_exit) {
  if (k < 2) throw std::domain_error("gould_greig_check: k must be >= 2");
  CriterionVerdict v;
  for (u64 n = 1; n <= k / 2; ++n) {
    u64 m = form == ModulusForm::row_index ? n : k;
    u64 lhs = binom_neg_upper_mod(n, static_cast<i64>(k) - 2 * static_cast<i64>(n), m);
    ++v.checked_count;
    if (lhs != 0 && v.holds) {
      v.holds = false;
      v.first_failure = {n, lhs, 0, m};
      if (mode == ScanMode::early_exit) break;
    }
  }
  return v;
}

inline bool gould_greig_test(u64 k, ModulusForm form = ModulusForm::row_index) {
  return gould_greig_check(k, form).holds;
}

}  // namespace binomlab
