#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "binomlab/binomial.hpp"
#include "binomlab/criteria.hpp"
#include "binomlab/core_arith.hpp"

namespace binomlab {

enum class Eq { eq1, eq2, eq3, eq6, eq7, eq9, eq10, eq11, eq12, eq14, eq16, eq17, eq21 };

inline const char* to_string(Eq e) {
  switch (e) {
    case Eq::eq1: return "eq1";
    case Eq::eq2: return "eq2";
    case Eq::eq3: return "eq3";
    case Eq::eq6: return "eq6";
    case Eq::eq7: return "eq7";
    case Eq::eq9: return "eq9";
    case Eq::eq10: return "eq10";
    case Eq::eq11: return "eq11";
    case Eq::eq12: return "eq12";
    case Eq::eq14: return "eq14";
    case Eq::eq16: return "eq16";
    case Eq::eq17: return "eq17";
    case Eq::eq21: return "eq21";
  }
  return "?";
}

enum class CheckStatus { pass, fail, not_applicable };

struct CongruenceRecord {
  Eq location = Eq::eq1;
  std::optional<i64> p, f, k, s, i;
  u64 lhs = 0;
  u64 rhs = 0;
  u64 modulus = 0;
  CheckStatus status = CheckStatus::pass;
  // (a, b) of the binomial behind lhs, for cross-checks against the exact oracle
  std::optional<std::pair<u64, u64>> oracle_binom;

  bool passed() const { return status == CheckStatus::pass; }
};

struct SuiteTotals {
  u64 checked = 0;
  u64 passed = 0;
  u64 failed = 0;
  u64 skipped = 0;
};

struct SuiteReport {
  std::vector<CongruenceRecord> records;
  SuiteTotals totals;
  u64 violations = 0;  // converse scan only: family held but the conclusion failed
  std::string grid;

  void add(CongruenceRecord r) {
    switch (r.status) {
      case CheckStatus::pass: ++totals.checked; ++totals.passed; break;
      case CheckStatus::fail: ++totals.checked; ++totals.failed; break;
      case CheckStatus::not_applicable: ++totals.skipped; break;
    }
    records.push_back(std::move(r));
  }

  void append(SuiteReport other) {
    for (auto& r : other.records) add(std::move(r));
    violations += other.violations;
  }
};

namespace detail {

// Fixed reporting prime for identities compared on values beyond 64 bits.
inline constexpr u64 kReportPrime = (u64(1) << 61) - 1;

// Small prime powers, coprime to p, used as CRT witnesses when the exact
// values are too large to build.
struct Witness {
  u64 prime;
  unsigned exponent;
  u64 value;
};

inline std::vector<Witness> witness_moduli(u64 exclude_prime) {
  static const Witness table[] = {
      {2, 16, 65536}, {3, 10, 59049}, {5, 7, 78125},
      {7, 5, 16807},  {11, 4, 14641}, {13, 4, 28561},
  };
  std::vector<Witness> out;
  for (const auto& w : table) {
    if (w.prime == exclude_prime) continue;
    out.push_back(w);
    if (out.size() == 3) break;
  }
  return out;
}

inline u64 witness_product(const std::vector<Witness>& ws) {
  u64 m = 1;
  for (const auto& w : ws) m *= w.value;
  return m;
}

inline u64 bigint_mod(const bigint& x, u64 m) {
  return static_cast<u64>(x % m);
}

// Deterministic index sample of 1..range: everything when small, otherwise
// the first 100, the last 100, and a fixed-stride middle slice.
inline std::vector<u64> sample_indices(u64 range, u64 threshold = 10000) {
  std::vector<u64> out;
  if (range <= threshold) {
    for (u64 i = 1; i <= range; ++i) out.push_back(i);
    return out;
  }
  for (u64 i = 1; i <= 100; ++i) out.push_back(i);
  u64 stride = range / 100;
  for (u64 i = stride; i + 100 <= range; i += stride) out.push_back(i);
  for (u64 i = range - 99; i <= range; ++i) out.push_back(i);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

// eq2 instances: C(p^f - 1, k) ?= (-1)^k (mod p) for every k < p^f.
// f = 1 rows are tagged as the base congruence eq1.
inline SuiteReport verify_proposition(u64 p, unsigned f) {
  if (!is_prime(p)) throw std::domain_error("verify_proposition: p must be prime");
  if (f < 1) throw std::domain_error("verify_proposition: f must be >= 1");
  u64 pf = ipow_checked(p, f);
  SuiteReport rep;
  RowCursor cursor(pf - 1, factorize(p));
  for (u64 k = 0; k < pf; ++k) {
    CongruenceRecord r;
    r.location = f == 1 ? Eq::eq1 : Eq::eq2;
    r.p = static_cast<i64>(p);
    r.f = f;
    r.k = static_cast<i64>(k);
    r.lhs = cursor.next();
    r.rhs = neg_one_pow(k, p);
    r.modulus = p;
    r.status = r.lhs == r.rhs ? CheckStatus::pass : CheckStatus::fail;
    r.oracle_binom = {{pf - 1, k}};
    rep.add(std::move(r));
  }
  return rep;
}

// eq6: C(p^f - 1, p^{f-1}) ?= p-1 (mod p^2), resp. 3 (mod 4) for p = 2.
inline CongruenceRecord verify_lemma(u64 p, unsigned f) {
  if (!is_prime(p)) throw std::domain_error("verify_lemma: p must be prime");
  if (f < 2) throw std::domain_error("verify_lemma: requires f >= 2");
  u64 pf = ipow_checked(p, f);
  CongruenceRecord r;
  r.location = Eq::eq6;
  r.p = static_cast<i64>(p);
  r.f = f;
  r.modulus = p * p;
  r.lhs = binom_mod_prime_power(pf - 1, pf / p, p, 2);
  r.rhs = p == 2 ? 3 : p - 1;
  r.status = r.lhs == r.rhs ? CheckStatus::pass : CheckStatus::fail;
  r.oracle_binom = {{pf - 1, pf / p}};
  return r;
}

// eq21: C(s*p^f - 1, p^f) ?= s-1 (mod p), with p coprime to s.
inline CongruenceRecord verify_eq21(u64 s, u64 p, unsigned f) {
  if (!is_prime(p)) throw std::domain_error("verify_eq21: p must be prime");
  if (s < 2) throw std::domain_error("verify_eq21: requires s >= 2");
  if (f < 1) throw std::domain_error("verify_eq21: requires f >= 1");
  if (s % p == 0) throw std::domain_error("verify_eq21: s must not be divisible by p");
  u64 pf = ipow_checked(p, f);
  if (s > UINT64_MAX / pf)
    throw std::domain_error("verify_eq21: s*p^f exceeds the 64-bit input bound");
  u64 a = s * pf - 1;
  CongruenceRecord r;
  r.location = Eq::eq21;
  r.p = static_cast<i64>(p);
  r.f = f;
  r.s = static_cast<i64>(s);
  r.modulus = p;
  r.lhs = binom_mod_prime(a, pf, p);
  r.rhs = (s - 1) % p;
  r.status = r.lhs == r.rhs ? CheckStatus::pass : CheckStatus::fail;
  r.oracle_binom = {{a, pf}};
  return r;
}

namespace detail {

inline CongruenceRecord na_record(Eq loc, u64 p, unsigned f) {
  CongruenceRecord r;
  r.location = loc;
  r.p = static_cast<i64>(p);
  r.f = f;
  r.status = CheckStatus::not_applicable;
  return r;
}

// eq7: C(p^f-1, p^{f-1}) = (p-1) C(p^f-1, p^{f-1}-1), an exact identity.
// Compared exactly for small rows, otherwise CRT-combined over witness
// prime powers coprime to p.
inline CongruenceRecord chain_eq7(u64 p, unsigned f, u64 pf) {
  u64 a = pf - 1, b = pf / p;
  auto ws = witness_moduli(p);
  u64 wp = witness_product(ws);
  CongruenceRecord r;
  r.location = Eq::eq7;
  r.p = static_cast<i64>(p);
  r.f = f;
  r.modulus = wp;
  std::vector<std::pair<u64, u64>> lparts, rparts;
  for (const auto& w : ws) {
    u64 c1 = binom_mod_prime_power_impl(a, b, w.prime, w.exponent, w.value);
    u64 c2 = binom_mod_prime_power_impl(a, b - 1, w.prime, w.exponent, w.value);
    lparts.emplace_back(c1, w.value);
    rparts.emplace_back(mul_mod((p - 1) % w.value, c2, w.value), w.value);
  }
  r.lhs = crt_combine(lparts).residue;
  r.rhs = crt_combine(rparts).residue;
  bool ok = r.lhs == r.rhs;
  if (b <= 5000) {
    bool exact = binom_exact(a, static_cast<i64>(b)) ==
                 (p - 1) * binom_exact(a, static_cast<i64>(b) - 1);
    if (exact != ok)
      throw std::logic_error("chain_eq7: witness residues contradict the exact comparison");
  }
  r.status = ok ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

// eq9: (p^f - i) / (p^{f-1} - i) ?= 1 (mod p^2) for p-coprime i,
// evaluated as (p^f - i) * (p^{f-1} - i)^{-1}; i-range sampled when large.
inline void chain_eq9(SuiteReport& rep, u64 p, unsigned f, u64 pf) {
  u64 p2 = p * p;
  u64 range = pf / p - 1;
  for (u64 i : sample_indices(range)) {
    if (i % p == 0) continue;
    CongruenceRecord r;
    r.location = Eq::eq9;
    r.p = static_cast<i64>(p);
    r.f = f;
    r.i = static_cast<i64>(i);
    r.modulus = p2;
    r.lhs = mul_mod((pf - i) % p2, mod_inverse((pf / p - i) % p2, p2), p2);
    r.rhs = 1;
    r.status = r.lhs == r.rhs ? CheckStatus::pass : CheckStatus::fail;
    rep.add(std::move(r));
  }
}

// eq10: the p-divisible sub-product of the eq7 factorial ratio telescopes to
// C(p^{f-1}-1, p^{f-2}-1). Checked termwise by exact cross-multiplication
// (sampled when the j-range is large), plus a whole-product big-integer
// comparison when small enough to build.
inline void chain_eq10(SuiteReport& rep, u64 p, unsigned f, u64 pf) {
  u64 range = pf / (p * p) - 1;  // j = 1..p^{f-2}-1
  for (u64 j : sample_indices(range)) {
    CongruenceRecord r;
    r.location = Eq::eq10;
    r.p = static_cast<i64>(p);
    r.f = f;
    r.i = static_cast<i64>(j);
    r.modulus = kReportPrime;
    u128 l = u128(pf - j * p) * (pf / (p * p) - j);
    u128 rr = u128(pf / p - j * p) * (pf / p - j);
    r.lhs = static_cast<u64>(l % kReportPrime);
    r.rhs = static_cast<u64>(rr % kReportPrime);
    r.status = l == rr ? CheckStatus::pass : CheckStatus::fail;
    if ((l == rr) != (r.lhs == r.rhs))
      throw std::logic_error("chain_eq10: report residues contradict the exact comparison");
    rep.add(std::move(r));
  }
  if (range + 1 <= 2000) {
    bigint num = 1, den = 1;
    for (u64 j = 1; j <= range; ++j) {
      num *= pf - j * p;
      den *= pf / p - j * p;
    }
    bigint c = binom_exact(pf / p - 1, static_cast<i64>(pf / (p * p)) - 1);
    CongruenceRecord r;
    r.location = Eq::eq10;
    r.p = static_cast<i64>(p);
    r.f = f;
    r.modulus = kReportPrime;
    r.lhs = bigint_mod(num, kReportPrime);
    r.rhs = bigint_mod(c * den, kReportPrime);
    r.status = num == c * den ? CheckStatus::pass : CheckStatus::fail;
    rep.add(std::move(r));
  }
}

inline CongruenceRecord mod_p2_pair(Eq loc, u64 p, unsigned f, u64 a1, u64 b1, u64 a2, u64 b2) {
  CongruenceRecord r;
  r.location = loc;
  r.p = static_cast<i64>(p);
  r.f = f;
  r.modulus = p * p;
  r.lhs = binom_mod_prime_power(a1, b1, p, 2);
  r.rhs = binom_mod_prime_power(a2, b2, p, 2);
  r.status = r.lhs == r.rhs ? CheckStatus::pass : CheckStatus::fail;
  r.oracle_binom = {{a1, b1}};
  return r;
}

inline CongruenceRecord mod_p2_value(Eq loc, u64 p, unsigned f, u64 a, u64 b, u64 rhs) {
  CongruenceRecord r;
  r.location = loc;
  r.p = static_cast<i64>(p);
  r.f = f;
  r.modulus = p * p;
  r.lhs = binom_mod_prime_power(a, b, p, 2);
  r.rhs = rhs;
  r.status = r.lhs == r.rhs ? CheckStatus::pass : CheckStatus::fail;
  r.oracle_binom = {{a, b}};
  return r;
}

}  // namespace detail

// The proof chain of the lemma: Eqs. (7), (9), (10), (11), (12), (14), (16),
// (17). Sub-checks whose hypotheses exclude the given (p, f) are recorded as
// not-applicable rather than silently dropped.
inline SuiteReport verify_lemma_chain(u64 p, unsigned f) {
  if (!is_prime(p)) throw std::domain_error("verify_lemma_chain: p must be prime");
  if (f < 2) throw std::domain_error("verify_lemma_chain: requires f >= 2");
  u64 pf = ipow_checked(p, f);
  SuiteReport rep;
  rep.add(detail::chain_eq7(p, f, pf));
  if (f >= 3) {
    detail::chain_eq9(rep, p, f, pf);
    detail::chain_eq10(rep, p, f, pf);
    rep.add(detail::mod_p2_pair(Eq::eq11, p, f, pf - 1, pf / p - 1, pf / p - 1, pf / (p * p) - 1));
    rep.add(detail::mod_p2_pair(Eq::eq12, p, f, pf - 1, pf / p - 1, p * p - 1, p - 1));
  } else {
    rep.add(detail::na_record(Eq::eq9, p, f));
    rep.add(detail::na_record(Eq::eq10, p, f));
    rep.add(detail::na_record(Eq::eq11, p, f));
    rep.add(detail::na_record(Eq::eq12, p, f));
  }
  if (p >= 3) {
    rep.add(detail::mod_p2_value(Eq::eq14, p, f, p * p - 1, p - 1, 1));
    rep.add(detail::mod_p2_value(Eq::eq16, p, f, p * p - 1, p, p - 1));
    rep.add(detail::na_record(Eq::eq17, p, f));
  } else {
    rep.add(detail::na_record(Eq::eq14, p, f));
    rep.add(detail::na_record(Eq::eq16, p, f));
    rep.add(detail::mod_p2_value(Eq::eq17, p, f, pf - 1, pf / 2, 3));
  }
  return rep;
}

enum class Suite { proposition, lemma, lemma_chain, eq21, all };

struct VerifyGrid {
  u64 max_prime = 100;
  unsigned max_exponent = 8;
  u64 max_s = 20;
  u64 proposition_row_limit = 100000;  // cap on p^f for the per-k row sweep
  u64 oracle_sample = 250;             // records re-checked against the exact oracle
};

namespace detail {

inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> ps;
  for (u64 p = 2; p <= limit; ++p)
    if (is_prime(p)) ps.push_back(p);
  return ps;
}

inline std::string grid_echo(const VerifyGrid& g) {
  return "primes<=" + std::to_string(g.max_prime) + " f<=" + std::to_string(g.max_exponent) +
         " s<=" + std::to_string(g.max_s) + " rows<=" + std::to_string(g.proposition_row_limit);
}

// Recompute a deterministic sample of record lhs values with the exact oracle.
inline void oracle_cross_check(const SuiteReport& rep, u64 sample_cap) {
  if (sample_cap == 0) return;
  std::vector<const CongruenceRecord*> eligible;
  for (const auto& r : rep.records)
    if (r.status != CheckStatus::not_applicable && r.oracle_binom && r.oracle_binom->first <= 10000)
      eligible.push_back(&r);
  if (eligible.empty()) return;
  std::size_t stride = std::max<std::size_t>(1, eligible.size() / sample_cap);
  for (std::size_t idx = 0; idx < eligible.size(); idx += stride) {
    const auto& r = *eligible[idx];
    u64 expect = bigint_mod(binom_exact(r.oracle_binom->first,
                                        static_cast<i64>(r.oracle_binom->second)),
                            r.modulus);
    if (expect != r.lhs)
      throw std::logic_error("oracle_cross_check: kernel residue disagrees with binom_exact");
  }
}

}  // namespace detail

inline SuiteReport run_suite(Suite which, const VerifyGrid& grid) {
  SuiteReport rep;
  rep.grid = detail::grid_echo(grid);
  auto primes = detail::primes_up_to(grid.max_prime);
  if (which == Suite::proposition || which == Suite::all) {
    for (u64 p : primes) {
      u64 pf = 1;
      for (unsigned f = 1; f <= grid.max_exponent; ++f) {
        if (pf > grid.proposition_row_limit / p) break;
        pf *= p;
        rep.append(verify_proposition(p, f));
      }
    }
  }
  if (which == Suite::lemma || which == Suite::all) {
    for (u64 p : primes)
      for (unsigned f = 2; f <= grid.max_exponent; ++f) rep.add(verify_lemma(p, f));
  }
  if (which == Suite::lemma_chain || which == Suite::all) {
    for (u64 p : primes)
      for (unsigned f = 2; f <= grid.max_exponent; ++f) rep.append(verify_lemma_chain(p, f));
  }
  if (which == Suite::eq21 || which == Suite::all) {
    for (u64 p : primes)
      for (unsigned f = 1; f <= grid.max_exponent; ++f) {
        u64 pf = ipow_checked(p, f);
        for (u64 s = 2; s <= grid.max_s; ++s) {
          if (s % p == 0 || s > (u64(1) << 62) / pf) continue;
          rep.add(verify_eq21(s, p, f));
        }
      }
  }
  detail::oracle_cross_check(rep, grid.oracle_sample);
  return rep;
}

// Exhaustive biconditional scan: for 2 <= n <= max_n and 2 <= q <= n, the
// full-range congruence family holds iff q is prime and n is a power of q.
// Emits one eq3 record per mismatch (p column = q, s column = n).
inline SuiteReport converse_scan(u64 max_n, unsigned jobs = 1) {
  if (max_n < 2) throw std::domain_error("converse_scan: max_n must be >= 2");
  jobs = std::max(1u, jobs);

  auto scan_range = [](u64 lo, u64 hi, SuiteTotals& totals, u64& violations,
                       std::vector<CongruenceRecord>& out) {
    for (u64 n = lo; n <= hi; ++n) {
      for (u64 q = 2; q <= n; ++q) {
        CriterionVerdict v = lucas_congruence_check(n, q, n - 1);
        bool expected = is_prime(q) && perfect_power_of(n, q).has_value();
        ++totals.checked;
        if (v.holds == expected) {
          ++totals.passed;
          continue;
        }
        ++totals.failed;
        CongruenceRecord r;
        r.location = Eq::eq3;
        r.p = static_cast<i64>(q);
        r.s = static_cast<i64>(n);
        r.modulus = q;
        if (v.first_failure) {
          r.k = static_cast<i64>(v.first_failure->index);
          r.lhs = v.first_failure->lhs;
          r.rhs = v.first_failure->rhs;
        } else {
          // family held yet the conclusion fails: a theorem violation
          r.lhs = 1;
          r.rhs = 0;
          ++violations;
        }
        r.status = CheckStatus::fail;
        out.push_back(std::move(r));
      }
    }
  };

  SuiteReport rep;
  rep.grid = "n<=" + std::to_string(max_n);
  if (jobs == 1) {
    scan_range(2, max_n, rep.totals, rep.violations, rep.records);
    return rep;
  }

  std::vector<SuiteTotals> totals(jobs);
  std::vector<u64> violations(jobs, 0);
  std::vector<std::vector<CongruenceRecord>> found(jobs);
  std::vector<std::thread> workers;
  u64 span = (max_n - 1 + jobs - 1) / jobs;
  for (unsigned t = 0; t < jobs; ++t) {
    u64 lo = 2 + t * span;
    u64 hi = std::min(max_n, lo + span - 1);
    if (lo > max_n) break;
    workers.emplace_back([=, &totals, &violations, &found] {
      scan_range(lo, hi, totals[t], violations[t], found[t]);
    });
  }
  for (auto& w : workers) w.join();
  for (unsigned t = 0; t < jobs; ++t) {
    rep.totals.checked += totals[t].checked;
    rep.totals.passed += totals[t].passed;
    rep.totals.failed += totals[t].failed;
    rep.violations += violations[t];
    for (auto& r : found[t]) rep.records.push_back(std::move(r));
  }
  return rep;
}

}  // namespace binomlab
