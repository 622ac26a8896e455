// Acceptance suite: runs every agreed criterion at full scale and prints one
// pass/fail line per criterion. Exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "binomlab/binomial.hpp"
#include "binomlab/criteria.hpp"
#include "binomlab/verifier.hpp"

using namespace binomlab;

namespace {

int failures = 0;
u64 theorem_violations_seen = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, const char* name, bool ok, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, name, detail.c_str());
  if (!ok) ++failures;
}

std::vector<bigint> pascal_row(u64 n) {
  std::vector<bigint> row{1};
  for (u64 i = 1; i <= n; ++i) {
    row.push_back(1);
    for (u64 j = i - 1; j >= 1; --j) row[j] += row[j - 1];
  }
  return row;
}

// 1. Theorem biconditional, exhaustive for 2 <= q <= n <= 2000.
void criterion1() {
  auto t0 = Clock::now();
  u64 mismatches = 0;
  try {
    auto rep = converse_scan(2000, 1);
    mismatches = rep.totals.failed;
    theorem_violations_seen += rep.violations;
  } catch (const theorem_violation&) {
    ++theorem_violations_seen;
    ++mismatches;
  }
  double secs = seconds_since(t0);
  report(1, "theorem biconditional n<=2000", mismatches == 0 && secs < 120.0,
         std::to_string(mismatches) + " mismatches, " + std::to_string(secs) + "s");
}

// 2. Proposition rows for p <= 50, p^f <= 10^5.
void criterion2() {
  VerifyGrid grid;
  grid.max_prime = 50;
  grid.max_exponent = 32;
  grid.proposition_row_limit = 100000;
  u64 failed = 0, checked = 0;
  try {
    auto rep = run_suite(Suite::proposition, grid);
    failed = rep.totals.failed;
    checked = rep.totals.checked;
  } catch (const theorem_violation&) {
    ++theorem_violations_seen;
    ++failed;
  }
  report(2, "proposition rows p<=50, p^f<=1e5", failed == 0,
         std::to_string(checked) + " congruences, " + std::to_string(failed) + " failed");
}

// 3. Lemma residues for p <= 100, 2 <= f <= 8, plus the exact oracle on
// every instance with p^f <= 10^4.
void criterion3() {
  u64 failed = 0, checked = 0, oracle_checked = 0;
  try {
    VerifyGrid grid;
    grid.max_prime = 100;
    grid.max_exponent = 8;
    auto rep = run_suite(Suite::lemma, grid);
    failed = rep.totals.failed;
    checked = rep.totals.checked;
    for (const auto& r : rep.records) {
      if (!r.oracle_binom || r.oracle_binom->first > 10000) continue;
      bigint exact = binom_exact(r.oracle_binom->first, static_cast<i64>(r.oracle_binom->second));
      if (static_cast<u64>(exact % r.modulus) != r.lhs) ++failed;
      ++oracle_checked;
    }
  } catch (const theorem_violation&) {
    ++theorem_violations_seen;
    ++failed;
  }
  report(3, "lemma mod p^2 residues p<=100, f<=8", failed == 0,
         std::to_string(checked) + " instances, " + std::to_string(oracle_checked) +
             " oracle-checked, " + std::to_string(failed) + " failed");
}

// 4. Lemma proof chain for p <= 30, f <= 5.
void criterion4() {
  u64 failed = 0, checked = 0;
  try {
    VerifyGrid grid;
    grid.max_prime = 30;
    grid.max_exponent = 5;
    auto rep = run_suite(Suite::lemma_chain, grid);
    failed = rep.totals.failed;
    checked = rep.totals.checked;
  } catch (const theorem_violation&) {
    ++theorem_violations_seen;
    ++failed;
  }
  report(4, "lemma proof chain p<=30, f<=5", failed == 0,
         std::to_string(checked) + " congruences, " + std::to_string(failed) + " failed");
}

// 5. eq21 for p <= 30, f <= 4, 2 <= s <= 20 with p coprime to s.
void criterion5() {
  u64 failed = 0, checked = 0;
  try {
    VerifyGrid grid;
    grid.max_prime = 30;
    grid.max_exponent = 4;
    grid.max_s = 20;
    auto rep = run_suite(Suite::eq21, grid);
    failed = rep.totals.failed;
    checked = rep.totals.checked;
  } catch (const theorem_violation&) {
    ++theorem_violations_seen;
    ++failed;
  }
  report(5, "eq21 p<=30, f<=4, s<=20", failed == 0,
         std::to_string(checked) + " congruences, " + std::to_string(failed) + " failed");
}

// 6. Criteria gallery agrees with the trial-division oracle on 2..5000.
void criterion6() {
  u64 disagreements = 0;
  for (u64 n = 2; n <= 5000; ++n) {
    bool prime = is_prime(n);
    if (deutsch_gessel_test(n) != prime) ++disagreements;
    if (babbage_test(n) != prime) ++disagreements;
    if (n % 2 == 1 && n >= 3 && piza_test(n) != prime) ++disagreements;
    if (mann_shanks_test(n) != prime) ++disagreements;
    if (gould_greig_test(n) != prime) ++disagreements;
  }
  report(6, "criteria gallery agreement 2..5000", disagreements == 0,
         std::to_string(disagreements) + " disagreements");
}

// 7. Cai-Granville shortened range agrees with the oracle for n <= 100000.
void criterion7() {
  auto t0 = Clock::now();
  u64 disagreements = 0;
  for (u64 n = 2; n <= 100000; ++n)
    if (cai_granville_test(n) != is_prime(n)) ++disagreements;
  double secs = seconds_since(t0);
  report(7, "cai-granville agreement n<=100000", disagreements == 0 && secs < 120.0,
         std::to_string(disagreements) + " disagreements, " + std::to_string(secs) + "s");
}

// 8. Kernel oracle equivalence plus pointwise row_stream checks.
void criterion8() {
  u64 mismatches = 0;
  std::vector<Factorization> fac;
  for (u64 m = 0; m <= 60; ++m) fac.push_back(m == 0 ? Factorization{} : factorize(m));
  for (u64 a = 0; a <= 300; ++a) {
    auto row = pascal_row(a);
    for (u64 b = 0; b <= a; ++b)
      for (u64 m = 1; m <= 60; ++m)
        if (binom_mod_factored(a, static_cast<i64>(b), fac[m]) !=
            static_cast<u64>(row[b] % m))
          ++mismatches;
  }
  std::mt19937_64 rng(987654321);
  for (int trial = 0; trial < 50; ++trial) {
    u64 n = rng() % 2001;
    u64 m = 1 + rng() % 10000;
    Factorization f = factorize(m);
    RowCursor c = row_stream(n, m);
    for (u64 k = 0; k <= n; ++k)
      if (c.next() != binom_mod_factored(n, static_cast<i64>(k), f)) ++mismatches;
  }
  report(8, "kernel oracle equivalence + row streaming", mismatches == 0,
         std::to_string(mismatches) + " mismatches");
}

// 9. The paper-literal modulus forms must each disagree with the oracle on
// some input <= 100; the first witness is documented.
void criterion9() {
  std::optional<u64> ms_witness, gg_witness;
  for (u64 k = 2; k <= 100 && !(ms_witness && gg_witness); ++k) {
    if (!ms_witness && mann_shanks_test(k, ModulusForm::paper_literal) != is_prime(k))
      ms_witness = k;
    if (!gg_witness && gould_greig_test(k, ModulusForm::paper_literal) != is_prime(k))
      gg_witness = k;
  }
  bool ok = ms_witness.has_value() && gg_witness.has_value();
  std::string detail = "mann-shanks first disagreement k=" +
                       (ms_witness ? std::to_string(*ms_witness) : "none") +
                       ", gould-greig first disagreement k=" +
                       (gg_witness ? std::to_string(*gg_witness) : "none");
  report(9, "paper-literal modulus discrepancy", ok, detail);
}

// 10. No theorem violation fired anywhere in criteria 1-5, nor across an
// explicit classify sweep.
void criterion10() {
  u64 extra = 0;
  for (u64 n = 2; n <= 500; ++n)
    for (u64 q = 2; q <= n; ++q) {
      try {
        theorem_classify(n, q);
      } catch (const theorem_violation&) {
        ++extra;
      }
    }
  report(10, "theorem violation never fires", theorem_violations_seen + extra == 0,
         std::to_string(theorem_violations_seen + extra) + " violations");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
