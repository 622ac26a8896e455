#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "binomlab/binomial.hpp"
#include "binomlab/criteria.hpp"
#include "binomlab/report.hpp"
#include "binomlab/verifier.hpp"

namespace bl = binomlab;
using bl::u64;
using json = nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// temp file + rename, so an interrupted run never leaves a truncated report
void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string());
    os << content;
  }
  fs::rename(tmp, target);
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    write_atomic(out_path, content);
}

json envelope(const std::string& command, json params, Clock::time_point start) {
  json j;
  j["command"] = command;
  j["params"] = std::move(params);
  j["elapsed_ms"] = elapsed_ms(start);
  j["version"] = bl::kVersion;
  return j;
}

struct CriterionEntry {
  const char* scan_symbol;  // name of the scanned index in text output
  bl::CriterionVerdict (*check)(u64, bl::ModulusForm);
};

const std::map<std::string, CriterionEntry>& criterion_table() {
  static const std::map<std::string, CriterionEntry> table = {
      {"deutsch-gessel",
       {"k", [](u64 n, bl::ModulusForm) { return bl::deutsch_gessel_check(n); }}},
      {"cai-granville",
       {"k", [](u64 n, bl::ModulusForm) { return bl::cai_granville_check(n); }}},
      {"babbage", {"m", [](u64 n, bl::ModulusForm) { return bl::babbage_check(n); }}},
      {"piza", {"k", [](u64 n, bl::ModulusForm) { return bl::piza_check(n); }}},
      {"mann-shanks",
       {"n", [](u64 n, bl::ModulusForm form) { return bl::mann_shanks_check(n, form); }}},
      {"gould-greig",
       {"n", [](u64 n, bl::ModulusForm form) { return bl::gould_greig_check(n, form); }}},
  };
  return table;
}

int cmd_test(u64 number, const std::string& criterion, bl::ModulusForm form,
             const std::string& format) {
  auto start = Clock::now();
  const auto& entry = criterion_table().at(criterion);
  bl::CriterionVerdict v = entry.check(number, form);

  if (format == "json") {
    json j = envelope("test", {{"number", number}, {"criterion", criterion}}, start);
    j["verdict"] = bl::to_json(v);
    j["prime"] = v.holds;
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "number,criterion,prime,checked,failure_index,lhs,rhs,modulus\n";
    std::cout << number << ',' << criterion << ',' << (v.holds ? "true" : "false") << ','
              << v.checked_count << ',';
    if (v.first_failure)
      std::cout << v.first_failure->index << ',' << v.first_failure->lhs << ','
                << v.first_failure->rhs << ',' << v.first_failure->modulus;
    else
      std::cout << ",,,";
    std::cout << '\n';
  } else {
    if (v.holds) {
      std::cout << "prime\n";
    } else {
      const auto& f = *v.first_failure;
      std::cout << "composite; " << entry.scan_symbol << "=" << f.index << ": " << f.lhs
                << " != " << f.rhs << " (mod " << f.modulus << ")\n";
    }
  }
  return v.holds ? 0 : 1;
}

int cmd_classify(u64 n, u64 q, const std::string& format) {
  auto start = Clock::now();
  bl::ClassificationResult r = bl::theorem_classify(n, q);

  if (format == "json") {
    json j = envelope("classify", {{"n", n}, {"q", q}}, start);
    j["result"] = bl::to_json(r);
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "n,q,holds,q_is_prime,exponent_f,failure_k,lhs,rhs\n";
    std::cout << n << ',' << q << ',' << (r.verdict.holds ? "true" : "false") << ','
              << (r.q_is_prime ? "true" : "false") << ',';
    if (r.exponent_f) std::cout << *r.exponent_f;
    std::cout << ',';
    if (r.verdict.first_failure)
      std::cout << r.verdict.first_failure->index << ',' << r.verdict.first_failure->lhs << ','
                << r.verdict.first_failure->rhs;
    else
      std::cout << ",,";
    std::cout << '\n';
  } else {
    if (r.verdict.holds) {
      std::cout << "holds; q=" << q << " prime; n=" << q << "^" << *r.exponent_f << "\n";
    } else {
      const auto& f = *r.verdict.first_failure;
      std::cout << "fails at k=" << f.index << " (" << f.lhs << " != " << f.rhs << " mod "
                << f.modulus << "); q " << (r.q_is_prime ? "prime" : "composite") << "; ";
      if (r.exponent_f)
        std::cout << "n=" << q << "^" << *r.exponent_f << "\n";
      else
        std::cout << "n not a power of q\n";
    }
  }
  return r.verdict.holds ? 0 : 1;
}

int cmd_row(u64 n, u64 m, u64 limit, const std::string& format) {
  auto start = Clock::now();
  u64 last = std::min(limit, n);
  bl::RowCursor cursor = bl::row_stream(n, m);
  std::vector<u64> residues;
  residues.reserve(last + 1);
  for (u64 k = 0; k <= last; ++k) residues.push_back(cursor.next());

  if (format == "json") {
    json j = envelope("row", {{"n", n}, {"m", m}, {"limit", limit}}, start);
    j["residues"] = residues;
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "k,residue\n";
    for (u64 k = 0; k <= last; ++k) std::cout << k << ',' << residues[k] << '\n';
  } else {
    for (u64 r : residues) std::cout << r << '\n';
  }
  return 0;
}

int cmd_verify(const std::string& suite, const bl::VerifyGrid& grid, u64 max_n, unsigned jobs,
               const std::string& format, const std::string& out_path) {
  auto start = Clock::now();
  bl::SuiteReport rep;
  if (suite == "converse") {
    rep = bl::converse_scan(max_n, jobs);
  } else if (suite == "all") {
    rep = bl::run_suite(bl::Suite::all, grid);
    rep.append(bl::converse_scan(max_n, jobs));
  } else {
    static const std::map<std::string, bl::Suite> suites = {
        {"proposition", bl::Suite::proposition},
        {"lemma", bl::Suite::lemma},
        {"lemma-chain", bl::Suite::lemma_chain},
        {"eq21", bl::Suite::eq21},
    };
    rep = bl::run_suite(suites.at(suite), grid);
  }
  if (suite == "eq21" && grid.max_s < 2)
    std::cerr << "warning: eq21 requires s >= 2; the requested grid is empty\n";

  if (format == "json") {
    json j = envelope("verify",
                      {{"suite", suite},
                       {"max_prime", grid.max_prime},
                       {"max_exponent", grid.max_exponent},
                       {"max_s", grid.max_s},
                       {"max_n", max_n}},
                      start);
    json body = bl::to_json(rep);
    j["grid"] = body["grid"];
    j["totals"] = body["totals"];
    j["records"] = body["records"];
    if (rep.violations) j["violations"] = rep.violations;
    emit(j.dump(2) + "\n", out_path);
  } else if (format == "csv") {
    emit(bl::to_csv(rep), out_path);
  } else {
    std::ostringstream os;
    os << "suite=" << suite << " grid=" << rep.grid << "\n"
       << "checked=" << rep.totals.checked << " passed=" << rep.totals.passed
       << " failed=" << rep.totals.failed << " skipped=" << rep.totals.skipped << "\n";
    u64 shown = 0;
    for (const auto& r : rep.records) {
      if (r.status != bl::CheckStatus::fail) continue;
      os << "FAIL " << bl::to_csv_row(r) << "\n";
      if (++shown == 20) {
        os << "...\n";
        break;
      }
    }
    emit(os.str(), out_path);
  }
  if (rep.violations > 0) {
    std::cerr << "THEOREM VIOLATION: the congruence family held for a pair outside the "
                 "predicted classification\n";
    return 3;
  }
  return rep.totals.failed == 0 ? 0 : 1;
}

int cmd_bench(const std::vector<std::string>& names, u64 lo, u64 hi, unsigned repeat,
              const std::string& format) {
  auto start = Clock::now();
  struct BenchRow {
    std::string criterion;
    u64 checked = 0;
    u64 disagreements = 0;
    double ms = 0;
  };
  std::vector<BenchRow> rows;
  for (const auto& name : names) {
    const auto& entry = criterion_table().at(name);
    BenchRow row{name};
    auto t0 = Clock::now();
    for (unsigned rep = 0; rep < repeat; ++rep) {
      row.checked = 0;
      row.disagreements = 0;
      for (u64 n = lo; n <= hi; ++n) {
        if (name == "piza" && (n < 3 || n % 2 == 0)) continue;
        bl::CriterionVerdict v = entry.check(n, bl::ModulusForm::row_index);
        row.checked += v.checked_count;
        if (v.holds != bl::is_prime(n)) ++row.disagreements;
      }
    }
    row.ms = elapsed_ms(t0);
    rows.push_back(std::move(row));
  }

  u64 total_disagreements = 0;
  for (const auto& r : rows) total_disagreements += r.disagreements;

  if (format == "json") {
    json j = envelope("bench", {{"range", {lo, hi}}, {"repeat", repeat}}, start);
    j["records"] = json::array();
    for (const auto& r : rows)
      j["records"].push_back({{"criterion", r.criterion},
                              {"checked_congruences", r.checked},
                              {"oracle_disagreements", r.disagreements},
                              {"elapsed_ms", r.ms}});
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "criterion,range_lo,range_hi,repeat,checked_congruences,oracle_disagreements,"
                 "elapsed_ms\n";
    for (const auto& r : rows)
      std::cout << r.criterion << ',' << lo << ',' << hi << ',' << repeat << ',' << r.checked
                << ',' << r.disagreements << ',' << r.ms << '\n';
  } else {
    for (const auto& r : rows)
      std::cout << r.criterion << ": checked=" << r.checked
                << " disagreements=" << r.disagreements << " time=" << r.ms << "ms\n";
  }
  return total_disagreements == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binomial-congruence primality criteria and paper congruence verifier"};
  app.require_subcommand(1);
  app.set_version_flag("--version", bl::kVersion);

  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  };

  // test
  u64 test_number = 0;
  std::string criterion = "deutsch-gessel";
  std::string form_name = "row-index";
  auto* test = app.add_subcommand("test", "primality test via a binomial congruence criterion");
  test->add_option("number", test_number, "integer >= 2")->required();
  std::vector<std::string> names;
  for (const auto& [k, v] : criterion_table()) names.push_back(k);
  test->add_option("--criterion", criterion, "criterion to apply")->check(CLI::IsMember(names));
  test->add_option("--modulus-form", form_name,
                   "modulus form for mann-shanks / gould-greig")
      ->check(CLI::IsMember({"row-index", "paper-literal"}));
  add_format(test);

  // classify
  u64 cls_n = 0, cls_q = 0;
  auto* classify = app.add_subcommand("classify", "classify a pair (n, q)");
  classify->add_option("n", cls_n)->required();
  classify->add_option("q", cls_q)->required();
  add_format(classify);

  // row
  u64 row_n = 0, row_m = 0, row_limit = UINT64_MAX;
  auto* row = app.add_subcommand("row", "stream C(n, k) mod m for k = 0..n");
  row->add_option("n", row_n)->required();
  row->add_option("m", row_m)->required();
  row->add_option("--limit", row_limit, "emit only k = 0..K");
  add_format(row);

  // verify
  std::string suite = "all";
  bl::VerifyGrid grid;
  u64 max_n = 300;
  unsigned jobs = 1;
  if (const char* env = std::getenv("BINOMLAB_JOBS")) jobs = std::max(1, std::atoi(env));
  std::string out_path;
  auto* verify = app.add_subcommand("verify", "run a congruence verification suite");
  verify->add_option("--suite", suite)
      ->check(CLI::IsMember({"proposition", "lemma", "lemma-chain", "eq21", "converse", "all"}));
  verify->add_option("--max-prime", grid.max_prime, "largest prime in the grid");
  verify->add_option("--max-exponent", grid.max_exponent, "largest exponent f");
  verify->add_option("--max-s", grid.max_s, "largest cofactor s for eq21");
  verify->add_option("--max-n", max_n, "upper bound of the converse scan");
  verify->add_option("--jobs", jobs, "worker threads for the converse scan");
  verify->add_option("--out", out_path, "write the report to FILE atomically");
  add_format(verify);

  // bench
  std::string criteria_list;
  std::string range_spec;
  unsigned repeat = 1;
  auto* bench = app.add_subcommand("bench", "benchmark criteria against the oracle");
  bench->add_option("--criteria", criteria_list, "comma-separated criterion names");
  bench->add_option("--range", range_spec, "inclusive range A..B")->required();
  bench->add_option("--repeat", repeat, "repetitions per criterion");
  add_format(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*test) {
      if (test_number < 2) throw std::domain_error("number must be >= 2");
      bl::ModulusForm form = form_name == "paper-literal" ? bl::ModulusForm::paper_literal
                                                          : bl::ModulusForm::row_index;
      return cmd_test(test_number, criterion, form, format);
    }
    if (*classify) return cmd_classify(cls_n, cls_q, format);
    if (*row) return cmd_row(row_n, row_m, row_limit, format);
    if (*verify) return cmd_verify(suite, grid, max_n, jobs, format, out_path);
    if (*bench) {
      auto sep = range_spec.find("..");
      if (sep == std::string::npos) throw std::domain_error("range must look like A..B");
      u64 lo = std::stoull(range_spec.substr(0, sep));
      u64 hi = std::stoull(range_spec.substr(sep + 2));
      if (lo > hi) throw std::domain_error("empty range");
      std::vector<std::string> selected;
      if (criteria_list.empty()) {
        for (const auto& [k, v] : criterion_table()) selected.push_back(k);
      } else {
        std::istringstream is(criteria_list);
        std::string name;
        while (std::getline(is, name, ',')) {
          if (!criterion_table().count(name))
            throw std::domain_error("unknown criterion: " + name);
          selected.push_back(name);
        }
      }
      return cmd_bench(selected, lo, hi, repeat, format);
    }
  } catch (const bl::theorem_violation& e) {
    std::cerr << "THEOREM VIOLATION: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
