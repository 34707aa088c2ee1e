// bcbp: exact solver and verification harness for binomial-coefficient
// bisections.  See README.md for the subcommand overview.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcbp/analysis.hpp"
#include "bcbp/arithmetic.hpp"
#include "bcbp/interpolation.hpp"
#include "bcbp/report_io.hpp"
#include "bcbp/sieve.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitTheoremViolation = 3;

struct CommonOpts {
  std::string format = "json";
  std::string cache_dir;
  unsigned threads = 1;
  size_t max_frontier = 50'000'000;
  bool recompute = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_format = true) {
  if (with_format)
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--cache-dir", opts.cache_dir, "Result cache directory")
      ->envname("BCBP_CACHE_DIR");
  cmd->add_option("--threads", opts.threads, "Worker threads for the sieve")
      ->envname("BCBP_THREADS");
  cmd->add_option("--max-frontier", opts.max_frontier, "Partial-assignment limit");
  cmd->add_flag("--recompute", opts.recompute, "Ignore cached results");
}

bcbp::ResultRecord obtain_record(int n, const CommonOpts& opts) {
  std::optional<bcbp::ResultCache> cache;
  if (!opts.cache_dir.empty()) cache.emplace(opts.cache_dir);
  if (cache && !opts.recompute) {
    if (auto rec = cache->load(n)) return *rec;
  }
  bcbp::SolveLimits limits;
  limits.max_frontier = opts.max_frontier;
  limits.threads = opts.threads;
  bcbp::SolveReport report = bcbp::solve_folded(n, limits);
  report.j_full = bcbp::compute_Jn(report);
  bcbp::ResultRecord rec = bcbp::make_record(report);
  if (cache) cache->store(rec);
  return rec;
}

bcbp::SolveReport report_from_record(const bcbp::ResultRecord& rec) {
  bcbp::SolveReport report;
  report.n = rec.n;
  report.j_hat = rec.j_hat;
  report.j_tilde = rec.j_tilde;
  report.j_full = bcbp::Int(rec.j_full);
  for (const auto& trits : rec.solutions) {
    bcbp::FoldedVector v{rec.n, {}};
    for (int t : trits) v.entries.push_back(static_cast<int8_t>(t));
    report.solutions.push_back(std::move(v));
  }
  for (long s : rec.step_profile) report.step_profile.push_back(static_cast<size_t>(s));
  return report;
}

void print_record(const bcbp::ResultRecord& rec, const std::string& format,
                  bool csv_with_header) {
  if (format == "csv") {
    if (csv_with_header) std::cout << bcbp::csv_header() << '\n';
    std::cout << bcbp::csv_row(rec) << '\n';
  } else {
    std::cout << nlohmann::json(rec).dump() << '\n';
  }
}

std::string rat_str(const bcbp::Rat& r) { return r.get_str(); }

int run_solve(int n, const CommonOpts& opts) {
  print_record(obtain_record(n, opts), opts.format, /*csv_with_header=*/true);
  return kExitOk;
}

int run_table(int from, int to, bool density, const CommonOpts& opts) {
  bool any_incomplete = false;
  if (opts.format == "csv") std::cout << bcbp::csv_header() << '\n';
  std::vector<long> j_hats;
  for (int n = from; n <= to; ++n) {
    try {
      bcbp::ResultRecord rec = obtain_record(n, opts);
      j_hats.push_back(rec.j_hat);
      print_record(rec, opts.format, /*csv_with_header=*/false);
    } catch (const bcbp::FrontierLimitError& e) {
      any_incomplete = true;
      std::cerr << "n=" << n << ": " << e.what() << '\n';
      if (opts.format == "csv")
        std::cout << n << ",,incomplete,0\n";
      else
        std::cout << nlohmann::json{{"n", n}, {"status", "incomplete"}}.dump() << '\n';
    }
  }
  if (density && !j_hats.empty() && !any_incomplete) {
    const bcbp::Rat d = bcbp::density_stat(j_hats);
    if (opts.format == "csv")
      std::cout << "# density," << rat_str(d) << '\n';
    else
      std::cout << nlohmann::json{{"density", rat_str(d)},
                                  {"range", {from, to}}}.dump() << '\n';
  }
  return any_incomplete ? kExitResource : kExitOk;
}

bcbp::SignVector parse_sign_vector(const std::string& text) {
  bcbp::SignVector v;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    const int val = std::stoi(tok);
    if (val != 1 && val != -1)
      throw std::invalid_argument("vector entries must be 1 or -1");
    v.entries.push_back(static_cast<int8_t>(val));
  }
  if (v.entries.empty()) throw std::invalid_argument("empty vector");
  v.n = static_cast<int>(v.entries.size()) - 1;
  return v;
}

int run_interpolate(const std::string& vector_text, int n, int samples,
                    const CommonOpts& opts) {
  bcbp::SignVector delta;
  if (!vector_text.empty()) {
    delta = parse_sign_vector(vector_text);
  } else {
    const bcbp::ResultRecord rec = obtain_record(n, opts);
    if (rec.solutions.empty()) {
      std::cerr << "n=" << n << " has no nontrivial solutions to interpolate\n";
      return kExitUsage;
    }
    const bcbp::SolveReport report = report_from_record(rec);
    delta = bcbp::expand_folded(report.solutions.front()).front();
  }
  const std::vector<bcbp::Int> data = bcbp::alternate_signs(delta);
  const bcbp::RationalPolynomial poly = bcbp::lagrange_coefficients(data);

  nlohmann::json j;
  j["n"] = delta.n;
  j["vector"] = [&] {
    std::vector<int> v;
    for (int8_t e : delta.entries) v.push_back(e);
    return v;
  }();
  j["degree"] = poly.degree();
  j["bisects"] = bcbp::degree_criterion(delta);
  std::vector<std::string> coeffs;
  for (const auto& c : poly.coefficients) coeffs.push_back(rat_str(c));
  j["coefficients"] = coeffs;
  if (samples > 0) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [x, y] :
         bcbp::figure1_samples(poly, bcbp::Rat(delta.n), std::max(2, samples)))
      pts.push_back({rat_str(x), rat_str(y)});
    j["samples"] = pts;
  }
  std::cout << j.dump() << '\n';
  return kExitOk;
}

int run_gap(int n, const CommonOpts& opts) {
  nlohmann::json j;
  j["n"] = n;
  if (n > 40) {
    j["status"] = "not_computed";
    j["reason"] = "full solution set not enumerable past n=40";
    std::cout << j.dump() << '\n';
    return kExitOk;
  }
  const bcbp::SolveReport report = report_from_record(obtain_record(n, opts));
  const std::vector<bcbp::SignVector> all = bcbp::full_solution_set(report);
  const bcbp::GapReport gr = bcbp::gap(n, all);
  j["gamma"] = gr.gamma;
  j["solution_count"] = all.size();
  if (gr.witness) {
    std::vector<int> w;
    for (int8_t e : gr.witness->entries) w.push_back(e);
    j["witness"] = w;
  }
  nlohmann::json per = nlohmann::json::array();
  for (const auto& [delta, r] : gr.per_solution) {
    std::vector<int> v;
    for (int8_t e : delta.entries) v.push_back(e);
    per.push_back({{"vector", v}, {"gap", r}});
  }
  j["per_solution"] = per;
  std::cout << j.dump() << '\n';
  return kExitOk;
}

// --------------------------------------------------------------------------
// verify: the invariant suites, exit nonzero on any failure
// --------------------------------------------------------------------------

struct SuiteResult {
  std::string name;
  int checks = 0;
  int failures = 0;
};

void check(SuiteResult& suite, bool ok, const std::string& what) {
  ++suite.checks;
  if (!ok) {
    ++suite.failures;
    std::cerr << "FAIL [" << suite.name << "] " << what << '\n';
  }
}

SuiteResult suite_oracle(int max_n, const CommonOpts& opts) {
  SuiteResult suite{"oracle"};
  for (int n = 1; n <= std::min(max_n, 20); ++n) {
    bcbp::SolveLimits limits{opts.max_frontier, opts.threads};
    bcbp::SolveReport report = bcbp::solve_folded(n, limits);
    std::vector<bcbp::FoldedVector> sieved;
    if (n % 2 == 1) {
      for (const auto& s : report.solutions) {
        sieved.push_back(s);
        sieved.push_back(s.negated());
      }
    } else {
      sieved = report.solutions;
    }
    sieved.push_back(bcbp::trivial_folded(n));
    std::sort(sieved.begin(), sieved.end());
    std::vector<bcbp::FoldedVector> brute = bcbp::brute_force_folded(n);
    std::sort(brute.begin(), brute.end());
    check(suite, sieved == brute, "sieve vs brute force folded, n=" + std::to_string(n));
    if (n <= 16) {
      report.j_full = bcbp::compute_Jn(report);
      check(suite,
            report.j_full == bcbp::Int(static_cast<long>(bcbp::brute_force_full(n).size())),
            "J_n formula vs full enumeration, n=" + std::to_string(n));
    }
  }
  return suite;
}

SuiteResult suite_identities(int max_k) {
  SuiteResult suite{"identities"};
  for (int n = 1; n <= 100; ++n)
    for (int l = 0; l <= n - 1; ++l)
      check(suite, bcbp::check_identity_alt_sum(n, l),
            "alternating sum identity n=" + std::to_string(n) + " l=" + std::to_string(l));
  for (int k = 1; k <= max_k; ++k) {
    try {
      bcbp::heart_witness(k);
      if (k >= 2) bcbp::sharp_witness(k);
      ++suite.checks;
    } catch (const bcbp::TheoremViolation& e) {
      check(suite, false, e.what());
    }
  }
  return suite;
}

SuiteResult suite_degree(int max_n) {
  SuiteResult suite{"degree"};
  for (int n = 1; n <= std::min(max_n, 12); ++n) {
    bcbp::SignVector delta{n, std::vector<int8_t>(static_cast<size_t>(n) + 1, -1)};
    bool all_ok = true;
    for (long mask = 0; mask < (1L << (n + 1)); ++mask) {
      for (int k = 0; k <= n; ++k)
        delta.entries[static_cast<size_t>(k)] =
            static_cast<int8_t>((mask >> k) & 1 ? 1 : -1);
      try {
        bcbp::degree_criterion(delta);  // throws if the two sides disagree
      } catch (const bcbp::TheoremViolation&) {
        all_ok = false;
        break;
      }
    }
    check(suite, all_ok, "degree criterion equivalence, n=" + std::to_string(n));
  }
  return suite;
}

SuiteResult suite_balance(const CommonOpts& opts) {
  SuiteResult suite{"balance"};
  for (int n : {3, 5, 13, 37}) {
    if (!bcbp::is_a005383(n)) {
      check(suite, false, "expected a005383 member n=" + std::to_string(n));
      continue;
    }
    bcbp::SolveLimits limits{opts.max_frontier, opts.threads};
    bcbp::SolveReport report = bcbp::solve_folded(n, limits);
    const bcbp::PascalRow row = bcbp::binomial_row(n);
    bool all_ok = true;
    try {
      for (const auto& delta : bcbp::full_solution_set(report))
        bcbp::check_balance(n, delta, row);
    } catch (const bcbp::TheoremViolation&) {
      all_ok = false;
    }
    check(suite, all_ok, "balance property, n=" + std::to_string(n));
  }
  return suite;
}

SuiteResult suite_families(const CommonOpts& opts) {
  SuiteResult suite{"families"};
  check(suite,
        bcbp::pell_members(bcbp::FamilyTag::club, 40000) ==
            std::vector<long>{14, 103, 713, 4894, 33551},
        "club members up to 40000");
  check(suite, bcbp::pell_members(bcbp::FamilyTag::flat, 2000) == std::vector<long>{35, 1189},
        "flat members up to 2000");
  check(suite,
        bcbp::pell_members(bcbp::FamilyTag::sharp, 200) ==
            std::vector<long>{13, 33, 61, 97, 141, 193},
        "sharp members up to 200");
  // n+1 an odd prime forces an empty nontrivial solution set.
  for (int n = 2; n <= 62; ++n) {
    if (!bcbp::is_dagger(n)) continue;
    bcbp::SolveLimits limits{opts.max_frontier, opts.threads};
    check(suite, bcbp::solve_folded(n, limits).j_hat == 0,
          "dagger implies j_hat=0, n=" + std::to_string(n));
  }
  return suite;
}

int run_verify(const std::string& suite_name, int max_n, int max_k, const CommonOpts& opts) {
  std::vector<SuiteResult> results;
  const bool all = suite_name == "all";
  if (all || suite_name == "oracle") results.push_back(suite_oracle(max_n, opts));
  if (all || suite_name == "identities") results.push_back(suite_identities(max_k));
  if (all || suite_name == "degree") results.push_back(suite_degree(std::min(max_n, 12)));
  if (all || suite_name == "balance") results.push_back(suite_balance(opts));
  if (all || suite_name == "families") results.push_back(suite_families(opts));

  int failures = 0;
  for (const auto& r : results) {
    failures += r.failures;
    std::cout << r.name << ": " << (r.checks - r.failures) << "/" << r.checks
              << " checks passed\n";
  }
  return failures == 0 ? kExitOk : kExitTheoremViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for binomial-coefficient bisections"};
  app.require_subcommand(1);

  CommonOpts opts;

  int n_solve = 0;
  auto* solve = app.add_subcommand("solve", "Solve one row and report its solutions");
  solve->add_option("--n", n_solve, "Row index")->required()->check(CLI::PositiveNumber);
  add_common(solve, opts);

  int from = 1, to = 62;
  bool density = false;
  auto* table = app.add_subcommand("table", "Solve a range of rows");
  table->add_option("--from", from, "First row")->check(CLI::PositiveNumber);
  table->add_option("--to", to, "Last row")->check(CLI::PositiveNumber);
  table->add_flag("--density", density, "Append the zero-density statistic");
  add_common(table, opts);

  std::string suite = "all";
  int max_n = 14, max_k = 50;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--suite", suite, "Suite to run")
      ->check(CLI::IsMember({"all", "oracle", "identities", "degree", "balance", "families"}));
  verify->add_option("--max-n", max_n, "Range cap for exhaustive suites");
  verify->add_option("--max-k", max_k, "Witness family cap");
  add_common(verify, opts, /*with_format=*/false);

  std::string vector_text;
  int n_interp = 0, samples = 0;
  auto* interp = app.add_subcommand("interpolate",
                                    "Exact interpolation of sign-alternated data");
  interp->add_option("--vector", vector_text, "Comma-separated +-1 entries");
  interp->add_option("--n", n_interp, "Interpolate a nontrivial solution of this row");
  interp->add_option("--samples", samples, "Also emit this many exact sample points");
  add_common(interp, opts, /*with_format=*/false);

  int n_gap = 0;
  auto* gap_cmd = app.add_subcommand("gap", "Gap report over the full solution set");
  gap_cmd->add_option("--n", n_gap, "Row index")->required()->check(CLI::PositiveNumber);
  add_common(gap_cmd, opts, /*with_format=*/false);

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return run_solve(n_solve, opts);
    if (table->parsed()) {
      if (from > to) {
        std::cerr << "table: --from must be <= --to\n";
        return kExitUsage;
      }
      return run_table(from, to, density, opts);
    }
    if (verify->parsed()) return run_verify(suite, max_n, max_k, opts);
    if (interp->parsed()) {
      if (vector_text.empty() && n_interp < 1) {
        std::cerr << "interpolate: need --vector or --n\n";
        return kExitUsage;
      }
      return run_interpolate(vector_text, n_interp, samples, opts);
    }
    if (gap_cmd->parsed()) return run_gap(n_gap, opts);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const bcbp::FrontierLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const bcbp::TheoremViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitTheoremViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
