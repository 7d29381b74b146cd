// Command-line surface: sieving, strategy verification, density tables,
// bound reports, and the consecutive-prime gap scan. Records go to stdout
// or --out in CSV or JSON; human summaries go to stderr. Exit codes:
// 0 success, 1 a verified claim failed (or a sieve defect), 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genprime/analytics.hpp"
#include "genprime/genspace.hpp"
#include "genprime/oracle.hpp"
#include "genprime/report.hpp"
#include "genprime/sieve.hpp"

namespace {

using namespace genprime;

enum class Method : std::uint8_t { kForms, kThreads, kBoth };

struct Options {
  PairKind kind = PairKind::kTwin;
  std::uint64_t limit = 0;
  std::uint64_t steps = 0;
  std::uint64_t max = 0;
  std::uint64_t step = 1;
  Method method = Method::kThreads;
  RecordFormat format = RecordFormat::kCsv;
  std::string out;
  bool full_period = false;
};

void emit(const Options& opt, const std::string& payload) {
  if (opt.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file: " + opt.out);
  file << payload;
}

int run_sieve(const Options& opt) {
  SieveWindow window = opt.method == Method::kForms ? sieve_forms(opt.kind, opt.limit)
                                                    : sieve_prime_threads(opt.kind, opt.limit);
  if (opt.method == Method::kBoth) {
    const SieveWindow forms = sieve_forms(opt.kind, opt.limit);
    if (!window.same_exclusions(forms)) {
      std::cerr << "strategy mismatch: forms and prime-thread sieves disagree\n";
      return 1;
    }
  }
  const std::vector<GenIndex> ks = survivors(window);
  const std::vector<SurvivorPair> pairs = pairs_from_survivors(opt.kind, ks);
  emit(opt, format_survivors(pairs, opt.format));
  std::cerr << to_string(opt.kind) << " sieve to k=" << opt.limit << ": " << pairs.size()
            << " survivor pairs (pair members audited by trial division)\n";
  return 0;
}

int run_verify(const Options& opt) {
  const SieveWindow forms = sieve_forms(opt.kind, opt.limit);
  const SieveWindow threads = sieve_prime_threads(opt.kind, opt.limit);
  const PrimeTable table(pair_large(opt.kind, opt.limit));
  const std::vector<GenIndex> expected = oracle_survivors(opt.kind, opt.limit, table);

  std::vector<GenIndex> mismatches;
  for (GenIndex k = 1, e = 0; k <= opt.limit; ++k) {
    const bool oracle_says_pair = e < expected.size() && expected[e] == k;
    if (oracle_says_pair) ++e;
    const bool fo = forms.excluded(k);
    const bool th = threads.excluded(k);
    if (fo != th || fo == oracle_says_pair) mismatches.push_back(k);
  }
  if (!mismatches.empty()) {
    std::cerr << "strategies disagree at " << mismatches.size() << " indices; first";
    for (std::size_t i = 0; i < mismatches.size() && i < 10; ++i) std::cerr << ' ' << mismatches[i];
    std::cerr << '\n';
    return 1;
  }
  const std::vector<SurvivorPair> pairs = pairs_from_survivors(opt.kind, expected);
  emit(opt, format_survivors(pairs, opt.format));
  std::cerr << "3 strategies agree: " << pairs.size() << " " << to_string(opt.kind)
            << " survivors up to k=" << opt.limit << '\n';
  return 0;
}

int run_density(const Options& opt) {
  if (opt.steps < 1) throw std::invalid_argument("density: --steps must be >= 1");
  if (opt.full_period && opt.steps > 7) {
    throw std::invalid_argument("density: full-period counts require --steps <= 7");
  }
  DensityWalker walker(opt.steps);
  std::vector<DensityRow> rows;
  rows.reserve(opt.steps);
  while (walker.advance()) rows.push_back(make_density_row(walker));
  emit(opt, format_density(rows, opt.format));

  // Window sample: fraction of k in [1, W] escaping the first j primes'
  // residue classes; converges to the envelope density.
  const std::uint64_t window = opt.limit == 0 ? 100000 : opt.limit;
  std::vector<std::uint8_t> hit(window + 1, 0);
  std::uint64_t remaining = window;
  std::size_t j = 0;
  for (const std::uint64_t q : p5_list(opt.steps)) {
    ++j;
    for (const std::uint64_t r : excluded_residues(opt.kind, q)) {
      for (std::uint64_t v = r == 0 ? q : r; v <= window; v += q) {
        if (!hit[v]) {
          hit[v] = 1;
          --remaining;
        }
      }
    }
    std::cerr << "step " << j << " (p5=" << q << "): sampled density " << remaining << "/"
              << window << " = " << render_double(static_cast<double>(remaining) / window);
    if (opt.full_period && j <= 7) {
      std::uint64_t period = 1;
      const auto primes = p5_list(j);
      for (const std::uint64_t p : primes) period *= p;
      const std::uint64_t count = full_period_survivor_count(opt.kind, j);
      std::cerr << "; full period mod " << period << ": " << count << " of " << period
                << " residues survive";
      if (j == 2) std::cerr << " (thread accounting: 35*c_2 = 18)";
    }
    std::cerr << '\n';
  }
  return 0;
}

int run_bounds(const Options& opt) {
  if (opt.max < 1 || opt.step < 1) {
    throw std::invalid_argument("bounds: --max and --step must be >= 1");
  }
  const std::uint64_t smallest = pair_large(opt.kind, 1);
  const GenIndex K =
      opt.max >= smallest
          ? (opt.kind == PairKind::kTwin ? (opt.max - 1) / 6 : (opt.max - 5) / 6)
          : 0;
  const PairCountTable counts(opt.kind, K);
  const BoundSchedule schedule(opt.max);
  std::vector<BoundReport> reports;
  std::vector<std::uint64_t> violations;
  for (std::uint64_t n = opt.step; n <= opt.max; n += opt.step) {
    reports.push_back(bound_report(opt.kind, n, counts, schedule));
    const BoundReport& r = reports.back();
    if (n >= kFinalBoundValidFrom && !r.ok20) violations.push_back(n);
  }
  emit(opt, format_bounds(reports, opt.format));
  if (!violations.empty()) {
    std::cerr << violations.size() << " final-bound violations; first";
    for (std::size_t i = 0; i < violations.size() && i < 10; ++i) std::cerr << ' ' << violations[i];
    std::cerr << '\n';
    return 1;
  }
  std::cerr << "sampled " << reports.size() << " points up to n=" << opt.max
            << ": no final-bound violations (enforced for n >= " << kFinalBoundValidFrom << ")\n";
  return 0;
}

int run_gaps(const Options& opt) {
  if (opt.max < 3) throw std::invalid_argument("gaps: --max must be >= 3");
  const std::vector<GapViolation> violations = prime_gap_check(opt.max);
  emit(opt, format_gaps(violations, opt.format));
  if (!violations.empty()) {
    std::cerr << violations.size() << " consecutive-prime ratio violations up to " << opt.max
              << '\n';
    return 1;
  }
  std::cerr << "no consecutive-prime ratio violations up to " << opt.max << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generative-space sieves and analytics for twin and cousin prime pairs"};
  app.require_subcommand(1);

  Options opt;
  const std::map<std::string, PairKind> kind_names{{"twin", PairKind::kTwin},
                                                   {"cousin", PairKind::kCousin}};
  const std::map<std::string, Method> method_names{
      {"forms", Method::kForms}, {"threads", Method::kThreads}, {"both", Method::kBoth}};
  const std::map<std::string, RecordFormat> format_names{{"csv", RecordFormat::kCsv},
                                                         {"json", RecordFormat::kJson}};

  auto add_common = [&](CLI::App* cmd, bool with_kind) {
    if (with_kind) {
      cmd->add_option("--kind", opt.kind, "pair kind: twin or cousin")
          ->required()
          ->transform(CLI::CheckedTransformer(kind_names, CLI::ignore_case));
    }
    cmd->add_option("--format", opt.format, "output format: csv or json")
        ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
  };

  CLI::App* sieve_cmd = app.add_subcommand("sieve", "enumerate surviving pairs up to index k");
  add_common(sieve_cmd, true);
  sieve_cmd->add_option("--limit", opt.limit, "sieve indices 1..limit")
      ->required()
      ->check(CLI::PositiveNumber);
  sieve_cmd->add_option("--method", opt.method, "forms, threads, or both (cross-checked)")
      ->transform(CLI::CheckedTransformer(method_names, CLI::ignore_case));

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check forms sieve == prime-thread sieve == oracle");
  add_common(verify_cmd, true);
  verify_cmd->add_option("--limit", opt.limit, "verify indices 1..limit")
      ->required()
      ->check(CLI::PositiveNumber);

  CLI::App* density_cmd =
      app.add_subcommand("density", "per-prime density ratios, exact and float");
  add_common(density_cmd, true);
  density_cmd->add_option("--steps", opt.steps, "number of sieving primes")
      ->required()
      ->check(CLI::PositiveNumber);
  density_cmd->add_option("--limit", opt.limit, "sampling window for empirical density");
  density_cmd->add_flag("--full-period", opt.full_period,
                        "also count survivor residues over the full period (steps <= 7)");

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "pair counts against the lower bounds");
  add_common(bounds_cmd, true);
  bounds_cmd->add_option("--max", opt.max, "largest sampled n")->required()->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--step", opt.step, "sample spacing (default 1)")
      ->check(CLI::PositiveNumber);

  CLI::App* gaps_cmd = app.add_subcommand("gaps", "scan consecutive primes for p' >= 2p");
  add_common(gaps_cmd, false);
  gaps_cmd->add_option("--max", opt.max, "scan primes p <= max")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sieve_cmd->parsed()) return run_sieve(opt);
    if (verify_cmd->parsed()) return run_verify(opt);
    if (density_cmd->parsed()) return run_density(opt);
    if (bounds_cmd->parsed()) return run_bounds(opt);
    if (gaps_cmd->parsed()) return run_gaps(opt);
  } catch (const SieveDefect& e) {
    std::cerr << "sieve defect: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
