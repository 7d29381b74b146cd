#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "genprime/genspace.hpp"
#include "genprime/oracle.hpp"
#include "genprime/sieve.hpp"

// Density bookkeeping along the primes > 3 and the lower-bound formulas,
// all kept in exact rationals until the reporting boundary. The density
// ratio multiplies (p-1)/p at mpl-form primes and (p-2)/p at mps-form
// primes; the all-alpha=2 envelope (1-2/p) is both a strict lower bound on
// that ratio and the exact full-period survivor density.

namespace genprime {

/// First m primes greater than 3 (5, 7, 11, ...).
inline std::vector<std::uint64_t> p5_list(std::size_t m) {
  if (m == 0) throw std::invalid_argument("p5_list: m must be >= 1");
  const double n = static_cast<double>(m) + 2;
  double bound = n < 6 ? 16.0 : n * (std::log(n) + std::log(std::log(n)));
  for (;;) {
    const auto primes = prime_list(static_cast<std::uint64_t>(bound) + 16);
    if (primes.size() >= m + 2) {
      return {primes.begin() + 2, primes.begin() + 2 + static_cast<std::ptrdiff_t>(m)};
    }
    bound *= 1.5;
  }
}

/// One step of the density bookkeeping.
struct DensityStep {
  std::uint32_t j = 0;       // 1-based step index
  std::uint64_t p5 = 0;      // j-th prime greater than 3
  SixForm::Tag form = SixForm::Tag::kNeither;
  std::uint32_t alpha = 0;   // 1 for mpl-form primes, 2 for mps
  std::uint64_t p5r = 0;     // p5-1 (mpl) or p5-2 (mps)
  mpq_class c_exact;         // prod p5r(i)/p5(i) for i <= j, canonical
  double c_float = 0.0;
};

/// Streaming walker over density steps. Maintains three exact quantities
/// side by side: the canonical ratio via the step recurrence, the
/// unreduced numerator/denominator products of the closed form, and the
/// envelope prod (1 - 2/p5). Use this instead of density_sequence when m
/// is large; materialized exact rationals grow without bound.
class DensityWalker {
 public:
  explicit DensityWalker(std::size_t max_steps)
      : primes_(p5_list(max_steps)), c_(1), envelope_(1), product_num_(1), product_den_(1) {}

  bool advance() {
    if (next_ == primes_.size()) return false;
    p5_ = primes_[next_++];
    form_ = classify_six_form(p5_).tag;
    alpha_ = form_ == SixForm::Tag::kMpl ? 1 : 2;
    p5r_ = p5_ - alpha_;
    // p5 is prime and larger than every factor of p5r, so these ratios are
    // born canonical and mpq multiplication keeps them that way.
    c_ *= mpq_class(p5r_, p5_);
    envelope_ *= mpq_class(p5_ - 2, p5_);
    product_num_ *= p5r_;
    product_den_ *= p5_;
    return true;
  }

  std::uint32_t j() const { return static_cast<std::uint32_t>(next_); }
  std::uint64_t p5() const { return p5_; }
  SixForm::Tag form() const { return form_; }
  std::uint32_t alpha() const { return alpha_; }
  std::uint64_t p5r() const { return p5r_; }
  const mpq_class& c_exact() const { return c_; }
  const mpq_class& envelope() const { return envelope_; }
  const mpz_class& product_num() const { return product_num_; }
  const mpz_class& product_den() const { return product_den_; }

  DensityStep step() const {
    return {j(), p5_, form_, alpha_, p5r_, c_, c_.get_d()};
  }

 private:
  std::vector<std::uint64_t> primes_;
  std::size_t next_ = 0;
  std::uint64_t p5_ = 0;
  SixForm::Tag form_ = SixForm::Tag::kNeither;
  std::uint32_t alpha_ = 0;
  std::uint64_t p5r_ = 0;
  mpq_class c_;
  mpq_class envelope_;
  mpz_class product_num_;
  mpz_class product_den_;
};

/// Materialized density steps 1..m.
inline std::vector<DensityStep> density_sequence(std::size_t m) {
  DensityWalker walker(m);
  std::vector<DensityStep> out;
  out.reserve(m);
  while (walker.advance()) out.push_back(walker.step());
  return out;
}

/// Exact survivor density after the first m sieving primes:
/// prod (1 - 2/p5(j)), j <= m.
inline mpq_class true_density(std::size_t m) {
  mpq_class d(1);
  for (const std::uint64_t p : p5_list(m)) d *= mpq_class(p - 2, p);
  return d;
}

/// Survivor residues mod P = prod p5(j), j <= m, counted by enumeration:
/// residues r with r mod q outside excluded_residues(kind, q) for every
/// sieving prime q. Equals P * true_density(m) exactly (tested, not
/// assumed). m is capped at 7 so P fits desk memory (P(7) = 37,182,145).
inline std::uint64_t full_period_survivor_count(PairKind kind, std::size_t m) {
  if (m < 1 || m > 7) {
    throw std::invalid_argument("full_period_survivor_count: m must be in [1, 7]");
  }
  const auto primes = p5_list(m);
  std::uint64_t period = 1;
  for (const std::uint64_t q : primes) period *= q;
  std::vector<std::uint64_t> words(period / 64 + 1, 0);
  for (const std::uint64_t q : primes) {
    for (const std::uint64_t r : excluded_residues(kind, q)) {
      for (std::uint64_t v = r; v < period; v += q) words[v / 64] |= 1ULL << (v % 64);
    }
  }
  std::uint64_t marked = 0;
  for (const std::uint64_t w : words) marked += std::popcount(w);
  return period - marked;
}

struct MertensProduct {
  double product;     // prod (1 - 2/p) over primes 2 < p <= N
  double normalized;  // product * ln(N)^2
};

/// Partial product of (1 - 2/p) over odd primes p <= N, with its ln^2
/// normalization. Factors are multiplied in ascending prime order so the
/// float result is reproducible. N >= 5.
inline MertensProduct mertens_twin_product(std::uint64_t N) {
  if (N < 5) throw std::invalid_argument("mertens_twin_product: N must be >= 5");
  double product = 1.0;
  for (const std::uint64_t p : prime_list(N)) {
    if (p > 2) product *= 1.0 - 2.0 / static_cast<double>(p);
  }
  const double ln = std::log(static_cast<double>(N));
  return {product, product * ln * ln};
}

/// Independent estimate of the constant the normalized product tends to:
/// 4 e^{-2 gamma} prod_{2<p<=N} (1 - 1/(p-1)^2). Reported for comparison
/// only; no check asserts against it.
inline double tc2_reference(std::uint64_t N = 1'000'000) {
  constexpr double kEulerGamma = 0.57721566490153286;
  double product = 1.0;
  for (const std::uint64_t p : prime_list(N)) {
    if (p <= 2) continue;
    const double q = static_cast<double>(p - 1);
    product *= 1.0 - 1.0 / (q * q);
  }
  return 4.0 * std::exp(-2.0 * kEulerGamma) * product;
}

namespace detail {

/// The curve n / (15 ln^2(n/6)) over real n > 6.
inline double final_bound_curve(double n) {
  const double ln = std::log(n / 6.0);
  return n / (15.0 * ln * ln);
}

}  // namespace detail

/// Final lower bound n / (15 ln^2(n/6)). Undefined at n <= 6; callers
/// should treat values below n = 18 as informational only.
inline double final_lower_bound(std::uint64_t n) {
  if (n <= 6) throw std::domain_error("final_lower_bound: undefined for n <= 6");
  return detail::final_bound_curve(static_cast<double>(n));
}

/// Bounds below this n are reported but never enforced.
inline constexpr std::uint64_t kFinalBoundValidFrom = 18;

/// Density ratio pinned per query point: c at the largest step m with
/// 6*p5(m) <= n, clamped to the first step for n < 30. Exact rationals are
/// projected to double once, here, at construction.
class BoundSchedule {
 public:
  explicit BoundSchedule(std::uint64_t n_max) : n_max_(n_max) {
    const std::uint64_t p_max = n_max / 6;
    std::size_t steps = 0;
    if (p_max >= 5) {
      for (const std::uint64_t p : prime_list(p_max)) {
        if (p > 3) ++steps;
      }
    }
    DensityWalker walker(std::max<std::size_t>(steps, 1));
    while (walker.advance()) {
      six_p5_.push_back(6 * walker.p5());
      c_.push_back(walker.c_exact().get_d());
    }
  }

  /// Pre: n <= n_max used at construction.
  double c_for(std::uint64_t n) const {
    if (n > n_max_) throw std::out_of_range("BoundSchedule: n beyond schedule");
    auto it = std::upper_bound(six_p5_.begin(), six_p5_.end(), n);
    const std::size_t idx = it == six_p5_.begin() ? 0 : static_cast<std::size_t>(it - six_p5_.begin()) - 1;
    return c_[idx];
  }

 private:
  std::uint64_t n_max_;
  std::vector<std::uint64_t> six_p5_;
  std::vector<double> c_;
};

/// Actual pair count at n against the three lower bounds. bound20 is NaN
/// for n <= 6 (and ok20 false); each ok flag is the strict comparison
/// pi_actual > bound.
struct BoundReport {
  std::uint64_t n = 0;
  std::uint64_t pi_actual = 0;
  double bound9 = 0.0;
  double bound11 = 0.0;
  double bound20 = 0.0;
  bool ok9 = false;
  bool ok11 = false;
  bool ok20 = false;
  double margin9 = 0.0;
  double margin11 = 0.0;
  double margin20 = 0.0;
};

inline BoundReport bound_report(PairKind kind, std::uint64_t n, const PairCountTable& counts,
                                const BoundSchedule& schedule) {
  if (counts.kind() != kind) throw std::invalid_argument("bound_report: table kind mismatch");
  BoundReport r;
  r.n = n;
  r.pi_actual = counts.count_up_to(n);
  const double pi = static_cast<double>(r.pi_actual);
  r.bound9 = 3.0 * static_cast<double>(n) / 30.0;  // c1 * n/6 with c1 = 3/5
  r.bound11 = schedule.c_for(n) * static_cast<double>(n) / 12.0;
  r.bound20 = n > 6 ? final_lower_bound(n) : std::numeric_limits<double>::quiet_NaN();
  r.ok9 = pi > r.bound9;
  r.ok11 = pi > r.bound11;
  r.ok20 = n > 6 && pi > r.bound20;
  r.margin9 = pi - r.bound9;
  r.margin11 = pi - r.bound11;
  r.margin20 = n > 6 ? pi - r.bound20 : std::numeric_limits<double>::quiet_NaN();
  return r;
}

/// One-off convenience; sieves and builds the schedule for this n alone.
inline BoundReport bound_report(PairKind kind, std::uint64_t n) {
  const std::uint64_t smallest = pair_large(kind, 1);
  const GenIndex K = n >= smallest ? (kind == PairKind::kTwin ? (n - 1) / 6 : (n - 5) / 6) : 0;
  const PairCountTable counts(kind, K);
  const BoundSchedule schedule(n);
  return bound_report(kind, n, counts, schedule);
}

}  // namespace genprime
