#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "genprime/genspace.hpp"
#include "genprime/oracle.hpp"

// Segmented sieve over generative space: marks excluded indices over a
// k-interval by two independent strategies and enumerates the surviving
// prime pairs. The form strategy is the literal family construction
// (outer x, inner y, Theta(K log K) bit sets); the prime-thread strategy
// walks two residue classes per prime coefficient and is the fast path.
// Both must produce bit-identical windows.

namespace genprime {

enum class SieveStrategy : std::uint8_t { kForms, kPrimeThreads };

inline constexpr const char* to_string(SieveStrategy s) {
  return s == SieveStrategy::kForms ? "forms" : "prime-threads";
}

/// Widest index for which all pair members fit 64 bits.
inline constexpr GenIndex kMaxGenIndex = (~0ULL - 5) / 6;

/// Exclusion bitmap over the inclusive index range [lo, hi]; bit i
/// corresponds to k = lo + i. Immutable once built.
class SieveWindow {
 public:
  PairKind kind() const { return kind_; }
  SieveStrategy strategy() const { return strategy_; }
  GenIndex lo() const { return lo_; }
  GenIndex hi() const { return hi_; }
  std::uint64_t size() const { return hi_ - lo_ + 1; }

  /// Pre: lo() <= k <= hi().
  bool excluded(GenIndex k) const {
    if (k < lo_ || k > hi_) throw std::out_of_range("SieveWindow: index outside window");
    const std::uint64_t i = k - lo_;
    return (words_[i / 64] >> (i % 64)) & 1ULL;
  }

  std::uint64_t excluded_count() const {
    std::uint64_t total = 0;
    for (const std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }

  std::uint64_t survivor_count() const { return size() - excluded_count(); }

  /// True when the other window covers the same range of the same kind
  /// with a bit-identical exclusion map (strategy may differ).
  bool same_exclusions(const SieveWindow& other) const {
    return kind_ == other.kind_ && lo_ == other.lo_ && hi_ == other.hi_ &&
           words_ == other.words_;
  }

 private:
  SieveWindow(PairKind kind, SieveStrategy strategy, GenIndex lo, GenIndex hi)
      : kind_(kind), strategy_(strategy), lo_(lo), hi_(hi), words_((hi - lo) / 64 + 1, 0) {}

  void set(std::uint64_t i) { words_[i / 64] |= 1ULL << (i % 64); }

  friend SieveWindow sieve_forms_range(PairKind, GenIndex, GenIndex);
  friend SieveWindow sieve_prime_threads_range(PairKind, GenIndex, GenIndex);

  PairKind kind_;
  SieveStrategy strategy_;
  GenIndex lo_, hi_;
  std::vector<std::uint64_t> words_;
};

namespace detail {

inline void validate_range(GenIndex lo, GenIndex hi) {
  if (lo == 0 || lo > hi) throw std::invalid_argument("sieve: need 1 <= lo <= hi");
  if (hi > kMaxGenIndex) throw std::invalid_argument("sieve: hi exceeds the 64-bit pair limit");
}

/// Smallest thread member >= lo (the thread's own first if it lies past lo).
inline std::uint64_t first_member_at_or_after(const ExclusionThread& t, GenIndex lo) {
  if (t.first >= lo) return t.first;
  const std::uint64_t skip = (lo - t.first + t.coefficient - 1) / t.coefficient;
  return t.first + skip * t.coefficient;
}

}  // namespace detail

/// Literal family marking: every thread of every family for x while the
/// least family start 5x-1 stays in range.
inline SieveWindow sieve_forms_range(PairKind kind, GenIndex lo, GenIndex hi) {
  detail::validate_range(lo, hi);
  SieveWindow w(kind, SieveStrategy::kForms, lo, hi);
  for (std::uint64_t x = 1; 5 * x - 1 <= hi; ++x) {
    for (const ExclusionThread& t : k_forms(kind, x)) {
      for (std::uint64_t m = detail::first_member_at_or_after(t, lo); m <= hi;
           m += t.coefficient) {
        w.set(m - lo);
      }
    }
  }
  return w;
}

inline SieveWindow sieve_forms(PairKind kind, GenIndex K) {
  return sieve_forms_range(kind, 1, K);
}

/// Prime residue-class marking. For each prime q with a composite multiple
/// among the candidates, both classes of k mod q are marked from the first
/// index whose candidate is q*m with m >= 5 (the lone class member whose
/// candidate equals q itself is prime and stays clear). Segmented for
/// cache locality; per-segment starts come from modular arithmetic.
inline SieveWindow sieve_prime_threads_range(PairKind kind, GenIndex lo, GenIndex hi) {
  detail::validate_range(lo, hi);
  SieveWindow w(kind, SieveStrategy::kPrimeThreads, lo, hi);
  // A coefficient q marks nothing below (5q - 5)/6, so q <= (6*hi+5)/5.
  const std::uint64_t coef_limit = (6 * hi + 5) / 5;
  const std::vector<std::uint64_t> primes = prime_list(coef_limit);
  constexpr GenIndex kSegmentSpan = 1ULL << 20;
  for (GenIndex seg_lo = lo; seg_lo <= hi; seg_lo += kSegmentSpan) {
    const GenIndex seg_hi = std::min(hi, seg_lo + kSegmentSpan - 1);
    for (const std::uint64_t q : primes) {
      if (q < 5) continue;
      for (const PrimeThreadClass& cls : prime_thread_classes(kind, q)) {
        std::uint64_t k = cls.start;
        if (k < seg_lo) k += ((seg_lo - k + q - 1) / q) * q;
        for (; k <= seg_hi; k += q) w.set(k - lo);
      }
    }
  }
  return w;
}

inline SieveWindow sieve_prime_threads(PairKind kind, GenIndex K) {
  return sieve_prime_threads_range(kind, 1, K);
}

inline SieveWindow sieve(PairKind kind, GenIndex K, SieveStrategy strategy) {
  return strategy == SieveStrategy::kForms ? sieve_forms(kind, K)
                                           : sieve_prime_threads(kind, K);
}

/// Ascending indices with a clear bit.
inline std::vector<GenIndex> survivors(const SieveWindow& window) {
  std::vector<GenIndex> out;
  out.reserve(window.survivor_count());
  for (GenIndex k = window.lo(); k <= window.hi(); ++k) {
    if (!window.excluded(k)) out.push_back(k);
  }
  return out;
}

/// A defect detected in sieve output: a supposed survivor with a composite
/// pair member. This never fires unless the sieve itself is broken.
class SieveDefect : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SurvivorPair {
  GenIndex k;
  std::uint64_t small;
  std::uint64_t large;

  friend bool operator==(const SurvivorPair&, const SurvivorPair&) = default;
};

/// Maps survivor indices to their prime pairs. With verify set (the
/// default) each member is audited by trial division against an
/// independently built prime list; a composite raises SieveDefect.
inline std::vector<SurvivorPair> pairs_from_survivors(PairKind kind,
                                                      std::span<const GenIndex> ks,
                                                      bool verify = true) {
  std::vector<SurvivorPair> out;
  out.reserve(ks.size());
  std::vector<std::uint64_t> divisors;
  if (verify && !ks.empty()) {
    divisors = prime_list(detail::isqrt(pair_large(kind, ks.back())));
  }
  auto audited_prime = [&divisors](std::uint64_t n) {
    for (const std::uint64_t p : divisors) {
      if (p * p > n) break;
      if (n % p == 0) return false;
    }
    return n >= 2;
  };
  for (const GenIndex k : ks) {
    if (k == 0) throw std::invalid_argument("pairs_from_survivors: k must be >= 1");
    const SurvivorPair pair{k, pair_small(kind, k), pair_large(kind, k)};
    if (verify && (!audited_prime(pair.small) || !audited_prime(pair.large))) {
      throw SieveDefect("pairs_from_survivors: composite pair member at k=" +
                        std::to_string(k));
    }
    out.push_back(pair);
  }
  return out;
}

/// Count of pairs whose larger member is <= n. The smallest larger member
/// is 7 (twin) or 11 (cousin), so small n count zero.
inline std::uint64_t pi_pairs(PairKind kind, std::uint64_t n) {
  if (n < pair_large(kind, 1)) return 0;
  const GenIndex K = kind == PairKind::kTwin ? (n - 1) / 6 : (n - 5) / 6;
  return sieve_prime_threads(kind, K).survivor_count();
}

/// Sorted larger pair members of every survivor with k <= K; answers
/// pi-style prefix queries for the bound sweep without re-sieving.
class PairCountTable {
 public:
  PairCountTable(PairKind kind, GenIndex K) : kind_(kind) {
    max_n_ = pair_large(kind, K + 1) - 1;
    if (K >= 1) {
      const SieveWindow w = sieve_prime_threads(kind, K);
      larger_.reserve(w.survivor_count());
      for (GenIndex k = 1; k <= K; ++k) {
        if (!w.excluded(k)) larger_.push_back(pair_large(kind, k));
      }
    }
  }

  PairKind kind() const { return kind_; }

  /// Largest n this table can answer exactly.
  std::uint64_t max_n() const { return max_n_; }

  /// Pre: n <= max_n().
  std::uint64_t count_up_to(std::uint64_t n) const {
    if (n > max_n_) throw std::out_of_range("PairCountTable: n beyond sieved coverage");
    return static_cast<std::uint64_t>(
        std::upper_bound(larger_.begin(), larger_.end(), n) - larger_.begin());
  }

 private:
  PairKind kind_;
  std::uint64_t max_n_;
  std::vector<std::uint64_t> larger_;
};

}  // namespace genprime
