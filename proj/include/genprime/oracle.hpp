#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "genprime/genspace.hpp"

// Ground-truth primality: a classical segmented sieve of Eratosthenes with
// odd-only storage, plus direct pair enumeration and a consecutive-prime
// gap scanner. Deliberately independent of the exclusion-form machinery it
// is used to validate; the only wheel here is mod 2.

namespace genprime {

namespace detail {

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Plain byte sieve, used to bootstrap the segmented passes.
inline std::vector<std::uint64_t> simple_odd_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 3) return primes;
  std::vector<std::uint8_t> comp(limit + 1, 0);
  for (std::uint64_t n = 3; n <= limit; n += 2) {
    if (comp[n]) continue;
    primes.push_back(n);
    for (std::uint64_t m = n * n; m <= limit; m += 2 * n) comp[m] = 1;
  }
  return primes;
}

}  // namespace detail

/// Bit-packed primality over [0, limit], odd numbers only (bit i holds
/// 2i+1). Immutable after construction; queries are freely concurrent.
class PrimeTable {
 public:
  /// Supported capacity; the bitmap costs (limit/16) bytes of memory.
  static constexpr std::uint64_t kMaxLimit = 10'000'000'000ULL;

  explicit PrimeTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) throw std::invalid_argument("PrimeTable: limit must be >= 2");
    if (limit > kMaxLimit) throw std::invalid_argument("PrimeTable: limit above capacity");
    const std::uint64_t nbits = (limit + 1) / 2;  // odd numbers <= limit
    words_.assign((nbits + 63) / 64, ~0ULL);
    const auto base = detail::simple_odd_primes(detail::isqrt(limit));
    constexpr std::uint64_t kSegmentBits = 1ULL << 21;
    for (std::uint64_t seg = 0; seg < nbits; seg += kSegmentBits) {
      const std::uint64_t seg_end = std::min(nbits, seg + kSegmentBits);  // exclusive
      const std::uint64_t hi_n = 2 * (seg_end - 1) + 1;
      const std::uint64_t lo_n = 2 * seg + 1;
      for (const std::uint64_t p : base) {
        if (p * p > hi_n) break;
        std::uint64_t m = std::max(p * p, ((lo_n + p - 1) / p) * p);
        if (m % 2 == 0) m += p;
        for (; m <= hi_n; m += 2 * p) clear_bit((m - 1) / 2);
      }
    }
    clear_bit(0);  // 1 is not prime
    const std::uint64_t tail = nbits % 64;
    if (tail != 0) words_.back() &= (~0ULL >> (64 - tail));
  }

  std::uint64_t limit() const { return limit_; }

  /// Pre: n <= limit().
  bool is_prime(std::uint64_t n) const {
    if (n > limit_) throw std::out_of_range("PrimeTable: query above limit");
    if (n == 2) return true;
    if (n < 2 || n % 2 == 0) return false;
    const std::uint64_t i = (n - 1) / 2;
    return (words_[i / 64] >> (i % 64)) & 1ULL;
  }

  std::uint64_t count_primes() const {
    std::uint64_t total = limit_ >= 2 ? 1 : 0;  // the prime 2
    for (const std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }

  /// Calls fn on every prime <= limit, ascending.
  template <typename Fn>
  void for_each_prime(Fn&& fn) const {
    if (limit_ >= 2) fn(std::uint64_t{2});
    for (std::uint64_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        const int b = std::countr_zero(w);
        fn(2 * (wi * 64 + static_cast<std::uint64_t>(b)) + 1);
        w &= w - 1;
      }
    }
  }

 private:
  void clear_bit(std::uint64_t i) { words_[i / 64] &= ~(1ULL << (i % 64)); }

  std::uint64_t limit_;
  std::vector<std::uint64_t> words_;
};

inline PrimeTable primes_up_to(std::uint64_t n) { return PrimeTable(n); }

/// All primes <= n, ascending. Empty for n < 2.
inline std::vector<std::uint64_t> prime_list(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  const PrimeTable table(n);
  out.reserve(n > 16 ? static_cast<std::size_t>(1.2 * n / std::log(static_cast<double>(n))) + 8
                     : 8);
  table.for_each_prime([&out](std::uint64_t p) { out.push_back(p); });
  return out;
}

/// Indices k <= K whose candidate pair is fully prime, by direct lookup.
/// Pre: table covers pair_large(kind, K), i.e. table.limit() >= 6K+5.
inline std::vector<GenIndex> oracle_survivors(PairKind kind, GenIndex K, const PrimeTable& table) {
  if (table.limit() < pair_large(kind, K)) {
    throw std::invalid_argument("oracle_survivors: table does not cover 6K+5");
  }
  std::vector<GenIndex> out;
  for (GenIndex k = 1; k <= K; ++k) {
    if (table.is_prime(pair_small(kind, k)) && table.is_prime(pair_large(kind, k))) {
      out.push_back(k);
    }
  }
  return out;
}

struct GapViolation {
  std::uint64_t prime;
  std::uint64_t next_prime;

  friend bool operator==(const GapViolation&, const GapViolation&) = default;
};

/// Scans consecutive primes (p, p') with p <= n_max and reports every pair
/// with p' >= 2p. Streams fixed-size segments; nothing is stored beyond
/// the current one. The scan extends past n_max up to 2*n_max+16, which
/// closes the last pair unless that pair is itself a violation.
inline std::vector<GapViolation> prime_gap_check(std::uint64_t n_max) {
  if (n_max < 3) throw std::invalid_argument("prime_gap_check: n_max must be >= 3");
  std::vector<GapViolation> violations;
  const std::uint64_t ceiling = 2 * n_max + 16;
  const auto base = detail::simple_odd_primes(detail::isqrt(ceiling));
  constexpr std::uint64_t kSpan = 1ULL << 20;  // odd numbers per segment
  std::vector<std::uint8_t> comp(kSpan);
  std::uint64_t prev = 2;
  for (std::uint64_t lo = 3; lo <= ceiling && prev <= n_max; lo += 2 * kSpan) {
    const std::uint64_t hi = std::min(ceiling, lo + 2 * (kSpan - 1));  // inclusive, odd
    std::fill(comp.begin(), comp.end(), 0);
    for (const std::uint64_t p : base) {
      if (p * p > hi) break;
      std::uint64_t m = std::max(p * p, ((lo + p - 1) / p) * p);
      if (m % 2 == 0) m += p;
      for (; m <= hi; m += 2 * p) comp[(m - lo) / 2] = 1;
    }
    for (std::uint64_t n = lo; n <= hi; n += 2) {
      if (comp[(n - lo) / 2]) continue;
      if (prev <= n_max && n >= 2 * prev) violations.push_back({prev, n});
      prev = n;
      if (prev > n_max) break;
    }
  }
  if (prev <= n_max) throw std::logic_error("prime_gap_check: scan ended without a successor");
  return violations;
}

}  // namespace genprime
