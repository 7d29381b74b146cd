#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

// Generative-space machinery for twin and cousin prime pairs. Twin
// candidates sit at (6k-1, 6k+1) and cousin candidates at (6k+1, 6k+5);
// the index k is the "generative space", the integer line of the primes
// themselves the "observational space". Everything in this header is a
// pure function of its arguments; all values are immutable once built and
// safe for unrestricted concurrent use.

namespace genprime {

using GenIndex = std::uint64_t;

enum class PairKind : std::uint8_t { kTwin, kCousin };

inline constexpr const char* to_string(PairKind kind) {
  return kind == PairKind::kTwin ? "twin" : "cousin";
}

/// Smaller candidate of the pair indexed by k (k >= 1).
inline constexpr std::uint64_t pair_small(PairKind kind, GenIndex k) {
  return kind == PairKind::kTwin ? 6 * k - 1 : 6 * k + 1;
}

/// Larger candidate of the pair indexed by k (k >= 1).
inline constexpr std::uint64_t pair_large(PairKind kind, GenIndex k) {
  return kind == PairKind::kTwin ? 6 * k + 1 : 6 * k + 5;
}

inline constexpr std::uint64_t pair_gap(PairKind kind) {
  return kind == PairKind::kTwin ? 2 : 4;
}

namespace detail {

/// Trial-division primality. Meant for thread coefficients and argument
/// validation, not bulk queries (PrimeTable covers those).
inline constexpr bool is_small_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

/// Modular inverse of a mod m (m prime, a not divisible by m).
inline constexpr std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    const std::int64_t tmp_t = t - q * new_t;
    t = new_t;
    new_t = tmp_t;
    const std::int64_t tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

/// Distinct prime factors of n, ascending. n must fit trial division.
inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Six-residue classification
// ---------------------------------------------------------------------------

/// Classification of n by its residue mod 6. Every prime > 3 is 6l+1 (mpl
/// form) or 6s-1 (mps form); `param` holds the witness l or s, always >= 1.
struct SixForm {
  enum class Tag : std::uint8_t { kMpl, kMps, kNeither };
  Tag tag = Tag::kNeither;
  std::uint64_t param = 0;

  friend bool operator==(const SixForm&, const SixForm&) = default;
};

/// Total function: mpl requires n = 6l+1 with l >= 1, mps requires
/// n = 6s-1 with s >= 1, everything else (including 1) is neither.
inline constexpr SixForm classify_six_form(std::uint64_t n) {
  if (n >= 7 && n % 6 == 1) return {SixForm::Tag::kMpl, n / 6};
  if (n >= 5 && n % 6 == 5) return {SixForm::Tag::kMps, (n + 1) / 6};
  return {SixForm::Tag::kNeither, 0};
}

// ---------------------------------------------------------------------------
// Composite witnesses
// ---------------------------------------------------------------------------

/// Factored witness that n (composite, coprime to 6) splits into two
/// factors > 3. The pattern records the sign shape of the two factors;
/// both the product and the expanded polynomial reconstruct n exactly.
struct Cpn5Witness {
  enum class Pattern : std::uint8_t {
    kMplTimesMps,  // n = (6x+1)(6y-1) = 6(6xy - x + y) - 1
    kMpsTimesMpl,  // n = (6x-1)(6y+1) = 6(6xy + x - y) - 1
    kMplTimesMpl,  // n = (6x+1)(6y+1) = 6(6xy + x + y) + 1
    kMpsTimesMps,  // n = (6x-1)(6y-1) = 6(6xy - x - y) + 1
  };

  std::uint64_t n = 0;
  Pattern pattern = Pattern::kMplTimesMps;
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  std::uint64_t product() const {
    switch (pattern) {
      case Pattern::kMplTimesMps: return (6 * x + 1) * (6 * y - 1);
      case Pattern::kMpsTimesMpl: return (6 * x - 1) * (6 * y + 1);
      case Pattern::kMplTimesMpl: return (6 * x + 1) * (6 * y + 1);
      case Pattern::kMpsTimesMps: return (6 * x - 1) * (6 * y - 1);
    }
    return 0;
  }

  std::uint64_t polynomial() const {
    switch (pattern) {
      case Pattern::kMplTimesMps: return 6 * (6 * x * y + y - x) - 1;
      case Pattern::kMpsTimesMpl: return 6 * (6 * x * y + x - y) - 1;
      case Pattern::kMplTimesMpl: return 6 * (6 * x * y + x + y) + 1;
      case Pattern::kMpsTimesMps: return 6 * (6 * x * y - (x + y)) + 1;
    }
    return 0;
  }
};

/// Witness for composite n with no factor 2 or 3 (n >= 25). When several
/// factorizations exist the one with smallest x wins, ties broken by
/// smallest y, then by pattern order. Throws std::invalid_argument if n is
/// prime, below 25, or has a factor 2 or 3.
inline Cpn5Witness cpn5_witness(std::uint64_t n) {
  if (n < 25 || n % 2 == 0 || n % 3 == 0) {
    throw std::invalid_argument("cpn5_witness: n must be >= 25 and coprime to 6");
  }
  bool found = false;
  Cpn5Witness best{};
  auto consider = [&](std::uint64_t u, std::uint64_t v) {
    const SixForm a = classify_six_form(u);
    const SixForm b = classify_six_form(v);
    Cpn5Witness w{n, Cpn5Witness::Pattern::kMplTimesMps, a.param, b.param};
    using Tag = SixForm::Tag;
    if (a.tag == Tag::kMpl && b.tag == Tag::kMps) {
      w.pattern = Cpn5Witness::Pattern::kMplTimesMps;
    } else if (a.tag == Tag::kMps && b.tag == Tag::kMpl) {
      w.pattern = Cpn5Witness::Pattern::kMpsTimesMpl;
    } else if (a.tag == Tag::kMpl && b.tag == Tag::kMpl) {
      w.pattern = Cpn5Witness::Pattern::kMplTimesMpl;
    } else {
      w.pattern = Cpn5Witness::Pattern::kMpsTimesMps;
    }
    auto key = [](const Cpn5Witness& c) {
      return std::array<std::uint64_t, 3>{c.x, c.y, static_cast<std::uint64_t>(c.pattern)};
    };
    if (!found || key(w) < key(best)) {
      best = w;
      found = true;
    }
  };
  for (std::uint64_t d = 5, step = 2; d * d <= n; d += step, step = 6 - step) {
    if (n % d != 0) continue;
    consider(d, n / d);
    consider(n / d, d);
  }
  if (!found) throw std::invalid_argument("cpn5_witness: n has no factorization into parts > 3");
  return best;
}

// ---------------------------------------------------------------------------
// Exclusion-form thread families
// ---------------------------------------------------------------------------

/// The three thread families per pair kind. A family, at parameter x >= 1
/// and running y = 1, 2, 3, ..., generates exactly the indices k for which
/// a specific candidate factors with all parts > 3:
///
///   kMpsMember       twin (6x-1)y + x, cousin (6x-1)y + x - 1
///                    the 6m+5-shaped candidate (twin 6k-1, cousin 6k+5)
///                    equals (6y+1)(6x-1)
///   kMplMemberByMps  both kinds (6x-1)y - x: 6k+1 = (6x-1)(6y-1)
///   kMplMemberByMpl  both kinds (6x+1)y + x: 6k+1 = (6x+1)(6y+1)
///
/// A k is generated by some family iff one of its candidates is composite,
/// so the complement of the union over all x is exactly the survivor set.
enum class FormFamily : std::uint8_t {
  kMpsMember = 0,
  kMplMemberByMps = 1,
  kMplMemberByMpl = 2,
};

inline constexpr const char* to_string(FormFamily family) {
  switch (family) {
    case FormFamily::kMpsMember: return "mps-member";
    case FormFamily::kMplMemberByMps: return "mpl-member-by-mps";
    case FormFamily::kMplMemberByMpl: return "mpl-member-by-mpl";
  }
  return "?";
}

/// One family at fixed x: the arithmetic progression first, first+coef, ...
/// (y starts at 1; y = 0 is never a member).
struct ExclusionThread {
  PairKind kind = PairKind::kTwin;
  FormFamily family = FormFamily::kMpsMember;
  std::uint64_t x = 0;
  std::uint64_t coefficient = 0;  // 6x-1 or 6x+1; also the step
  std::uint64_t first = 0;        // member at y = 1

  std::uint64_t member(std::uint64_t y) const { return first + (y - 1) * coefficient; }

  bool contains(GenIndex k) const { return k >= first && (k - first) % coefficient == 0; }

  /// Pre: contains(k).
  std::uint64_t y_of(GenIndex k) const { return (k - first) / coefficient + 1; }

  friend bool operator==(const ExclusionThread&, const ExclusionThread&) = default;
};

inline ExclusionThread make_thread(PairKind kind, FormFamily family, std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("make_thread: x must be >= 1");
  ExclusionThread t{kind, family, x, 0, 0};
  switch (family) {
    case FormFamily::kMpsMember:
      t.coefficient = 6 * x - 1;
      t.first = kind == PairKind::kTwin ? 7 * x - 1 : 7 * x - 2;
      break;
    case FormFamily::kMplMemberByMps:
      t.coefficient = 6 * x - 1;
      t.first = 5 * x - 1;
      break;
    case FormFamily::kMplMemberByMpl:
      t.coefficient = 6 * x + 1;
      t.first = 7 * x + 1;
      break;
  }
  return t;
}

/// The three family threads at parameter x, in enum order.
inline std::array<ExclusionThread, 3> k_forms(PairKind kind, std::uint64_t x) {
  return {make_thread(kind, FormFamily::kMpsMember, x),
          make_thread(kind, FormFamily::kMplMemberByMps, x),
          make_thread(kind, FormFamily::kMplMemberByMpl, x)};
}

inline std::array<ExclusionThread, 3> twin_k_forms(std::uint64_t x) {
  return k_forms(PairKind::kTwin, x);
}

inline std::array<ExclusionThread, 3> cousin_k_forms(std::uint64_t x) {
  return k_forms(PairKind::kCousin, x);
}

// ---------------------------------------------------------------------------
// Membership queries
// ---------------------------------------------------------------------------

struct ExclusionWitness {
  FormFamily family;
  std::uint64_t x;
  std::uint64_t y;

  friend bool operator==(const ExclusionWitness&, const ExclusionWitness&) = default;
};

/// Searches all families exhaustively. The least member any family can
/// produce at parameter x is 5x-1, so x <= (k+1)/5 bounds the search.
inline std::optional<ExclusionWitness> exclusion_witness(PairKind kind, GenIndex k) {
  if (k == 0) throw std::invalid_argument("exclusion_witness: k must be >= 1");
  for (std::uint64_t x = 1; 5 * x - 1 <= k; ++x) {
    for (const ExclusionThread& t : k_forms(kind, x)) {
      if (t.contains(k)) return ExclusionWitness{t.family, x, t.y_of(k)};
    }
  }
  return std::nullopt;
}

inline bool is_excluded(PairKind kind, GenIndex k) {
  return exclusion_witness(kind, k).has_value();
}

// ---------------------------------------------------------------------------
// Prime residue classes
// ---------------------------------------------------------------------------

/// The two residues of k mod q (q prime >= 5) whose candidate pair has a
/// member divisible by q: solve 6r = -c (mod q) for each member offset c
/// (twin members are 6k-1 and 6k+1, cousin members 6k+1 and 6k+5).
/// Throws std::invalid_argument unless q is a prime > 3.
inline std::array<std::uint64_t, 2> excluded_residues(PairKind kind, std::uint64_t q) {
  if (q <= 3 || !detail::is_small_prime(q)) {
    throw std::invalid_argument("excluded_residues: q must be a prime > 3");
  }
  const std::uint64_t inv6 = detail::mod_inverse(6, q);
  auto residue_for = [&](std::uint64_t c) {
    const std::uint64_t neg_c = (q - c % q) % q;
    return (neg_c * inv6) % q;  // q < 2^32 in practice; no overflow at coefficient scales
  };
  std::uint64_t r0, r1;
  if (kind == PairKind::kTwin) {
    // member offsets -1 and +1; -(-1) = +1
    r0 = (1 * inv6) % q;
    r1 = residue_for(1);
  } else {
    r0 = residue_for(1);
    r1 = residue_for(5);
  }
  if (r0 > r1) std::swap(r0, r1);
  return {r0, r1};
}

/// One residue class of k mod q together with the first k whose candidate
/// member is a composite multiple q*m (cofactor m >= 5). The single class
/// member whose candidate equals q itself is prime, not excluded, and lies
/// before `start`.
struct PrimeThreadClass {
  std::uint64_t residue;
  GenIndex start;
};

/// Pre: q is a prime >= 5 (unchecked; hot path for the sieve).
inline std::array<PrimeThreadClass, 2> prime_thread_classes(PairKind kind, std::uint64_t q) {
  const std::array<std::int64_t, 2> offsets =
      kind == PairKind::kTwin ? std::array<std::int64_t, 2>{-1, 1}
                              : std::array<std::int64_t, 2>{1, 5};
  std::array<PrimeThreadClass, 2> out{};
  for (int i = 0; i < 2; ++i) {
    const std::int64_t c = offsets[i];
    // candidate = 6k + c = q*m needs q*m = c (mod 6); m = 5 or m = 7 works,
    // and m >= 5 guarantees the candidate is composite.
    const std::uint64_t c_mod6 = static_cast<std::uint64_t>((c % 6 + 6) % 6);
    const std::uint64_t m = (5 * q % 6 == c_mod6) ? 5 : 7;
    const std::uint64_t start =
        c < 0 ? (q * m + static_cast<std::uint64_t>(-c)) / 6
              : (q * m - static_cast<std::uint64_t>(c)) / 6;
    out[i] = {start % q, start};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Thread reduction
// ---------------------------------------------------------------------------

/// Rewrites a family thread with composite coefficient q as the family
/// thread of one of q's prime factors; every member of the input is a
/// member of the result. Factor preference follows the worked identities:
/// for the 6k+1-side families the 6l+1-shaped factor when one exists
/// (target family kMplMemberByMpl), otherwise the 6s-1 side; the
/// mps-member family always reduces through a 6s-1-shaped factor, the only
/// side for which a displayed family exists. Throws std::invalid_argument
/// if the coefficient is prime.
inline ExclusionThread reduce_thread(const ExclusionThread& thread) {
  const std::uint64_t q = thread.coefficient;
  if (detail::is_small_prime(q)) {
    throw std::invalid_argument("reduce_thread: coefficient is prime; nothing to reduce");
  }
  const std::vector<std::uint64_t> factors = detail::distinct_prime_factors(q);
  std::uint64_t mpl_factor = 0, mps_factor = 0;
  for (std::uint64_t p : factors) {
    if (p % 6 == 1 && mpl_factor == 0) mpl_factor = p;
    if (p % 6 == 5 && mps_factor == 0) mps_factor = p;
  }
  FormFamily target;
  std::uint64_t p;
  if (thread.family == FormFamily::kMpsMember) {
    // q = 6x-1, so a 6s-1-shaped prime factor always exists.
    p = mps_factor;
    target = FormFamily::kMpsMember;
  } else if (mpl_factor != 0) {
    p = mpl_factor;
    target = FormFamily::kMplMemberByMpl;
  } else {
    p = mps_factor;
    target = FormFamily::kMplMemberByMps;
  }
  const std::uint64_t xr = target == FormFamily::kMplMemberByMpl ? (p - 1) / 6 : (p + 1) / 6;
  ExclusionThread reduced = make_thread(thread.kind, target, xr);
  // Same residue class mod p, and the input starts later: superset holds.
  if (thread.first % p != reduced.first % p || thread.first < reduced.first) {
    throw std::logic_error("reduce_thread: reduction identity violated");
  }
  return reduced;
}

}  // namespace genprime
