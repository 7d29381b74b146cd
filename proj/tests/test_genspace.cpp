#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>
#include <vector>

#include "genprime/genspace.hpp"

using namespace genprime;

namespace {

// Test-local factoring oracle, independent of the library paths it checks.
bool trial_composite(std::uint64_t n) {
  if (n < 4) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return true;
  }
  return false;
}

bool pair_has_composite(PairKind kind, GenIndex k) {
  return trial_composite(pair_small(kind, k)) || trial_composite(pair_large(kind, k));
}

}  // namespace

TEST_CASE("six-form classification", "[genspace]") {
  CHECK(classify_six_form(7) == SixForm{SixForm::Tag::kMpl, 1});
  CHECK(classify_six_form(35) == SixForm{SixForm::Tag::kMps, 6});
  CHECK(classify_six_form(12) == SixForm{SixForm::Tag::kNeither, 0});
  CHECK(classify_six_form(5) == SixForm{SixForm::Tag::kMps, 1});
  CHECK(classify_six_form(1) == SixForm{SixForm::Tag::kNeither, 0});
  CHECK(classify_six_form(25) == SixForm{SixForm::Tag::kMpl, 4});

  for (std::uint64_t n = 1; n <= 10000; ++n) {
    const SixForm f = classify_six_form(n);
    switch (f.tag) {
      case SixForm::Tag::kMpl:
        REQUIRE(f.param >= 1);
        REQUIRE(6 * f.param + 1 == n);
        break;
      case SixForm::Tag::kMps:
        REQUIRE(f.param >= 1);
        REQUIRE(6 * f.param - 1 == n);
        break;
      case SixForm::Tag::kNeither:
        REQUIRE((n % 6 != 1 || n < 7));
        REQUIRE((n % 6 != 5 || n < 5));
        break;
    }
  }
}

TEST_CASE("composite witnesses", "[genspace]") {
  const Cpn5Witness w35 = cpn5_witness(35);
  CHECK(w35.pattern == Cpn5Witness::Pattern::kMplTimesMps);
  CHECK(w35.x == 1);
  CHECK(w35.y == 1);

  const Cpn5Witness w49 = cpn5_witness(49);
  CHECK(w49.pattern == Cpn5Witness::Pattern::kMplTimesMpl);
  CHECK(w49.x == 1);
  CHECK(w49.y == 1);

  const Cpn5Witness w25 = cpn5_witness(25);
  CHECK(w25.pattern == Cpn5Witness::Pattern::kMpsTimesMps);
  CHECK(w25.x == 1);
  CHECK(w25.y == 1);

  // 55 = 5 * 11: symmetric pattern, smallest x first.
  const Cpn5Witness w55 = cpn5_witness(55);
  CHECK(w55.pattern == Cpn5Witness::Pattern::kMpsTimesMps);
  CHECK(w55.x == 1);
  CHECK(w55.y == 2);

  CHECK_THROWS_AS(cpn5_witness(37), std::invalid_argument);   // prime
  CHECK_THROWS_AS(cpn5_witness(33), std::invalid_argument);   // factor 3
  CHECK_THROWS_AS(cpn5_witness(50), std::invalid_argument);   // factor 2
  CHECK_THROWS_AS(cpn5_witness(23), std::invalid_argument);   // below floor
}

TEST_CASE("witness identities over a range", "[genspace]") {
  for (std::uint64_t n = 25; n <= 5000; n += 2) {
    if (n % 3 == 0 || !trial_composite(n)) continue;
    const Cpn5Witness w = cpn5_witness(n);
    REQUIRE(w.n == n);
    REQUIRE(w.x >= 1);
    REQUIRE(w.y >= 1);
    REQUIRE(w.product() == n);
    REQUIRE(w.polynomial() == n);
  }
}

TEST_CASE("twin form families", "[genspace]") {
  const auto x1 = twin_k_forms(1);
  CHECK(x1[0].coefficient == 5);
  CHECK(x1[0].first == 6);
  CHECK(x1[1].coefficient == 5);
  CHECK(x1[1].first == 4);
  CHECK(x1[2].coefficient == 7);
  CHECK(x1[2].first == 8);

  const auto x3 = twin_k_forms(3);
  CHECK(x3[0].coefficient == 17);
  CHECK(x3[0].first == 20);
  CHECK(x3[1].coefficient == 17);
  CHECK(x3[1].first == 14);
  CHECK(x3[2].coefficient == 19);
  CHECK(x3[2].first == 22);

  // x = 4 exposes the first composite coefficient.
  const auto x4 = twin_k_forms(4);
  CHECK(x4[2].coefficient == 25);
  CHECK_FALSE(detail::is_small_prime(x4[2].coefficient));

  CHECK(x1[0].member(1) == 6);
  CHECK(x1[0].member(3) == 16);
  CHECK(x1[0].contains(16));
  CHECK(x1[0].y_of(16) == 3);
  CHECK_FALSE(x1[0].contains(1));  // y = 0 is not a member

  CHECK_THROWS_AS(make_thread(PairKind::kTwin, FormFamily::kMpsMember, 0),
                  std::invalid_argument);
}

TEST_CASE("cousin form families", "[genspace]") {
  const auto x1 = cousin_k_forms(1);
  CHECK(x1[0].first == 5);
  CHECK(x1[0].coefficient == 5);
  CHECK(x1[1].first == 4);
  CHECK(x1[1].coefficient == 5);
  CHECK(x1[2].first == 8);
  CHECK(x1[2].coefficient == 7);

  // Excluded k really do carry a composite member.
  CHECK(6 * x1[0].member(1) + 5 == 35);  // 5 * 7
  const auto x2 = cousin_k_forms(2);
  CHECK(x2[2].member(1) == 15);
  CHECK(6 * 15 + 1 == 91);  // 7 * 13
  CHECK(trial_composite(91));
}

TEST_CASE("exclusion membership with witnesses", "[genspace]") {
  const auto w4 = exclusion_witness(PairKind::kTwin, 4);
  REQUIRE(w4.has_value());
  CHECK(w4->family == FormFamily::kMplMemberByMps);
  CHECK(w4->x == 1);
  CHECK(w4->y == 1);

  CHECK_FALSE(is_excluded(PairKind::kTwin, 12));

  const auto w8 = exclusion_witness(PairKind::kTwin, 8);
  REQUIRE(w8.has_value());
  CHECK(w8->family == FormFamily::kMplMemberByMpl);
  CHECK(w8->x == 1);
  CHECK(w8->y == 1);

  CHECK(is_excluded(PairKind::kCousin, 4));
  CHECK_THROWS_AS(is_excluded(PairKind::kTwin, 0), std::invalid_argument);
}

TEST_CASE("exclusion is sound and complete against factoring", "[genspace]") {
  for (const PairKind kind : {PairKind::kTwin, PairKind::kCousin}) {
    for (GenIndex k = 1; k <= 2000; ++k) {
      const auto witness = exclusion_witness(kind, k);
      REQUIRE(witness.has_value() == pair_has_composite(kind, k));
      if (witness) {
        // The witness thread reproduces k and pins the composite member.
        const ExclusionThread t = make_thread(kind, witness->family, witness->x);
        REQUIRE(t.member(witness->y) == k);
        const std::uint64_t member = witness->family == FormFamily::kMpsMember
                                         ? (kind == PairKind::kTwin ? 6 * k - 1 : 6 * k + 5)
                                         : 6 * k + 1;
        REQUIRE(member % t.coefficient == 0);
        REQUIRE(trial_composite(member));
      }
    }
  }
}

TEST_CASE("thread reduction", "[genspace]") {
  // 25y + 4 rewrites as 5f - 1.
  const ExclusionThread t25 = make_thread(PairKind::kTwin, FormFamily::kMplMemberByMpl, 4);
  REQUIRE(t25.coefficient == 25);
  const ExclusionThread r25 = reduce_thread(t25);
  CHECK(r25.coefficient == 5);
  CHECK(r25.first == 4);
  CHECK(r25.family == FormFamily::kMplMemberByMps);

  // 35y - 6 rewrites as 7f + 1.
  const ExclusionThread t35 = make_thread(PairKind::kTwin, FormFamily::kMplMemberByMps, 6);
  REQUIRE(t35.coefficient == 35);
  const ExclusionThread r35 = reduce_thread(t35);
  CHECK(r35.coefficient == 7);
  CHECK(r35.first == 8);
  CHECK(r35.family == FormFamily::kMplMemberByMpl);

  // 49y + 8 rewrites as 7f + 1.
  const ExclusionThread t49 = make_thread(PairKind::kTwin, FormFamily::kMplMemberByMpl, 8);
  REQUIRE(t49.coefficient == 49);
  const ExclusionThread r49 = reduce_thread(t49);
  CHECK(r49.coefficient == 7);
  CHECK(r49.first == 8);

  // 35y + 6 rewrites through the mps side: 5f + 1.
  const ExclusionThread t35p = make_thread(PairKind::kTwin, FormFamily::kMpsMember, 6);
  const ExclusionThread r35p = reduce_thread(t35p);
  CHECK(r35p.coefficient == 5);
  CHECK(r35p.first == 6);
  CHECK(r35p.family == FormFamily::kMpsMember);

  CHECK_THROWS_AS(reduce_thread(make_thread(PairKind::kTwin, FormFamily::kMpsMember, 1)),
                  std::invalid_argument);
}

TEST_CASE("reduced threads contain every member", "[genspace]") {
  // Coefficients up to 1003 (x <= 167), members up to 1e5.
  for (const PairKind kind : {PairKind::kTwin, PairKind::kCousin}) {
    for (std::uint64_t x = 1; x <= 167; ++x) {
      for (const ExclusionThread& t : k_forms(kind, x)) {
        if (detail::is_small_prime(t.coefficient)) continue;
        const ExclusionThread reduced = reduce_thread(t);
        REQUIRE(detail::is_small_prime(reduced.coefficient));
        REQUIRE(t.coefficient % reduced.coefficient == 0);
        for (std::uint64_t y = 1; t.member(y) <= 100000; ++y) {
          REQUIRE(reduced.contains(t.member(y)));
        }
      }
    }
  }
}

TEST_CASE("mirror parameterization generates the same indices", "[genspace]") {
  // The mps-member family (6x-1)y + x has an equivalent mirror form
  // (6x+1)y - x; over all x they generate identical k-sets.
  const std::uint64_t limit = 20000;
  std::vector<std::uint8_t> direct(limit + 1, 0), mirror(limit + 1, 0);
  for (std::uint64_t x = 1; 5 * x + 1 <= limit; ++x) {
    for (std::uint64_t k = 7 * x - 1; k <= limit; k += 6 * x - 1) direct[k] = 1;
    for (std::uint64_t k = 5 * x + 1; k <= limit; k += 6 * x + 1) mirror[k] = 1;
  }
  for (std::uint64_t k = 1; k <= limit; ++k) REQUIRE(direct[k] == mirror[k]);
}

TEST_CASE("excluded residues", "[genspace]") {
  CHECK(excluded_residues(PairKind::kTwin, 5) == std::array<std::uint64_t, 2>{1, 4});
  CHECK(excluded_residues(PairKind::kTwin, 7) == std::array<std::uint64_t, 2>{1, 6});
  CHECK(excluded_residues(PairKind::kCousin, 5) == std::array<std::uint64_t, 2>{0, 4});
  CHECK(excluded_residues(PairKind::kCousin, 7) == std::array<std::uint64_t, 2>{1, 5});

  CHECK_THROWS_AS(excluded_residues(PairKind::kTwin, 3), std::invalid_argument);
  CHECK_THROWS_AS(excluded_residues(PairKind::kTwin, 9), std::invalid_argument);

  for (const PairKind kind : {PairKind::kTwin, PairKind::kCousin}) {
    for (std::uint64_t q = 5; q <= 101; ++q) {
      if (!detail::is_small_prime(q)) continue;
      const auto residues = excluded_residues(kind, q);
      REQUIRE(residues[0] != residues[1]);
      for (const std::uint64_t r : residues) {
        REQUIRE(r < q);
        // Some candidate member of any k in the class is divisible by q.
        const GenIndex k = r == 0 ? q : r;
        REQUIRE((pair_small(kind, k) % q == 0 || pair_large(kind, k) % q == 0));
      }
    }
  }
}

TEST_CASE("residue classes match thread membership", "[genspace]") {
  // For prime coefficients, family thread membership at the matching x is a
  // residue condition plus the start offset; the class start skips exactly
  // the one index whose candidate equals q.
  for (const PairKind kind : {PairKind::kTwin, PairKind::kCousin}) {
    for (std::uint64_t q = 5; q <= 101; ++q) {
      if (!detail::is_small_prime(q)) continue;
      const auto classes = prime_thread_classes(kind, q);
      const auto residues = excluded_residues(kind, q);
      const std::set<std::uint64_t> residue_set{residues[0], residues[1]};
      for (const PrimeThreadClass& cls : classes) {
        REQUIRE(residue_set.count(cls.residue) == 1);
        // The start's candidate is q * m with m in {5, 7}.
        const std::uint64_t small = pair_small(kind, cls.start);
        const std::uint64_t large = pair_large(kind, cls.start);
        const std::uint64_t member = small % q == 0 ? small : large;
        REQUIRE(member % q == 0);
        REQUIRE((member / q == 5 || member / q == 7));
      }
      // Enumerate: k in a class at or past its start iff some family thread
      // with coefficient q contains k.
      const std::uint64_t x = q % 6 == 1 ? (q - 1) / 6 : (q + 1) / 6;
      std::vector<ExclusionThread> q_threads;
      for (const ExclusionThread& t : k_forms(kind, x)) {
        if (t.coefficient == q) q_threads.push_back(t);
      }
      for (GenIndex k = 1; k <= 3000; ++k) {
        bool in_class = false;
        for (const PrimeThreadClass& cls : classes) {
          if (k % q == cls.residue && k >= cls.start) in_class = true;
        }
        bool in_thread = false;
        for (const ExclusionThread& t : q_threads) {
          if (t.contains(k)) in_thread = true;
        }
        if (in_thread) REQUIRE(in_class);
        if (in_class && !in_thread) {
          // Covered by the mirrored parameterization instead; the candidate
          // must still be a composite multiple of q.
          const std::uint64_t small = pair_small(kind, k);
          const std::uint64_t large = pair_large(kind, k);
          const std::uint64_t member = small % q == 0 ? small : large;
          REQUIRE(member % q == 0);
          REQUIRE(member / q >= 5);
        }
      }
    }
  }
}
