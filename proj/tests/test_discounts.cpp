#include <gtest/gtest.h>

#include <iomanip>
#include <sstream>

#include "hmatch/discounts.hpp"
#include "hmatch/generators.hpp"
#include "oracles.hpp"
#include "reference_table.hpp"

using namespace hmatch;

namespace {

std::string fixed4(const HighPrecision& v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

HighPrecision hp(const Rational& r) {
  return HighPrecision(numerator_of(r).str()) / HighPrecision(denominator_of(r).str());
}

}  // namespace

TEST(Discounts, HStarValues) {
  EXPECT_EQ(h_star(1), 1);
  EXPECT_EQ(h_star(2), Rational(2, 3));
  EXPECT_EQ(h_star(3), Rational(3, 7));
  EXPECT_EQ(h_star(4), Rational(4, 13));
  EXPECT_ERRC(h_star(0), Errc::InvalidK);
}

TEST(Discounts, RankScheduleMatchesHStarOnTheDiagonal) {
  for (std::size_t k = 2; k <= 12; ++k) {
    EXPECT_EQ(h_r(k, k), h_star(k)) << k;
    const Integer kk = static_cast<unsigned long>(k);
    EXPECT_EQ(h_r(k + 1, k), Rational(kk * kk, kk * kk * kk - 1)) << k;
  }
}

TEST(Discounts, TildeComesFromTwoRecurrenceStepsBelowOneOverKPlusTwo) {
  // Not h_{k+3}(k): that starts the recurrence from h*(k+3) and lands strictly above.
  for (std::size_t k = 2; k <= 12; ++k) {
    const Rational top(1, static_cast<unsigned long>(k + 2));
    const Rational mid = (1 - top) / static_cast<long>(k);
    const Rational low = (1 - mid) / static_cast<long>(k - 1);
    EXPECT_EQ(h_tilde_inf(k), low) << k;
    EXPECT_LT(h_tilde_inf(k), h_r(k + 3, k)) << k;
  }
  EXPECT_EQ(h_r(5, 2), Rational(79, 126));
  EXPECT_EQ(h_tilde_inf(2), Rational(5, 8));
}

TEST(Discounts, RankScheduleBetweenBaselineAndHStar) {
  for (std::size_t r = 2; r <= 12; ++r) {
    for (std::size_t k = 2; k <= r; ++k) {
      EXPECT_LE(Rational(1, static_cast<unsigned long>(k)), h_r(r, k)) << r << " " << k;
      EXPECT_LE(h_r(r, k), h_star(k)) << r << " " << k;
    }
  }
}

TEST(Discounts, EvenAndOddRanksBracketTheLimit) {
  for (std::size_t k = 2; k <= 6; ++k) {
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_GT(h_r(k + 2 * i, k), h_r(k + 2 * i + 2, k)) << k << " " << i;
      EXPECT_LT(h_r(k + 1 + 2 * i, k), h_r(k + 3 + 2 * i, k)) << k << " " << i;
    }
    for (std::size_t i = 0; i <= 4; ++i) {
      EXPECT_GT(hp(h_r(k + 2 * i, k)), h_inf_float(k));
      EXPECT_LT(hp(h_r(k + 1 + 2 * i, k)), h_inf_float(k));
    }
  }
}

TEST(Discounts, RankScheduleRecurrence) {
  for (std::size_t r = 2; r <= 12; ++r) {
    for (std::size_t k = 2; k + 1 <= r; ++k) {
      EXPECT_EQ(h_r(r, k + 1), 1 - static_cast<long>(k - 1) * h_r(r, k)) << r << " " << k;
    }
    EXPECT_EQ(h_r(r, r + 1), 0);
    EXPECT_EQ(h_r(r, r + 5), 0);
  }
  EXPECT_EQ(h_r(3, 2), Rational(4, 7));
  EXPECT_EQ(h_r(3, 3), Rational(3, 7));
  EXPECT_ERRC(h_r(3, 1), Errc::InvalidK);
}

TEST(Discounts, RankSchedulesAreSandwichedByTruncations) {
  // h_r(k) lies between consecutive partial sums of the alternating series.
  for (std::size_t r = 3; r <= 12; ++r) {
    for (std::size_t k = 2; k < r; ++k) {
      const std::size_t terms = r - k;
      const Rational a = h_inf_truncated(k, terms);
      const Rational b = h_inf_truncated(k, terms + 1);
      const Rational v = h_r(r, k);
      EXPECT_TRUE((a <= v && v <= b) || (b <= v && v <= a)) << r << " " << k;
    }
  }
}

TEST(Discounts, TruncationsConvergeToTheClosedForm) {
  for (std::size_t k = 2; k <= 12; ++k) {
    const HighPrecision target = h_inf_float(k);
    HighPrecision prev_gap = 1;
    for (std::size_t t = 1; t <= 25; ++t) {
      const HighPrecision gap = abs(hp(h_inf_truncated(k, t)) - target);
      EXPECT_LT(gap, prev_gap) << k << " " << t;
      prev_gap = gap;
      // Alternating series: the error is below the first omitted term.
      EXPECT_LE(gap, hp(Rational(factorial(static_cast<unsigned>(k - 2)),
                                 factorial(static_cast<unsigned>(k - 1 + t)))));
    }
    EXPECT_LT(prev_gap, HighPrecision("1e-20"));
  }
  EXPECT_ERRC(h_inf_truncated(3, 0), Errc::InvalidParameter);
}

TEST(Discounts, ClosedFormMatchesLongTruncation) {
  for (std::size_t k = 2; k <= 20; ++k) {
    const HighPrecision diff = abs(h_inf_float(k) - hp(h_inf_truncated(k, 60)));
    EXPECT_LT(diff, HighPrecision("1e-60")) << k;
  }
}

TEST(Discounts, DerangementNumbers) {
  const std::vector<int> known{1, 0, 1, 2, 9, 44, 265, 1854};
  for (std::size_t n = 0; n < known.size(); ++n) EXPECT_EQ(derangements(n), known[n]);
}

TEST(Discounts, ReferenceTableToFourPlaces) {
  for (const auto& r : reference_table()) {
    EXPECT_EQ(to_fixed(Rational(1, static_cast<unsigned long>(r.k)), 4), r.inv);
    EXPECT_EQ(to_fixed(h_star(r.k), 4), r.star) << r.k;
    EXPECT_EQ(fixed4(h_inf_float(r.k)), r.inf) << r.k;
    EXPECT_EQ(to_fixed(h_tilde_inf(r.k), 4), r.tilde) << r.k;
  }
}

TEST(Discounts, OrderingToThirtyDigits) {
  // 1/k < h~_inf < h_inf < h*, with gaps visible at 30 digits.
  for (std::size_t k = 2; k <= 20; ++k) {
    const HighPrecision inv = HighPrecision(1) / HighPrecision(k);
    const HighPrecision inf = h_inf_float(k);
    const HighPrecision tilde = hp(h_tilde_inf(k));
    EXPECT_LT(inv, tilde) << k;
    EXPECT_GT(inf - tilde, HighPrecision("1e-30")) << k;
    EXPECT_GT(hp(h_star(k)) - inf, HighPrecision("1e-30")) << k;
  }
}

TEST(Discounts, AsymptoticsApproachOneOverK) {
  // k h(k) -> 1 from above, and k (k h_inf(k) - 1) stays bounded.
  HighPrecision prev = 10;
  for (std::size_t k = 3; k <= 40; ++k) {
    const HighPrecision scaled = HighPrecision(k) * h_inf_float(k) - 1;
    EXPECT_GT(scaled, 0);
    EXPECT_LT(scaled, prev);
    prev = scaled;
    EXPECT_LT(HighPrecision(k) * scaled, 2);
  }
}

TEST(Discounts, LeadingTermsForLargeK) {
  // k h*(k) - 1 - 1/k and k h~(k) - 1 - 1/k^2 shrink toward 0.
  Rational prev_star = 1;
  Rational prev_tilde = 1;
  for (std::size_t k : {3u, 5u, 10u, 100u, 1000u, 10000u}) {
    const Rational kk = static_cast<unsigned long>(k);
    const Rational star = abs(kk * h_star(k) - 1 - 1 / kk);
    const Rational tilde = abs(kk * h_tilde_inf(k) - 1 - 1 / (kk * kk));
    EXPECT_LT(star, prev_star) << k;
    EXPECT_LT(tilde, prev_tilde) << k;
    prev_star = star;
    prev_tilde = tilde;
  }
  EXPECT_LT(prev_star, Rational(1, 100000000));
  EXPECT_LT(prev_tilde, Rational(1, 100000000));
}

TEST(Discounts, ConditionsHoldForPublishedSchedules) {
  EXPECT_TRUE(satisfies_A123(Schedule::hr(8), 7));
  EXPECT_TRUE(satisfies_A123(Schedule::htilde(), 12));
  EXPECT_TRUE(satisfies_A123(Schedule::hinf_for_rank(12), 12));
  for (const auto& row : validate_A123(Schedule::baseline(), 12)) {
    EXPECT_TRUE(row.all());
    EXPECT_GT(row.slack_a1, 0);
    EXPECT_GT(row.slack_a2, 0);
    EXPECT_GT(row.slack_a3, 0);
  }
  // h* is optimal per size but decreases too slowly for the third condition.
  const auto star = validate_A123(Schedule::hstar(), 6);
  EXPECT_TRUE(star[0].a1 && star[0].a2);
  EXPECT_FALSE(star[0].a3);
  // Constant 1 breaks the cap.
  EXPECT_FALSE(validate_A123(Schedule::constant(1), 3)[0].a2);
}

TEST(Discounts, RankScheduleIsTightInTheThirdCondition) {
  for (std::size_t r = 3; r <= 10; ++r) {
    for (const auto& row : validate_A123(Schedule::hr(r), r - 1)) EXPECT_EQ(row.slack_a3, 0);
  }
}

TEST(Discounts, ProfilesFollowEdgeSizes) {
  const auto h = Hypergraph::build(6, {{0, 1}, {1, 2, 3}, {3, 4, 5, 0}});
  const auto prof = make_profile(h, Schedule::hstar());
  EXPECT_EQ(prof.g, (EdgeValues{Rational(2, 3), Rational(3, 7), Rational(4, 13)}));
  EXPECT_EQ(prof.schedule_name, "hstar");
  EXPECT_ERRC(make_profile(h, Schedule::hr(3)), Errc::ScheduleUndefinedForSize);
  EXPECT_ERRC(make_profile(h, Schedule::table({{2, Rational(1, 2)}})), Errc::ScheduleUndefinedForSize);
  EXPECT_ERRC(make_profile(h, Schedule::constant(0)), Errc::ScheduleUndefinedForSize);
  const auto singleton = Hypergraph::build(2, {{0}});
  EXPECT_EQ(make_profile(singleton, Schedule::hstar()).g, (EdgeValues{1}));
  EXPECT_ERRC(Schedule::constant(Rational(3, 2)), Errc::InvalidParameter);
}

TEST(Discounts, ScheduleNames) {
  EXPECT_EQ(Schedule::hr(5).name(), "hr:5");
  EXPECT_EQ(Schedule::hinf_truncated(7).name(), "hinf:7");
  EXPECT_EQ(Schedule::constant(Rational(1, 2)).name(), "constant:1/2");
  EXPECT_EQ(Schedule::hinf_for_rank(3)(3), h_r(11, 3));
}
