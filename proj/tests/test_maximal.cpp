#include <gtest/gtest.h>

#include "maxvar/maximal.hpp"
#include "oracle.hpp"

using namespace maxvar;

namespace {

const FiniteSequence kDelta = FiniteSequence::delta(0);
const FiniteSequence kTwo = FiniteSequence::ones_at({0, 2});
const FiniteSequence kPair = FiniteSequence::ones_at({-5, 5});

}  // namespace

TEST(Averages, IntervalExamples) {
  EXPECT_EQ(avg_interval(kDelta, -1, 1), Rational(1, 3));
  EXPECT_EQ(avg_interval(FiniteSequence(), 4, 9), Rational(0));
  EXPECT_EQ(avg_interval(FiniteSequence::ones_at({0, 1}), 0, 3), Rational(1, 2));
  EXPECT_THROW(avg_interval(kDelta, 1, 0), EmptyInterval);
}

TEST(Averages, CenteredExamples) {
  EXPECT_EQ(avg_centered(kDelta, 0, 0), Rational(1));
  EXPECT_EQ(avg_centered(kDelta, 0, 1), Rational(1, 3));
  EXPECT_EQ(avg_centered(kTwo, 1, 1), Rational(2, 3));
  EXPECT_THROW(avg_centered(kDelta, 0, -1), NegativeRadius);
}

TEST(Maximal, CenteredExamples) {
  EXPECT_EQ(centered_max_at(kDelta, 2), Rational(1, 5));
  EXPECT_EQ(centered_max_at(kDelta, 0), Rational(1));
  EXPECT_EQ(centered_max_at(kTwo, 1), Rational(2, 3));
  EXPECT_THROW(centered_max_at(FiniteSequence(), 0), ZeroFunction);
}

TEST(Maximal, NoncenteredExamples) {
  EXPECT_EQ(noncentered_max_at(kDelta, 2), Rational(1, 3));
  EXPECT_EQ(noncentered_max_at(kDelta, 0), Rational(1));
  EXPECT_EQ(noncentered_max_at(kTwo, 1), Rational(2, 3));
  EXPECT_THROW(noncentered_max_at(FiniteSequence(), 0), ZeroFunction);
}

TEST(Maximal, OracleEquivalence) {
  oracle::Generator gen(101);
  for (int i = 0; i < 150; ++i) {
    const auto f = gen.sequence();
    const Index n = gen.integer(f.lo() - 15, f.hi() + 15);
    EXPECT_EQ(centered_max_at(f, n), oracle::centered(f, n)) << f.compact() << " n=" << n;
    EXPECT_EQ(noncentered_max_at(f, n), oracle::noncentered(f, n)) << f.compact() << " n=" << n;
  }
}

TEST(Maximal, RadiusTruncationSound) {
  oracle::Generator gen(102);
  for (int i = 0; i < 100; ++i) {
    const auto f = gen.sequence();
    const Index n = gen.integer(f.lo() - 15, f.hi() + 15);
    const Index R = std::max(std::abs(n - f.lo()), std::abs(n - f.hi()));
    Rational within;
    for (Index k = 0; k <= R; ++k) within = max(within, avg_centered(f, n, k));
    for (Index k = R + 1; k <= R + 20; ++k) EXPECT_LT(avg_centered(f, n, k), within);
  }
}

TEST(Profile, DeltaExample) {
  const auto p = build_profile(kDelta, OperatorKind::Centered);
  EXPECT_EQ(p.core().lo, 0);
  EXPECT_EQ(p.core().hi, 0);
  EXPECT_EQ(p.core_values(), std::vector<Rational>{1});
  for (Index n = 1; n <= 12; ++n) {
    EXPECT_EQ(p.at(n), Rational(1L, 2 * n + 1));
    EXPECT_EQ(p.at(-n), Rational(1L, 2 * n + 1));
  }
}

TEST(Profile, ZeroAndTwoDelta) {
  const auto z = build_profile(FiniteSequence(), OperatorKind::Centered);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.at(3), Rational(0));
  const auto p = build_profile(kTwo, OperatorKind::Centered);
  EXPECT_EQ(p.core_values(), (std::vector<Rational>{1, Rational(2, 3), 1}));
}

TEST(Profile, DominationAndSymmetry) {
  oracle::Generator gen(103);
  for (int i = 0; i < 60; ++i) {
    const auto f = gen.sequence();
    const auto c = build_profile(f, OperatorKind::Centered);
    const auto nc = build_profile(f, OperatorKind::NonCentered);
    const Index d = gen.integer(-30, 30);
    const auto ct = build_profile(translate(f, d), OperatorKind::Centered);
    const auto cr = build_profile(reflect(f), OperatorKind::Centered);
    const Rational s = gen.value(5, 7) + Rational(1, 9);
    const auto cs = build_profile(scale(f, s), OperatorKind::Centered);
    for (Index n = c.band().lo; n <= c.band().hi; ++n) {
      EXPECT_LE(f(n), c.at(n));
      EXPECT_LE(c.at(n), nc.at(n));
      EXPECT_EQ(ct.at(n + d), c.at(n));
      EXPECT_EQ(cr.at(-n), c.at(n));
      EXPECT_EQ(cs.at(n), s * c.at(n));
    }
  }
}

TEST(Profile, TailLawMatchesDirectEvaluation) {
  oracle::Generator gen(104);
  for (int i = 0; i < 40; ++i) {
    const auto f = gen.sequence();
    for (auto kind : {OperatorKind::Centered, OperatorKind::NonCentered}) {
      const auto p = build_profile(f, kind);
      for (Index n = p.band().lo; n < f.lo(); ++n) EXPECT_EQ(p.tail_value(n), p.at(n));
      for (Index n = f.hi() + 1; n <= p.band().hi; ++n) EXPECT_EQ(p.tail_value(n), p.at(n));
      // Beyond the band the profile falls back to the tail law.
      for (Index n : {p.band().hi + 1, p.band().hi + 37, p.band().lo - 5}) {
        const Rational direct = kind == OperatorKind::Centered ? oracle::centered(f, n, 2) : oracle::noncentered(f, n, 2);
        EXPECT_EQ(p.at(n), direct);
      }
    }
  }
}

TEST(Omega, Examples) {
  std::vector<Rational> v(11, Rational(1));
  v[5] = 0;
  const auto f = normalize(0, v);
  EXPECT_EQ(radius_omega(f, 5), 5);
  EXPECT_EQ(centered_max_at(f, 5), Rational(10, 11));
  EXPECT_EQ(radius_omega(kDelta, 0), 0);
  EXPECT_EQ(radius_omega(kPair, 0), 5);
  EXPECT_EQ(centered_max_at(kPair, 0), Rational(2, 11));
  EXPECT_THROW(radius_omega(FiniteSequence(), 0), ZeroFunction);
}

TEST(Omega, MatchesOracle) {
  oracle::Generator gen(105);
  for (int i = 0; i < 100; ++i) {
    const auto f = gen.sequence();
    const Index n = gen.integer(f.lo() - 10, f.hi() + 10);
    const auto w = radius_omega(f, n);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(*w, oracle::omega(f, n));
  }
}

TEST(Operator, ParseNames) {
  EXPECT_EQ(parse_operator_kind("centered"), OperatorKind::Centered);
  EXPECT_EQ(parse_operator_kind("noncentered"), OperatorKind::NonCentered);
  EXPECT_THROW(parse_operator_kind("both"), ParseError);
}

TEST(Oracle, ScaledAgreesWithRational) {
  oracle::Generator gen(106);
  for (int i = 0; i < 60; ++i) {
    const auto f = gen.sequence();
    const oracle::Scaled s(f);
    const Index n = gen.integer(f.lo() - 15, f.hi() + 15);
    EXPECT_EQ(s.centered(n), oracle::centered(f, n));
    EXPECT_EQ(s.noncentered(n), oracle::noncentered(f, n));
  }
}
