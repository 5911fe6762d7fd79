#include <gtest/gtest.h>

#include "maxvar/variation.hpp"
#include "oracle.hpp"

using namespace maxvar;

namespace {

const FiniteSequence kDelta = FiniteSequence::delta(0);
const FiniteSequence kTwo = FiniteSequence::ones_at({0, 2});

Rational truncated(const FiniteSequence& f, OperatorKind kind) {
  bool monotone = false;
  const Rational v = kind == OperatorKind::Centered
                         ? oracle::truncated_variation(f, 40, [](const auto& g, Index n) { return oracle::centered(g, n, 2); },
                                                       &monotone)
                         : oracle::truncated_variation(
                               f, 40, [](const auto& g, Index n) { return oracle::noncentered(g, n, 2); }, &monotone);
  EXPECT_TRUE(monotone) << f.compact();
  return v;
}

}  // namespace

TEST(VarSequence, Examples) {
  EXPECT_EQ(var_sequence(kDelta), Rational(2));
  EXPECT_EQ(var_sequence(kTwo), Rational(4));
  EXPECT_EQ(var_sequence(FiniteSequence()), Rational(0));
}

TEST(VarProfile, Examples) {
  EXPECT_EQ(var_profile(build_profile(kDelta, OperatorKind::Centered)), Rational(2));
  EXPECT_EQ(var_profile(build_profile(kTwo, OperatorKind::Centered)), Rational(8, 3));
  EXPECT_EQ(var_profile(build_profile(FiniteSequence(), OperatorKind::Centered)), Rational(0));
  EXPECT_EQ(truncated(kDelta, OperatorKind::Centered), Rational(2));
  EXPECT_EQ(truncated(kTwo, OperatorKind::Centered), Rational(8, 3));
}

TEST(VarRatio, Examples) {
  EXPECT_EQ(*var_ratio(kDelta, OperatorKind::Centered).ratio, Rational(1));
  EXPECT_EQ(*var_ratio(kTwo, OperatorKind::Centered).ratio, Rational(2, 3));
  EXPECT_FALSE(var_ratio(FiniteSequence(), OperatorKind::Centered).ratio.has_value());
}

TEST(VarProfile, TruncationOracle) {
  oracle::Generator gen(201);
  for (int i = 0; i < 40; ++i) {
    const auto f = gen.sequence(8);
    for (auto kind : {OperatorKind::Centered, OperatorKind::NonCentered})
      EXPECT_EQ(var_profile(build_profile(f, kind)), truncated(f, kind)) << f.compact();
  }
}

TEST(VarSequence, MatchesOracle) {
  oracle::Generator gen(202);
  for (int i = 0; i < 200; ++i) {
    const auto f = gen.sequence(12, 4, 8, false);
    EXPECT_EQ(var_sequence(f), oracle::variation(f));
  }
}

TEST(Variation, Invariances) {
  oracle::Generator gen(203);
  for (int i = 0; i < 80; ++i) {
    const auto f = gen.sequence();
    const Index d = gen.integer(-40, 40);
    const Rational c = gen.value(6, 5) + Rational(1, 3);
    for (auto kind : {OperatorKind::Centered, OperatorKind::NonCentered}) {
      const auto base = var_ratio(f, kind);
      for (const auto& g : {translate(f, d), reflect(f)}) {
        const auto r = var_ratio(g, kind);
        EXPECT_EQ(r.var_f, base.var_f);
        EXPECT_EQ(r.var_Mf, base.var_Mf);
      }
      const auto s = var_ratio(scale(f, c), kind);
      EXPECT_EQ(s.var_f, c * base.var_f);
      EXPECT_EQ(s.var_Mf, c * base.var_Mf);
      EXPECT_EQ(*s.ratio, *base.ratio);
    }
  }
}

TEST(Variation, NoncenteredBoundOnRandomInstances) {
  oracle::Generator gen(204);
  for (int i = 0; i < 200; ++i) {
    const auto f = gen.sequence();
    const auto r = var_ratio(f, OperatorKind::NonCentered);
    EXPECT_LE(r.var_Mf, r.var_f) << f.compact();
  }
}
