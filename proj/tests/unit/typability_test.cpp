#include <gtest/gtest.h>

#include "itlab/corpus.hpp"
#include "itlab/errors.hpp"
#include "itlab/typability.hpp"

using namespace itlab;

namespace {

bool equivalent(const Type& a, const Type& b) { return leq(a, b) && leq(b, a); }

TEST(TypeSn, SelfApplication) {
  const SnTyping t = type_sn(parse_term("\\x. x x"));
  EXPECT_TRUE(check_derivation(t.derivation).ok()) << check_derivation(t.derivation).to_string();
  EXPECT_EQ(t.derivation.system(), SystemId::LS);
  EXPECT_TRUE(t.context.empty());
  EXPECT_TRUE(equivalent(t.type, parse_type("t0 & (t0 -> t1) -> t1"))) << to_string(t.type);
  EXPECT_EQ(t.type, t.derivation.type());
}

TEST(TypeSn, Variable) {
  const SnTyping t = type_sn(parse_term("x"));
  EXPECT_EQ(t.context, parse_context("x:t0"));
  EXPECT_EQ(t.type, parse_type("t0"));
  EXPECT_TRUE(check_derivation(t.derivation).ok());
}

TEST(TypeSn, OpenApplicationAndRedex) {
  for (const char* src : {"f y z", "(\\x. x) y", "(\\x. \\y. y) w", "(\\x. x x) (\\z. z)",
                          "\\f. \\x. f (f x)", "(\\x. \\y. x y y) (\\a. \\b. b)"}) {
    const Term m = parse_term(src);
    const SnTyping t = type_sn(m);
    EXPECT_TRUE(check_derivation(t.derivation).ok()) << src;
    EXPECT_TRUE(alpha_eq(t.derivation.subject(), m)) << src;
    EXPECT_EQ(t.derivation.context(), t.context) << src;
    EXPECT_TRUE(is_omega_free(t.type)) << src;
  }
}

TEST(TypeSn, DivergentTermRunsOutOfFuel) {
  try {
    type_sn(parse_term("(\\x. x x) (\\x. x x)"), 500);
    FAIL() << "expected FuelExhausted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FuelExhausted);
  }
}

TEST(TypeSn, WholeSmallCorpus) {
  CorpusSpec spec;
  spec.max_size = 6;
  std::size_t typed = 0;
  for (const Term& m : enumerate_terms(spec)) {
    if (check_sn(m).verdict != SnVerdict::SN) continue;
    const SnTyping t = type_sn(m);
    ASSERT_TRUE(check_derivation(t.derivation).ok()) << to_string(m);
    ++typed;
  }
  EXPECT_GT(typed, 50u);
}

TEST(TypeWn, ErasingRedexWithDivergentArgument) {
  const Term m = parse_term("(\\d. \\z. z) ((\\x. x x) (\\x. x x))");
  const WnTyping t = type_wn(m);
  EXPECT_EQ(t.derivation.system(), SystemId::NDW);
  EXPECT_TRUE(check_derivation(t.derivation).ok()) << check_derivation(t.derivation).to_string();
  EXPECT_TRUE(alpha_eq(t.derivation.subject(), m));
  EXPECT_TRUE(is_omega_free(t.type));
  EXPECT_TRUE(is_omega_free(t.context));
  EXPECT_TRUE(replays(t.trace));
  EXPECT_TRUE(alpha_eq(t.trace.end(), parse_term("\\z. z")));
}

TEST(TypeWn, KombinatorWithDivergentArgument) {
  const Term m = parse_term("(\\x. \\y. x) (\\z. z) ((\\x. x x) (\\x. x x))");
  const WnTyping t = type_wn(m);
  EXPECT_TRUE(check_derivation(t.derivation).ok());
  EXPECT_TRUE(is_omega_free(t.type));
  EXPECT_EQ(t.trace.length(), 2u);
}

TEST(TypeWn, FamilyIsTypable) {
  const std::vector<Term> family = wn_not_sn_family();
  EXPECT_GE(family.size(), 25u);
  for (const Term& m : family) {
    EXPECT_EQ(check_sn(m).verdict, SnVerdict::NonSN) << to_string(m);
    const WnTyping t = type_wn(m);
    EXPECT_TRUE(check_derivation(t.derivation).ok()) << to_string(m);
    EXPECT_TRUE(is_omega_free(t.type) && is_omega_free(t.context)) << to_string(m);
  }
}

TEST(TypeWn, NonNormalisingRunsOutOfFuel) {
  try {
    type_wn(parse_term("(\\x. x x) (\\x. x x)"), 200);
    FAIL() << "expected FuelExhausted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FuelExhausted);
  }
}

}  // namespace
