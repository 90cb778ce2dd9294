#include <gtest/gtest.h>

#include "itlab/approx.hpp"
#include "itlab/errors.hpp"
#include "itlab/transform.hpp"
#include "itlab/typability.hpp"

using namespace itlab;

namespace {

Term t(std::string_view s) { return parse_term(s, ParseOptions{.allow_bottom = true}); }

TEST(Approx, AlphaMap) {
  EXPECT_TRUE(alpha_eq(alpha_map(t("x")), t("x")));
  EXPECT_TRUE(alpha_eq(alpha_map(t("\\x. x x")), t("\\x. x x")));
  EXPECT_TRUE(alpha_eq(alpha_map(t("(\\x. x) y")), t("_|_")));
  EXPECT_TRUE(alpha_eq(alpha_map(t("\\z. (\\x. x) z")), t("\\z. _|_")));
  EXPECT_TRUE(alpha_eq(alpha_map(t("f ((\\x. x) y) z")), t("f _|_ z")));
  EXPECT_THROW(alpha_map(t("\\x. _|_")), Error);
}

TEST(Approx, Order) {
  const auto w = approx_order(t("f _|_ (\\x. _|_)"), t("f a (\\y. y)"));
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->bottoms.size(), 2u);
  EXPECT_TRUE(alpha_eq(approx_lower(t("f a (\\y. y)"), *w), t("f _|_ (\\x. _|_)")));
  EXPECT_FALSE(approx_order(t("f a"), t("g a")).has_value());
  EXPECT_FALSE(approx_order(t("f a"), t("f _|_")).has_value());
  const auto same = approx_order(t("\\x. x"), t("\\y. y"));
  ASSERT_TRUE(same.has_value());
  EXPECT_TRUE(same->bottoms.empty());
}

TEST(Approx, UnapproximateTrivially) {
  const Derivation d = rules::omega(SystemId::NDW, Context{}, t("_|_"));
  const Term q = t("f a");
  const auto w = approx_order(t("_|_"), q);
  ASSERT_TRUE(w.has_value());
  const Derivation up = unapproximate(d, q, *w);
  EXPECT_TRUE(check_derivation(up).ok());
  EXPECT_TRUE(alpha_eq(up.subject(), q));

  const Derivation ax = rules::ax(SystemId::NDW, parse_context("x:a"), "x", parse_type("a"));
  const Derivation same = unapproximate(ax, t("x"), ApproxOrder{});
  EXPECT_TRUE(structurally_equal(same, ax));
  EXPECT_THROW(unapproximate(ax, t("y"), ApproxOrder{}), Error);
}

Derivation llw_of(const Term& m) {
  const WnTyping w = type_wn(m);
  return betas_to_betal(nd_to_seq(w.derivation));
}

TEST(Approx, KIOmegaPipeline) {
  const Term m = t("(\\x. \\y. x) (\\z. z) ((\\x. x x) (\\x. x x))");
  const Derivation d = llw_of(m);
  ASSERT_EQ(d.system(), SystemId::LLW);
  ASSERT_TRUE(check_derivation(d).ok()) << check_derivation(d).to_string();
  const Approximation a = approximate(d);
  EXPECT_TRUE(replays(a.trace));
  EXPECT_TRUE(alpha_eq(a.trace.start, m));
  EXPECT_TRUE(alpha_eq(a.trace.end(), a.m_prime));
  EXPECT_TRUE(alpha_eq(alpha_map(a.m_prime), t("\\z. z")));
  EXPECT_TRUE(check_derivation(a.derivation).ok()) << check_derivation(a.derivation).to_string();
  EXPECT_EQ(a.derivation.type(), d.type());
  EXPECT_EQ(a.derivation.context(), d.context());

  const auto w = approx_order(a.derivation.subject(), a.m_prime);
  ASSERT_TRUE(w.has_value());
  const Derivation back = unapproximate(seq_to_nd(a.derivation), a.m_prime, *w);
  EXPECT_TRUE(check_derivation(back).ok());
  EXPECT_TRUE(alpha_eq(back.subject(), a.m_prime));
}

TEST(Approx, TypingStepAlongTrace) {
  const Term m = t("(\\x. x) (\\z. z)");
  const WnEvidence ev = normalize_lo(m);
  ASSERT_TRUE(ev.normalised);
  const Derivation d = rules::omega(SystemId::NDW, Context{}, alpha_map(m));
  const Derivation lifted = approx_typing_step(d, ev.trace);
  EXPECT_TRUE(check_derivation(lifted).ok());
  EXPECT_TRUE(alpha_eq(lifted.subject(), t("\\z. z")));
}

TEST(Approx, CombineTwoApproximants) {
  const Term m = t("(\\x. \\y. x) (\\z. z) w");
  const WnEvidence ev = normalize_lo(m);
  const ReductionTrace none{m, {}};
  const Derivation da = rules::omega(SystemId::NDW, Context{}, alpha_map(m));
  const Derivation db = approx_typing_step(rules::omega(SystemId::NDW, Context{}, alpha_map(m)), none);
  const Combined c = approx_combine(m, ev.trace, approx_typing_step(da, ev.trace), none, db);
  EXPECT_TRUE(check_derivation(c.derivation).ok());
  EXPECT_TRUE(replays(c.trace));
  EXPECT_TRUE(alpha_eq(c.trace.end(), c.meet));
  EXPECT_TRUE(alpha_eq(c.derivation.subject(), alpha_map(c.meet)));
}

TEST(Approx, RejectsOtherSystems) {
  EXPECT_THROW(approximate(type_sn(t("\\x. x")).derivation), Error);
}

}  // namespace
