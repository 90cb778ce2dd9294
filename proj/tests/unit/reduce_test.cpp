#include <gtest/gtest.h>

#include "itlab/corpus.hpp"
#include "itlab/errors.hpp"
#include "itlab/reduce.hpp"

using namespace itlab;

namespace {

Term t(const char* s) { return parse_term(s); }
const char* kOmega = "(\\x. x x) (\\x. x x)";

// Longest reduction by plain recursion over every redex; only for SN terms.
std::size_t longest(const Term& m) {
  std::size_t best = 0;
  for (const Position& p : redexes(m)) best = std::max(best, 1 + longest(step(m, p)));
  return best;
}

TEST(Reduce, RedexPositionsPreOrder) {
  EXPECT_EQ(redexes(t("(\\x. x) y")), std::vector<Position>{Position{}});
  EXPECT_TRUE(redexes(t("\\x. x")).empty());
  const auto rs = redexes(t("(\\x. x x) ((\\y. y) z)"));
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_TRUE(rs[0].is_root());
  EXPECT_EQ(to_string(rs[1]), "arg");
}

TEST(Reduce, Step) {
  EXPECT_TRUE(alpha_eq(step(t("(\\x. x x) y"), Position{}), t("y y")));
  EXPECT_TRUE(alpha_eq(step(t("(\\x. z) y"), Position{}), t("z")));
  EXPECT_TRUE(alpha_eq(step(t(kOmega), Position{}), t(kOmega)));
  try {
    step(t("x y"), Position{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotARedex);
  }
}

TEST(Reduce, NormalizeLeftmostOutermost) {
  WnEvidence a = normalize_lo(t("(\\x. \\y. x) a b"), 10);
  ASSERT_TRUE(a.normalised);
  EXPECT_TRUE(alpha_eq(*a.normal_form, t("a")));
  EXPECT_EQ(a.trace.length(), 2u);
  EXPECT_TRUE(replays(a.trace));

  WnEvidence b = normalize_lo(t(kOmega), 50);
  EXPECT_FALSE(b.normalised);
  EXPECT_EQ(b.fuel_spent, 50u);

  WnEvidence c = normalize_lo(t("(\\x y. x) (\\z. z) ((\\x. x x) (\\x. x x))"), 10);
  ASSERT_TRUE(c.normalised);
  EXPECT_TRUE(alpha_eq(*c.normal_form, t("\\z. z")));
  EXPECT_EQ(c.trace.length(), 2u);
}

TEST(Reduce, CheckSn) {
  SnEvidence id = check_sn(t("\\x. x"));
  EXPECT_EQ(id.verdict, SnVerdict::SN);
  EXPECT_EQ(id.max_len, 0u);

  SnEvidence om = check_sn(t(kOmega));
  ASSERT_EQ(om.verdict, SnVerdict::NonSN);
  ASSERT_TRUE(om.loop_witness.has_value());
  EXPECT_TRUE(replays(*om.loop_witness));
  EXPECT_TRUE(alpha_eq(om.loop_witness->end(), om.loop_witness->start));

  const Term m = t("(\\x. x x) (\\y. y)");
  SnEvidence s = check_sn(m);
  ASSERT_EQ(s.verdict, SnVerdict::SN);
  EXPECT_EQ(s.max_len, longest(m));
}

TEST(Reduce, MaxLengthMatchesBruteForceOnCorpus) {
  CorpusSpec spec;
  spec.max_size = 7;
  for (const Term& m : enumerate_terms(spec)) {
    SnEvidence ev = check_sn(m);
    if (ev.verdict != SnVerdict::SN) continue;
    EXPECT_EQ(ev.max_len, longest(m)) << to_string(m);
    WnEvidence wn = normalize_lo(m, ev.max_len + 1);
    EXPECT_TRUE(wn.normalised) << to_string(m);
    EXPECT_LE(wn.trace.length(), ev.max_len);
  }
}

TEST(Reduce, ExplosiveTermsEndUnknown) {
  SnEvidence ev = check_sn(t("(\\x. x x x) (\\x. x x x)"), 200);
  EXPECT_NE(ev.verdict, SnVerdict::SN);
}

TEST(Reduce, CommonReductDiamond) {
  const Term m = t("(\\x. x) ((\\y. y) z)");
  ReductionTrace outer{m, {ReductionStep{Position{}, step(m, Position{})}}};
  const Position inner_pos = parse_position("arg");
  ReductionTrace inner{m, {ReductionStep{inner_pos, step(m, inner_pos)}}};
  auto cr = common_reduct(m, outer, inner);
  ASSERT_TRUE(cr.has_value());
  // Both one-step reducts are already alpha-equal.
  EXPECT_TRUE(alpha_eq(cr->meet, t("(\\y. y) z"))) << to_string(cr->meet);
  EXPECT_EQ(cr->from_first.length() + cr->from_second.length(), 0u);
  EXPECT_TRUE(alpha_eq(cr->from_first.start, outer.end()));
  EXPECT_TRUE(alpha_eq(cr->from_second.start, inner.end()));
  EXPECT_TRUE(alpha_eq(cr->from_first.end(), cr->from_second.end()));
  EXPECT_TRUE(replays(cr->from_first));
  EXPECT_TRUE(replays(cr->from_second));

  auto same = common_reduct(m, outer, outer);
  ASSERT_TRUE(same.has_value());
  EXPECT_EQ(same->from_first.length(), 0u);
  EXPECT_EQ(same->from_second.length(), 0u);
}

TEST(Reduce, TraceTextRoundTrip) {
  WnEvidence ev = normalize_lo(t("(\\x y. x) (\\z. z) ((\\x. x x) (\\x. x x))"));
  const std::string text = to_string(ev.trace);
  EXPECT_EQ(text.rfind("start ", 0), 0u);
  ReductionTrace back = parse_trace(text);
  EXPECT_TRUE(replays(back));
  EXPECT_EQ(to_string(back), text);
}

TEST(Reduce, ConcatAndEmbed) {
  const Term m = t("(\\x. x) ((\\y. y) z)");
  const Position arg = parse_position("arg");
  ReductionTrace a{m, {ReductionStep{arg, step(m, arg)}}};
  ReductionTrace b{a.end(), {ReductionStep{Position{}, step(a.end(), Position{})}}};
  ReductionTrace ab = concat(a, b);
  EXPECT_EQ(ab.length(), 2u);
  EXPECT_TRUE(replays(ab));
  EXPECT_THROW(concat(b, a), Error);

  ReductionTrace sub{t("(\\y. y) z"), {ReductionStep{Position{}, t("z")}}};
  ReductionTrace lifted = embed(sub, t("f ((\\y. y) z)"), arg);
  EXPECT_TRUE(replays(lifted));
  EXPECT_TRUE(alpha_eq(lifted.end(), t("f z")));
}

}  // namespace
