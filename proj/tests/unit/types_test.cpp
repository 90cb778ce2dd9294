#include <gtest/gtest.h>

#include "itlab/errors.hpp"
#include "itlab/types.hpp"
#include "leq_oracle.hpp"

using namespace itlab;

namespace {

Type ty(const char* s) { return parse_type(s); }

TEST(Types, ParseAndPrint) {
  EXPECT_EQ(ty("a -> b -> c").text(), "a -> b -> c");
  EXPECT_EQ(ty("(a -> b) -> c").text(), "(a -> b) -> c");
  EXPECT_EQ(ty("a & b -> c").text(), "a & b -> c");
  EXPECT_TRUE(ty("a & b -> c").is_arrow());
  EXPECT_EQ(ty("a & b & c").left().text(), "a & b");
  EXPECT_TRUE(ty("w").is_omega());
  EXPECT_EQ(ty("(a & (a -> b)) -> b").text(), "a & (a -> b) -> b");
  EXPECT_THROW(ty("a ->"), SyntaxError);
  EXPECT_THROW(ty("(a"), SyntaxError);
}

TEST(Types, LeqExamples) {
  EXPECT_TRUE(leq(ty("a & b"), ty("a")));
  EXPECT_TRUE(leq(ty("a"), ty("a & a")));
  EXPECT_FALSE(leq(ty("(a & b) -> c"), ty("(b & a) -> c")));
  EXPECT_TRUE(leq(ty("a & b & c"), ty("c & a")));
  EXPECT_FALSE(leq(ty("a"), ty("a & b")));
  try {
    leq(ty("w"), ty("a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OmegaNotAllowed);
  }
}

TEST(Types, LeqOmegaExamples) {
  EXPECT_TRUE(leq_omega(ty("a"), ty("w")));
  EXPECT_TRUE(leq_omega(ty("w"), ty("w & w")));
  EXPECT_FALSE(leq_omega(ty("w"), ty("a & w")));
  EXPECT_TRUE(omega_dominated(ty("w & w")));
  EXPECT_FALSE(omega_dominated(ty("w -> w")));
}

TEST(Types, OmegaFreedom) {
  EXPECT_FALSE(is_omega_free(ty("w")));
  EXPECT_TRUE(is_omega_free(ty("(a -> b) & c")));
  EXPECT_FALSE(is_omega_free(ty("a -> w")));
  EXPECT_FALSE(is_omega_free(parse_context("x:a, y:b & w")));
}

TEST(Types, IntersectAllIsCanonical) {
  EXPECT_EQ(intersect_all({ty("b"), ty("a -> b"), ty("a")}).text(), "a & (a -> b) & b");
  EXPECT_EQ(intersect_all({ty("a"), ty("a")}, true).text(), "a");
  EXPECT_EQ(intersect_all({ty("c")}).text(), "c");
}

TEST(Types, Collapse) {
  EXPECT_EQ(collapse(parse_context("x:a")), parse_context("x:a"));
  EXPECT_EQ(collapse(parse_context("x:a, x:a -> b")), parse_context("x:a & (a -> b)"));
  EXPECT_EQ(collapse(parse_context("x:a, y:b")), parse_context("x:a, y:b"));
  const Context nd = parse_context("x:a & b, y:c");
  EXPECT_EQ(collapse(nd), nd);
}

TEST(Types, Contexts) {
  const Context c = parse_context("x:a, x:b, y:c");
  EXPECT_EQ(c.size(), 3u);
  EXPECT_FALSE(c.is_functional());
  EXPECT_FALSE(c.lookup("x").has_value());
  EXPECT_EQ(c.lookup("y")->text(), "c");
  EXPECT_EQ(c.types_of("x").size(), 2u);
  EXPECT_EQ(c.without_var("x"), parse_context("y:c"));
  EXPECT_TRUE(c.includes(parse_context("x:b")));
  EXPECT_EQ(parse_context("x:a").unite(parse_context("x:a, y:b")), parse_context("x:a, y:b"));
  EXPECT_EQ(to_string(parse_context("y:b, x:a")), "x:a, y:b");
}

class LeqAgainstClosure : public ::testing::TestWithParam<bool> {};

TEST_P(LeqAgainstClosure, AgreesOnAllSmallPairs) {
  const bool omega = GetParam();
  const itlab::testing::LeqClosure oracle(itlab::testing::type_universe({"a", "b"}, 5, omega), omega);
  std::size_t pairs = 0;
  for (const Type& a : oracle.universe()) {
    for (const Type& b : oracle.universe()) {
      const bool fast = omega ? leq_omega(a, b) : leq(a, b);
      ASSERT_EQ(fast, oracle.holds(a, b)) << a.text() << " <= " << b.text();
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 1000u);
}

TEST_P(LeqAgainstClosure, PreorderLaws) {
  const bool omega = GetParam();
  const auto u = itlab::testing::type_universe({"a", "b"}, 3, omega);
  auto le = [&](const Type& x, const Type& y) { return omega ? leq_omega(x, y) : leq(x, y); };
  for (const Type& a : u) {
    EXPECT_TRUE(le(a, a));
    for (const Type& b : u) {
      for (const Type& c : u) {
        if (le(a, b) && le(b, c)) EXPECT_TRUE(le(a, c)) << a.text() << " " << b.text() << " " << c.text();
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Preorders, LeqAgainstClosure, ::testing::Values(false, true),
                         [](const auto& info) { return info.param ? "omega" : "plain"; });

}  // namespace
