#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "itlab/corpus.hpp"
#include "itlab/derivation.hpp"
#include "itlab/errors.hpp"
#include "itlab/typability.hpp"

using namespace itlab;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Derivation example() { return parse_derivation(slurp(ITLAB_TEST_DATA "/self_application.drv"), SystemId::LS); }

bool valid(const std::string& text, SystemId s) { return check_derivation(parse_derivation(text, s)).ok(); }

bool has_kind(const std::string& text, SystemId s, DiagnosticKind k) {
  for (const Diagnostic& d : check_derivation(parse_derivation(text, s)).diagnostics) {
    if (d.kind == k) return true;
  }
  return false;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  return at == std::string::npos ? s : s.replace(at, from.size(), to);
}

TEST(Derivation, SelfApplicationExampleIsValid) {
  const Derivation d = example();
  EXPECT_TRUE(check_derivation(d).ok()) << check_derivation(d).to_string();
  EXPECT_EQ(to_string(conclusion_of(d).context), "");
  EXPECT_EQ(d.type().text(), "a & (a -> b) -> b");
  const auto census = rule_census(d);
  EXPECT_EQ(census, (std::map<RuleId, std::size_t>{
                        {RuleId::RArr, 1}, {RuleId::LCap, 1}, {RuleId::LArr, 1}, {RuleId::Ax, 2}}));
  EXPECT_EQ(d.height(), 3u);
  EXPECT_EQ(d.node_count(), 5u);
}

TEST(Derivation, SingleAxiom) {
  const std::string ax = R"((Ax (ctx "x:a") (term "x") (type "a") (var "x")))";
  EXPECT_TRUE(valid(ax, SystemId::LS));
  EXPECT_EQ(rule_census(parse_derivation(ax, SystemId::LS)), (std::map<RuleId, std::size_t>{{RuleId::Ax, 1}}));
  EXPECT_FALSE(valid(replace(ax, "(type \"a\")", "(type \"b\")"), SystemId::LS));
  EXPECT_FALSE(valid(replace(ax, "(ctx \"x:a\")", "(ctx \"y:a\")"), SystemId::LS));
  // Extra bindings are fine: the rule is Gamma, x:A |- x : A.
  EXPECT_TRUE(valid(replace(ax, "(ctx \"x:a\")", "(ctx \"x:a\" \"x:b\" \"y:c\")"), SystemId::LS));
  EXPECT_FALSE(valid(replace(ax, "(ctx \"x:a\")", "(ctx \"x:a\" \"x:b\")"), SystemId::ND));
}

TEST(Derivation, RightArrowBinderMustBeFresh) {
  const std::string ok =
      R"((RArr (ctx) (term "\x. x") (type "a -> a") (var "x") (Ax (ctx "x:a") (term "x") (type "a") (var "x"))))";
  EXPECT_TRUE(valid(ok, SystemId::LS));
  const std::string bad =
      R"((RArr (ctx "x:b") (term "\x. x") (type "a -> a") (var "x")
           (Ax (ctx "x:a" "x:b") (term "x") (type "a") (var "x"))))";
  EXPECT_FALSE(valid(bad, SystemId::LS));
  EXPECT_TRUE(has_kind(bad, SystemId::LS, DiagnosticKind::SideCondition));
  EXPECT_FALSE(valid(replace(ok, "a -> a", "a -> b"), SystemId::LS));
}

TEST(Derivation, NaturalDeductionRules) {
  const std::string arr_i =
      R"((ArrI (ctx) (term "\x. x") (type "a -> a") (var "x") (Ax (ctx "x:a") (term "x") (type "a") (var "x"))))";
  EXPECT_TRUE(valid(arr_i, SystemId::ND));
  EXPECT_FALSE(valid(arr_i, SystemId::LS));
  EXPECT_TRUE(has_kind(arr_i, SystemId::LS, DiagnosticKind::SystemViolation));

  const std::string arr_e = R"((ArrE (ctx "f:a -> b" "y:a") (term "f y") (type "b")
      (Ax (ctx "f:a -> b" "y:a") (term "f") (type "a -> b") (var "f"))
      (Ax (ctx "f:a -> b" "y:a") (term "y") (type "a") (var "y"))))";
  EXPECT_TRUE(valid(arr_e, SystemId::ND));
  EXPECT_FALSE(valid(replace(arr_e, "(term \"f y\") (type \"b\")", "(term \"f y\") (type \"a\")"), SystemId::ND));
  EXPECT_FALSE(valid(replace(arr_e, "(term \"f y\")", "(term \"y f\")"), SystemId::ND));

  const std::string cap_i = R"((CapI (ctx "x:a") (term "x") (type "a & a")
      (Ax (ctx "x:a") (term "x") (type "a") (var "x"))
      (Ax (ctx "x:a") (term "x") (type "a") (var "x"))))";
  EXPECT_TRUE(valid(cap_i, SystemId::ND));
  EXPECT_FALSE(valid(replace(cap_i, "a & a", "a & b"), SystemId::ND));

  const std::string cap_e = R"((CapEL (ctx "x:a & b") (term "x") (type "a")
      (Ax (ctx "x:a & b") (term "x") (type "a & b") (var "x"))))";
  EXPECT_TRUE(valid(cap_e, SystemId::ND));
  EXPECT_FALSE(valid(replace(cap_e, "CapEL", "CapER"), SystemId::ND));
  EXPECT_TRUE(valid(replace(replace(cap_e, "CapEL", "CapER"), "(type \"a\")", "(type \"b\")"), SystemId::ND));
}

TEST(Derivation, BetaRules) {
  const std::string beta_s = R"((BetaS (ctx "y:a") (term "(\x. x) y") (type "a") (var "x") (body "x") (arg "y") (spine)
      (Ax (ctx "y:a") (term "y") (type "a") (var "y"))
      (Ax (ctx "y:a") (term "y") (type "a") (var "y"))))";
  EXPECT_TRUE(valid(beta_s, SystemId::LS));
  EXPECT_TRUE(valid(beta_s, SystemId::LSW));
  EXPECT_TRUE(has_kind(beta_s, SystemId::LL, DiagnosticKind::SystemViolation));
  EXPECT_FALSE(valid(replace(beta_s, "(arg \"y\")", "(arg \"z\")"), SystemId::LS));

  const std::string beta_l = R"((BetaL (ctx) (term "(\x. \y. y) z") (type "a -> a") (var "x") (body "\y. y") (arg "z") (spine)
      (RArr (ctx) (term "\y. y") (type "a -> a") (var "y") (Ax (ctx "y:a") (term "y") (type "a") (var "y")))))";
  EXPECT_TRUE(valid(beta_l, SystemId::LL));
  EXPECT_FALSE(valid(beta_l, SystemId::LS));
  // The contractum must be the one of the redex.
  EXPECT_FALSE(valid(replace(beta_l, "(body \"\\y. y\")", "(body \"\\y. x\")"), SystemId::LL));
}

TEST(Derivation, LeftArrowFreshVariable) {
  const std::string ok = slurp(ITLAB_TEST_DATA "/self_application.drv");
  // y already bound in the conclusion context.
  std::string bad = replace(ok, R"((LArr (ctx "x:a" "x:a -> b"))", R"((LArr (ctx "x:a" "x:a -> b" "y:b"))");
  bad = replace(bad, R"~((LCap (ctx "x:a & (a -> b)")~", R"~((LCap (ctx "x:a & (a -> b)" "y:b")~");
  bad = replace(bad, R"((RArr (ctx))", R"((RArr (ctx "y:b"))");
  EXPECT_FALSE(valid(bad, SystemId::LS));
  EXPECT_TRUE(has_kind(bad, SystemId::LS, DiagnosticKind::SideCondition));
  // Wrong result type on the right premiss.
  EXPECT_FALSE(valid(replace(ok, R"((a2 "b"))", R"((a2 "a"))"), SystemId::LS));
}

TEST(Derivation, LeftIntersection) {
  const std::string ok = slurp(ITLAB_TEST_DATA "/self_application.drv");
  EXPECT_FALSE(valid(replace(ok, R"((a1 "a") (a2 "a -> b"))", R"((a1 "a -> b") (a2 "b"))"), SystemId::LS));
}

TEST(Derivation, OmegaAndBottom) {
  const std::string om = R"((Omega (ctx) (term "x y") (type "w")))";
  EXPECT_TRUE(valid(om, SystemId::NDW));
  EXPECT_TRUE(valid(om, SystemId::LLW));
  EXPECT_FALSE(valid(om, SystemId::ND));
  EXPECT_THROW(parse_derivation(R"((Omega (ctx) (term "_|_") (type "w")))", SystemId::LS), SyntaxError);
  EXPECT_TRUE(valid(R"((Omega (ctx) (term "\x. _|_") (type "w")))", SystemId::LLW));
  const std::string r_cap = R"((RCap (ctx) (term "_|_") (type "w & w")
      (Omega (ctx) (term "_|_") (type "w")) (Omega (ctx) (term "_|_") (type "w"))))";
  EXPECT_TRUE(valid(r_cap, SystemId::LLW));
  EXPECT_FALSE(valid(replace(r_cap, "(type \"w & w\")", "(type \"w\")"), SystemId::LLW));
}

TEST(Derivation, DiagnosticsNameTheNode) {
  const std::string text = slurp(ITLAB_TEST_DATA "/self_application.drv");
  const Derivation bad = parse_derivation(replace(text, R"((ctx "x:a" "y:b") (term "y") (type "b"))",
                                                  R"((ctx "x:a" "y:b") (term "y") (type "a"))"),
                                          SystemId::LS);
  const CheckReport r = check_derivation(bad);
  ASSERT_FALSE(r.ok());
  bool deep = false;
  for (const Diagnostic& d : r.diagnostics) deep |= d.path == "0.0.1";
  EXPECT_TRUE(deep) << r.to_string();
  EXPECT_THROW(require_valid(bad, "mutated"), Error);
}

TEST(Derivation, SexprRoundTrip) {
  const Derivation d = example();
  const Derivation back = parse_derivation(to_sexpr(d), SystemId::LS);
  EXPECT_TRUE(structurally_equal(d, back));
  CorpusSpec spec;
  spec.max_size = 6;
  for (const Term& m : enumerate_terms(spec)) {
    const SnTyping ty = type_sn(m);
    EXPECT_TRUE(structurally_equal(ty.derivation, parse_derivation(to_sexpr(ty.derivation), SystemId::LS)))
        << to_string(m);
  }
}

TEST(Derivation, ParseErrors) {
  EXPECT_THROW(parse_derivation("(Ax (ctx \"x:a\") (term \"x\")", SystemId::LS), SyntaxError);
  EXPECT_THROW(parse_derivation("(Nope (ctx) (term \"x\") (type \"a\"))", SystemId::LS), SyntaxError);
  EXPECT_THROW(parse_derivation("(Ax (ctx \"x:\") (term \"x\") (type \"a\") (var \"x\"))", SystemId::LS), SyntaxError);
}

TEST(Derivation, SystemNames) {
  for (SystemId s : {SystemId::ND, SystemId::NDW, SystemId::LS, SystemId::LSW, SystemId::LL, SystemId::LLW}) {
    EXPECT_EQ(parse_system(system_name(s)), s);
  }
  EXPECT_FALSE(parse_system("seq").has_value());
  EXPECT_TRUE(rule_admissible(RuleId::Omega, SystemId::LLW));
  EXPECT_FALSE(rule_admissible(RuleId::BetaL, SystemId::LS));
  EXPECT_FALSE(rule_admissible(RuleId::LArr, SystemId::ND));
}

}  // namespace
