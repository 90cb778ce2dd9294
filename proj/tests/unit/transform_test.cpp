#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <sstream>

#include "itlab/corpus.hpp"
#include "itlab/errors.hpp"
#include "itlab/transform.hpp"
#include "itlab/typability.hpp"

using namespace itlab;

namespace {

Derivation example() {
  std::ifstream in(ITLAB_TEST_DATA "/self_application.drv");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_derivation(ss.str(), SystemId::LS);
}

Type ty(std::string_view s) { return parse_type(s); }
Context ctx(std::string_view s) { return parse_context(s); }

void expect_valid(const Derivation& d) { EXPECT_TRUE(check_derivation(d).ok()) << check_derivation(d).to_string(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

TEST(Transform, WeakenSequent) {
  const Derivation w = weaken_seq(example(), "y", ty("c"));
  expect_valid(w);
  EXPECT_TRUE(w.context().contains(Binding{"y", ty("c")}));
  EXPECT_TRUE(alpha_eq(w.subject(), example().subject()));
  EXPECT_EQ(w.type(), example().type());
}

TEST(Transform, WeakenNaturalDeductionNeedsFreshVariable) {
  const Derivation ax = rules::ax(SystemId::ND, ctx("x:a"), "x", ty("a"));
  expect_valid(weaken_nd(ax, "y", ty("b")));
  EXPECT_EQ(code_of([&] { weaken_nd(ax, "x", ty("b")); }), ErrorCode::VariableNotFresh);
}

TEST(Transform, AppVar) {
  const Derivation d = app_var(example(), "z");
  expect_valid(d);
  EXPECT_EQ(to_string(d.subject()), "(\\x. x x) z");
  EXPECT_EQ(d.type(), ty("b"));
  EXPECT_TRUE(d.context().contains(Binding{"z", ty("a & (a -> b)")}));
  EXPECT_EQ(code_of([&] { app_var(rules::ax(SystemId::LS, ctx("x:a"), "x", ty("a")), "z"); }),
            ErrorCode::NotArrowType);
}

TEST(Transform, IntersectionInversion) {
  const Derivation a = rules::ax(SystemId::LS, ctx("x:a & b"), "x", ty("a & b"));
  expect_valid(a);
  const auto [l, r] = inters_inv(a);
  expect_valid(l);
  expect_valid(r);
  EXPECT_EQ(l.type(), ty("a"));
  EXPECT_EQ(r.type(), ty("b"));
  EXPECT_EQ(code_of([&] { inters_inv(example()); }), ErrorCode::NotIntersectionType);
}

TEST(Transform, SubstitutionAndApplicationClosure) {
  const Derivation d = rules::ax(SystemId::LS, ctx("x:a, y:a"), "x", ty("a"));
  const Derivation dn = rules::ax(SystemId::LS, ctx("y:a"), "y", ty("a"));
  const Derivation s = subst_closure(d, "x", {dn});
  expect_valid(s);
  EXPECT_EQ(to_string(s.subject()), "y");
  EXPECT_EQ(s.context(), ctx("y:a"));

  const Context g = ctx("f:a -> b, y:a");
  const Derivation app = app_closure(rules::ax(SystemId::LS, g, "f", ty("a -> b")),
                                     rules::ax(SystemId::LS, g, "y", ty("a")));
  expect_valid(app);
  EXPECT_EQ(to_string(app.subject()), "f y");
  EXPECT_EQ(app.type(), ty("b"));
  EXPECT_EQ(app.context(), g);
}

TEST(Transform, SplitAndMergeBindings) {
  const Derivation d = example().premiss(0);
  const Derivation merged = merge_binding(d.premiss(0), "x", ty("a"), ty("a -> b"));
  expect_valid(merged);
  EXPECT_EQ(merged.context(), ctx("x:a & (a -> b)"));
  const Derivation split = split_binding(merged, "x", ty("a"), ty("a -> b"));
  expect_valid(split);
  EXPECT_EQ(split.context(), ctx("x:a, x:a -> b"));
  const Derivation all = merge_all(d.premiss(0), "x");
  expect_valid(all);
  EXPECT_EQ(all.context().types_of("x").size(), 1u);
}

TEST(Transform, BetaStyles) {
  const Term m = parse_term("(\\x. \\y. y) (\\z. z)");
  const Derivation ls = type_sn(m).derivation;
  const Derivation ll = betas_to_betal(ls);
  EXPECT_EQ(ll.system(), SystemId::LL);
  expect_valid(ll);
  const Derivation lsw = betal_to_betas(ll);
  EXPECT_EQ(lsw.system(), SystemId::LSW);
  expect_valid(lsw);
  const Derivation llw = betas_to_betal(lsw);
  expect_valid(llw);
  expect_valid(omega_erase(llw));
  // Omega typings of dropped arguments vanish again under (Beta)l.
  expect_valid(omega_erase(betas_to_betal(betal_to_betas(llw))));
  const Derivation om = rules::omega(SystemId::LLW, Context{}, parse_term("\\q. q"));
  EXPECT_EQ(code_of([&] { omega_erase(om); }), ErrorCode::OmegaFound);
}

TEST(Transform, LeqClosure) {
  const Derivation ax = rules::ax(SystemId::ND, ctx("x:a & b"), "x", ty("a & b"));
  const Derivation swapped = le_closure(ax, ty("b & a"));
  expect_valid(swapped);
  EXPECT_EQ(swapped.type(), ty("b & a"));
  EXPECT_EQ(code_of([&] { le_closure(ax, ty("c")); }), ErrorCode::NotLeq);
  const Derivation axw = rules::ax(SystemId::NDW, ctx("x:a"), "x", ty("a"));
  expect_valid(le_closure(axw, ty("a & w")));
}

TEST(Transform, Generation) {
  const Context g = ctx("f:(a -> b) & (c -> d), y:a & c");
  const Derivation fun = rules::ax(SystemId::ND, g, "f", ty("(a -> b) & (c -> d)"));
  const Derivation arg = rules::ax(SystemId::ND, g, "y", ty("a & c"));
  const Derivation d = rules::cap_i(SystemId::ND, rules::arr_e(SystemId::ND, rules::cap_e_left(SystemId::ND, fun),
                                                               rules::cap_e_left(SystemId::ND, arg)),
                                    rules::arr_e(SystemId::ND, rules::cap_e_right(SystemId::ND, fun),
                                                 rules::cap_e_right(SystemId::ND, arg)));
  expect_valid(d);
  const std::vector<AppPiece> pieces = gen_app(d);
  ASSERT_EQ(pieces.size(), 2u);
  for (const AppPiece& p : pieces) {
    expect_valid(p.fun);
    expect_valid(p.arg);
  }

  const Derivation i = rules::abs(SystemId::ND, "x", rules::ax(SystemId::ND, ctx("x:a"), "x", ty("a")));
  const std::vector<AbsPiece> ab = gen_abs(i);
  ASSERT_EQ(ab.size(), 1u);
  expect_valid(ab[0].body);

  const Derivation om = rules::omega(SystemId::NDW, g, parse_term("f y"));
  EXPECT_EQ(code_of([&] { gen_app(om); }), ErrorCode::OmegaDominatedType);
}

TEST(Transform, NaturalDeductionSubstitution) {
  const Context g = ctx("f:a -> b, x:a");
  const Derivation d = rules::arr_e(SystemId::ND, rules::ax(SystemId::ND, g, "f", ty("a -> b")),
                                    rules::ax(SystemId::ND, g, "x", ty("a")));
  const Derivation dn = rules::ax(SystemId::ND, ctx("f:a -> b, z:a"), "z", ty("a"));
  const Derivation s = nd_subst(weaken_nd(d, "z", ty("a")), "x", dn);
  expect_valid(s);
  EXPECT_EQ(to_string(s.subject()), "f z");

  const InvSubst inv = inv_subst(s, parse_term("f x"), "x", parse_term("z"), dn);
  expect_valid(inv.dm);
  expect_valid(inv.dn);
  EXPECT_EQ(inv.c, ty("a"));
}

TEST(Transform, SubjectExpansion) {
  const Term m = parse_term("(\\x. \\y. y) (\\z. z z) (\\z. z z)");
  const Term n = step(m, Position{{Dir::Fun}});
  const Derivation dn = type_sn(n).derivation;
  const Derivation nd = seq_to_nd(dn).rebrand(SystemId::NDW);
  const Derivation dm = subject_expand(nd, m, Position{{Dir::Fun}});
  expect_valid(dm);
  EXPECT_TRUE(alpha_eq(dm.subject(), m));
  EXPECT_EQ(dm.type(), nd.type());
  EXPECT_EQ(code_of([&] { subject_expand(nd, parse_term("\\z. z"), Position{}); }), ErrorCode::NotARedex);
}

TEST(Transform, BridgesPreserveRootSequent) {
  CorpusSpec spec;
  spec.max_size = 6;
  for (const Term& m : enumerate_terms(spec)) {
    if (check_sn(m).verdict != SnVerdict::SN) continue;
    const Derivation ls = type_sn(m).derivation;
    const Derivation nd = seq_to_nd(ls);
    ASSERT_TRUE(check_derivation(nd).ok()) << to_string(m);
    EXPECT_EQ(nd.system(), SystemId::ND);
    EXPECT_TRUE(alpha_eq(nd.subject(), m));
    EXPECT_EQ(nd.type(), ls.type());
    EXPECT_EQ(nd.context(), collapse(ls.context()));
    const Derivation back = nd_to_seq(nd);
    ASSERT_TRUE(check_derivation(back).ok()) << to_string(m);
    EXPECT_TRUE(same_sequent(back.conclusion(), nd.conclusion()));
  }
}

TEST(Transform, RepeatedRetypingStaysSmall) {
  // Dozens of (L&) nodes retype f; closures must not nest on each other.
  const Term two = parse_term("\\f. \\x. f (f x)");
  const Derivation ls = type_sn(Term::app(two, two)).derivation;
  const Derivation nd = seq_to_nd(ls);
  expect_valid(nd);
  EXPECT_GT(rule_census(ls)[RuleId::LCap], 50u);
  EXPECT_LT(nd.node_count(), 20 * ls.node_count());
}

TEST(Transform, WrongSystemsAreRejected) {
  EXPECT_EQ(code_of([&] { nd_to_seq(example()); }), ErrorCode::WrongSystem);
  EXPECT_EQ(code_of([&] { seq_to_nd(rules::ax(SystemId::ND, ctx("x:a"), "x", ty("a"))); }), ErrorCode::WrongSystem);
}

}  // namespace
