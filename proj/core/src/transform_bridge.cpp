#include "itlab/errors.hpp"
#include "itlab/transform.hpp"
#include "transform_internal.hpp"

namespace itlab {

namespace {

Derivation to_seq(const Derivation& d, SystemId t) {
  switch (d.rule()) {
    case RuleId::Ax: return rules::ax(t, d.context(), d.detail().var, d.type());
    case RuleId::Omega: return rules::omega(t, d.context(), d.subject());
    case RuleId::ArrI: return rules::abs_as(t, d.subject(), d.detail().var, to_seq(d.premiss(0), t));
    case RuleId::CapI: return rules::r_cap(t, to_seq(d.premiss(0), t), to_seq(d.premiss(1), t));
    case RuleId::CapEL: return inters_inv(to_seq(d.premiss(0), t)).first;
    case RuleId::CapER: return inters_inv(to_seq(d.premiss(0), t)).second;
    case RuleId::ArrE: return app_closure(to_seq(d.premiss(0), t), to_seq(d.premiss(1), t));
    default: break;
  }
  fail(ErrorCode::WrongSystem, "nd_to_seq on rule " + std::string(rule_name(d.rule())));
}

Position head_redex_position(std::size_t spine_len) {
  return Position{std::vector<Dir>(spine_len, Dir::Fun)};
}

Derivation to_nd(const Derivation& d, SystemId t) {
  const Context g = collapse(d.context());
  const RuleDetail& det = d.detail();
  switch (d.rule()) {
    case RuleId::Ax: {
      const Type joint = *g.lookup(det.var);
      return le_closure(rules::ax(t, g, det.var, joint), d.type());
    }
    case RuleId::Omega: return rules::omega(t, g, d.subject());
    case RuleId::RArr: return rules::abs_as(t, d.subject(), det.var, to_nd(d.premiss(0), t));
    case RuleId::RCap: return rules::cap_i(t, to_nd(d.premiss(0), t), to_nd(d.premiss(1), t));
    case RuleId::LCap: return adapt_context(to_nd(d.premiss(0), t), g);
    case RuleId::LArr: {
      Derivation first = adapt_context(to_nd(d.premiss(0), t), g);
      Derivation rest = adapt_context(to_nd(d.premiss(1), t), g.with(Binding{det.fresh, *det.a2}));
      Derivation head = le_closure(rules::ax(t, g, det.var, *g.lookup(det.var)),
                                   Type::arrow(*det.a1, *det.a2));
      return nd_subst(rest, det.fresh, rules::arr_e(t, std::move(head), std::move(first)));
    }
    case RuleId::BetaS:
    case RuleId::BetaL: {
      Derivation contractum = to_nd(d.premiss(0), t);
      std::optional<Derivation> dn;
      if (!has_omega(t)) dn = to_nd(d.premiss(1), t);
      return detail::expand_redex(contractum, d.subject(), head_redex_position(det.spine.size()), dn);
    }
    default: break;
  }
  fail(ErrorCode::WrongSystem, "seq_to_nd on rule " + std::string(rule_name(d.rule())));
}

}  // namespace

Derivation nd_to_seq(const Derivation& d) {
  if (!is_natural_deduction(d.system())) fail(ErrorCode::WrongSystem, "nd_to_seq needs nd or ndw");
  return to_seq(d, d.system() == SystemId::ND ? SystemId::LS : SystemId::LSW);
}

SystemId nd_target(SystemId s) {
  switch (s) {
    case SystemId::LS: return SystemId::ND;
    case SystemId::LSW:
    case SystemId::LL:
    case SystemId::LLW: return SystemId::NDW;
    default: fail(ErrorCode::WrongSystem, "seq_to_nd needs a sequent-style derivation");
  }
}

Derivation seq_to_nd(const Derivation& d) { return to_nd(d, nd_target(d.system())); }

}  // namespace itlab
