#include "itlab/approx.hpp"

#include "itlab/errors.hpp"
#include "itlab/transform.hpp"

namespace itlab {

Term alpha_map(const Term& m) {
  if (m.contains_bottom()) fail(ErrorCode::PreconditionViolation, "alpha_map takes plain lambda terms");
  const Abstractions ab = strip_lambdas(m);
  const Spine sp = spine_of(ab.body);
  if (!sp.head.is_var()) return wrap_lambdas(ab.binders, Term::bottom());
  std::vector<Term> args;
  for (const Term& a : sp.args) args.push_back(alpha_map(a));
  return wrap_lambdas(ab.binders, itlab::apply(sp.head, args));
}

namespace {

bool order_rec(const Term& p, const Term& q, const Position& at, std::vector<Position>& out) {
  if (p.is_bottom()) {
    if (!q.is_bottom()) out.push_back(at);
    return true;
  }
  if (p.kind() != q.kind()) return false;
  switch (p.kind()) {
    case TermKind::Var: return p.name() == q.name();
    case TermKind::App:
      return order_rec(p.fun(), q.fun(), at.then(Dir::Fun), out) &&
             order_rec(p.arg(), q.arg(), at.then(Dir::Arg), out);
    case TermKind::Lam: {
      if (p.name() == q.name()) return order_rec(p.body(), q.body(), at.then(Dir::Body), out);
      const Term z = Term::var(fresh_name());
      return order_rec(substitute(p.body(), p.name(), z), substitute(q.body(), q.name(), z),
                       at.then(Dir::Body), out);
    }
    case TermKind::Bottom: return true;
  }
  return false;
}

// Bottom is typed only by omega and meets of it, so its type is omega-dominated.
Derivation omega_tree(SystemId s, const Context& ctx, const Term& q, const Type& t) {
  if (t.is_omega()) return rules::omega(s, ctx, q);
  if (t.is_inter()) return rules::meet(s, omega_tree(s, ctx, q, t.left()), omega_tree(s, ctx, q, t.right()));
  fail(ErrorCode::WitnessMismatch, "Bottom carries type " + t.text());
}

// d types P, P is below q; the result types q with the same context and type.
Derivation lift(const Derivation& d, const Term& q) {
  const SystemId s = d.system();
  const Term& p = d.subject();
  if (p.is_bottom()) return omega_tree(s, d.context(), q, d.type());
  const RuleDetail& det = d.detail();
  switch (d.rule()) {
    case RuleId::Ax: return d;
    case RuleId::Omega: return rules::omega(s, d.context(), q);
    case RuleId::ArrI:
    case RuleId::RArr: {
      Derivation body = d.premiss(0);
      std::string z = det.var;
      Term qb = q.body();
      if (q.name() != z) {
        const std::string w = fresh_name();
        body = rename_var(body, z, w);
        qb = substitute(qb, q.name(), Term::var(w));
        z = w;
      }
      return rules::abs_as(s, q, z, lift(body, qb));
    }
    case RuleId::ArrE: return rules::arr_e(s, lift(d.premiss(0), q.fun()), lift(d.premiss(1), q.arg()));
    case RuleId::CapI:
    case RuleId::RCap: return rules::meet(s, lift(d.premiss(0), q), lift(d.premiss(1), q));
    case RuleId::CapEL: return rules::cap_e_left(s, lift(d.premiss(0), q));
    case RuleId::CapER: return rules::cap_e_right(s, lift(d.premiss(0), q));
    case RuleId::LCap: return rules::l_cap(s, d.context(), det.var, *det.a1, *det.a2, lift(d.premiss(0), q));
    case RuleId::LArr: {
      const Spine sp = spine_of(q);
      const std::vector<Term> rest_args(sp.args.begin() + 1, sp.args.end());
      Derivation rest = d.premiss(1);
      std::string y = det.fresh;
      for (const Term& a : rest_args) {
        if (is_free_in(y, a)) {
          const std::string y2 = fresh_name();
          rest = rename_var(rest, y, y2);
          y = y2;
          break;
        }
      }
      Derivation first = lift(d.premiss(0), sp.args.front());
      return rules::l_arr(s, det.var, std::move(first), y, lift(rest, itlab::apply(Term::var(y), rest_args)),
                          d.context());
    }
    case RuleId::BetaS:
    case RuleId::BetaL: {
      const Spine sp = spine_of(q);
      const Term head = substitute(sp.head.body(), sp.head.name(), sp.args.front());
      const Term contractum = itlab::apply(head, std::span<const Term>(sp.args).subspan(1));
      std::optional<Derivation> arg;
      if (d.rule() == RuleId::BetaS) arg = lift(d.premiss(1), sp.args.front());
      return rules::beta(s, q, lift(d.premiss(0), contractum), std::move(arg));
    }
  }
  fail(ErrorCode::Internal, "unknown rule");
}

Derivation lift_checked(const Derivation& d, const Term& q) {
  if (!approx_order(d.subject(), q)) {
    fail(ErrorCode::WitnessMismatch, to_string(d.subject()) + " is not below " + to_string(q));
  }
  return lift(d, q);
}

}  // namespace

std::optional<ApproxOrder> approx_order(const Term& p, const Term& q) {
  ApproxOrder w;
  if (!order_rec(p, q, Position{}, w.bottoms)) return std::nullopt;
  return w;
}

Term approx_lower(const Term& q, const ApproxOrder& w) {
  Term out = q;
  for (const Position& p : w.bottoms) {
    if (!subterm_at(out, p)) fail(ErrorCode::WitnessMismatch, "no subterm at " + to_string(p));
    out = replace_at(out, p, Term::bottom());
  }
  return out;
}

Derivation approx_typing_step(const Derivation& d, const ReductionTrace& trace) {
  if (!alpha_eq(d.subject(), alpha_map(trace.start))) {
    fail(ErrorCode::SubjectMismatch, to_string(d.subject()) + " is not the approximant of " +
                                         to_string(trace.start));
  }
  if (trace.steps.empty()) return d;
  return lift_checked(d, alpha_map(trace.end()));
}

Combined approx_combine(const Term& m, const ReductionTrace& t1, const Derivation& da,
                        const ReductionTrace& t2, const Derivation& db, std::size_t fuel) {
  std::optional<CommonReduct> cr = common_reduct(m, t1, t2, fuel);
  if (!cr) fail(ErrorCode::FuelExhausted, "no common reduct within fuel");
  Derivation left = approx_typing_step(da, cr->from_first);
  Derivation right = approx_typing_step(db, cr->from_second);
  // Both sides must carry the very same subject for (R&).
  const Term target = left.subject();
  if (!right.subject().same_as(target)) right = lift(right, target);
  return Combined{cr->meet, rules::meet(da.system(), std::move(left), std::move(right)),
                  concat(t1, cr->from_first)};
}

namespace {

ReductionTrace empty_trace(const Term& t) { return ReductionTrace{t, {}}; }

Approximation approx_rec(const Derivation& d) {
  const SystemId s = d.system();
  const Term& m = d.subject();
  const RuleDetail& det = d.detail();
  switch (d.rule()) {
    case RuleId::Ax: return Approximation{m, d, empty_trace(m)};
    case RuleId::Omega: return Approximation{m, rules::omega(s, d.context(), alpha_map(m)), empty_trace(m)};
    case RuleId::BetaL:
    case RuleId::BetaS: {
      Approximation inner = approx_rec(d.premiss(0));
      const Position at{std::vector<Dir>(det.spine.size(), Dir::Fun)};
      ReductionTrace head{m, {ReductionStep{at, d.premiss(0).subject()}}};
      return Approximation{inner.m_prime, inner.derivation, concat(head, inner.trace)};
    }
    case RuleId::RArr: {
      Approximation inner = approx_rec(d.premiss(0));
      const Term m_prime = Term::lam(det.var, inner.m_prime);
      Derivation out = rules::abs_as(s, alpha_map(m_prime), det.var, inner.derivation);
      // The premiss may use a renamed binder; embed into its own shape.
      const Term shell = Term::lam(det.var, d.premiss(0).subject());
      return Approximation{m_prime, std::move(out), embed(inner.trace, shell, Position{{Dir::Body}})};
    }
    case RuleId::LCap: {
      Approximation inner = approx_rec(d.premiss(0));
      Derivation out = rules::l_cap(s, d.context(), det.var, *det.a1, *det.a2, inner.derivation);
      return Approximation{inner.m_prime, std::move(out), inner.trace};
    }
    case RuleId::LArr: {
      // The right premiss is headed by the fresh variable, which never reduces,
      // so its positions carry over to m unchanged.
      Approximation first = approx_rec(d.premiss(0));
      Approximation rest = approx_rec(d.premiss(1));
      const std::size_t n = det.spine.size() + 1;
      ReductionTrace tr = embed(first.trace, m, spine_arg_position(0, n));
      const Term head = Term::app(Term::var(det.var), first.m_prime);
      for (const ReductionStep& st : rest.trace.steps) {
        tr.steps.push_back(ReductionStep{st.position, substitute(st.result, det.fresh, head)});
      }
      const Term m_prime = substitute(rest.m_prime, det.fresh, head);
      Derivation out = rules::l_arr(s, det.var, first.derivation, det.fresh, rest.derivation, d.context());
      return Approximation{m_prime, std::move(out), std::move(tr)};
    }
    case RuleId::RCap: {
      Approximation l = approx_rec(d.premiss(0));
      Approximation r = approx_rec(d.premiss(1));
      Combined c = approx_combine(m, l.trace, l.derivation, r.trace, r.derivation);
      return Approximation{c.meet, c.derivation, c.trace};
    }
    default: break;
  }
  fail(ErrorCode::WrongSystem, "approximate on rule " + std::string(rule_name(d.rule())));
}

}  // namespace

Approximation approximate(const Derivation& d) {
  if (d.system() != SystemId::LLW && d.system() != SystemId::LL) {
    fail(ErrorCode::WrongSystem, "approximate needs an llw or ll derivation");
  }
  if (d.subject().contains_bottom()) fail(ErrorCode::PreconditionViolation, "subject contains Bottom");
  Approximation out = approx_rec(d);
  if (!alpha_eq(out.derivation.subject(), alpha_map(out.m_prime)) || !alpha_eq(out.trace.end(), out.m_prime)) {
    fail(ErrorCode::Internal, "approximation lost track of its subject");
  }
  return out;
}

Derivation unapproximate(const Derivation& d, const Term& q, const ApproxOrder& w) {
  if (d.system() != SystemId::NDW) fail(ErrorCode::WrongSystem, "unapproximate needs an ndw derivation");
  if (!alpha_eq(approx_lower(q, w), d.subject())) {
    fail(ErrorCode::WitnessMismatch, "witness does not relate " + to_string(d.subject()) + " and " + to_string(q));
  }
  return lift(d, q);
}

}  // namespace itlab
