#include <algorithm>
#include <map>

#include "itlab/errors.hpp"
#include "itlab/transform.hpp"
#include "transform_internal.hpp"

namespace itlab {

using detail::remake;

namespace detail {

RuleDetail redex_detail(const Term& subject) {
  Spine sp = spine_of(subject);
  if (!sp.head.is_lam() || sp.args.empty()) {
    fail(ErrorCode::NotARedex, to_string(subject) + " is not a redex spine");
  }
  RuleDetail det;
  det.var = sp.head.name();
  det.body = sp.head.body();
  det.arg = sp.args.front();
  det.spine.assign(sp.args.begin() + 1, sp.args.end());
  return det;
}

Context rename_in_context(const Context& c, const std::string& y, const std::string& x) {
  std::vector<Binding> out;
  for (const Binding& b : c) out.push_back(Binding{b.var == y ? x : b.var, b.type});
  return Context(std::span<const Binding>(out));
}

}  // namespace detail

namespace {

void require_sequent(const Derivation& d, std::string_view op) {
  if (!is_sequent(d.system())) {
    fail(ErrorCode::WrongSystem, std::string(op) + " needs a sequent-style derivation, got " +
                                     std::string(system_name(d.system())));
  }
}

// ---------------------------------------------------------------- weakening

Derivation weaken_rec(const Derivation& d, const Binding& b) {
  Context ctx = d.context().with(b);
  RuleDetail det = d.detail();
  std::vector<Derivation> ps = d.premisses();
  switch (d.rule()) {
    case RuleId::ArrI:
    case RuleId::RArr:
      if (det.var == b.var) {
        const std::string z = fresh_name();
        ps[0] = rename_var(ps[0], det.var, z);
        det.var = z;
      }
      break;
    case RuleId::LArr:
      if (det.fresh == b.var) {
        const std::string w = fresh_name();
        ps[1] = rename_var(ps[1], det.fresh, w);
        det.fresh = w;
      }
      break;
    default: break;
  }
  for (Derivation& p : ps) p = weaken_rec(p, b);
  return remake(d, std::move(ctx), d.subject(), std::move(det), std::move(ps));
}

// ----------------------------------------------------------------- renaming

Derivation rename_rec(const Derivation& d, const std::string& y, const std::string& x) {
  const Term xv = Term::var(x);
  Context ctx = detail::rename_in_context(d.context(), y, x);
  Term subject = substitute(d.subject(), y, xv);
  RuleDetail det = d.detail();
  std::vector<Derivation> ps = d.premisses();
  switch (d.rule()) {
    case RuleId::Ax:
      if (det.var == y) det.var = x;
      break;
    case RuleId::ArrI:
    case RuleId::RArr:
      if (det.var == y) return d;  // y is rebound here
      if (det.var == x) {
        const std::string z = fresh_name();
        ps[0] = rename_rec(ps[0], x, z);
        det.var = z;
      }
      ps[0] = rename_rec(ps[0], y, x);
      return remake(d, std::move(ctx), std::move(subject), std::move(det), std::move(ps));
    case RuleId::LArr:
      if (det.fresh == y || det.fresh == x) {
        const std::string w = fresh_name();
        ps[1] = rename_rec(ps[1], det.fresh, w);
        det.fresh = w;
      }
      if (det.var == y) det.var = x;
      det.arg = substitute(*det.arg, y, xv);
      for (Term& n : det.spine) n = substitute(n, y, xv);
      break;
    case RuleId::LCap:
      if (det.var == y) det.var = x;
      for (Term& n : det.spine) n = substitute(n, y, xv);
      break;
    case RuleId::BetaS:
    case RuleId::BetaL: det = detail::redex_detail(subject); break;
    default: break;
  }
  for (Derivation& p : ps) p = rename_rec(p, y, x);
  return remake(d, std::move(ctx), std::move(subject), std::move(det), std::move(ps));
}

}  // namespace

Derivation weaken_seq(const Derivation& d, const std::string& x, const Type& a) {
  require_sequent(d, "weaken_seq");
  return weaken_rec(d, Binding{x, a});
}

Derivation weaken_nd(const Derivation& d, const std::string& x, const Type& a) {
  if (!is_natural_deduction(d.system())) {
    fail(ErrorCode::WrongSystem, "weaken_nd needs a natural-deduction derivation");
  }
  const Binding b{x, a};
  if (d.context().contains(b)) return d;
  if (d.context().has_var(x)) {
    fail(ErrorCode::VariableNotFresh, x + " is already bound in " + to_string(d.context()));
  }
  return weaken_rec(d, b);
}

Derivation weaken_by(const Derivation& d, const Context& extra) {
  Derivation out = d;
  for (const Binding& b : extra) {
    if (out.context().contains(b)) continue;
    out = is_natural_deduction(d.system()) ? weaken_nd(out, b.var, b.type) : weaken_rec(out, b);
  }
  return out;
}

Derivation rename_var(const Derivation& d, const std::string& y, const std::string& x) {
  if (x == y) return d;
  if (d.context().has_var(x) || is_free_in(x, d.subject())) {
    fail(ErrorCode::VariableNotFresh, x + " is not fresh for " + to_string(d.conclusion()));
  }
  return rename_rec(d, y, x);
}

// ------------------------------------------------------------------ app-var

namespace {

Derivation app_var_rec(const Derivation& d, const std::string& x) {
  const SystemId s = d.system();
  if (!d.type().is_arrow()) {
    fail(ErrorCode::NotArrowType, "app_var on type " + d.type().text());
  }
  const Type& a = d.type().dom();
  const Binding bx{x, a};
  const Term applied = Term::app(d.subject(), Term::var(x));
  switch (d.rule()) {
    case RuleId::Ax: {
      const Context ctx = d.context().with(bx);
      const std::string z = fresh_name();
      Derivation first = rules::ax(s, ctx, x, a);
      Derivation rest = rules::ax(s, ctx, z, d.type().cod());
      return rules::l_arr(s, d.subject().name(), first, z, rest, ctx);
    }
    case RuleId::BetaS:
    case RuleId::BetaL: {
      Derivation contractum = app_var_rec(d.premiss(0), x);
      std::optional<Derivation> arg;
      if (d.rule() == RuleId::BetaS) arg = weaken_rec(d.premiss(1), bx);
      return rules::beta(s, applied, std::move(contractum), std::move(arg));
    }
    case RuleId::RArr: {
      Derivation body = rename_var(d.premiss(0), d.detail().var, x);
      std::optional<Derivation> arg;
      if (s == SystemId::LS || s == SystemId::LSW) arg = rules::ax(s, d.context().with(bx), x, a);
      return rules::beta(s, applied, std::move(body), std::move(arg));
    }
    case RuleId::LArr: {
      const RuleDetail& det = d.detail();
      Derivation rest = d.premiss(1);
      std::string w = det.fresh;
      if (w == x) {
        w = fresh_name();
        rest = rename_var(rest, det.fresh, w);
      }
      rest = app_var_rec(rest, x);
      return rules::l_arr(s, det.var, weaken_rec(d.premiss(0), bx), w, std::move(rest),
                          d.context().with(bx));
    }
    case RuleId::LCap: {
      const RuleDetail& det = d.detail();
      return rules::l_cap(s, d.context().with(bx), det.var, *det.a1, *det.a2,
                          app_var_rec(d.premiss(0), x));
    }
    default: break;
  }
  fail(ErrorCode::NotArrowType,
       "app_var: rule " + std::string(rule_name(d.rule())) + " cannot conclude an arrow type");
}

}  // namespace

Derivation app_var(const Derivation& d, const std::string& x) {
  require_sequent(d, "app_var");
  if (!d.type().is_arrow()) fail(ErrorCode::NotArrowType, "app_var on type " + d.type().text());
  if (d.context().has_var(x) || is_free_in(x, d.subject())) {
    fail(ErrorCode::VariableNotFresh, x + " is not fresh for " + to_string(d.conclusion()));
  }
  return app_var_rec(d, x);
}

// ---------------------------------------------------------------- inversion

std::pair<Derivation, Derivation> inters_inv(const Derivation& d) {
  require_sequent(d, "inters_inv");
  if (!d.type().is_inter()) {
    fail(ErrorCode::NotIntersectionType, "inters_inv on type " + d.type().text());
  }
  const SystemId s = d.system();
  const Type& a = d.type().left();
  const Type& b = d.type().right();
  switch (d.rule()) {
    case RuleId::RCap: return {d.premiss(0), d.premiss(1)};
    case RuleId::Ax: {
      const std::string& x = d.subject().name();
      const Context split = d.context().with(Binding{x, a}).with(Binding{x, b});
      return {rules::l_cap(s, d.context(), x, a, b, rules::ax(s, split, x, a)),
              rules::l_cap(s, d.context(), x, a, b, rules::ax(s, split, x, b))};
    }
    case RuleId::BetaS:
    case RuleId::BetaL: {
      auto [l, r] = inters_inv(d.premiss(0));
      std::optional<Derivation> arg;
      if (d.rule() == RuleId::BetaS) arg = d.premiss(1);
      return {rules::beta(s, d.subject(), l, arg), rules::beta(s, d.subject(), r, arg)};
    }
    case RuleId::LArr: {
      const RuleDetail& det = d.detail();
      auto [l, r] = inters_inv(d.premiss(1));
      return {rules::l_arr(s, det.var, d.premiss(0), det.fresh, l, d.context()),
              rules::l_arr(s, det.var, d.premiss(0), det.fresh, r, d.context())};
    }
    case RuleId::LCap: {
      const RuleDetail& det = d.detail();
      auto [l, r] = inters_inv(d.premiss(0));
      return {rules::l_cap(s, d.context(), det.var, *det.a1, *det.a2, l),
              rules::l_cap(s, d.context(), det.var, *det.a1, *det.a2, r)};
    }
    default: break;
  }
  fail(ErrorCode::NotIntersectionType,
       "inters_inv: rule " + std::string(rule_name(d.rule())) + " cannot conclude an intersection");
}

// ------------------------------------------------------------- substitution

namespace {

struct Measure {
  std::size_t connectives;
  std::size_t height;
  friend auto operator<=>(const Measure&, const Measure&) = default;
};

Measure measure_of(const Derivation& d, const std::string& x) {
  std::size_t total = 0;
  for (const Type& t : d.context().types_of(x)) total += connective_count(t);
  return Measure{total, d.height()};
}

using NMap = std::map<Type, Derivation>;

NMap weaken_all(const NMap& nds, const Binding& b) {
  NMap out;
  for (const auto& [t, dn] : nds) out.emplace(t, weaken_rec(dn, b));
  return out;
}

Derivation subst_rec(const Derivation& d, const std::string& x, const Term& n, const NMap& nds,
                     std::optional<Measure> bound);

Derivation subst_rec(const Derivation& d, const std::string& x, const Term& n, const NMap& nds,
                     std::optional<Measure> bound) {
  const SystemId s = d.system();
  // The lexicographic measure must drop on every recursive call.
  const Measure here = measure_of(d, x);
  if (bound && !(here < *bound)) {
    fail(ErrorCode::Internal, "subst_closure measure did not decrease at " + to_string(d.conclusion()));
  }
  const std::vector<Type> xs = d.context().types_of(x);
  if (xs.empty() && !is_free_in(x, d.subject())) return d;

  const Context gamma = d.context().without_var(x);
  const Term subject = substitute(d.subject(), x, n);
  const RuleDetail& det = d.detail();

  switch (d.rule()) {
    case RuleId::Ax: {
      if (det.var != x) return rules::ax(s, gamma, det.var, d.type());
      auto it = nds.find(d.type());
      if (it == nds.end()) {
        fail(ErrorCode::PreconditionViolation, "no derivation of N : " + d.type().text());
      }
      return it->second;
    }
    case RuleId::Omega: return rules::omega(s, gamma, subject);
    case RuleId::RCap:
      return rules::r_cap(s, subst_rec(d.premiss(0), x, n, nds, here),
                          subst_rec(d.premiss(1), x, n, nds, here));
    case RuleId::RArr: {
      Derivation body = d.premiss(0);
      std::string z = det.var;
      if (z == x || is_free_in(z, n)) {
        const std::string z2 = fresh_name();
        body = rename_var(body, z, z2);
        z = z2;
      }
      const Type za = d.type().dom();
      body = subst_rec(body, x, n, weaken_all(nds, Binding{z, za}), here);
      return rules::abs_as(s, subject, z, std::move(body));
    }
    case RuleId::BetaS:
    case RuleId::BetaL: {
      Derivation contractum = subst_rec(d.premiss(0), x, n, nds, here);
      std::optional<Derivation> arg;
      if (d.rule() == RuleId::BetaS) arg = subst_rec(d.premiss(1), x, n, nds, here);
      return rules::beta(s, subject, std::move(contractum), std::move(arg));
    }
    case RuleId::LArr: {
      const Binding principal{det.var, Type::arrow(*det.a1, *det.a2)};
      Derivation first = d.premiss(0);
      Derivation rest = d.premiss(1);
      std::string w = det.fresh;
      if (w == x || is_free_in(w, n)) {
        const std::string w2 = fresh_name();
        rest = rename_var(rest, w, w2);
        w = w2;
      }
      const Binding bw{w, *det.a2};
      if (det.var != x) {
        if (first.context() != d.context()) {
          first = weaken_rec(first, principal);
          rest = weaken_rec(rest, principal);
        }
        Derivation first2 = subst_rec(first, x, n, nds, here);
        Derivation rest2 = subst_rec(rest, x, n, weaken_all(nds, bw), here);
        return rules::l_arr(s, det.var, std::move(first2), w, std::move(rest2), gamma);
      }
      // Head is x: x N1 N2..Nm becomes N N1' N2'..Nm'.
      const Derivation& dn_arrow = nds.at(principal.type);
      Derivation first2 = subst_rec(first, x, n, nds, here);
      const std::string z = fresh_name();
      Derivation nz = app_var(dn_arrow, z);
      Derivation n_first = subst_rec(nz, z, first2.subject(), NMap{{*det.a1, first2}}, here);
      Derivation rest2 = subst_rec(rest, x, n, weaken_all(nds, bw), here);
      return subst_rec(rest2, w, n_first.subject(), NMap{{*det.a2, n_first}}, here);
    }
    case RuleId::LCap: {
      const Binding principal{det.var, Type::inter(*det.a1, *det.a2)};
      const Binding b1{det.var, *det.a1};
      const Binding b2{det.var, *det.a2};
      Derivation prem = d.premiss(0);
      if (det.var != x) {
        if (!prem.context().contains(principal)) prem = weaken_rec(prem, principal);
        Derivation prem2 = subst_rec(prem, x, n, weaken_all(weaken_all(nds, b1), b2), here);
        return rules::l_cap(s, gamma, det.var, *det.a1, *det.a2, std::move(prem2));
      }
      if (prem.context().contains(principal)) prem = split_binding(prem, x, *det.a1, *det.a2);
      NMap more = nds;
      auto [l, r] = inters_inv(nds.at(principal.type));
      more.emplace(*det.a1, std::move(l));
      more.emplace(*det.a2, std::move(r));
      return subst_rec(prem, x, n, more, here);
    }
    default: break;
  }
  fail(ErrorCode::WrongSystem, "subst_closure on rule " + std::string(rule_name(d.rule())));
}

}  // namespace

Derivation subst_closure(const Derivation& d, const std::string& x,
                         const std::vector<Derivation>& n_derivs) {
  require_sequent(d, "subst_closure");
  const std::vector<Type> xs = d.context().types_of(x);
  const bool free = is_free_in(x, d.subject());
  if (n_derivs.empty()) {
    if (xs.empty() && !free) return d;
    fail(ErrorCode::PreconditionViolation, "subst_closure: no derivation of N supplied");
  }
  if (xs.empty() && free && !has_omega(d.system()) && d.system() != SystemId::LL) {
    fail(ErrorCode::PreconditionViolation,
         "subst_closure: " + x + " is free in the subject but has no binding");
  }
  const Context gamma = d.context().without_var(x);
  const Term n = n_derivs.front().subject();
  NMap nds;
  for (const Derivation& dn : n_derivs) {
    if (dn.system() != d.system()) {
      fail(ErrorCode::PreconditionViolation, "subst_closure: N derivation from another system");
    }
    if (dn.context() != gamma) {
      fail(ErrorCode::PreconditionViolation, "subst_closure: N is typed in " +
                                                 to_string(dn.context()) + ", expected " +
                                                 to_string(gamma));
    }
    if (!alpha_eq(dn.subject(), n)) {
      fail(ErrorCode::PreconditionViolation, "subst_closure: the N derivations type different terms");
    }
    nds.emplace(dn.type(), dn);
  }
  for (const Type& t : xs) {
    if (!nds.contains(t)) {
      fail(ErrorCode::PreconditionViolation, "subst_closure: no derivation of N : " + t.text());
    }
  }
  return subst_rec(d, x, n, nds, std::nullopt);
}

Derivation app_closure(const Derivation& dm, const Derivation& dn) {
  require_sequent(dm, "app_closure");
  if (!dm.type().is_arrow()) fail(ErrorCode::NotArrowType, "app_closure on " + dm.type().text());
  if (dm.type().dom() != dn.type()) {
    fail(ErrorCode::TypeMismatch, "argument has type " + dn.type().text() + ", function expects " +
                                      dm.type().dom().text());
  }
  if (dm.context() != dn.context()) {
    fail(ErrorCode::TypeMismatch, "function and argument are typed in different contexts");
  }
  const std::string x = fresh_name();
  return subst_closure(app_var(dm, x), x, {dn});
}

// ------------------------------------------------------- split and merge

namespace {

Derivation split_rec(const Derivation& d, const Binding& b, const Binding& b1, const Binding& b2) {
  if (!d.context().contains(b)) return d;
  const SystemId s = d.system();
  const Context ctx = d.context().without(b).with(b1).with(b2);
  const RuleDetail& det = d.detail();
  switch (d.rule()) {
    case RuleId::Ax:
      if (det.var == b.var && d.type() == b.type) {
        return rules::r_cap(s, rules::ax(s, ctx, b.var, b1.type), rules::ax(s, ctx, b.var, b2.type));
      }
      return rules::ax(s, ctx, det.var, d.type());
    case RuleId::LCap: {
      const Binding principal{det.var, Type::inter(*det.a1, *det.a2)};
      if (principal == b) return split_rec(d.premiss(0), b, b1, b2);
      Derivation prem = d.premiss(0);
      if (det.var == b.var && (*det.a1 == b.type || *det.a2 == b.type)) {
        prem = weaken_rec(weaken_rec(prem, b1), b2);
      } else {
        prem = split_rec(prem, b, b1, b2);
      }
      return rules::l_cap(s, ctx, det.var, *det.a1, *det.a2, std::move(prem));
    }
    default: break;
  }
  std::vector<Derivation> ps;
  for (const Derivation& p : d.premisses()) ps.push_back(split_rec(p, b, b1, b2));
  return remake(d, ctx, d.subject(), det, std::move(ps));
}

Derivation merge_rec(const Derivation& d, const Binding& b, const Binding& b1, const Binding& b2) {
  const SystemId s = d.system();
  const Context ctx = d.context().without(b1).without(b2).with(b);
  const Spine sp = spine_of(d.subject());
  if (sp.head.is_var() && sp.head.name() == b.var && d.rule() != RuleId::Omega) {
    return rules::l_cap(s, ctx, b.var, b1.type, b2.type, weaken_rec(d, b));
  }
  std::vector<Derivation> ps;
  for (const Derivation& p : d.premisses()) ps.push_back(merge_rec(p, b, b1, b2));
  return remake(d, ctx, d.subject(), d.detail(), std::move(ps));
}

}  // namespace

Derivation split_binding(const Derivation& d, const std::string& x, const Type& a1,
                         const Type& a2) {
  require_sequent(d, "split_binding");
  const Binding b{x, Type::inter(a1, a2)};
  if (!d.context().contains(b)) {
    fail(ErrorCode::BindingNotFound, x + ":" + b.type.text() + " is not in " + to_string(d.context()));
  }
  return split_rec(d, b, Binding{x, a1}, Binding{x, a2});
}

Derivation merge_binding(const Derivation& d, const std::string& x, const Type& a1,
                         const Type& a2) {
  require_sequent(d, "merge_binding");
  const Binding b1{x, a1};
  const Binding b2{x, a2};
  if (!d.context().contains(b1) || !d.context().contains(b2)) {
    fail(ErrorCode::BindingNotFound,
         x + ":" + a1.text() + " and " + x + ":" + a2.text() + " must both be in " + to_string(d.context()));
  }
  return merge_rec(d, Binding{x, Type::inter(a1, a2)}, b1, b2);
}

Derivation merge_all(const Derivation& d, const std::string& x) {
  std::vector<Type> ts = d.context().types_of(x);
  if (ts.size() < 2) return d;
  std::sort(ts.begin(), ts.end());
  Derivation out = d;
  Type acc = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) {
    out = merge_binding(out, x, acc, ts[i]);
    acc = Type::inter(acc, ts[i]);
  }
  return out;
}

// ------------------------------------------------------- beta variants

namespace {

Derivation to_betal(const Derivation& d, SystemId target) {
  std::vector<Derivation> ps;
  const std::size_t keep = d.rule() == RuleId::BetaS ? 1 : d.premisses().size();
  for (std::size_t i = 0; i < keep; ++i) ps.push_back(to_betal(d.premiss(i), target));
  const RuleId r = d.rule() == RuleId::BetaS ? RuleId::BetaL : d.rule();
  return Derivation::make(target, r, d.conclusion(), d.detail(), std::move(ps));
}

Derivation to_betas(const Derivation& d, SystemId target) {
  std::vector<Derivation> ps;
  for (const Derivation& p : d.premisses()) ps.push_back(to_betas(p, target));
  RuleId r = d.rule();
  if (r == RuleId::BetaL) {
    r = RuleId::BetaS;
    ps.push_back(rules::omega(target, d.context(), *d.detail().arg));
  }
  return Derivation::make(target, r, d.conclusion(), d.detail(), std::move(ps));
}

std::optional<std::string> find_omega(const Derivation& d, const std::string& path) {
  const RuleDetail& det = d.detail();
  if (d.rule() == RuleId::Omega || !is_omega_free(d.context()) || !is_omega_free(d.type()) ||
      (det.a1 && !is_omega_free(*det.a1)) || (det.a2 && !is_omega_free(*det.a2)) ||
      d.subject().contains_bottom()) {
    return path.empty() ? std::string("root") : path;
  }
  for (std::size_t i = 0; i < d.premisses().size(); ++i) {
    const std::string sub = path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
    if (auto hit = find_omega(d.premiss(i), sub)) return hit;
  }
  return std::nullopt;
}

}  // namespace

Derivation betas_to_betal(const Derivation& d) {
  if (d.system() != SystemId::LS && d.system() != SystemId::LSW) {
    fail(ErrorCode::WrongSystem, "betas_to_betal needs ls or lsw");
  }
  return to_betal(d, d.system() == SystemId::LS ? SystemId::LL : SystemId::LLW);
}

Derivation betal_to_betas(const Derivation& d) {
  if (d.system() != SystemId::LL && d.system() != SystemId::LLW) {
    fail(ErrorCode::WrongSystem, "betal_to_betas needs ll or llw");
  }
  return to_betas(d, SystemId::LSW);
}

Derivation omega_erase(const Derivation& d) {
  if (d.system() != SystemId::LLW && d.system() != SystemId::LL) {
    fail(ErrorCode::WrongSystem, "omega_erase needs llw");
  }
  if (auto hit = find_omega(d, "")) fail(ErrorCode::OmegaFound, "omega at node " + *hit);
  return d.rebrand(SystemId::LL);
}

}  // namespace itlab
