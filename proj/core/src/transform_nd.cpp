#include <map>

#include "itlab/errors.hpp"
#include "itlab/reduce.hpp"
#include "itlab/transform.hpp"
#include "transform_internal.hpp"

namespace itlab {

using detail::remake;

namespace {

void require_nd(const Derivation& d, std::string_view op) {
  if (!is_natural_deduction(d.system())) {
    fail(ErrorCode::WrongSystem, std::string(op) + " needs a natural-deduction derivation, got " +
                                     std::string(system_name(d.system())));
  }
}

bool below(SystemId s, const Type& a, const Type& b) {
  return has_omega(s) ? leq_omega(a, b) : leq(a, b);
}

Derivation fold_meet(SystemId s, const std::vector<Derivation>& ds) {
  if (ds.empty()) fail(ErrorCode::Internal, "intersection of no derivations");
  Derivation acc = ds.front();
  for (std::size_t i = 1; i < ds.size(); ++i) acc = rules::cap_i(s, acc, ds[i]);
  return acc;
}

// Left/right steps from t down to a subtree equal to b, through intersections only.
bool find_projection(const Type& t, const Type& b, std::vector<bool>& rights) {
  if (t == b) return true;
  if (!t.is_inter()) return false;
  rights.push_back(false);
  if (find_projection(t.left(), b, rights)) return true;
  rights.back() = true;
  if (find_projection(t.right(), b, rights)) return true;
  rights.pop_back();
  return false;
}

Derivation le_rec(const Derivation& d, const Type& b) {
  const SystemId s = d.system();
  std::vector<bool> rights;
  if (find_projection(d.type(), b, rights)) {
    Derivation out = d;
    for (bool r : rights) out = r ? rules::cap_e_right(s, out) : rules::cap_e_left(s, out);
    return out;
  }
  if (b.is_inter()) return rules::cap_i(s, le_rec(d, b.left()), le_rec(d, b.right()));
  if (b.is_omega() && has_omega(s)) return rules::omega(s, d.context(), d.subject());
  fail(ErrorCode::NotLeq, d.type().text() + " has no conjunct " + b.text());
}

void collect_app(const Derivation& d, std::vector<AppPiece>& out) {
  switch (d.rule()) {
    case RuleId::ArrE: out.push_back(AppPiece{d.premiss(0), d.premiss(1)}); return;
    case RuleId::CapI:
      collect_app(d.premiss(0), out);
      collect_app(d.premiss(1), out);
      return;
    case RuleId::CapEL:
    case RuleId::CapER: collect_app(d.premiss(0), out); return;
    case RuleId::Omega: return;
    default:
      fail(ErrorCode::Internal, "application typed by rule " + std::string(rule_name(d.rule())));
  }
}

void collect_abs(const Derivation& d, std::vector<AbsPiece>& out) {
  switch (d.rule()) {
    case RuleId::ArrI: out.push_back(AbsPiece{d.detail().var, d.premiss(0)}); return;
    case RuleId::CapI:
      collect_abs(d.premiss(0), out);
      collect_abs(d.premiss(1), out);
      return;
    case RuleId::CapEL:
    case RuleId::CapER: collect_abs(d.premiss(0), out); return;
    case RuleId::Omega: return;
    default:
      fail(ErrorCode::Internal, "abstraction typed by rule " + std::string(rule_name(d.rule())));
  }
}

void require_not_omega_dominated(const Derivation& d) {
  if (has_omega(d.system()) && omega_dominated(d.type())) {
    fail(ErrorCode::OmegaDominatedType, "w <= " + d.type().text());
  }
}

}  // namespace

Derivation le_closure(const Derivation& d, const Type& b) {
  require_nd(d, "le_closure");
  if (d.type() == b) return d;
  if (!below(d.system(), d.type(), b)) {
    fail(ErrorCode::NotLeq, d.type().text() + " is not below " + b.text());
  }
  return le_rec(d, b);
}

std::vector<AppPiece> gen_app(const Derivation& d) {
  require_nd(d, "gen_app");
  if (!d.subject().is_app()) {
    fail(ErrorCode::SubjectNotApplication, to_string(d.subject()) + " is not an application");
  }
  require_not_omega_dominated(d);
  std::vector<AppPiece> out;
  collect_app(d, out);
  std::vector<Type> results;
  for (const AppPiece& p : out) results.push_back(p.fun.type().cod());
  if (out.empty() || !below(d.system(), intersect_all(results), d.type())) {
    fail(ErrorCode::Internal, "generation witness failed for " + to_string(d.conclusion()));
  }
  return out;
}

std::vector<AbsPiece> gen_abs(const Derivation& d) {
  require_nd(d, "gen_abs");
  if (!d.subject().is_lam()) {
    fail(ErrorCode::SubjectNotAbstraction, to_string(d.subject()) + " is not an abstraction");
  }
  require_not_omega_dominated(d);
  std::vector<AbsPiece> out;
  collect_abs(d, out);
  std::vector<Type> arrows;
  for (const AbsPiece& p : out) {
    arrows.push_back(Type::arrow(*p.body.context().lookup(p.binder), p.body.type()));
  }
  if (out.empty() || !below(d.system(), intersect_all(arrows), d.type())) {
    fail(ErrorCode::Internal, "generation witness failed for " + to_string(d.conclusion()));
  }
  return out;
}

// ------------------------------------------------------------- substitution

namespace {

Derivation nd_subst_rec(const Derivation& d, const std::string& x, const Term& n,
                        const Derivation& dn) {
  const SystemId s = d.system();
  const Context gamma = d.context().without_var(x);
  if (!d.context().has_var(x) && !is_free_in(x, d.subject())) return d;
  switch (d.rule()) {
    case RuleId::Ax:
      if (d.detail().var == x) return dn;
      return rules::ax(s, gamma, d.detail().var, d.type());
    case RuleId::Omega: return rules::omega(s, gamma, substitute(d.subject(), x, n));
    case RuleId::ArrI: {
      Derivation body = d.premiss(0);
      std::string z = d.detail().var;
      if (z == x || is_free_in(z, n)) {
        const std::string z2 = fresh_name();
        body = rename_var(body, z, z2);
        z = z2;
      }
      Derivation dn2 = weaken_nd(dn, z, d.type().dom());
      return rules::abs_as(s, substitute(d.subject(), x, n), z, nd_subst_rec(body, x, n, dn2));
    }
    case RuleId::ArrE:
      return rules::arr_e(s, nd_subst_rec(d.premiss(0), x, n, dn), nd_subst_rec(d.premiss(1), x, n, dn));
    case RuleId::CapI:
      return rules::cap_i(s, nd_subst_rec(d.premiss(0), x, n, dn), nd_subst_rec(d.premiss(1), x, n, dn));
    case RuleId::CapEL: return rules::cap_e_left(s, nd_subst_rec(d.premiss(0), x, n, dn));
    case RuleId::CapER: return rules::cap_e_right(s, nd_subst_rec(d.premiss(0), x, n, dn));
    default: break;
  }
  fail(ErrorCode::WrongSystem, "nd_subst on rule " + std::string(rule_name(d.rule())));
}

}  // namespace

Derivation nd_subst(const Derivation& d, const std::string& x, const Derivation& dn) {
  require_nd(d, "nd_subst");
  const std::optional<Type> a = d.context().lookup(x);
  const Context gamma = d.context().without_var(x);
  if (a && dn.type() != *a) {
    fail(ErrorCode::TypeMismatch, "N has type " + dn.type().text() + " but " + x + " has " + a->text());
  }
  if (dn.context() != gamma) {
    fail(ErrorCode::TypeMismatch, "N is typed in " + to_string(dn.context()) + ", expected " +
                                      to_string(gamma));
  }
  return nd_subst_rec(d, x, dn.subject(), dn);
}

// ------------------------------------------------------------------ contexts

namespace {

// True when d is built from (Ax) nodes for x of type a by intersection
// introductions and eliminations only, i.e. d merely witnesses a <= d.type().
bool projects_axiom(const Derivation& d, const std::string& x, const Type& a) {
  switch (d.rule()) {
    case RuleId::Ax: return d.detail().var == x && d.type() == a;
    case RuleId::CapEL:
    case RuleId::CapER: return projects_axiom(d.premiss(0), x, a);
    case RuleId::CapI: return projects_axiom(d.premiss(0), x, a) && projects_axiom(d.premiss(1), x, a);
    default: return false;
  }
}

Derivation retype_rec(const Derivation& d, const std::map<std::string, std::pair<Type, Type>>& change) {
  std::vector<Binding> bs;
  for (const Binding& b : d.context()) {
    auto it = change.find(b.var);
    bs.push_back(it != change.end() && it->second.first == b.type ? Binding{b.var, it->second.second} : b);
  }
  Context ctx{std::span<const Binding>(bs)};
  if (d.subject().is_var()) {
    // Rebuild whole projection trees from the new axiom: retyping only their
    // leaves would nest closures and grow multiplicatively.
    const std::string& x = d.subject().name();
    auto it = change.find(x);
    if (it != change.end() && projects_axiom(d, x, it->second.first)) {
      return le_closure(rules::ax(d.system(), ctx, x, it->second.second), d.type());
    }
  }
  std::vector<Derivation> ps;
  for (const Derivation& p : d.premisses()) ps.push_back(retype_rec(p, change));
  return remake(d, std::move(ctx), d.subject(), d.detail(), std::move(ps));
}

Derivation strengthen_rec(const Derivation& d, const std::string& x) {
  if (d.rule() == RuleId::Ax && d.detail().var == x) {
    fail(ErrorCode::PreconditionViolation, "cannot drop " + x + ": it is used by an axiom");
  }
  std::vector<Derivation> ps;
  for (const Derivation& p : d.premisses()) ps.push_back(strengthen_rec(p, x));
  return remake(d, d.context().without_var(x), d.subject(), d.detail(), std::move(ps));
}

}  // namespace

Derivation adapt_context(const Derivation& d, const Context& target) {
  require_nd(d, "adapt_context");
  std::map<std::string, std::pair<Type, Type>> change;
  for (const Binding& b : d.context()) {
    const std::optional<Type> t = target.lookup(b.var);
    if (!t) fail(ErrorCode::BindingNotFound, b.var + " is not bound in " + to_string(target));
    if (!below(d.system(), *t, b.type)) {
      fail(ErrorCode::NotLeq, b.var + ": " + t->text() + " is not below " + b.type.text());
    }
    if (*t != b.type) change.emplace(b.var, std::make_pair(b.type, *t));
  }
  Derivation out = change.empty() ? d : retype_rec(d, change);
  out = weaken_by(out, target);
  if (out.context() != target) {
    fail(ErrorCode::Internal, "adapt_context produced " + to_string(out.context()));
  }
  return out;
}

Derivation strengthen(const Derivation& d, const std::string& x) {
  require_nd(d, "strengthen");
  if (!d.context().has_var(x)) return d;
  return strengthen_rec(d, x);
}

// ----------------------------------------------------- inverse substitution

namespace {

struct Part {
  Type c;
  Derivation dn;
};

struct Combined {
  Type c;
  Derivation dn;
};

// Canonical fold of the types found for N; omega is dropped when anything
// else is available.
Combined combine(SystemId s, const std::vector<Part>& parts) {
  std::map<Type, Derivation> by_type;
  for (const Part& p : parts) by_type.emplace(p.c, p.dn);
  if (by_type.size() > 1) by_type.erase(Type::omega());
  std::vector<Type> types;
  std::vector<Derivation> dns;
  for (const auto& [t, dn] : by_type) {
    types.push_back(t);
    dns.push_back(dn);
  }
  return Combined{intersect_all(types), fold_meet(s, dns)};
}

InvSubst inv_rec(const Derivation& dsub, const Term& m, const std::string& x, const Term& n,
                 const std::optional<Derivation>& dn_opt) {
  const SystemId s = dsub.system();
  const Context& gamma = dsub.context();
  const Type& a = dsub.type();

  if (m.is_var() && m.name() == x) {
    return InvSubst{a, rules::ax(s, gamma, x, a), dsub};
  }
  if (has_omega(s) && (m.is_var() || omega_dominated(a))) {
    const Type w = Type::omega();
    Derivation dm = m.is_var() ? weaken_nd(dsub, x, w)
                               : le_closure(rules::omega(s, gamma.with(Binding{x, w}), m), a);
    return InvSubst{w, std::move(dm), rules::omega(s, gamma, n)};
  }
  if (m.is_var()) {
    if (!dn_opt) fail(ErrorCode::PreconditionViolation, "inv_subst needs a typing of N in nd");
    return InvSubst{dn_opt->type(), weaken_nd(dsub, x, dn_opt->type()), *dn_opt};
  }
  if (m.is_bottom()) fail(ErrorCode::Internal, "bottom typed with " + a.text());

  if (m.is_app()) {
    struct Sub {
      InvSubst fun, arg;
    };
    std::vector<Sub> subs;
    std::vector<Part> parts;
    for (const AppPiece& piece : gen_app(dsub)) {
      Sub sub{inv_rec(piece.fun, m.fun(), x, n, dn_opt), inv_rec(piece.arg, m.arg(), x, n, dn_opt)};
      parts.push_back(Part{sub.fun.c, sub.fun.dn});
      parts.push_back(Part{sub.arg.c, sub.arg.dn});
      subs.push_back(std::move(sub));
    }
    Combined comb = combine(s, parts);
    const Context target = gamma.with(Binding{x, comb.c});
    std::vector<Derivation> apps;
    for (const Sub& sub : subs) {
      apps.push_back(rules::arr_e(s, adapt_context(sub.fun.dm, target), adapt_context(sub.arg.dm, target)));
    }
    return InvSubst{comb.c, le_closure(fold_meet(s, apps), a), comb.dn};
  }

  // Abstraction: pick a binder clear of x, N and Gamma.
  std::string u = m.name();
  Term body = m.body();
  if (u == x || is_free_in(u, n) || gamma.has_var(u)) {
    u = fresh_name();
    body = substitute(body, m.name(), Term::var(u));
  }
  struct Sub {
    Type b;
    InvSubst inner;
  };
  std::vector<Sub> subs;
  std::vector<Part> parts;
  for (const AbsPiece& piece : gen_abs(dsub)) {
    Derivation pb = rename_var(piece.body, piece.binder, u);
    const Type b = *pb.context().lookup(u);
    std::optional<Derivation> dn_u;
    if (dn_opt) dn_u = weaken_nd(*dn_opt, u, b);
    InvSubst inner = inv_rec(pb, body, x, n, dn_u);
    inner.dn = strengthen(inner.dn, u);
    parts.push_back(Part{inner.c, inner.dn});
    subs.push_back(Sub{b, std::move(inner)});
  }
  Combined comb = combine(s, parts);
  std::vector<Derivation> arrows;
  for (const Sub& sub : subs) {
    const Context target = gamma.with(Binding{u, sub.b}).with(Binding{x, comb.c});
    arrows.push_back(rules::abs(s, u, adapt_context(sub.inner.dm, target)));
  }
  return InvSubst{comb.c, le_closure(fold_meet(s, arrows), a), comb.dn};
}

}  // namespace

InvSubst inv_subst(const Derivation& dsub, const Term& m, const std::string& x, const Term& n,
                   const std::optional<Derivation>& dn_opt) {
  require_nd(dsub, "inv_subst");
  if (!alpha_eq(substitute(m, x, n), dsub.subject())) {
    fail(ErrorCode::DecompositionMismatch,
         to_string(m) + "[" + x + ":=" + to_string(n) + "] is not " + to_string(dsub.subject()));
  }
  if (dsub.context().has_var(x)) {
    fail(ErrorCode::PreconditionViolation, x + " must not be bound in " + to_string(dsub.context()));
  }
  if (!has_omega(dsub.system())) {
    if (!dn_opt) fail(ErrorCode::PreconditionViolation, "inv_subst in nd needs a typing of N");
    if (dn_opt->context() != dsub.context() || !alpha_eq(dn_opt->subject(), n)) {
      fail(ErrorCode::PreconditionViolation, "the typing of N does not match");
    }
  }
  return inv_rec(dsub, m, x, n, has_omega(dsub.system()) ? std::nullopt : dn_opt);
}

// ------------------------------------------------------------- expansion

Derivation detail::expand_redex(const Derivation& d, const Term& m, const Position& p,
                                const std::optional<Derivation>& dn_opt) {
  const SystemId s = d.system();
  const Context& gamma = d.context();
  if (has_omega(s) && omega_dominated(d.type())) {
    return le_closure(rules::omega(s, gamma, m), d.type());
  }
  if (p.is_root()) {
    if (!m.is_redex()) fail(ErrorCode::NotARedex, to_string(m) + " is not a redex");
    std::string y = m.fun().name();
    Term body = m.fun().body();
    if (gamma.has_var(y)) {
      y = fresh_name();
      body = substitute(body, m.fun().name(), Term::var(y));
    }
    InvSubst r = inv_subst(d, body, y, m.arg(), dn_opt);
    return rules::arr_e(s, rules::abs(s, y, std::move(r.dm)), std::move(r.dn));
  }
  const Dir dir = p.path.front();
  const Position rest{std::vector<Dir>(p.path.begin() + 1, p.path.end())};
  if (m.is_app()) {
    std::vector<Derivation> apps;
    for (const AppPiece& piece : gen_app(d)) {
      if (dir == Dir::Fun) {
        apps.push_back(rules::arr_e(s, expand_redex(piece.fun, m.fun(), rest, dn_opt), piece.arg));
      } else {
        apps.push_back(rules::arr_e(s, piece.fun, expand_redex(piece.arg, m.arg(), rest, dn_opt)));
      }
    }
    return le_closure(fold_meet(s, apps), d.type());
  }
  if (!m.is_lam() || dir != Dir::Body) fail(ErrorCode::NotARedex, "position leaves " + to_string(m));
  std::string u = m.name();
  Term body = m.body();
  if (gamma.has_var(u)) {
    u = fresh_name();
    body = substitute(body, m.name(), Term::var(u));
  }
  std::vector<Derivation> arrows;
  for (const AbsPiece& piece : gen_abs(d)) {
    Derivation pb = rename_var(piece.body, piece.binder, u);
    std::optional<Derivation> dn_u;
    if (dn_opt) dn_u = weaken_nd(*dn_opt, u, *pb.context().lookup(u));
    arrows.push_back(rules::abs(s, u, expand_redex(pb, body, rest, dn_u)));
  }
  return le_closure(fold_meet(s, arrows), d.type());
}

Derivation subject_expand(const Derivation& d, const Term& m, const Position& p) {
  if (d.system() != SystemId::NDW) fail(ErrorCode::WrongSystem, "subject_expand needs ndw");
  const Term next = step(m, p);
  if (!alpha_eq(next, d.subject())) {
    fail(ErrorCode::SubjectMismatch, "step of " + to_string(m) + " at " + to_string(p) + " gives " +
                                         to_string(next) + ", not " + to_string(d.subject()));
  }
  return detail::expand_redex(d, m, p, std::nullopt);
}

}  // namespace itlab
