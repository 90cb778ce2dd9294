#include "itlab/derivation.hpp"

#include <algorithm>
#include <array>

#include "itlab/errors.hpp"

namespace itlab {

namespace {

constexpr std::array<std::string_view, 6> kSystemNames = {"nd", "ndw", "ls", "lsw", "ll", "llw"};
constexpr std::array<std::string_view, 13> kRuleNames = {
    "Ax", "ArrI", "ArrE", "CapI", "CapEL", "CapER", "BetaS",
    "BetaL", "LArr", "RArr", "LCap", "RCap", "Omega"};

}  // namespace

std::string_view system_name(SystemId s) { return kSystemNames[static_cast<std::size_t>(s)]; }

std::optional<SystemId> parse_system(std::string_view name) {
  for (std::size_t i = 0; i < kSystemNames.size(); ++i) {
    if (kSystemNames[i] == name) return static_cast<SystemId>(i);
  }
  return std::nullopt;
}

bool has_omega(SystemId s) {
  return s == SystemId::NDW || s == SystemId::LSW || s == SystemId::LLW;
}
bool is_natural_deduction(SystemId s) { return s == SystemId::ND || s == SystemId::NDW; }
bool is_sequent(SystemId s) { return !is_natural_deduction(s); }

SystemId with_omega(SystemId s) {
  switch (s) {
    case SystemId::ND: return SystemId::NDW;
    case SystemId::LS: return SystemId::LSW;
    case SystemId::LL: return SystemId::LLW;
    default: return s;
  }
}

SystemId without_omega(SystemId s) {
  switch (s) {
    case SystemId::NDW: return SystemId::ND;
    case SystemId::LSW: return SystemId::LS;
    case SystemId::LLW: return SystemId::LL;
    default: return s;
  }
}

std::string_view rule_name(RuleId r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<RuleId> parse_rule(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
    if (kRuleNames[i] == name) return static_cast<RuleId>(i);
  }
  return std::nullopt;
}

bool rule_admissible(RuleId r, SystemId s) {
  switch (r) {
    case RuleId::Ax: return true;
    case RuleId::Omega: return has_omega(s);
    case RuleId::ArrI:
    case RuleId::ArrE:
    case RuleId::CapI:
    case RuleId::CapEL:
    case RuleId::CapER: return is_natural_deduction(s);
    case RuleId::BetaS: return s == SystemId::LS || s == SystemId::LSW;
    case RuleId::BetaL: return s == SystemId::LL || s == SystemId::LLW;
    case RuleId::LArr:
    case RuleId::RArr:
    case RuleId::LCap:
    case RuleId::RCap: return is_sequent(s);
  }
  return false;
}

std::string to_string(const Sequent& s) {
  return to_string(s.context) + " |- " + to_string(s.subject) + " : " + to_string(s.type);
}

bool same_sequent(const Sequent& a, const Sequent& b) {
  return a.context == b.context && a.type == b.type && alpha_eq(a.subject, b.subject);
}

// ---------------------------------------------------------------- the node

struct Derivation::Node {
  SystemId system;
  RuleId rule;
  Sequent conclusion;
  RuleDetail detail;
  std::vector<Derivation> premisses;
  std::size_t height;
  std::size_t count;
};

Derivation Derivation::make(SystemId system, RuleId rule, Sequent conclusion, RuleDetail detail,
                            std::vector<Derivation> premisses) {
  std::size_t height = 0;
  std::size_t count = 1;
  for (const Derivation& p : premisses) {
    height = std::max(height, p.height() + 1);
    count += p.node_count();
  }
  return Derivation(std::make_shared<const Node>(Node{system, rule, std::move(conclusion),
                                                      std::move(detail), std::move(premisses),
                                                      height, count}));
}

SystemId Derivation::system() const noexcept { return node_->system; }
RuleId Derivation::rule() const noexcept { return node_->rule; }
const Sequent& Derivation::conclusion() const noexcept { return node_->conclusion; }
const RuleDetail& Derivation::detail() const noexcept { return node_->detail; }
const std::vector<Derivation>& Derivation::premisses() const noexcept { return node_->premisses; }
std::size_t Derivation::height() const noexcept { return node_->height; }
std::size_t Derivation::node_count() const noexcept { return node_->count; }

Derivation Derivation::rebrand(SystemId system) const {
  if (system == this->system()) return *this;
  std::vector<Derivation> ps;
  ps.reserve(premisses().size());
  for (const Derivation& p : premisses()) ps.push_back(p.rebrand(system));
  return make(system, rule(), conclusion(), detail(), std::move(ps));
}

namespace {

bool same_opt_term(const std::optional<Term>& a, const std::optional<Term>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || alpha_eq(*a, *b);
}

bool same_detail(const RuleDetail& a, const RuleDetail& b) {
  if (a.var != b.var || a.fresh != b.fresh || a.a1 != b.a1 || a.a2 != b.a2) return false;
  if (!same_opt_term(a.body, b.body) || !same_opt_term(a.arg, b.arg)) return false;
  if (a.spine.size() != b.spine.size()) return false;
  for (std::size_t i = 0; i < a.spine.size(); ++i) {
    if (!alpha_eq(a.spine[i], b.spine[i])) return false;
  }
  return true;
}

void census_into(const Derivation& d, std::map<RuleId, std::size_t>& out) {
  ++out[d.rule()];
  for (const Derivation& p : d.premisses()) census_into(p, out);
}

}  // namespace

bool structurally_equal(const Derivation& a, const Derivation& b) {
  if (a.system() != b.system() || a.rule() != b.rule()) return false;
  if (!same_sequent(a.conclusion(), b.conclusion())) return false;
  if (!same_detail(a.detail(), b.detail())) return false;
  if (a.premisses().size() != b.premisses().size()) return false;
  for (std::size_t i = 0; i < a.premisses().size(); ++i) {
    if (!structurally_equal(a.premiss(i), b.premiss(i))) return false;
  }
  return true;
}

std::map<RuleId, std::size_t> rule_census(const Derivation& d) {
  std::map<RuleId, std::size_t> out;
  census_into(d, out);
  return out;
}

std::string to_string(const std::map<RuleId, std::size_t>& census) {
  std::string out;
  for (const auto& [rule, count] : census) {
    if (!out.empty()) out += ' ';
    out += std::string(rule_name(rule)) + ":" + std::to_string(count);
  }
  return out;
}

// ------------------------------------------------------- smart constructors

namespace rules {

namespace {

Type sole_type(const Context& ctx, const std::string& x, std::string_view rule) {
  std::vector<Type> ts = ctx.types_of(x);
  if (ts.size() != 1) {
    fail(ErrorCode::PreconditionViolation,
         std::string(rule) + ": expected exactly one binding of " + x + " in " + to_string(ctx));
  }
  return ts.front();
}

}  // namespace

Derivation ax(SystemId s, Context ctx, std::string x, Type a) {
  ctx = ctx.with(Binding{x, a});
  Sequent c{std::move(ctx), Term::var(x), std::move(a)};
  RuleDetail detail;
  detail.var = std::move(x);
  return Derivation::make(s, RuleId::Ax, std::move(c), std::move(detail), {});
}

Derivation omega(SystemId s, Context ctx, Term subject) {
  return Derivation::make(s, RuleId::Omega, Sequent{std::move(ctx), std::move(subject), Type::omega()},
                          {}, {});
}

Derivation abs(SystemId s, std::string binder, Derivation body) {
  Term subject = Term::lam(binder, body.subject());
  return abs_as(s, std::move(subject), std::move(binder), std::move(body));
}

Derivation abs_as(SystemId s, Term subject, std::string binder, Derivation body) {
  const Type a = sole_type(body.context(), binder, "abstraction");
  Sequent c{body.context().without_var(binder), std::move(subject), Type::arrow(a, body.type())};
  RuleDetail detail;
  detail.var = std::move(binder);
  const RuleId r = is_natural_deduction(s) ? RuleId::ArrI : RuleId::RArr;
  return Derivation::make(s, r, std::move(c), std::move(detail), {std::move(body)});
}

Derivation arr_e(SystemId s, Derivation fun, Derivation arg) {
  Sequent c{fun.context(), Term::app(fun.subject(), arg.subject()), fun.type().cod()};
  return Derivation::make(s, RuleId::ArrE, std::move(c), {}, {std::move(fun), std::move(arg)});
}

Derivation cap_i(SystemId s, Derivation left, Derivation right) {
  Sequent c{left.context(), left.subject(), Type::inter(left.type(), right.type())};
  return Derivation::make(s, RuleId::CapI, std::move(c), {}, {std::move(left), std::move(right)});
}

Derivation cap_e_left(SystemId s, Derivation d) {
  Sequent c{d.context(), d.subject(), d.type().left()};
  return Derivation::make(s, RuleId::CapEL, std::move(c), {}, {std::move(d)});
}

Derivation cap_e_right(SystemId s, Derivation d) {
  Sequent c{d.context(), d.subject(), d.type().right()};
  return Derivation::make(s, RuleId::CapER, std::move(c), {}, {std::move(d)});
}

Derivation beta(SystemId s, Term subject, Derivation contractum,
                std::optional<Derivation> arg_typing) {
  Spine sp = spine_of(subject);
  if (!sp.head.is_lam() || sp.args.empty()) {
    fail(ErrorCode::NotARedex, to_string(subject) + " is not a redex spine");
  }
  RuleDetail detail;
  detail.var = sp.head.name();
  detail.body = sp.head.body();
  detail.arg = sp.args.front();
  detail.spine.assign(sp.args.begin() + 1, sp.args.end());
  Sequent c{contractum.context(), std::move(subject), contractum.type()};
  std::vector<Derivation> ps{std::move(contractum)};
  RuleId r = RuleId::BetaL;
  if (arg_typing) {
    r = RuleId::BetaS;
    ps.push_back(std::move(*arg_typing));
  }
  return Derivation::make(s, r, std::move(c), std::move(detail), std::move(ps));
}

Derivation l_arr(SystemId s, std::string x, Derivation first, std::string y, Derivation rest,
                 std::optional<Context> conclusion_context) {
  const Type a1 = first.type();
  const Type a2 = sole_type(rest.context(), y, "LArr");
  Spine sp = spine_of(rest.subject());
  if (!sp.head.is_var() || sp.head.name() != y) {
    fail(ErrorCode::PreconditionViolation,
         "LArr: right premiss subject " + to_string(rest.subject()) + " is not headed by " + y);
  }
  std::vector<Term> args{first.subject()};
  args.insert(args.end(), sp.args.begin(), sp.args.end());
  Term subject = itlab::apply(Term::var(x), args);
  Context ctx = conclusion_context ? std::move(*conclusion_context)
                                   : first.context().with(Binding{x, Type::arrow(a1, a2)});
  RuleDetail detail;
  detail.var = std::move(x);
  detail.fresh = std::move(y);
  detail.arg = first.subject();
  detail.spine = std::move(sp.args);
  detail.a1 = a1;
  detail.a2 = a2;
  Sequent c{std::move(ctx), std::move(subject), rest.type()};
  return Derivation::make(s, RuleId::LArr, std::move(c), std::move(detail),
                          {std::move(first), std::move(rest)});
}

Derivation l_cap(SystemId s, Context conclusion_context, std::string x, Type a1, Type a2,
                 Derivation premiss) {
  Spine sp = spine_of(premiss.subject());
  RuleDetail detail;
  detail.var = std::move(x);
  detail.spine = std::move(sp.args);
  detail.a1 = std::move(a1);
  detail.a2 = std::move(a2);
  Sequent c{std::move(conclusion_context), premiss.subject(), premiss.type()};
  return Derivation::make(s, RuleId::LCap, std::move(c), std::move(detail), {std::move(premiss)});
}

Derivation r_cap(SystemId s, Derivation left, Derivation right) {
  Sequent c{left.context(), left.subject(), Type::inter(left.type(), right.type())};
  return Derivation::make(s, RuleId::RCap, std::move(c), {}, {std::move(left), std::move(right)});
}

Derivation meet(SystemId s, Derivation left, Derivation right) {
  return is_natural_deduction(s) ? cap_i(s, std::move(left), std::move(right))
                                 : r_cap(s, std::move(left), std::move(right));
}

}  // namespace rules

}  // namespace itlab
