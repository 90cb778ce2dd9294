#include "itlab/derivation.hpp"
#include "itlab/errors.hpp"
#include "strcat.hpp"

namespace itlab {

namespace {

class Checker {
 public:
  explicit Checker(SystemId root_system) : system_(root_system) {}

  void visit(const Derivation& d, const std::string& path) {
    node_ = &d;
    path_ = &path;
    check_node(d);
    for (std::size_t i = 0; i < d.premisses().size(); ++i) {
      const std::string sub = path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
      visit(d.premiss(i), sub);
    }
  }

  CheckReport report;

 private:
  void add(DiagnosticKind kind, std::string message) {
    report.diagnostics.push_back(Diagnostic{*path_, node_->rule(), kind, std::move(message)});
  }

  bool expect(bool cond, DiagnosticKind kind, std::string_view message) {
    if (!cond) add(kind, std::string(message));
    return cond;
  }

  bool arity(const Derivation& d, std::size_t n) {
    return expect(d.premisses().size() == n, DiagnosticKind::RuleMismatch,
                  detail::cat("expected ", n, " premisses, found ", d.premisses().size()));
  }

  void check_node(const Derivation& d) {
    const Sequent& c = d.conclusion();
    if (d.system() != system_) {
      add(DiagnosticKind::SystemViolation,
          detail::cat("node tagged ", system_name(d.system()), " inside a ", system_name(system_), " derivation"));
    }
    if (!rule_admissible(d.rule(), system_)) {
      add(DiagnosticKind::SystemViolation,
          detail::cat("rule ", rule_name(d.rule()), " is not part of ", system_name(system_)));
      return;
    }
    if (!has_omega(system_)) {
      expect(is_omega_free(c.context) && is_omega_free(c.type), DiagnosticKind::SystemViolation,
             "omega occurs in an omega-free system");
      expect(!c.subject.contains_bottom(), DiagnosticKind::SystemViolation,
             "bottom occurs in the subject of an omega-free system");
      const RuleDetail& det = d.detail();
      expect((!det.a1 || is_omega_free(*det.a1)) && (!det.a2 || is_omega_free(*det.a2)),
             DiagnosticKind::SystemViolation, "omega occurs in rule detail");
    }
    if (is_natural_deduction(system_)) {
      expect(c.context.is_functional(), DiagnosticKind::SystemViolation,
             "natural-deduction context binds a variable twice: " + to_string(c.context));
    }
    switch (d.rule()) {
      case RuleId::Ax: return check_ax(d);
      case RuleId::Omega: return check_omega(d);
      case RuleId::ArrI:
      case RuleId::RArr: return check_abs(d);
      case RuleId::ArrE: return check_arr_e(d);
      case RuleId::CapI:
      case RuleId::RCap: return check_meet(d);
      case RuleId::CapEL:
      case RuleId::CapER: return check_cap_e(d);
      case RuleId::BetaS:
      case RuleId::BetaL: return check_beta(d);
      case RuleId::LArr: return check_l_arr(d);
      case RuleId::LCap: return check_l_cap(d);
    }
  }

  void check_ax(const Derivation& d) {
    if (!arity(d, 0)) return;
    const Sequent& c = d.conclusion();
    if (!expect(c.subject.is_var(), DiagnosticKind::RuleMismatch, "Ax subject is not a variable")) return;
    expect(d.detail().var == c.subject.name(), DiagnosticKind::DetailMismatch,
           "Ax detail variable differs from the subject");
    expect(c.context.contains(Binding{c.subject.name(), c.type}), DiagnosticKind::RuleMismatch,
           detail::cat(c.subject.name(), ":", c.type.text(), " is not in the context"));
  }

  void check_omega(const Derivation& d) {
    if (!arity(d, 0)) return;
    expect(d.type().is_omega(), DiagnosticKind::RuleMismatch, "Omega rule must conclude type w");
  }

  void check_abs(const Derivation& d) {
    if (!arity(d, 1)) return;
    const Sequent& c = d.conclusion();
    const Derivation& p = d.premiss(0);
    const std::string& z = d.detail().var;
    if (!expect(c.subject.is_lam(), DiagnosticKind::RuleMismatch, "subject is not an abstraction") ||
        !expect(c.type.is_arrow(), DiagnosticKind::RuleMismatch, "type is not an arrow")) {
      return;
    }
    expect(!z.empty() && alpha_eq(Term::lam(z, p.subject()), c.subject),
           DiagnosticKind::DetailMismatch, "premiss subject does not match the abstraction body");
    expect(!c.context.has_var(z), DiagnosticKind::SideCondition,
           detail::cat("binder ", z, " already occurs in the context"));
    expect(p.context() == c.context.with(Binding{z, c.type.dom()}), DiagnosticKind::RuleMismatch,
           detail::cat("premiss context ", to_string(p.context()), " is not the conclusion context plus ", z, ":", c.type.dom().text()));
    expect(p.type() == c.type.cod(), DiagnosticKind::RuleMismatch,
           "premiss type differs from the arrow codomain");
  }

  void check_arr_e(const Derivation& d) {
    if (!arity(d, 2)) return;
    const Sequent& c = d.conclusion();
    const Derivation& f = d.premiss(0);
    const Derivation& a = d.premiss(1);
    if (!expect(c.subject.is_app(), DiagnosticKind::RuleMismatch, "subject is not an application")) return;
    expect(alpha_eq(f.subject(), c.subject.fun()) && alpha_eq(a.subject(), c.subject.arg()),
           DiagnosticKind::RuleMismatch, "premiss subjects do not match the application");
    expect(f.context() == c.context && a.context() == c.context, DiagnosticKind::RuleMismatch,
           "premiss contexts differ from the conclusion");
    expect(f.type() == Type::arrow(a.type(), c.type), DiagnosticKind::RuleMismatch,
           detail::cat("function type ", f.type().text(), " is not ", a.type().text(), " -> ", c.type.text()));
  }

  void check_meet(const Derivation& d) {
    if (!arity(d, 2)) return;
    const Sequent& c = d.conclusion();
    for (const Derivation& p : d.premisses()) {
      expect(p.context() == c.context && alpha_eq(p.subject(), c.subject),
             DiagnosticKind::RuleMismatch, "premiss context or subject differs from the conclusion");
    }
    expect(c.type == Type::inter(d.premiss(0).type(), d.premiss(1).type()),
           DiagnosticKind::RuleMismatch, "type is not the intersection of the premiss types");
  }

  void check_cap_e(const Derivation& d) {
    if (!arity(d, 1)) return;
    const Sequent& c = d.conclusion();
    const Derivation& p = d.premiss(0);
    expect(p.context() == c.context && alpha_eq(p.subject(), c.subject),
           DiagnosticKind::RuleMismatch, "premiss context or subject differs from the conclusion");
    if (!expect(p.type().is_inter(), DiagnosticKind::RuleMismatch, "premiss type is not an intersection")) {
      return;
    }
    const Type& want = d.rule() == RuleId::CapEL ? p.type().left() : p.type().right();
    expect(want == c.type, DiagnosticKind::RuleMismatch, "type is not the selected conjunct");
  }

  void check_beta(const Derivation& d) {
    const bool strict = d.rule() == RuleId::BetaS;
    if (!arity(d, strict ? 2 : 1)) return;
    const Sequent& c = d.conclusion();
    const RuleDetail& det = d.detail();
    const Spine sp = spine_of(c.subject);
    if (!expect(sp.head.is_lam() && !sp.args.empty(), DiagnosticKind::RuleMismatch,
                "subject is not a redex spine")) {
      return;
    }
    if (!expect(det.body && det.arg && !det.var.empty(), DiagnosticKind::DetailMismatch,
                "missing redex detail")) {
      return;
    }
    std::vector<Term> args{*det.arg};
    args.insert(args.end(), det.spine.begin(), det.spine.end());
    if (!expect(alpha_eq(itlab::apply(Term::lam(det.var, *det.body), args), c.subject),
                DiagnosticKind::DetailMismatch, "redex detail does not rebuild the subject")) {
      return;
    }
    const Derivation& p = d.premiss(0);
    const Term contractum = itlab::apply(substitute(*det.body, det.var, *det.arg), det.spine);
    expect(alpha_eq(p.subject(), contractum), DiagnosticKind::RuleMismatch,
           "premiss subject is not the contracted spine " + to_string(contractum));
    expect(p.context() == c.context && p.type() == c.type, DiagnosticKind::RuleMismatch,
           "premiss context or type differs from the conclusion");
    if (strict) {
      const Derivation& n = d.premiss(1);
      expect(n.context() == c.context && alpha_eq(n.subject(), *det.arg),
             DiagnosticKind::RuleMismatch, "argument premiss does not type the redex argument");
    }
  }

  void check_l_arr(const Derivation& d) {
    if (!arity(d, 2)) return;
    const Sequent& c = d.conclusion();
    const RuleDetail& det = d.detail();
    if (!expect(det.arg && det.a1 && det.a2 && !det.var.empty() && !det.fresh.empty(),
                DiagnosticKind::DetailMismatch, "missing LArr detail")) {
      return;
    }
    const Spine sp = spine_of(c.subject);
    if (!expect(sp.head.is_var() && !sp.args.empty(), DiagnosticKind::RuleMismatch,
                "subject is not a variable applied to arguments")) {
      return;
    }
    std::vector<Term> args{*det.arg};
    args.insert(args.end(), det.spine.begin(), det.spine.end());
    if (!expect(alpha_eq(itlab::apply(Term::var(det.var), args), c.subject), DiagnosticKind::DetailMismatch,
                "spine detail does not rebuild the subject")) {
      return;
    }
    const Binding principal{det.var, Type::arrow(*det.a1, *det.a2)};
    if (!expect(c.context.contains(principal), DiagnosticKind::RuleMismatch,
                detail::cat("principal binding ", principal.var, ":", principal.type.text(), " is not in the context"))) {
      return;
    }
    const Derivation& first = d.premiss(0);
    const Derivation& rest = d.premiss(1);
    const Context& g0 = first.context();
    expect(g0 == c.context || g0 == c.context.without(principal), DiagnosticKind::RuleMismatch,
           "left premiss context is neither the conclusion context nor it minus the principal binding");
    expect(alpha_eq(first.subject(), *det.arg) && first.type() == *det.a1,
           DiagnosticKind::RuleMismatch, "left premiss does not type the first argument with A1");
    const std::string& y = det.fresh;
    expect(!c.context.has_var(y), DiagnosticKind::SideCondition,
           detail::cat("fresh variable ", y, " occurs in the context"));
    bool free_in_spine = false;
    for (const Term& n : det.spine) free_in_spine = free_in_spine || is_free_in(y, n);
    expect(!free_in_spine, DiagnosticKind::SideCondition,
           detail::cat("fresh variable ", y, " occurs free in the remaining arguments"));
    expect(rest.context() == g0.with(Binding{y, *det.a2}), DiagnosticKind::RuleMismatch,
           "right premiss context is not the left one plus y:A2");
    expect(alpha_eq(rest.subject(), itlab::apply(Term::var(y), det.spine)) && rest.type() == c.type,
           DiagnosticKind::RuleMismatch, "right premiss is not y N1..Nn at the conclusion type");
  }

  void check_l_cap(const Derivation& d) {
    if (!arity(d, 1)) return;
    const Sequent& c = d.conclusion();
    const RuleDetail& det = d.detail();
    if (!expect(det.a1 && det.a2 && !det.var.empty(), DiagnosticKind::DetailMismatch,
                "missing LCap detail")) {
      return;
    }
    if (!expect(alpha_eq(itlab::apply(Term::var(det.var), det.spine), c.subject),
                DiagnosticKind::DetailMismatch, "spine detail does not rebuild the subject")) {
      return;
    }
    const Binding principal{det.var, Type::inter(*det.a1, *det.a2)};
    if (!expect(c.context.contains(principal), DiagnosticKind::RuleMismatch,
                detail::cat("principal binding ", principal.var, ":", principal.type.text(), " is not in the context"))) {
      return;
    }
    const Derivation& p = d.premiss(0);
    const Binding b1{det.var, *det.a1};
    const Binding b2{det.var, *det.a2};
    const Context keep = c.context.with(b1).with(b2);
    const Context drop = c.context.without(principal).with(b1).with(b2);
    expect(p.context() == keep || p.context() == drop, DiagnosticKind::RuleMismatch,
           "premiss context does not split the principal binding");
    expect(alpha_eq(p.subject(), c.subject) && p.type() == c.type, DiagnosticKind::RuleMismatch,
           "premiss subject or type differs from the conclusion");
  }

  SystemId system_;
  const Derivation* node_ = nullptr;
  const std::string* path_ = nullptr;
};

}  // namespace

std::string CheckReport::to_string() const {
  if (diagnostics.empty()) return "valid\n";
  std::string out;
  static constexpr std::string_view kKinds[] = {"rule mismatch", "side condition", "system violation",
                                                "detail mismatch"};
  for (const Diagnostic& d : diagnostics) {
    out += detail::cat(d.path.empty() ? "root" : d.path, " [", rule_name(d.rule), "] ", kKinds[static_cast<int>(d.kind)], ": ", d.message, "\n");
  }
  return out;
}

CheckReport check_derivation(const Derivation& d) {
  Checker checker(d.system());
  checker.visit(d, "");
  return std::move(checker.report);
}

void require_valid(const Derivation& d, std::string_view what) {
  CheckReport r = check_derivation(d);
  if (!r.ok()) fail(ErrorCode::InvalidDerivation, std::string(what) + "\n" + r.to_string());
}

}  // namespace itlab
