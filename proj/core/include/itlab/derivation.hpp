#pragma once

// Derivation trees for the six type systems, a rule-by-rule checker, and the
// s-expression exchange format.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "itlab/term.hpp"
#include "itlab/types.hpp"

namespace itlab {

/// ND: natural deduction. LS: sequent style with (Beta)s. LL: sequent style
/// with (Beta)l. The W variants add omega and the (omega) rule.
enum class SystemId { ND, NDW, LS, LSW, LL, LLW };

std::string_view system_name(SystemId s);           // nd, ndw, ls, lsw, ll, llw
std::optional<SystemId> parse_system(std::string_view name);
bool has_omega(SystemId s);
bool is_natural_deduction(SystemId s);
bool is_sequent(SystemId s);
SystemId with_omega(SystemId s);
SystemId without_omega(SystemId s);

enum class RuleId {
  Ax, ArrI, ArrE, CapI, CapEL, CapER, BetaS, BetaL, LArr, RArr, LCap, RCap, Omega
};

std::string_view rule_name(RuleId r);
std::optional<RuleId> parse_rule(std::string_view name);
bool rule_admissible(RuleId r, SystemId s);

struct Sequent {
  Context context;
  Term subject;
  Type type;
};

std::string to_string(const Sequent& s);
/// Same context, alpha-equal subject, same type.
bool same_sequent(const Sequent& a, const Sequent& b);

/// Rule-specific data, stored explicitly and checked against the subject.
///   Ax          var
///   ArrI, RArr  var (binder as used in the premiss)
///   BetaS/L     var (redex binder), body, arg, spine
///   LArr        var (head), arg, spine, fresh, a1, a2
///   LCap        var (head), spine, a1, a2
struct RuleDetail {
  std::string var;
  std::string fresh;
  std::optional<Term> body;
  std::optional<Term> arg;
  std::vector<Term> spine;
  std::optional<Type> a1;
  std::optional<Type> a2;
};

class Derivation {
 public:
  static Derivation make(SystemId system, RuleId rule, Sequent conclusion, RuleDetail detail,
                         std::vector<Derivation> premisses);

  SystemId system() const noexcept;
  RuleId rule() const noexcept;
  const Sequent& conclusion() const noexcept;
  const Context& context() const noexcept { return conclusion().context; }
  const Term& subject() const noexcept { return conclusion().subject; }
  const Type& type() const noexcept { return conclusion().type; }
  const RuleDetail& detail() const noexcept;
  const std::vector<Derivation>& premisses() const noexcept;
  const Derivation& premiss(std::size_t i) const { return premisses().at(i); }

  std::size_t height() const noexcept;
  std::size_t node_count() const noexcept;

  /// Same tree relabelled with another system (no validity check).
  Derivation rebrand(SystemId system) const;

 private:
  struct Node;
  explicit Derivation(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline const Sequent& conclusion_of(const Derivation& d) { return d.conclusion(); }

/// Structural equality: same rules, details, sequents (terms up to alpha).
bool structurally_equal(const Derivation& a, const Derivation& b);

std::map<RuleId, std::size_t> rule_census(const Derivation& d);
std::string to_string(const std::map<RuleId, std::size_t>& census);

// ------------------------------------------------------------------ checker

enum class DiagnosticKind { RuleMismatch, SideCondition, SystemViolation, DetailMismatch };

struct Diagnostic {
  std::string path;  // premiss indices from the root, e.g. "0.1"; root is ""
  RuleId rule;
  DiagnosticKind kind;
  std::string message;
};

struct CheckReport {
  std::vector<Diagnostic> diagnostics;
  bool ok() const noexcept { return diagnostics.empty(); }
  std::string to_string() const;
};

CheckReport check_derivation(const Derivation& d);
/// Throws InvalidDerivation with the report when d does not check.
void require_valid(const Derivation& d, std::string_view what);

// --------------------------------------------------------- smart constructors
//
// These compute conclusions and details from premisses; they do not check
// side conditions.

namespace rules {

Derivation ax(SystemId s, Context ctx, std::string x, Type a);
Derivation omega(SystemId s, Context ctx, Term subject);
/// (->I) or (R->) depending on the system; the binder's single premiss
/// binding is discharged.
Derivation abs(SystemId s, std::string binder, Derivation body);
/// Same as abs but keeps a given (alpha-equal) conclusion subject.
Derivation abs_as(SystemId s, Term subject, std::string binder, Derivation body);
Derivation arr_e(SystemId s, Derivation fun, Derivation arg);
Derivation cap_i(SystemId s, Derivation left, Derivation right);
Derivation cap_e_left(SystemId s, Derivation d);
Derivation cap_e_right(SystemId s, Derivation d);
/// (Beta)s when `arg_typing` is given, else (Beta)l. `subject` is the redex spine.
Derivation beta(SystemId s, Term subject, Derivation contractum,
                std::optional<Derivation> arg_typing);
/// Conclusion context: explicit, defaulting to first.context + {x : a1 -> a2}.
Derivation l_arr(SystemId s, std::string x, Derivation first, std::string y, Derivation rest,
                 std::optional<Context> conclusion_context = std::nullopt);
Derivation l_cap(SystemId s, Context conclusion_context, std::string x, Type a1, Type a2,
                 Derivation premiss);
Derivation r_cap(SystemId s, Derivation left, Derivation right);
/// (R&) or (&I) depending on the system.
Derivation meet(SystemId s, Derivation left, Derivation right);

}  // namespace rules

// ---------------------------------------------------------------- exchange

/// `(Rule (ctx "x:A" ...) (term "...") (type "...") <detail>* <premiss>*)`
std::string to_sexpr(const Derivation& d);
Derivation parse_derivation(std::string_view text, SystemId system);

}  // namespace itlab
