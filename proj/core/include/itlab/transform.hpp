#pragma once

// Constructive lemmas and translation theorems as derivation-to-derivation
// functions. Every function returns a fresh tree; inputs are never modified.
// Variables introduced here come from fresh_name() and cannot clash with
// user identifiers.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "itlab/derivation.hpp"

namespace itlab {

// ------------------------------------------------------------ both styles

/// Adds x:a to every context of d, renaming local binders and (L->) fresh
/// variables that would clash. Natural-deduction derivations require x to
/// be unbound in the root context (VariableNotFresh otherwise).
Derivation weaken_seq(const Derivation& d, const std::string& x, const Type& a);
Derivation weaken_nd(const Derivation& d, const std::string& x, const Type& a);
/// Weakens by every binding of `extra` not already in the root context.
Derivation weaken_by(const Derivation& d, const Context& extra);

/// Renames the free variable y to x everywhere. x must not occur in the root
/// context nor free in the root subject.
Derivation rename_var(const Derivation& d, const std::string& y, const std::string& x);

// ---------------------------------------------------------- sequent style

/// Gamma |- M : A -> B  to  Gamma, x:A |- M x : B.
Derivation app_var(const Derivation& d, const std::string& x);

/// Gamma |- M : A & B  to  (Gamma |- M : A, Gamma |- M : B).
std::pair<Derivation, Derivation> inters_inv(const Derivation& d);

/// d proves Gamma, x:A1, ..., x:Am |- P : B; n_derivs prove Gamma |- N : Ai
/// (one per Ai, any order). Returns Gamma |- P[x:=N] : B.
Derivation subst_closure(const Derivation& d, const std::string& x,
                         const std::vector<Derivation>& n_derivs);

/// Gamma |- M : A -> B and Gamma |- N : A  to  Gamma |- M N : B.
Derivation app_closure(const Derivation& dm, const Derivation& dn);

/// Gamma, x:a1&a2 |- M : B  to  Gamma, x:a1, x:a2 |- M : B.
Derivation split_binding(const Derivation& d, const std::string& x, const Type& a1,
                         const Type& a2);
/// Gamma, x:a1, x:a2 |- M : B  to  Gamma, x:a1&a2 |- M : B.
Derivation merge_binding(const Derivation& d, const std::string& x, const Type& a1,
                         const Type& a2);
/// Merges all bindings of x into one, folding the types in canonical order.
Derivation merge_all(const Derivation& d, const std::string& x);

/// ls -> ll and lsw -> llw: drops the argument premiss of every (Beta)s.
Derivation betas_to_betal(const Derivation& d);
/// llw (or ll) -> lsw: types every dropped argument with (omega).
Derivation betal_to_betas(const Derivation& d);
/// llw -> ll; throws OmegaFound naming the first node that mentions omega.
Derivation omega_erase(const Derivation& d);

// -------------------------------------------------------- natural deduction

/// Gamma |- M : A and A <= b (<=_omega in ndw)  to  Gamma |- M : b.
Derivation le_closure(const Derivation& d, const Type& b);

struct AppPiece {
  Derivation fun;  // Gamma |- M : Bi -> Ai
  Derivation arg;  // Gamma |- N : Bi
};
/// Generation for applications. Throws OmegaDominatedType when omega <= A.
std::vector<AppPiece> gen_app(const Derivation& d);

struct AbsPiece {
  std::string binder;  // as used in body's context
  Derivation body;     // Gamma, binder:Bi |- M' : Ci
};
std::vector<AbsPiece> gen_abs(const Derivation& d);

/// Gamma, x:A |- P : B and Gamma |- N : A  to  Gamma |- P[x:=N] : B.
Derivation nd_subst(const Derivation& d, const std::string& x, const Derivation& dn);

/// Retypes and weakens an ND derivation into `target`: every variable of the
/// root context must be bound in target to a type <= its old type.
Derivation adapt_context(const Derivation& d, const Context& target);
/// Drops x from every context; x must not be used by any (Ax) node.
Derivation strengthen(const Derivation& d, const std::string& x);

struct InvSubst {
  Type c;
  Derivation dm;  // Gamma, x:C |- m : A
  Derivation dn;  // Gamma |- N : C
};
/// dsub proves Gamma |- m[x:=n] : A. In nd the typing of n is required.
InvSubst inv_subst(const Derivation& dsub, const Term& m, const std::string& x, const Term& n,
                   const std::optional<Derivation>& dn_opt);

/// d proves Gamma |- step(m, p) : A in ndw; returns Gamma |- m : A.
Derivation subject_expand(const Derivation& d, const Term& m, const Position& p);

// ---------------------------------------------------------------- bridges

/// nd -> ls, ndw -> lsw, same root sequent.
Derivation nd_to_seq(const Derivation& d);
/// ls -> nd; lsw, ll, llw -> ndw. The root context is collapsed.
Derivation seq_to_nd(const Derivation& d);
SystemId nd_target(SystemId sequent_system);

}  // namespace itlab
