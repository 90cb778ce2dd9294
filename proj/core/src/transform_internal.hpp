#pragma once

#include <optional>
#include <string>

#include "itlab/derivation.hpp"

namespace itlab::detail {

inline Derivation remake(const Derivation& d, Context ctx, Term subject, RuleDetail det,
                         std::vector<Derivation> premisses) {
  return Derivation::make(d.system(), d.rule(), Sequent{std::move(ctx), std::move(subject), d.type()},
                          std::move(det), std::move(premisses));
}

/// Redex components of a (Beta) subject.
RuleDetail redex_detail(const Term& subject);

Context rename_in_context(const Context& c, const std::string& y, const std::string& x);

/// Shared by subject expansion and the sequent-to-ND bridge: d types
/// step(m, p); returns a typing of m. ND needs the redex argument typing.
Derivation expand_redex(const Derivation& d, const Term& m, const Position& p,
                        const std::optional<Derivation>& dn_opt);

}  // namespace itlab::detail
