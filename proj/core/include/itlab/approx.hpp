#pragma once

// Direct approximants and the approximation theorem in both directions.

#include <optional>
#include <vector>

#include "itlab/derivation.hpp"
#include "itlab/reduce.hpp"

namespace itlab {

/// Witness for P below Q: the positions of Q where P has Bottom. Elsewhere
/// the two terms agree up to alpha.
struct ApproxOrder {
  std::vector<Position> bottoms;
};

/// Head redexes become Bottom: \xs. x N1..Nm maps to \xs. x a(N1)..a(Nm),
/// \xs. (\x.M) N N1..Nm maps to \xs. Bottom.
Term alpha_map(const Term& m);

/// Computes the witness for p below q, if there is one.
std::optional<ApproxOrder> approx_order(const Term& p, const Term& q);
/// Q with Bottom at every witness position.
Term approx_lower(const Term& q, const ApproxOrder& w);

/// d types alpha_map(trace.start); returns the same judgement for the end.
Derivation approx_typing_step(const Derivation& d, const ReductionTrace& trace);

struct Combined {
  Term meet;
  Derivation derivation;  // alpha_map(meet) : A & B
  ReductionTrace trace;   // m to meet
};
/// t1 and t2 both start at m; da types alpha_map(t1.end()), db alpha_map(t2.end()).
Combined approx_combine(const Term& m, const ReductionTrace& t1, const Derivation& da,
                        const ReductionTrace& t2, const Derivation& db,
                        std::size_t fuel = kDefaultBfsFuel);

struct Approximation {
  Term m_prime;
  Derivation derivation;  // root context and type of the input, subject alpha_map(m_prime)
  ReductionTrace trace;   // from the input subject to m_prime
};
/// d is a valid llw (or ll) derivation with a Bottom-free subject.
Approximation approximate(const Derivation& d);

/// d proves Gamma |- P : A in ndw with P below q by w; returns Gamma |- q : A.
Derivation unapproximate(const Derivation& d, const Term& q, const ApproxOrder& w);

}  // namespace itlab
