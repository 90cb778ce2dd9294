#pragma once

// Constructive typing of normalising terms: strongly normalising terms get
// a sequent derivation without (R&), weakly normalising ones an ndw
// derivation with omega-free root context and type.

#include <cstddef>

#include "itlab/derivation.hpp"
#include "itlab/reduce.hpp"

namespace itlab {

struct SnTyping {
  Context context;
  Type type;
  Derivation derivation;  // ls
  std::size_t fuel_spent = 0;
};

struct WnTyping {
  Context context;
  Type type;
  Derivation derivation;  // ndw
  ReductionTrace trace;   // leftmost-outermost, m to its normal form
};

/// Fuel counts recursive calls. Fresh type variables are t0, t1, ... in
/// order of creation, so output is deterministic.
SnTyping type_sn(const Term& m, std::size_t fuel = kDefaultSnFuel);

/// `fuel` bounds normalisation; typing the normal form gets kDefaultSnFuel.
WnTyping type_wn(const Term& m, std::size_t fuel = kDefaultWnFuel);

}  // namespace itlab
