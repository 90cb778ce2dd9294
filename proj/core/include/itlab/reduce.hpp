#pragma once

// Beta reduction and the normalisation oracles the type systems are
// validated against. Verdicts are three-valued: nothing is claimed without
// evidence, and running out of fuel yields Unknown.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "itlab/term.hpp"

namespace itlab {

inline constexpr std::size_t kDefaultSnFuel = 10'000;
inline constexpr std::size_t kDefaultWnFuel = 1'000;
inline constexpr std::size_t kDefaultBfsFuel = 10'000;
/// Exploration gives up (Unknown) once a term grows beyond this many nodes.
inline constexpr std::size_t kMaxExploredTermSize = 20'000;

struct ReductionStep {
  Position position;
  Term result;
};

struct ReductionTrace {
  Term start;
  std::vector<ReductionStep> steps;

  const Term& end() const { return steps.empty() ? start : steps.back().result; }
  std::size_t length() const noexcept { return steps.size(); }
};

/// True iff every step contracts a redex at its position and yields the
/// recorded term (up to alpha).
bool replays(const ReductionTrace& trace);

/// Header line `start <term>` followed by `<position> -> <term>` lines.
std::string to_string(const ReductionTrace& trace);
ReductionTrace parse_trace(std::string_view text, ParseOptions options = {});

/// Appends `tail` (which must start where `head` ends).
ReductionTrace concat(const ReductionTrace& head, const ReductionTrace& tail);
/// Lifts a trace of a subterm into the context that holds it at `at`.
ReductionTrace embed(const ReductionTrace& trace, const Term& context, const Position& at);

enum class SnVerdict { SN, NonSN, Unknown };

struct SnEvidence {
  SnVerdict verdict = SnVerdict::Unknown;
  std::size_t max_len = 0;          // SN: exact maximal reduction length
  std::optional<ReductionTrace> loop_witness;  // NonSN: ends alpha-equal to an earlier term
  std::size_t fuel_spent = 0;
};

struct WnEvidence {
  bool normalised = false;
  std::optional<Term> normal_form;
  ReductionTrace trace;
  std::size_t fuel_spent = 0;
};

/// Redex positions in pre-order (node, fun, arg, body): leftmost-outermost first.
std::vector<Position> redexes(const Term& t);
bool is_normal(const Term& t);

/// Contracts the redex at p; throws NotARedex otherwise.
Term step(const Term& t, const Position& p);

WnEvidence normalize_lo(const Term& t, std::size_t fuel = kDefaultWnFuel);

/// Exhaustive depth-first exploration of the reduction graph with per-path
/// loop detection and a per-call memo of maximal lengths.
SnEvidence check_sn(const Term& t, std::size_t fuel = kDefaultSnFuel);

struct CommonReduct {
  Term meet;
  ReductionTrace from_first;   // starts at the end of the first trace
  ReductionTrace from_second;  // starts at the end of the second trace
};

/// Breadth-first intersection of the forward reduction graphs of both
/// endpoints; nullopt when fuel runs out first.
std::optional<CommonReduct> common_reduct(const Term& m, const ReductionTrace& first,
                                          const ReductionTrace& second,
                                          std::size_t fuel = kDefaultBfsFuel);

}  // namespace itlab
