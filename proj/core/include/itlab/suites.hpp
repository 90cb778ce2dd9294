#pragma once

// Named property suites over the term corpora. Each suite re-checks every
// derivation it produces and reports counterexamples rather than throwing.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "itlab/reduce.hpp"

namespace itlab {

struct SuiteOptions {
  std::size_t max_size = 7;  // exhaustive closed corpus
  std::size_t sample_count = 1000;
  std::size_t sample_max_size = 12;
  std::uint64_t seed = 2024;
  std::size_t fuel = kDefaultSnFuel;
  std::size_t wn_fuel = kDefaultWnFuel;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SuiteReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t excluded = 0;  // the oracle gave no verdict
  std::size_t transforms = 0;
  std::size_t transform_failures = 0;
  std::vector<std::string> counterexamples;
  std::vector<std::string> notes;
  double seconds = 0;

  bool ok() const noexcept { return counterexamples.empty() && transform_failures == 0; }
  /// One line: name, verdict, counts, time.
  std::string summary() const;
};

std::vector<std::string> suite_names();
/// Closed terms up to max_size followed by the seeded sample.
std::vector<Term> suite_corpus(const SuiteOptions& options);
/// Throws PreconditionViolation for an unknown name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& options = {});

}  // namespace itlab
