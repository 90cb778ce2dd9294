#pragma once

// Term corpora for the property suites: exhaustive enumeration up to alpha,
// seeded uniform sampling, and a family of weakly but not strongly
// normalising terms.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "itlab/term.hpp"

namespace itlab {

struct CorpusSpec {
  std::size_t max_size = 7;
  bool closed_only = true;
  bool include_bottom = false;
  std::uint64_t seed = 0;
  /// Names available for free variables when closed_only is false.
  std::vector<std::string> free_vars{"a", "b"};
};

/// All alpha-distinct terms of size 1..max_size, ordered by size and then by
/// construction order (variables, abstractions, applications). Binders are
/// named by their depth: x, y, z, u, v, w, x6, x7, ...
std::vector<Term> enumerate_terms(const CorpusSpec& spec);

/// Number of alpha-distinct terms of exactly `size` nodes; saturates at
/// UINT64_MAX.
std::uint64_t count_terms(std::size_t size, const CorpusSpec& spec);

/// `count` alpha-distinct terms: a size is drawn uniformly from the
/// non-empty sizes up to max_size, then a term uniformly of that size.
/// Deterministic in spec.seed.
std::vector<Term> sample_terms(const CorpusSpec& spec, std::size_t count);

/// Terms of the shapes (\x.N) Omega and (\x y.x) N Omega for every closed
/// normal N of size <= 5.
std::vector<Term> wn_not_sn_family();

}  // namespace itlab
