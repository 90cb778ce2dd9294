#include "itlab/corpus.hpp"

#include <limits>
#include <map>
#include <random>
#include <set>

#include "itlab/errors.hpp"
#include "itlab/reduce.hpp"

namespace itlab {

namespace {

std::string binder_name(std::size_t depth) {
  static const char* const kNames[] = {"x", "y", "z", "u", "v", "w"};
  return depth < 6 ? kNames[depth] : "x" + std::to_string(depth);
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Terms are built over de Bruijn depth so that each alpha class appears once.
class Builder {
 public:
  explicit Builder(const CorpusSpec& spec) : spec_(spec) {}

  std::size_t leaves(std::size_t depth) const {
    return depth + (spec_.closed_only ? 0 : spec_.free_vars.size()) + (spec_.include_bottom ? 1 : 0);
  }

  Term leaf(std::size_t depth, std::size_t i) const {
    if (i < depth) return Term::var(binder_name(i));
    i -= depth;
    if (!spec_.closed_only) {
      if (i < spec_.free_vars.size()) return Term::var(spec_.free_vars[i]);
      i -= spec_.free_vars.size();
    }
    return Term::bottom();
  }

  std::uint64_t count(std::size_t size, std::size_t depth) {
    if (size == 0) return 0;
    if (size == 1) return leaves(depth);
    auto key = std::make_pair(size, depth);
    if (auto it = counts_.find(key); it != counts_.end()) return it->second;
    std::uint64_t n = count(size - 1, depth + 1);
    for (std::size_t k = 1; k <= size - 2; ++k) {
      n = sat_add(n, sat_mul(count(k, depth), count(size - 1 - k, depth)));
    }
    counts_[key] = n;
    return n;
  }

  const std::vector<Term>& all(std::size_t size, std::size_t depth) {
    auto key = std::make_pair(size, depth);
    if (auto it = terms_.find(key); it != terms_.end()) return it->second;
    std::vector<Term> out;
    if (size == 1) {
      for (std::size_t i = 0; i < leaves(depth); ++i) out.push_back(leaf(depth, i));
    } else if (size > 1) {
      for (const Term& b : all(size - 1, depth + 1)) out.push_back(Term::lam(binder_name(depth), b));
      for (std::size_t k = 1; k <= size - 2; ++k) {
        const std::vector<Term> funs = all(k, depth);
        const std::vector<Term>& args = all(size - 1 - k, depth);
        for (const Term& f : funs) {
          for (const Term& a : args) out.push_back(Term::app(f, a));
        }
      }
    }
    return terms_[key] = std::move(out);
  }

  // The index-th term of `all(size, depth)` without materialising the list.
  Term nth(std::size_t size, std::size_t depth, std::uint64_t index) {
    if (size == 1) return leaf(depth, static_cast<std::size_t>(index));
    const std::uint64_t lams = count(size - 1, depth + 1);
    if (index < lams) return Term::lam(binder_name(depth), nth(size - 1, depth + 1, index));
    index -= lams;
    for (std::size_t k = 1; k <= size - 2; ++k) {
      const std::uint64_t nf = count(k, depth);
      const std::uint64_t na = count(size - 1 - k, depth);
      const std::uint64_t block = sat_mul(nf, na);
      if (index < block) return Term::app(nth(k, depth, index / na), nth(size - 1 - k, depth, index % na));
      index -= block;
    }
    fail(ErrorCode::Internal, "sample index out of range");
  }

 private:
  const CorpusSpec& spec_;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> counts_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> terms_;
};

}  // namespace

std::vector<Term> enumerate_terms(const CorpusSpec& spec) {
  if (spec.max_size < 1) fail(ErrorCode::PreconditionViolation, "max_size must be at least 1");
  Builder b(spec);
  std::vector<Term> out;
  for (std::size_t n = 1; n <= spec.max_size; ++n) {
    const std::vector<Term>& level = b.all(n, 0);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::uint64_t count_terms(std::size_t size, const CorpusSpec& spec) {
  Builder b(spec);
  return b.count(size, 0);
}

std::vector<Term> sample_terms(const CorpusSpec& spec, std::size_t count) {
  Builder b(spec);
  std::vector<std::size_t> sizes;
  std::uint64_t total = 0;
  for (std::size_t n = 1; n <= spec.max_size; ++n) {
    const std::uint64_t c = b.count(n, 0);
    if (c > 0) sizes.push_back(n);
    total = sat_add(total, c);
  }
  std::vector<Term> out;
  if (sizes.empty()) return out;
  const std::uint64_t want = std::min<std::uint64_t>(count, total);
  std::mt19937_64 rng(spec.seed);
  std::set<std::string> seen;
  std::uniform_int_distribution<std::size_t> pick_size(0, sizes.size() - 1);
  while (out.size() < want) {
    const std::size_t n = sizes[pick_size(rng)];
    std::uniform_int_distribution<std::uint64_t> pick(0, b.count(n, 0) - 1);
    Term t = b.nth(n, 0, pick(rng));
    if (seen.insert(canonical_key(t)).second) out.push_back(std::move(t));
  }
  return out;
}

std::vector<Term> wn_not_sn_family() {
  const Term delta = Term::lam("w", Term::app(Term::var("w"), Term::var("w")));
  const Term omega = Term::app(delta, delta);
  const Term k = Term::lam("x", Term::lam("y", Term::var("x")));
  CorpusSpec spec;
  spec.max_size = 5;
  std::vector<Term> out;
  for (const Term& n : enumerate_terms(spec)) {
    if (!is_normal(n)) continue;
    out.push_back(Term::app(Term::lam("d", n), omega));
    out.push_back(Term::app(Term::app(k, n), omega));
  }
  return out;
}

}  // namespace itlab
