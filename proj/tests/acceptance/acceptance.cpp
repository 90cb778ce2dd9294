// One pass/fail line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "itlab/errors.hpp"
#include "itlab/suites.hpp"
#include "itlab/typability.hpp"
#include "leq_oracle.hpp"

using namespace itlab;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::size_t transform_failures = 0;
std::size_t transforms = 0;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int n, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " [" << n << "] " << name << ": " << detail << std::endl;
}

void example_criterion() {
  const auto t0 = Clock::now();
  bool ok = false;
  std::string detail;
  try {
    const SnTyping t = type_sn(parse_term("\\x. x x"));
    const Type want = parse_type("t0 & (t0 -> t1) -> t1");
    const bool valid = check_derivation(t.derivation).ok() && is_sequent(t.derivation.system());
    const bool equiv = leq(t.type, want) && leq(want, t.type);
    const double secs = since(t0);
    ok = valid && equiv && t.context.empty() && secs < 1.0;
    detail = "type " + to_string(t.type) + (valid ? ", valid" : ", INVALID") + ", " + std::to_string(secs) + "s";
  } catch (const Error& e) {
    detail = e.what();
  }
  report(1, "self-application example", ok, detail);
}

void suite_criterion(int n, const std::string& label, const std::string& suite, double limit_seconds) {
  SuiteReport r;
  try {
    r = run_suite(suite);
  } catch (const Error& e) {
    report(n, label, false, e.what());
    return;
  }
  transforms += r.transforms;
  transform_failures += r.transform_failures;
  std::string detail = r.summary();
  if (!r.counterexamples.empty()) detail += "; first counterexample: " + r.counterexamples.front();
  report(n, label, r.ok() && r.seconds < limit_seconds, detail);
}

void leq_criterion() {
  const auto t0 = Clock::now();
  std::size_t pairs = 0, disagreements = 0;
  std::string first;
  for (const bool omega : {false, true}) {
    const itlab::testing::LeqClosure oracle(itlab::testing::type_universe({"a", "b"}, 5, omega), omega);
    for (const Type& a : oracle.universe()) {
      for (const Type& b : oracle.universe()) {
        ++pairs;
        if ((omega ? leq_omega(a, b) : leq(a, b)) == oracle.holds(a, b)) continue;
        if (disagreements++ == 0) first = a.text() + (omega ? " <=w " : " <= ") + b.text();
      }
    }
  }
  const double secs = since(t0);
  std::string detail = std::to_string(pairs) + " pairs, " + std::to_string(disagreements) + " disagreements, " +
                       std::to_string(secs) + "s";
  if (!first.empty()) detail += "; first: " + first;
  report(6, "preorder decision", disagreements == 0 && secs < 60.0, detail);
}

}  // namespace

int main() {
  example_criterion();
  suite_criterion(2, "SN characterisation", "sn", 600);
  suite_criterion(3, "typed implies SN", "typed-sn", 600);
  suite_criterion(4, "WN characterisation", "wn", 600);
  suite_criterion(5, "system equivalences", "translations", 600);
  leq_criterion();
  suite_criterion(7, "approximation round trip", "approx", 600);
  report(8, "transformer totality", transform_failures == 0 && transforms > 0,
         std::to_string(transforms) + " invocations, " + std::to_string(transform_failures) + " failures");
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
