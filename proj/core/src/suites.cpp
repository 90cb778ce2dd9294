#include "itlab/suites.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <thread>

#include "itlab/approx.hpp"
#include "itlab/corpus.hpp"
#include "itlab/errors.hpp"
#include "itlab/transform.hpp"
#include "itlab/typability.hpp"
#include "strcat.hpp"

namespace itlab {

std::string SuiteReport::summary() const {
  return detail::cat(name, ": ", ok() ? "PASS" : "FAIL", " cases=", cases, " excluded=", excluded,
                     " transforms=", transforms, " transform_failures=", transform_failures,
                     " counterexamples=", counterexamples.size(), " seconds=",
                     std::to_string(seconds));
}

namespace {

struct Partial {
  std::size_t cases = 0;
  std::size_t excluded = 0;
  std::size_t transforms = 0;
  std::size_t failures = 0;
  std::size_t marks = 0;
  std::vector<std::string> counterexamples;
  std::vector<std::string> notes;
};

// Records every derivation a transformer hands back, re-checked on the spot.
class Recorder {
 public:
  Recorder(Partial& p, const Term& t) : p_(p), t_(t) {}

  void counterexample(std::string_view msg) {
    p_.counterexamples.push_back(detail::cat(to_string(t_), ": ", msg));
  }
  void note(std::string_view msg) { p_.notes.push_back(detail::cat(to_string(t_), ": ", msg)); }
  Partial& partial() { return p_; }

  bool accept(const Derivation& d, std::string_view what, const std::optional<Sequent>& root) {
    ++p_.transforms;
    const CheckReport r = check_derivation(d);
    if (!r.ok()) {
      ++p_.failures;
      counterexample(detail::cat(what, " produced an invalid derivation: ", r.to_string()));
      return false;
    }
    if (root && !same_sequent(d.conclusion(), *root)) {
      ++p_.failures;
      counterexample(detail::cat(what, " concluded ", to_string(d.conclusion()), ", expected ",
                                 to_string(*root)));
      return false;
    }
    return true;
  }

  std::optional<Derivation> attempt(std::string_view what, const std::function<Derivation()>& f,
                                    const std::optional<Sequent>& root = std::nullopt) {
    try {
      Derivation d = f();
      if (accept(d, what, root)) return d;
    } catch (const Error& e) {
      ++p_.transforms;
      ++p_.failures;
      counterexample(detail::cat(what, " threw ", e.what()));
    }
    return std::nullopt;
  }

 private:
  Partial& p_;
  const Term& t_;
};

using PerTerm = std::function<void(const Term&, Recorder&)>;

void run_over(SuiteReport& report, const std::vector<Term>& terms, unsigned threads, const PerTerm& fn) {
  std::vector<Partial> parts(terms.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < terms.size();) {
      Recorder rec(parts[i], terms[i]);
      try {
        fn(terms[i], rec);
      } catch (const std::exception& e) {
        rec.counterexample(detail::cat("unexpected exception: ", e.what()));
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (Partial& p : parts) {
    report.cases += p.cases;
    report.excluded += p.excluded;
    report.transforms += p.transforms;
    report.transform_failures += p.failures;
    for (std::string& s : p.counterexamples) report.counterexamples.push_back(std::move(s));
    for (std::string& s : p.notes) report.notes.push_back(std::move(s));
  }
}

std::size_t total_marks(const std::vector<Term>& terms, unsigned threads, const PerTerm& fn,
                        SuiteReport& report) {
  std::atomic<std::size_t> marks{0};
  run_over(report, terms, threads, [&](const Term& t, Recorder& rec) {
    fn(t, rec);
    marks += rec.partial().marks;
  });
  return marks;
}

std::optional<SnTyping> try_type_sn(const Term& t, std::size_t fuel, Recorder& rec) {
  try {
    return type_sn(t, fuel);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FuelExhausted) {
      rec.counterexample(detail::cat("type_sn threw ", e.what()));
    }
  }
  return std::nullopt;
}

std::optional<WnTyping> try_type_wn(const Term& t, std::size_t fuel, Recorder& rec) {
  try {
    return type_wn(t, fuel);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::FuelExhausted) {
      rec.counterexample(detail::cat("type_wn threw ", e.what()));
    }
  }
  return std::nullopt;
}

Sequent root_of(const Derivation& d) { return d.conclusion(); }
Sequent collapsed_root(const Derivation& d) { return Sequent{collapse(d.context()), d.subject(), d.type()}; }

bool mentions_omega(const Derivation& d) {
  if (!is_omega_free(d.context()) || !is_omega_free(d.type()) || d.rule() == RuleId::Omega) return true;
  for (const Derivation& p : d.premisses()) {
    if (mentions_omega(p)) return true;
  }
  return false;
}

// ------------------------------------------------------------------ suites

void example_suite(SuiteReport& report, const SuiteOptions& opt) {
  const Term t = parse_term("\\x. x x");
  const Type expected = parse_type("(t0 & (t0 -> t1)) -> t1");
  run_over(report, {t}, 1, [&](const Term& m, Recorder& rec) {
    ++rec.partial().cases;
    std::optional<SnTyping> ty = try_type_sn(m, opt.fuel, rec);
    if (!ty) return rec.counterexample("type_sn failed");
    if (!rec.accept(ty->derivation, "type_sn", Sequent{Context{}, m, expected})) return;
    if (!(leq(ty->type, expected) && leq(expected, ty->type))) {
      rec.counterexample(detail::cat("type ", ty->type.text(), " is not equivalent to ", expected.text()));
    }
  });
}

void sn_suite(SuiteReport& report, const SuiteOptions& opt) {
  run_over(report, suite_corpus(opt), opt.threads, [&](const Term& m, Recorder& rec) {
    ++rec.partial().cases;
    const SnEvidence ev = check_sn(m, opt.fuel);
    if (ev.verdict == SnVerdict::Unknown) {
      ++rec.partial().excluded;
      return rec.note("check_sn gave no verdict");
    }
    std::optional<SnTyping> ty = try_type_sn(m, opt.fuel, rec);
    const bool sn = ev.verdict == SnVerdict::SN;
    if (sn != ty.has_value()) {
      return rec.counterexample(detail::cat("check_sn says ", sn ? "SN" : "NonSN", " but type_sn ",
                                            ty ? "succeeded" : "ran out of fuel"));
    }
    if (!ty) return;
    rec.accept(ty->derivation, "type_sn", Sequent{ty->context, m, ty->type});
    const auto census = rule_census(ty->derivation);
    if (auto it = census.find(RuleId::RCap); it != census.end() && it->second > 0) {
      rec.counterexample(detail::cat("type_sn used (R&) ", it->second, " times"));
    }
  });
}

// Sequent-style lemma outputs built from one ls derivation; all stay in ls.
std::vector<Derivation> lemma_derivations(const Derivation& d, Recorder& rec) {
  std::vector<Derivation> out{d};
  const Context& g = d.context();
  const std::string z = fresh_name();
  const Type tz = Type::var("s0");
  auto keep = [&](std::optional<Derivation> r) {
    if (r) out.push_back(std::move(*r));
  };
  keep(rec.attempt("weaken_seq", [&] { return weaken_seq(d, z, tz); },
                   Sequent{g.with(Binding{z, tz}), d.subject(), d.type()}));
  if (d.type().is_arrow()) {
    const Type a = d.type().dom();
    keep(rec.attempt("app_var", [&] { return app_var(d, z); },
                     Sequent{g.with(Binding{z, a}), Term::app(d.subject(), Term::var(z)), d.type().cod()}));
  }
  if (auto both = rec.attempt("r_cap", [&] { return rules::r_cap(SystemId::LS, d, d); })) {
    try {
      auto [l, r] = inters_inv(*both);
      rec.accept(l, "inters_inv", root_of(d));
      rec.accept(r, "inters_inv", root_of(d));
    } catch (const Error& e) {
      rec.counterexample(detail::cat("inters_inv threw ", e.what()));
    }
  }
  keep(rec.attempt("nd round trip", [&] { return nd_to_seq(seq_to_nd(d)); }, collapsed_root(d)));
  if (d.rule() != RuleId::RArr) return out;

  // Gamma, x:B |- P : C from the abstraction; substitute a fresh variable for x.
  const Derivation& body = d.premiss(0);
  const std::string& x = d.detail().var;
  const Type b = d.type().dom();
  const Context gz = g.with(Binding{z, b});
  const Term pz = substitute(body.subject(), x, Term::var(z));
  keep(rec.attempt("subst_closure", [&] {
    return subst_closure(weaken_seq(body, z, b), x, {rules::ax(SystemId::LS, gz, z, b)});
  }, Sequent{gz, pz, body.type()}));
  keep(rec.attempt("app_closure", [&] {
    return app_closure(weaken_seq(d, z, b), rules::ax(SystemId::LS, gz, z, b));
  }, Sequent{gz, Term::app(d.subject(), Term::var(z)), body.type()}));
  if (b.is_inter()) {
    const Context split = g.with(Binding{x, b.left()}).with(Binding{x, b.right()});
    auto s = rec.attempt("split_binding", [&] { return split_binding(body, x, b.left(), b.right()); },
                         Sequent{split, body.subject(), body.type()});
    if (s) {
      keep(rec.attempt("merge_binding", [&] { return merge_binding(*s, x, b.left(), b.right()); },
                       root_of(body)));
      const Context sz = g.with(Binding{z, b.left()}).with(Binding{z, b.right()});
      keep(rec.attempt("subst_closure", [&] {
        Derivation w = weaken_seq(weaken_seq(*s, z, b.left()), z, b.right());
        return subst_closure(w, x, {rules::ax(SystemId::LS, sz, z, b.right()),
                                    rules::ax(SystemId::LS, sz, z, b.left())});
      }, Sequent{sz, pz, body.type()}));
    }
  }
  return out;
}

void typed_sn_suite(SuiteReport& report, const SuiteOptions& opt) {
  run_over(report, suite_corpus(opt), opt.threads, [&](const Term& m, Recorder& rec) {
    std::optional<SnTyping> ty = try_type_sn(m, opt.fuel, rec);
    if (!ty) return;
    if (!rec.accept(ty->derivation, "type_sn", std::nullopt)) return;
    for (const Derivation& d : lemma_derivations(ty->derivation, rec)) {
      ++rec.partial().cases;
      const SnEvidence ev = check_sn(d.subject(), opt.fuel);
      if (ev.verdict == SnVerdict::Unknown) {
        ++rec.partial().excluded;
        rec.note(detail::cat("no verdict for ", to_string(d.subject())));
      } else if (ev.verdict != SnVerdict::SN) {
        rec.counterexample(detail::cat("typed in ls but not SN: ", to_string(d.subject())));
      }
      // The same tree without argument premisses is an ll derivation; ll-typed terms normalise.
      if (auto l = rec.attempt("betas_to_betal", [&] { return betas_to_betal(d); }, root_of(d))) {
        if (!normalize_lo(l->subject(), opt.wn_fuel).normalised) {
          rec.counterexample(detail::cat("typed in ll but no normal form: ", to_string(l->subject())));
        }
      }
    }
  });
}

void wn_case(const Term& m, Recorder& rec, const SuiteOptions& opt, bool family) {
  ++rec.partial().cases;
  const WnEvidence ev = normalize_lo(m, opt.wn_fuel);
  std::optional<WnTyping> ty = try_type_wn(m, opt.wn_fuel, rec);
  if (ev.normalised != ty.has_value()) {
    return rec.counterexample(detail::cat("normalize_lo ", ev.normalised ? "succeeded" : "failed",
                                          " but type_wn ", ty ? "succeeded" : "failed"));
  }
  if (ty) {
    rec.accept(ty->derivation, "type_wn", Sequent{ty->context, m, ty->type});
    if (!is_omega_free(ty->context) || !is_omega_free(ty->type)) {
      rec.counterexample(detail::cat("type_wn root mentions omega: ", to_string(ty->derivation.conclusion())));
    }
    if (!replays(ty->trace) || !alpha_eq(ty->trace.start, m) || !is_normal(ty->trace.end())) {
      rec.counterexample("type_wn returned a bad trace");
    }
  }
  if (!family) return;
  const SnEvidence sn = check_sn(m, opt.fuel);
  if (sn.verdict == SnVerdict::SN) return rec.counterexample("family member is SN");
  const bool exhausted = !try_type_sn(m, opt.fuel, rec).has_value();
  if (!exhausted) return rec.counterexample("type_sn typed a term that is not SN");
  if (sn.verdict == SnVerdict::Unknown) rec.note("check_sn gave no verdict on a family member");
  if (ty) ++rec.partial().marks;
}

void wn_suite(SuiteReport& report, const SuiteOptions& opt) {
  run_over(report, suite_corpus(opt), opt.threads,
           [&](const Term& m, Recorder& rec) { wn_case(m, rec, opt, false); });
  const std::vector<Term> family = wn_not_sn_family();
  const std::size_t confirmed = total_marks(
      family, opt.threads, [&](const Term& m, Recorder& rec) { wn_case(m, rec, opt, true); }, report);
  report.notes.push_back(detail::cat("wn-not-sn confirmed: ", confirmed, " of ", family.size()));
  if (confirmed < 25) report.counterexamples.push_back(detail::cat("only ", confirmed, " WN-not-SN terms"));
}

void translations_suite(SuiteReport& report, const SuiteOptions& opt) {
  run_over(report, suite_corpus(opt), opt.threads, [&](const Term& m, Recorder& rec) {
    if (std::optional<SnTyping> ty = try_type_sn(m, opt.fuel, rec)) {
      ++rec.partial().cases;
      const Derivation& d = ty->derivation;
      if (auto nd = rec.attempt("seq_to_nd", [&] { return seq_to_nd(d); }, collapsed_root(d))) {
        rec.attempt("nd_to_seq", [&] { return nd_to_seq(*nd); }, root_of(*nd));
      }
      if (auto l = rec.attempt("betas_to_betal", [&] { return betas_to_betal(d); }, root_of(d))) {
        rec.attempt("seq_to_nd", [&] { return seq_to_nd(*l); }, collapsed_root(d));
        if (auto sw = rec.attempt("betal_to_betas", [&] { return betal_to_betas(*l); }, root_of(d))) {
          if (auto lw = rec.attempt("betas_to_betal", [&] { return betas_to_betal(*sw); }, root_of(d))) {
            rec.attempt("omega_erase", [&] { return omega_erase(*lw); }, root_of(d));
          }
        }
      }
    }
    if (std::optional<WnTyping> ty = try_type_wn(m, opt.wn_fuel, rec)) {
      ++rec.partial().cases;
      const Derivation& e = ty->derivation;
      auto s = rec.attempt("nd_to_seq", [&] { return nd_to_seq(e); }, root_of(e));
      if (!s) return;
      rec.attempt("seq_to_nd", [&] { return seq_to_nd(*s); }, root_of(e));
      auto l = rec.attempt("betas_to_betal", [&] { return betas_to_betal(*s); }, root_of(e));
      if (!l) return;
      rec.attempt("seq_to_nd", [&] { return seq_to_nd(*l); }, root_of(e));
      rec.attempt("betal_to_betas", [&] { return betal_to_betas(*l); }, root_of(e));
      try {
        rec.accept(omega_erase(*l), "omega_erase", root_of(e));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::OmegaFound || !mentions_omega(*l)) {
          ++rec.partial().transforms;
          ++rec.partial().failures;
          rec.counterexample(detail::cat("omega_erase threw ", err.what()));
        }
      }
    }
  });
}

void approx_round_trip(const Derivation& l, Recorder& rec) {
  ++rec.partial().cases;
  const Term& m = l.subject();
  std::optional<Approximation> found;
  try {
    found = approximate(l);
  } catch (const Error& e) {
    ++rec.partial().transforms;
    ++rec.partial().failures;
    return rec.counterexample(detail::cat("approximate threw ", e.what()));
  }
  const Approximation& a = *found;
  if (!rec.accept(a.derivation, "approximate", Sequent{l.context(), alpha_map(a.m_prime), l.type()})) return;
  if (!replays(a.trace) || !alpha_eq(a.trace.start, m) || !alpha_eq(a.trace.end(), a.m_prime)) {
    return rec.counterexample("approximate returned a bad trace");
  }
  const Context g = collapse(l.context());
  auto nd = rec.attempt("seq_to_nd", [&] { return seq_to_nd(a.derivation); },
                        Sequent{g, a.derivation.subject(), l.type()});
  if (!nd) return;
  const std::optional<ApproxOrder> w = approx_order(alpha_map(a.m_prime), a.m_prime);
  if (!w) return rec.counterexample("the approximant is not below its term");
  auto u = rec.attempt("unapproximate", [&] { return unapproximate(*nd, a.m_prime, *w); },
                       Sequent{g, a.m_prime, l.type()});
  if (!u) return;
  Derivation cur = *u;
  const auto& steps = a.trace.steps;
  for (std::size_t i = steps.size(); i-- > 0;) {
    const Term& before = i == 0 ? a.trace.start : steps[i - 1].result;
    auto e = rec.attempt("subject_expand", [&] { return subject_expand(cur, before, steps[i].position); },
                         Sequent{g, before, l.type()});
    if (!e) return;
    cur = *e;
  }
  if (!same_sequent(cur.conclusion(), Sequent{g, m, l.type()})) {
    rec.counterexample(detail::cat("round trip ended at ", to_string(cur.conclusion())));
  }
}

void approx_suite(SuiteReport& report, const SuiteOptions& opt) {
  run_over(report, suite_corpus(opt), opt.threads, [&](const Term& m, Recorder& rec) {
    if (std::optional<WnTyping> ty = try_type_wn(m, opt.wn_fuel, rec)) {
      if (auto l = rec.attempt("betas_to_betal", [&] { return betas_to_betal(nd_to_seq(ty->derivation)); })) {
        approx_round_trip(*l, rec);
      }
    }
    if (std::optional<SnTyping> ty = try_type_sn(m, opt.fuel, rec)) {
      if (auto l = rec.attempt("betas_to_betal", [&] {
            return betas_to_betal(betal_to_betas(betas_to_betal(ty->derivation)));
          })) {
        approx_round_trip(*l, rec);
      }
    }
  });
}

struct Entry {
  const char* name;
  void (*run)(SuiteReport&, const SuiteOptions&);
};

constexpr Entry kSuites[] = {
    {"example", example_suite},   {"sn", sn_suite},
    {"typed-sn", typed_sn_suite}, {"wn", wn_suite},
    {"translations", translations_suite}, {"approx", approx_suite},
};

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const Entry& e : kSuites) out.emplace_back(e.name);
  return out;
}

std::vector<Term> suite_corpus(const SuiteOptions& options) {
  CorpusSpec exhaustive;
  exhaustive.max_size = options.max_size;
  std::vector<Term> out = enumerate_terms(exhaustive);
  if (options.sample_count > 0) {
    CorpusSpec sampled;
    sampled.max_size = options.sample_max_size;
    sampled.seed = options.seed;
    for (Term& t : sample_terms(sampled, options.sample_count)) out.push_back(std::move(t));
  }
  return out;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  for (const Entry& e : kSuites) {
    if (name != e.name) continue;
    SuiteReport report;
    report.name = e.name;
    const auto start = std::chrono::steady_clock::now();
    e.run(report, options);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  fail(ErrorCode::PreconditionViolation, detail::cat("unknown suite ", name));
}

}  // namespace itlab
