#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>

#include "itlab/approx.hpp"
#include "itlab/corpus.hpp"
#include "itlab/derivation.hpp"
#include "itlab/errors.hpp"
#include "itlab/reduce.hpp"
#include "itlab/suites.hpp"
#include "itlab/transform.hpp"
#include "itlab/typability.hpp"

namespace itlab::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

// Thrown for bad input that is not a syntax error in a term or type.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::size_t default_fuel(std::size_t fallback) {
  if (const char* env = std::getenv("ITLAB_FUEL")) {
    try {
      return std::stoul(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("ITLAB_FUEL is not a number: ") + env);
    }
  }
  return fallback;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

SystemId system_arg(const std::string& name) {
  const std::optional<SystemId> s = parse_system(name);
  if (!s) throw UsageError("unknown system " + name);
  return *s;
}

// Files written here start with `;; system: <name>`; readers fall back on it.
std::string derivation_file(const Derivation& d) {
  return ";; system: " + std::string(system_name(d.system())) + "\n" + to_sexpr(d) + "\n";
}

std::optional<SystemId> header_system(const std::string& text) {
  const std::string tag = ";; system:";
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind(tag, 0) != 0) continue;
    std::string name = line.substr(tag.size());
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t\r") + 1);
    return system_arg(name);
  }
  return std::nullopt;
}

Derivation load_derivation(const std::string& path, const std::string& system) {
  const std::string text = read_file(path);
  std::optional<SystemId> s = system.empty() ? header_system(text) : std::optional(system_arg(system));
  if (!s) throw UsageError(path + " has no system header; pass --system");
  return parse_derivation(text, *s);
}

std::string census_line(const Derivation& d) { return to_string(rule_census(d)); }

// Shortest chain of translations and inclusions between two systems.
struct Edge {
  SystemId to;
  std::string via;
};

std::map<SystemId, std::vector<Edge>> translation_graph() {
  using S = SystemId;
  return {
      {S::ND, {{S::LS, "nd_to_seq"}, {S::NDW, "include"}}},
      {S::NDW, {{S::LSW, "nd_to_seq"}}},
      {S::LS, {{S::ND, "seq_to_nd"}, {S::LL, "betas_to_betal"}, {S::LSW, "include"}}},
      {S::LSW, {{S::NDW, "seq_to_nd"}, {S::LLW, "betas_to_betal"}}},
      {S::LL, {{S::NDW, "seq_to_nd"}, {S::LSW, "betal_to_betas"}, {S::LLW, "include"}}},
      {S::LLW, {{S::NDW, "seq_to_nd"}, {S::LSW, "betal_to_betas"}, {S::LL, "omega_erase"}}},
  };
}

std::vector<Edge> translation_path(SystemId from, SystemId to) {
  const auto graph = translation_graph();
  std::map<SystemId, std::pair<SystemId, Edge>> parent;
  std::deque<SystemId> queue{from};
  std::set<SystemId> seen{from};
  while (!queue.empty()) {
    const SystemId s = queue.front();
    queue.pop_front();
    for (const Edge& e : graph.at(s)) {
      if (!seen.insert(e.to).second) continue;
      parent.emplace(e.to, std::make_pair(s, e));
      queue.push_back(e.to);
    }
  }
  if (from != to && !parent.contains(to)) {
    throw UsageError("no translation from " + std::string(system_name(from)) + " to " +
                     std::string(system_name(to)));
  }
  std::vector<Edge> path;
  for (SystemId s = to; s != from; s = parent.at(s).first) path.insert(path.begin(), parent.at(s).second);
  return path;
}

Derivation apply_edge(const Derivation& d, const Edge& e) {
  if (e.via == "include") return d.rebrand(e.to);
  if (e.via == "nd_to_seq") return nd_to_seq(d);
  if (e.via == "seq_to_nd") return seq_to_nd(d);
  if (e.via == "betas_to_betal") return betas_to_betal(d);
  if (e.via == "betal_to_betas") return betal_to_betas(d);
  return omega_erase(d);
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Intersection type systems: derivations, translations and typability"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--porcelain", porcelain_, "Single-line machine-readable output");
    std::function<int()> action;
    setup(app, action);
    try {
      std::vector<std::string> rev(args.rbegin(), args.rend());
      app.parse(rev);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kOk : kUsage;
    }
    try {
      return action();
    } catch (const SyntaxError& e) {
      err_ << "syntax error: " << e.what() << "\n";
      return kUsage;
    } catch (const UsageError& e) {
      err_ << "usage error: " << e.what() << "\n";
      return kUsage;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return kNegative;
    }
  }

 private:
  void setup(CLI::App& app, std::function<int()>& action) {
    auto term_arg = [](CLI::App* c, std::string& into) { c->add_option("term", into, "Lambda term")->required(); };

    auto* parse = app.add_subcommand("parse", "Parse a term and print its canonical form");
    term_arg(parse, term_);
    parse->add_flag("--bottom", bottom_, "Allow _|_ in the term");
    parse->callback([&] { action = [this] { return cmd_parse(); }; });

    auto* reduce = app.add_subcommand("reduce", "Normalise leftmost-outermost or contract one redex");
    reduce->add_option("--strategy", strategy_, "lo or pos")->check(CLI::IsMember({"lo", "pos"}));
    term_arg(reduce, term_);
    reduce->add_option("position", position_, "Redex position for --strategy pos");
    reduce->add_option("--fuel", fuel_, "Step budget");
    reduce->callback([&] { action = [this] { return cmd_reduce(); }; });

    auto* sn = app.add_subcommand("sn", "Decide strong normalisation by exploring the reduction graph");
    term_arg(sn, term_);
    sn->add_option("--fuel", fuel_, "Exploration budget");
    sn->callback([&] { action = [this] { return cmd_sn(); }; });

    auto* wn = app.add_subcommand("wn", "Normalise leftmost-outermost");
    term_arg(wn, term_);
    wn->add_option("--fuel", fuel_, "Step budget");
    wn->callback([&] { action = [this] { return cmd_wn(); }; });

    auto* tsn = app.add_subcommand("type-sn", "Type a strongly normalising term in ls");
    term_arg(tsn, term_);
    tsn->add_option("--fuel", fuel_, "Recursion budget");
    tsn->add_option("--out", out_path_, "Write the derivation here instead of stdout");
    tsn->callback([&] { action = [this] { return cmd_type_sn(); }; });

    auto* twn = app.add_subcommand("type-wn", "Type a weakly normalising term in ndw");
    term_arg(twn, term_);
    twn->add_option("--fuel", fuel_, "Normalisation step budget");
    twn->add_option("--out", out_path_, "Write the derivation here instead of stdout");
    twn->callback([&] { action = [this] { return cmd_type_wn(); }; });

    auto* check = app.add_subcommand("check", "Check a derivation file");
    check->add_option("--system", system_, "nd, ndw, ls, lsw, ll or llw");
    check->add_option("file", file_, "Derivation file")->required();
    check->callback([&] { action = [this] { return cmd_check(); }; });

    auto* translate = app.add_subcommand("translate", "Translate a derivation into another system");
    translate->add_option("--to", target_, "Target system")->required();
    translate->add_option("--system,--from", system_, "Source system (default: file header)");
    translate->add_option("file", file_, "Derivation file")->required();
    translate->add_option("--out", out_path_, "Write the derivation here instead of stdout");
    translate->callback([&] { action = [this] { return cmd_translate(); }; });

    auto* expand = app.add_subcommand("expand", "Subject expansion of an ndw derivation");
    expand->add_option("--system", system_, "Source system (default: file header)");
    expand->add_option("file", file_, "Derivation file")->required();
    expand->add_option("term", term_, "Term that reduces to the derivation's subject")->required();
    expand->add_option("position", position_, "Redex position in the term")->required();
    expand->add_option("--out", out_path_, "Write the derivation here instead of stdout");
    expand->callback([&] { action = [this] { return cmd_expand(); }; });

    auto* leq = app.add_subcommand("leq", "Decide A <= B");
    leq->add_flag("--omega", omega_, "Use <=_omega");
    leq->add_option("a", type_a_, "Smaller type")->required();
    leq->add_option("b", type_b_, "Larger type")->required();
    leq->callback([&] { action = [this] { return cmd_leq(); }; });

    auto* approx = app.add_subcommand("approx", "Approximate an llw derivation");
    approx->add_option("--system", system_, "Source system (default: file header)");
    approx->add_option("file", file_, "Derivation file")->required();
    approx->add_option("--out", out_path_, "Write the approximant derivation here instead of stdout");
    approx->callback([&] { action = [this] { return cmd_approx(); }; });

    auto* en = app.add_subcommand("enumerate", "List alpha-distinct terms by size");
    en->add_option("--max-size", max_size_, "Largest AST size")->required()->check(CLI::PositiveNumber);
    en->add_flag("--closed", closed_, "Closed terms only");
    en->add_flag("--bottom", bottom_, "Include _|_ leaves");
    en->add_option("--sample", sample_, "Draw this many terms at random instead");
    en->add_option("--seed", seed_, "Seed for --sample");
    en->callback([&] { action = [this] { return cmd_enumerate(); }; });

    auto* prop = app.add_subcommand("prop", "Run a named property suite");
    prop->add_option("suite", suite_, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    prop->add_option("--max-size", suite_opts_.max_size, "Exhaustive corpus size bound");
    prop->add_option("--sample", suite_opts_.sample_count, "Random sample size");
    prop->add_option("--sample-max-size", suite_opts_.sample_max_size, "Size bound for the sample");
    prop->add_option("--seed", suite_opts_.seed, "Sample seed");
    prop->add_option("--threads", suite_opts_.threads, "Worker threads (0: all cores)");
    prop->add_option("--fuel", fuel_, "Fuel for type_sn and check_sn");
    prop->callback([&] { action = [this] { return cmd_prop(); }; });
  }

  Term term() const { return parse_term(term_, ParseOptions{bottom_}); }
  std::size_t fuel(std::size_t fallback) const { return fuel_ ? *fuel_ : default_fuel(fallback); }

  void emit_derivation(const Derivation& d) {
    if (!out_path_.empty()) {
      write_file(out_path_, derivation_file(d));
    } else if (!porcelain_) {
      out_ << "\n" << derivation_file(d);
    }
  }

  int cmd_parse() {
    const Term t = term();
    std::string fv;
    for (const std::string& v : free_vars(t)) fv += (fv.empty() ? "" : ",") + v;
    const bool nf = is_normal(t);
    if (porcelain_) {
      out_ << "parse term=" << quoted(to_string(t)) << " size=" << t.size() << " free=" << fv
           << " normal=" << (nf ? "yes" : "no") << "\n";
    } else {
      out_ << "term: " << to_string(t) << "\nsize: " << t.size() << "\nfree: " << fv
           << "\nnormal: " << (nf ? "yes" : "no") << "\n";
    }
    return kOk;
  }

  int cmd_reduce() {
    const Term t = term();
    if (strategy_ == "pos") {
      if (position_.empty()) throw UsageError("--strategy pos needs a position");
      const Term r = step(t, parse_position(position_));
      out_ << (porcelain_ ? "reduce result=" + quoted(to_string(r)) : to_string(r)) << "\n";
      return kOk;
    }
    const WnEvidence ev = normalize_lo(t, fuel(kDefaultWnFuel));
    if (porcelain_) {
      out_ << "reduce normalised=" << (ev.normalised ? "yes" : "no") << " steps=" << ev.trace.length()
           << " end=" << quoted(to_string(ev.trace.end())) << "\n";
    } else {
      out_ << to_string(ev.trace);
    }
    return ev.normalised ? kOk : kNegative;
  }

  int cmd_sn() {
    const SnEvidence ev = check_sn(term(), fuel(kDefaultSnFuel));
    const char* verdict = ev.verdict == SnVerdict::SN ? "SN" : ev.verdict == SnVerdict::NonSN ? "NonSN" : "Unknown";
    if (porcelain_) {
      out_ << "sn verdict=" << verdict << " max_len=" << ev.max_len << " fuel_spent=" << ev.fuel_spent << "\n";
    } else {
      out_ << "verdict: " << verdict << "\n";
      if (ev.verdict == SnVerdict::SN) out_ << "max_len: " << ev.max_len << "\n";
      if (ev.loop_witness) out_ << "loop:\n" << to_string(*ev.loop_witness);
    }
    return ev.verdict == SnVerdict::SN ? kOk : kNegative;
  }

  int cmd_wn() {
    const WnEvidence ev = normalize_lo(term(), fuel(kDefaultWnFuel));
    const std::string nf = ev.normal_form ? to_string(*ev.normal_form) : "";
    if (porcelain_) {
      out_ << "wn normalised=" << (ev.normalised ? "yes" : "no") << " steps=" << ev.trace.length()
           << " normal_form=" << quoted(nf) << "\n";
    } else if (ev.normalised) {
      out_ << "normal_form: " << nf << "\nsteps: " << ev.trace.length() << "\n";
    } else {
      out_ << "no normal form within " << ev.fuel_spent << " steps\n";
    }
    return ev.normalised ? kOk : kNegative;
  }

  int cmd_type_sn() {
    const SnTyping ty = type_sn(term(), fuel(kDefaultSnFuel));
    require_valid(ty.derivation, "type_sn");
    if (porcelain_) {
      out_ << "type-sn sequent=" << quoted(to_string(ty.derivation.conclusion()))
           << " nodes=" << ty.derivation.node_count() << " census=" << quoted(census_line(ty.derivation)) << "\n";
    } else {
      out_ << "sequent: " << to_string(ty.derivation.conclusion()) << "\ncensus: " << census_line(ty.derivation)
           << "\n";
    }
    emit_derivation(ty.derivation);
    return kOk;
  }

  int cmd_type_wn() {
    const WnTyping ty = type_wn(term(), fuel(kDefaultWnFuel));
    require_valid(ty.derivation, "type_wn");
    if (porcelain_) {
      out_ << "type-wn sequent=" << quoted(to_string(ty.derivation.conclusion()))
           << " steps=" << ty.trace.length() << " census=" << quoted(census_line(ty.derivation)) << "\n";
    } else {
      out_ << "sequent: " << to_string(ty.derivation.conclusion()) << "\ncensus: " << census_line(ty.derivation)
           << "\ntrace:\n" << to_string(ty.trace);
    }
    emit_derivation(ty.derivation);
    return kOk;
  }

  int cmd_check() {
    const Derivation d = load_derivation(file_, system_);
    const CheckReport r = check_derivation(d);
    if (porcelain_) {
      out_ << "check system=" << system_name(d.system()) << " valid=" << (r.ok() ? "yes" : "no")
           << " diagnostics=" << r.diagnostics.size() << "\n";
    } else if (r.ok()) {
      out_ << "valid: " << to_string(d.conclusion()) << "\n";
    } else {
      out_ << r.to_string();
    }
    return r.ok() ? kOk : kNegative;
  }

  int cmd_translate() {
    Derivation d = load_derivation(file_, system_);
    require_valid(d, "input");
    const SystemId to = system_arg(target_);
    std::string route;
    for (const Edge& e : translation_path(d.system(), to)) {
      d = apply_edge(d, e);
      route += (route.empty() ? "" : ",") + e.via;
    }
    require_valid(d, "translation");
    if (porcelain_) {
      out_ << "translate system=" << system_name(d.system()) << " route=" << (route.empty() ? "none" : route)
           << " sequent=" << quoted(to_string(d.conclusion())) << "\n";
    } else {
      out_ << "route: " << (route.empty() ? "none" : route) << "\nsequent: " << to_string(d.conclusion()) << "\n";
    }
    emit_derivation(d);
    return kOk;
  }

  int cmd_expand() {
    const Derivation d = load_derivation(file_, system_);
    require_valid(d, "input");
    const Derivation e = subject_expand(d, parse_term(term_, ParseOptions{true}), parse_position(position_));
    require_valid(e, "subject_expand");
    out_ << (porcelain_ ? "expand sequent=" + quoted(to_string(e.conclusion())) : "sequent: " + to_string(e.conclusion()))
         << "\n";
    emit_derivation(e);
    return kOk;
  }

  int cmd_leq() {
    const Type a = parse_type(type_a_);
    const Type b = parse_type(type_b_);
    const bool holds = omega_ ? leq_omega(a, b) : leq(a, b);
    out_ << (porcelain_ ? std::string("leq holds=") + (holds ? "yes" : "no") : holds ? "true" : "false") << "\n";
    return holds ? kOk : kNegative;
  }

  int cmd_approx() {
    const Derivation d = load_derivation(file_, system_);
    require_valid(d, "input");
    const Approximation a = approximate(d);
    require_valid(a.derivation, "approximate");
    if (porcelain_) {
      out_ << "approx m_prime=" << quoted(to_string(a.m_prime)) << " steps=" << a.trace.length()
           << " sequent=" << quoted(to_string(a.derivation.conclusion())) << "\n";
    } else {
      out_ << "m_prime: " << to_string(a.m_prime) << "\napproximant: " << to_string(alpha_map(a.m_prime))
           << "\ntrace:\n" << to_string(a.trace);
    }
    emit_derivation(a.derivation);
    return kOk;
  }

  int cmd_enumerate() {
    CorpusSpec spec;
    spec.max_size = max_size_;
    spec.closed_only = closed_;
    spec.include_bottom = bottom_;
    spec.seed = seed_;
    const std::vector<Term> terms = sample_ ? sample_terms(spec, *sample_) : enumerate_terms(spec);
    if (porcelain_) {
      out_ << "enumerate count=" << terms.size() << "\n";
    } else {
      for (const Term& t : terms) out_ << to_string(t) << "\n";
    }
    return kOk;
  }

  int cmd_prop() {
    if (fuel_) suite_opts_.fuel = *fuel_;
    const SuiteReport r = run_suite(suite_, suite_opts_);
    out_ << r.summary() << "\n";
    if (!porcelain_) {
      for (const std::string& n : r.notes) out_ << "note: " << n << "\n";
      for (const std::string& c : r.counterexamples) out_ << "counterexample: " << c << "\n";
    }
    return r.ok() ? kOk : kNegative;
  }

  std::ostream& out_;
  std::ostream& err_;
  bool porcelain_ = false;
  bool bottom_ = false;
  bool omega_ = false;
  bool closed_ = false;
  std::string term_;
  std::string strategy_ = "lo";
  std::string position_;
  std::optional<std::size_t> fuel_;
  std::string out_path_;
  std::string system_;
  std::string target_;
  std::string file_;
  std::string type_a_;
  std::string type_b_;
  std::size_t max_size_ = 1;
  std::optional<std::size_t> sample_;
  std::uint64_t seed_ = 0;
  std::string suite_;
  SuiteOptions suite_opts_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace itlab::cli
