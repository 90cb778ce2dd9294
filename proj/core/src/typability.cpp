#include "itlab/typability.hpp"

#include <algorithm>

#include "itlab/errors.hpp"
#include "itlab/transform.hpp"
#include "strcat.hpp"

namespace itlab {

namespace {

class SnTyper {
 public:
  explicit SnTyper(std::size_t fuel) : fuel_(fuel) {}

  Derivation run(const Term& m) {
    tick(m);
    if (m.is_bottom()) fail(ErrorCode::PreconditionViolation, "type_sn takes plain lambda terms");
    if (m.is_lam()) return abstraction(m);
    const Spine sp = spine_of(m);
    if (sp.head.is_var()) return variable_spine(sp);
    return redex_spine(m, sp);
  }

  std::size_t spent() const noexcept { return spent_; }

 private:
  Type fresh_type() { return Type::var(detail::cat("t", next_type_++)); }

  Derivation abstraction(const Term& m) {
    const std::string& x = m.name();
    Derivation body = run(m.body());
    const std::size_t n = body.context().types_of(x).size();
    if (n == 0) body = weaken_seq(body, x, fresh_type());
    if (n > 1) body = merge_all(body, x);
    return rules::abs(SystemId::LS, x, std::move(body));
  }

  // x N1 ... Nn: each argument first, then the (L->) chain from a fresh result.
  Derivation variable_spine(const Spine& sp) {
    const std::string& x = sp.head.name();
    if (sp.args.empty()) {
      const Type t = fresh_type();
      return rules::ax(SystemId::LS, Context{Binding{x, t}}, x, t);
    }
    std::vector<Derivation> args;
    Context g;
    for (const Term& a : sp.args) {
      args.push_back(run(a));
      g = g.unite(args.back().context());
    }
    for (Derivation& a : args) a = weaken_by(a, g);
    const Type result = fresh_type();
    return chain(x, args, 0, g, result);
  }

  Derivation chain(const std::string& head, const std::vector<Derivation>& args, std::size_t i,
                   const Context& g, const Type& result) {
    if (i == args.size()) return rules::ax(SystemId::LS, g.with(Binding{head, result}), head, result);
    const std::string y = fresh_name();
    Derivation rest = chain(y, args, i + 1, g, result);
    Type tail = result;
    for (std::size_t j = args.size(); j-- > i + 1;) tail = Type::arrow(args[j].type(), tail);
    const Type arrow = Type::arrow(args[i].type(), tail);
    return rules::l_arr(SystemId::LS, head, args[i], y, std::move(rest), g.with(Binding{head, arrow}));
  }

  // The contractum chain is walked in a loop, so long head reductions do
  // not deepen the stack; only the redex arguments recurse.
  Derivation redex_spine(const Term& m, Spine sp) {
    std::vector<std::pair<Term, Term>> pending;
    Term cur = m;
    while (true) {
      const Term& lam = sp.head;
      pending.emplace_back(cur, sp.args.front());
      const Term head = substitute(lam.body(), lam.name(), sp.args.front());
      cur = itlab::apply(head, std::span<const Term>(sp.args).subspan(1));
      if (cur.is_lam()) break;
      sp = spine_of(cur);
      if (sp.head.is_var()) break;
      tick(cur);
    }
    Derivation d = run(cur);
    for (std::size_t i = pending.size(); i-- > 0;) {
      Derivation dn = run(pending[i].second);
      const Context g = d.context().unite(dn.context());
      d = rules::beta(SystemId::LS, pending[i].first, weaken_by(d, g), weaken_by(dn, g));
    }
    return d;
  }

  void tick(const Term& m) {
    if (++spent_ > fuel_) fail(ErrorCode::FuelExhausted, detail::cat("type_sn ran out of fuel (", fuel_, ")"));
    if (m.size() > kMaxExploredTermSize) fail(ErrorCode::FuelExhausted, "term grew past the size cap");
  }

  std::size_t fuel_;
  std::size_t spent_ = 0;
  std::size_t next_type_ = 0;
};

}  // namespace

SnTyping type_sn(const Term& m, std::size_t fuel) {
  SnTyper typer(fuel);
  Derivation d = typer.run(m);
  return SnTyping{d.context(), d.type(), d, typer.spent()};
}

WnTyping type_wn(const Term& m, std::size_t fuel) {
  WnEvidence ev = normalize_lo(m, fuel);
  if (!ev.normalised) fail(ErrorCode::FuelExhausted, detail::cat("no normal form within ", fuel, " steps"));
  const SnTyping nf = type_sn(*ev.normal_form);
  Derivation d = seq_to_nd(nf.derivation).rebrand(SystemId::NDW);
  const auto& steps = ev.trace.steps;
  for (std::size_t i = steps.size(); i-- > 0;) {
    const Term& before = i == 0 ? ev.trace.start : steps[i - 1].result;
    d = subject_expand(d, before, steps[i].position);
  }
  return WnTyping{d.context(), d.type(), d, std::move(ev.trace)};
}

}  // namespace itlab
