#include "itlab/reduce.hpp"

#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "itlab/errors.hpp"

namespace itlab {

namespace {

void collect_redexes(const Term& t, Position& here, std::vector<Position>& out) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Bottom: return;
    case TermKind::App:
      if (t.fun().is_lam()) out.push_back(here);
      here.path.push_back(Dir::Fun);
      collect_redexes(t.fun(), here, out);
      here.path.back() = Dir::Arg;
      collect_redexes(t.arg(), here, out);
      here.path.pop_back();
      return;
    case TermKind::Lam:
      here.path.push_back(Dir::Body);
      collect_redexes(t.body(), here, out);
      here.path.pop_back();
      return;
  }
}

bool first_redex(const Term& t, Position& here) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Bottom: return false;
    case TermKind::App:
      if (t.fun().is_lam()) return true;
      here.path.push_back(Dir::Fun);
      if (first_redex(t.fun(), here)) return true;
      here.path.back() = Dir::Arg;
      if (first_redex(t.arg(), here)) return true;
      here.path.pop_back();
      return false;
    case TermKind::Lam:
      here.path.push_back(Dir::Body);
      if (first_redex(t.body(), here)) return true;
      here.path.pop_back();
      return false;
  }
  return false;
}

Term contract(const Term& redex) {
  return substitute(redex.fun().body(), redex.fun().name(), redex.arg());
}

}  // namespace

std::vector<Position> redexes(const Term& t) {
  std::vector<Position> out;
  Position here;
  collect_redexes(t, here, out);
  return out;
}

bool is_normal(const Term& t) {
  Position here;
  return !first_redex(t, here);
}

Term step(const Term& t, const Position& p) {
  std::optional<Term> sub = subterm_at(t, p);
  if (!sub || !sub->is_redex()) {
    fail(ErrorCode::NotARedex, "no beta-redex at " + to_string(p) + " in " + to_string(t));
  }
  return replace_at(t, p, contract(*sub));
}

bool replays(const ReductionTrace& trace) {
  Term cur = trace.start;
  for (const ReductionStep& s : trace.steps) {
    std::optional<Term> sub = subterm_at(cur, s.position);
    if (!sub || !sub->is_redex()) return false;
    Term next = step(cur, s.position);
    if (!alpha_eq(next, s.result)) return false;
    cur = s.result;
  }
  return true;
}

std::string to_string(const ReductionTrace& trace) {
  std::string out = "start " + to_string(trace.start) + "\n";
  for (const ReductionStep& s : trace.steps) {
    out += to_string(s.position) + " -> " + to_string(s.result) + "\n";
  }
  return out;
}

ReductionTrace parse_trace(std::string_view text, ParseOptions options) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<ReductionTrace> trace;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_offset = offset;
    offset += line.size() + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!trace) {
      if (!line.starts_with("start ")) throw SyntaxError(line_offset, "trace must begin with 'start <term>'");
      trace = ReductionTrace{parse_term(line.substr(6), options), {}};
      continue;
    }
    const std::size_t arrow = line.find(" -> ");
    if (arrow == std::string::npos) throw SyntaxError(line_offset, "expected '<position> -> <term>'");
    trace->steps.push_back(
        {parse_position(line.substr(0, arrow)), parse_term(line.substr(arrow + 4), options)});
  }
  if (!trace) throw SyntaxError(0, "empty trace");
  return *trace;
}

ReductionTrace concat(const ReductionTrace& head, const ReductionTrace& tail) {
  if (!alpha_eq(head.end(), tail.start)) {
    fail(ErrorCode::PreconditionViolation, "traces do not connect: " + to_string(head.end()) +
                                               " vs " + to_string(tail.start));
  }
  ReductionTrace out = head;
  out.steps.insert(out.steps.end(), tail.steps.begin(), tail.steps.end());
  return out;
}

ReductionTrace embed(const ReductionTrace& trace, const Term& context, const Position& at) {
  ReductionTrace out{replace_at(context, at, trace.start), {}};
  out.steps.reserve(trace.steps.size());
  for (const ReductionStep& s : trace.steps) {
    Position p = at;
    p.path.insert(p.path.end(), s.position.path.begin(), s.position.path.end());
    out.steps.push_back({std::move(p), replace_at(context, at, s.result)});
  }
  return out;
}

WnEvidence normalize_lo(const Term& t, std::size_t fuel) {
  WnEvidence ev{false, std::nullopt, ReductionTrace{t, {}}, 0};
  Term cur = t;
  for (;;) {
    Position p;
    if (!first_redex(cur, p)) {
      ev.normalised = true;
      ev.normal_form = cur;
      return ev;
    }
    if (ev.fuel_spent >= fuel || cur.size() > kMaxExploredTermSize) return ev;
    cur = step(cur, p);
    ++ev.fuel_spent;
    ev.trace.steps.push_back({std::move(p), cur});
  }
}

SnEvidence check_sn(const Term& t, std::size_t fuel) {
  struct Frame {
    Term term;
    std::string key;
    std::vector<Position> todo;
    std::size_t next = 0;
    std::size_t best = 0;
    Position via;
  };

  SnEvidence ev;
  std::unordered_map<std::string, std::size_t> memo;
  std::unordered_set<std::string> on_path;
  std::vector<Frame> stack;

  auto push = [&](Term term, std::string key, Position via) {
    on_path.insert(key);
    std::vector<Position> todo = redexes(term);
    stack.push_back(Frame{std::move(term), std::move(key), std::move(todo), 0, 0, std::move(via)});
  };

  push(t, canonical_key(t), Position{});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next < top.todo.size()) {
      const Position p = top.todo[top.next++];
      if (ev.fuel_spent >= fuel) {
        ev.verdict = SnVerdict::Unknown;
        return ev;
      }
      Term child = step(top.term, p);
      ++ev.fuel_spent;
      if (child.size() > kMaxExploredTermSize) {
        ev.verdict = SnVerdict::Unknown;
        return ev;
      }
      std::string key = canonical_key(child);
      if (on_path.contains(key)) {
        ev.verdict = SnVerdict::NonSN;
        ReductionTrace witness{stack.front().term, {}};
        for (std::size_t i = 1; i < stack.size(); ++i) {
          witness.steps.push_back({stack[i].via, stack[i].term});
        }
        witness.steps.push_back({p, std::move(child)});
        ev.loop_witness = std::move(witness);
        return ev;
      }
      if (auto it = memo.find(key); it != memo.end()) {
        top.best = std::max(top.best, it->second + 1);
        continue;
      }
      push(std::move(child), std::move(key), p);
      continue;
    }
    const std::size_t done = top.best;
    memo.emplace(top.key, done);
    on_path.erase(top.key);
    stack.pop_back();
    if (stack.empty()) {
      ev.verdict = SnVerdict::SN;
      ev.max_len = done;
      return ev;
    }
    stack.back().best = std::max(stack.back().best, done + 1);
  }
  return ev;
}

namespace {

struct BfsSide {
  struct Visit {
    Term term;
    std::string parent;
    Position via;
  };
  std::unordered_map<std::string, Visit> seen;
  std::deque<std::string> frontier;
  std::string root;

  explicit BfsSide(const Term& start) : root(canonical_key(start)) {
    seen.emplace(root, Visit{start, {}, {}});
    frontier.push_back(root);
  }

  ReductionTrace trace_to(const std::string& key) const {
    std::vector<ReductionStep> rev;
    std::string cur = key;
    while (cur != root) {
      const Visit& v = seen.at(cur);
      rev.push_back({v.via, v.term});
      cur = v.parent;
    }
    return ReductionTrace{seen.at(root).term, {rev.rbegin(), rev.rend()}};
  }
};

}  // namespace

std::optional<CommonReduct> common_reduct(const Term& m, const ReductionTrace& first,
                                          const ReductionTrace& second, std::size_t fuel) {
  if (!alpha_eq(first.start, m) || !alpha_eq(second.start, m)) {
    fail(ErrorCode::PreconditionViolation, "both traces must start at " + to_string(m));
  }
  BfsSide a(first.end());
  BfsSide b(second.end());
  auto meet_at = [&](const std::string& key) {
    return CommonReduct{a.seen.at(key).term, a.trace_to(key), b.trace_to(key)};
  };
  if (a.root == b.root) return meet_at(a.root);

  std::size_t spent = 0;
  bool turn_a = true;
  while (!a.frontier.empty() || !b.frontier.empty()) {
    BfsSide& self = (turn_a && !a.frontier.empty()) || b.frontier.empty() ? a : b;
    BfsSide& other = &self == &a ? b : a;
    turn_a = !turn_a;
    const std::string key = self.frontier.front();
    self.frontier.pop_front();
    const Term term = self.seen.at(key).term;
    for (const Position& p : redexes(term)) {
      if (spent >= fuel) return std::nullopt;
      Term next = step(term, p);
      ++spent;
      std::string nk = canonical_key(next);
      if (self.seen.contains(nk)) continue;
      self.seen.emplace(nk, BfsSide::Visit{next, key, p});
      if (other.seen.contains(nk)) return meet_at(nk);
      if (next.size() <= kMaxExploredTermSize) self.frontier.push_back(nk);
    }
  }
  return std::nullopt;
}

}  // namespace itlab
