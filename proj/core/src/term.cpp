#include "itlab/term.hpp"

#include <atomic>
#include <cctype>
#include <charconv>
#include <unordered_map>

#include "itlab/errors.hpp"

namespace itlab {

void collect_free_names_into(const Term& t, std::set<std::string>& out);

struct Term::Node {
  TermKind kind;
  std::string name;
  std::optional<Term> left;
  std::optional<Term> right;
  std::size_t size;
  bool has_bottom;
};

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(
      Node{TermKind::Var, std::move(name), std::nullopt, std::nullopt, 1, false}));
}

Term Term::app(Term fun, Term arg) {
  const std::size_t size = 1 + fun.size() + arg.size();
  const bool bottom = fun.contains_bottom() || arg.contains_bottom();
  return Term(std::make_shared<const Node>(
      Node{TermKind::App, {}, std::move(fun), std::move(arg), size, bottom}));
}

Term Term::lam(std::string binder, Term body) {
  const std::size_t size = 1 + body.size();
  const bool bottom = body.contains_bottom();
  return Term(std::make_shared<const Node>(
      Node{TermKind::Lam, std::move(binder), std::move(body), std::nullopt, size, bottom}));
}

Term Term::bottom() {
  static const Term instance(std::make_shared<const Node>(
      Node{TermKind::Bottom, {}, std::nullopt, std::nullopt, 1, true}));
  return instance;
}

TermKind Term::kind() const noexcept { return node_->kind; }

const std::string& Term::name() const {
  if (!is_var() && !is_lam()) fail(ErrorCode::Internal, "name() on a term without a name");
  return node_->name;
}

const Term& Term::fun() const {
  if (!is_app()) fail(ErrorCode::Internal, "fun() on a non-application");
  return *node_->left;
}

const Term& Term::arg() const {
  if (!is_app()) fail(ErrorCode::Internal, "arg() on a non-application");
  return *node_->right;
}

const Term& Term::body() const {
  if (!is_lam()) fail(ErrorCode::Internal, "body() on a non-abstraction");
  return *node_->left;
}

std::size_t Term::size() const noexcept { return node_->size; }
bool Term::contains_bottom() const noexcept { return node_->has_bottom; }

bool Term::same_as(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case TermKind::Var: return name() == other.name();
    case TermKind::Bottom: return true;
    case TermKind::App: return fun().same_as(other.fun()) && arg().same_as(other.arg());
    case TermKind::Lam: return name() == other.name() && body().same_as(other.body());
  }
  return false;
}

// ---------------------------------------------------------------- positions

Position Position::then(Dir d) const {
  Position p = *this;
  p.path.push_back(d);
  return p;
}

Position Position::prefixed(Dir d) const {
  Position p;
  p.path.reserve(path.size() + 1);
  p.path.push_back(d);
  p.path.insert(p.path.end(), path.begin(), path.end());
  return p;
}

bool Position::has_prefix(const Position& prefix) const {
  if (prefix.path.size() > path.size()) return false;
  for (std::size_t i = 0; i < prefix.path.size(); ++i) {
    if (path[i] != prefix.path[i]) return false;
  }
  return true;
}

std::string to_string(const Position& p) {
  if (p.is_root()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.path.size(); ++i) {
    if (i) out += '.';
    switch (p.path[i]) {
      case Dir::Fun: out += "fun"; break;
      case Dir::Arg: out += "arg"; break;
      case Dir::Body: out += "body"; break;
    }
  }
  return out;
}

Position parse_position(std::string_view text) {
  Position p;
  if (text.empty() || text == "root") return p;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t dot = text.find('.', start);
    const std::string_view part =
        text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (part == "fun") {
      p.path.push_back(Dir::Fun);
    } else if (part == "arg") {
      p.path.push_back(Dir::Arg);
    } else if (part == "body") {
      p.path.push_back(Dir::Body);
    } else {
      throw SyntaxError(start, "bad position component '" + std::string(part) + "'");
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return p;
}

// ------------------------------------------------------------------- parser

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\'';
}

class TermParser {
 public:
  TermParser(std::string_view text, ParseOptions options) : text_(text), options_(options) {}

  Term parse() {
    Term t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected trailing input");
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_lambda() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '\\') return true;
    return text_.substr(pos_, 2) == "\xCE\xBB";
  }

  void eat_lambda() { pos_ += text_[pos_] == '\\' ? 1 : 2; }

  bool at_ident() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    if (ident_start(text_[pos_])) return true;
    return text_[pos_] == '#' && pos_ + 1 < text_.size() && ident_char(text_[pos_ + 1]);
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    if (!at_ident()) throw SyntaxError(pos_, "expected identifier");
    ++pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name[0] == '#') reserve_name(name);
    return name;
  }

  Term parse_term() {
    if (at_lambda()) return parse_lam();
    return parse_app();
  }

  Term parse_lam() {
    eat_lambda();
    std::vector<std::string> binders;
    while (at_ident()) binders.push_back(ident());
    if (binders.empty()) throw SyntaxError(pos_, "expected binder after lambda");
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '.') throw SyntaxError(pos_, "expected '.'");
    ++pos_;
    Term body = parse_term();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::lam(*it, body);
    return body;
  }

  Term parse_app() {
    std::optional<Term> acc;
    for (;;) {
      skip_ws();
      if (at_lambda()) {
        // A trailing abstraction extends maximally right.
        Term l = parse_lam();
        acc = acc ? Term::app(*acc, l) : l;
        break;
      }
      std::optional<Term> a = try_atom();
      if (!a) break;
      acc = acc ? Term::app(*acc, *a) : *a;
    }
    if (!acc) throw SyntaxError(pos_, pos_ >= text_.size() ? "unexpected end of input" : "expected term");
    return *acc;
  }

  std::optional<Term> try_atom() {
    skip_ws();
    if (pos_ >= text_.size()) return std::nullopt;
    if (at_ident()) return Term::var(ident());
    if (text_.substr(pos_, 3) == "_|_") {
      if (!options_.allow_bottom) throw SyntaxError(pos_, "bottom is only allowed in lambda-bottom terms");
      pos_ += 3;
      return Term::bottom();
    }
    if (text_[pos_] == '(') {
      ++pos_;
      Term inner = parse_term();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    return std::nullopt;
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

void print_into(const Term& t, std::string& out);

void print_atom(const Term& t, std::string& out) {
  if (t.is_var() || t.is_bottom()) {
    print_into(t, out);
  } else {
    out += '(';
    print_into(t, out);
    out += ')';
  }
}

void print_into(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: out += t.name(); return;
    case TermKind::Bottom: out += "_|_"; return;
    case TermKind::Lam: {
      out += '\\';
      const Term* cur = &t;
      bool first = true;
      while (cur->is_lam()) {
        if (!first) out += ' ';
        out += cur->name();
        first = false;
        cur = &cur->body();
      }
      out += ". ";
      print_into(*cur, out);
      return;
    }
    case TermKind::App: {
      Spine s = spine_of(t);
      print_atom(s.head, out);
      for (const Term& a : s.args) {
        out += ' ';
        print_atom(a, out);
      }
      return;
    }
  }
}

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      for (const auto& b : bound) {
        if (b == t.name()) return;
      }
      out.insert(t.name());
      return;
    case TermKind::Bottom: return;
    case TermKind::App:
      collect_free(t.fun(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
    case TermKind::Lam:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
  }
}

bool free_in(std::string_view x, const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == x;
    case TermKind::Bottom: return false;
    case TermKind::App: return free_in(x, t.fun()) || free_in(x, t.arg());
    case TermKind::Lam: return t.name() != x && free_in(x, t.body());
  }
  return false;
}

void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Var: out.insert(t.name()); return;
    case TermKind::Bottom: return;
    case TermKind::App:
      collect_names(t.fun(), out);
      collect_names(t.arg(), out);
      return;
    case TermKind::Lam:
      out.insert(t.name());
      collect_names(t.body(), out);
      return;
  }
}

std::string avoid_name(const std::string& base, const std::set<std::string>& taken) {
  if (is_generated_name(base)) {
    std::string n;
    do {
      n = fresh_name();
    } while (taken.contains(n));
    return n;
  }
  for (std::size_t k = 0;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (!taken.contains(candidate)) return candidate;
  }
}

Term subst(const Term& t, std::string_view x, const Term& n, const std::set<std::string>& fvn) {
  switch (t.kind()) {
    case TermKind::Var: return t.name() == x ? n : t;
    case TermKind::Bottom: return t;
    case TermKind::App: {
      Term f = subst(t.fun(), x, n, fvn);
      Term a = subst(t.arg(), x, n, fvn);
      return Term::app(std::move(f), std::move(a));
    }
    case TermKind::Lam: {
      const std::string& y = t.name();
      if (y == x || !free_in(x, t.body())) return t;
      if (!fvn.contains(y)) return Term::lam(y, subst(t.body(), x, n, fvn));
      std::set<std::string> taken = fvn;
      collect_free_names_into(t.body(), taken);
      taken.insert(std::string(x));
      const std::string fresh = avoid_name(y, taken);
      Term renamed = subst(t.body(), y, Term::var(fresh), {fresh});
      return Term::lam(fresh, subst(renamed, x, n, fvn));
    }
  }
  return t;
}

void key_into(const Term& t, std::vector<std::string_view>& env, std::string& out) {
  switch (t.kind()) {
    case TermKind::Var: {
      for (std::size_t i = env.size(); i-- > 0;) {
        if (env[i] == t.name()) {
          out += '%';
          out += std::to_string(env.size() - 1 - i);
          return;
        }
      }
      out += t.name();
      return;
    }
    case TermKind::Bottom: out += "_|_"; return;
    case TermKind::App:
      out += '(';
      key_into(t.fun(), env, out);
      out += ' ';
      key_into(t.arg(), env, out);
      out += ')';
      return;
    case TermKind::Lam:
      out += "\\.";
      env.push_back(t.name());
      key_into(t.body(), env, out);
      env.pop_back();
      return;
  }
}

std::atomic<std::uint64_t> g_fresh_counter{0};

}  // namespace

Term parse_term(std::string_view text, ParseOptions options) {
  return TermParser(text, options).parse();
}

std::string to_string(const Term& t) {
  std::string out;
  print_into(t, out);
  return out;
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

void collect_free_names_into(const Term& t, std::set<std::string>& out) {
  std::vector<std::string> bound;
  collect_free(t, bound, out);
}

bool is_free_in(std::string_view x, const Term& t) { return free_in(x, t); }

std::set<std::string> all_names(const Term& t) {
  std::set<std::string> out;
  collect_names(t, out);
  return out;
}

Term substitute(const Term& t, std::string_view x, const Term& n) {
  if (!free_in(x, t)) return t;
  return subst(t, x, n, free_vars(n));
}

std::string canonical_key(const Term& t) {
  std::string out;
  std::vector<std::string_view> env;
  key_into(t, env, out);
  return out;
}

bool alpha_eq(const Term& a, const Term& b) {
  if (a.size() != b.size()) return false;
  return canonical_key(a) == canonical_key(b);
}

Spine spine_of(const Term& t) {
  std::vector<Term> args;
  const Term* cur = &t;
  while (cur->is_app()) {
    args.push_back(cur->arg());
    cur = &cur->fun();
  }
  return Spine{*cur, std::vector<Term>(args.rbegin(), args.rend())};
}

Term apply(const Term& head, std::span<const Term> args) {
  Term acc = head;
  for (const Term& a : args) acc = Term::app(acc, a);
  return acc;
}

Abstractions strip_lambdas(const Term& t) {
  Abstractions out{{}, t};
  while (out.body.is_lam()) {
    out.binders.push_back(out.body.name());
    out.body = out.body.body();
  }
  return out;
}

Term wrap_lambdas(std::span<const std::string> binders, const Term& body) {
  Term acc = body;
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) acc = Term::lam(*it, acc);
  return acc;
}

std::optional<Term> subterm_at(const Term& t, const Position& p) {
  Term cur = t;
  for (Dir d : p.path) {
    switch (d) {
      case Dir::Fun:
        if (!cur.is_app()) return std::nullopt;
        cur = cur.fun();
        break;
      case Dir::Arg:
        if (!cur.is_app()) return std::nullopt;
        cur = cur.arg();
        break;
      case Dir::Body:
        if (!cur.is_lam()) return std::nullopt;
        cur = cur.body();
        break;
    }
  }
  return cur;
}

namespace {

Term replace_from(const Term& t, const std::vector<Dir>& path, std::size_t i, const Term& r) {
  if (i == path.size()) return r;
  switch (path[i]) {
    case Dir::Fun:
      if (!t.is_app()) break;
      return Term::app(replace_from(t.fun(), path, i + 1, r), t.arg());
    case Dir::Arg:
      if (!t.is_app()) break;
      return Term::app(t.fun(), replace_from(t.arg(), path, i + 1, r));
    case Dir::Body:
      if (!t.is_lam()) break;
      return Term::lam(t.name(), replace_from(t.body(), path, i + 1, r));
  }
  fail(ErrorCode::PreconditionViolation, "position does not resolve in term");
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
  return replace_from(t, p.path, 0, replacement);
}

Position spine_arg_position(std::size_t i, std::size_t n) {
  Position p;
  for (std::size_t k = 0; k + 1 + i < n; ++k) p.path.push_back(Dir::Fun);
  p.path.push_back(Dir::Arg);
  return p;
}

std::string fresh_name() { return "#g" + std::to_string(g_fresh_counter.fetch_add(1)); }

bool is_generated_name(std::string_view name) { return name.starts_with("#g"); }

void reserve_name(std::string_view name) {
  if (!name.starts_with("#g")) return;
  std::uint64_t value = 0;
  const char* first = name.data() + 2;
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return;
  std::uint64_t cur = g_fresh_counter.load();
  while (cur <= value && !g_fresh_counter.compare_exchange_weak(cur, value + 1)) {
  }
}

}  // namespace itlab
