#pragma once

// Named lambda terms (optionally with the constant Bottom), positions into
// them, capture-free substitution and alpha-equivalence via nameless keys.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace itlab {

enum class TermKind { Var, App, Lam, Bottom };

/// Immutable lambda term. Copies share structure.
class Term {
 public:
  static Term var(std::string name);
  static Term app(Term fun, Term arg);
  static Term lam(std::string binder, Term body);
  static Term bottom();

  TermKind kind() const noexcept;
  bool is_var() const noexcept { return kind() == TermKind::Var; }
  bool is_app() const noexcept { return kind() == TermKind::App; }
  bool is_lam() const noexcept { return kind() == TermKind::Lam; }
  bool is_bottom() const noexcept { return kind() == TermKind::Bottom; }
  bool is_redex() const noexcept { return is_app() && fun().is_lam(); }

  /// Variable name for Var, binder name for Lam.
  const std::string& name() const;
  const Term& fun() const;
  const Term& arg() const;
  const Term& body() const;

  /// Node count: every Var, App, Lam and Bottom counts one.
  std::size_t size() const noexcept;
  bool contains_bottom() const noexcept;

  /// Syntactic identity of the named trees (not alpha-equivalence).
  bool same_as(const Term& other) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class Dir { Fun, Arg, Body };

struct Position {
  std::vector<Dir> path;

  bool is_root() const noexcept { return path.empty(); }
  Position then(Dir d) const;
  Position prefixed(Dir d) const;
  bool has_prefix(const Position& prefix) const;
  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

/// Dot-separated `fun.arg.body`; the root prints as `root`.
std::string to_string(const Position& p);
Position parse_position(std::string_view text);

struct ParseOptions {
  bool allow_bottom = false;
};

Term parse_term(std::string_view text, ParseOptions options = {});
std::string to_string(const Term& t);

std::set<std::string> free_vars(const Term& t);
bool is_free_in(std::string_view x, const Term& t);
/// Every variable name occurring in t, free or bound.
std::set<std::string> all_names(const Term& t);

/// Capture-free t[x := n].
Term substitute(const Term& t, std::string_view x, const Term& n);

/// Nameless key: bound variables as de Bruijn indices, free ones by name.
std::string canonical_key(const Term& t);
bool alpha_eq(const Term& a, const Term& b);

struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine spine_of(const Term& t);
Term apply(const Term& head, std::span<const Term> args);

/// Strips leading abstractions: t = \binders. body.
struct Abstractions {
  std::vector<std::string> binders;
  Term body;
};
Abstractions strip_lambdas(const Term& t);
Term wrap_lambdas(std::span<const std::string> binders, const Term& body);

/// Resolving fails with nullopt when the path leaves the term.
std::optional<Term> subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);

/// Position of the i-th argument (0-based) of a spine with n arguments.
Position spine_arg_position(std::size_t i, std::size_t n);

/// Fresh names from the reserved `#g` namespace, which no user identifier
/// can collide with. Process-wide and thread-safe.
std::string fresh_name();
/// Makes later fresh_name() results avoid an already used `#gN`.
void reserve_name(std::string_view name);
bool is_generated_name(std::string_view name);

}  // namespace itlab
