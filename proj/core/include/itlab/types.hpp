#pragma once

// Intersection types with the constant omega, the preorders <= and <=_omega,
// and typing contexts.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace itlab {

enum class TypeKind { Var, Arrow, Inter, Omega };

/// Immutable type. Intersection is kept binary; equality is syntactic.
/// The printed form is cached and doubles as the canonical key.
class Type {
 public:
  static Type var(std::string name);
  static Type arrow(Type dom, Type cod);
  static Type inter(Type left, Type right);
  static Type omega();

  TypeKind kind() const noexcept;
  bool is_var() const noexcept { return kind() == TypeKind::Var; }
  bool is_arrow() const noexcept { return kind() == TypeKind::Arrow; }
  bool is_inter() const noexcept { return kind() == TypeKind::Inter; }
  bool is_omega() const noexcept { return kind() == TypeKind::Omega; }

  const std::string& name() const;
  const Type& dom() const;
  const Type& cod() const;
  const Type& left() const;
  const Type& right() const;

  const std::string& text() const noexcept;
  std::size_t size() const noexcept;

  friend bool operator==(const Type& a, const Type& b) { return a.text() == b.text(); }
  friend bool operator<(const Type& a, const Type& b) { return a.text() < b.text(); }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// `&` binds tighter than `->`; `->` is right-associative; `w` is omega.
Type parse_type(std::string_view text);
std::string to_string(const Type& t);

bool is_omega_free(const Type& t);
/// Number of `->` and `&` occurrences.
std::size_t connective_count(const Type& t);

/// Top-level conjuncts, splitting only intersections.
std::vector<Type> conjuncts(const Type& t);

/// Sorts by printed form and folds left with intersection. Requires a
/// non-empty list; a singleton stays unwrapped.
Type intersect_all(std::vector<Type> types, bool deduplicate = false);

/// Decides <= (throws OmegaNotAllowed on omega).
bool leq(const Type& a, const Type& b);
/// Decides <=_omega.
bool leq_omega(const Type& a, const Type& b);
/// omega <=_omega t, i.e. every conjunct of t is omega.
bool omega_dominated(const Type& t);

struct Binding {
  std::string var;
  Type type;

  friend bool operator==(const Binding& a, const Binding& b) {
    return a.var == b.var && a.type == b.type;
  }
  friend bool operator<(const Binding& a, const Binding& b) {
    return a.var != b.var ? a.var < b.var : a.type < b.type;
  }
};

/// Finite set of bindings. Sequent-style contexts may bind one variable
/// several times; natural-deduction contexts are the functional special case.
class Context {
 public:
  Context() = default;
  Context(std::initializer_list<Binding> bindings);
  explicit Context(std::span<const Binding> bindings);

  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }

  bool contains(const Binding& b) const { return bindings_.contains(b); }
  bool has_var(std::string_view x) const;
  std::vector<Type> types_of(std::string_view x) const;
  std::set<std::string> vars() const;
  /// The unique type of x; nullopt if unbound or bound more than once.
  std::optional<Type> lookup(std::string_view x) const;
  bool is_functional() const;

  Context with(Binding b) const;
  Context without(const Binding& b) const;
  Context without_var(std::string_view x) const;
  Context unite(const Context& other) const;
  bool includes(const Context& other) const;

  friend bool operator==(const Context&, const Context&) = default;

 private:
  std::set<Binding> bindings_;
};

/// Comma-separated `x:type` pairs.
Context parse_context(std::string_view text);
std::string to_string(const Context& c);
bool is_omega_free(const Context& c);

/// Gamma-cap: each variable gets the canonical intersection of its types.
Context collapse(const Context& c);

}  // namespace itlab
