#include "itlab/types.hpp"

#include <algorithm>
#include <cctype>

#include "itlab/errors.hpp"
#include "itlab/term.hpp"

namespace itlab {

struct Type::Node {
  TypeKind kind;
  std::string name;
  std::optional<Type> a;
  std::optional<Type> b;
  std::string text;
  std::size_t size;
};

namespace {

std::string render(TypeKind kind, const std::string& name, const Type* a, const Type* b) {
  switch (kind) {
    case TypeKind::Var: return name;
    case TypeKind::Omega: return "w";
    case TypeKind::Arrow:
      return (a->is_arrow() ? "(" + a->text() + ")" : a->text()) + " -> " + b->text();
    case TypeKind::Inter: {
      std::string out = a->is_arrow() ? "(" + a->text() + ")" : a->text();
      out += " & ";
      out += b->is_arrow() || b->is_inter() ? "(" + b->text() + ")" : b->text();
      return out;
    }
  }
  return {};
}

}  // namespace

Type Type::var(std::string name) {
  std::string text = name;
  return Type(std::make_shared<const Node>(
      Node{TypeKind::Var, std::move(name), std::nullopt, std::nullopt, std::move(text), 1}));
}

Type Type::arrow(Type dom, Type cod) {
  std::string text = render(TypeKind::Arrow, {}, &dom, &cod);
  const std::size_t size = 1 + dom.size() + cod.size();
  return Type(std::make_shared<const Node>(
      Node{TypeKind::Arrow, {}, std::move(dom), std::move(cod), std::move(text), size}));
}

Type Type::inter(Type left, Type right) {
  std::string text = render(TypeKind::Inter, {}, &left, &right);
  const std::size_t size = 1 + left.size() + right.size();
  return Type(std::make_shared<const Node>(
      Node{TypeKind::Inter, {}, std::move(left), std::move(right), std::move(text), size}));
}

Type Type::omega() {
  static const Type instance(std::make_shared<const Node>(
      Node{TypeKind::Omega, {}, std::nullopt, std::nullopt, "w", 1}));
  return instance;
}

TypeKind Type::kind() const noexcept { return node_->kind; }

const std::string& Type::name() const {
  if (!is_var()) fail(ErrorCode::Internal, "name() on a non-variable type");
  return node_->name;
}
const Type& Type::dom() const {
  if (!is_arrow()) fail(ErrorCode::NotArrowType, text() + " is not an arrow type");
  return *node_->a;
}
const Type& Type::cod() const {
  if (!is_arrow()) fail(ErrorCode::NotArrowType, text() + " is not an arrow type");
  return *node_->b;
}
const Type& Type::left() const {
  if (!is_inter()) fail(ErrorCode::NotIntersectionType, text() + " is not an intersection");
  return *node_->a;
}
const Type& Type::right() const {
  if (!is_inter()) fail(ErrorCode::NotIntersectionType, text() + " is not an intersection");
  return *node_->b;
}
const std::string& Type::text() const noexcept { return node_->text; }
std::size_t Type::size() const noexcept { return node_->size; }

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  Type parse() {
    Type t = type();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected trailing input in type");
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Type type() {
    Type left = inter();
    skip_ws();
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return Type::arrow(left, type());
    }
    return left;
  }

  Type inter() {
    Type acc = atom();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '&') {
        ++pos_;
        acc = Type::inter(acc, atom());
      } else {
        return acc;
      }
    }
  }

  Type atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of type");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Type inner = type();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw SyntaxError(pos_, "expected ')' in type");
      ++pos_;
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '\'')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (name == "w") return Type::omega();
      return Type::var(std::move(name));
    }
    throw SyntaxError(pos_, std::string("unexpected character '") + c + "' in type");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void flatten(const Type& t, std::vector<Type>& out) {
  if (t.is_inter()) {
    flatten(t.left(), out);
    flatten(t.right(), out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

Type parse_type(std::string_view text) { return TypeParser(text).parse(); }

std::string to_string(const Type& t) { return t.text(); }

bool is_omega_free(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Var: return true;
    case TypeKind::Omega: return false;
    case TypeKind::Arrow: return is_omega_free(t.dom()) && is_omega_free(t.cod());
    case TypeKind::Inter: return is_omega_free(t.left()) && is_omega_free(t.right());
  }
  return true;
}

std::size_t connective_count(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Var:
    case TypeKind::Omega: return 0;
    case TypeKind::Arrow: return 1 + connective_count(t.dom()) + connective_count(t.cod());
    case TypeKind::Inter: return 1 + connective_count(t.left()) + connective_count(t.right());
  }
  return 0;
}

std::vector<Type> conjuncts(const Type& t) {
  std::vector<Type> out;
  flatten(t, out);
  return out;
}

Type intersect_all(std::vector<Type> types, bool deduplicate) {
  if (types.empty()) fail(ErrorCode::Internal, "intersection of no types");
  std::sort(types.begin(), types.end());
  if (deduplicate) types.erase(std::unique(types.begin(), types.end()), types.end());
  Type acc = types.front();
  for (std::size_t i = 1; i < types.size(); ++i) acc = Type::inter(acc, types[i]);
  return acc;
}

bool leq(const Type& a, const Type& b) {
  if (!is_omega_free(a) || !is_omega_free(b)) {
    fail(ErrorCode::OmegaNotAllowed, "leq on " + a.text() + " and " + b.text());
  }
  return leq_omega(a, b);
}

bool leq_omega(const Type& a, const Type& b) {
  const std::vector<Type> lhs = conjuncts(a);
  std::set<std::string> available;
  for (const Type& c : lhs) available.insert(c.text());
  for (const Type& c : conjuncts(b)) {
    if (c.is_omega()) continue;
    if (!available.contains(c.text())) return false;
  }
  return true;
}

bool omega_dominated(const Type& t) {
  for (const Type& c : conjuncts(t)) {
    if (!c.is_omega()) return false;
  }
  return true;
}

// ----------------------------------------------------------------- contexts

Context::Context(std::initializer_list<Binding> bindings) : bindings_(bindings) {}
Context::Context(std::span<const Binding> bindings) : bindings_(bindings.begin(), bindings.end()) {}

bool Context::has_var(std::string_view x) const {
  return std::any_of(bindings_.begin(), bindings_.end(),
                     [&](const Binding& b) { return b.var == x; });
}

std::vector<Type> Context::types_of(std::string_view x) const {
  std::vector<Type> out;
  for (const Binding& b : bindings_) {
    if (b.var == x) out.push_back(b.type);
  }
  return out;
}

std::set<std::string> Context::vars() const {
  std::set<std::string> out;
  for (const Binding& b : bindings_) out.insert(b.var);
  return out;
}

std::optional<Type> Context::lookup(std::string_view x) const {
  std::vector<Type> ts = types_of(x);
  if (ts.size() != 1) return std::nullopt;
  return ts.front();
}

bool Context::is_functional() const {
  const std::string* prev = nullptr;
  for (const Binding& b : bindings_) {
    if (prev && *prev == b.var) return false;
    prev = &b.var;
  }
  return true;
}

Context Context::with(Binding b) const {
  Context out = *this;
  out.bindings_.insert(std::move(b));
  return out;
}

Context Context::without(const Binding& b) const {
  Context out = *this;
  out.bindings_.erase(b);
  return out;
}

Context Context::without_var(std::string_view x) const {
  Context out;
  for (const Binding& b : bindings_) {
    if (b.var != x) out.bindings_.insert(b);
  }
  return out;
}

Context Context::unite(const Context& other) const {
  Context out = *this;
  out.bindings_.insert(other.bindings_.begin(), other.bindings_.end());
  return out;
}

bool Context::includes(const Context& other) const {
  return std::includes(bindings_.begin(), bindings_.end(), other.bindings_.begin(),
                       other.bindings_.end());
}

Context parse_context(std::string_view text) {
  std::vector<Binding> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view part = text.substr(start, comma - start);
    const std::size_t first = part.find_first_not_of(" \t\n");
    if (first != std::string_view::npos) {
      const std::size_t colon = part.find(':');
      if (colon == std::string_view::npos) throw SyntaxError(start, "expected 'x:type' in context");
      std::string_view var = part.substr(0, colon);
      const std::size_t vb = var.find_first_not_of(" \t\n");
      const std::size_t ve = var.find_last_not_of(" \t\n");
      if (vb == std::string_view::npos) throw SyntaxError(start, "missing variable in context");
      var = var.substr(vb, ve - vb + 1);
      if (var[0] == '#') reserve_name(var);
      out.push_back(Binding{std::string(var), parse_type(part.substr(colon + 1))});
    }
    start = comma + 1;
  }
  return Context(std::span<const Binding>(out));
}

std::string to_string(const Context& c) {
  std::string out;
  for (const Binding& b : c) {
    if (!out.empty()) out += ", ";
    out += b.var + ":" + b.type.text();
  }
  return out;
}

bool is_omega_free(const Context& c) {
  for (const Binding& b : c) {
    if (!is_omega_free(b.type)) return false;
  }
  return true;
}

Context collapse(const Context& c) {
  std::vector<Binding> out;
  for (const std::string& x : c.vars()) out.push_back(Binding{x, intersect_all(c.types_of(x))});
  return Context(std::span<const Binding>(out));
}

}  // namespace itlab
