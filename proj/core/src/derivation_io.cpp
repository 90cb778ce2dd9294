#include <cctype>

#include "itlab/derivation.hpp"
#include "itlab/errors.hpp"

namespace itlab {

namespace {

// Strings are written raw: terms and types never contain quotes, and a lone
// backslash (lambda) is kept literally by the reader.
std::string quote(const std::string& s) {
  std::string out = "\"";
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool escape = c == '"' || (c == '\\' && i + 1 < s.size() && (s[i + 1] == '"' || s[i + 1] == '\\'));
    if (escape) out += '\\';
    out += c;
  }
  return out + "\"";
}

void field(std::string& out, std::string_view key, const std::string& value) {
  out += " (";
  out += key;
  out += ' ';
  out += quote(value);
  out += ')';
}

void print(const Derivation& d, std::size_t indent, std::string& out) {
  out.append(indent, ' ');
  out += '(';
  out += rule_name(d.rule());
  out += " (ctx";
  for (const Binding& b : d.context()) out += " " + quote(b.var + ":" + b.type.text());
  out += ')';
  field(out, "term", to_string(d.subject()));
  field(out, "type", d.type().text());
  const RuleDetail& det = d.detail();
  if (!det.var.empty()) field(out, "var", det.var);
  if (!det.fresh.empty()) field(out, "fresh", det.fresh);
  if (det.body) field(out, "body", to_string(*det.body));
  if (det.arg) field(out, "arg", to_string(*det.arg));
  const bool spine_rule = d.rule() == RuleId::BetaS || d.rule() == RuleId::BetaL ||
                          d.rule() == RuleId::LArr || d.rule() == RuleId::LCap;
  if (spine_rule) {
    out += " (spine";
    for (const Term& n : det.spine) out += " " + quote(to_string(n));
    out += ')';
  }
  if (det.a1) field(out, "a1", det.a1->text());
  if (det.a2) field(out, "a2", det.a2->text());
  for (const Derivation& p : d.premisses()) {
    out += '\n';
    print(p, indent + 2, out);
  }
  out += ')';
}

struct Token {
  enum Kind { Open, Close, Atom, String, End } kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip();
    if (pos_ >= text_.size()) return {Token::End, {}, pos_};
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      return {Token::Open, "(", start};
    }
    if (c == ')') {
      ++pos_;
      return {Token::Close, ")", start};
    }
    if (c == '"') {
      ++pos_;
      std::string s;
      for (;;) {
        if (pos_ >= text_.size()) throw SyntaxError(start, "unterminated string");
        char ch = text_[pos_++];
        if (ch == '"') break;
        if (ch == '\\' && pos_ < text_.size() && (text_[pos_] == '"' || text_[pos_] == '\\')) {
          ch = text_[pos_++];
        }
        s += ch;
      }
      return {Token::String, std::move(s), start};
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != '"') {
      ++pos_;
    }
    return {Token::Atom, std::string(text_.substr(start, pos_ - start)), start};
  }

 private:
  void skip() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (text_.substr(pos_, 2) == ";;") {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      return;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Reader {
 public:
  Reader(std::string_view text, SystemId system)
      : lex_(text), system_(system), opts_{has_omega(system)} {
    advance();
  }

  Derivation read_all() {
    Derivation d = node();
    if (tok_.kind != Token::End) throw SyntaxError(tok_.offset, "trailing input after derivation");
    return d;
  }

 private:
  void advance() { tok_ = lex_.next(); }

  void expect(Token::Kind kind, std::string_view what) {
    if (tok_.kind != kind) throw SyntaxError(tok_.offset, "expected " + std::string(what));
    advance();
  }

  template <class F>
  auto parse_at(std::size_t offset, F&& f) {
    try {
      return f();
    } catch (const SyntaxError& e) {
      throw SyntaxError(offset + 1 + e.offset(), e.reason());
    }
  }

  Derivation node() {
    expect(Token::Open, "'(' opening a derivation node");
    if (tok_.kind != Token::Atom) throw SyntaxError(tok_.offset, "expected a rule name");
    const std::optional<RuleId> rule = parse_rule(tok_.text);
    if (!rule) throw SyntaxError(tok_.offset, "unknown rule '" + tok_.text + "'");
    advance();

    std::optional<Context> ctx;
    std::optional<Term> subject;
    std::optional<Type> type;
    RuleDetail det;
    std::vector<Derivation> premisses;

    while (tok_.kind == Token::Open) {
      // Peek: a key atom means a field, a rule name means a premiss.
      Lexer saved = lex_;
      const Token open = tok_;
      advance();
      if (tok_.kind != Token::Atom) throw SyntaxError(tok_.offset, "expected a field key or rule name");
      if (parse_rule(tok_.text)) {
        lex_ = saved;
        tok_ = open;
        premisses.push_back(node());
        continue;
      }
      const std::string key = tok_.text;
      advance();
      std::vector<Token> values;
      while (tok_.kind == Token::String) {
        values.push_back(tok_);
        advance();
      }
      expect(Token::Close, "')' closing field " + key);
      auto single = [&]() -> const Token& {
        if (values.size() != 1) throw SyntaxError(open.offset, "field " + key + " takes one string");
        return values.front();
      };
      auto term = [&](const Token& t) {
        return parse_at(t.offset, [&] { return parse_term(t.text, opts_); });
      };
      auto ty = [&](const Token& t) {
        return parse_at(t.offset, [&] { return parse_type(t.text); });
      };
      if (key == "ctx") {
        std::vector<Binding> bs;
        for (const Token& v : values) {
          Context one = parse_at(v.offset, [&] { return parse_context(v.text); });
          bs.insert(bs.end(), one.begin(), one.end());
        }
        ctx = Context(std::span<const Binding>(bs));
      } else if (key == "term") {
        subject = term(single());
      } else if (key == "type") {
        type = ty(single());
      } else if (key == "var") {
        det.var = ident(single());
      } else if (key == "fresh") {
        det.fresh = ident(single());
      } else if (key == "body") {
        det.body = term(single());
      } else if (key == "arg") {
        det.arg = term(single());
      } else if (key == "spine") {
        for (const Token& v : values) det.spine.push_back(term(v));
      } else if (key == "a1") {
        det.a1 = ty(single());
      } else if (key == "a2") {
        det.a2 = ty(single());
      } else {
        throw SyntaxError(open.offset, "unknown field '" + key + "'");
      }
    }
    const std::size_t close_at = tok_.offset;
    expect(Token::Close, "')' closing a derivation node");
    if (!ctx || !subject || !type) {
      throw SyntaxError(close_at, "node needs ctx, term and type fields");
    }
    return Derivation::make(system_, *rule, Sequent{std::move(*ctx), std::move(*subject), std::move(*type)},
                            std::move(det), std::move(premisses));
  }

  static std::string ident(const Token& t) {
    Term v = [&] {
      try {
        return parse_term(t.text);
      } catch (const SyntaxError& e) {
        throw SyntaxError(t.offset + 1 + e.offset(), e.reason());
      }
    }();
    if (!v.is_var()) throw SyntaxError(t.offset, "expected a variable name");
    return v.name();
  }

  Lexer lex_;
  Token tok_;
  SystemId system_;
  ParseOptions opts_;
};

}  // namespace

std::string to_sexpr(const Derivation& d) {
  std::string out;
  print(d, 0, out);
  out += '\n';
  return out;
}

Derivation parse_derivation(std::string_view text, SystemId system) {
  return Reader(text, system).read_all();
}

}  // namespace itlab
