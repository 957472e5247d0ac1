#include "spinpa/dsl.hpp"

#include <cctype>
#include <sstream>

#include "spinpa/evalfun.hpp"

namespace spinpa {

const char* op_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Inc: return "inc";
    case UnaryOp::CapL: return "capL";
    case UnaryOp::CapR: return "capR";
    case UnaryOp::Rot: return "rot";
    case UnaryOp::Star: return "star";
    case UnaryOp::Tr: return "tr";
    case UnaryOp::Expand: return "expand";
  }
  return "?";
}

namespace {

std::optional<UnaryOp> op_from_name(const std::string& s) {
  for (UnaryOp op : {UnaryOp::Inc, UnaryOp::CapL, UnaryOp::CapR, UnaryOp::Rot, UnaryOp::Star, UnaryOp::Tr,
                     UnaryOp::Expand}) {
    if (s == op_name(op)) return op;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok : std::uint8_t { Int, Ident, Punct, Basis, Diagram, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
  BasisIndex basis;
  FlatDiagram diagram;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      Token t;
      t.pos = where(at_);
      if (at_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[at_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        const std::size_t start = at_;
        while (at_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at_]))) ++at_;
        t.kind = Tok::Int;
        t.text = src_.substr(start, at_ - start);
      } else if (c == 'e' && at_ + 1 < src_.size() && (src_[at_ + 1] == '^' || src_[at_ + 1] == '[')) {
        t.kind = Tok::Basis;
        t.basis = basis_literal(t.pos);
      } else if (c == 'd' && at_ + 1 < src_.size() && src_[at_ + 1] == '{') {
        t.kind = Tok::Diagram;
        t.diagram = diagram_literal(t.pos);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = at_;
        while (at_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[at_])) || src_[at_] == '_')) ++at_;
        t.kind = Tok::Ident;
        t.text = src_.substr(start, at_ - start);
      } else if (std::string_view("()+-*/,").find(c) != std::string_view::npos) {
        t.kind = Tok::Punct;
        t.text = std::string(1, c);
        ++at_;
      } else {
        throw DslError(std::string("unexpected character '") + c + "'", t.pos);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  SourcePos where(std::size_t offset) const {
    SourcePos p;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++p.line;
        p.column = 1;
      } else {
        ++p.column;
      }
    }
    return p;
  }

  void skip_ws() {
    while (at_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[at_]))) ++at_;
  }

  BasisIndex basis_literal(SourcePos pos) {
    try {
      if (src_[at_ + 1] == '[' && at_ + 2 < src_.size() && src_[at_ + 2] == '^') {
        // bracketed form e[^i_j]; decorations inside keep the brackets balanced
        int depth = 0;
        std::size_t close = at_ + 1;
        for (; close < src_.size(); ++close) {
          if (src_[close] == '[') ++depth;
          if (src_[close] == ']' && --depth == 0) break;
        }
        if (close >= src_.size()) throw DslError("unterminated basis literal", pos);
        BasisIndex idx = parse_basis_index("e" + src_.substr(at_ + 2, close - at_ - 2));
        at_ = close + 1;
        return idx;
      }
      std::size_t p = at_;
      BasisIndex idx = parse_basis_index_at(src_, p);
      at_ = p;
      return idx;
    } catch (const DslError&) {
      throw;
    } catch (const ValidationError& e) {
      throw DslError(e.what(), pos);
    }
  }

  FlatDiagram diagram_literal(SourcePos pos) {
    const std::size_t close = src_.find('}', at_);
    if (close == std::string::npos) throw DslError("unterminated diagram literal", pos);
    std::string body = src_.substr(at_ + 2, close - at_ - 2);
    at_ = close + 1;
    std::string text;
    std::istringstream is(body);
    for (std::string line; std::getline(is, line, body.find(';') != std::string::npos ? ';' : '\n');) {
      const auto b = line.find_first_not_of(" \t\r\n");
      if (b == std::string::npos) continue;
      const auto e = line.find_last_not_of(" \t\r\n");
      text += line.substr(b, e - b + 1) + '\n';
    }
    try {
      return parse_diagram(text);
    } catch (const ValidationError& e) {
      throw DslError(e.what(), pos);
    }
  }

  const std::string& src_;
  std::size_t at_ = 0;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(std::vector<Token> toks, int n) : toks_(std::move(toks)), n_(n) {}

  ExprPtr run() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + describe(peek()) + "'");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(at_ + ahead, toks_.size() - 1)];
  }
  bool is_punct(char c, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Punct && t.text[0] == c;
  }
  bool is_ident(const char* s, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Tok::Ident && t.text == s;
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::End: return "end of input";
      case Tok::Basis: return "basis literal";
      case Tok::Diagram: return "diagram literal";
      default: return t.text;
    }
  }
  [[noreturn]] void fail(const std::string& what) const { throw DslError(what, peek().pos); }
  void expect(char c) {
    if (!is_punct(c)) fail(std::string("expected '") + c + "', found '" + describe(peek()) + "'");
    ++at_;
  }
  int integer() {
    if (peek().kind != Tok::Int) fail("expected integer, found '" + describe(peek()) + "'");
    if (peek().text.size() > 9) fail("integer too large");
    return std::stoi(toks_[at_++].text);
  }
  Sign sign() {
    if (is_punct('+')) {
      ++at_;
      return Sign::Plus;
    }
    if (is_punct('-')) {
      ++at_;
      return Sign::Minus;
    }
    fail("expected '+' or '-', found '" + describe(peek()) + "'");
  }

  static ExprPtr node(NodeKind kind, SourcePos pos) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->pos = pos;
    return e;
  }

  ExprPtr expr() {
    const SourcePos pos = peek().pos;
    std::vector<ExprPtr> terms;
    std::vector<bool> neg;
    bool lead = false;
    if (is_punct('-') && peek(1).kind != Tok::Int) {
      ++at_;
      lead = true;
    }
    terms.push_back(term());
    neg.push_back(lead);
    while (is_punct('+') || is_punct('-')) {
      neg.push_back(is_punct('-'));
      ++at_;
      terms.push_back(term());
    }
    if (terms.size() == 1 && !lead) return terms.front();
    ExprPtr e = node(NodeKind::Sum, pos);
    e->args = std::move(terms);
    e->negated = std::move(neg);
    return e;
  }

  ExprPtr term() {
    const SourcePos pos = peek().pos;
    std::vector<ExprPtr> factors;
    const std::size_t save = at_;
    if (auto s = scalar_full()) {
      ExprPtr lit = node(NodeKind::Literal, pos);
      lit->value = *s;
      if (!is_punct('*')) return lit;
      factors.push_back(lit);
      ++at_;
    } else {
      at_ = save;
    }
    factors.push_back(factor());
    while (is_punct('*')) {
      ++at_;
      factors.push_back(factor());
    }
    if (factors.size() == 1) return factors.front();
    ExprPtr e = node(NodeKind::Product, pos);
    e->args = std::move(factors);
    return e;
  }

  std::optional<Rational> rational() {
    const std::size_t save = at_;
    bool minus = false;
    if (is_punct('-') && peek(1).kind == Tok::Int) {
      minus = true;
      ++at_;
    }
    if (peek().kind != Tok::Int) {
      at_ = save;
      return std::nullopt;
    }
    Rational r(mpz_class(toks_[at_++].text));
    if (is_punct('/') && peek(1).kind == Tok::Int) {
      ++at_;
      const mpz_class den(toks_[at_++].text);
      if (den == 0) throw DslError("zero denominator", toks_[at_ - 1].pos);
      r /= Rational(den);
    }
    r.canonicalize();
    return minus ? Rational(-r) : r;
  }

  bool sqrt_marker() {
    if (is_ident("sqrtn")) {
      ++at_;
      return true;
    }
    if (is_ident("sqrt") && is_punct('(', 1)) {
      const SourcePos pos = peek().pos;
      at_ += 2;
      const int m = integer();
      expect(')');
      if (m != n_) throw DslError("sqrt(" + std::to_string(m) + ") but the session has n = " + std::to_string(n_), pos);
      return true;
    }
    return false;
  }

  // rational | sqrt-marker | rational '*' sqrt-marker
  std::optional<Scalar> scalar_atom() {
    if (sqrt_marker()) return Scalar::sqrtn(n_);
    auto r = rational();
    if (!r) return std::nullopt;
    if (is_punct('*') && (is_ident("sqrtn", 1) || (is_ident("sqrt", 1) && is_punct('(', 2)))) {
      ++at_;
      sqrt_marker();
      return Scalar(0, *r, n_);
    }
    return Scalar(*r);
  }

  // scalar-atom followed, if possible, by (+|-) sqrt-term
  std::optional<Scalar> scalar_full() {
    auto s = scalar_atom();
    if (!s) return std::nullopt;
    if (s->is_rational() && (is_punct('+') || is_punct('-'))) {
      const std::size_t save = at_;
      const bool minus = is_punct('-');
      ++at_;
      const std::size_t inner = at_;
      auto t = scalar_atom();
      if (t && !t->is_rational() && t->rational_part() == 0 && at_ > inner) {
        return minus ? *s - *t : *s + *t;
      }
      at_ = save;
    }
    return s;
  }

  ExprPtr factor() {
    const Token& t = peek();
    const SourcePos pos = t.pos;
    if (t.kind == Tok::Basis) {
      ExprPtr e = node(NodeKind::Basis, pos);
      e->basis = t.basis;
      ++at_;
      return e;
    }
    if (t.kind == Tok::Diagram) {
      ExprPtr e = node(NodeKind::Diagram, pos);
      e->diagram = t.diagram;
      ++at_;
      return e;
    }
    if (is_punct('(')) {
      ++at_;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (t.kind == Tok::Ident && is_punct('(', 1)) {
      const std::string name = t.text;
      if (name == "s") {
        at_ += 2;
        ExprPtr e = node(NodeKind::Generator, pos);
        e->index = integer();
        expect(')');
        return e;
      }
      if (name == "id" || name == "E") {
        at_ += 2;
        ExprPtr e = node(name == "id" ? NodeKind::Unit : NodeKind::Jones, pos);
        e->k = integer();
        expect(',');
        e->eps = sign();
        if (name == "E") {
          expect(',');
          e->index = integer();
        }
        expect(')');
        return e;
      }
      if (auto op = op_from_name(name)) {
        at_ += 2;
        ExprPtr e = node(NodeKind::Apply, pos);
        e->op = *op;
        e->args.push_back(expr());
        expect(')');
        return e;
      }
    }
    if (auto s = scalar_atom()) {
      ExprPtr e = node(NodeKind::Literal, pos);
      e->value = *s;
      return e;
    }
    if (t.kind == Tok::Ident) fail("unknown name '" + t.text + "'");
    fail("expected a factor, found '" + describe(t) + "'");
  }

  std::vector<Token> toks_;
  std::size_t at_ = 0;
  int n_;
};

// ---------------------------------------------------------------------------
// Printer

bool compound_literal(const Expr& e) {
  return e.kind == NodeKind::Literal && !e.value.is_rational() && e.value.rational_part() != 0;
}

void print(std::ostream& os, const Expr& e);

void print_factor(std::ostream& os, const Expr& e) {
  const bool wrap = e.kind == NodeKind::Sum || e.kind == NodeKind::Product || compound_literal(e);
  if (wrap) os << '(';
  print(os, e);
  if (wrap) os << ')';
}

void print(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case NodeKind::Generator:
      os << "s(" << e.index << ')';
      return;
    case NodeKind::Unit:
      os << "id(" << e.k << ',' << sign_char(e.eps) << ')';
      return;
    case NodeKind::Jones:
      os << "E(" << e.k << ',' << sign_char(e.eps) << ',' << e.index << ')';
      return;
    case NodeKind::Basis:
      os << to_text(e.basis);
      return;
    case NodeKind::Diagram: {
      std::string text = to_text(e.diagram);
      text.pop_back();
      std::string joined;
      for (char c : text) joined += c == '\n' ? std::string("; ") : std::string(1, c);
      os << "d{" << joined << '}';
      return;
    }
    case NodeKind::Literal:
      os << e.value.to_string();
      return;
    case NodeKind::Sum:
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i == 0) {
          if (e.negated[0]) os << '-';
        } else {
          os << (e.negated[i] ? " - " : " + ");
        }
        const Expr& a = *e.args[i];
        const bool wrap = a.kind == NodeKind::Sum || (e.negated[i] && compound_literal(a));
        if (wrap) os << '(';
        print(os, a);
        if (wrap) os << ')';
      }
      return;
    case NodeKind::Product:
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << " * ";
        const Expr& a = *e.args[i];
        // a leading compound literal is read greedily, anywhere else it needs parentheses
        if (i == 0 && a.kind == NodeKind::Literal) {
          print(os, a);
        } else {
          print_factor(os, a);
        }
      }
      return;
    case NodeKind::Apply:
      os << op_name(e.op) << '(';
      print(os, *e.args[0]);
      os << ')';
      return;
  }
}

// ---------------------------------------------------------------------------
// Type checking

std::string snippet(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

[[noreturn]] void type_fail(const Expr& e, const std::string& what) {
  throw DslError(what + " in '" + snippet(e) + "'", e.pos);
}

std::string type_name(const std::optional<Colour>& c) { return c ? to_string(*c) : std::string("scalar"); }

}  // namespace

ExprPtr parse_expr(const std::string& text, int n) {
  if (n <= 0) throw ConfigError("parse_expr: n must be positive");
  return Parser(Lexer(text).run(), n).run();
}

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

void typecheck(Expr& e, int n) {
  for (auto& a : e.args) typecheck(*a, n);
  switch (e.kind) {
    case NodeKind::Generator:
      if (e.index < 1 || e.index > n) type_fail(e, "label outside 1.." + std::to_string(n));
      e.colour = Colour{0, Sign::Minus};
      break;
    case NodeKind::Unit:
      e.colour = Colour{e.k, e.eps};
      break;
    case NodeKind::Jones:
      if (e.index < 1 || e.index > e.k - 1) type_fail(e, "Jones position outside 1.." + std::to_string(e.k - 1));
      e.colour = Colour{e.k, e.eps};
      break;
    case NodeKind::Basis:
      try {
        validate(e.basis, n);
      } catch (const ValidationError& err) {
        type_fail(e, err.what());
      }
      e.colour = colour_of(e.basis);
      break;
    case NodeKind::Diagram:
      try {
        validate(e.diagram, n);
      } catch (const ValidationError& err) {
        type_fail(e, err.what());
      }
      e.colour = e.diagram.colour;
      break;
    case NodeKind::Literal:
      e.colour.reset();
      break;
    case NodeKind::Sum:
      e.colour = e.args[0]->colour;
      for (const auto& a : e.args) {
        if (a->colour != e.colour) {
          type_fail(e, "cannot add " + type_name(e.colour) + " and " + type_name(a->colour));
        }
      }
      break;
    case NodeKind::Product:
      e.colour.reset();
      for (const auto& a : e.args) {
        if (!a->colour) continue;
        if (e.colour && *e.colour != *a->colour) {
          type_fail(e, "cannot multiply " + to_string(*e.colour) + " by " + to_string(*a->colour));
        }
        e.colour = a->colour;
      }
      break;
    case NodeKind::Apply: {
      const auto& in = e.args[0]->colour;
      if (!in) type_fail(e, std::string(op_name(e.op)) + " needs an element, got a scalar");
      const Colour c = *in;
      const bool needs_string = e.op == UnaryOp::CapL || e.op == UnaryOp::CapR || e.op == UnaryOp::Rot;
      if (needs_string && c.k == 0) type_fail(e, std::string(op_name(e.op)) + " needs k >= 1, got " + to_string(c));
      switch (e.op) {
        case UnaryOp::Inc: e.colour = Colour{c.k + 1, c.eps}; break;
        case UnaryOp::CapL: e.colour = Colour{c.k - 1, flip(c.eps)}; break;
        case UnaryOp::CapR: e.colour = Colour{c.k - 1, c.eps}; break;
        case UnaryOp::Rot: e.colour = Colour{c.k, flip(c.eps)}; break;
        case UnaryOp::Star:
        case UnaryOp::Expand: e.colour = c; break;
        case UnaryOp::Tr: e.colour.reset(); break;
      }
      break;
    }
  }
  e.typed = true;
}

namespace {

Value scale(Value v, const Scalar& s) {
  if (auto* x = std::get_if<Element>(&v)) return *x * s;
  return std::get<Scalar>(v) * s;
}

}  // namespace

Value evaluate(const Expr& e, int n) {
  if (!e.typed) throw std::logic_error("evaluate: expression was not type-checked");
  switch (e.kind) {
    case NodeKind::Generator: return Element::generator(n, e.index);
    case NodeKind::Unit: return Element::identity(n, Colour{e.k, e.eps});
    case NodeKind::Jones: return jones_projection(n, e.index, e.k, e.eps);
    case NodeKind::Basis: return basis_diagram(n, e.basis);
    case NodeKind::Diagram: return canonicalize(n, e.diagram, 1);
    case NodeKind::Literal: return e.value;
    case NodeKind::Sum: {
      Value acc = e.colour ? Value(Element(n, *e.colour)) : Value(Scalar(0));
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        Value v = scale(evaluate(*e.args[i], n), e.negated[i] ? Scalar(-1) : Scalar(1));
        if (auto* x = std::get_if<Element>(&acc)) {
          *x += std::get<Element>(v);
        } else {
          std::get<Scalar>(acc) += std::get<Scalar>(v);
        }
      }
      return acc;
    }
    case NodeKind::Product: {
      Scalar factor(1);
      std::optional<Element> acc;
      for (const auto& a : e.args) {
        Value v = evaluate(*a, n);
        if (auto* x = std::get_if<Element>(&v)) {
          acc = acc ? stack(*acc, *x) : std::move(*x);
        } else {
          factor *= std::get<Scalar>(v);
        }
      }
      if (acc) return *acc * factor;
      return factor;
    }
    case NodeKind::Apply: {
      const Element x = std::get<Element>(evaluate(*e.args[0], n));
      switch (e.op) {
        case UnaryOp::Inc: return add_string_right(x);
        case UnaryOp::CapL: return cap_left(x);
        case UnaryOp::CapR: return cap_right(x);
        case UnaryOp::Rot: return rotate_one(x);
        case UnaryOp::Star: return involute(x);
        case UnaryOp::Tr: return tau(x);
        case UnaryOp::Expand: return expand_units(x);
      }
    }
  }
  throw std::logic_error("evaluate: bad node");
}

Value eval_text(const std::string& text, int n) {
  ExprPtr e = parse_expr(text, n);
  typecheck(*e, n);
  return evaluate(*e, n);
}

std::string to_text(const Value& v) {
  if (const auto* s = std::get_if<Scalar>(&v)) return s->to_string() + "\n";
  return to_text(std::get<Element>(v));
}

}  // namespace spinpa
