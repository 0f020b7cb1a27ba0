#include "wbench/scalars/parse.hpp"

#include <cctype>

namespace wb {

namespace {

class Parser {
public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr run() {
    ExprPtr e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprPtr node(ExprNode::Kind k) {
    auto n = std::make_unique<ExprNode>();
    n->kind = k;
    return n;
  }

  static ExprPtr binary(ExprNode::Kind k, ExprPtr a, ExprPtr b) {
    auto n = node(k);
    n->kids.push_back(std::move(a));
    n->kids.push_back(std::move(b));
    return n;
  }

  ExprPtr sum() {
    ExprPtr lhs;
    if (eat('-')) {
      auto n = node(ExprNode::Kind::Neg);
      n->kids.push_back(product());
      lhs = std::move(n);
    } else {
      eat('+');
      lhs = product();
    }
    for (;;) {
      if (eat('+')) lhs = binary(ExprNode::Kind::Add, std::move(lhs), product());
      else if (eat('-')) lhs = binary(ExprNode::Kind::Sub, std::move(lhs), product());
      else return lhs;
    }
  }

  // Juxtaposition ("2 z1") is accepted as multiplication.
  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }

  ExprPtr product() {
    ExprPtr lhs = unary();
    for (;;) {
      if (eat('*')) lhs = binary(ExprNode::Kind::Mul, std::move(lhs), unary());
      else if (eat('/')) lhs = binary(ExprNode::Kind::Div, std::move(lhs), unary());
      else if (starts_atom()) lhs = binary(ExprNode::Kind::Mul, std::move(lhs), power());
      else return lhs;
    }
  }

  ExprPtr unary() {
    if (eat('-')) {
      auto n = node(ExprNode::Kind::Neg);
      n->kids.push_back(unary());
      return n;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (eat('^')) {
      ExprPtr ex;
      if (eat('-')) {
        auto n = node(ExprNode::Kind::Neg);
        n->kids.push_back(atom());
        ex = std::move(n);
      } else {
        ex = atom();
      }
      return binary(ExprNode::Kind::Pow, std::move(base), std::move(ex));
    }
    return base;
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      auto n = node(ExprNode::Kind::Num);
      n->num = Rational::parse(s_.substr(start, pos_ - start));
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      skip();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        auto n = node(ExprNode::Kind::Call);
        n->name = name;
        n->kids.push_back(sum());
        if (!eat(')')) fail("expected ')'");
        return n;
      }
      auto n = node(ExprNode::Kind::Sym);
      n->name = name;
      while (pos_ < s_.size() && s_[pos_] == '\'') {
        ++n->jet;
        ++pos_;
      }
      return n;
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).run(); }

std::optional<FieldScalar> fold_constant(const ExprNode& e) {
  using K = ExprNode::Kind;
  switch (e.kind) {
    case K::Num: return FieldScalar(e.num);
    case K::Sym:
      if (e.name == "I" && e.jet == 0) return FieldScalar::imag_unit();
      return std::nullopt;
    case K::Neg: {
      auto a = fold_constant(*e.kids[0]);
      if (!a) return std::nullopt;
      return -*a;
    }
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: {
      auto a = fold_constant(*e.kids[0]);
      if (!a) return std::nullopt;
      auto b = fold_constant(*e.kids[1]);
      if (!b) return std::nullopt;
      if (e.kind == K::Add) return *a + *b;
      if (e.kind == K::Sub) return *a - *b;
      if (e.kind == K::Mul) return *a * *b;
      if (b->is_zero()) throw DomainError("division by zero in constant expression");
      return *a / *b;
    }
    case K::Pow: {
      auto a = fold_constant(*e.kids[0]);
      auto b = fold_constant(*e.kids[1]);
      if (!a || !b || !b->is_rational()) return std::nullopt;
      Rational q = b->rational_part();
      if (q.is_integer() && q.is_small()) return a->pow(static_cast<int>(q.num_small()));
      if (a->is_rational() && q == Rational(1, 2)) return FieldScalar::sqrt_rational(a->rational_part());
      return std::nullopt;
    }
    case K::Call: {
      auto a = fold_constant(*e.kids[0]);
      if (!a) return std::nullopt;
      if (e.name == "sqrt" && a->is_rational()) return FieldScalar::sqrt_rational(a->rational_part());
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace wb
