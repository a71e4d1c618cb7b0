#include "tadic/map_expr.hpp"

#include <cctype>
#include <utility>

#include "tadic/error.hpp"

namespace tadic {

struct MapExpr::Node {
  ExprOp op;
  std::uint64_t value = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  bool constant = true;
  bool polynomial = true;
};

namespace {

using NodePtr = std::shared_ptr<const MapExpr::Node>;

bool is_bitwise(ExprOp op) {
  return op == ExprOp::Not || op == ExprOp::And || op == ExprOp::Or || op == ExprOp::Xor;
}

std::uint64_t eval_node(const MapExpr::Node& n, std::uint64_t x, std::uint64_t mask) {
  switch (n.op) {
    case ExprOp::Var: return x & mask;
    case ExprOp::Literal: return n.value & mask;
    case ExprOp::Neg: return (0 - eval_node(*n.lhs, x, mask)) & mask;
    case ExprOp::Not: return ~eval_node(*n.lhs, x, mask) & mask;
    case ExprOp::Add: return (eval_node(*n.lhs, x, mask) + eval_node(*n.rhs, x, mask)) & mask;
    case ExprOp::Sub: return (eval_node(*n.lhs, x, mask) - eval_node(*n.rhs, x, mask)) & mask;
    case ExprOp::Mul: return (eval_node(*n.lhs, x, mask) * eval_node(*n.rhs, x, mask)) & mask;
    case ExprOp::Pow: return pow_word(eval_node(*n.lhs, x, mask), n.value) & mask;
    case ExprOp::And: return eval_node(*n.lhs, x, mask) & eval_node(*n.rhs, x, mask);
    case ExprOp::Or: return eval_node(*n.lhs, x, mask) | eval_node(*n.rhs, x, mask);
    case ExprOp::Xor: return eval_node(*n.lhs, x, mask) ^ eval_node(*n.rhs, x, mask);
    case ExprOp::Inv: return inv_odd_word(eval_node(*n.lhs, x, mask)) & mask;
  }
  return 0;
}

bool nodes_equal(const MapExpr::Node* a, const MapExpr::Node* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  return a->op == b->op && a->value == b->value && nodes_equal(a->lhs.get(), b->lhs.get()) &&
         nodes_equal(a->rhs.get(), b->rhs.get());
}

}  // namespace

MapExpr MapExpr::var() {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::Var;
  n->constant = false;
  return MapExpr(std::move(n));
}

MapExpr MapExpr::literal(std::uint64_t value) {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::Literal;
  n->value = value;
  return MapExpr(std::move(n));
}

MapExpr MapExpr::unary(ExprOp op, MapExpr operand) {
  if (op != ExprOp::Neg && op != ExprOp::Not) {
    throw Error(ErrorCode::InvalidParameter, "not a unary operator");
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->constant = operand.node_->constant;
  n->polynomial = operand.node_->polynomial && !is_bitwise(op);
  n->lhs = std::move(operand.node_);
  return MapExpr(std::move(n));
}

MapExpr MapExpr::binary(ExprOp op, MapExpr lhs, MapExpr rhs) {
  switch (op) {
    case ExprOp::Add: case ExprOp::Sub: case ExprOp::Mul:
    case ExprOp::And: case ExprOp::Or: case ExprOp::Xor:
      break;
    default:
      throw Error(ErrorCode::InvalidParameter, "not a binary operator");
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->constant = lhs.node_->constant && rhs.node_->constant;
  n->polynomial = lhs.node_->polynomial && rhs.node_->polynomial && !is_bitwise(op);
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return MapExpr(std::move(n));
}

MapExpr MapExpr::power(MapExpr base, std::uint64_t exponent) {
  auto n = std::make_shared<Node>();
  n->op = ExprOp::Pow;
  n->value = exponent;
  n->constant = base.node_->constant;
  n->polynomial = base.node_->polynomial;
  n->lhs = std::move(base.node_);
  return MapExpr(std::move(n));
}

MapExpr MapExpr::inverse(MapExpr constant) {
  if (!constant.is_constant()) {
    throw Error(ErrorCode::NonConstantInvArgument, "inv() argument must not contain x");
  }
  if ((constant.evaluate(0, 1) & 1U) == 0) {
    throw Error(ErrorCode::EvenInvConstant, "inv() argument is even, not a 2-adic unit");
  }
  auto n = std::make_shared<Node>();
  n->op = ExprOp::Inv;
  n->polynomial = constant.node_->polynomial;
  n->lhs = std::move(constant.node_);
  return MapExpr(std::move(n));
}

ExprOp MapExpr::op() const noexcept { return node_->op; }
std::uint64_t MapExpr::value() const noexcept { return node_->value; }

MapExpr MapExpr::lhs() const {
  if (!node_->lhs) throw Error(ErrorCode::InvalidParameter, "node has no left operand");
  return MapExpr(node_->lhs);
}

MapExpr MapExpr::rhs() const {
  if (!node_->rhs) throw Error(ErrorCode::InvalidParameter, "node has no right operand");
  return MapExpr(node_->rhs);
}

bool MapExpr::is_constant() const noexcept { return node_->constant; }
bool MapExpr::is_polynomial() const noexcept { return node_->polynomial; }

std::uint64_t MapExpr::evaluate(std::uint64_t x, unsigned k) const {
  return eval_node(*node_, x, low_mask(k));
}

Truncated2Adic MapExpr::evaluate(Truncated2Adic x) const {
  return {evaluate(x.residue(), x.precision()), x.precision()};
}

bool operator==(const MapExpr& a, const MapExpr& b) {
  return nodes_equal(a.node_.get(), b.node_.get());
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { End, Number, Ident, Plus, Minus, Star, StarStar, LParen, RParen, Invalid };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
  std::uint64_t number = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start, ""};
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      return {Tok::Ident, start, std::string(src_.substr(start, pos_ - start))};
    }
    ++pos_;
    switch (c) {
      case '+': return {Tok::Plus, start, "+"};
      case '-': return {Tok::Minus, start, "-"};
      case '(': return {Tok::LParen, start, "("};
      case ')': return {Tok::RParen, start, ")"};
      case '*':
        if (pos_ < src_.size() && src_[pos_] == '*') {
          ++pos_;
          return {Tok::StarStar, start, "**"};
        }
        return {Tok::Star, start, "*"};
      default:
        return {Tok::Invalid, start, std::string(1, c)};
    }
  }

 private:
  Token number(std::size_t start) {
    std::uint64_t value = 0;
    if (src_[pos_] == '0' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X')) {
      pos_ += 2;
      const std::size_t digits = pos_;
      while (pos_ < src_.size() && std::isxdigit(static_cast<unsigned char>(src_[pos_]))) {
        const char d = static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_])));
        value = value * 16 + static_cast<std::uint64_t>(d <= '9' ? d - '0' : d - 'a' + 10);
        ++pos_;
      }
      if (pos_ == digits) {
        throw ParseError(ErrorCode::Syntax, start, {"hex digit"},
                         "malformed hex literal at position " + std::to_string(start));
      }
    } else {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        value = value * 10 + static_cast<std::uint64_t>(src_[pos_] - '0');
        ++pos_;
      }
    }
    if (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      throw ParseError(ErrorCode::Syntax, pos_, {"operator", "end of input"},
                       "unexpected character after literal at position " + std::to_string(pos_));
    }
    Token t{Tok::Number, start, std::string(src_.substr(start, pos_ - start))};
    t.number = value;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  MapExpr parse() {
    MapExpr e = expr();
    if (cur_.kind != Tok::End) fail({"operator", "end of input"});
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  bool keyword(const char* kw) const { return cur_.kind == Tok::Ident && cur_.text == kw; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string msg = "syntax error at position " + std::to_string(cur_.pos) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i != 0) msg += " or ";
      msg += expected[i];
    }
    msg += cur_.kind == Tok::End ? ", found end of input" : ", found '" + cur_.text + "'";
    throw ParseError(ErrorCode::Syntax, cur_.pos, std::move(expected), msg);
  }

  MapExpr expr() {
    MapExpr lhs = xor_expr();
    while (keyword("or")) {
      advance();
      lhs = MapExpr::binary(ExprOp::Or, lhs, xor_expr());
    }
    return lhs;
  }

  MapExpr xor_expr() {
    MapExpr lhs = and_expr();
    while (keyword("xor")) {
      advance();
      lhs = MapExpr::binary(ExprOp::Xor, lhs, and_expr());
    }
    return lhs;
  }

  MapExpr and_expr() {
    MapExpr lhs = sum();
    while (keyword("and")) {
      advance();
      lhs = MapExpr::binary(ExprOp::And, lhs, sum());
    }
    return lhs;
  }

  MapExpr sum() {
    MapExpr lhs = prod();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const ExprOp op = cur_.kind == Tok::Plus ? ExprOp::Add : ExprOp::Sub;
      advance();
      lhs = MapExpr::binary(op, lhs, prod());
    }
    return lhs;
  }

  MapExpr prod() {
    MapExpr lhs = unary();
    while (cur_.kind == Tok::Star) {
      advance();
      lhs = MapExpr::binary(ExprOp::Mul, lhs, unary());
    }
    return lhs;
  }

  MapExpr unary() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return MapExpr::unary(ExprOp::Neg, unary());
    }
    if (keyword("not")) {
      advance();
      return MapExpr::unary(ExprOp::Not, unary());
    }
    return power();
  }

  MapExpr power() {
    MapExpr base = atom();
    if (cur_.kind != Tok::StarStar) return base;
    advance();
    const std::size_t exp_pos = cur_.pos;
    if (cur_.kind == Tok::Number) {
      const std::uint64_t e = cur_.number;
      advance();
      return MapExpr::power(base, e);
    }
    // Anything else is rejected; report x-dependence specifically.
    if (cur_.kind == Tok::Ident || cur_.kind == Tok::LParen || cur_.kind == Tok::Minus) {
      MapExpr exponent = unary();
      if (!exponent.is_constant()) {
        throw ParseError(ErrorCode::NonConstantExponent, exp_pos, {"unsigned integer literal"},
                         "exponent at position " + std::to_string(exp_pos) + " depends on x");
      }
      throw ParseError(ErrorCode::Syntax, exp_pos, {"unsigned integer literal"},
                       "exponent at position " + std::to_string(exp_pos) +
                           " must be an unsigned integer literal");
    }
    fail({"unsigned integer literal"});
  }

  MapExpr atom() {
    if (cur_.kind == Tok::Number) {
      const std::uint64_t v = cur_.number;
      advance();
      return MapExpr::literal(v);
    }
    if (cur_.kind == Tok::LParen) {
      advance();
      MapExpr inner = expr();
      if (cur_.kind != Tok::RParen) fail({"')'"});
      advance();
      return inner;
    }
    if (keyword("x")) {
      advance();
      return MapExpr::var();
    }
    if (keyword("inv")) {
      const std::size_t pos = cur_.pos;
      advance();
      if (cur_.kind != Tok::LParen) fail({"'('"});
      advance();
      MapExpr arg = expr();
      if (cur_.kind != Tok::RParen) fail({"')'"});
      advance();
      try {
        return MapExpr::inverse(arg);
      } catch (const Error& e) {
        throw ParseError(e.code(), pos, {}, std::string(e.what()) + " (at position " +
                                                std::to_string(pos) + ")");
      }
    }
    fail({"'x'", "integer literal", "'inv'", "'('"});
  }

  Lexer lexer_;
  Token cur_{Tok::End, 0, ""};
};

// Binding strength used by the printer; higher binds tighter.
int precedence(ExprOp op) {
  switch (op) {
    case ExprOp::Or: return 1;
    case ExprOp::Xor: return 2;
    case ExprOp::And: return 3;
    case ExprOp::Add: case ExprOp::Sub: return 4;
    case ExprOp::Mul: return 5;
    case ExprOp::Neg: case ExprOp::Not: return 6;
    case ExprOp::Pow: return 7;
    default: return 8;
  }
}

const char* symbol(ExprOp op) {
  switch (op) {
    case ExprOp::Or: return " or ";
    case ExprOp::Xor: return " xor ";
    case ExprOp::And: return " and ";
    case ExprOp::Add: return " + ";
    case ExprOp::Sub: return " - ";
    case ExprOp::Mul: return " * ";
    default: return "";
  }
}

void print(const MapExpr& e, std::string& out);

void print_wrapped(const MapExpr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(e, out);
  if (wrap) out += ')';
}

void print(const MapExpr& e, std::string& out) {
  const ExprOp op = e.op();
  switch (op) {
    case ExprOp::Var: out += 'x'; return;
    case ExprOp::Literal: out += std::to_string(e.value()); return;
    case ExprOp::Inv:
      out += "inv(";
      print(e.lhs(), out);
      out += ')';
      return;
    case ExprOp::Neg: case ExprOp::Not: {
      out += op == ExprOp::Neg ? "-" : "not ";
      const MapExpr operand = e.lhs();
      print_wrapped(operand, precedence(operand.op()) < precedence(op), out);
      return;
    }
    case ExprOp::Pow: {
      const MapExpr base = e.lhs();
      print_wrapped(base, precedence(base.op()) <= precedence(op), out);
      out += "**" + std::to_string(e.value());
      return;
    }
    default: {
      // Binary operators are left-associative: the right operand needs
      // parentheses at equal precedence, the left one only below it.
      const MapExpr lhs = e.lhs();
      const MapExpr rhs = e.rhs();
      print_wrapped(lhs, precedence(lhs.op()) < precedence(op), out);
      out += symbol(op);
      print_wrapped(rhs, precedence(rhs.op()) <= precedence(op), out);
      return;
    }
  }
}

}  // namespace

MapExpr parse_map(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const MapExpr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

}  // namespace tadic
