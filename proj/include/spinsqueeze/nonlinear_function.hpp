#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "spinsqueeze/errors.hpp"

namespace spinsqueeze {

namespace detail {

// AST for the F(N) expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := 'N' | number | 'sin' '(' expr ')' | 'cos' '(' expr ')'
//           | '(' expr ')' | '-' base
// No division and integer-only exponents keep every expression total on the
// nonnegative integers.
struct ExprNode {
  enum class Kind { number, var, add, sub, mul, neg, pow, sin, cos };

  Kind kind;
  double value = 0.0;           // number
  std::uint64_t exponent = 0;   // pow
  std::shared_ptr<const ExprNode> lhs, rhs;
};

inline double integer_power(double base, std::uint64_t e) {
  double r = 1.0;
  while (e != 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

inline double eval_expr(const ExprNode& node, double n) {
  using Kind = ExprNode::Kind;
  switch (node.kind) {
    case Kind::number: return node.value;
    case Kind::var: return n;
    case Kind::add: return eval_expr(*node.lhs, n) + eval_expr(*node.rhs, n);
    case Kind::sub: return eval_expr(*node.lhs, n) - eval_expr(*node.rhs, n);
    case Kind::mul: return eval_expr(*node.lhs, n) * eval_expr(*node.rhs, n);
    case Kind::neg: return -eval_expr(*node.lhs, n);
    case Kind::pow: return integer_power(eval_expr(*node.lhs, n), node.exponent);
    case Kind::sin: return std::sin(eval_expr(*node.lhs, n));
    case Kind::cos: return std::cos(eval_expr(*node.lhs, n));
  }
  return 0.0;  // unreachable
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  std::shared_ptr<const ExprNode> parse() {
    skip_ws();
    if (at_end()) throw parse_error("empty expression", pos_);
    auto root = parse_expr();
    skip_ws();
    if (!at_end()) throw parse_error("unexpected trailing input", pos_);
    return root;
  }

 private:
  using NodePtr = std::shared_ptr<const ExprNode>;

  static std::shared_ptr<ExprNode> make(ExprNode::Kind kind, NodePtr lhs = nullptr,
                                        NodePtr rhs = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  NodePtr parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        lhs = make(ExprNode::Kind::add, lhs, parse_term());
      } else if (peek() == '-') {
        ++pos_;
        lhs = make(ExprNode::Kind::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    auto lhs = parse_factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        lhs = make(ExprNode::Kind::mul, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    auto base = parse_base();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    const std::size_t exp_start = pos_;
    if (at_end() || std::isdigit(static_cast<unsigned char>(text_[pos_])) == 0) {
      throw parse_error("expected nonnegative integer exponent after '^'", pos_);
    }
    std::uint64_t e = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      e = e * 10u + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (e > 1'000'000'000u) throw parse_error("exponent too large", exp_start);
      ++pos_;
    }
    if (!at_end() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      throw parse_error("exponent must be a nonnegative integer", exp_start);
    }
    auto node = make(ExprNode::Kind::pow, base);
    node->exponent = e;
    return node;
  }

  NodePtr parse_base() {
    skip_ws();
    if (at_end()) throw parse_error("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_expr();
      expect(')');
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return make(ExprNode::Kind::neg, parse_base());
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0) return parse_identifier();
    if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') return parse_number();
    throw parse_error(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "N") return make(ExprNode::Kind::var);
    if (name == "sin" || name == "cos") {
      skip_ws();
      expect('(');
      auto arg = parse_expr();
      expect(')');
      return make(name == "sin" ? ExprNode::Kind::sin : ExprNode::Kind::cos, arg);
    }
    throw parse_error("unknown identifier '" + std::string(name) + "'", start);
  }

  NodePtr parse_number() {
    double value = 0.0;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) throw parse_error("malformed number", pos_);
    pos_ += static_cast<std::size_t>(ptr - begin);
    auto node = make(ExprNode::Kind::number);
    node->value = value;
    return node;
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || text_[pos_] != c) {
      throw parse_error(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// An evaluable real-valued map n -> F(n) on the nonnegative integers,
/// either parsed from an expression string or wrapped around a callable.
/// Immutable; evaluation is deterministic and safe to share across threads.
class NonlinearFunction {
 public:
  NonlinearFunction(std::string source, std::function<double(int)> fn)
      : source_(std::move(source)), fn_(std::move(fn)) {}

  /// Parses the expression grammar (see ExprNode). Throws parse_error with
  /// the offending byte offset on malformed input.
  static NonlinearFunction parse(std::string_view expr) {
    auto root = detail::ExprParser(expr).parse();
    return NonlinearFunction(
        std::string(expr),
        [root](int n) { return detail::eval_expr(*root, static_cast<double>(n)); });
  }

  /// F(n). Throws evaluation_error if the result is not finite.
  double operator()(int n) const {
    if (n < 0) throw std::invalid_argument("NonlinearFunction: negative n");
    const double v = fn_(n);
    if (!std::isfinite(v)) {
      throw evaluation_error("nonlinear function '" + source_ +
                             "' is not finite at n = " + std::to_string(n));
    }
    return v;
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::function<double(int)> fn_;
};

}  // namespace spinsqueeze
