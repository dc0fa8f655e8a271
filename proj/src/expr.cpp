#include "ckstk/expr.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <vector>

#include "ckstk/errors.hpp"

namespace ckstk {

namespace {

struct Node {
  enum class Kind { Number, Var, Add, Sub, Mul, Div, Pow, Exp, Log, Sqrt };
  Kind kind;
  double value = 0.0;  // Number
  std::unique_ptr<Node> lhs, rhs;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make_node(Node::Kind k, NodePtr l = nullptr, NodePtr r = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

double eval_node(const Node& n, double r) {
  switch (n.kind) {
    case Node::Kind::Number: return n.value;
    case Node::Kind::Var: return r;
    case Node::Kind::Add: return eval_node(*n.lhs, r) + eval_node(*n.rhs, r);
    case Node::Kind::Sub: return eval_node(*n.lhs, r) - eval_node(*n.rhs, r);
    case Node::Kind::Mul: return eval_node(*n.lhs, r) * eval_node(*n.rhs, r);
    case Node::Kind::Div: return eval_node(*n.lhs, r) / eval_node(*n.rhs, r);
    case Node::Kind::Pow: return std::pow(eval_node(*n.lhs, r), eval_node(*n.rhs, r));
    case Node::Kind::Exp: return std::exp(eval_node(*n.lhs, r));
    case Node::Kind::Log: return std::log(eval_node(*n.lhs, r));
    case Node::Kind::Sqrt: return std::sqrt(eval_node(*n.lhs, r));
  }
  return 0.0;
}

class Parser {
public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr parse() {
    auto e = parse_expr();
    skip_ws();
    if (pos_ < text_.size())
      fail(pos_, "end of input or operator");
    return e;
  }

private:
  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t last_token_pos_ = 0;

  [[noreturn]] void fail(std::size_t pos, const std::string& expected) {
    throw ParseError("parse error at position " + std::to_string(pos) +
                         ": expected " + expected,
                     pos, expected);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      last_token_pos_ = pos_;
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!accept(c)) fail(at_end() ? last_token_pos_ : pos_, what);
  }

  NodePtr parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = make_node(Node::Kind::Add, std::move(lhs), parse_term());
      else if (accept('-'))
        lhs = make_node(Node::Kind::Sub, std::move(lhs), parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    auto lhs = parse_factor();
    for (;;) {
      if (accept('*'))
        lhs = make_node(Node::Kind::Mul, std::move(lhs), parse_factor());
      else if (accept('/'))
        lhs = make_node(Node::Kind::Div, std::move(lhs), parse_factor());
      else
        return lhs;
    }
  }

  NodePtr parse_factor() {
    auto base = parse_base();
    if (accept('^'))
      return make_node(Node::Kind::Pow, std::move(base), parse_base());
    return base;
  }

  NodePtr parse_base() {
    static const std::string kExpected = "number, 'r', '(' or function";
    if (at_end()) fail(last_token_pos_, kExpected);
    skip_ws();
    const char c = text_[pos_];

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      last_token_pos_ = pos_;
      std::size_t consumed = 0;
      double v;
      try {
        v = std::stod(text_.substr(pos_), &consumed);
      } catch (const std::exception&) {
        fail(pos_, "a decimal number");
      }
      pos_ += consumed;
      auto n = make_node(Node::Kind::Number);
      n->value = v;
      return n;
    }

    if (std::isalpha(static_cast<unsigned char>(c))) {
      last_token_pos_ = pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isalpha(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      const std::string word = text_.substr(start, pos_ - start);
      if (word == "r") return make_node(Node::Kind::Var);
      Node::Kind k;
      if (word == "exp") k = Node::Kind::Exp;
      else if (word == "log") k = Node::Kind::Log;
      else if (word == "sqrt") k = Node::Kind::Sqrt;
      else fail(start, kExpected);
      expect('(', "'(' after function name");
      auto arg = parse_expr();
      expect(')', "')'");
      return make_node(k, std::move(arg));
    }

    if (c == '(') {
      last_token_pos_ = pos_;
      ++pos_;
      auto e = parse_expr();
      expect(')', "')'");
      return e;
    }

    fail(pos_, kExpected);
  }
};

}  // namespace

GrowthFunction parse_growth(const std::string& expr) {
  auto parser = std::make_shared<Parser>(expr);
  std::shared_ptr<Node> root{parser->parse().release()};

  GrowthFunction g;
  g.name = "custom";
  const bool root_is_exp = root->kind == Node::Kind::Exp;
  if (root_is_exp) {
    // evaluate log u directly on the exponent
    std::shared_ptr<Node> arg{root, root->lhs.get()};
    g.log_eval = [arg](double r) {
      if (r < 0.0) throw BadParam("growth function: r must be >= 0");
      const double v = eval_node(*arg, r);
      if (std::isnan(v)) throw EvalFailure("custom growth: log u(r) is NaN");
      return v;
    };
  } else {
    std::shared_ptr<Node> keep = root;
    g.log_eval = [keep](double r) {
      if (r < 0.0) throw BadParam("growth function: r must be >= 0");
      const double v = eval_node(*keep, r);
      if (std::isnan(v) || v <= 0.0)
        throw EvalFailure("custom growth: u(r) not a positive real");
      return std::log(v);
    };
  }

  // sign probe per contract
  for (double r : {0.0, 1.0, 10.0}) {
    if (root_is_exp) {
      g.log_eval(r);  // NaN check only; exp(...) is positive by construction
    } else {
      const double v = eval_node(*root, r);
      if (std::isnan(v) || v <= 0.0)
        throw NonPositive("custom growth: u(" + std::to_string(r) +
                              ") is not positive",
                          r);
    }
  }
  return g;
}

}  // namespace ckstk
