#include "polydem/expression.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <vector>

namespace polydem {

struct Expression::Node {
  enum Kind { Number, Variable, Unary, Binary, Call } kind;
  double value = 0;
  int var = 0;  // 0:x 1:y 2:z 3:t 4:r
  char op = 0;
  std::string name;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool accept(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const std::string& msg) {
    fail("expression error at position " + std::to_string(pos) + " in \"" + s + "\": " + msg);
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip();
      if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        char op = s[pos++];
        NodePtr rhs = parse_term();
        auto n = std::make_shared<Node>();
        n->kind = Node::Binary;
        n->op = op;
        n->args = {lhs, rhs};
        lhs = n;
      } else {
        return lhs;
      }
    }
  }
  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      skip();
      if (pos < s.size() && (s[pos] == '*' || s[pos] == '/')) {
        char op = s[pos++];
        NodePtr rhs = parse_factor();
        auto n = std::make_shared<Node>();
        n->kind = Node::Binary;
        n->op = op;
        n->args = {lhs, rhs};
        lhs = n;
      } else {
        return lhs;
      }
    }
  }
  NodePtr parse_factor() {
    NodePtr base = parse_unary();
    skip();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      NodePtr exp = parse_factor();  // right associative
      auto n = std::make_shared<Node>();
      n->kind = Node::Binary;
      n->op = '^';
      n->args = {base, exp};
      return n;
    }
    return base;
  }
  NodePtr parse_unary() {
    skip();
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      char op = s[pos++];
      NodePtr inner = parse_unary();
      if (op == '+') return inner;
      auto n = std::make_shared<Node>();
      n->kind = Node::Unary;
      n->op = '-';
      n->args = {inner};
      return n;
    }
    return parse_primary();
  }
  NodePtr parse_primary() {
    skip();
    if (pos >= s.size()) error("unexpected end of input");
    char c = s[pos];
    if (std::isdigit((unsigned char)c) || c == '.') {
      size_t end;
      double v = std::stod(s.substr(pos), &end);
      pos += end;
      auto n = std::make_shared<Node>();
      n->kind = Node::Number;
      n->value = v;
      return n;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos;
      while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_')) ++pos;
      std::string name = s.substr(start, pos - start);
      skip();
      if (pos < s.size() && s[pos] == '(') {
        static const std::map<std::string, size_t> functions = {
            {"sin", 1}, {"cos", 1},   {"tan", 1}, {"sqrt", 1},      {"exp", 1},
            {"log", 1}, {"abs", 1},   {"heaviside", 1}, {"min", 2}, {"max", 2},
            {"pow", 2}, {"atan2", 2}};
        auto fn = functions.find(name);
        if (fn == functions.end()) error("unknown function '" + name + "'");
        ++pos;
        auto n = std::make_shared<Node>();
        n->kind = Node::Call;
        n->name = name;
        if (!accept(')')) {
          for (;;) {
            n->args.push_back(parse_expr());
            if (accept(')')) break;
            if (!accept(',')) error("expected ',' or ')' in call to " + name);
          }
        }
        if (n->args.size() != fn->second)
          error(name + " expects " + std::to_string(fn->second) + " argument(s)");
        return n;
      }
      static const std::map<std::string, int> vars = {
          {"x", 0}, {"y", 1}, {"z", 2}, {"t", 3}, {"r", 4}};
      auto it = vars.find(name);
      if (it != vars.end()) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Variable;
        n->var = it->second;
        return n;
      }
      if (name == "pi") {
        auto n = std::make_shared<Node>();
        n->kind = Node::Number;
        n->value = M_PI;
        return n;
      }
      if (name == "e") {
        auto n = std::make_shared<Node>();
        n->kind = Node::Number;
        n->value = M_E;
        return n;
      }
      error("unknown name '" + name + "'");
    }
    if (c == '(') {
      ++pos;
      NodePtr inner = parse_expr();
      if (!accept(')')) error("missing closing parenthesis");
      return inner;
    }
    error(std::string("unexpected character '") + c + "'");
  }
};

double eval_node(const Node& n, const Vec3& p, double t) {
  switch (n.kind) {
    case Node::Number:
      return n.value;
    case Node::Variable:
      switch (n.var) {
        case 0: return p.x();
        case 1: return p.y();
        case 2: return p.z();
        case 3: return t;
        default: return std::hypot(p.x(), p.y());
      }
    case Node::Unary:
      return -eval_node(*n.args[0], p, t);
    case Node::Binary: {
      double a = eval_node(*n.args[0], p, t);
      double b = eval_node(*n.args[1], p, t);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: return std::pow(a, b);
      }
    }
    case Node::Call: {
      auto arg = [&](size_t i) { return eval_node(*n.args[i], p, t); };
      auto need = [&](size_t k) {
        if (n.args.size() != k)
          fail("expression: " + n.name + " expects " + std::to_string(k) + " argument(s)");
      };
      if (n.name == "sin") { need(1); return std::sin(arg(0)); }
      if (n.name == "cos") { need(1); return std::cos(arg(0)); }
      if (n.name == "tan") { need(1); return std::tan(arg(0)); }
      if (n.name == "sqrt") { need(1); return std::sqrt(arg(0)); }
      if (n.name == "exp") { need(1); return std::exp(arg(0)); }
      if (n.name == "log") { need(1); return std::log(arg(0)); }
      if (n.name == "abs") { need(1); return std::abs(arg(0)); }
      if (n.name == "heaviside") { need(1); return arg(0) >= 0 ? 1.0 : 0.0; }
      if (n.name == "min") { need(2); return std::min(arg(0), arg(1)); }
      if (n.name == "max") { need(2); return std::max(arg(0), arg(1)); }
      if (n.name == "pow") { need(2); return std::pow(arg(0), arg(1)); }
      if (n.name == "atan2") { need(2); return std::atan2(arg(0), arg(1)); }
      fail("expression: unknown function '" + n.name + "'");
    }
  }
  return 0;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Parser p(text);
  Expression e;
  e.root_ = p.parse_expr();
  p.skip();
  if (p.pos != text.size()) p.error("trailing characters");
  e.text_ = text;
  return e;
}

double Expression::eval(const Vec3& pos, double t) const {
  if (!root_) fail("expression: evaluating an empty expression");
  return eval_node(*root_, pos, t);
}

VectorExpression VectorExpression::parse(const std::string& text, int dim) {
  // split at top-level commas
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if ((int)parts.size() > 3)
    fail("vector expression has more than three components: " + text);
  VectorExpression v;
  v.n_ = std::max<int>(dim, (int)parts.size());
  for (size_t i = 0; i < parts.size(); ++i) v.comp_[i] = Expression::parse(parts[i]);
  v.text_ = text;
  return v;
}

Vec3 VectorExpression::eval(const Vec3& pos, double t) const {
  Vec3 out = Vec3::Zero();
  for (int i = 0; i < 3; ++i)
    if (!comp_[i].empty()) out[i] = comp_[i].eval(pos, t);
  return out;
}

}  // namespace polydem
