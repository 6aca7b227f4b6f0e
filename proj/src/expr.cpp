#include "fbvp/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "fbvp/special.hpp"

namespace fbvp {

enum class Op { number, variable, neg, add, sub, mul, div, pow, call };

enum class Func { exp, log, sqrt, abs, sin, cos, pow, gamma };

struct Expression::Node {
  Op op;
  double value = 0.0;
  Var var = Var::t;
  Func func = Func::exp;
  std::vector<std::shared_ptr<const Node>> args;
};

using NodePtr = std::shared_ptr<const Expression::Node>;

namespace {

struct FuncInfo {
  const char* name;
  Func func;
  std::size_t arity;
};

constexpr FuncInfo kFunctions[] = {
    {"exp", Func::exp, 1},   {"log", Func::log, 1}, {"sqrt", Func::sqrt, 1},
    {"abs", Func::abs, 1},   {"sin", Func::sin, 1}, {"cos", Func::cos, 1},
    {"pow", Func::pow, 2},   {"gamma", Func::gamma, 1},
};

const char* func_name(Func f) {
  for (const auto& info : kFunctions) {
    if (info.func == f) return info.name;
  }
  return "?";
}

bool var_from_name(std::string_view name, Var& out) {
  static constexpr Var kAll[] = {Var::t, Var::u, Var::x, Var::s};
  for (Var v : kAll) {
    if (name == var_name(v)) {
      out = v;
      return true;
    }
  }
  return false;
}

NodePtr make(Op op, std::vector<NodePtr> args = {}) {
  auto node = std::make_shared<Expression::Node>();
  node->op = op;
  node->args = std::move(args);
  return node;
}

class Parser {
 public:
  Parser(std::string_view src, const std::set<std::string>& allowed)
      : src_(src), allowed_(allowed) {}

  NodePtr parse_all() {
    skip_ws();
    if (pos_ >= src_.size()) fail("empty expression");
    NodePtr root = parse_sum();
    skip_ws();
    if (pos_ < src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError("syntax error at position " + std::to_string(at) + ": " + what, at);
  }

  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    while (true) {
      if (accept('+')) {
        lhs = make(Op::add, {lhs, parse_product()});
      } else if (accept('-')) {
        lhs = make(Op::sub, {lhs, parse_product()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    while (true) {
      if (accept('*')) {
        lhs = make(Op::mul, {lhs, parse_unary()});
      } else if (accept('/')) {
        lhs = make(Op::div, {lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(Op::neg, {parse_unary()});
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make(Op::pow, {base, parse_unary()});
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum();
      expect(')');
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') {
        digits();
      } else {
        pos_ = save;
      }
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
      fail_at("malformed number '" + std::string(text) + "'", start);
    }
    auto node = std::make_shared<Expression::Node>();
    node->op = Op::number;
    node->value = value;
    return node;
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(src_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      for (const auto& info : kFunctions) {
        if (name != info.name) continue;
        ++pos_;
        std::vector<NodePtr> args{parse_sum()};
        while (accept(',')) args.push_back(parse_sum());
        expect(')');
        if (args.size() != info.arity) {
          fail_at("function '" + name + "' takes " + std::to_string(info.arity) + " argument(s)",
                  start);
        }
        auto node = std::make_shared<Expression::Node>();
        node->op = Op::call;
        node->func = info.func;
        node->args = std::move(args);
        return node;
      }
      fail_at("unknown function '" + name + "'", start);
    }
    Var var;
    if (!var_from_name(name, var) || !allowed_.contains(name)) {
      fail_at("unknown variable '" + name + "'", start);
    }
    auto node = std::make_shared<Expression::Node>();
    node->op = Op::variable;
    node->var = var;
    return node;
  }

  std::string_view src_;
  const std::set<std::string>& allowed_;
  std::size_t pos_ = 0;
};

double checked_pow(double base, double exponent) {
  if (base < 0.0 && std::trunc(exponent) != exponent) {
    throw DomainError("power of negative base with non-integer exponent");
  }
  return std::pow(base, exponent);
}

double apply(Func f, double x, double y) {
  switch (f) {
    case Func::exp: return std::exp(x);
    case Func::log:
      if (x < 0.0) throw DomainError("log of negative argument");
      return std::log(x);
    case Func::sqrt:
      if (x < 0.0) throw DomainError("sqrt of negative argument");
      return std::sqrt(x);
    case Func::abs: return std::abs(x);
    case Func::sin: return std::sin(x);
    case Func::cos: return std::cos(x);
    case Func::pow: return checked_pow(x, y);
    case Func::gamma: return x > 0.0 ? gamma_fn(x) : std::tgamma(x);
  }
  return 0.0;
}

double eval_node(const Expression::Node& n, const Bindings& b) {
  switch (n.op) {
    case Op::number: return n.value;
    case Op::variable:
      if (!b.has(n.var)) {
        throw DomainError(std::string("missing binding for variable '") + var_name(n.var) + "'");
      }
      return b.get(n.var);
    case Op::neg: return -eval_node(*n.args[0], b);
    case Op::add: return eval_node(*n.args[0], b) + eval_node(*n.args[1], b);
    case Op::sub: return eval_node(*n.args[0], b) - eval_node(*n.args[1], b);
    case Op::mul: return eval_node(*n.args[0], b) * eval_node(*n.args[1], b);
    case Op::div: return eval_node(*n.args[0], b) / eval_node(*n.args[1], b);
    case Op::pow: return checked_pow(eval_node(*n.args[0], b), eval_node(*n.args[1], b));
    case Op::call: {
      const double x = eval_node(*n.args[0], b);
      const double y = n.args.size() > 1 ? eval_node(*n.args[1], b) : 0.0;
      return apply(n.func, x, y);
    }
  }
  return 0.0;
}

void collect_vars(const Expression::Node& n, std::set<std::string>& out) {
  if (n.op == Op::variable) out.insert(var_name(n.var));
  for (const auto& child : n.args) collect_vars(*child, out);
}

void print(const Expression::Node& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print(*n.args[0], out);
    out += op;
    print(*n.args[1], out);
    out += ')';
  };
  switch (n.op) {
    case Op::number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      break;
    }
    case Op::variable: out += var_name(n.var); break;
    case Op::neg:
      out += "(-";
      print(*n.args[0], out);
      out += ')';
      break;
    case Op::add: binary(" + "); break;
    case Op::sub: binary(" - "); break;
    case Op::mul: binary(" * "); break;
    case Op::div: binary(" / "); break;
    case Op::pow: binary(" ^ "); break;
    case Op::call:
      out += func_name(n.func);
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print(*n.args[i], out);
      }
      out += ')';
      break;
  }
}

}  // namespace

const char* var_name(Var v) {
  switch (v) {
    case Var::t: return "t";
    case Var::u: return "u";
    case Var::x: return "x";
    case Var::s: return "s";
  }
  return "?";
}

double Expression::evaluate(const Bindings& bindings) const {
  if (!root_) throw DomainError("evaluate: empty expression");
  const double v = eval_node(*root_, bindings);
  if (!std::isfinite(v)) throw DomainError("expression '" + source_ + "' produced a non-finite value");
  return v;
}

double Expression::evaluate(const std::map<std::string, double>& bindings) const {
  Bindings b;
  for (const auto& [name, value] : bindings) {
    Var v;
    if (var_from_name(name, v)) b.set(v, value);
  }
  return evaluate(b);
}

std::set<std::string> Expression::free_vars() const {
  std::set<std::string> vars;
  if (root_) collect_vars(*root_, vars);
  return vars;
}

std::string Expression::to_string() const {
  std::string out;
  if (root_) print(*root_, out);
  return out;
}

Expression parse(std::string_view source, const std::set<std::string>& allowed_vars) {
  Parser parser(source, allowed_vars);
  Expression e;
  e.root_ = parser.parse_all();
  e.source_ = std::string(source);
  return e;
}

}  // namespace fbvp
