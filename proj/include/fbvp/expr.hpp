#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "fbvp/error.hpp"

namespace fbvp {

/// The variables an expression may reference.
enum class Var : std::size_t { t = 0, u = 1, x = 2, s = 3 };
inline constexpr std::size_t kVarCount = 4;

const char* var_name(Var v);

/// Positional variable bindings for the evaluator's hot path.
class Bindings {
 public:
  Bindings& set(Var v, double value) {
    values_[static_cast<std::size_t>(v)] = value;
    bound_[static_cast<std::size_t>(v)] = true;
    return *this;
  }
  bool has(Var v) const { return bound_[static_cast<std::size_t>(v)]; }
  double get(Var v) const { return values_[static_cast<std::size_t>(v)]; }

 private:
  std::array<double, kVarCount> values_{};
  std::array<bool, kVarCount> bound_{};
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ValidationError(what), position_(position) {}
  /// Zero-based character offset of the offending token.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Immutable arithmetic expression tree. Copies share the tree.
class Expression {
 public:
  struct Node;

  Expression() = default;

  /// Throws DomainError on missing bindings, domain violations
  /// (log/sqrt of negatives, negative base with non-integer power) or a
  /// non-finite result.
  double evaluate(const Bindings& bindings) const;
  double evaluate(const std::map<std::string, double>& bindings) const;

  std::set<std::string> free_vars() const;

  /// Fully parenthesized form; re-parsing it yields an equivalent tree with
  /// bit-identical evaluation.
  std::string to_string() const;

  const std::string& source() const noexcept { return source_; }
  bool empty() const noexcept { return root_ == nullptr; }

 private:
  friend Expression parse(std::string_view, const std::set<std::string>&);
  std::shared_ptr<const Node> root_;
  std::string source_;
};

/// Recursive-descent parser. `^` is right-associative and binds tighter than
/// unary minus, which binds tighter than `* /`, then `+ -`. Identifiers
/// outside `allowed_vars` and the function table are rejected.
Expression parse(std::string_view source, const std::set<std::string>& allowed_vars);

}  // namespace fbvp
