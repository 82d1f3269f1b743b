#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "planrec/error.hpp"

namespace planrec {

struct Symbol {
  std::string name;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct String {
  std::string value;
  friend bool operator==(const String&, const String&) = default;
};

struct Number {
  double value = 0.0;
  friend bool operator==(const Number&, const Number&) = default;
};

/// A node of an s-expression tree. Lists own their children by value.
class Sexpr {
 public:
  using List = std::vector<Sexpr>;
  using Value = std::variant<Symbol, String, Number, List>;

  Sexpr() : value_(List{}) {}
  Sexpr(Value v, SourcePos pos = {}) : value_(std::move(v)), pos_(pos) {}

  static Sexpr symbol(std::string name, SourcePos pos = {}) { return {Symbol{std::move(name)}, pos}; }
  static Sexpr string(std::string s, SourcePos pos = {}) { return {String{std::move(s)}, pos}; }
  static Sexpr number(double d, SourcePos pos = {}) { return {Number{d}, pos}; }
  static Sexpr list(List items, SourcePos pos = {}) { return {std::move(items), pos}; }

  bool is_symbol() const { return std::holds_alternative<Symbol>(value_); }
  bool is_string() const { return std::holds_alternative<String>(value_); }
  bool is_number() const { return std::holds_alternative<Number>(value_); }
  bool is_list() const { return std::holds_alternative<List>(value_); }

  bool is_symbol(std::string_view name) const {
    return is_symbol() && std::get<Symbol>(value_).name == name;
  }

  const std::string& as_symbol() const { return std::get<Symbol>(value_).name; }
  const std::string& as_string() const { return std::get<String>(value_).value; }
  double as_number() const { return std::get<Number>(value_).value; }
  const List& as_list() const { return std::get<List>(value_); }

  const Value& value() const { return value_; }
  const SourcePos& pos() const { return pos_; }

  /// Structural equality; positions are ignored.
  friend bool operator==(const Sexpr& a, const Sexpr& b) { return a.value_ == b.value_; }

 private:
  Value value_;
  SourcePos pos_;
};

/// Parses exactly one s-expression. `;` starts a comment running to end of line.
/// Throws ParseError (with line/column) on unbalanced parentheses, unterminated
/// strings, empty input or trailing content.
Sexpr parse_sexpr(std::string_view text);

/// Canonical single-line form: lists as `(a b c)`, strings quoted and escaped,
/// numbers in shortest round-trip representation.
std::string serialize(const Sexpr& expr);

}  // namespace planrec
