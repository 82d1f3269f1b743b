#include "planrec/sexpr.hpp"

#include <cctype>
#include <charconv>
#include <system_error>

namespace planrec {

std::string to_string(const SourcePos& pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

ParseError::ParseError(const std::string& what, SourcePos pos)
    : Error(to_string(pos) + ": " + what), pos_(pos) {}

ParseError::ParseError(const std::string& what) : Error(what) {}

ValidationError::ValidationError(const std::string& what, SourcePos pos)
    : Error(to_string(pos) + ": " + what) {}

namespace {

bool is_delimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' || c == ';';
}

// Accepts the strtod subset produced by from_chars (general format), plus an
// optional leading '+'. Words like "inf" or "nan" stay symbols.
bool parse_number(std::string_view token, double& out) {
  std::string_view body = token;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  std::size_t first = (!body.empty() && body.front() == '-') ? 1 : 0;
  if (first >= body.size()) return false;
  char c = body[first];
  if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.') return false;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
  return ec == std::errc{} && ptr == body.data() + body.size();
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Sexpr read_top() {
    skip_blank();
    if (at_end()) throw ParseError("empty input", pos_);
    Sexpr e = read();
    skip_blank();
    if (!at_end()) throw ParseError("unexpected content after expression", pos_);
    return e;
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }

  char advance() {
    char c = text_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  void skip_blank() {
    while (!at_end()) {
      char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Sexpr read() {
    SourcePos start = pos_;
    char c = peek();
    if (c == '(') {
      advance();
      Sexpr::List items;
      for (;;) {
        skip_blank();
        if (at_end()) throw ParseError("unbalanced parentheses: list is never closed", start);
        if (peek() == ')') {
          advance();
          return Sexpr::list(std::move(items), start);
        }
        items.push_back(read());
      }
    }
    if (c == ')') throw ParseError("unbalanced parentheses: unexpected ')'", start);
    if (c == '"') return read_string(start);
    return read_atom(start);
  }

  Sexpr read_string(SourcePos start) {
    advance();
    std::string value;
    for (;;) {
      if (at_end()) throw ParseError("unterminated string", start);
      char c = advance();
      if (c == '"') return Sexpr::string(std::move(value), start);
      if (c == '\\') {
        if (at_end()) throw ParseError("unterminated string", start);
        char esc = advance();
        switch (esc) {
          case 'n': value.push_back('\n'); break;
          case 't': value.push_back('\t'); break;
          case '"':
          case '\\': value.push_back(esc); break;
          default: throw ParseError(std::string("unknown escape \\") + esc, start);
        }
      } else {
        value.push_back(c);
      }
    }
  }

  Sexpr read_atom(SourcePos start) {
    std::size_t begin = i_;
    while (!at_end() && !is_delimiter(peek())) advance();
    std::string_view token = text_.substr(begin, i_ - begin);
    double d = 0.0;
    if (parse_number(token, d)) return Sexpr::number(d, start);
    return Sexpr::symbol(std::string(token), start);
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

void write(const Sexpr& e, std::string& out) {
  if (e.is_list()) {
    out.push_back('(');
    bool first = true;
    for (const auto& child : e.as_list()) {
      if (!first) out.push_back(' ');
      first = false;
      write(child, out);
    }
    out.push_back(')');
  } else if (e.is_symbol()) {
    out += e.as_symbol();
  } else if (e.is_string()) {
    out.push_back('"');
    for (char c : e.as_string()) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out.push_back(c);
      }
    }
    out.push_back('"');
  } else {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e.as_number());
    out.append(buf, ptr);
  }
}

}  // namespace

Sexpr parse_sexpr(std::string_view text) { return Reader(text).read_top(); }

std::string serialize(const Sexpr& expr) {
  std::string out;
  write(expr, out);
  return out;
}

}  // namespace planrec
