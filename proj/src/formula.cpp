#include "ncips/formula.hpp"

#include <cctype>

namespace ncips::detail {

Token Lexer::next() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == '\n') {
      ++line_;
      column_ = 1;
      ++pos_;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++column_;
      ++pos_;
    } else {
      break;
    }
  }
  if (pos_ == text_.size()) return {Token::end, "", line_, column_};
  Token t{Token::atom, "", line_, column_};
  char c = text_[pos_];
  if (c == '(' || c == ')') {
    t.kind = c == '(' ? Token::open : Token::close;
    t.text = std::string(1, c);
    ++pos_;
    ++column_;
    return t;
  }
  std::size_t start = pos_;
  while (pos_ < text_.size()) {
    char d = text_[pos_];
    if (d == '(' || d == ')' || std::isspace(static_cast<unsigned char>(d))) break;
    ++pos_;
    ++column_;
  }
  t.text = std::string(text_.substr(start, pos_ - start));
  return t;
}

std::optional<Var> parse_var_atom(const Token& t) {
  if (t.text.size() < 2 || (t.text[0] != 'x' && t.text[0] != 'y')) return std::nullopt;
  std::uint64_t n = 0;
  for (std::size_t i = 1; i < t.text.size(); ++i) {
    char c = t.text[i];
    if (c < '0' || c > '9') throw ParseError("bad variable '" + t.text + "'", t.line, t.column);
    n = n * 10 + static_cast<std::uint64_t>(c - '0');
    if (n >= kYBase) throw ParseError("variable index too large in '" + t.text + "'", t.line, t.column);
  }
  if (n == 0) throw ParseError("variable indices are 1-based: '" + t.text + "'", t.line, t.column);
  return t.text[0] == 'x' ? x_var(static_cast<std::uint32_t>(n)) : y_var(static_cast<std::uint32_t>(n));
}

}  // namespace ncips::detail
