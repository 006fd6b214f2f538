#include "ncips/proofsys.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace ncips {

namespace {

/// Whitespace-separated tokens with 1-based line/column of each.
struct DimacsToken {
  std::string text;
  std::size_t line, column;
};

std::vector<DimacsToken> dimacs_tokens(std::string_view text, std::vector<DimacsToken>& header) {
  std::vector<DimacsToken> body;
  std::size_t line = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(pos, end - pos);
    std::size_t first = row.find_first_not_of(" \t\r");
    bool is_comment = first != std::string_view::npos && row[first] == 'c';
    bool is_header = first != std::string_view::npos && row[first] == 'p';
    bool is_end = first != std::string_view::npos && row[first] == '%';
    if (is_end) break;
    if (!is_comment) {
      std::size_t i = 0;
      while (i < row.size()) {
        while (i < row.size() && std::isspace(static_cast<unsigned char>(row[i]))) ++i;
        std::size_t j = i;
        while (j < row.size() && !std::isspace(static_cast<unsigned char>(row[j]))) ++j;
        if (j > i) (is_header ? header : body).push_back({std::string(row.substr(i, j - i)), line, i + 1});
        i = j;
      }
    }
    if (end == text.size()) break;
    pos = end + 1;
    ++line;
  }
  return body;
}

long long to_int(const DimacsToken& t, const char* what) {
  long long v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size())
    throw ParseError(std::string("expected ") + what + ", got '" + t.text + "'", t.line, t.column);
  return v;
}

}  // namespace

Cnf parse_dimacs(std::string_view text) {
  std::vector<DimacsToken> header;
  auto body = dimacs_tokens(text, header);
  if (header.empty()) throw ParseError("missing 'p cnf' header", 1, 1);
  if (header.size() != 4 || header[0].text != "p" || header[1].text != "cnf")
    throw ParseError("malformed header, expected 'p cnf <vars> <clauses>'", header[0].line, header[0].column);
  long long nv = to_int(header[2], "variable count"), nc = to_int(header[3], "clause count");
  if (nv < 0 || nc < 0 || nv >= kYBase) throw ParseError("header counts out of range", header[0].line, header[0].column);
  for (const auto& t : body) {
    if (t.line < header[0].line) throw ParseError("clause data before the header", t.line, t.column);
  }
  Cnf cnf;
  cnf.num_vars = static_cast<std::uint32_t>(nv);
  std::vector<int> clause;
  for (const auto& t : body) {
    long long lit = to_int(t, "literal");
    if (lit == 0) {
      if (clause.empty()) throw ParseError("empty clause", t.line, t.column);
      cnf.clauses.push_back(std::move(clause));
      clause.clear();
      continue;
    }
    if (lit < -nv || lit > nv) throw ParseError("literal " + t.text + " out of range", t.line, t.column);
    clause.push_back(static_cast<int>(lit));
  }
  if (!clause.empty()) {
    const auto& last = body.back();
    throw ParseError("missing terminating 0", last.line, last.column + last.text.size());
  }
  if (static_cast<long long>(cnf.clauses.size()) != nc)
    throw ParseError("header announces " + std::to_string(nc) + " clauses, found " + std::to_string(cnf.clauses.size()),
                     header[0].line, header[0].column);
  return cnf;
}

std::string print_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

bool clause_satisfied(const std::vector<int>& clause, std::uint64_t point) {
  return std::any_of(clause.begin(), clause.end(), [&](int lit) {
    bool value = (point >> (std::abs(lit) - 1)) & 1u;
    return lit > 0 ? value : !value;
  });
}

PropFormula PropFormula::variable(std::uint32_t v) {
  PropFormula t;
  t.kind = PropKind::variable;
  t.var = v;
  return t;
}

PropFormula PropFormula::constant(bool value) {
  PropFormula t;
  t.kind = value ? PropKind::truth : PropKind::falsity;
  return t;
}

PropFormula PropFormula::negation(PropFormula a) {
  PropFormula t;
  t.kind = PropKind::negation;
  t.a = std::make_shared<const PropFormula>(std::move(a));
  return t;
}

PropFormula PropFormula::disjunction(PropFormula l, PropFormula r) {
  PropFormula t;
  t.kind = PropKind::disjunction;
  t.a = std::make_shared<const PropFormula>(std::move(l));
  t.b = std::make_shared<const PropFormula>(std::move(r));
  return t;
}

PropFormula PropFormula::conjunction(PropFormula l, PropFormula r) {
  PropFormula t = disjunction(std::move(l), std::move(r));
  t.kind = PropKind::conjunction;
  return t;
}

namespace {

class PropParser {
 public:
  explicit PropParser(std::string_view text) : text_(text) {}

  PropFormula parse_all() {
    PropFormula t = parse();
    skip();
    if (pos_ < text_.size()) error("trailing input");
    return t;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  PropFormula parse() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of input");
    if (text_[pos_] == ')') error("unexpected ')'");
    if (text_[pos_] != '(') {
      std::size_t start = pos_;
      std::string a = atom();
      if (a == "true") return PropFormula::constant(true);
      if (a == "false") return PropFormula::constant(false);
      if (a.size() >= 2 && a[0] == 'x' && std::all_of(a.begin() + 1, a.end(), ::isdigit)) {
        unsigned long v = std::stoul(a.substr(1));
        if (v >= 1 && v < kYBase) return PropFormula::variable(static_cast<std::uint32_t>(v));
      }
      pos_ = start;
      error("unknown atom '" + a + "'");
    }
    ++pos_;
    skip();
    std::size_t op_pos = pos_;
    std::string op = atom();
    PropFormula out;
    if (op == "not") {
      out = PropFormula::negation(parse());
    } else if (op == "or" || op == "and") {
      PropFormula l = parse();
      PropFormula r = parse();
      out = op == "or" ? PropFormula::disjunction(std::move(l), std::move(r))
                       : PropFormula::conjunction(std::move(l), std::move(r));
    } else {
      pos_ = op_pos;
      error("unknown connective '" + op + "'");
    }
    skip();
    if (pos_ >= text_.size() || text_[pos_] != ')') error("expected ')'");
    ++pos_;
    return out;
  }
};

}  // namespace

PropFormula parse_prop(std::string_view text) { return PropParser(text).parse_all(); }

std::string print_prop(const PropFormula& t) {
  switch (t.kind) {
    case PropKind::variable:
      return "x" + std::to_string(t.var);
    case PropKind::truth:
      return "true";
    case PropKind::falsity:
      return "false";
    case PropKind::negation:
      return "(not " + print_prop(*t.a) + ")";
    case PropKind::disjunction:
      return "(or " + print_prop(*t.a) + " " + print_prop(*t.b) + ")";
    case PropKind::conjunction:
      return "(and " + print_prop(*t.a) + " " + print_prop(*t.b) + ")";
  }
  return "";
}

bool evaluate_prop(const PropFormula& t, std::uint64_t point) {
  switch (t.kind) {
    case PropKind::variable:
      return (point >> (t.var - 1)) & 1u;
    case PropKind::truth:
      return true;
    case PropKind::falsity:
      return false;
    case PropKind::negation:
      return !evaluate_prop(*t.a, point);
    case PropKind::disjunction:
      return evaluate_prop(*t.a, point) || evaluate_prop(*t.b, point);
    case PropKind::conjunction:
      return evaluate_prop(*t.a, point) && evaluate_prop(*t.b, point);
  }
  return false;
}

std::uint32_t prop_num_vars(const PropFormula& t) {
  switch (t.kind) {
    case PropKind::variable:
      return t.var;
    case PropKind::truth:
    case PropKind::falsity:
      return 0;
    case PropKind::negation:
      return prop_num_vars(*t.a);
    default:
      return std::max(prop_num_vars(*t.a), prop_num_vars(*t.b));
  }
}

std::string to_string(const AxiomTag& tag) {
  switch (tag.role) {
    case AxiomRole::input:
      return "input:" + std::to_string(tag.i);
    case AxiomRole::boolean:
      return "boolean:" + std::to_string(tag.i);
    case AxiomRole::commutator:
      return "commutator:" + std::to_string(tag.i) + "," + std::to_string(tag.j);
  }
  return "";
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::zero:
      return "zero";
    case Rule::unit:
      return "unit";
    case Rule::scalar:
      return "scalar";
    case Rule::comm_add:
      return "comm-add";
    case Rule::comm_mul:
      return "comm-mul";
    case Rule::assoc_add:
      return "assoc-add";
    case Rule::assoc_mul:
      return "assoc-mul";
    case Rule::distrib:
      return "distrib";
  }
  return "?";
}

std::optional<Rule> parse_rule(std::string_view name) {
  for (Rule r : {Rule::zero, Rule::unit, Rule::scalar, Rule::comm_add, Rule::comm_mul, Rule::assoc_add, Rule::assoc_mul,
                 Rule::distrib}) {
    if (name == rule_name(r)) return r;
  }
  return std::nullopt;
}

std::vector<bool> parse_path(std::string_view path) {
  std::vector<bool> out;
  for (char c : path) {
    if (c == 'L' || c == 'l') {
      out.push_back(false);
    } else if (c == 'R' || c == 'r') {
      out.push_back(true);
    } else {
      throw PreconditionError(std::string("bad path step '") + c + "', expected L or R");
    }
  }
  return out;
}

}  // namespace ncips
