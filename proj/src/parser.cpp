#include "perioctrl/parser.hpp"

#include <cctype>
#include <json.hpp>

namespace perioctrl {

namespace {

struct Cursor {
  const std::string& src;
  std::size_t pos;
  std::size_t end;
  int line = 1;
  int col = 1;

  Cursor(const std::string& s, std::size_t begin, std::size_t stop) : src(s), pos(0), end(stop) {
    while (pos < begin) step();
  }

  bool eof() const { return pos >= end; }
  char peek() const { return eof() ? '\0' : src[pos]; }
  void step() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(src[pos]))) step();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
};

/// Recursive-descent parser over the entry grammar. The Algebra policy
/// supplies the value type and the variable/constant semantics; the same
/// structure serves both the input language and the report dialect.
template <class Algebra>
class ExprParser {
public:
  using Value = typename Algebra::Value;

  ExprParser(Cursor cur, Algebra alg, bool allow_div)
      : cur_(cur), alg_(alg), allow_div_(allow_div) {}

  Value parse_full() {
    Value v = parse_expr();
    cur_.skip_ws();
    if (!cur_.eof()) cur_.fail("unexpected trailing input");
    return v;
  }

private:
  Value parse_expr() {
    Value v = parse_term();
    for (;;) {
      cur_.skip_ws();
      char c = cur_.peek();
      if (c == '+') {
        cur_.step();
        v = alg_.add(v, parse_term());
      } else if (c == '-') {
        cur_.step();
        v = alg_.sub(v, parse_term());
      } else {
        return v;
      }
    }
  }

  Value parse_term() {
    Value v = parse_factor();
    for (;;) {
      cur_.skip_ws();
      char c = cur_.peek();
      if (c == '*') {
        cur_.step();
        v = alg_.mul(v, parse_factor());
      } else if (c == '/' && allow_div_) {
        cur_.step();
        int line = cur_.line, col = cur_.col;
        Value rhs = parse_factor();
        v = alg_.div(v, rhs, line, col);
      } else {
        return v;
      }
    }
  }

  Value parse_factor() {
    Value v = parse_base();
    cur_.skip_ws();
    if (cur_.peek() == '^') {
      cur_.step();
      cur_.skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(cur_.peek())))
        cur_.fail("exponent must be a nonnegative integer");
      unsigned long e = parse_uint();
      v = alg_.pow(v, static_cast<unsigned>(e));
    }
    return v;
  }

  Value parse_base() {
    cur_.skip_ws();
    char c = cur_.peek();
    if (c == '(') {
      cur_.step();
      Value v = parse_expr();
      cur_.skip_ws();
      if (cur_.peek() != ')') cur_.fail("expected ')'");
      cur_.step();
      return v;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return parse_rational();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_symbol();
    if (cur_.eof()) cur_.fail("unexpected end of input");
    cur_.fail(std::string("unexpected character '") + c + "'");
  }

  Value parse_rational() {
    bool neg = false;
    if (cur_.peek() == '-') {
      neg = true;
      cur_.step();
      cur_.skip_ws();
      if (!std::isdigit(static_cast<unsigned char>(cur_.peek())))
        cur_.fail("expected digits after '-'");
    }
    Integer num(digits());
    if (neg) num = -num;
    // The denominator binds to the literal only when digits follow directly,
    // so a parenthesized divisor in the report dialect still parses as a
    // term-level division.
    std::size_t save_pos = cur_.pos;
    int save_line = cur_.line, save_col = cur_.col;
    cur_.skip_ws();
    if (cur_.peek() == '/') {
      cur_.step();
      cur_.skip_ws();
      if (std::isdigit(static_cast<unsigned char>(cur_.peek()))) {
        Integer den(digits());
        if (den == 0) cur_.fail("zero denominator in rational literal");
        return alg_.rational(Rational(num, den));
      }
      if (!allow_div_) cur_.fail("expected integer denominator");
      // Rewind: the '/' belongs to the enclosing term.
      cur_.pos = save_pos;
      cur_.line = save_line;
      cur_.col = save_col;
    } else {
      cur_.pos = save_pos;
      cur_.line = save_line;
      cur_.col = save_col;
    }
    return alg_.rational(Rational(num));
  }

  Value parse_symbol() {
    int line = cur_.line, col = cur_.col;
    std::string name;
    while (!cur_.eof() && (std::isalnum(static_cast<unsigned char>(cur_.peek())))) {
      name.push_back(cur_.peek());
      cur_.step();
    }
    return alg_.symbol(name, line, col);
  }

  unsigned long parse_uint() {
    std::string ds = digits();
    try {
      return std::stoul(ds);
    } catch (const std::out_of_range&) {
      cur_.fail("exponent out of range");
    }
  }

  std::string digits() {
    std::string ds;
    while (!cur_.eof() && std::isdigit(static_cast<unsigned char>(cur_.peek()))) {
      ds.push_back(cur_.peek());
      cur_.step();
    }
    if (ds.empty()) cur_.fail("expected digits");
    return ds;
  }

  Cursor cur_;
  Algebra alg_;
  bool allow_div_;
};

/// Input-language semantics: values are MultiPoly in (x1..xd, t).
struct InputAlgebra {
  using Value = MultiPoly;
  std::size_t d;

  Value rational(const Rational& r) const {
    return MultiPoly::constant(d + 1, GaussianRational(r));
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value pow(const Value& a, unsigned e) const { return a.pow(e); }
  [[noreturn]] Value div(const Value&, const Value&, int line, int col) const {
    throw ParseError("division is not part of the input language", line, col);
  }
  Value symbol(const std::string& name, int line, int col) const {
    if (name == "t") return MultiPoly::variable(d + 1, d);
    if (name == "i") return MultiPoly::constant(d + 1, GaussianRational::i());
    if (name.size() >= 2 && name[0] == 'x') {
      for (std::size_t k = 1; k < name.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(name[k])))
          throw ParseError("unknown symbol '" + name + "'", line, col);
      unsigned long idx = 0;
      try {
        idx = std::stoul(name.substr(1));
      } catch (const std::out_of_range&) {
        throw ParseError("variable index out of range in '" + name + "'", line, col);
      }
      if (idx == 0 || idx > d)
        throw ParseError("variable index " + std::to_string(idx) + " out of range for d = " +
                             std::to_string(d),
                         line, col);
      return MultiPoly::variable(d + 1, idx - 1);
    }
    throw ParseError("unknown symbol '" + name + "'", line, col);
  }
};

/// Report-dialect semantics: values are rational functions over F[tau], so
/// coefficient fractions like (pi^2 - i)/(pi + 2) evaluate exactly.
struct ReportAlgebra {
  using Value = RatFunc;

  Value rational(const Rational& r) const {
    return RatFunc(unipoly_const(field_from(r)));
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value pow(const Value& a, unsigned e) const { return a.pow(e); }
  Value div(const Value& a, const Value& b, int line, int col) const {
    if (b.is_zero()) throw ParseError("division by zero", line, col);
    return a / b;
  }
  Value symbol(const std::string& name, int line, int col) const {
    if (name == "t") return RatFunc(unipoly_tau());
    if (name == "i") return RatFunc(unipoly_const(field_i()));
    if (name == "pi") return RatFunc(unipoly_const(field_pi()));
    throw ParseError("unknown symbol '" + name + "'", line, col);
  }
};

int line_of(const std::string& s, std::size_t pos) {
  int line = 1;
  for (std::size_t k = 0; k < pos && k < s.size(); ++k)
    if (s[k] == '\n') ++line;
  return line;
}

int col_of(const std::string& s, std::size_t pos) {
  int col = 1;
  for (std::size_t k = 0; k < pos && k < s.size(); ++k)
    col = s[k] == '\n' ? 1 : col + 1;
  return col;
}

MultiPoly parse_entry_range(const std::string& src, std::size_t begin, std::size_t end,
                            std::size_t d) {
  Cursor cur(src, begin, end);
  return ExprParser<InputAlgebra>(cur, InputAlgebra{d}, false).parse_full();
}

/// Bare bracket form: '[' row (',' row)* ']' with row = '[' entry (',' entry)* ']'.
MultiPolyMatrix parse_bare_matrix(const std::string& src, std::size_t d) {
  Cursor cur(src, 0, src.size());
  cur.skip_ws();
  if (cur.peek() != '[') cur.fail("expected '[' to open the matrix");
  cur.step();
  std::vector<std::vector<MultiPoly>> rows;
  for (;;) {
    cur.skip_ws();
    if (cur.peek() != '[') cur.fail("expected '[' to open a row");
    cur.step();
    std::vector<MultiPoly> row;
    for (;;) {
      cur.skip_ws();
      std::size_t begin = cur.pos;
      int depth = 0;
      while (!cur.eof()) {
        char c = cur.peek();
        if (c == '(') ++depth;
        if (c == ')') {
          if (depth == 0) cur.fail("unbalanced ')'");
          --depth;
        }
        if (depth == 0 && (c == ',' || c == ']')) break;
        if (c == '[') cur.fail("unexpected '[' inside an entry");
        cur.step();
      }
      if (cur.eof()) cur.fail("unterminated row");
      if (cur.pos == begin) cur.fail("empty matrix entry");
      row.push_back(parse_entry_range(src, begin, cur.pos, d));
      if (cur.peek() == ']') {
        cur.step();
        break;
      }
      cur.step();  // consume ','
    }
    rows.push_back(std::move(row));
    cur.skip_ws();
    if (cur.peek() == ',') {
      cur.step();
      continue;
    }
    if (cur.peek() != ']') cur.fail("expected ',' or ']' after a row");
    cur.step();
    break;
  }
  cur.skip_ws();
  if (!cur.eof()) cur.fail("unexpected trailing input after matrix");

  std::size_t n = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != n) throw ParseError("matrix rows have unequal lengths", 1, 1);
  MultiPolyMatrix M(rows.size(), n, d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) M.at(i, j) = std::move(rows[i][j]);
  return M;
}

}  // namespace

MultiPoly parse_poly(const std::string& src, std::size_t d) {
  Cursor cur(src, 0, src.size());
  return ExprParser<InputAlgebra>(cur, InputAlgebra{d}, false).parse_full();
}

MultiPolyMatrix parse_matrix(const std::string& source, std::size_t d) {
  // JSON array-of-arrays of entry strings is the primary form; the bare
  // bracket form is accepted because unquoted entries are not valid JSON.
  nlohmann::json js = nlohmann::json::parse(source, nullptr, false);
  if (js.is_discarded()) return parse_bare_matrix(source, d);
  if (!js.is_array() || js.empty())
    throw ParseError("matrix source must be a nonempty array of rows", 1, 1);

  std::vector<std::vector<std::string>> cells;
  for (const auto& row : js) {
    if (!row.is_array() || row.empty())
      throw ParseError("each matrix row must be a nonempty array", 1, 1);
    std::vector<std::string> r;
    for (const auto& e : row) {
      if (e.is_string())
        r.push_back(e.get<std::string>());
      else if (e.is_number_integer())
        r.push_back(std::to_string(e.get<long long>()));
      else
        throw ParseError("matrix entries must be polynomial strings", 1, 1);
    }
    cells.push_back(std::move(r));
  }
  std::size_t n = cells[0].size();
  for (const auto& r : cells)
    if (r.size() != n) throw ParseError("matrix rows have unequal lengths", 1, 1);

  MultiPolyMatrix M(cells.size(), n, d);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      try {
        M.at(i, j) = parse_poly(cells[i][j], d);
      } catch (const ParseError& err) {
        throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             "): " + err.raw,
                         err.line, err.col);
      }
    }
  return M;
}

UniPoly parse_unipoly_pi(const std::string& src) {
  Cursor cur(src, 0, src.size());
  RatFunc v = ExprParser<ReportAlgebra>(cur, ReportAlgebra{}, true).parse_full();
  if (!v.is_polynomial()) {
    int line = line_of(src, src.size());
    throw ParseError("expression is not a polynomial in t", line, col_of(src, src.size()));
  }
  return v.num();
}

}  // namespace perioctrl
