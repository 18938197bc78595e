#include <cctype>
#include <string>

#include "vfinv/expr.hpp"

namespace vfinv {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct Parser {
  const std::string& s;
  int n;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = add(lhs, term());
      else if (accept('-'))
        lhs = add(lhs, neg(term()));
      else
        return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = mul(lhs, factor());
      else if (accept('/'))
        lhs = div_expr(lhs, factor());
      else
        return lhs;
    }
  }

  ExprPtr factor() {
    if (accept('-')) return neg(factor());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (accept('^')) return pow_expr(base, int_exponent());
    return base;
  }

  int int_exponent() {
    skip_ws();
    bool paren = accept('(');
    skip_ws();
    bool negative = accept('-');
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && is_digit(s[pos])) ++pos;
    if (pos == start) throw ParseError("expected integer exponent", pos);
    if (pos - start > 3) throw ParseError("exponent out of range", start);
    int v = std::stoi(s.substr(start, pos - start));
    if (v > 256) throw ParseError("exponent out of range", start);
    if (paren) expect(')');
    return negative ? -v : v;
  }

  ExprPtr primary() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
    char c = s[pos];
    if (c == '(') {
      ++pos;
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (is_digit(c)) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }

  ExprPtr number() {
    std::size_t start = pos;
    while (pos < s.size() && is_digit(s[pos])) ++pos;
    std::string int_part = s.substr(start, pos - start);
    std::string frac_part;
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      std::size_t fs = pos;
      while (pos < s.size() && is_digit(s[pos])) ++pos;
      if (pos == fs) throw ParseError("expected digits after decimal point", pos);
      frac_part = s.substr(fs, pos - fs);
    }
    return make_num(rational_from_decimal(int_part, frac_part));
  }

  int checked_index(const std::string& digits, std::size_t at, const char* what) {
    if (digits.empty() || digits.size() > 2) throw ParseError(std::string("bad ") + what, at);
    int v = std::stoi(digits);
    if (v < 1 || v > n)
      throw ParseError(std::string(what) + " " + digits + " outside 1.." + std::to_string(n), at);
    return v;
  }

  ExprPtr ident() {
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    std::string id = s.substr(start, pos - start);

    for (Func f : {Func::Exp, Func::Log, Func::Sin, Func::Cos, Func::Sqrt}) {
      if (id == func_name(f)) {
        expect('(');
        ExprPtr arg = expr();
        expect(')');
        return call(f, arg);
      }
    }

    // xi<i> and xi<i>p<j>
    if (id.size() >= 3 && id[0] == 'x' && id[1] == 'i' && is_digit(id[2])) {
      int i = checked_index(id.substr(2, 1), start, "xi index");
      std::string rest = id.substr(3);
      int order = 0;
      if (!rest.empty()) {
        if (rest[0] != 'p' || rest.size() < 2) throw ParseError("malformed xi token " + id, start);
        for (char ch : rest.substr(1))
          if (!is_digit(ch)) throw ParseError("malformed xi token " + id, start);
        if (rest.size() > 2) throw ParseError("xi derivative order out of range in " + id, start);
        order = rest[1] - '0';
        if (order > kXiOrderCap) throw ParseError("xi derivative order out of range in " + id, start);
      }
      return xi_(i, order);
    }

    // x<i> / y<i> (y is an alias used in transformed-coordinate files)
    if ((id[0] == 'x' || id[0] == 'y') && id.size() >= 2) {
      std::string digits = id.substr(1);
      for (char ch : digits)
        if (!is_digit(ch)) throw ParseError("unknown identifier " + id, start);
      return x_(checked_index(digits, start, "variable index"));
    }

    // A<i> and A<i>_<dirs>
    if (id[0] == 'A' && id.size() >= 2 && is_digit(id[1])) {
      int base = checked_index(id.substr(1, 1), start, "coefficient index");
      std::string rest = id.substr(2);
      std::vector<int> multi;
      if (!rest.empty()) {
        if (rest[0] != '_' || rest.size() < 2) throw ParseError("malformed jet token " + id, start);
        for (char ch : rest.substr(1)) {
          if (!is_digit(ch)) throw ParseError("malformed jet token " + id, start);
          int d = ch - '0';
          if (d < 1 || d > n)
            throw ParseError("jet direction outside 1.." + std::to_string(n) + " in " + id, start);
          multi.push_back(d);
        }
        if (static_cast<int>(multi.size()) > kJetOrderCap)
          throw ParseError("jet order exceeds cap in " + id, start);
      }
      return A_(base, std::move(multi));
    }

    throw ParseError("unknown identifier " + id, start);
  }
};

}  // namespace

ExprPtr parse(const std::string& text, int n) {
  if (n < 1 || n > 9) throw DomainError("parse: dimension must be between 1 and 9");
  Parser p{text, n};
  ExprPtr e = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("unexpected trailing input", p.pos);
  return e;
}

}  // namespace vfinv
