#include "milnorkit/parse.hpp"

#include <cctype>

#include "milnorkit/error.hpp"

namespace milnorkit {

namespace {

enum class Tok { Number, Imag, Var, Plus, Minus, Star, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;       // number literal
  std::size_t index = 0;  // zero-based variable index
  bool conj = false;
};

class Lexer {
 public:
  Lexer(std::string_view s, bool mixed, char var) : s_(s), mixed_(mixed), var_(var) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, i_, {}});
        return out;
      }
      const std::size_t start = i_;
      const char c = s_[i_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::string num = lex_number();
        if (mixed_ && i_ < s_.size() && s_[i_] == 'i' && !is_ident_char(peek(1))) {
          ++i_;
          out.push_back({Tok::Imag, start, num});
        } else {
          out.push_back({Tok::Number, start, num});
        }
        continue;
      }
      switch (c) {
        case '+': out.push_back({Tok::Plus, i_++, {}}); continue;
        case '-': out.push_back({Tok::Minus, i_++, {}}); continue;
        case '*': out.push_back({Tok::Star, i_++, {}}); continue;
        case '^': out.push_back({Tok::Caret, i_++, {}}); continue;
        case '(': out.push_back({Tok::LParen, i_++, {}}); continue;
        case ')': out.push_back({Tok::RParen, i_++, {}}); continue;
        case ',': out.push_back({Tok::Comma, i_++, {}}); continue;
        default: break;
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        out.push_back(lex_identifier());
        continue;
      }
      throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }
  }

 private:
  char peek(std::size_t k) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }
  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  std::string lex_number() {
    const std::size_t start = i_;
    auto digits = [&] {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    };
    digits();
    if (i_ < s_.size() && s_[i_] == '/') {
      ++i_;
      if (!std::isdigit(static_cast<unsigned char>(peek(0)))) throw ParseError("malformed rational", i_);
      digits();
      return std::string(s_.substr(start, i_ - start));
    }
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      digits();
    }
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t save = i_;
      ++i_;
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
      if (std::isdigit(static_cast<unsigned char>(peek(0))))
        digits();
      else
        i_ = save;
    }
    return std::string(s_.substr(start, i_ - start));
  }

  std::size_t lex_index(char letter, std::size_t pos) {
    if (!std::isdigit(static_cast<unsigned char>(peek(0)))) return 0;
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    auto digits = s_.substr(start, i_ - start);
    if (digits.size() > 4) throw ParseError("variable index too large", pos);
    std::size_t idx = std::stoul(std::string(digits));
    if (idx == 0 || idx > kMaxVariableIndex)
      throw ParseError(std::string("variable index out of range for ") + letter, pos);
    return idx - 1;
  }

  Token lex_identifier() {
    const std::size_t start = i_;
    if (mixed_ && s_.substr(i_, 5) == "conj(") {
      i_ += 5;
      skip_space();
      char letter = peek(0);
      if (letter != 'z' && letter != 'w') throw ParseError("conj() expects a variable z<k>", i_);
      ++i_;
      std::size_t idx = lex_index(letter, start);
      skip_space();
      if (peek(0) != ')') throw ParseError("missing ')' after conj(", i_);
      ++i_;
      Token t{Tok::Var, start, {}};
      t.index = idx;
      t.conj = true;
      return t;
    }
    const char letter = s_[i_];
    if (mixed_ && letter == 'i' && !is_ident_char(peek(1))) {
      ++i_;
      return {Tok::Imag, start, "1"};
    }
    const bool ok = mixed_ ? (letter == 'z' || letter == 'w') : letter == var_;
    if (!ok) throw ParseError(std::string("unknown identifier starting with '") + letter + "'", start);
    ++i_;
    std::size_t idx = lex_index(letter, start);
    if (is_ident_char(peek(0))) throw ParseError("malformed variable name", start);
    Token t{Tok::Var, start, {}};
    t.index = idx;
    return t;
  }

  std::string_view s_;
  bool mixed_;
  char var_;
  std::size_t i_ = 0;
};

struct MixedRing {
  using Poly = MixedPolynomial;
  static Poly number(std::size_t n, const Rational& q, bool imag) {
    return Poly::constant(n, imag ? ComplexRational(0, q) : ComplexRational(q));
  }
  static Poly variable(std::size_t n, const Token& t) { return Poly::variable(n, t.index, t.conj); }
  static Poly negate(const Poly& p) { return p * ComplexRational(-1); }
};

struct RealRing {
  using Poly = RealPolynomial;
  static Poly number(std::size_t n, const Rational& q, bool imag) {
    if (imag) throw ParseError("imaginary literal in a real polynomial", 0);
    return Poly::constant(n, q);
  }
  static Poly variable(std::size_t n, const Token& t) { return Poly::variable(n, t.index); }
  static Poly negate(const Poly& p) { return -p; }
};

template <class Ring>
class Parser {
 public:
  using Poly = typename Ring::Poly;

  Parser(const std::vector<Token>& toks, std::size_t n) : t_(toks), n_(n) {}

  Poly expr() {
    bool negative = false;
    if (at(Tok::Plus) || at(Tok::Minus)) negative = take().kind == Tok::Minus;
    Poly acc = term();
    if (negative) acc = Ring::negate(acc);
    while (at(Tok::Plus) || at(Tok::Minus)) {
      bool minus = take().kind == Tok::Minus;
      Poly rhs = term();
      if (minus)
        acc -= rhs;
      else
        acc += rhs;
    }
    return acc;
  }

  bool at(Tok k) const { return t_[i_].kind == k; }
  const Token& take() { return t_[i_++]; }
  const Token& current() const { return t_[i_]; }
  void expect(Tok k, const char* what) {
    if (!at(k)) throw ParseError(std::string("expected ") + what, current().pos);
    ++i_;
  }

 private:
  bool starts_atom() const {
    return at(Tok::Number) || at(Tok::Imag) || at(Tok::Var) || at(Tok::LParen);
  }

  Poly term() {
    Poly acc = power();
    while (true) {
      if (at(Tok::Star)) {
        ++i_;
        acc = acc * power();
      } else if (starts_atom()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = atom();
    if (!at(Tok::Caret)) return base;
    ++i_;
    if (!at(Tok::Number)) throw ParseError("expected integer exponent", current().pos);
    const Token& e = take();
    for (char c : e.text)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("exponent must be a nonnegative integer", e.pos);
    if (e.text.size() > 9 || std::stoul(e.text) > kMaxExponent) throw ParseError("exponent overflow", e.pos);
    return base.pow(static_cast<unsigned>(std::stoul(e.text)));
  }

  Poly atom() {
    const Token& tok = current();
    switch (tok.kind) {
      case Tok::Number:
      case Tok::Imag: {
        ++i_;
        Rational q;
        try {
          q = parse_rational(tok.text);
        } catch (const ParseError&) {
          throw ParseError("malformed number '" + tok.text + "'", tok.pos);
        }
        return Ring::number(n_, q, tok.kind == Tok::Imag);
      }
      case Tok::Var:
        ++i_;
        return Ring::variable(n_, tok);
      case Tok::LParen: {
        ++i_;
        Poly inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        throw ParseError("expected a number, variable or '('", tok.pos);
    }
  }

  const std::vector<Token>& t_;
  std::size_t n_;
  std::size_t i_ = 0;
};

std::size_t variable_count(const std::vector<Token>& toks) {
  std::size_t n = 0;
  for (const auto& t : toks)
    if (t.kind == Tok::Var) n = std::max(n, t.index + 1);
  return n;
}

std::size_t resolve_dim(std::size_t seen, std::optional<std::size_t> requested) {
  if (!requested) return std::max<std::size_t>(seen, 1);
  if (*requested < seen) throw DimensionError("text uses more variables than the requested dimension");
  if (*requested == 0) throw DimensionError("dimension must be positive");
  return *requested;
}

}  // namespace

MixedPolynomial parse_mixed(std::string_view text, std::optional<std::size_t> n_vars) {
  auto toks = Lexer(text, true, 'z').run();
  Parser<MixedRing> p(toks, resolve_dim(variable_count(toks), n_vars));
  auto f = p.expr();
  if (!p.at(Tok::End)) throw ParseError("unexpected trailing input", p.current().pos);
  return f;
}

RealPolynomial parse_real_poly(std::string_view text, std::optional<std::size_t> n_vars, char var) {
  auto toks = Lexer(text, false, var).run();
  Parser<RealRing> p(toks, resolve_dim(variable_count(toks), n_vars));
  auto f = p.expr();
  if (!p.at(Tok::End)) throw ParseError("unexpected trailing input", p.current().pos);
  return f;
}

namespace {

std::vector<RealPolynomial> parse_tuple(std::string_view text, std::optional<std::size_t> dim, char var) {
  auto toks = Lexer(text, false, var).run();
  Parser<RealRing> p(toks, resolve_dim(variable_count(toks), dim));
  p.expect(Tok::LParen, "'(' opening the component tuple");
  std::vector<RealPolynomial> comps;
  comps.push_back(p.expr());
  while (p.at(Tok::Comma)) {
    p.take();
    comps.push_back(p.expr());
  }
  p.expect(Tok::RParen, "')' closing the component tuple");
  if (!p.at(Tok::End)) throw ParseError("unexpected trailing input", p.current().pos);
  return comps;
}

}  // namespace

RealPolyMap parse_real_map(std::string_view text, std::optional<std::size_t> m) {
  auto comps = parse_tuple(text, m, 'x');
  if (comps.size() < 2) throw DimensionError("a map needs at least two components (p >= 2)");
  return RealPolyMap(std::move(comps));
}

std::vector<RealPolynomial> parse_curve(std::string_view text) { return parse_tuple(text, 1, 't'); }

}  // namespace milnorkit
