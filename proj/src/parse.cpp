#include "nchydro/parse.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace nchydro {

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      fail(Errc::parse_error,
           "expected '" + std::string(1, c) + "' at position " + std::to_string(pos));
  }
  [[noreturn]] void error(const std::string& what) {
    fail(Errc::parse_error, what + " at position " + std::to_string(pos));
  }
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string read_digits(Cursor& cur) {
  std::string out;
  while (cur.pos < cur.text.size() && is_digit(cur.text[cur.pos])) out.push_back(cur.text[cur.pos++]);
  return out;
}

// Number literal: INT [/ INT] | INT [. digits] [e [+-] INT].  Returns the
// consumed text split into pieces for exact reconstruction.
struct NumberLit {
  std::string int_part;
  std::string frac_part;   // after '.'
  std::string den_part;    // after '/'
  long exp10 = 0;
  bool has_exp = false;
};

NumberLit read_number(Cursor& cur) {
  NumberLit lit;
  lit.int_part = read_digits(cur);
  if (lit.int_part.empty()) cur.error("expected a number");
  if (cur.pos < cur.text.size() && cur.text[cur.pos] == '/') {
    // Rational p/q: the denominator must start with a digit.
    std::size_t save = cur.pos;
    ++cur.pos;
    lit.den_part = read_digits(cur);
    if (lit.den_part.empty()) {
      cur.pos = save;
      return lit;
    }
    return lit;
  }
  if (cur.pos < cur.text.size() && cur.text[cur.pos] == '.') {
    ++cur.pos;
    lit.frac_part = read_digits(cur);
    if (lit.frac_part.empty()) cur.error("expected digits after decimal point");
  }
  if (cur.pos < cur.text.size() && (cur.text[cur.pos] == 'e' || cur.text[cur.pos] == 'E')) {
    std::size_t save = cur.pos;
    ++cur.pos;
    bool neg = false;
    if (cur.pos < cur.text.size() && (cur.text[cur.pos] == '+' || cur.text[cur.pos] == '-')) {
      neg = cur.text[cur.pos] == '-';
      ++cur.pos;
    }
    std::string digits = read_digits(cur);
    if (digits.empty()) {
      cur.pos = save;  // not an exponent after all
    } else {
      lit.has_exp = true;
      lit.exp10 = std::strtol(digits.c_str(), nullptr, 10);
      if (neg) lit.exp10 = -lit.exp10;
    }
  }
  return lit;
}

template <class S>
S number_to_scalar(const NumberLit& lit);

template <>
GaussianRational number_to_scalar<GaussianRational>(const NumberLit& lit) {
  if (!lit.den_part.empty()) {
    mpq_class q(lit.int_part + "/" + lit.den_part);
    q.canonicalize();
    return GaussianRational(q);
  }
  mpz_class num(lit.int_part + lit.frac_part);
  mpz_class den(1);
  for (std::size_t i = 0; i < lit.frac_part.size(); ++i) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  if (lit.has_exp) {
    mpz_class scale(1);
    long e = lit.exp10 < 0 ? -lit.exp10 : lit.exp10;
    for (long i = 0; i < e; ++i) scale *= 10;
    if (lit.exp10 >= 0)
      q *= mpq_class(scale);
    else
      q /= mpq_class(scale);
    q.canonicalize();
  }
  return GaussianRational(q);
}

template <>
Complexd number_to_scalar<Complexd>(const NumberLit& lit) {
  if (!lit.den_part.empty()) {
    double num = std::strtod(lit.int_part.c_str(), nullptr);
    double den = std::strtod(lit.den_part.c_str(), nullptr);
    if (den == 0.0) fail(Errc::parse_error, "rational literal with zero denominator");
    return Complexd(num / den, 0.0);
  }
  std::string text = lit.int_part;
  if (!lit.frac_part.empty()) text += "." + lit.frac_part;
  if (lit.has_exp) text += "e" + std::to_string(lit.exp10);
  return Complexd(std::strtod(text.c_str(), nullptr), 0.0);
}

template <class S>
class PolyParser {
 public:
  PolyParser(const std::string& text, int n) : cur_{text}, n_(n) {}

  NcPoly<S> parse_expr_to_end() {
    NcPoly<S> p = parse_expr();
    if (!cur_.eof()) cur_.error("unexpected trailing input");
    return p;
  }

  VectorField<S> parse_field_to_end() {
    cur_.expect('(');
    std::vector<NcPoly<S>> comps;
    comps.push_back(parse_expr());
    while (cur_.accept(',')) comps.push_back(parse_expr());
    cur_.expect(')');
    if (!cur_.eof()) cur_.error("unexpected trailing input");
    if (comps.size() != static_cast<std::size_t>(n_))
      fail(Errc::parse_error, "field has " + std::to_string(comps.size()) +
                                  " components, expected " + std::to_string(n_));
    return VectorField<S>(n_, std::move(comps));
  }

 private:
  NcPoly<S> parse_expr() {
    bool negate = false;
    if (cur_.accept('-'))
      negate = true;
    else
      cur_.accept('+');
    NcPoly<S> acc = parse_term();
    if (negate) acc = -acc;
    while (true) {
      if (cur_.accept('+')) {
        acc += parse_term();
      } else if (cur_.accept('-')) {
        acc -= parse_term();
      } else {
        break;
      }
    }
    return acc;
  }

  NcPoly<S> parse_term() {
    NcPoly<S> acc = parse_factor();
    while (cur_.accept('*')) acc = acc * parse_factor();
    return acc;
  }

  NcPoly<S> parse_factor() {
    char c = cur_.peek();
    if (c == '(') {
      cur_.expect('(');
      NcPoly<S> inner = parse_expr();
      cur_.expect(')');
      return inner;
    }
    if (c == 'i') {
      ++cur_.pos;
      return NcPoly<S>::monomial(n_, Word(), ScalarOps<S>::imaginary_unit());
    }
    if (c == 's') {
      ++cur_.pos;
      std::string digits = read_digits(cur_);
      if (digits.empty()) cur_.error("expected generator index after 's'");
      long idx = std::strtol(digits.c_str(), nullptr, 10);
      if (idx < 1 || idx > n_)
        fail(Errc::parse_error, "generator index s" + digits + " out of range (n = " +
                                    std::to_string(n_) + ")");
      long power = 1;
      if (cur_.accept('^')) {
        std::string pdig = read_digits(cur_);
        if (pdig.empty()) cur_.error("expected exponent after '^'");
        power = std::strtol(pdig.c_str(), nullptr, 10);
        if (power < 0 || power > 64) cur_.error("exponent out of range");
      }
      Word w;
      for (long k = 0; k < power; ++k) w.push_back(static_cast<int>(idx - 1));
      return NcPoly<S>::monomial(n_, w, ScalarOps<S>::one());
    }
    if (is_digit(c)) {
      cur_.skip_ws();
      NumberLit lit = read_number(cur_);
      return NcPoly<S>::monomial(n_, Word(), number_to_scalar<S>(lit));
    }
    cur_.error("unexpected character");
  }

  Cursor cur_;
  int n_;
};

void append_rational(std::string& out, const mpq_class& q) { out += q.get_str(); }

// Coefficient prefix for a term with word text `word` (empty for the unit
// word).  Handles the sign externally-visible form: returns (is_negative,
// body-without-sign).
std::pair<bool, std::string> coefficient_text(const GaussianRational& c, bool has_word) {
  const bool re_zero = sgn(c.re) == 0;
  const bool im_zero = sgn(c.im) == 0;
  if (im_zero) {
    bool neg = sgn(c.re) < 0;
    mpq_class mag = neg ? mpq_class(-c.re) : c.re;
    std::string body;
    if (mag == 1 && has_word) {
      body.clear();
    } else {
      std::string digits = mag.get_str();
      bool needs_parens = has_word && mag.get_den() != 1;
      body = needs_parens ? "(" + digits + ")" : digits;
    }
    return {neg, body};
  }
  if (re_zero) {
    bool neg = sgn(c.im) < 0;
    mpq_class mag = neg ? mpq_class(-c.im) : c.im;
    std::string body;
    if (mag == 1) {
      body = "i";
    } else if (mag.get_den() == 1) {
      body = mag.get_str() + "*i";
    } else {
      body = "(" + mag.get_str() + ")*i";
    }
    return {neg, body};
  }
  // Mixed complex coefficient: a single parenthesized literal.
  std::string body = "(";
  append_rational(body, c.re);
  if (sgn(c.im) > 0) {
    body += "+";
    append_rational(body, c.im);
  } else {
    body += "-";
    append_rational(body, mpq_class(-c.im));
  }
  body += "*i)";
  return {false, body};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

std::pair<bool, std::string> coefficient_text(const Complexd& c, bool has_word) {
  if (c.imag() == 0.0) {
    bool neg = std::signbit(c.real()) && c.real() != 0.0;
    double mag = neg ? -c.real() : c.real();
    if (mag == 1.0 && has_word) return {neg, ""};
    return {neg, format_double(mag)};
  }
  if (c.real() == 0.0) {
    bool neg = std::signbit(c.imag());
    double mag = neg ? -c.imag() : c.imag();
    if (mag == 1.0) return {neg, "i"};
    return {neg, format_double(mag) + "*i"};
  }
  std::string body = "(" + format_double(c.real());
  if (c.imag() >= 0.0)
    body += "+" + format_double(c.imag());
  else
    body += "-" + format_double(-c.imag());
  body += "*i)";
  return {false, body};
}

std::string word_text(const Word& w) {
  std::string out;
  std::size_t i = 0;
  while (i < w.length()) {
    std::size_t run = 1;
    while (i + run < w.length() && w.letter(i + run) == w.letter(i)) ++run;
    if (!out.empty()) out += "*";
    out += "s" + std::to_string(w.letter(i) + 1);
    if (run > 1) out += "^" + std::to_string(run);
    i += run;
  }
  return out;
}

}  // namespace

template <class S>
NcPoly<S> parse_poly(const std::string& text, int n) {
  return PolyParser<S>(text, n).parse_expr_to_end();
}

template <class S>
VectorField<S> parse_field(const std::string& text, int n) {
  return PolyParser<S>(text, n).parse_field_to_end();
}

template <class S>
S parse_scalar(const std::string& text) {
  NcPoly<S> p = parse_poly<S>(text, 1);
  if (p.degree() > 0) fail(Errc::parse_error, "expected a constant expression");
  return p.is_zero() ? ScalarOps<S>::zero() : p.terms().front().second;
}

std::string format_scalar(const GaussianRational& s) {
  std::string out = s.re.get_str();
  if (sgn(s.im) != 0) {
    if (sgn(s.im) > 0) {
      out += "+" + s.im.get_str() + "*i";
    } else {
      out += "-" + mpq_class(-s.im).get_str() + "*i";
    }
  }
  return out;
}

std::string format_scalar(const Complexd& s) {
  if (s.imag() == 0.0) return format_double(s.real());
  std::string out = format_double(s.real());
  if (s.imag() >= 0.0)
    out += "+" + format_double(s.imag()) + "*i";
  else
    out += "-" + format_double(-s.imag()) + "*i";
  return out;
}

template <class S>
std::string format_poly(const NcPoly<S>& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : p.terms()) {
    auto [neg, coeff] = coefficient_text(c, !w.empty());
    std::string body = coeff;
    std::string wtext = word_text(w);
    if (!wtext.empty()) {
      if (!body.empty()) body += "*";
      body += wtext;
    } else if (body.empty()) {
      body = "1";
    }
    if (out.empty()) {
      out = neg ? "-" + body : body;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

template <class S>
std::string format_field(const VectorField<S>& v) {
  std::string out = "(";
  for (int j = 0; j < v.generator_count(); ++j) {
    if (j > 0) out += ", ";
    out += format_poly(v[j]);
  }
  out += ")";
  return out;
}

template <class S>
std::string format_bitensor(const BiTensor<S>& t) {
  if (t.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : t.terms()) {
    auto [neg, coeff] = coefficient_text(c, true);
    std::string left = word_text(key.first);
    std::string right = word_text(key.second);
    if (left.empty()) left = "1";
    if (right.empty()) right = "1";
    std::string body;
    if (!coeff.empty()) body = coeff + "*";
    body += left + " (x) " + right;
    if (out.empty()) {
      out = neg ? "-" + body : body;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

template NcPoly<GaussianRational> parse_poly<GaussianRational>(const std::string&, int);
template NcPoly<Complexd> parse_poly<Complexd>(const std::string&, int);
template VectorField<GaussianRational> parse_field<GaussianRational>(const std::string&, int);
template VectorField<Complexd> parse_field<Complexd>(const std::string&, int);
template GaussianRational parse_scalar<GaussianRational>(const std::string&);
template Complexd parse_scalar<Complexd>(const std::string&);
template std::string format_poly<GaussianRational>(const NcPoly<GaussianRational>&);
template std::string format_poly<Complexd>(const NcPoly<Complexd>&);
template std::string format_field<GaussianRational>(const VectorField<GaussianRational>&);
template std::string format_field<Complexd>(const VectorField<Complexd>&);
template std::string format_bitensor<GaussianRational>(const BiTensor<GaussianRational>&);
template std::string format_bitensor<Complexd>(const BiTensor<Complexd>&);

}  // namespace nchydro
