#include "crnrob/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace crnrob {

double to_double(const Rational& q) { return q.get_d(); }

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::optional<Rational> parse_decimal(const std::string& text) {
  // [sign] digits [. digits] [eE [sign] digits]
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = (s[0] == '-');
    s = s.substr(1);
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string expstr = s.substr(epos + 1);
    s = s.substr(0, epos);
    if (expstr.empty()) return std::nullopt;
    char* end = nullptr;
    exp10 = std::strtol(expstr.c_str(), &end, 10);
    if (end == nullptr || *end != '\0') return std::nullopt;
  }
  std::string intpart = s;
  std::string fracpart;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    intpart = s.substr(0, dot);
    fracpart = s.substr(dot + 1);
  }
  if (intpart.empty() && fracpart.empty()) return std::nullopt;
  if (!intpart.empty() && !all_digits(intpart)) return std::nullopt;
  if (!fracpart.empty() && !all_digits(fracpart)) return std::nullopt;

  Integer num(intpart.empty() ? "0" : intpart);
  for (char c : fracpart) {
    num = num * 10 + (c - '0');
  }
  Rational value(num);
  long shift = exp10 - static_cast<long>(fracpart.size());
  if (shift != 0) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift > 0 ? shift : -shift));
    if (shift > 0)
      value *= Rational(p);
    else
      value /= Rational(p);
  }
  if (negative) value = -value;
  value.canonicalize();
  return value;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0) return std::nullopt;
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) return std::nullopt;
    q.canonicalize();
    return q;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  Integer gn, gl;
  mpz_gcd(gn.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
  mpz_lcm(gl.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
  Rational g(gn, gl);
  g.canonicalize();
  return g;
}

int sign(const Rational& q) { return sgn(q); }

}  // namespace crnrob
