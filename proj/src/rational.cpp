#include "cfdt/rational.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cfdt {

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  std::string num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!is_integer_token(num) || !is_integer_token(den))
    throw std::invalid_argument("not an exact rational: '" + text + "'");
  Rat r{mpz_class(num), mpz_class(den)};
  if (r.get_den() == 0)
    throw std::invalid_argument("zero denominator: '" + text + "'");
  if (sgn(r.get_den()) < 0) {
    r.get_num() = -r.get_num();
    r.get_den() = -r.get_den();
  }
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& value) { return value.get_str(); }

Rat rat_from_double(double value) {
  if (!std::isfinite(value))
    throw std::invalid_argument("non-finite value cannot be frozen exactly");
  return Rat(value);
}

std::string rat_to_decimal(const Rat& value, int digits) {
  if (digits <= 0) return rat_to_string(value);
  std::ostringstream out;
  mpz_class num = value.get_num();
  mpz_class den = value.get_den();
  bool negative = sgn(num) < 0;
  if (negative) num = -num;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round half away from zero
  mpz_class scaled = (num * scale * 2 + den) / (den * 2);
  mpz_class whole = scaled / scale;
  mpz_class frac = scaled % scale;
  std::string frac_str = frac.get_str();
  frac_str.insert(frac_str.begin(), digits - frac_str.size(), '0');
  if (negative && (whole != 0 || frac != 0)) out << '-';
  out << whole.get_str() << '.' << frac_str;
  return out.str();
}

long checked_pow(long base, int exp, long cap) {
  long result = 1;
  for (int i = 0; i < exp; ++i) {
    if (result > cap / base)
      throw std::length_error("state space size exceeds configured cap");
    result *= base;
  }
  return result;
}

}  // namespace cfdt
