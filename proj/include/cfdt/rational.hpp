#ifndef CFDT_RATIONAL_HPP
#define CFDT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace cfdt {

// Exact rational carrier for all probabilities and utility values.
using Rat = mpq_class;

// Builds num/den in canonical form (den > 0, lowest terms).
Rat make_rat(long num, long den = 1);

// Parses "num", "-num" or "num/den". Throws std::invalid_argument on
// anything else, including decimal notation.
Rat parse_rational(const std::string& text);

// "num" or "num/den", canonical form.
std::string rat_to_string(const Rat& value);

// Exact binary-rational value of a finite double.
Rat rat_from_double(double value);

// Decimal rendering with the given number of fractional digits (display only).
std::string rat_to_decimal(const Rat& value, int digits);

// m^k with an overflow/size guard; throws std::length_error past `cap`.
long checked_pow(long base, int exp, long cap);

}  // namespace cfdt

#endif
