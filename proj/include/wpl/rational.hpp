#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace wpl {

// All counting is exact: big integers for raw tallies and group orders,
// rationals for stack volumes and series coefficients. No floating point
// anywhere in the project.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Serialized form is always "num/den" (den > 0, reduced), or a bare integer
// when den = 1. Parsing accepts both.
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

Int int_pow(const Int& base, unsigned long exp);

}  // namespace wpl
