#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace divalg {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// A lattice point or integer direction. Ordering is lexicographic (std::vector).
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);
bool is_integral(const Rational& q);

// Renders as "p/q" even when q = 1, so machine reports never mix formats.
std::string to_fraction_string(const Rational& q);
Rational parse_rational(const std::string& text);

Integer gcd_of(const IntVector& v);
bool is_zero(const IntVector& v);
bool is_primitive(const IntVector& v);
IntVector primitive(const IntVector& v);

Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const IntVector& a, const RatVector& b);

IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const IntVector& a, const Integer& k);

RatVector to_rational(const IntVector& v);
// Smallest positive integer multiple of v that is integral, divided by the gcd.
IntVector clear_denominators(const RatVector& v);

IntVector make_int_vector(const std::vector<long long>& coords);
std::string to_string(const IntVector& v);

} // namespace divalg
