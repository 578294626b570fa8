#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace deform {

// Exact arbitrary-precision rationals, always in lowest terms with a
// positive denominator. Every computation in this project is exact; there
// is no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Raised for malformed user input (files, CLI arguments, inconsistent
// descriptions). Distinct from mathematical negatives, which are values.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Parses "p", "-p" or "p/q". Denominator must be nonzero.
Rational rational_from_string(const std::string& text);

// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational& r);

Rational factorial(unsigned n);

}  // namespace deform
