#pragma once

#include <gmpxx.h>

#include <string>

namespace liebv {

// Exact rational, always canonical (lowest terms, positive denominator).
using Scalar = mpq_class;

// Accepts "p", "-p", "p/q"; throws ParseError otherwise.
Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& q);

inline int sign_of(int exponent) { return (exponent & 1) ? -1 : 1; }
inline int parity(int degree) { return degree & 1; }

}  // namespace liebv
