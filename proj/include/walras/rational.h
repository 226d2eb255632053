#pragma once

#include <gmpxx.h>

#include <string>

namespace walras {

// Exact rational with arbitrary-precision numerator and denominator. Always
// kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;

// "num/den" in lowest terms, or just "num" when the denominator is 1.
inline std::string ToString(const Rational& r) { return r.get_str(); }

}  // namespace walras
