// SPDX-License-Identifier: Apache-2.0
//
// Exact integer and rational scalars used throughout the library.
// Backed by Boost.Multiprecision so that recurrences dividing by
// (q^n - 1)...(q - 1) and Fourier inversion dividing by q - 1 stay exact.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace charsum {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int ipow(Int base, unsigned e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& r) {
    const Int num = boost::multiprecision::numerator(r);
    const Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace charsum
