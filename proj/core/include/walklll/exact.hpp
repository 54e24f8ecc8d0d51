#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace walklll {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// The exact value of a finite double as a rational.
Rational to_rational(double x);

/// Exact dyadic number mantissa * 2^exponent; every finite double is one,
/// and sums/products stay dyadic, so no gcd normalization is needed.
struct Dyadic {
    BigInt mantissa;
    int exponent = 0;

    static Dyadic from_double(double x);
    static Dyadic one() { return Dyadic{1, 0}; }

    friend Dyadic operator*(const Dyadic &a, const Dyadic &b) {
        return Dyadic{a.mantissa * b.mantissa, a.exponent + b.exponent};
    }
    friend Dyadic operator-(const Dyadic &a, const Dyadic &b);
    /// Exact three-way comparison.
    friend int compare(const Dyadic &a, const Dyadic &b);
};

} // namespace walklll
