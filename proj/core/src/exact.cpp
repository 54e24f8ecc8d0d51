#include "walklll/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace walklll {

Dyadic Dyadic::from_double(double x) {
    if (!std::isfinite(x))
        throw std::domain_error("non-finite value has no exact dyadic form");
    if (x == 0.0)
        return Dyadic{0, 0};
    int exp = 0;
    double frac = std::frexp(x, &exp); // x = frac * 2^exp, |frac| in [0.5, 1)
    auto mant = static_cast<long long>(std::ldexp(frac, 53));
    return Dyadic{BigInt(mant), exp - 53};
}

Dyadic operator-(const Dyadic &a, const Dyadic &b) {
    if (a.exponent <= b.exponent) {
        BigInt shifted = b.mantissa << (b.exponent - a.exponent);
        return Dyadic{a.mantissa - shifted, a.exponent};
    }
    BigInt shifted = a.mantissa << (a.exponent - b.exponent);
    return Dyadic{shifted - b.mantissa, b.exponent};
}

int compare(const Dyadic &a, const Dyadic &b) {
    Dyadic d = a - b;
    return d.mantissa.sign();
}

Rational to_rational(double x) {
    Dyadic d = Dyadic::from_double(x);
    Rational r(d.mantissa);
    if (d.exponent >= 0)
        return r * Rational(BigInt(1) << d.exponent);
    return r / Rational(BigInt(1) << (-d.exponent));
}

} // namespace walklll
