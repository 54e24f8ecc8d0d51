#include "walklll/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace walklll {

double asymmetric_symmetric_bound(int d) {
    if (d < 1)
        throw std::invalid_argument("degree must be at least 1");
    return std::pow(static_cast<double>(d), d) / std::pow(static_cast<double>(d + 1), d + 1);
}

double nonbacktracking_symmetric_bound(int d) {
    if (d < 2)
        throw std::invalid_argument("degree must be at least 2");
    return asymmetric_symmetric_bound(d - 1);
}

double improved_product_bound(int d) {
    if (d < 2)
        throw std::invalid_argument("degree must be at least 2");
    auto f = [d](double r) { return r / std::pow(1.0 + r, d); };
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 1.0;
    double c = b - phi * (b - a), e = a + phi * (b - a);
    double fc = f(c), fe = f(e);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        if (fc < fe) {
            a = c;
            c = e;
            fc = fe;
            e = a + phi * (b - a);
            fe = f(e);
        } else {
            b = e;
            e = c;
            fe = fc;
            c = b - phi * (b - a);
            fc = f(c);
        }
    }
    return f(0.5 * (a + b));
}

SymmetricBound symmetric_bound(BaselineMethod method, int d) {
    double v = method == BaselineMethod::AsymmetricLLL ? asymmetric_symmetric_bound(d)
                                                       : nonbacktracking_symmetric_bound(d);
    return {method, d, v};
}

ReferenceRow reference_row(LatticeKind kind) {
    switch (kind) {
    case LatticeKind::Square:
        return {kind, 0.0819, 0.0896, 0.1054, 0.1130, 0.1191, 0.1193};
    case LatticeKind::Cubic:
        return {kind, 0.0566, 0.0601, 0.0669, 0.0702, 0.0743, 0.0744};
    case LatticeKind::Hexagonal:
        return {kind, 0.1054, 0.1190, 0.1481, 0.1481, 0.1542, 0.1547};
    }
    return {};
}

} // namespace walklll
