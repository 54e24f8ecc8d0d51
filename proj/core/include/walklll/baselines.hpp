#pragma once

// Closed-form symmetric bounds for the classical local lemmata on a
// d-regular graph, and published reference values for the three lattices.

#include "walklll/lattice.hpp"

namespace walklll {

enum class BaselineMethod { AsymmetricLLL, NonBacktracking };

struct SymmetricBound {
    BaselineMethod method = BaselineMethod::AsymmetricLLL;
    int degree = 0;
    double lambda = 0.0;
};

/// max_r r (1-r)^d = d^d / (d+1)^(d+1). Requires d >= 1.
double asymmetric_symmetric_bound(int d);
/// (d-1)^(d-1) / d^d. Requires d >= 2.
double nonbacktracking_symmetric_bound(int d);
/// max_r r (1-r)^d / (1 - r^2)^d = max_r r / (1+r)^d, maximized numerically
/// (golden section). Requires d >= 2.
double improved_product_bound(int d);

SymmetricBound symmetric_bound(BaselineMethod method, int d);

/// Published comparison columns for one lattice.
struct ReferenceRow {
    LatticeKind kind = LatticeKind::Square;
    double asymmetric = 0.0;
    double cluster = 0.0;
    double nonbacktracking = 0.0;
    double decomposition = 0.0;
    double hierarchy = 0.0; ///< previously reported bound of the walk hierarchy
    double numerical = 0.0; ///< non-rigorous numerical estimate of lambda_c
};

ReferenceRow reference_row(LatticeKind kind);

/// Longer expansion of the square-lattice numerical estimate.
inline constexpr double kSquareNumerical = 0.11933888188;

} // namespace walklll
