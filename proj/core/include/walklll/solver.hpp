#pragma once

// Monotone fixed-point machinery on a class automaton.
//
// For an activity vector p the map
//     T(r)_c = p_{a(c)} * prod_{c' in succ(c)} 1 / (1 - r_{c'})
// is monotone on [0,1)^C, so iterating from r = 0 climbs to the least fixed
// point when one exists below 1 and crosses 1 otherwise. Validity is only
// ever reported through an explicitly checked certificate r with
//     p_{a(c)} <= r_c * prod_{c' in succ(c)} (1 - r_{c'})   for every class c.

#include "walklll/automaton.hpp"

#include <optional>
#include <span>
#include <vector>

namespace walklll {

using FixedPointAssignment = std::vector<double>;

/// Value stored for components that reach 1.
inline constexpr double kDiverged = 1.0;

struct SolverParams {
    int max_iter = 10'000;
    double margin = 1e-12;
    double inflation = 1e-9;
    double bisection_tol = 1e-6;
    int threads = 1;
};

struct IterateResult {
    FixedPointAssignment r;
    /// Classes whose new value reached 1 (clamped to kDiverged), ascending.
    std::vector<ClassId> diverged;
    /// max_c (r'_c - r_c), ignoring diverged classes.
    double max_increase = 0.0;
    /// Smallest r'_c - r_c; negative only if monotonicity broke.
    double min_increase = 0.0;
};

/// One Jacobi step. Requires p.size() == a.activity_count and r.size() ==
/// class count. With threads > 1 the classes are split into contiguous
/// chunks; the result is identical to the sequential one.
IterateResult iterate_once(const ClassAutomaton &a, std::span<const double> p, std::span<const double> r,
                           int threads = 1);

/// Floating-point check with every rounding pushed toward violation, so a
/// `true` holds for the exact real inequality as well.
bool check_certificate(const ClassAutomaton &a, std::span<const double> p, std::span<const double> r);

/// The same inequalities in exact dyadic arithmetic.
bool check_certificate_exact(const ClassAutomaton &a, std::span<const double> p, std::span<const double> r);

enum class Validity { CertifiedValid, CertifiedInvalid, Undetermined };

const char *to_string(Validity v);

struct DivergenceTrace {
    int iteration = 0;
    ClassId cls = 0;
    double value = 0.0;
};

struct ValidityVerdict {
    Validity status = Validity::Undetermined;
    /// The checked certificate (CertifiedValid only).
    FixedPointAssignment certificate;
    /// Last iterate of the chain from the starting point; it lies below the
    /// least fixed point and can seed a run at larger activities.
    FixedPointAssignment iterate;
    std::optional<DivergenceTrace> divergence;
    int iterations = 0;
    double last_change = 0.0;
    bool monotone = true;
};

/// Iterate from r = 0 (or from `warm_start`, which must be a point of an
/// increasing chain below the least fixed point for p, e.g. the iterate of a
/// run at a componentwise smaller p).
///   - a component reaching 1: CertifiedInvalid;
///   - sup-norm change < margin (or max_iter reached): candidate
///     min(r (1 + inflation), 1 - margin) is checked; if that fails, the
///     iterate for activities p (1 + inflation) is checked instead.
///     A pass gives CertifiedValid, otherwise Undetermined.
ValidityVerdict decide_validity(const ClassAutomaton &a, std::span<const double> p, const SolverParams &params,
                                const FixedPointAssignment *warm_start = nullptr);

struct LambdaBound {
    double lambda = 0.0;      ///< largest certified uniform activity found
    double upper = 1.0;       ///< smallest probed activity that was not certified
    FixedPointAssignment certificate;
    bool limited_by_undetermined = false; ///< some probe above lambda was Undetermined, not Invalid
    int probes = 0;
    long long iterations = 0;
};

/// Bisection on the uniform activity over [0, 1], accepting a probe only when
/// it is CertifiedValid. Probes reuse the previous valid iterate as a warm
/// start.
LambdaBound lambda_lower_bound(const ClassAutomaton &a, const SolverParams &params);

} // namespace walklll
