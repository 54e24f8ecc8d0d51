#include "walklll/solver.hpp"

#include "walklll/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace walklll {

namespace {

void require_shapes(const ClassAutomaton &a, std::span<const double> p, std::size_t r_size) {
    if (p.size() != static_cast<std::size_t>(a.activity_count))
        throw std::invalid_argument("activity vector size does not match the automaton");
    if (r_size != a.class_count())
        throw std::invalid_argument("assignment size does not match the class count");
}

struct ChunkResult {
    std::vector<ClassId> diverged;
    double max_increase = 0.0;
    double min_increase = std::numeric_limits<double>::infinity();
};

void iterate_range(const ClassAutomaton &a, std::span<const double> p, std::span<const double> r, double *out,
                   std::size_t begin, std::size_t end, ChunkResult &res) {
    const auto *offsets = a.offsets.data();
    const auto *targets = a.targets.data();
    for (std::size_t c = begin; c < end; ++c) {
        double prod = 1.0;
        for (std::uint32_t k = offsets[c]; k < offsets[c + 1]; ++k)
            prod *= 1.0 - r[targets[k]];
        double value = prod > 0.0 ? p[a.activity[c]] / prod : std::numeric_limits<double>::infinity();
        if (!(value < 1.0)) {
            out[c] = kDiverged;
            res.diverged.push_back(static_cast<ClassId>(c));
            continue;
        }
        out[c] = value;
        double inc = value - r[c];
        res.max_increase = std::max(res.max_increase, inc);
        res.min_increase = std::min(res.min_increase, inc);
    }
}

double round_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }

} // namespace

const char *to_string(Validity v) {
    switch (v) {
    case Validity::CertifiedValid:
        return "certified-valid";
    case Validity::CertifiedInvalid:
        return "certified-invalid";
    case Validity::Undetermined:
        return "undetermined";
    }
    return "?";
}

IterateResult iterate_once(const ClassAutomaton &a, std::span<const double> p, std::span<const double> r,
                           int threads) {
    require_shapes(a, p, r.size());
    const std::size_t n = a.class_count();
    IterateResult out;
    out.r.resize(n);
    const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1,
                                                        std::max<std::size_t>(1, n / 4096));
    std::vector<ChunkResult> parts(workers);
    if (workers == 1) {
        iterate_range(a, p, r, out.r.data(), 0, n, parts[0]);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t b = std::min(n, w * chunk), e = std::min(n, b + chunk);
            pool.emplace_back(iterate_range, std::cref(a), p, r, out.r.data(), b, e, std::ref(parts[w]));
        }
        for (auto &t : pool)
            t.join();
    }
    out.min_increase = std::numeric_limits<double>::infinity();
    for (auto &part : parts) {
        out.diverged.insert(out.diverged.end(), part.diverged.begin(), part.diverged.end());
        out.max_increase = std::max(out.max_increase, part.max_increase);
        out.min_increase = std::min(out.min_increase, part.min_increase);
    }
    if (out.min_increase == std::numeric_limits<double>::infinity())
        out.min_increase = 0.0;
    return out;
}

bool check_certificate(const ClassAutomaton &a, std::span<const double> p, std::span<const double> r) {
    require_shapes(a, p, r.size());
    for (double v : r)
        if (!(v >= 0.0 && v < 1.0))
            return false;
    for (std::size_t c = 0; c < a.class_count(); ++c) {
        // Lower bound on r_c * prod (1 - r_y): each rounded result is moved one
        // ulp down, which brackets the exact value from below. All factors are
        // nonnegative, so 0 is a lower bound too.
        double rhs = r[c];
        for (ClassId y : a.successors(static_cast<ClassId>(c))) {
            double factor = std::max(0.0, round_down(1.0 - r[y]));
            rhs = std::max(0.0, round_down(rhs * factor));
        }
        if (!(p[a.activity[c]] <= rhs))
            return false;
    }
    return true;
}

bool check_certificate_exact(const ClassAutomaton &a, std::span<const double> p, std::span<const double> r) {
    require_shapes(a, p, r.size());
    for (double v : r)
        if (!(v >= 0.0 && v < 1.0))
            return false;
    std::vector<Dyadic> complement;
    complement.reserve(r.size());
    for (double v : r)
        complement.push_back(Dyadic::one() - Dyadic::from_double(v));
    std::vector<Dyadic> pd;
    for (double v : p)
        pd.push_back(Dyadic::from_double(v));
    for (std::size_t c = 0; c < a.class_count(); ++c) {
        Dyadic rhs = Dyadic::from_double(r[c]);
        for (ClassId y : a.successors(static_cast<ClassId>(c)))
            rhs = rhs * complement[y];
        if (compare(pd[a.activity[c]], rhs) > 0)
            return false;
    }
    return true;
}

namespace {

enum class RunOutcome { Converged, Diverged, Exhausted };

// Iterates r <- T_p(r) in place until the largest increase drops below the
// margin, a component reaches 1, or the iteration budget runs out.
RunOutcome climb(const ClassAutomaton &a, std::span<const double> p, const SolverParams &params,
                 FixedPointAssignment &r, ValidityVerdict &verdict, int budget) {
    for (int it = 1; it <= budget; ++it) {
        IterateResult step = iterate_once(a, p, r, params.threads);
        ++verdict.iterations;
        if (!step.diverged.empty()) {
            ClassId c = step.diverged.front();
            double prod = 1.0;
            for (ClassId y : a.successors(c))
                prod *= 1.0 - r[y];
            verdict.divergence = DivergenceTrace{
                verdict.iterations, c,
                prod > 0.0 ? p[a.activity[c]] / prod : std::numeric_limits<double>::infinity()};
            return RunOutcome::Diverged;
        }
        if (step.min_increase < 0.0)
            verdict.monotone = false;
        verdict.last_change = step.max_increase;
        r = std::move(step.r);
        if (step.max_increase < params.margin)
            return RunOutcome::Converged;
    }
    return RunOutcome::Exhausted;
}

} // namespace

ValidityVerdict decide_validity(const ClassAutomaton &a, std::span<const double> p, const SolverParams &params,
                                const FixedPointAssignment *warm_start) {
    const std::size_t n = a.class_count();
    if (p.size() != static_cast<std::size_t>(a.activity_count))
        throw std::invalid_argument("activity vector size does not match the automaton");
    for (double v : p)
        if (!(v >= 0.0 && v < 1.0))
            throw std::invalid_argument("activities must lie in [0, 1)");

    ValidityVerdict verdict;
    FixedPointAssignment r = warm_start ? *warm_start : FixedPointAssignment(n, 0.0);
    if (r.size() != n)
        throw std::invalid_argument("warm start has the wrong size");

    auto accept = [&](FixedPointAssignment candidate) {
        if (!check_certificate(a, p, candidate))
            return false;
        verdict.status = Validity::CertifiedValid;
        verdict.certificate = std::move(candidate);
        return true;
    };

    if (climb(a, p, params, r, verdict, params.max_iter) == RunOutcome::Diverged) {
        verdict.status = Validity::CertifiedInvalid;
        verdict.iterate = std::move(r);
        return verdict;
    }
    verdict.status = Validity::Undetermined;

    FixedPointAssignment candidate(n);
    for (std::size_t c = 0; c < n; ++c)
        candidate[c] = std::min(r[c] * (1.0 + params.inflation), 1.0 - params.margin);
    if (!accept(std::move(candidate))) {
        // Uniform inflation can lose slack at classes with many successors.
        // The least fixed point for p (1 + inflation) is a strict
        // super-solution for p; approach it from the current iterate.
        std::vector<double> raised(p.begin(), p.end());
        bool raisable = true;
        for (auto &v : raised) {
            v *= 1.0 + params.inflation;
            raisable = raisable && v < 1.0;
        }
        FixedPointAssignment s = r;
        ValidityVerdict scratch;
        if (raisable && climb(a, raised, params, s, scratch, params.max_iter) != RunOutcome::Diverged) {
            for (auto &v : s)
                v = std::min(v, 1.0 - params.margin);
            accept(std::move(s));
        }
        verdict.iterations += scratch.iterations;
    }
    verdict.iterate = std::move(r);
    return verdict;
}

LambdaBound lambda_lower_bound(const ClassAutomaton &a, const SolverParams &params) {
    LambdaBound out;
    out.certificate.assign(a.class_count(), 0.0);
    double lo = 0.0, hi = 1.0;
    FixedPointAssignment warm(a.class_count(), 0.0);
    while (hi - lo > params.bisection_tol) {
        double mid = 0.5 * (lo + hi);
        std::vector<double> p(static_cast<std::size_t>(a.activity_count), mid);
        ValidityVerdict v = decide_validity(a, p, params, &warm);
        ++out.probes;
        out.iterations += v.iterations;
        switch (v.status) {
        case Validity::CertifiedValid:
            lo = mid;
            out.certificate = std::move(v.certificate);
            warm = std::move(v.iterate);
            break;
        case Validity::CertifiedInvalid:
            hi = mid;
            break;
        case Validity::Undetermined:
            hi = mid;
            out.limited_by_undetermined = true;
            break;
        }
    }
    out.lambda = lo;
    out.upper = hi;
    return out;
}

} // namespace walklll
