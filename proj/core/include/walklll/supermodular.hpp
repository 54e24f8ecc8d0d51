#pragma once

// Set functions on subsets of [n]: supermodularity and factorization checks,
// the lower bound f(x) >= f(0) Z_G(-p; x), the extremal table that makes it
// tight, and a generator of explicit event systems.

#include "walklll/graph.hpp"
#include "walklll/isp_oracle.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace walklll {

/// Largest n for full-table operations.
inline constexpr int kTableCap = 16;
/// Absolute slack for ">=" comparisons on tables.
inline constexpr double kTableTolerance = 1e-9;

struct SetFunctionTable {
    int n = 0;
    std::vector<double> values; ///< indexed by subset mask, size 2^n

    SetFunctionTable() = default;
    SetFunctionTable(int n, std::vector<double> values);

    double operator()(SubsetMask s) const { return values[s]; }
    double min_value() const;
};

class PreconditionFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RegionNotViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Delta_i f(S) > Delta_i f(T) with S a subset of T, i outside T.
struct SupermodularityWitness {
    int i = 0;
    SubsetMask s = 0;
    SubsetMask t = 0;
};

struct SupermodularityVerdict {
    bool supermodular = true;
    std::optional<SupermodularityWitness> witness;
};

/// Checks Delta_i f(S) <= Delta_i f(S + j) + tol for all i, S and j outside
/// S + i, which covers all pairs S subset of T.
SupermodularityVerdict is_supermodular(const SetFunctionTable &t, double tol = kTableTolerance);

struct FactorizationWitness {
    int i = 0;
    SubsetMask s = 0;
};

struct FactorizationVerdict {
    bool factorizes = true;
    std::optional<FactorizationWitness> witness;
};

/// f(S + i) >= (1 - p_i) f(S) - tol whenever S avoids i and its neighbors.
FactorizationVerdict factorizes(const SetFunctionTable &t, const OrderedGraph &g, std::span<const double> p,
                                double tol = kTableTolerance);

struct SupermodularBound {
    double bound = 0.0; ///< f(0) Z_G(-p; x)
    bool holds = false; ///< f(x) >= bound - tol
};

/// Throws PreconditionFailed unless p is in the Shearer region of g, f(0) > 0,
/// all values are nonnegative, and t is supermodular and factorizes.
SupermodularBound supermodular_lower_bound(const SetFunctionTable &t, const OrderedGraph &g,
                                           std::span<const double> p, SubsetMask x);

struct ExtremalTable {
    double lambda = 0.0; ///< largest certified member scaling of p
    SetFunctionTable table; ///< S -> Z_G(-lambda p; S)
};

/// Scales p down to the boundary of the Shearer region (bisection to
/// `tol`) and returns the restricted polynomial there. Throws
/// RegionNotViolated if p itself is a member.
ExtremalTable extremal_construction(const OrderedGraph &g, std::span<const double> p, double tol = 1e-12);

/// Avoidance table of an explicit event system with dependency graph g and
/// Pr(F_i) = p_i. Event i is {U_i < a_i(X)}: U_i is a private uniform and
/// a_i depends on one shared binary variable per incident edge, with mean
/// p_i. Requires n + |E| <= 24.
SetFunctionTable generate_event_instance(const OrderedGraph &g, std::span<const double> p, std::uint64_t seed);

/// `n`, then 2^n lines `mask value` with the mask in hex.
SetFunctionTable read_table(std::istream &in);
SetFunctionTable read_table_file(const std::string &path);
void write_table(std::ostream &out, const SetFunctionTable &t);

} // namespace walklll
