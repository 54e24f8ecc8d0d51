#pragma once

// Brute-force and recursive evaluation of the multivariate independent set
// polynomial Z_G. This is the ground truth the walk machinery is tested
// against; it is exponential in n and meant for small graphs only.

#include "walklll/exact.hpp"
#include "walklll/graph.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace walklll {

using ActivityVector = std::vector<double>;

/// Largest n for which Ind(G) is enumerated explicitly.
inline constexpr int kEnumerationCap = 24;
/// Largest n for the 2^n subset scans (membership, critical lambda).
inline constexpr int kMembershipCap = 22;

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by `ratio` when an intermediate ratio reaches 1, which certifies
/// that p lies outside the Shearer region.
class DivergentRatio : public std::runtime_error {
public:
    DivergentRatio(Vertex vertex, SubsetMask set, double value);
    Vertex vertex;
    SubsetMask set;
    double value;
};

/// Z_G(x) by summing over every independent set.
double ind_poly_enumerate(const OrderedGraph &g, std::span<const double> x);
/// Z_G(x) by the deletion recurrence Z(S) = Z(S - i) + x_i Z(S - N[i]).
double ind_poly_recurrence(const OrderedGraph &g, std::span<const double> x);
/// Both of the above; throws OracleError if they disagree beyond 1e-9
/// relative to the absolute-value polynomial.
double ind_poly(const OrderedGraph &g, std::span<const double> x);

/// Z_G(-p; S): variables outside S set to zero.
double ind_poly_restricted(const OrderedGraph &g, std::span<const double> p, SubsetMask s);
Rational ind_poly_restricted_exact(const OrderedGraph &g, std::span<const double> p, SubsetMask s);

/// Z_G(-p; S) for all 2^n subsets S, indexed by mask.
std::vector<double> restricted_table(const OrderedGraph &g, std::span<const double> p);
std::vector<Rational> restricted_table_exact(const OrderedGraph &g, std::span<const double> p);

struct MembershipVerdict {
    bool member = false;
    /// For non-members: the violating S with fewest elements (ties: smallest mask).
    std::optional<SubsetMask> witness;
    /// Z_G(-p; S) for every S.
    std::vector<double> table;
};

/// p is in the Shearer region iff Z_G(-p; S) > 0 for every S.
MembershipVerdict shearer_membership_exact(const OrderedGraph &g, std::span<const double> p);

enum class EliminationOrder { Descending, Ascending };

/// ratio(i, S) = 1 - Z(S+i)/Z(S), evaluated through the recursive unfolding
/// ratio(i,S) = p_i prod_l 1/(1 - ratio(j_l, S_l)) over the neighbors of i
/// in S. Memoizes on (i, S). Descending elimination matches the self-bounding
/// walk tree; the value does not depend on the order.
class RatioOracle {
public:
    RatioOracle(const OrderedGraph &g, std::span<const double> p,
                EliminationOrder order = EliminationOrder::Descending);

    /// Requires i not in s. Throws DivergentRatio.
    double operator()(Vertex i, SubsetMask s);

    std::size_t memo_size() const { return memo_.size(); }

private:
    const OrderedGraph &graph_;
    std::vector<double> p_;
    std::vector<SubsetMask> nbr_;
    EliminationOrder order_;
    std::unordered_map<std::uint64_t, double> memo_;
};

double ratio(const OrderedGraph &g, std::span<const double> p, Vertex i, SubsetMask s,
             EliminationOrder order = EliminationOrder::Descending);

/// Z_G(-p) when p is in the Shearer region, nothing otherwise.
std::optional<double> avoid_value(const OrderedGraph &g, std::span<const double> p);

struct LambdaBracket {
    double lo = 0.0; ///< uniform activity lo is a member
    double hi = 1.0; ///< no member at or above hi (or hi == 1)
};

/// Critical uniform activity of a finite graph by bisection on exact
/// membership: lo <= lambda_c and hi - lo <= tol.
LambdaBracket critical_lambda_exact(const OrderedGraph &g, double tol = 1e-9);

/// Throws OracleError unless every entry is in [0, 1) and the size is n.
void require_probability_vector(const OrderedGraph &g, std::span<const double> p);

} // namespace walklll
