#include "walklll/isp_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace walklll {

namespace {

std::vector<SubsetMask> closed_neighborhoods(const OrderedGraph &g) {
    std::vector<SubsetMask> out(static_cast<std::size_t>(g.size()));
    for (Vertex v = 0; v < g.size(); ++v)
        out[v] = g.neighbor_mask(v) | (SubsetMask{1} << v);
    return out;
}

void require_size(const OrderedGraph &g, std::size_t len) {
    if (len != static_cast<std::size_t>(g.size()))
        throw OracleError("activity vector has " + std::to_string(len) + " entries, graph has " +
                          std::to_string(g.size()) + " vertices");
}

void require_cap(const OrderedGraph &g, int cap) {
    if (g.size() > cap)
        throw OracleError("graph has " + std::to_string(g.size()) + " vertices; exact oracle cap is " +
                          std::to_string(cap));
}

// Table of Z(sign * x; S) over all masks via the deletion recurrence on the
// lowest element: Z(S) = Z(S - i) + sign x_i Z(S - N[i]).
template <class T, class Conv>
std::vector<T> subset_table(const OrderedGraph &g, std::span<const double> x, int sign, Conv conv) {
    const int n = g.size();
    auto closed = closed_neighborhoods(g);
    std::vector<T> weight;
    weight.reserve(x.size());
    for (double v : x)
        weight.push_back(conv(sign * v));
    std::vector<T> z(std::size_t{1} << n);
    z[0] = T(1);
    for (SubsetMask s = 1; s < (SubsetMask{1} << n); ++s) {
        int i = std::countr_zero(s);
        z[s] = z[s & (s - 1)] + weight[i] * z[s & ~closed[i]];
    }
    return z;
}

} // namespace

DivergentRatio::DivergentRatio(Vertex vertex, SubsetMask set, double value)
    : std::runtime_error("ratio(" + std::to_string(vertex) + ", S) = " + std::to_string(value) +
                         " >= 1: activity vector is outside the Shearer region"),
      vertex(vertex), set(set), value(value) {}

void require_probability_vector(const OrderedGraph &g, std::span<const double> p) {
    require_size(g, p.size());
    for (double v : p)
        if (!(v >= 0.0 && v < 1.0))
            throw OracleError("activity " + std::to_string(v) + " is outside [0, 1)");
}

double ind_poly_enumerate(const OrderedGraph &g, std::span<const double> x) {
    require_size(g, x.size());
    require_cap(g, kEnumerationCap);
    const int n = g.size();
    std::vector<SubsetMask> nbr(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        nbr[v] = g.neighbor_mask(v);
    double total = 0.0;
    for (SubsetMask s = 0; s < (SubsetMask{1} << n); ++s) {
        bool independent = true;
        double term = 1.0;
        for (SubsetMask rest = s; rest; rest &= rest - 1) {
            int i = std::countr_zero(rest);
            if (nbr[i] & s) {
                independent = false;
                break;
            }
            term *= x[i];
        }
        if (independent)
            total += term;
    }
    return total;
}

double ind_poly_recurrence(const OrderedGraph &g, std::span<const double> x) {
    require_size(g, x.size());
    if (g.size() > 64)
        throw OracleError("recurrence evaluation needs at most 64 vertices");
    auto closed = closed_neighborhoods(g);
    std::unordered_map<SubsetMask, double> memo;
    auto rec = [&](auto &self, SubsetMask s) -> double {
        if (s == 0)
            return 1.0;
        if (auto it = memo.find(s); it != memo.end())
            return it->second;
        int i = 63 - std::countl_zero(s);
        double v = self(self, s & ~(SubsetMask{1} << i)) + x[i] * self(self, s & ~closed[i]);
        memo.emplace(s, v);
        return v;
    };
    SubsetMask all = g.size() == 64 ? ~SubsetMask{0} : (SubsetMask{1} << g.size()) - 1;
    return rec(rec, all);
}

double ind_poly(const OrderedGraph &g, std::span<const double> x) {
    double by_recurrence = ind_poly_recurrence(g, x);
    double by_enumeration = ind_poly_enumerate(g, x);
    std::vector<double> absx(x.begin(), x.end());
    for (double &v : absx)
        v = std::fabs(v);
    double scale = ind_poly_recurrence(g, absx);
    if (std::fabs(by_recurrence - by_enumeration) > 1e-9 * scale)
        throw OracleError("enumeration and recurrence disagree");
    return by_recurrence;
}

double ind_poly_restricted(const OrderedGraph &g, std::span<const double> p, SubsetMask s) {
    require_size(g, p.size());
    if (g.size() > 64)
        throw OracleError("restricted evaluation needs at most 64 vertices");
    std::vector<double> masked(p.size(), 0.0);
    for (SubsetMask rest = s; rest; rest &= rest - 1) {
        int i = std::countr_zero(rest);
        if (i >= g.size())
            throw OracleError("subset mask exceeds the vertex range");
        masked[i] = -p[i];
    }
    return ind_poly_recurrence(g, masked);
}

Rational ind_poly_restricted_exact(const OrderedGraph &g, std::span<const double> p, SubsetMask s) {
    require_size(g, p.size());
    auto closed = closed_neighborhoods(g);
    std::vector<Rational> weight;
    for (double v : p)
        weight.push_back(-to_rational(v));
    std::unordered_map<SubsetMask, Rational> memo;
    auto rec = [&](auto &self, SubsetMask t) -> Rational {
        if (t == 0)
            return Rational(1);
        if (auto it = memo.find(t); it != memo.end())
            return it->second;
        int i = 63 - std::countl_zero(t);
        Rational v = self(self, t & ~(SubsetMask{1} << i)) + weight[i] * self(self, t & ~closed[i]);
        memo.emplace(t, v);
        return v;
    };
    return rec(rec, s);
}

std::vector<double> restricted_table(const OrderedGraph &g, std::span<const double> p) {
    require_size(g, p.size());
    require_cap(g, kEnumerationCap);
    return subset_table<double>(g, p, -1, [](double v) { return v; });
}

std::vector<Rational> restricted_table_exact(const OrderedGraph &g, std::span<const double> p) {
    require_size(g, p.size());
    require_cap(g, 16);
    return subset_table<Rational>(g, p, -1, [](double v) { return to_rational(v); });
}

MembershipVerdict shearer_membership_exact(const OrderedGraph &g, std::span<const double> p) {
    require_probability_vector(g, p);
    require_cap(g, kMembershipCap);
    MembershipVerdict verdict;
    verdict.table = restricted_table(g, p);
    int best_size = 65;
    for (SubsetMask s = 0; s < verdict.table.size(); ++s) {
        if (verdict.table[s] > 0.0)
            continue;
        int size = std::popcount(s);
        if (size < best_size) {
            best_size = size;
            verdict.witness = s;
        }
    }
    verdict.member = !verdict.witness.has_value();
    return verdict;
}

RatioOracle::RatioOracle(const OrderedGraph &g, std::span<const double> p, EliminationOrder order)
    : graph_(g), p_(p.begin(), p.end()), order_(order) {
    require_size(g, p.size());
    if (g.size() > 58)
        throw OracleError("ratio oracle supports at most 58 vertices");
    nbr_.resize(static_cast<std::size_t>(g.size()));
    for (Vertex v = 0; v < g.size(); ++v)
        nbr_[v] = g.neighbor_mask(v);
}

double RatioOracle::operator()(Vertex i, SubsetMask s) {
    if (i < 0 || i >= graph_.size())
        throw OracleError("vertex out of range");
    if (s & (SubsetMask{1} << i))
        throw OracleError("ratio(i, S) requires i outside S");
    const std::uint64_t key = (s << 6) | static_cast<std::uint64_t>(i);
    if (auto it = memo_.find(key); it != memo_.end())
        return it->second;

    double value = p_[i];
    SubsetMask remaining = s;
    SubsetMask todo = nbr_[i] & s;
    while (todo) {
        int j = order_ == EliminationOrder::Descending ? 63 - std::countl_zero(todo) : std::countr_zero(todo);
        todo &= ~(SubsetMask{1} << j);
        remaining &= ~(SubsetMask{1} << j);
        double child = (*this)(j, remaining);
        value /= (1.0 - child);
    }
    if (!(value < 1.0))
        throw DivergentRatio(i, s, value);
    memo_.emplace(key, value);
    return value;
}

double ratio(const OrderedGraph &g, std::span<const double> p, Vertex i, SubsetMask s, EliminationOrder order) {
    RatioOracle oracle(g, p, order);
    return oracle(i, s);
}

std::optional<double> avoid_value(const OrderedGraph &g, std::span<const double> p) {
    auto verdict = shearer_membership_exact(g, p);
    if (!verdict.member)
        return std::nullopt;
    return verdict.table.back();
}

LambdaBracket critical_lambda_exact(const OrderedGraph &g, double tol) {
    require_cap(g, kMembershipCap);
    auto member = [&](double lambda) {
        std::vector<double> p(static_cast<std::size_t>(g.size()), lambda);
        auto table = subset_table<double>(g, p, -1, [](double v) { return v; });
        return std::all_of(table.begin(), table.end(), [](double z) { return z > 0.0; });
    };
    LambdaBracket b{0.0, 1.0};
    while (b.hi - b.lo > tol) {
        double mid = 0.5 * (b.lo + b.hi);
        if (member(mid))
            b.lo = mid;
        else
            b.hi = mid;
    }
    return b;
}

} // namespace walklll
