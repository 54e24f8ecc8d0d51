#include "walklll/supermodular.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace walklll {

SetFunctionTable::SetFunctionTable(int n, std::vector<double> v) : n(n), values(std::move(v)) {
    if (n < 0 || n > kTableCap)
        throw std::invalid_argument("table size out of range (n <= " + std::to_string(kTableCap) + ")");
    if (values.size() != (std::size_t{1} << n))
        throw std::invalid_argument("table needs 2^n values");
}

double SetFunctionTable::min_value() const { return *std::min_element(values.begin(), values.end()); }

SupermodularityVerdict is_supermodular(const SetFunctionTable &t, double tol) {
    const SubsetMask full = (SubsetMask{1} << t.n) - 1;
    for (int i = 0; i < t.n; ++i) {
        const SubsetMask bi = SubsetMask{1} << i;
        for (SubsetMask s = 0; s <= full; ++s) {
            if (s & bi)
                continue;
            double ds = t(s | bi) - t(s);
            for (SubsetMask rest = full & ~(s | bi); rest; rest &= rest - 1) {
                SubsetMask u = s | (rest & (~rest + 1));
                if (ds > t(u | bi) - t(u) + tol)
                    return {false, SupermodularityWitness{i, s, u}};
            }
        }
    }
    return {};
}

FactorizationVerdict factorizes(const SetFunctionTable &t, const OrderedGraph &g, std::span<const double> p,
                                double tol) {
    if (g.size() != t.n || static_cast<int>(p.size()) != t.n)
        throw std::invalid_argument("table, graph and activity sizes differ");
    const SubsetMask full = (SubsetMask{1} << t.n) - 1;
    for (int i = 0; i < t.n; ++i) {
        const SubsetMask bi = SubsetMask{1} << i;
        const SubsetMask allowed = full & ~(g.neighbor_mask(i) | bi);
        // all subsets of `allowed`, including the empty one
        SubsetMask s = 0;
        do {
            if (t(s | bi) < (1.0 - p[i]) * t(s) - tol)
                return {false, FactorizationWitness{i, s}};
            s = (s - allowed) & allowed;
        } while (s != 0);
    }
    return {};
}

SupermodularBound supermodular_lower_bound(const SetFunctionTable &t, const OrderedGraph &g,
                                           std::span<const double> p, SubsetMask x) {
    if (g.size() != t.n || static_cast<int>(p.size()) != t.n)
        throw PreconditionFailed("table, graph and activity sizes differ");
    if (x >> t.n)
        throw std::invalid_argument("subset outside [n]");
    auto membership = shearer_membership_exact(g, p);
    if (!membership.member)
        throw PreconditionFailed("p is outside the Shearer region of the graph");
    if (!(t(0) > 0.0))
        throw PreconditionFailed("f(empty set) must be positive");
    if (t.min_value() < 0.0)
        throw PreconditionFailed("table has negative values");
    if (!is_supermodular(t).supermodular)
        throw PreconditionFailed("table is not supermodular");
    if (!factorizes(t, g, p).factorizes)
        throw PreconditionFailed("table does not factorize according to the graph and p");
    SupermodularBound out;
    out.bound = t(0) * membership.table[x];
    out.holds = t(x) >= out.bound - kTableTolerance;
    return out;
}

ExtremalTable extremal_construction(const OrderedGraph &g, std::span<const double> p, double tol) {
    require_probability_vector(g, p);
    if (g.size() > kTableCap)
        throw std::invalid_argument("graph too large for a full table");
    if (shearer_membership_exact(g, p).member)
        throw RegionNotViolated("p lies inside the Shearer region; no extremal table below it");
    auto scaled = [&](double theta) {
        std::vector<double> q(p.begin(), p.end());
        for (auto &v : q)
            v *= theta;
        return q;
    };
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (shearer_membership_exact(g, scaled(mid)).member)
            lo = mid;
        else
            hi = mid;
    }
    ExtremalTable out;
    out.lambda = lo;
    out.table = SetFunctionTable(g.size(), restricted_table(g, scaled(lo)));
    return out;
}

SetFunctionTable generate_event_instance(const OrderedGraph &g, std::span<const double> p, std::uint64_t seed) {
    require_probability_vector(g, p);
    const int n = g.size();
    const auto edges = g.edges();
    const int m = static_cast<int>(edges.size());
    if (n > kTableCap || n + m > 24)
        throw std::invalid_argument("event instance too large (need n + |E| <= 24)");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // Shared variable of edge e is 1 with probability q[e]. Endpoint v of e
    // scales its probability by 1 + delta (1 - q) when X_e = 1 and by
    // 1 - delta q when X_e = 0, which has mean one.
    std::vector<double> q(m);
    std::vector<std::vector<std::pair<int, double>>> factors(n); // (edge, delta)
    for (int e = 0; e < m; ++e) {
        q[e] = 0.2 + 0.6 * unit(rng);
        for (int v : {edges[e].first, edges[e].second})
            factors[v].push_back({e, 2.0 * unit(rng) - 1.0});
    }
    auto peak = [&](int v) {
        double a = p[v];
        for (auto [e, d] : factors[v])
            a *= std::max(1.0 + d * (1.0 - q[e]), 1.0 - d * q[e]);
        return a;
    };
    for (int v = 0; v < n; ++v)
        while (peak(v) > 1.0)
            for (auto &f : factors[v])
                f.second *= 0.5;

    std::vector<double> values(std::size_t{1} << n, 0.0);
    std::vector<double> survive(n), prod(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
        double weight = 1.0;
        for (int e = 0; e < m; ++e)
            weight *= (x >> e & 1) ? q[e] : 1.0 - q[e];
        for (int v = 0; v < n; ++v) {
            double a = p[v];
            for (auto [e, d] : factors[v])
                a *= (x >> e & 1) ? 1.0 + d * (1.0 - q[e]) : 1.0 - d * q[e];
            survive[v] = 1.0 - a;
        }
        prod[0] = 1.0;
        for (SubsetMask s = 1; s < prod.size(); ++s)
            prod[s] = prod[s & (s - 1)] * survive[std::countr_zero(s)];
        for (std::size_t s = 0; s < prod.size(); ++s)
            values[s] += weight * prod[s];
    }
    return SetFunctionTable(n, std::move(values));
}

SetFunctionTable read_table(std::istream &in) {
    int n = -1;
    if (!(in >> n) || n < 0 || n > kTableCap)
        throw std::invalid_argument("table: bad or missing n");
    std::vector<double> values(std::size_t{1} << n, 0.0);
    std::vector<char> seen(values.size(), 0);
    std::string mask_text;
    double value = 0.0;
    std::size_t count = 0;
    while (in >> mask_text) {
        if (!(in >> value))
            throw std::invalid_argument("table: missing value for mask " + mask_text);
        std::size_t used = 0;
        unsigned long long mask = 0;
        try {
            mask = std::stoull(mask_text, &used, 16);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != mask_text.size() || mask >= values.size())
            throw std::invalid_argument("table: bad mask " + mask_text);
        if (seen[mask]++)
            throw std::invalid_argument("table: duplicate mask " + mask_text);
        values[mask] = value;
        ++count;
    }
    if (count != values.size())
        throw std::invalid_argument("table: expected " + std::to_string(values.size()) + " entries, got " +
                                    std::to_string(count));
    return SetFunctionTable(n, std::move(values));
}

SetFunctionTable read_table_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open table file " + path);
    return read_table(in);
}

void write_table(std::ostream &out, const SetFunctionTable &t) {
    out << t.n << '\n';
    char buf[64];
    for (std::size_t s = 0; s < t.values.size(); ++s) {
        std::snprintf(buf, sizeof buf, "%zx %.17g\n", s, t.values[s]);
        out << buf;
    }
}

} // namespace walklll
