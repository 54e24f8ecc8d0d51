#include "oracles.hpp"

#include <algorithm>

namespace walklll::testkit {

Rational brute_restricted(const OrderedGraph &g, const std::vector<Rational> &p, SubsetMask s) {
    Rational z = 0;
    for (SubsetMask i = s;; i = (i - 1) & s) {
        bool independent = true;
        Rational term = 1;
        for (Vertex v : from_mask(i)) {
            if (g.neighbor_mask(v) & i) {
                independent = false;
                break;
            }
            term *= -p[v];
        }
        if (independent)
            z += term;
        if (i == 0)
            break;
    }
    return z;
}

ExactRatio::ExactRatio(const OrderedGraph &g, std::vector<Rational> p, std::vector<int> rank)
    : g_(g), p_(std::move(p)), rank_(std::move(rank)) {}

std::optional<Rational> ExactRatio::operator()(Vertex i, SubsetMask s) {
    auto key = std::make_pair(i, s);
    if (auto it = memo_.find(key); it != memo_.end())
        return it->second;
    VertexSet nb = from_mask(g_.neighbor_mask(i) & s);
    std::sort(nb.begin(), nb.end(), [&](int a, int b) { return rank_[a] < rank_[b]; });
    Rational value = p_[i];
    SubsetMask rest = s;
    std::optional<Rational> out;
    bool ok = true;
    for (Vertex j : nb) {
        rest &= ~(SubsetMask{1} << j);
        auto r = (*this)(j, rest);
        if (!r || *r >= 1) {
            ok = false;
            break;
        }
        value /= (1 - *r);
    }
    if (ok && value < 1)
        out = value;
    memo_.emplace(key, out);
    return out;
}

std::vector<Rational> to_rationals(const std::vector<double> &p) {
    std::vector<Rational> out;
    for (double v : p)
        out.push_back(to_rational(v));
    return out;
}

} // namespace walklll::testkit
