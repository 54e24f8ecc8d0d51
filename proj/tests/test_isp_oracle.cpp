#include "oracles.hpp"
#include "support.hpp"

#include "walklll/isp_oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

using namespace walklll;
using walklll::testkit::ExactRatio;

namespace {

double abs_poly(const OrderedGraph &g, const std::vector<double> &x) {
    std::vector<double> a;
    for (double v : x)
        a.push_back(std::abs(v));
    return ind_poly_enumerate(g, a);
}

SubsetMask full(int n) { return n == 64 ? ~SubsetMask{0} : (SubsetMask{1} << n) - 1; }

std::vector<double> neg(std::vector<double> p) {
    for (auto &v : p)
        v = -v;
    return p;
}

} // namespace

TEST(IndPoly, Examples) {
    OrderedGraph empty3(3);
    std::vector<double> x3{-0.3, -0.3, -0.3};
    EXPECT_NEAR(ind_poly(empty3, x3), std::pow(0.7, 3), 1e-15);
    std::vector<double> edge{-0.3, -0.4};
    EXPECT_NEAR(ind_poly(complete_graph(2), edge), 0.3, 1e-15);
    std::vector<double> k3{-0.2, -0.2, -0.2};
    EXPECT_NEAR(ind_poly(complete_graph(3), k3), 0.4, 1e-15);
}

TEST(IndPoly, SizeMismatchThrows) {
    std::vector<double> x{0.1};
    EXPECT_ANY_THROW(ind_poly(path_graph(3), x));
}

TEST(IndPoly, EnumerationMatchesRecurrenceOnAllSmallGraphs) {
    std::mt19937_64 rng(1);
    for (const auto &g : testkit::connected_graphs_upto(6))
        for (int k = 0; k < 5; ++k) {
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            std::vector<double> x(g.size());
            for (auto &v : x)
                v = u(rng);
            double a = ind_poly_enumerate(g, x), b = ind_poly_recurrence(g, x);
            EXPECT_LE(std::abs(a - b), 1e-12 * abs_poly(g, x));
        }
}

TEST(IndPoly, EnumerationMatchesRecurrenceOnRandomGraphs) {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 200; ++k) {
        int n = 1 + static_cast<int>(rng() % 14);
        auto g = testkit::random_graph(rng, n, 0.35);
        auto x = neg(testkit::random_activities(rng, n, 0.0, 0.4));
        double a = ind_poly_enumerate(g, x), b = ind_poly_recurrence(g, x);
        EXPECT_LE(std::abs(a - b), 1e-12 * abs_poly(g, x));
    }
}

TEST(Restricted, Examples) {
    std::mt19937_64 rng(3);
    auto g = petersen_graph();
    auto p = testkit::random_activities(rng, g.size(), 0.0, 0.5);
    EXPECT_EQ(ind_poly_restricted(g, p, 0), 1.0);
    for (int i = 0; i < g.size(); ++i)
        EXPECT_DOUBLE_EQ(ind_poly_restricted(g, p, SubsetMask{1} << i), 1.0 - p[i]);
    std::vector<double> pp{0.2, 0.2, 0.2};
    EXPECT_NEAR(ind_poly_restricted(path_graph(3), pp, 7), 0.44, 1e-15);
    EXPECT_EQ(ind_poly_restricted_exact(path_graph(3), pp, 7),
              testkit::brute_restricted(path_graph(3), testkit::to_rationals(pp), 7));
}

TEST(Restricted, ExactTableMatchesBruteForce) {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; ++k) {
        int n = 2 + static_cast<int>(rng() % 7);
        auto g = testkit::random_graph(rng, n, 0.5);
        auto p = testkit::random_activities(rng, n, 0.0, 0.6);
        auto table = restricted_table_exact(g, p);
        auto rp = testkit::to_rationals(p);
        for (SubsetMask s = 0; s <= full(n); ++s)
            ASSERT_EQ(table[s], testkit::brute_restricted(g, rp, s));
    }
}

TEST(Restricted, DeletionIdentityIsExact) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        int n = 1 + static_cast<int>(rng() % 10);
        auto g = testkit::random_graph(rng, n, 0.4);
        auto p = testkit::random_activities(rng, n, 0.0, 0.9);
        auto z = restricted_table_exact(g, p);
        auto rp = testkit::to_rationals(p);
        for (int probe = 0; probe < 20; ++probe) {
            SubsetMask s = rng() & full(n);
            int i = static_cast<int>(rng() % n);
            s &= ~(SubsetMask{1} << i);
            SubsetMask with = s | SubsetMask{1} << i;
            EXPECT_EQ(z[with], z[s] - rp[i] * z[s & ~g.neighbor_mask(i)]);
        }
    }
}

TEST(Ratio, Examples) {
    std::mt19937_64 rng(6);
    auto g = petersen_graph();
    auto p = testkit::random_activities(rng, g.size(), 0.0, 0.3);
    for (int i = 0; i < g.size(); ++i)
        EXPECT_EQ(ratio(g, p, i, 0), p[i]);

    std::vector<double> e{0.3, 0.2};
    double expect = 0.3 / (1 - 0.2);
    EXPECT_NEAR(ratio(complete_graph(2), e, 0, 0b10), expect, 1e-15);
    EXPECT_NEAR(1 - ind_poly_restricted(complete_graph(2), e, 0b11) / ind_poly_restricted(complete_graph(2), e, 0b10),
                expect, 1e-15);

    std::vector<double> k3{0.4, 0.4, 0.4};
    EXPECT_THROW(ratio(complete_graph(3), k3, 2, 0b011), DivergentRatio);
    double quotient = 1 - ind_poly_restricted(complete_graph(3), k3, 0b111) /
                              ind_poly_restricted(complete_graph(3), k3, 0b011);
    EXPECT_GE(quotient, 1.0);
}

TEST(Ratio, RequiresVertexOutsideSet) {
    std::vector<double> p{0.1, 0.1};
    EXPECT_ANY_THROW(ratio(complete_graph(2), p, 0, 0b01));
}

// The unfolding equals the polynomial quotient, for both elimination orders.
TEST(Ratio, MatchesPolynomialQuotient) {
    std::mt19937_64 rng(7);
    int checked = 0;
    for (int k = 0; k < 60; ++k) {
        int n = 2 + static_cast<int>(rng() % 9);
        auto g = testkit::random_graph(rng, n, 0.4);
        auto p = testkit::random_activities(rng, n, 0.0, 0.25);
        if (!shearer_membership_exact(g, p).member)
            continue;
        RatioOracle desc(g, p), asc(g, p, EliminationOrder::Ascending);
        for (int probe = 0; probe < 10; ++probe) {
            int i = static_cast<int>(rng() % n);
            SubsetMask s = rng() & full(n) & ~(SubsetMask{1} << i);
            double q = 1 - ind_poly_restricted(g, p, s | SubsetMask{1} << i) / ind_poly_restricted(g, p, s);
            EXPECT_NEAR(desc(i, s), q, 1e-12);
            EXPECT_NEAR(asc(i, s), q, 1e-12);
            ++checked;
        }
    }
    EXPECT_GT(checked, 200);
}

// Z(-p;S) = prod (1 - ratio(j_l, S_l)) with ratios from the exact recursive
// unfolding, for random elimination orders.
TEST(Ratio, TelescopingIsExactForAnyOrder) {
    std::mt19937_64 rng(8);
    int checked = 0;
    for (int k = 0; k < 60; ++k) {
        int n = 1 + static_cast<int>(rng() % 8);
        auto g = testkit::random_graph(rng, n, 0.45);
        std::vector<Rational> p;
        for (int v = 0; v < n; ++v)
            p.push_back(Rational(static_cast<int>(rng() % 200), 1024));
        std::vector<int> rank(n);
        std::iota(rank.begin(), rank.end(), 0);
        std::shuffle(rank.begin(), rank.end(), rng);
        ExactRatio oracle(g, p, rank);
        SubsetMask s = rng() & full(n);
        VertexSet order = from_mask(s);
        std::shuffle(order.begin(), order.end(), rng);
        Rational product = 1;
        SubsetMask rest = s;
        bool ok = true;
        for (Vertex j : order) {
            rest &= ~(SubsetMask{1} << j);
            auto r = oracle(j, rest);
            if (!r) {
                ok = false;
                break;
            }
            product *= 1 - *r;
        }
        if (!ok)
            continue;
        EXPECT_EQ(product, testkit::brute_restricted(g, p, s));
        ++checked;
    }
    EXPECT_GT(checked, 30);
}

TEST(Ratio, DoubleOracleMatchesExactUnfolding) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 30; ++k) {
        int n = 2 + static_cast<int>(rng() % 7);
        auto g = testkit::random_graph(rng, n, 0.4);
        auto p = testkit::random_activities(rng, n, 0.0, 0.2);
        if (!shearer_membership_exact(g, p).member)
            continue;
        std::vector<int> rank(n);
        for (int v = 0; v < n; ++v)
            rank[v] = n - v; // descending labels first
        ExactRatio exact(g, testkit::to_rationals(p), rank);
        RatioOracle fast(g, p);
        for (int i = 0; i < n; ++i) {
            SubsetMask s = full(n) & ~(SubsetMask{1} << i);
            auto e = exact(i, s);
            ASSERT_TRUE(e.has_value());
            EXPECT_NEAR(fast(i, s), e->convert_to<double>(), 1e-12 * e->convert_to<double>());
        }
    }
}

TEST(Membership, Examples) {
    std::vector<double> a{0.3, 0.3, 0.3}, b{0.4, 0.4, 0.4};
    EXPECT_TRUE(shearer_membership_exact(complete_graph(3), a).member);
    auto v = shearer_membership_exact(complete_graph(3), b);
    EXPECT_FALSE(v.member);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_EQ(*v.witness, SubsetMask{0b111});
    std::vector<double> high{0.99, 0.9, 0.95, 0.5};
    EXPECT_TRUE(shearer_membership_exact(OrderedGraph(4), high).member);
}

TEST(Membership, WitnessIsMinimal) {
    std::mt19937_64 rng(10);
    for (int k = 0; k < 50; ++k) {
        int n = 2 + static_cast<int>(rng() % 7);
        auto g = testkit::random_graph(rng, n, 0.5);
        auto p = testkit::random_activities(rng, n, 0.1, 0.6);
        auto v = shearer_membership_exact(g, p);
        auto table = restricted_table(g, p);
        bool all_positive = std::all_of(table.begin(), table.end(), [](double z) { return z > 0; });
        EXPECT_EQ(v.member, all_positive);
        if (v.member) {
            EXPECT_FALSE(v.witness.has_value());
            continue;
        }
        ASSERT_TRUE(v.witness.has_value());
        EXPECT_LE(table[*v.witness], 0.0);
        for (SubsetMask s = 0; s <= full(n); ++s)
            if (table[s] <= 0)
                EXPECT_GE(std::popcount(s), std::popcount(*v.witness));
    }
}

TEST(Membership, MonotoneInP) {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 200; ++k) {
        int n = 2 + static_cast<int>(rng() % 8);
        auto g = testkit::random_graph(rng, n, 0.5);
        auto p = testkit::random_activities(rng, n, 0.0, 0.5);
        auto q = p;
        for (auto &v : q)
            v *= std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        if (shearer_membership_exact(g, p).member)
            EXPECT_TRUE(shearer_membership_exact(g, q).member);
    }
}

TEST(Membership, RejectsBadProbabilities) {
    std::vector<double> p{0.5, 1.0};
    EXPECT_THROW(shearer_membership_exact(complete_graph(2), p), OracleError);
}

TEST(AvoidValue, Examples) {
    std::vector<double> half{0.5, 0.5}, k3{0.4, 0.4, 0.4}, zero{0.0};
    EXPECT_NEAR(*avoid_value(OrderedGraph(2), half), 0.25, 1e-15);
    EXPECT_FALSE(avoid_value(complete_graph(3), k3).has_value());
    EXPECT_EQ(*avoid_value(OrderedGraph(1), zero), 1.0);
}

TEST(CriticalLambda, Examples) {
    auto k2 = critical_lambda_exact(complete_graph(2), 1e-9);
    EXPECT_LE(k2.lo, 0.5);
    EXPECT_GT(k2.lo, 0.5 - 2e-9);
    auto single = critical_lambda_exact(OrderedGraph(1), 1e-9);
    EXPECT_GT(single.lo, 1 - 2e-9);
    for (int n = 2; n <= 7; ++n) {
        auto b = critical_lambda_exact(complete_graph(n), 1e-10);
        EXPECT_LE(b.lo, 1.0 / n);
        EXPECT_GT(b.lo, 1.0 / n - 2e-10);
        EXPECT_LE(b.hi - b.lo, 1e-10);
    }
}

// Brackets agree with a direct subset scan.
TEST(CriticalLambda, BracketsTheScan) {
    for (const auto &g : testkit::connected_graphs(5)) {
        auto b = critical_lambda_exact(g, 1e-8);
        std::vector<double> lo(g.size(), b.lo), hi(g.size(), std::min(b.hi, 0.999999));
        auto positive = [&](const std::vector<double> &p) {
            for (SubsetMask s = 0; s < 32; ++s)
                if (ind_poly_restricted(g, p, s) <= 0)
                    return false;
            return true;
        };
        EXPECT_TRUE(positive(lo));
        if (b.hi < 1)
            EXPECT_FALSE(positive(hi));
    }
}
