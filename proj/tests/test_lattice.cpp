#include "support.hpp"

#include "walklll/baselines.hpp"
#include "walklll/lattice.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace walklll;

namespace {

const LatticeKind kKinds[] = {LatticeKind::Square, LatticeKind::Cubic, LatticeKind::Hexagonal};

double bound_of(const LatticeSpec &spec, const FilterPattern &pattern, int window = -1, double tol = 1e-7) {
    SolverParams params;
    params.bisection_tol = tol;
    return compute_bound(spec, pattern, window, 2'000'000, params).bound.lambda;
}

std::vector<Site> random_lattice_walk(std::mt19937_64 &rng, const LatticeSpec &spec, int steps) {
    std::vector<Site> w{{static_cast<int>(rng() % spec.sublattices()), 0, 0, 0}};
    for (int k = 0; k < steps; ++k) {
        auto nb = spec.neighbors(w.back());
        w.push_back(nb[rng() % nb.size()]);
    }
    return w;
}

} // namespace

TEST(LatticeSpec, NeighborsAreSymmetric) {
    for (auto kind : kKinds) {
        LatticeSpec spec(kind);
        for (int sub = 0; sub < spec.sublattices(); ++sub) {
            Site s{sub, 2, -1, kind == LatticeKind::Cubic ? 3 : 0};
            auto nb = spec.neighbors(s);
            EXPECT_EQ(static_cast<int>(nb.size()), spec.degree());
            for (std::size_t d = 0; d < nb.size(); ++d) {
                EXPECT_EQ(spec.direction(s, nb[d]), static_cast<int>(d));
                auto back = spec.neighbors(nb[d]);
                EXPECT_NE(std::find(back.begin(), back.end(), s), back.end());
                EXPECT_EQ(spec.distance(s, nb[d]), 1);
            }
            EXPECT_EQ(spec.direction(s, s), -1);
        }
    }
}

TEST(LatticeSpec, OrderIsTranslationInvariant) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> u(-5, 5);
    for (auto kind : kKinds) {
        LatticeSpec spec(kind);
        for (int k = 0; k < 500; ++k) {
            int za = kind == LatticeKind::Cubic ? u(rng) : 0, zb = kind == LatticeKind::Cubic ? u(rng) : 0;
            Site a{static_cast<int>(rng() % spec.sublattices()), u(rng), u(rng), za};
            Site b{static_cast<int>(rng() % spec.sublattices()), u(rng), u(rng), zb};
            int dx = u(rng), dy = u(rng), dz = kind == LatticeKind::Cubic ? u(rng) : 0;
            EXPECT_EQ(spec.less(a, b), spec.less(spec.translate(a, dx, dy, dz), spec.translate(b, dx, dy, dz)));
            EXPECT_EQ(spec.distance(a, b), spec.distance(spec.translate(a, dx, dy, dz), spec.translate(b, dx, dy, dz)));
            EXPECT_FALSE(spec.less(a, b) && spec.less(b, a));
        }
    }
}

TEST(LatticeSpec, HexagonalDistances) {
    LatticeSpec hex(LatticeKind::Hexagonal);
    Site a{0, 0, 0, 0};
    EXPECT_EQ(hex.distance(a, {1, 0, 0, 0}), 1);
    EXPECT_EQ(hex.distance(a, {0, 1, 0, 0}), 2);
    EXPECT_EQ(hex.distance(a, {0, 1, -1, 0}), 2);
    EXPECT_EQ(hex.distance(a, {1, 1, 0, 0}), 3);
}

TEST(LatticeSpec, ParseKind) {
    EXPECT_EQ(parse_lattice_kind("square"), LatticeKind::Square);
    EXPECT_EQ(parse_lattice_kind("hex"), LatticeKind::Hexagonal);
    EXPECT_STREQ(to_string(LatticeKind::Cubic), "cubic");
    EXPECT_ANY_THROW(parse_lattice_kind("triangular"));
}

TEST(Pattern, NormalizationDropsTranslates) {
    LatticeSpec sq(LatticeKind::Square);
    FilterPattern p(sq, {{{0, 3, 4, 0}, {0, 2, 4, 0}}, {{0, 0, 0, 0}, {0, 1, 0, 0}}, {{0, 7, 7, 0}}}, "x");
    ASSERT_EQ(p.sets().size(), 2u);
    EXPECT_EQ(p.sets()[0].front(), (Site{0, 0, 0, 0}));
    EXPECT_EQ(p.hash(), FilterPattern(sq, {{{0, 0, 0, 0}}, {{0, 5, 5, 0}, {0, 6, 5, 0}}}, "y").hash());
}

TEST(Pattern, Presets) {
    LatticeSpec sq(LatticeKind::Square), cu(LatticeKind::Cubic), hex(LatticeKind::Hexagonal);
    EXPECT_TRUE(pattern_none(sq).sets().empty());
    EXPECT_EQ(pattern_edges(sq).sets().size(), 2u);
    EXPECT_EQ(pattern_edges(cu).sets().size(), 3u);
    EXPECT_EQ(pattern_edges(hex).sets().size(), 3u);
    EXPECT_EQ(pattern_neighborhoods(sq).sets()[0].size(), 5u);
    EXPECT_EQ(pattern_ball(sq, 2).sets()[0].size(), 13u);
    EXPECT_EQ(pattern_ball(sq, 3).sets()[0].size(), 25u);
    EXPECT_EQ(pattern_box(cu, 3).sets()[0].size(), 27u);
    EXPECT_EQ(pattern_neighborhoods(hex).sets().size(), 2u);
    EXPECT_EQ(pattern_preset(sq, "ball3").hash(), pattern_ball(sq, 3).hash());
    EXPECT_EQ(pattern_preset(cu, "headline").hash(), pattern_box(cu, 3).hash());
    EXPECT_ANY_THROW(pattern_preset(sq, "blob"));
    EXPECT_EQ(default_window(sq, pattern_ball(sq, 3)), 7);
}

TEST(Pattern, FileRoundTrip) {
    for (auto kind : kKinds) {
        LatticeSpec spec(kind);
        auto p = pattern_ball(spec, 2);
        std::stringstream ss;
        write_pattern(ss, spec, p);
        auto [k, q] = read_pattern(ss);
        EXPECT_EQ(k, kind);
        EXPECT_EQ(q.sets(), p.sets());
        EXPECT_EQ(q.hash(), p.hash());
    }
}

TEST(Pattern, ParseErrors) {
    std::istringstream no_header("(0,0) (1,0)\n");
    EXPECT_THROW(read_pattern(no_header), PatternParseError);
    std::istringstream bad_token("lattice=square\n(0,0) (1,x)\n");
    EXPECT_THROW(read_pattern(bad_token), PatternParseError);
    std::istringstream ok("lattice=hexagonal\n# comment\n(0,0):0 (0,0):1\n");
    auto [kind, p] = read_pattern(ok);
    EXPECT_EQ(kind, LatticeKind::Hexagonal);
    EXPECT_EQ(p.sets().size(), 1u);
}

TEST(LatticeAutomaton, EmptyPattern) {
    LatticeSpec sq(LatticeKind::Square);
    auto a = build_lattice_automaton(sq, pattern_none(sq));
    ASSERT_EQ(a.automaton.class_count(), 1u);
    EXPECT_EQ(a.automaton.successors(0).size(), 4u);
    EXPECT_NEAR(bound_of(sq, pattern_none(sq)), 256.0 / 3125, 1e-6);
}

TEST(LatticeAutomaton, ClosedFormsOnAllLattices) {
    for (auto kind : kKinds) {
        LatticeSpec spec(kind);
        EXPECT_NEAR(bound_of(spec, pattern_none(spec)), asymmetric_symmetric_bound(spec.degree()), 1e-6);
        EXPECT_NEAR(bound_of(spec, pattern_edges(spec)), nonbacktracking_symmetric_bound(spec.degree()), 1e-6);
    }
}

TEST(LatticeAutomaton, EdgePatternDegreeBookkeeping) {
    LatticeSpec sq(LatticeKind::Square);
    auto a = build_lattice_automaton(sq, pattern_edges(sq));
    EXPECT_EQ(a.automaton.class_count(), 5u);
    for (ClassId c = 0; c < a.automaton.class_count(); ++c) {
        std::size_t expect = c == a.automaton.starts[0] ? 4 : 3;
        EXPECT_EQ(a.automaton.successors(c).size(), expect);
    }
}

TEST(LatticeAutomaton, CanonicalizationIsIdempotent) {
    for (auto kind : kKinds) {
        LatticeSpec spec(kind);
        auto a = build_lattice_automaton(spec, pattern_ball(spec, 2));
        for (ClassId c = 0; c < a.automaton.class_count(); c += 7) {
            Site t{a.automaton.activity[c], 3, -2, kind == LatticeKind::Cubic ? 5 : 0};
            auto k = a.canonicalize(a.absolute(c, t));
            EXPECT_EQ(k, a.key(c));
            Site u{t.sub, -4, 1, 0};
            EXPECT_EQ(a.canonicalize(a.absolute(c, u)), k);
            auto found = a.find(k);
            ASSERT_TRUE(found.has_value());
            EXPECT_EQ(*found, c);
        }
    }
}

TEST(LatticeAutomaton, DeterministicAndValid) {
    for (auto kind : kKinds) {
        LatticeSpec spec(kind);
        auto a = build_lattice_automaton(spec, pattern_ball(spec, 2));
        auto b = build_lattice_automaton(spec, pattern_ball(spec, 2));
        EXPECT_NO_THROW(a.automaton.validate());
        EXPECT_EQ(a.automaton.fingerprint(), b.automaton.fingerprint());
        EXPECT_EQ(a.live, b.live);
    }
}

TEST(LatticeAutomaton, BudgetIsEnforced) {
    LatticeSpec sq(LatticeKind::Square);
    try {
        build_lattice_automaton(sq, pattern_ball(sq, 3), -1, 100);
        FAIL() << "budget not enforced";
    } catch (const StateBudgetExceeded &e) {
        EXPECT_EQ(e.budget, 100u);
        EXPECT_GE(e.partial_count, 100u);
    }
}

TEST(LatticeAutomaton, RunRejectsJumps) {
    LatticeSpec sq(LatticeKind::Square);
    auto a = build_lattice_automaton(sq, pattern_edges(sq));
    std::vector<Site> jump{{0, 0, 0, 0}, {0, 2, 0, 0}};
    EXPECT_THROW(run_lattice_walk(a, jump), NotAWalk);
    std::vector<Site> back{{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}};
    EXPECT_FALSE(run_lattice_walk(a, back).has_value());
}

// A class depends only on the walk up to translation.
TEST(LatticeAutomaton, TranslatedWalksReachTheSameClass) {
    std::mt19937_64 rng(2);
    for (auto kind : kKinds) {
        LatticeSpec spec(kind);
        auto a = build_lattice_automaton(spec, pattern_ball(spec, 2));
        for (int k = 0; k < 200; ++k) {
            auto w = random_lattice_walk(rng, spec, 10);
            auto shifted = w;
            for (auto &s : shifted)
                s = spec.translate(s, 7, -3, kind == LatticeKind::Cubic ? 2 : 0);
            EXPECT_EQ(run_lattice_walk(a, w), run_lattice_walk(a, shifted));
        }
    }
}

TEST(LatticeAutomaton, WindowMonotone) {
    LatticeSpec sq(LatticeKind::Square);
    auto p = pattern_ball(sq, 2);
    double prev = 0.0;
    for (int window = 1; window <= default_window(sq, p); ++window) {
        double b = bound_of(sq, p, window);
        EXPECT_GE(b, prev - 1e-6) << window;
        prev = b;
    }
    EXPECT_GT(prev, bound_of(sq, pattern_ball(sq, 1)));
}

TEST(LatticeAutomaton, PatternMonotone) {
    for (auto kind : kKinds) {
        LatticeSpec spec(kind);
        double prev = 0.0;
        for (const auto &p : {pattern_none(spec), pattern_edges(spec), pattern_neighborhoods(spec),
                              pattern_ball(spec, 2)}) {
            double b = bound_of(spec, p);
            EXPECT_GE(b, prev - 1e-6) << to_string(kind) << " " << p.name();
            prev = b;
        }
    }
    // adding a family to an existing one
    LatticeSpec sq(LatticeKind::Square);
    auto both_sets = pattern_ball(sq, 2).sets();
    auto box = pattern_box(sq, 3);
    for (const auto &s : box.sets())
        both_sets.push_back(s);
    FilterPattern both(sq, both_sets, "ball2+box3");
    EXPECT_GE(bound_of(sq, both), bound_of(sq, pattern_ball(sq, 2)) - 1e-6);
    EXPECT_GE(bound_of(sq, both), bound_of(sq, pattern_box(sq, 3)) - 1e-6);
}

TEST(Patch, SquareEmptyPattern) {
    LatticeSpec sq(LatticeKind::Square);
    auto r = finite_patch_crosscheck(sq, pattern_none(sq), 2, -1, 6);
    EXPECT_EQ(r.vertices, 13);
    EXPECT_EQ(r.unsound, 0u);
    EXPECT_EQ(r.loose, 0u);
    EXPECT_EQ(r.self_bounding_rejected, 0u);
    EXPECT_TRUE(r.sound());
}

TEST(Patch, SquareEdgePattern) {
    LatticeSpec sq(LatticeKind::Square);
    auto r = finite_patch_crosscheck(sq, pattern_edges(sq), 2, -1, 8);
    EXPECT_EQ(r.unsound, 0u);
    EXPECT_EQ(r.loose, 0u);
    EXPECT_GT(r.walks_checked, 100000u);
    EXPECT_TRUE(r.sound());
}

TEST(Patch, HexagonalBelowExactCritical) {
    LatticeSpec hex(LatticeKind::Hexagonal);
    for (const auto &p : {pattern_edges(hex), pattern_neighborhoods(hex), pattern_ball(hex, 2)}) {
        auto r = finite_patch_crosscheck(hex, p, 2, -1, 6);
        ASSERT_TRUE(r.patch_lambda_exact.has_value());
        EXPECT_LE(r.lattice_bound, *r.patch_lambda_exact);
        EXPECT_EQ(r.unsound, 0u);
        EXPECT_EQ(r.loose, 0u);
        EXPECT_EQ(r.self_bounding_rejected, 0u);
        EXPECT_TRUE(r.sound()) << p.name();
    }
}

// A narrow window forgets constraints: the language only grows.
TEST(Patch, ForgettingStaysSound) {
    LatticeSpec sq(LatticeKind::Square);
    auto r = finite_patch_crosscheck(sq, pattern_ball(sq, 2), 2, 2, 6);
    EXPECT_EQ(r.unsound, 0u);
    EXPECT_EQ(r.self_bounding_rejected, 0u);
    EXPECT_TRUE(r.sound());
}

TEST(Patch, CubicBall) {
    LatticeSpec cu(LatticeKind::Cubic);
    auto r = finite_patch_crosscheck(cu, pattern_neighborhoods(cu), 1, -1, 6);
    EXPECT_EQ(r.vertices, 7);
    EXPECT_TRUE(r.sound());
    EXPECT_EQ(r.loose, 0u);
}

TEST(ComputeBound, ReportFields) {
    LatticeSpec hex(LatticeKind::Hexagonal);
    LatticeAutomaton keep;
    auto rep = compute_bound(hex, pattern_edges(hex), -1, 1000, {}, &keep);
    EXPECT_EQ(rep.kind, LatticeKind::Hexagonal);
    EXPECT_EQ(rep.pattern, "edges");
    EXPECT_EQ(rep.classes, keep.automaton.class_count());
    EXPECT_EQ(rep.fingerprint, keep.automaton.fingerprint());
    EXPECT_EQ(rep.window, default_window(hex, pattern_edges(hex)));
    EXPECT_TRUE(check_certificate(keep.automaton, std::vector<double>(2, rep.bound.lambda), rep.bound.certificate));
}
