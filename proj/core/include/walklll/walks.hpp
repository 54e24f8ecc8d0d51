#pragma once

#include "walklll/automaton.hpp"
#include "walklll/graph.hpp"

#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace walklll {

/// State of a self-bounding walk: its last vertex and the forbidden set.
/// The start vertex is forbidden from the first step on, and every step
/// i -> j forbids all neighbors of i that are >= j (so j itself too).
struct SelfBoundingState {
    Vertex terminal = 0;
    SubsetMask forbidden = 0;

    bool operator==(const SelfBoundingState &) const = default;
};

SelfBoundingState start_state(Vertex v);
/// The state after stepping to `next`, or nothing if the step is not allowed.
std::optional<SelfBoundingState> extend(const OrderedGraph &g, const SelfBoundingState &s, Vertex next);

struct SelfBoundingWalk {
    std::vector<Vertex> vertices;
    SelfBoundingState state;
};

/// All self-bounding walks of g (n <= 64), in depth-first order by start
/// vertex. Throws StateBudgetExceeded past `cap` walks.
std::vector<SelfBoundingWalk> enumerate_self_bounding(const OrderedGraph &g, std::size_t cap = 50'000'000);

/// Replays the self-bounding rule; nothing if the sequence is not in B(g).
std::optional<SelfBoundingState> replay_self_bounding(const OrderedGraph &g, std::span<const Vertex> walk);

class NotAWalk : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Filter family: duplicates and empty filters are dropped on construction
/// (first occurrence wins), each filter is a sorted vertex set.
class FilterFamily {
public:
    FilterFamily() = default;
    FilterFamily(std::vector<VertexSet> filters);

    const std::vector<VertexSet> &filters() const { return filters_; }
    std::size_t size() const { return filters_.size(); }
    bool empty() const { return filters_.empty(); }

    std::uint64_t hash() const;

private:
    std::vector<VertexSet> filters_;
};

FilterFamily filters_none();
FilterFamily filters_edges(const OrderedGraph &g);
/// Inclusive neighborhoods Gamma_i + {i}.
FilterFamily filters_neighborhoods(const OrderedGraph &g);
FilterFamily filters_full(const OrderedGraph &g);
/// `count` random connected vertex sets grown from random seeds, each of
/// size at most `max_size`.
FilterFamily filters_random(const OrderedGraph &g, std::mt19937_64 &rng, int count, int max_size);

/// Reference acceptance check: every contiguous subwalk of `walk` whose
/// vertices all lie in some filter S must be self-bounding in G[S].
/// Throws NotAWalk if consecutive vertices are not adjacent.
bool is_walk_accepted(std::span<const Vertex> walk, const OrderedGraph &g, const FilterFamily &filters);

/// Per-filter suffix state, reduced to what determines the future: the
/// vertices of the filter still reachable from the terminal through
/// non-forbidden vertices (local indices into the filter).
struct FilterState {
    int filter = 0;
    SubsetMask live = 0;

    bool operator==(const FilterState &) const = default;
    auto operator<=>(const FilterState &) const = default;
};

struct WalkClass {
    Vertex terminal = 0;
    /// One entry per filter containing the terminal, in family order.
    std::vector<FilterState> states;

    bool operator==(const WalkClass &) const = default;
    auto operator<=>(const WalkClass &) const = default;

    /// Canonical byte encoding: terminal, then (filter, live set) pairs in
    /// family order.
    std::string encode() const;
};

struct WalkAutomaton {
    ClassAutomaton automaton; ///< activity index = terminal vertex, label = next vertex
    std::vector<WalkClass> classes;
    FilterFamily filters;
};

/// Classes of S-self-bounding walks, discovered breadth-first from the n
/// one-vertex walks. Filters may hold at most 64 vertices each.
WalkAutomaton build_class_automaton(const OrderedGraph &g, const FilterFamily &filters,
                                    std::size_t budget = 2'000'000);

/// Runs a walk through the automaton; the class reached, or nothing if
/// some step is rejected.
std::optional<ClassId> run_walk(const WalkAutomaton &a, std::span<const Vertex> walk);

/// Line-oriented debug dump: `class_id terminal | filter:live ... | label->target ...`.
void dump_automaton(std::ostream &out, const WalkAutomaton &a);

} // namespace walklll
