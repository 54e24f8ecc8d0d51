#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace walklll {

using ClassId = std::uint32_t;

class StateBudgetExceeded : public std::runtime_error {
public:
    StateBudgetExceeded(std::size_t budget, std::size_t partial_count);
    std::size_t budget;
    std::size_t partial_count;
};

/// Finite deterministic automaton whose states are walk classes.
///
/// Each class carries an activity index (the terminal vertex on a finite
/// graph, the terminal's sublattice on a lattice) selecting its p entry.
/// Successors are stored in CSR form; `labels[k]` names the step taken by
/// transition k (next vertex, or lattice direction). `starts[a]` is the class
/// of the one-vertex walk with activity index a.
struct ClassAutomaton {
    int activity_count = 0;
    std::vector<int> activity;
    std::vector<std::uint32_t> offsets{0};
    std::vector<ClassId> targets;
    std::vector<std::int32_t> labels;
    std::vector<ClassId> starts;

    std::size_t class_count() const { return activity.size(); }
    std::size_t transition_count() const { return targets.size(); }

    std::span<const ClassId> successors(ClassId c) const {
        return {targets.data() + offsets[c], targets.data() + offsets[c + 1]};
    }
    std::span<const std::int32_t> successor_labels(ClassId c) const {
        return {labels.data() + offsets[c], labels.data() + offsets[c + 1]};
    }

    std::optional<ClassId> step(ClassId c, std::int32_t label) const;

    /// Content hash over activities, transitions and start classes.
    std::uint64_t fingerprint() const;

    /// Throws std::logic_error if the automaton is nondeterministic, has a
    /// class unreachable from the start classes, or is malformed.
    void validate() const;
};

/// Merges language-equivalent classes by partition refinement (classes agree
/// on activity index and on labelled successor blocks). The solver's values
/// are unchanged; only memory shrinks. Classes are renumbered in BFS order
/// from the start classes.
ClassAutomaton minimize(const ClassAutomaton &a);

/// Incremental CSR construction in BFS order.
class AutomatonBuilder {
public:
    explicit AutomatonBuilder(int activity_count);

    ClassId add_class(int activity);
    /// Transitions of class c must be added while c is the current class,
    /// i.e. classes are closed in increasing id order.
    void add_transition(ClassId from, std::int32_t label, ClassId to);
    void set_start(int activity, ClassId c);
    std::size_t class_count() const { return out_.activity.size(); }

    ClassAutomaton finish();

private:
    void close_until(ClassId c);

    ClassAutomaton out_;
    ClassId open_ = 0;
};

} // namespace walklll
