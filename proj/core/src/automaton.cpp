#include "walklll/automaton.hpp"

#include "walklll/hash.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace walklll {

StateBudgetExceeded::StateBudgetExceeded(std::size_t budget, std::size_t partial_count)
    : std::runtime_error("class budget of " + std::to_string(budget) + " exceeded (" +
                         std::to_string(partial_count) + " classes discovered)"),
      budget(budget), partial_count(partial_count) {}

std::optional<ClassId> ClassAutomaton::step(ClassId c, std::int32_t label) const {
    for (std::uint32_t k = offsets[c]; k < offsets[c + 1]; ++k)
        if (labels[k] == label)
            return targets[k];
    return std::nullopt;
}

std::uint64_t ClassAutomaton::fingerprint() const {
    Fnv1a h;
    h.update("automaton").update_u64(static_cast<std::uint64_t>(activity_count));
    h.update_u64(class_count()).update_u64(transition_count());
    for (int a : activity)
        h.update_i64(a);
    for (auto o : offsets)
        h.update_u64(o);
    for (auto t : targets)
        h.update_u64(t);
    for (auto l : labels)
        h.update_i64(l);
    for (auto s : starts)
        h.update_u64(s);
    return h.value();
}

void ClassAutomaton::validate() const {
    const std::size_t n = class_count();
    if (offsets.size() != n + 1 || offsets.front() != 0 || offsets.back() != targets.size() ||
        labels.size() != targets.size())
        throw std::logic_error("automaton CSR arrays are inconsistent");
    if (starts.size() != static_cast<std::size_t>(activity_count))
        throw std::logic_error("one start class per activity index expected");
    for (std::size_t c = 0; c < n; ++c) {
        if (activity[c] < 0 || activity[c] >= activity_count)
            throw std::logic_error("activity index out of range");
        std::vector<std::int32_t> seen(labels.begin() + offsets[c], labels.begin() + offsets[c + 1]);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw std::logic_error("class " + std::to_string(c) + " has two successors for one label");
        for (auto t : successors(static_cast<ClassId>(c)))
            if (t >= n)
                throw std::logic_error("transition target out of range");
    }
    std::vector<char> reached(n, 0);
    std::vector<ClassId> queue;
    for (ClassId s : starts) {
        if (s >= n)
            throw std::logic_error("start class out of range");
        if (!reached[s]) {
            reached[s] = 1;
            queue.push_back(s);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head)
        for (ClassId t : successors(queue[head]))
            if (!reached[t]) {
                reached[t] = 1;
                queue.push_back(t);
            }
    if (queue.size() != n)
        throw std::logic_error(std::to_string(n - queue.size()) + " classes are unreachable");
}

ClassAutomaton minimize(const ClassAutomaton &a) {
    const std::size_t n = a.class_count();
    std::vector<std::uint32_t> block(n);
    std::size_t blocks = 0;
    {
        std::map<int, std::uint32_t> first;
        for (std::size_t c = 0; c < n; ++c) {
            auto [it, inserted] = first.emplace(a.activity[c], static_cast<std::uint32_t>(first.size()));
            block[c] = it->second;
        }
        blocks = first.size();
    }
    std::vector<std::uint32_t> signature;
    while (true) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
        std::vector<std::uint32_t> next(n);
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<std::pair<std::int32_t, std::uint32_t>> edges;
            for (std::uint32_t k = a.offsets[c]; k < a.offsets[c + 1]; ++k)
                edges.emplace_back(a.labels[k], block[a.targets[k]]);
            std::sort(edges.begin(), edges.end());
            signature.assign(1, block[c]);
            for (auto [l, b] : edges) {
                signature.push_back(static_cast<std::uint32_t>(l));
                signature.push_back(b);
            }
            auto [it, inserted] = ids.emplace(signature, static_cast<std::uint32_t>(ids.size()));
            next[c] = it->second;
        }
        block.swap(next);
        if (ids.size() == blocks)
            break;
        blocks = ids.size();
    }

    // Renumber blocks in BFS order from the start classes.
    std::vector<std::int64_t> renum(blocks, -1);
    std::vector<ClassId> representative;
    AutomatonBuilder builder(a.activity_count);
    auto intern = [&](ClassId c) {
        std::uint32_t b = block[c];
        if (renum[b] < 0) {
            renum[b] = static_cast<std::int64_t>(builder.add_class(a.activity[c]));
            representative.push_back(c);
        }
        return static_cast<ClassId>(renum[b]);
    };
    for (int act = 0; act < a.activity_count; ++act)
        builder.set_start(act, intern(a.starts[act]));
    for (std::size_t head = 0; head < representative.size(); ++head) {
        ClassId c = representative[head];
        for (std::uint32_t k = a.offsets[c]; k < a.offsets[c + 1]; ++k)
            builder.add_transition(static_cast<ClassId>(head), a.labels[k], intern(a.targets[k]));
    }
    return builder.finish();
}

AutomatonBuilder::AutomatonBuilder(int activity_count) {
    out_.activity_count = activity_count;
    out_.starts.assign(static_cast<std::size_t>(activity_count), 0);
}

ClassId AutomatonBuilder::add_class(int activity) {
    out_.activity.push_back(activity);
    return static_cast<ClassId>(out_.activity.size() - 1);
}

void AutomatonBuilder::close_until(ClassId c) {
    if (c < open_)
        throw std::logic_error("transitions must be added in class order");
    while (out_.offsets.size() <= c)
        out_.offsets.push_back(static_cast<std::uint32_t>(out_.targets.size()));
    open_ = c;
}

void AutomatonBuilder::add_transition(ClassId from, std::int32_t label, ClassId to) {
    close_until(from);
    out_.targets.push_back(to);
    out_.labels.push_back(label);
}

void AutomatonBuilder::set_start(int activity, ClassId c) { out_.starts.at(static_cast<std::size_t>(activity)) = c; }

ClassAutomaton AutomatonBuilder::finish() {
    close_until(static_cast<ClassId>(out_.activity.size()));
    return std::move(out_);
}

} // namespace walklll
