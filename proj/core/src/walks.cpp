#include "walklll/walks.hpp"

#include "walklll/hash.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <ostream>

namespace walklll {

SelfBoundingState start_state(Vertex v) { return {v, SubsetMask{1} << v}; }

std::optional<SelfBoundingState> extend(const OrderedGraph &g, const SelfBoundingState &s, Vertex next) {
    if (s.forbidden & (SubsetMask{1} << next))
        return std::nullopt;
    if (!g.adjacent(s.terminal, next))
        return std::nullopt;
    SubsetMask at_or_above = ~((SubsetMask{1} << next) - 1);
    return SelfBoundingState{next, s.forbidden | (g.neighbor_mask(s.terminal) & at_or_above)};
}

std::vector<SelfBoundingWalk> enumerate_self_bounding(const OrderedGraph &g, std::size_t cap) {
    if (g.size() > 64)
        throw GraphError("self-bounding enumeration needs at most 64 vertices");
    std::vector<SubsetMask> nbr(static_cast<std::size_t>(g.size()));
    for (Vertex v = 0; v < g.size(); ++v)
        nbr[v] = g.neighbor_mask(v);

    std::vector<SelfBoundingWalk> out;
    std::vector<Vertex> path;
    auto dfs = [&](auto &self, SelfBoundingState s) -> void {
        if (out.size() >= cap)
            throw StateBudgetExceeded(cap, out.size());
        out.push_back({path, s});
        SubsetMask options = nbr[s.terminal] & ~s.forbidden;
        while (options) {
            Vertex j = std::countr_zero(options);
            options &= options - 1;
            SubsetMask at_or_above = ~((SubsetMask{1} << j) - 1);
            path.push_back(j);
            self(self, SelfBoundingState{j, s.forbidden | (nbr[s.terminal] & at_or_above)});
            path.pop_back();
        }
    };
    for (Vertex v = 0; v < g.size(); ++v) {
        path.assign(1, v);
        dfs(dfs, start_state(v));
    }
    return out;
}

std::optional<SelfBoundingState> replay_self_bounding(const OrderedGraph &g, std::span<const Vertex> walk) {
    if (walk.empty())
        return std::nullopt;
    SelfBoundingState s = start_state(walk[0]);
    for (std::size_t k = 1; k < walk.size(); ++k) {
        auto next = extend(g, s, walk[k]);
        if (!next)
            return std::nullopt;
        s = *next;
    }
    return s;
}

FilterFamily::FilterFamily(std::vector<VertexSet> filters) {
    for (auto &f : filters) {
        f = normalize_vertex_set(std::move(f));
        if (f.empty())
            continue;
        if (std::find(filters_.begin(), filters_.end(), f) != filters_.end())
            continue;
        filters_.push_back(std::move(f));
    }
}

std::uint64_t FilterFamily::hash() const {
    Fnv1a h;
    h.update("filters").update_u64(filters_.size());
    for (const auto &f : filters_) {
        h.update_u64(f.size());
        for (Vertex v : f)
            h.update_i64(v);
    }
    return h.value();
}

FilterFamily filters_none() { return {}; }

FilterFamily filters_edges(const OrderedGraph &g) {
    std::vector<VertexSet> out;
    for (auto [u, v] : g.edges())
        out.push_back({u, v});
    return FilterFamily(std::move(out));
}

FilterFamily filters_neighborhoods(const OrderedGraph &g) {
    std::vector<VertexSet> out;
    for (Vertex v = 0; v < g.size(); ++v) {
        VertexSet s = g.neighbors(v);
        s.push_back(v);
        out.push_back(std::move(s));
    }
    return FilterFamily(std::move(out));
}

FilterFamily filters_full(const OrderedGraph &g) {
    VertexSet all(static_cast<std::size_t>(g.size()));
    for (Vertex v = 0; v < g.size(); ++v)
        all[v] = v;
    return FilterFamily({all});
}

FilterFamily filters_random(const OrderedGraph &g, std::mt19937_64 &rng, int count, int max_size) {
    std::vector<VertexSet> out;
    if (g.size() == 0)
        return {};
    std::uniform_int_distribution<int> pick_vertex(0, g.size() - 1);
    std::uniform_int_distribution<int> pick_size(1, std::max(1, max_size));
    for (int k = 0; k < count; ++k) {
        int target = pick_size(rng);
        VertexSet s{pick_vertex(rng)};
        std::vector<Vertex> frontier;
        while (static_cast<int>(s.size()) < target) {
            frontier.clear();
            for (Vertex v : s)
                for (Vertex w : g.neighbors(v))
                    if (std::find(s.begin(), s.end(), w) == s.end())
                        frontier.push_back(w);
            if (frontier.empty())
                break;
            std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
            s.push_back(frontier[pick(rng)]);
        }
        out.push_back(std::move(s));
    }
    return FilterFamily(std::move(out));
}

bool is_walk_accepted(std::span<const Vertex> walk, const OrderedGraph &g, const FilterFamily &filters) {
    for (std::size_t k = 0; k < walk.size(); ++k) {
        if (walk[k] < 0 || walk[k] >= g.size())
            throw NotAWalk("vertex out of range");
        if (k > 0 && !g.adjacent(walk[k - 1], walk[k]))
            throw NotAWalk("consecutive vertices " + std::to_string(walk[k - 1]) + ", " +
                           std::to_string(walk[k]) + " are not adjacent");
    }
    for (const auto &filter : filters.filters()) {
        auto sub = induced_subgraph(g, filter);
        std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
        for (std::size_t k = 0; k < sub.to_parent.size(); ++k)
            local[sub.to_parent[k]] = static_cast<int>(k);
        for (std::size_t begin = 0; begin < walk.size(); ++begin) {
            std::vector<Vertex> piece;
            for (std::size_t end = begin; end < walk.size() && local[walk[end]] >= 0; ++end) {
                piece.push_back(local[walk[end]]);
                if (!replay_self_bounding(sub.graph, piece))
                    return false;
            }
        }
    }
    return true;
}

std::string WalkClass::encode() const {
    std::string out;
    auto put = [&out](std::uint64_t v, int bytes) {
        for (int i = bytes - 1; i >= 0; --i)
            out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
    };
    put(static_cast<std::uint64_t>(terminal), 4);
    for (const auto &s : states) {
        put(static_cast<std::uint64_t>(s.filter), 4);
        put(s.live, 8);
    }
    return out;
}

namespace {

struct LocalFilter {
    VertexSet vertices;
    std::vector<int> local; // global -> local index or -1
    std::vector<SubsetMask> adj;

    SubsetMask flood(SubsetMask region, int start) const {
        SubsetMask comp = SubsetMask{1} << start;
        SubsetMask frontier = comp;
        region |= comp;
        while (frontier) {
            SubsetMask next = 0;
            for (SubsetMask f = frontier; f; f &= f - 1)
                next |= adj[std::countr_zero(f)];
            next &= region & ~comp;
            comp |= next;
            frontier = next;
        }
        return comp & ~(SubsetMask{1} << start);
    }

    SubsetMask all() const {
        return vertices.size() == 64 ? ~SubsetMask{0} : (SubsetMask{1} << vertices.size()) - 1;
    }
};

} // namespace

WalkAutomaton build_class_automaton(const OrderedGraph &g, const FilterFamily &filters, std::size_t budget) {
    const int n = g.size();
    std::vector<LocalFilter> local;
    std::vector<std::vector<int>> filters_at(static_cast<std::size_t>(n));
    for (std::size_t f = 0; f < filters.size(); ++f) {
        const auto &vs = filters.filters()[f];
        if (vs.size() > 64)
            throw GraphError("filter " + std::to_string(f) + " has more than 64 vertices");
        LocalFilter lf;
        lf.vertices = vs;
        lf.local.assign(static_cast<std::size_t>(n), -1);
        for (std::size_t k = 0; k < vs.size(); ++k) {
            if (vs[k] < 0 || vs[k] >= n)
                throw GraphError("filter vertex out of range");
            lf.local[vs[k]] = static_cast<int>(k);
            filters_at[vs[k]].push_back(static_cast<int>(f));
        }
        lf.adj.assign(vs.size(), 0);
        for (std::size_t k = 0; k < vs.size(); ++k)
            for (Vertex w : g.neighbors(vs[k]))
                if (lf.local[w] >= 0)
                    lf.adj[k] |= SubsetMask{1} << lf.local[w];
        local.push_back(std::move(lf));
    }

    WalkAutomaton out;
    out.filters = filters;
    std::map<WalkClass, ClassId> index;
    AutomatonBuilder builder(n);
    auto intern = [&](WalkClass &&c) -> ClassId {
        if (auto it = index.find(c); it != index.end())
            return it->second;
        if (out.classes.size() >= budget)
            throw StateBudgetExceeded(budget, out.classes.size());
        ClassId id = builder.add_class(c.terminal);
        index.emplace(c, id);
        out.classes.push_back(std::move(c));
        return id;
    };
    auto fresh = [&](int f, Vertex v) {
        const auto &lf = local[f];
        int u = lf.local[v];
        return FilterState{f, lf.flood(lf.all(), u)};
    };

    for (Vertex v = 0; v < n; ++v) {
        WalkClass c{v, {}};
        for (int f : filters_at[v])
            c.states.push_back(fresh(f, v));
        builder.set_start(v, intern(std::move(c)));
    }

    for (std::size_t head = 0; head < out.classes.size(); ++head) {
        const Vertex t = out.classes[head].terminal;
        for (Vertex x : g.neighbors(t)) {
            // copy: interning may reallocate out.classes
            const std::vector<FilterState> current = out.classes[head].states;
            WalkClass next{x, {}};
            bool accepted = true;
            std::size_t cursor = 0;
            for (int f : filters_at[x]) {
                const auto &lf = local[f];
                while (cursor < current.size() && current[cursor].filter < f)
                    ++cursor;
                if (cursor < current.size() && current[cursor].filter == f) {
                    int lt = lf.local[t];
                    int lx = lf.local[x];
                    SubsetMask live = current[cursor].live;
                    if (!(live & (SubsetMask{1} << lx))) {
                        accepted = false;
                        break;
                    }
                    SubsetMask at_or_above = ~((SubsetMask{1} << lx) - 1);
                    SubsetMask region = live & ~(lf.adj[lt] & at_or_above);
                    next.states.push_back({f, lf.flood(region, lx)});
                } else {
                    next.states.push_back(fresh(f, x));
                }
            }
            if (!accepted)
                continue;
            ClassId target = intern(std::move(next));
            builder.add_transition(static_cast<ClassId>(head), x, target);
        }
    }
    out.automaton = builder.finish();
    return out;
}

std::optional<ClassId> run_walk(const WalkAutomaton &a, std::span<const Vertex> walk) {
    if (walk.empty())
        return std::nullopt;
    if (walk[0] < 0 || static_cast<std::size_t>(walk[0]) >= a.automaton.starts.size())
        return std::nullopt;
    ClassId c = a.automaton.starts[walk[0]];
    for (std::size_t k = 1; k < walk.size(); ++k) {
        auto next = a.automaton.step(c, walk[k]);
        if (!next)
            return std::nullopt;
        c = *next;
    }
    return c;
}

void dump_automaton(std::ostream &out, const WalkAutomaton &a) {
    const auto &au = a.automaton;
    for (std::size_t c = 0; c < au.class_count(); ++c) {
        out << c << ' ' << (a.classes[c].terminal + 1) << " |";
        for (const auto &s : a.classes[c].states) {
            out << ' ' << s.filter << ':';
            const auto &f = a.filters.filters()[s.filter];
            bool first = true;
            for (Vertex v : from_mask(s.live)) {
                out << (first ? "" : ",") << (f[v] + 1);
                first = false;
            }
            if (first)
                out << '-';
        }
        out << " |";
        for (std::uint32_t k = au.offsets[c]; k < au.offsets[c + 1]; ++k)
            out << ' ' << (au.labels[k] + 1) << "->" << au.targets[k];
        out << '\n';
    }
}

} // namespace walklll
