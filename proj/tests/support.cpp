#include "support.hpp"

#include "walklll/isp_oracle.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>

namespace walklll::testkit {

namespace {

using Pairs = std::vector<std::pair<int, int>>;

Pairs all_pairs(int n) {
    Pairs p;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            p.emplace_back(i, j);
    return p;
}

bool connected(int n, std::uint32_t edges, const Pairs &pairs) {
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int v) {
        while (comp[v] != v)
            v = comp[v] = comp[comp[v]];
        return v;
    };
    int parts = n;
    for (std::size_t k = 0; k < pairs.size(); ++k)
        if (edges >> k & 1) {
            int a = find(pairs[k].first), b = find(pairs[k].second);
            if (a != b) {
                comp[a] = b;
                --parts;
            }
        }
    return parts == 1;
}

std::vector<OrderedGraph> generate(int n) {
    Pairs pairs = all_pairs(n);
    std::map<std::pair<int, int>, int> index;
    for (std::size_t k = 0; k < pairs.size(); ++k)
        index[pairs[k]] = static_cast<int>(k);
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do
        perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::set<std::uint32_t> seen;
    std::vector<OrderedGraph> out;
    for (std::uint32_t e = 0; e < (1u << pairs.size()); ++e) {
        if (!connected(n, e, pairs))
            continue;
        std::uint32_t canon = ~0u;
        for (const auto &pm : perms) {
            std::uint32_t img = 0;
            for (std::size_t k = 0; k < pairs.size(); ++k)
                if (e >> k & 1) {
                    int a = pm[pairs[k].first], b = pm[pairs[k].second];
                    img |= 1u << index[{std::min(a, b), std::max(a, b)}];
                }
            canon = std::min(canon, img);
        }
        if (!seen.insert(canon).second)
            continue;
        Pairs edges;
        for (std::size_t k = 0; k < pairs.size(); ++k)
            if (canon >> k & 1)
                edges.push_back(pairs[k]);
        out.push_back(OrderedGraph::from_edges(n, edges));
    }
    return out;
}

} // namespace

const std::vector<OrderedGraph> &connected_graphs(int n) {
    static std::map<int, std::vector<OrderedGraph>> cache;
    if (n < 1 || n > 6)
        throw std::invalid_argument("connected_graphs: 1 <= n <= 6");
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, generate(n)).first;
    return it->second;
}

std::vector<OrderedGraph> connected_graphs_upto(int max_n) {
    std::vector<OrderedGraph> out;
    for (int n = 1; n <= max_n; ++n)
        for (const auto &g : connected_graphs(n))
            out.push_back(g);
    return out;
}

OrderedGraph random_graph(std::mt19937_64 &rng, int n, double q) {
    std::bernoulli_distribution coin(q);
    Pairs edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng))
                edges.emplace_back(i, j);
    return OrderedGraph::from_edges(n, edges);
}

OrderedGraph random_connected_graph(std::mt19937_64 &rng, int n, double q) {
    std::set<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        edges.insert({parent(rng), v});
    }
    std::bernoulli_distribution coin(q);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng))
                edges.insert({i, j});
    // shuffle labels so the tree is not aligned with the vertex order
    std::vector<int> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::shuffle(relabel.begin(), relabel.end(), rng);
    Pairs out;
    for (auto [a, b] : edges)
        out.emplace_back(std::min(relabel[a], relabel[b]), std::max(relabel[a], relabel[b]));
    return OrderedGraph::from_edges(n, out);
}

std::vector<double> random_activities(std::mt19937_64 &rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> p(n);
    for (auto &v : p)
        v = u(rng);
    return p;
}

FilterFamily preset_filters(const OrderedGraph &g, const std::string &name, std::mt19937_64 &rng) {
    if (name == "none")
        return filters_none();
    if (name == "edges")
        return filters_edges(g);
    if (name == "neighborhoods")
        return filters_neighborhoods(g);
    if (name == "full")
        return filters_full(g);
    if (name == "random")
        return filters_random(g, rng, std::max(1, g.size()), std::min(g.size(), 4));
    throw std::invalid_argument("unknown preset " + name);
}

std::vector<Vertex> random_walk(std::mt19937_64 &rng, const OrderedGraph &g, int steps) {
    std::uniform_int_distribution<int> start(0, g.size() - 1);
    std::vector<Vertex> w{start(rng)};
    for (int k = 0; k < steps; ++k) {
        const auto &nb = g.neighbors(w.back());
        if (nb.empty())
            break;
        std::uniform_int_distribution<std::size_t> pick(0, nb.size() - 1);
        w.push_back(nb[pick(rng)]);
    }
    return w;
}

double critical_scale(const OrderedGraph &g, const std::vector<double> &dir, double tol) {
    double top = 1.0 / *std::max_element(dir.begin(), dir.end());
    auto member = [&](double s) {
        std::vector<double> p(dir);
        for (auto &v : p)
            v = std::min(v * s, std::nextafter(1.0, 0.0));
        return shearer_membership_exact(g, p).member;
    };
    double lo = 0.0, hi = top;
    if (member(hi))
        return hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (member(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::string temp_path(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "walklll-tests";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

} // namespace walklll::testkit
