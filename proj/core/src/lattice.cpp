#include "walklll/lattice.hpp"

#include "walklll/hash.hpp"
#include "walklll/isp_oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>

namespace walklll {

const char *to_string(LatticeKind kind) {
    switch (kind) {
    case LatticeKind::Square:
        return "square";
    case LatticeKind::Cubic:
        return "cubic";
    case LatticeKind::Hexagonal:
        return "hexagonal";
    }
    return "?";
}

LatticeKind parse_lattice_kind(const std::string &name) {
    if (name == "square")
        return LatticeKind::Square;
    if (name == "cubic")
        return LatticeKind::Cubic;
    if (name == "hexagonal" || name == "hex")
        return LatticeKind::Hexagonal;
    throw std::invalid_argument("unknown lattice kind '" + name + "'");
}

LatticeSpec::LatticeSpec(LatticeKind kind) : kind_(kind) {}

std::vector<Site> LatticeSpec::neighbors(const Site &a) const {
    switch (kind_) {
    case LatticeKind::Square:
        return {{0, a.x + 1, a.y, 0}, {0, a.x - 1, a.y, 0}, {0, a.x, a.y + 1, 0}, {0, a.x, a.y - 1, 0}};
    case LatticeKind::Cubic:
        return {{0, a.x + 1, a.y, a.z}, {0, a.x - 1, a.y, a.z}, {0, a.x, a.y + 1, a.z},
                {0, a.x, a.y - 1, a.z}, {0, a.x, a.y, a.z + 1}, {0, a.x, a.y, a.z - 1}};
    case LatticeKind::Hexagonal:
        if (a.sub == 0)
            return {{1, a.x, a.y, 0}, {1, a.x - 1, a.y, 0}, {1, a.x, a.y - 1, 0}};
        return {{0, a.x, a.y, 0}, {0, a.x + 1, a.y, 0}, {0, a.x, a.y + 1, 0}};
    }
    return {};
}

bool LatticeSpec::less(const Site &a, const Site &b) const {
    return std::tie(a.sub, a.z, a.y, a.x) < std::tie(b.sub, b.z, b.y, b.x);
}

int LatticeSpec::direction(const Site &a, const Site &b) const {
    auto nb = neighbors(a);
    for (std::size_t d = 0; d < nb.size(); ++d)
        if (nb[d] == b)
            return static_cast<int>(d);
    return -1;
}

int LatticeSpec::distance(const Site &a, const Site &b) const {
    if (kind_ != LatticeKind::Hexagonal)
        return std::abs(a.x - b.x) + std::abs(a.y - b.y) + std::abs(a.z - b.z);
    if (a == b)
        return 0;
    std::set<Site> seen{a};
    std::vector<Site> frontier{a};
    for (int d = 1;; ++d) {
        std::vector<Site> next;
        for (const auto &s : frontier)
            for (const auto &t : neighbors(s)) {
                if (t == b)
                    return d;
                if (seen.insert(t).second)
                    next.push_back(t);
            }
        frontier.swap(next);
    }
}

FilterPattern::FilterPattern(const LatticeSpec &spec, std::vector<std::vector<Site>> sets, std::string name)
    : name_(std::move(name)) {
    auto by_order = [&spec](const Site &a, const Site &b) { return spec.less(a, b); };
    for (auto &set : sets) {
        if (set.empty())
            continue;
        for (const auto &s : set) {
            if (s.sub < 0 || s.sub >= spec.sublattices())
                throw std::invalid_argument("pattern site has an invalid sublattice index");
            if (spec.dimension() == 2 && s.z != 0)
                throw std::invalid_argument("planar pattern site with nonzero z");
        }
        std::sort(set.begin(), set.end(), by_order);
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.size() > 64)
            throw std::invalid_argument("pattern sets are limited to 64 sites");
        Site base = set.front();
        for (auto &s : set)
            s = spec.translate(s, -base.x, -base.y, -base.z);
        sets_.push_back(std::move(set));
    }
    std::sort(sets_.begin(), sets_.end());
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
}

std::uint64_t FilterPattern::hash() const {
    Fnv1a h;
    h.update("pattern").update_u64(sets_.size());
    for (const auto &set : sets_) {
        h.update_u64(set.size());
        for (const auto &s : set)
            h.update_i64(s.sub).update_i64(s.x).update_i64(s.y).update_i64(s.z);
    }
    return h.value();
}

int FilterPattern::diameter(const LatticeSpec &spec) const {
    int best = 0;
    for (const auto &set : sets_)
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j)
                best = std::max(best, spec.distance(set[i], set[j]));
    return best;
}

namespace {

Site origin(int sub) { return {sub, 0, 0, 0}; }

std::vector<Site> ball_sites(const LatticeSpec &spec, const Site &centre, int rho) {
    std::set<Site> seen{centre};
    std::vector<Site> frontier{centre};
    for (int r = 0; r < rho; ++r) {
        std::vector<Site> next;
        for (const auto &a : frontier)
            for (const auto &b : spec.neighbors(a))
                if (seen.insert(b).second)
                    next.push_back(b);
        frontier.swap(next);
    }
    return {seen.begin(), seen.end()};
}

} // namespace

FilterPattern pattern_none(const LatticeSpec &spec) { return FilterPattern(spec, {}, "none"); }

FilterPattern pattern_edges(const LatticeSpec &spec) {
    std::vector<std::vector<Site>> sets;
    for (int s = 0; s < spec.sublattices(); ++s)
        for (const auto &b : spec.neighbors(origin(s)))
            sets.push_back({origin(s), b});
    return FilterPattern(spec, std::move(sets), "edges");
}

FilterPattern pattern_neighborhoods(const LatticeSpec &spec) {
    FilterPattern p = pattern_ball(spec, 1);
    return FilterPattern(spec, p.sets(), "neighborhoods");
}

FilterPattern pattern_ball(const LatticeSpec &spec, int rho) {
    if (rho < 0)
        throw std::invalid_argument("ball radius must be nonnegative");
    std::vector<std::vector<Site>> sets;
    for (int s = 0; s < spec.sublattices(); ++s)
        sets.push_back(ball_sites(spec, origin(s), rho));
    return FilterPattern(spec, std::move(sets), "ball" + std::to_string(rho));
}

FilterPattern pattern_box(const LatticeSpec &spec, int side) {
    if (side < 1)
        throw std::invalid_argument("box side must be positive");
    std::vector<Site> set;
    const int zs = spec.dimension() == 3 ? side : 1;
    for (int z = 0; z < zs; ++z)
        for (int y = 0; y < side; ++y)
            for (int x = 0; x < side; ++x)
                for (int s = 0; s < spec.sublattices(); ++s)
                    set.push_back({s, x, y, z});
    return FilterPattern(spec, {set}, "box" + std::to_string(side));
}

FilterPattern pattern_headline(const LatticeSpec &spec) {
    switch (spec.kind()) {
    case LatticeKind::Square:
        return pattern_ball(spec, 3);
    case LatticeKind::Cubic:
        return pattern_box(spec, 3);
    case LatticeKind::Hexagonal:
        return pattern_ball(spec, 3);
    }
    return pattern_none(spec);
}

FilterPattern pattern_extended(const LatticeSpec &spec) {
    switch (spec.kind()) {
    case LatticeKind::Square:
        return pattern_ball(spec, 4);
    case LatticeKind::Cubic:
        return pattern_box(spec, 3);
    case LatticeKind::Hexagonal:
        return pattern_ball(spec, 4);
    }
    return pattern_none(spec);
}

FilterPattern pattern_preset(const LatticeSpec &spec, const std::string &name) {
    if (name == "none")
        return pattern_none(spec);
    if (name == "edges")
        return pattern_edges(spec);
    if (name == "neighborhoods")
        return pattern_neighborhoods(spec);
    if (name == "headline")
        return pattern_headline(spec);
    if (name == "extended")
        return pattern_extended(spec);
    std::smatch m;
    static const std::regex sized(R"((ball|box)(\d+))");
    if (std::regex_match(name, m, sized)) {
        int k = std::stoi(m[2].str());
        return m[1].str() == "ball" ? pattern_ball(spec, k) : pattern_box(spec, k);
    }
    throw std::invalid_argument("unknown pattern preset '" + name + "'");
}

std::pair<LatticeKind, FilterPattern> read_pattern(std::istream &in, const std::string &name) {
    static const std::regex token(R"(\((-?\d+),(-?\d+)(?:,(-?\d+))?\)(?::(\d+))?)");
    std::optional<LatticeKind> kind;
    std::vector<std::vector<Site>> sets;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                   line.end());
        if (line.empty() || line[0] == '#')
            continue;
        if (!kind) {
            if (line.rfind("lattice=", 0) != 0)
                throw PatternParseError("line " + std::to_string(line_no) + ": expected 'lattice=<kind>'");
            try {
                kind = parse_lattice_kind(line.substr(8));
            } catch (const std::invalid_argument &e) {
                throw PatternParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
            continue;
        }
        LatticeSpec spec(*kind);
        std::vector<Site> set;
        std::size_t covered = 0;
        for (auto it = std::sregex_iterator(line.begin(), line.end(), token); it != std::sregex_iterator(); ++it) {
            const auto &m = *it;
            if (static_cast<std::size_t>(m.position()) != covered)
                break;
            covered += static_cast<std::size_t>(m.length());
            bool has_z = m[3].matched;
            if (has_z != (spec.dimension() == 3))
                throw PatternParseError("line " + std::to_string(line_no) + ": wrong number of coordinates");
            Site s{m[4].matched ? std::stoi(m[4].str()) : 0, std::stoi(m[1].str()), std::stoi(m[2].str()),
                   has_z ? std::stoi(m[3].str()) : 0};
            if (s.sub >= spec.sublattices())
                throw PatternParseError("line " + std::to_string(line_no) + ": sublattice index out of range");
            set.push_back(s);
        }
        if (covered != line.size())
            throw PatternParseError("line " + std::to_string(line_no) + ": malformed site near '" +
                                    line.substr(covered, 16) + "'");
        sets.push_back(std::move(set));
    }
    if (!kind)
        throw PatternParseError("missing 'lattice=<kind>' header");
    LatticeSpec spec(*kind);
    return {*kind, FilterPattern(spec, std::move(sets), name)};
}

std::pair<LatticeKind, FilterPattern> read_pattern_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw PatternParseError("cannot open pattern file " + path);
    auto slash = path.find_last_of('/');
    return read_pattern(in, "file:" + (slash == std::string::npos ? path : path.substr(slash + 1)));
}

void write_pattern(std::ostream &out, const LatticeSpec &spec, const FilterPattern &pattern) {
    out << "lattice=" << to_string(spec.kind()) << '\n';
    for (const auto &set : pattern.sets()) {
        bool first = true;
        for (const auto &s : set) {
            out << (first ? "" : " ") << '(' << s.x << ',' << s.y;
            if (spec.dimension() == 3)
                out << ',' << s.z;
            out << ')';
            if (spec.sublattices() > 1)
                out << ':' << s.sub;
            first = false;
        }
        out << '\n';
    }
}

int default_window(const LatticeSpec &spec, const FilterPattern &pattern) { return pattern.diameter(spec) + 1; }

namespace {

// Pattern set compiled to bit masks over its own sites.
struct CompiledSet {
    std::vector<Site> sites;
    std::map<Site, int> index;
    std::vector<SubsetMask> adj;
    std::vector<std::vector<SubsetMask>> geq; // geq[j][u]: neighbors of j at or above u
    std::vector<SubsetMask> fresh;            // live region of the one-site walk at u
    std::vector<int> eccentricity;

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

    int find(const Site &s) const {
        auto it = index.find(s);
        return it == index.end() ? -1 : it->second;
    }
};

CompiledSet compile(const LatticeSpec &spec, const std::vector<Site> &sites) {
    CompiledSet c;
    c.sites = sites;
    const int m = static_cast<int>(sites.size());
    for (int i = 0; i < m; ++i)
        c.index.emplace(sites[i], i);
    c.adj.assign(m, 0);
    for (int i = 0; i < m; ++i)
        for (const auto &b : spec.neighbors(sites[i]))
            if (int j = c.find(b); j >= 0)
                c.adj[i] |= SubsetMask{1} << j;
    c.geq.assign(m, std::vector<SubsetMask>(m, 0));
    for (int j = 0; j < m; ++j)
        for (int u = 0; u < m; ++u)
            for (int k = 0; k < m; ++k)
                if ((c.adj[j] >> k & 1) && !spec.less(sites[k], sites[u]))
                    c.geq[j][u] |= SubsetMask{1} << k;
    const SubsetMask all = m == 64 ? ~SubsetMask{0} : (SubsetMask{1} << m) - 1;
    c.fresh.resize(m);
    c.eccentricity.assign(m, 0);
    for (int u = 0; u < m; ++u) {
        c.fresh[u] = c.flood(all, u);
        for (int v = 0; v < m; ++v)
            c.eccentricity[u] = std::max(c.eccentricity[u], spec.distance(sites[u], sites[v]));
    }
    return c;
}

// How a slot of the new terminal relates to the old terminal's slots.
constexpr int kStartFresh = -1; // old terminal not in this translate
constexpr int kOldUntracked = -2; // old terminal in it, but that slot is forgotten

struct Direction {
    int to_sub = 0;
    std::vector<int> cont;       // per slot of to_sub: old slot index or one of the codes above
    std::vector<int> old_anchor; // anchor of the old terminal in the set, when it lies in it
};

struct Compiled {
    std::vector<CompiledSet> sets;
    std::vector<std::vector<Direction>> dirs;
};

Compiled compile_all(const LatticeSpec &spec, const FilterPattern &pattern, int window,
                     std::vector<std::vector<TranslateSlot>> &slots) {
    Compiled out;
    for (const auto &set : pattern.sets())
        out.sets.push_back(compile(spec, set));
    slots.assign(static_cast<std::size_t>(spec.sublattices()), {});
    for (int s = 0; s < spec.sublattices(); ++s)
        for (int k = 0; k < static_cast<int>(out.sets.size()); ++k)
            for (int u = 0; u < static_cast<int>(out.sets[k].sites.size()); ++u)
                if (out.sets[k].sites[u].sub == s && out.sets[k].eccentricity[u] <= window)
                    slots[s].push_back({k, u});
    auto slot_of = [&](int s, int k, int u) {
        for (std::size_t q = 0; q < slots[s].size(); ++q)
            if (slots[s][q].set == k && slots[s][q].anchor == u)
                return static_cast<int>(q);
        return -1;
    };
    out.dirs.resize(static_cast<std::size_t>(spec.sublattices()));
    for (int s = 0; s < spec.sublattices(); ++s)
        for (const auto &b : spec.neighbors(origin(s))) {
            Direction d;
            d.to_sub = b.sub;
            for (const auto &slot : slots[b.sub]) {
                const auto &set = out.sets[slot.set];
                const Site &u = set.sites[slot.anchor];
                int j = set.find({s, u.x - b.x, u.y - b.y, u.z - b.z});
                d.old_anchor.push_back(j);
                if (j < 0)
                    d.cont.push_back(kStartFresh);
                else if (int q = slot_of(s, slot.set, j); q >= 0)
                    d.cont.push_back(q);
                else
                    d.cont.push_back(kOldUntracked);
            }
            out.dirs[s].push_back(std::move(d));
        }
    return out;
}

// Open-addressing index over the class arena.
class ClassIndex {
public:
    ClassIndex(const std::vector<SubsetMask> &arena, const std::vector<int> &subs, std::size_t stride)
        : arena_(arena), subs_(subs), stride_(stride), table_(1024, kEmpty) {}

    // Existing id, or kEmpty with the probe slot remembered for insert().
    std::uint32_t lookup(int sub, const SubsetMask *key) {
        std::size_t mask = table_.size() - 1;
        std::size_t h = hash(sub, key) & mask;
        while (table_[h] != kEmpty) {
            std::uint32_t id = table_[h];
            if (subs_[id] == sub && std::equal(key, key + stride_, arena_.data() + id * stride_))
                return id;
            h = (h + 1) & mask;
        }
        pending_ = h;
        return kEmpty;
    }

    // Registers id (already appended to the arena) at the remembered slot.
    void insert(std::uint32_t id) {
        table_[pending_] = id;
        if (++count_ * 2 > table_.size())
            rehash();
    }

    static constexpr std::uint32_t kEmpty = 0xffffffffu;

private:
    std::uint64_t hash(int sub, const SubsetMask *key) const {
        Fnv1a h;
        h.update_i64(sub);
        for (std::size_t i = 0; i < stride_; ++i)
            h.update_u64(key[i]);
        return h.value();
    }

    void rehash() {
        std::vector<std::uint32_t> old(table_.size() * 2, kEmpty);
        old.swap(table_);
        std::size_t mask = table_.size() - 1;
        for (std::uint32_t id : old) {
            if (id == kEmpty)
                continue;
            std::size_t h = hash(subs_[id], arena_.data() + id * stride_) & mask;
            while (table_[h] != kEmpty)
                h = (h + 1) & mask;
            table_[h] = id;
        }
    }

    const std::vector<SubsetMask> &arena_;
    const std::vector<int> &subs_;
    std::size_t stride_;
    std::vector<std::uint32_t> table_;
    std::size_t count_ = 0;
    std::size_t pending_ = 0;
};

} // namespace

LatticeAutomaton build_lattice_automaton(const LatticeSpec &spec, const FilterPattern &pattern, int window,
                                         std::size_t budget) {
    if (budget == 0)
        throw std::invalid_argument("class budget must be positive");
    LatticeAutomaton out;
    out.spec = spec;
    out.pattern = pattern;
    out.window = window < 0 ? default_window(spec, pattern) : window;
    Compiled comp = compile_all(spec, pattern, out.window, out.slots);
    for (const auto &s : out.slots)
        out.stride = std::max(out.stride, s.size());
    const std::size_t stride = out.stride;

    AutomatonBuilder builder(spec.sublattices());
    std::vector<int> subs;
    ClassIndex index(out.live, subs, stride);
    auto intern = [&](int sub, const SubsetMask *key) -> ClassId {
        std::uint32_t id = index.lookup(sub, key);
        if (id != ClassIndex::kEmpty)
            return id;
        if (subs.size() >= budget)
            throw StateBudgetExceeded(budget, subs.size());
        id = builder.add_class(sub);
        subs.push_back(sub);
        out.live.insert(out.live.end(), key, key + stride);
        index.insert(id);
        return id;
    };

    std::vector<SubsetMask> cur(stride), next(stride);
    for (int s = 0; s < spec.sublattices(); ++s) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t q = 0; q < out.slots[s].size(); ++q) {
            const auto &slot = out.slots[s][q];
            next[q] = comp.sets[slot.set].fresh[slot.anchor];
        }
        builder.set_start(s, intern(s, next.data()));
    }

    for (std::size_t c = 0; c < subs.size(); ++c) {
        const int s = subs[c];
        std::copy_n(out.live.begin() + static_cast<std::ptrdiff_t>(c * stride), stride, cur.begin());
        const auto &dirs = comp.dirs[s];
        for (std::size_t d = 0; d < dirs.size(); ++d) {
            const Direction &dir = dirs[d];
            const auto &to_slots = out.slots[dir.to_sub];
            std::fill(next.begin(), next.end(), 0);
            bool accepted = true;
            for (std::size_t q = 0; q < to_slots.size(); ++q) {
                const auto &set = comp.sets[to_slots[q].set];
                const int u = to_slots[q].anchor;
                const int code = dir.cont[q];
                if (code == kStartFresh) {
                    next[q] = set.fresh[u];
                    continue;
                }
                const int j = dir.old_anchor[q];
                SubsetMask live = code == kOldUntracked ? set.fresh[j] : cur[code];
                if (!(live >> u & 1)) {
                    accepted = false;
                    break;
                }
                next[q] = set.flood(live & ~set.geq[j][u], u);
            }
            if (!accepted)
                continue;
            ClassId target = intern(dir.to_sub, next.data());
            builder.add_transition(static_cast<ClassId>(c), static_cast<std::int32_t>(d), target);
        }
    }
    out.automaton = builder.finish();
    return out;
}

LatticeClassKey LatticeAutomaton::key(ClassId c) const {
    LatticeClassKey k;
    k.sub = automaton.activity.at(c);
    auto begin = live.begin() + static_cast<std::ptrdiff_t>(c * stride);
    k.live.assign(begin, begin + static_cast<std::ptrdiff_t>(slots[k.sub].size()));
    return k;
}

AbsoluteLatticeState LatticeAutomaton::absolute(ClassId c, const Site &terminal) const {
    LatticeClassKey k = key(c);
    if (terminal.sub != k.sub)
        throw std::invalid_argument("terminal site is on the wrong sublattice");
    AbsoluteLatticeState s;
    s.terminal = terminal;
    for (std::size_t q = 0; q < slots[k.sub].size(); ++q) {
        const auto &slot = slots[k.sub][q];
        const Site &u = pattern.sets()[slot.set][slot.anchor];
        s.entries.push_back({slot.set, {terminal.x - u.x, terminal.y - u.y, terminal.z - u.z}, k.live[q]});
    }
    return s;
}

LatticeClassKey LatticeAutomaton::canonicalize(const AbsoluteLatticeState &s) const {
    LatticeClassKey k;
    k.sub = s.terminal.sub;
    for (const auto &slot : slots.at(k.sub)) {
        const auto &set = pattern.sets()[slot.set];
        const Site &u = set[slot.anchor];
        std::array<int, 3> offset{s.terminal.x - u.x, s.terminal.y - u.y, s.terminal.z - u.z};
        auto it = std::find_if(s.entries.begin(), s.entries.end(),
                               [&](const auto &e) { return e.set == slot.set && e.offset == offset; });
        if (it != s.entries.end()) {
            k.live.push_back(it->live);
        } else {
            CompiledSet cs = compile(spec, set);
            k.live.push_back(cs.fresh[slot.anchor]);
        }
    }
    return k;
}

std::optional<ClassId> LatticeAutomaton::find(const LatticeClassKey &k) const {
    for (std::size_t c = 0; c < automaton.class_count(); ++c)
        if (automaton.activity[c] == k.sub && key(static_cast<ClassId>(c)) == k)
            return static_cast<ClassId>(c);
    return std::nullopt;
}

std::optional<ClassId> run_lattice_walk(const LatticeAutomaton &a, std::span<const Site> walk) {
    if (walk.empty())
        return std::nullopt;
    ClassId c = a.automaton.starts.at(static_cast<std::size_t>(walk[0].sub));
    for (std::size_t k = 1; k < walk.size(); ++k) {
        int d = a.spec.direction(walk[k - 1], walk[k]);
        if (d < 0)
            throw NotAWalk("lattice sites are not adjacent");
        auto next = a.automaton.step(c, d);
        if (!next)
            return std::nullopt;
        c = *next;
    }
    return c;
}

LatticePatch make_patch(const LatticeSpec &spec, int radius) {
    LatticePatch patch;
    patch.sites = ball_sites(spec, origin(0), radius);
    std::sort(patch.sites.begin(), patch.sites.end(),
              [&spec](const Site &a, const Site &b) { return spec.less(a, b); });
    std::map<Site, int> index;
    for (std::size_t i = 0; i < patch.sites.size(); ++i)
        index.emplace(patch.sites[i], static_cast<int>(i));
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < patch.sites.size(); ++i)
        for (const auto &b : spec.neighbors(patch.sites[i]))
            if (auto it = index.find(b); it != index.end() && it->second > static_cast<int>(i))
                edges.emplace_back(static_cast<int>(i), it->second);
    patch.graph = OrderedGraph::from_edges(static_cast<int>(patch.sites.size()), edges);
    return patch;
}

FilterFamily patch_filters(const LatticeSpec &spec, const FilterPattern &pattern, const LatticePatch &patch) {
    (void)spec;
    std::map<Site, int> index;
    for (std::size_t i = 0; i < patch.sites.size(); ++i)
        index.emplace(patch.sites[i], static_cast<int>(i));
    std::set<std::pair<int, std::array<int, 3>>> placements;
    for (int k = 0; k < static_cast<int>(pattern.sets().size()); ++k)
        for (const auto &u : pattern.sets()[k])
            for (const auto &v : patch.sites)
                if (u.sub == v.sub)
                    placements.insert({k, {v.x - u.x, v.y - u.y, v.z - u.z}});
    std::vector<VertexSet> filters;
    for (const auto &[k, off] : placements) {
        VertexSet s;
        for (const auto &u : pattern.sets()[k])
            if (auto it = index.find({u.sub, u.x + off[0], u.y + off[1], u.z + off[2]}); it != index.end())
                s.push_back(it->second);
        filters.push_back(std::move(s));
    }
    return FilterFamily(std::move(filters));
}

bool PatchCrosscheck::sound() const {
    if (self_bounding_rejected != 0 || unsound != 0)
        return false;
    if (lattice_bound > patch_pipeline_bound + 1e-6)
        return false;
    return !patch_lambda_exact || lattice_bound <= *patch_lambda_exact + 1e-9;
}

PatchCrosscheck finite_patch_crosscheck(const LatticeSpec &spec, const FilterPattern &pattern, int radius,
                                        int window, int max_steps, const SolverParams &params) {
    PatchCrosscheck out;
    LatticeAutomaton lat = build_lattice_automaton(spec, pattern, window);
    LatticePatch patch = make_patch(spec, radius);
    FilterFamily filters = patch_filters(spec, pattern, patch);
    out.vertices = patch.graph.size();

    auto to_sites = [&patch](std::span<const Vertex> walk) {
        std::vector<Site> sites;
        for (Vertex v : walk)
            sites.push_back(patch.sites[v]);
        return sites;
    };

    for (const auto &w : enumerate_self_bounding(patch.graph)) {
        ++out.self_bounding_walks;
        if (!run_lattice_walk(lat, to_sites(w.vertices)))
            ++out.self_bounding_rejected;
    }

    std::vector<Vertex> walk;
    auto visit = [&](auto &self) -> void {
        ++out.walks_checked;
        bool ref = is_walk_accepted(walk, patch.graph, filters);
        bool got = run_lattice_walk(lat, to_sites(walk)).has_value();
        if (ref && !got)
            ++out.unsound;
        if (got && !ref)
            ++out.loose;
        if (static_cast<int>(walk.size()) > max_steps)
            return;
        for (Vertex w : patch.graph.neighbors(walk.back())) {
            walk.push_back(w);
            self(self);
            walk.pop_back();
        }
    };
    for (Vertex v = 0; v < patch.graph.size(); ++v) {
        walk.assign(1, v);
        visit(visit);
    }

    if (patch.graph.size() <= kMembershipCap)
        out.patch_lambda_exact = critical_lambda_exact(patch.graph).lo;
    WalkAutomaton fin = build_class_automaton(patch.graph, filters);
    out.patch_pipeline_bound = lambda_lower_bound(fin.automaton, params).lambda;
    out.lattice_bound = lambda_lower_bound(lat.automaton, params).lambda;
    return out;
}

BoundReport compute_bound(const LatticeSpec &spec, const FilterPattern &pattern, int window, std::size_t budget,
                          const SolverParams &params, LatticeAutomaton *keep) {
    using clock = std::chrono::steady_clock;
    BoundReport report;
    report.kind = spec.kind();
    report.pattern = pattern.name();
    report.pattern_hash = pattern.hash();
    report.params = params;
    auto t0 = clock::now();
    LatticeAutomaton a = build_lattice_automaton(spec, pattern, window, budget);
    auto t1 = clock::now();
    report.window = a.window;
    report.classes = a.automaton.class_count();
    report.transitions = a.automaton.transition_count();
    report.fingerprint = a.automaton.fingerprint();
    report.bound = lambda_lower_bound(a.automaton, params);
    auto t2 = clock::now();
    report.build_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.solve_seconds = std::chrono::duration<double>(t2 - t1).count();
    if (keep)
        *keep = std::move(a);
    return report;
}

} // namespace walklll
