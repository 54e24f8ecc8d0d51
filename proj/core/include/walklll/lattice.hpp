#pragma once

// Translation-quotiented class automata on the square, cubic and hexagonal
// lattices. A class is the sublattice of the terminal plus, for every filter
// translate containing the terminal, the live region of that filter (as in
// the finite-graph construction). Everything is expressed relative to the
// terminal, so two walks ending at different sites share a class whenever
// their suffix states agree up to translation.

#include "walklll/automaton.hpp"
#include "walklll/graph.hpp"
#include "walklll/solver.hpp"
#include "walklll/walks.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace walklll {

enum class LatticeKind { Square, Cubic, Hexagonal };

const char *to_string(LatticeKind kind);
/// Accepts "square", "cubic", "hexagonal" (also "hex").
LatticeKind parse_lattice_kind(const std::string &name);

struct Site {
    int sub = 0;
    int x = 0, y = 0, z = 0;

    bool operator==(const Site &) const = default;
    auto operator<=>(const Site &) const = default;
};

/// Neighbor structure and the translation-invariant site order.
///
/// Square and cubic lattices have one site per cell. The hexagonal lattice
/// is a brick wall with two sites per cell: A(x,y) is adjacent to B(x,y),
/// B(x-1,y) and B(x,y-1).
class LatticeSpec {
public:
    explicit LatticeSpec(LatticeKind kind);

    LatticeKind kind() const { return kind_; }
    int sublattices() const { return kind_ == LatticeKind::Hexagonal ? 2 : 1; }
    int dimension() const { return kind_ == LatticeKind::Cubic ? 3 : 2; }
    int degree() const { return kind_ == LatticeKind::Square ? 4 : kind_ == LatticeKind::Cubic ? 6 : 3; }

    /// Neighbors in a fixed direction order; the index is the step label.
    std::vector<Site> neighbors(const Site &s) const;
    /// Lexicographic on (sublattice, z, y, x).
    bool less(const Site &a, const Site &b) const;
    Site translate(const Site &s, int dx, int dy, int dz) const { return {s.sub, s.x + dx, s.y + dy, s.z + dz}; }
    /// Direction label of the step a -> b, or -1 if not adjacent.
    int direction(const Site &a, const Site &b) const;
    /// Graph distance (breadth-first search).
    int distance(const Site &a, const Site &b) const;

private:
    LatticeKind kind_;
};

/// Finite family of site sets; the effective filter family is every lattice
/// translate of every set. Sets are stored normalized: sorted by the site
/// order, translated so the smallest site lies in cell (0,0,0), duplicates
/// (up to translation) removed.
class FilterPattern {
public:
    FilterPattern() = default;
    FilterPattern(const LatticeSpec &spec, std::vector<std::vector<Site>> sets, std::string name);

    const std::vector<std::vector<Site>> &sets() const { return sets_; }
    const std::string &name() const { return name_; }
    std::uint64_t hash() const;
    /// Largest distance between a site of a set and any other site of it.
    int diameter(const LatticeSpec &spec) const;

private:
    std::vector<std::vector<Site>> sets_;
    std::string name_;
};

FilterPattern pattern_none(const LatticeSpec &spec);
FilterPattern pattern_edges(const LatticeSpec &spec);
/// Inclusive neighborhoods (ball of radius 1).
FilterPattern pattern_neighborhoods(const LatticeSpec &spec);
/// Ball of graph radius rho around a site of each sublattice.
FilterPattern pattern_ball(const LatticeSpec &spec, int rho);
/// side^d block of cells.
FilterPattern pattern_box(const LatticeSpec &spec, int side);
/// Default pattern for headline bounds: square ball 3, cubic 3x3x3 box,
/// hexagonal ball 3.
FilterPattern pattern_headline(const LatticeSpec &spec);
/// Larger patterns: square ball 4, cubic 3x3x3 box, hexagonal ball 4.
FilterPattern pattern_extended(const LatticeSpec &spec);
/// none | edges | neighborhoods | headline | extended | ball<r> | box<s>
FilterPattern pattern_preset(const LatticeSpec &spec, const std::string &name);

class PatternParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// `lattice=<kind>` header, then one set per line of `(dx,dy[,dz])[:sub]`
/// tokens. Lines starting with '#' are ignored.
std::pair<LatticeKind, FilterPattern> read_pattern(std::istream &in, const std::string &name = "file");
std::pair<LatticeKind, FilterPattern> read_pattern_file(const std::string &path);
void write_pattern(std::ostream &out, const LatticeSpec &spec, const FilterPattern &pattern);

/// Window that forgets nothing for the given pattern (diameter + 1).
int default_window(const LatticeSpec &spec, const FilterPattern &pattern);

/// A filter translate that contains a site of sublattice s: pattern set
/// `set` placed so that its site `anchor` sits on the terminal.
struct TranslateSlot {
    int set = 0;
    int anchor = 0;
};

/// Canonical class key: sublattice of the terminal and one live mask per
/// tracked slot of that sublattice (in slot order).
struct LatticeClassKey {
    int sub = 0;
    std::vector<SubsetMask> live;

    bool operator==(const LatticeClassKey &) const = default;
};

/// A class state in absolute coordinates: terminal site and the live masks
/// of the translates it lies in, each identified by its cell offset.
struct AbsoluteLatticeState {
    struct Entry {
        int set = 0;
        std::array<int, 3> offset{}; ///< cell translation of the pattern set
        SubsetMask live = 0;
    };
    Site terminal;
    std::vector<Entry> entries;
};

struct LatticeAutomaton {
    LatticeSpec spec{LatticeKind::Square};
    FilterPattern pattern;
    int window = 0;
    /// slots[s]: translates containing a sublattice-s terminal whose sites
    /// all lie within `window` of it. Others are never tracked.
    std::vector<std::vector<TranslateSlot>> slots;
    ClassAutomaton automaton; ///< activity = sublattice, label = direction
    /// Live masks of every class, `stride` words each (unused words zero).
    std::vector<SubsetMask> live;
    std::size_t stride = 0;

    LatticeClassKey key(ClassId c) const;
    AbsoluteLatticeState absolute(ClassId c, const Site &terminal) const;
    /// Translates an absolute state back to a class key. Untracked
    /// translates are ignored; tracked ones missing from the state get
    /// their fresh (one-vertex) value.
    LatticeClassKey canonicalize(const AbsoluteLatticeState &s) const;
    std::optional<ClassId> find(const LatticeClassKey &k) const;
};

/// Breadth-first construction from the one-site classes.
/// `window` < 0 selects default_window. Throws StateBudgetExceeded.
LatticeAutomaton build_lattice_automaton(const LatticeSpec &spec, const FilterPattern &pattern, int window = -1,
                                         std::size_t budget = 2'000'000);

/// The class reached by a lattice walk, or nothing if it is rejected.
std::optional<ClassId> run_lattice_walk(const LatticeAutomaton &a, std::span<const Site> walk);

/// Ball of the given radius around the origin site of sublattice 0, as an
/// ordered graph whose vertex order is the lattice order.
struct LatticePatch {
    OrderedGraph graph;
    std::vector<Site> sites;
};
LatticePatch make_patch(const LatticeSpec &spec, int radius);

/// Every translate of the pattern, intersected with the patch (nonempty
/// intersections only).
FilterFamily patch_filters(const LatticeSpec &spec, const FilterPattern &pattern, const LatticePatch &patch);

struct PatchCrosscheck {
    int vertices = 0;
    std::size_t self_bounding_walks = 0;
    std::size_t self_bounding_rejected = 0; ///< must be 0
    std::size_t walks_checked = 0;
    std::size_t unsound = 0;       ///< reference accepts, automaton rejects; must be 0
    std::size_t loose = 0;         ///< automaton accepts, reference rejects; 0 without forgetting
    std::optional<double> patch_lambda_exact;
    double patch_pipeline_bound = 0.0;
    double lattice_bound = 0.0;

    bool sound() const;
};

/// Compares the lattice automaton with the finite-graph pipeline on a
/// patch: B(patch) must be accepted, acceptance of all walks with at most
/// `max_steps` steps inside the patch is compared with the reference
/// checker, and the lattice bound must not exceed the patch bounds.
PatchCrosscheck finite_patch_crosscheck(const LatticeSpec &spec, const FilterPattern &pattern, int radius,
                                        int window = -1, int max_steps = 6, const SolverParams &params = {});

struct BoundReport {
    LatticeKind kind = LatticeKind::Square;
    std::string pattern;
    std::uint64_t pattern_hash = 0;
    int window = 0;
    std::size_t classes = 0;
    std::size_t transitions = 0;
    std::uint64_t fingerprint = 0;
    LambdaBound bound;
    SolverParams params;
    double build_seconds = 0.0;
    double solve_seconds = 0.0;
};

BoundReport compute_bound(const LatticeSpec &spec, const FilterPattern &pattern, int window, std::size_t budget,
                          const SolverParams &params, LatticeAutomaton *keep = nullptr);

} // namespace walklll
