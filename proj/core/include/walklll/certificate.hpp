#pragma once

// Serialized certificates: a header identifying the automaton (content
// hashes, embedded filters or lattice pattern, activities) followed by one
// `class_id r` line per class. Verification rebuilds the automaton from the
// header, compares fingerprints and re-runs the certificate check.

#include "walklll/lattice.hpp"
#include "walklll/solver.hpp"
#include "walklll/walks.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace walklll {

class CertificateFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The certificate does not belong to the graph, filters or pattern given.
class HashMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Certificate {
    enum class Source { Graph, Lattice };
    Source source = Source::Graph;

    // graph certificates
    std::uint64_t graph_hash = 0;
    std::uint64_t filter_hash = 0;
    std::vector<VertexSet> filters;

    // lattice certificates
    LatticeKind kind = LatticeKind::Square;
    int window = 0;
    std::uint64_t pattern_hash = 0;
    std::string pattern_name;
    std::vector<std::vector<Site>> pattern_sets;

    std::vector<double> activities;
    std::optional<double> lambda;
    std::size_t classes = 0;
    std::uint64_t fingerprint = 0;
    FixedPointAssignment r;
};

Certificate make_graph_certificate(const OrderedGraph &g, const WalkAutomaton &a, std::span<const double> p,
                                   const FixedPointAssignment &r, std::optional<double> lambda = std::nullopt);
Certificate make_lattice_certificate(const LatticeAutomaton &a, std::span<const double> p,
                                     const FixedPointAssignment &r, std::optional<double> lambda = std::nullopt);

void write_certificate(std::ostream &out, const Certificate &c);
void write_certificate_file(const std::string &path, const Certificate &c);
Certificate read_certificate(std::istream &in);
Certificate read_certificate_file(const std::string &path);

struct CertificateCheck {
    bool valid = false;
    std::optional<bool> exact_valid; ///< set when the exact re-check was requested
    std::size_t classes = 0;
};

/// Throws HashMismatch if g or the rebuilt automaton differ from the header.
CertificateCheck verify_graph_certificate(const Certificate &c, const OrderedGraph &g, bool exact = false);
/// Rebuilds the lattice automaton from the embedded pattern.
CertificateCheck verify_lattice_certificate(const Certificate &c, bool exact = false);
CertificateCheck verify_certificate(const Certificate &c, const OrderedGraph *g, bool exact = false);

} // namespace walklll
