#include "walklll/certificate.hpp"

#include "walklll/hash.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace walklll {

namespace {

constexpr const char *kMagic = "walklll-certificate 1";

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t parse_hex(const std::string &s) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used, 16);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw CertificateFormatError("bad hex value '" + s + "'");
    return v;
}

double parse_double(const std::string &s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw CertificateFormatError("bad number '" + s + "'");
    return v;
}

} // namespace

Certificate make_graph_certificate(const OrderedGraph &g, const WalkAutomaton &a, std::span<const double> p,
                                   const FixedPointAssignment &r, std::optional<double> lambda) {
    Certificate c;
    c.source = Certificate::Source::Graph;
    c.graph_hash = graph_hash(g);
    c.filter_hash = a.filters.hash();
    c.filters = a.filters.filters();
    c.activities.assign(p.begin(), p.end());
    c.lambda = lambda;
    c.classes = a.automaton.class_count();
    c.fingerprint = a.automaton.fingerprint();
    c.r = r;
    return c;
}

Certificate make_lattice_certificate(const LatticeAutomaton &a, std::span<const double> p,
                                     const FixedPointAssignment &r, std::optional<double> lambda) {
    Certificate c;
    c.source = Certificate::Source::Lattice;
    c.kind = a.spec.kind();
    c.window = a.window;
    c.pattern_hash = a.pattern.hash();
    c.pattern_name = a.pattern.name();
    c.pattern_sets = a.pattern.sets();
    c.activities.assign(p.begin(), p.end());
    c.lambda = lambda;
    c.classes = a.automaton.class_count();
    c.fingerprint = a.automaton.fingerprint();
    c.r = r;
    return c;
}

void write_certificate(std::ostream &out, const Certificate &c) {
    out << kMagic << '\n';
    if (c.source == Certificate::Source::Graph) {
        out << "source graph\n";
        out << "graph_hash " << to_hex64(c.graph_hash) << '\n';
        out << "filter_hash " << to_hex64(c.filter_hash) << '\n';
        for (const auto &f : c.filters) {
            out << "filter";
            for (Vertex v : f)
                out << ' ' << (v + 1);
            out << '\n';
        }
    } else {
        LatticeSpec spec(c.kind);
        out << "source lattice\n";
        out << "lattice " << to_string(c.kind) << '\n';
        out << "window " << c.window << '\n';
        out << "pattern_name " << c.pattern_name << '\n';
        out << "pattern_hash " << to_hex64(c.pattern_hash) << '\n';
        std::ostringstream sets;
        write_pattern(sets, spec, FilterPattern(spec, c.pattern_sets, c.pattern_name));
        std::istringstream lines(sets.str());
        std::string line;
        std::getline(lines, line); // header
        while (std::getline(lines, line))
            out << "pattern " << line << '\n';
    }
    out << "activities";
    for (double v : c.activities)
        out << ' ' << fmt_double(v);
    out << '\n';
    if (c.lambda)
        out << "lambda " << fmt_double(*c.lambda) << '\n';
    out << "classes " << c.classes << '\n';
    out << "fingerprint " << to_hex64(c.fingerprint) << '\n';
    out << "end\n";
    for (std::size_t k = 0; k < c.r.size(); ++k)
        out << k << ' ' << fmt_double(c.r[k]) << '\n';
}

void write_certificate_file(const std::string &path, const Certificate &c) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write certificate " + path);
    write_certificate(out, c);
    if (!out)
        throw std::runtime_error("error writing certificate " + path);
}

Certificate read_certificate(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != kMagic)
        throw CertificateFormatError("not a certificate (bad first line)");
    Certificate c;
    bool have_source = false, have_classes = false, have_fp = false, have_act = false;
    std::vector<std::string> pattern_lines;
    while (true) {
        if (!std::getline(in, line))
            throw CertificateFormatError("header not terminated by 'end'");
        if (line == "end")
            break;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string rest;
        std::getline(ls >> std::ws, rest);
        std::istringstream vs(rest);
        if (key == "source") {
            if (rest == "graph")
                c.source = Certificate::Source::Graph;
            else if (rest == "lattice")
                c.source = Certificate::Source::Lattice;
            else
                throw CertificateFormatError("unknown source '" + rest + "'");
            have_source = true;
        } else if (key == "graph_hash") {
            c.graph_hash = parse_hex(rest);
        } else if (key == "filter_hash") {
            c.filter_hash = parse_hex(rest);
        } else if (key == "filter") {
            VertexSet f;
            int v;
            while (vs >> v)
                f.push_back(v - 1);
            if (!vs.eof())
                throw CertificateFormatError("bad filter line");
            c.filters.push_back(std::move(f));
        } else if (key == "lattice") {
            try {
                c.kind = parse_lattice_kind(rest);
            } catch (const std::invalid_argument &e) {
                throw CertificateFormatError(e.what());
            }
        } else if (key == "window") {
            c.window = static_cast<int>(parse_double(rest));
        } else if (key == "pattern_name") {
            c.pattern_name = rest;
        } else if (key == "pattern_hash") {
            c.pattern_hash = parse_hex(rest);
        } else if (key == "pattern") {
            pattern_lines.push_back(rest);
        } else if (key == "activities") {
            std::string tok;
            while (vs >> tok)
                c.activities.push_back(parse_double(tok));
            have_act = true;
        } else if (key == "lambda") {
            c.lambda = parse_double(rest);
        } else if (key == "classes") {
            c.classes = static_cast<std::size_t>(parse_double(rest));
            have_classes = true;
        } else if (key == "fingerprint") {
            c.fingerprint = parse_hex(rest);
            have_fp = true;
        } else {
            throw CertificateFormatError("unknown header key '" + key + "'");
        }
    }
    if (!have_source || !have_classes || !have_fp || !have_act)
        throw CertificateFormatError("incomplete certificate header");
    if (c.source == Certificate::Source::Lattice) {
        std::ostringstream text;
        text << "lattice=" << to_string(c.kind) << '\n';
        for (const auto &l : pattern_lines)
            text << l << '\n';
        std::istringstream pin(text.str());
        try {
            c.pattern_sets = read_pattern(pin, c.pattern_name).second.sets();
        } catch (const PatternParseError &e) {
            throw CertificateFormatError(std::string("embedded pattern: ") + e.what());
        }
    }
    c.r.assign(c.classes, -1.0);
    std::vector<char> seen(c.classes, 0);
    std::size_t id;
    std::string value;
    std::size_t count = 0;
    while (in >> id >> value) {
        if (id >= c.classes || seen[id]++)
            throw CertificateFormatError("bad or repeated class id " + std::to_string(id));
        c.r[id] = parse_double(value);
        ++count;
    }
    if (!in.eof())
        throw CertificateFormatError("malformed class line");
    if (count != c.classes)
        throw CertificateFormatError("expected " + std::to_string(c.classes) + " class values, got " +
                                     std::to_string(count));
    return c;
}

Certificate read_certificate_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw CertificateFormatError("cannot open certificate " + path);
    return read_certificate(in);
}

namespace {

CertificateCheck check(const ClassAutomaton &a, const Certificate &c, bool exact) {
    if (a.class_count() != c.classes || a.fingerprint() != c.fingerprint)
        throw HashMismatch("rebuilt automaton does not match the certificate fingerprint");
    if (c.activities.size() != static_cast<std::size_t>(a.activity_count))
        throw CertificateFormatError("activity count does not match the automaton");
    CertificateCheck out;
    out.classes = a.class_count();
    out.valid = check_certificate(a, c.activities, c.r);
    if (exact)
        out.exact_valid = check_certificate_exact(a, c.activities, c.r);
    return out;
}

} // namespace

CertificateCheck verify_graph_certificate(const Certificate &c, const OrderedGraph &g, bool exact) {
    if (c.source != Certificate::Source::Graph)
        throw CertificateFormatError("not a graph certificate");
    if (graph_hash(g) != c.graph_hash)
        throw HashMismatch("graph hash " + to_hex64(graph_hash(g)) + " does not match certificate " +
                           to_hex64(c.graph_hash));
    FilterFamily filters(c.filters);
    if (filters.hash() != c.filter_hash)
        throw HashMismatch("embedded filters do not match the filter hash");
    WalkAutomaton a = build_class_automaton(g, filters, c.classes + 1);
    return check(a.automaton, c, exact);
}

CertificateCheck verify_lattice_certificate(const Certificate &c, bool exact) {
    if (c.source != Certificate::Source::Lattice)
        throw CertificateFormatError("not a lattice certificate");
    LatticeSpec spec(c.kind);
    FilterPattern pattern(spec, c.pattern_sets, c.pattern_name);
    if (pattern.hash() != c.pattern_hash)
        throw HashMismatch("embedded pattern does not match the pattern hash");
    LatticeAutomaton a = build_lattice_automaton(spec, pattern, c.window, c.classes + 1);
    return check(a.automaton, c, exact);
}

CertificateCheck verify_certificate(const Certificate &c, const OrderedGraph *g, bool exact) {
    if (c.source == Certificate::Source::Lattice)
        return verify_lattice_certificate(c, exact);
    if (!g)
        throw std::invalid_argument("graph certificates need the graph");
    return verify_graph_certificate(c, *g, exact);
}

} // namespace walklll
