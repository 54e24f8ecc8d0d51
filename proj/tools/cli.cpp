#include "cli.hpp"

#include "walklll/baselines.hpp"
#include "walklll/certificate.hpp"
#include "walklll/hash.hpp"
#include "walklll/isp_oracle.hpp"
#include "walklll/lattice.hpp"
#include "walklll/solver.hpp"
#include "walklll/supermodular.hpp"
#include "walklll/walks.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace walklll::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- output

std::string scalar_text(const json &v) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_null())
        return "-";
    return v.dump();
}

void flatten(const json &v, const std::string &prefix, std::vector<std::pair<std::string, std::string>> &out) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json &e) { return e.is_primitive(); })) {
        std::string joined;
        for (const auto &e : v)
            joined += (joined.empty() ? "" : " ") + scalar_text(e);
        out.emplace_back(prefix, joined);
    } else if (v.is_array()) {
        for (std::size_t k = 0; k < v.size(); ++k)
            flatten(v[k], prefix + "." + std::to_string(k), out);
    } else {
        out.emplace_back(prefix, scalar_text(v));
    }
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void emit(std::ostream &out, const json &report, const std::string &format) {
    if (format == "json") {
        out << report.dump(2) << '\n';
        return;
    }
    const bool tabular = report.contains("rows") && report["rows"].is_array() && !report["rows"].empty();
    if (tabular) {
        std::vector<std::string> header;
        for (auto it = report["rows"][0].begin(); it != report["rows"][0].end(); ++it)
            header.push_back(it.key());
        std::vector<std::vector<std::string>> cells;
        for (const auto &row : report["rows"]) {
            std::vector<std::string> line;
            for (const auto &h : header)
                line.push_back(row.contains(h) ? scalar_text(row[h]) : "-");
            cells.push_back(std::move(line));
        }
        if (format == "csv") {
            for (std::size_t k = 0; k < header.size(); ++k)
                out << (k ? "," : "") << csv_field(header[k]);
            out << '\n';
            for (const auto &line : cells) {
                for (std::size_t k = 0; k < line.size(); ++k)
                    out << (k ? "," : "") << csv_field(line[k]);
                out << '\n';
            }
            return;
        }
        std::vector<std::size_t> width(header.size());
        for (std::size_t k = 0; k < header.size(); ++k) {
            width[k] = header[k].size();
            for (const auto &line : cells)
                width[k] = std::max(width[k], line[k].size());
        }
        auto print = [&](const std::vector<std::string> &line) {
            for (std::size_t k = 0; k < line.size(); ++k)
                out << (k ? "  " : "") << std::left << std::setw(static_cast<int>(width[k])) << line[k];
            out << '\n';
        };
        print(header);
        for (const auto &line : cells)
            print(line);
        return;
    }
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(report, "", flat);
    if (format == "csv") {
        out << "key,value\n";
        for (const auto &[k, v] : flat)
            out << csv_field(k) << ',' << csv_field(v) << '\n';
        return;
    }
    std::size_t w = 0;
    for (const auto &kv : flat)
        w = std::max(w, kv.first.size());
    for (const auto &[k, v] : flat)
        out << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << '\n';
}

// ---------------------------------------------------------------- inputs

struct SolverOptions {
    SolverParams params;
    void add(CLI::App *app) {
        app->add_option("--max-iter", params.max_iter, "Iteration cap per validity decision")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--margin", params.margin, "Convergence margin")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--inflation", params.inflation, "Relative inflation of the candidate certificate")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--tol", params.bisection_tol, "Bisection tolerance on lambda")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--threads", params.threads, "Worker threads for the fixed-point map")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
    }
    json to_json() const {
        return json{{"max_iter", params.max_iter},
                    {"margin", params.margin},
                    {"inflation", params.inflation},
                    {"bisection_tol", params.bisection_tol}};
    }
};

struct ActivityOptions {
    std::optional<double> lambda;
    std::string p_file;
    void add(CLI::App *app) {
        auto *l = app->add_option("--lambda", lambda, "Uniform activity");
        auto *p = app->add_option("--p-file", p_file, "File with one activity per vertex");
        l->excludes(p);
        p->excludes(l);
    }
    bool given() const { return lambda.has_value() || !p_file.empty(); }
    std::vector<double> resolve(int n) const {
        std::vector<double> p;
        if (lambda) {
            p.assign(static_cast<std::size_t>(n), *lambda);
        } else if (!p_file.empty()) {
            std::ifstream in(p_file);
            if (!in)
                throw UsageError("cannot open activity file " + p_file);
            double v;
            while (in >> v)
                p.push_back(v);
            if (!in.eof())
                throw UsageError("activity file " + p_file + " contains a non-number");
            if (static_cast<int>(p.size()) != n)
                throw UsageError("activity file has " + std::to_string(p.size()) + " values, graph has " +
                                 std::to_string(n) + " vertices");
        } else {
            throw UsageError("an activity is required (--lambda or --p-file)");
        }
        for (double v : p)
            if (!(v >= 0.0 && v < 1.0))
                throw UsageError("activities must lie in [0, 1)");
        return p;
    }
    json to_json(const std::vector<double> &p) const {
        if (lambda)
            return json{{"lambda", *lambda}};
        return json{{"activities", p}};
    }
};

json graph_json(const OrderedGraph &g) {
    return json{{"vertices", g.size()}, {"edges", g.edge_count()}, {"hash", to_hex64(graph_hash(g))}};
}

json subset_json(SubsetMask s) {
    json a = json::array();
    for (Vertex v : from_mask(s))
        a.push_back(v + 1);
    return a;
}

FilterFamily resolve_filters(const OrderedGraph &g, const std::string &spec, std::uint64_t seed) {
    if (spec == "none")
        return filters_none();
    if (spec == "edges")
        return filters_edges(g);
    if (spec == "neighborhoods")
        return filters_neighborhoods(g);
    if (spec == "full")
        return filters_full(g);
    if (spec == "random") {
        std::mt19937_64 rng(seed);
        return filters_random(g, rng, g.size(), std::min(g.size(), 4));
    }
    if (!std::filesystem::exists(spec))
        throw UsageError("filters: '" + spec + "' is neither a preset nor a readable file");
    return FilterFamily(read_vertex_sets_file(spec, g.size()));
}

json pattern_json(const LatticeSpec &spec, const FilterPattern &pattern) {
    std::ostringstream text;
    write_pattern(text, spec, pattern);
    std::istringstream lines(text.str());
    std::string line;
    std::getline(lines, line);
    json sets = json::array();
    while (std::getline(lines, line))
        sets.push_back(line);
    return json{{"name", pattern.name()}, {"hash", to_hex64(pattern.hash())}, {"sets", sets}};
}

// ---------------------------------------------------------------- commands

struct ExactCmd {
    std::string graph;
    ActivityOptions act;
    bool critical = false;
    bool exact_rational = false;
    double tol = 1e-9;

    int run(std::ostream &out, const std::string &format) {
        OrderedGraph g = read_graph_file(graph);
        if (!act.given() && !critical)
            throw UsageError("exact: give an activity or --critical");
        json report{{"command", "exact"}, {"graph", graph_json(g)}};
        int code = kExitValid;
        if (act.given()) {
            auto p = act.resolve(g.size());
            report.update(act.to_json(p));
            MembershipVerdict v = shearer_membership_exact(g, p);
            report["member"] = v.member;
            report["witness"] = v.witness ? subset_json(*v.witness) : json(nullptr);
            report["z"] = v.table.back();
            if (exact_rational) {
                auto exact = restricted_table_exact(g, p);
                report["exact_member"] =
                    std::all_of(exact.begin(), exact.end(), [](const Rational &z) { return z > 0; });
            }
            code = v.member ? kExitValid : kExitInvalid;
        }
        if (critical) {
            LambdaBracket b = critical_lambda_exact(g, tol);
            report["critical"] = json{{"lo", b.lo}, {"hi", b.hi}};
        }
        emit(out, report, format);
        return code;
    }
};

struct HierarchyCmd {
    std::string graph;
    std::string filters = "none";
    ActivityOptions act;
    SolverOptions solver;
    bool bound = false;
    bool exact_rational = false;
    std::size_t budget = 2'000'000;
    std::uint64_t seed = 1;
    std::string certificate;

    int run(std::ostream &out, const std::string &format) {
        OrderedGraph g = read_graph_file(graph);
        FilterFamily family = resolve_filters(g, filters, seed);
        WalkAutomaton a = build_class_automaton(g, family, budget);
        json report{{"command", "hierarchy"},
                    {"graph", graph_json(g)},
                    {"filters", {{"spec", filters}, {"count", family.size()}, {"hash", to_hex64(family.hash())}}},
                    {"automaton",
                     {{"classes", a.automaton.class_count()},
                      {"transitions", a.automaton.transition_count()},
                      {"fingerprint", to_hex64(a.automaton.fingerprint())}}},
                    {"solver", solver.to_json()}};
        if (filters == "random")
            report["filters"]["seed"] = seed;

        std::optional<Certificate> cert;
        int code = kExitValid;
        if (bound) {
            LambdaBound b = lambda_lower_bound(a.automaton, solver.params);
            std::vector<double> p(static_cast<std::size_t>(g.size()), b.lambda);
            report["bound"] = json{{"lambda", b.lambda},
                                   {"upper", b.upper},
                                   {"limited_by_undetermined", b.limited_by_undetermined},
                                   {"probes", b.probes},
                                   {"iterations", b.iterations}};
            if (exact_rational)
                report["bound"]["exact_check"] = check_certificate_exact(a.automaton, p, b.certificate);
            cert = make_graph_certificate(g, a, p, b.certificate, b.lambda);
        } else {
            auto p = act.resolve(g.size());
            report.update(act.to_json(p));
            ValidityVerdict v = decide_validity(a.automaton, p, solver.params);
            json verdict{{"status", to_string(v.status)},
                         {"iterations", v.iterations},
                         {"last_change", v.last_change}};
            if (v.divergence)
                verdict["divergence"] = json{{"iteration", v.divergence->iteration},
                                             {"class", v.divergence->cls},
                                             {"value", v.divergence->value}};
            if (v.status == Validity::CertifiedValid) {
                if (exact_rational)
                    verdict["exact_check"] = check_certificate_exact(a.automaton, p, v.certificate);
                cert = make_graph_certificate(g, a, p, v.certificate,
                                              act.lambda ? std::optional<double>(*act.lambda) : std::nullopt);
            }
            report["verdict"] = verdict;
            code = v.status == Validity::CertifiedValid ? kExitValid
                   : v.status == Validity::CertifiedInvalid ? kExitInvalid
                                                             : kExitUndetermined;
        }
        if (!certificate.empty() && cert) {
            write_certificate_file(certificate, *cert);
            report["certificate"] = certificate;
        }
        emit(out, report, format);
        return code;
    }
};

struct LatticeRun {
    json report;
    std::optional<Certificate> cert;
    bool budget_exceeded = false;
};

LatticeRun run_lattice(const LatticeSpec &spec, const FilterPattern &pattern, int window, std::size_t budget,
                       const SolverParams &params, bool exact_rational, bool timing) {
    LatticeRun run;
    json &r = run.report;
    r["lattice"] = to_string(spec.kind());
    r["pattern"] = pattern_json(spec, pattern);
    r["budget"] = budget;
    try {
        LatticeAutomaton a;
        BoundReport b = compute_bound(spec, pattern, window, budget, params, &a);
        std::vector<double> p(static_cast<std::size_t>(spec.sublattices()), b.bound.lambda);
        r["window"] = b.window;
        r["classes"] = b.classes;
        r["transitions"] = b.transitions;
        r["fingerprint"] = to_hex64(b.fingerprint);
        r["lambda"] = b.bound.lambda;
        r["upper"] = b.bound.upper;
        r["limited_by_undetermined"] = b.bound.limited_by_undetermined;
        r["probes"] = b.bound.probes;
        r["iterations"] = b.bound.iterations;
        r["certificate_check"] = check_certificate(a.automaton, p, b.bound.certificate);
        if (exact_rational)
            r["exact_check"] = check_certificate_exact(a.automaton, p, b.bound.certificate);
        if (timing)
            r["timing"] = json{{"build_seconds", b.build_seconds}, {"solve_seconds", b.solve_seconds}};
        run.cert = make_lattice_certificate(a, p, b.bound.certificate, b.bound.lambda);
    } catch (const StateBudgetExceeded &e) {
        run.budget_exceeded = true;
        r["error"] = "budget-exceeded";
        r["partial_classes"] = e.partial_count;
    }
    return run;
}

struct LatticeCmd {
    std::string kind;
    std::string pattern = "edges";
    std::string pattern_file;
    int window = -1;
    std::size_t budget = 2'000'000;
    SolverOptions solver;
    bool exact_rational = false;
    bool timing = false;
    std::string certificate;

    int run(std::ostream &out, const std::string &format) {
        LatticeSpec spec(parse_lattice_kind(kind));
        FilterPattern pat;
        if (!pattern_file.empty()) {
            auto [k, p] = read_pattern_file(pattern_file);
            if (k != spec.kind())
                throw UsageError("pattern file is for the " + std::string(to_string(k)) + " lattice");
            pat = p;
        } else {
            pat = pattern_preset(spec, pattern);
        }
        LatticeRun r = run_lattice(spec, pat, window, budget, solver.params, exact_rational, timing);
        json report{{"command", "lattice"}};
        report.update(r.report);
        report["solver"] = solver.to_json();
        if (!certificate.empty() && r.cert) {
            write_certificate_file(certificate, *r.cert);
            report["certificate"] = certificate;
        }
        emit(out, report, format);
        return r.budget_exceeded ? kExitBudget : kExitValid;
    }
};

struct TableCmd {
    std::vector<std::string> lattices{"square", "cubic", "hexagonal"};
    std::vector<std::string> patterns{"none", "edges", "neighborhoods", "headline"};
    std::size_t budget = 2'000'000;
    SolverOptions solver;
    std::string certificate_dir;
    bool timing = false;

    int run(std::ostream &out, const std::string &format) {
        json rows = json::array();
        json runs = json::array();
        bool any_budget = false;
        for (const auto &name : lattices) {
            LatticeSpec spec(parse_lattice_kind(name));
            json row{{"lattice", to_string(spec.kind())}};
            for (const auto &pname : patterns) {
                FilterPattern pat = pattern_preset(spec, pname);
                LatticeRun r = run_lattice(spec, pat, -1, budget, solver.params, false, timing);
                json entry{{"preset", pname}};
                entry.update(r.report);
                if (r.budget_exceeded) {
                    any_budget = true;
                    row[pname] = nullptr;
                } else {
                    row[pname] = r.report["lambda"];
                    if (!certificate_dir.empty()) {
                        std::filesystem::create_directories(certificate_dir);
                        std::string path =
                            (std::filesystem::path(certificate_dir) / (name + "_" + pname + ".cert")).string();
                        write_certificate_file(path, *r.cert);
                        entry["certificate"] = path;
                    }
                }
                runs.push_back(entry);
            }
            ReferenceRow ref = reference_row(spec.kind());
            row["ref_asymmetric"] = ref.asymmetric;
            row["ref_cluster"] = ref.cluster;
            row["ref_nonbacktracking"] = ref.nonbacktracking;
            row["ref_decomposition"] = ref.decomposition;
            row["ref_published"] = ref.hierarchy;
            row["ref_numerical"] = ref.numerical;
            rows.push_back(row);
        }
        json report{{"command", "table"}, {"rows", rows}};
        if (format == "json") {
            report["runs"] = runs;
            report["solver"] = solver.to_json();
        }
        emit(out, report, format);
        return any_budget ? kExitBudget : kExitValid;
    }
};

struct SupermodCmd {
    std::string mode;
    std::string graph;
    std::string table;
    std::string output;
    ActivityOptions act;
    std::uint64_t seed = 1;

    int run(std::ostream &out, const std::string &format) {
        OrderedGraph g = read_graph_file(graph);
        auto p = act.resolve(g.size());
        json report{{"command", "supermod"}, {"mode", mode}, {"graph", graph_json(g)}};
        report.update(act.to_json(p));

        auto save = [&](const SetFunctionTable &t) {
            if (output.empty())
                return;
            std::ofstream f(output);
            if (!f)
                throw UsageError("cannot write " + output);
            write_table(f, t);
            report["output"] = output;
        };

        if (mode == "generate") {
            SetFunctionTable t = generate_event_instance(g, p, seed);
            report["seed"] = seed;
            report["min_value"] = t.min_value();
            report["supermodular"] = is_supermodular(t).supermodular;
            report["factorizes"] = factorizes(t, g, p).factorizes;
            save(t);
            emit(out, report, format);
            return kExitValid;
        }
        if (mode == "extremal") {
            ExtremalTable e = extremal_construction(g, p);
            report["scale"] = e.lambda;
            report["min_value"] = e.table.min_value();
            report["supermodular"] = is_supermodular(e.table).supermodular;
            report["factorizes"] = factorizes(e.table, g, [&] {
                                       auto q = p;
                                       for (auto &v : q)
                                           v *= e.lambda;
                                       return q;
                                   }())
                                       .factorizes;
            save(e.table);
            emit(out, report, format);
            return kExitValid;
        }
        if (mode != "check")
            throw UsageError("supermod: mode must be check, generate or extremal");
        if (table.empty())
            throw UsageError("supermod check needs --table");
        SetFunctionTable t = read_table_file(table);
        if (t.n != g.size())
            throw UsageError("table and graph sizes differ");
        auto sm = is_supermodular(t);
        auto fz = factorizes(t, g, p);
        report["supermodular"] = sm.supermodular;
        if (sm.witness)
            report["supermodular_witness"] =
                json{{"i", sm.witness->i + 1}, {"S", subset_json(sm.witness->s)}, {"T", subset_json(sm.witness->t)}};
        report["factorizes"] = fz.factorizes;
        if (fz.witness)
            report["factorization_witness"] = json{{"i", fz.witness->i + 1}, {"S", subset_json(fz.witness->s)}};
        bool ok = sm.supermodular && fz.factorizes;
        try {
            std::size_t violations = 0;
            double min_slack = std::numeric_limits<double>::infinity();
            for (SubsetMask x = 0; x < t.values.size(); ++x) {
                SupermodularBound b = supermodular_lower_bound(t, g, p, x);
                violations += b.holds ? 0 : 1;
                min_slack = std::min(min_slack, t(x) - b.bound);
            }
            report["bound"] = json{{"subsets", t.values.size()}, {"violations", violations}, {"min_slack", min_slack}};
            ok = ok && violations == 0;
        } catch (const PreconditionFailed &e) {
            report["bound"] = json{{"skipped", e.what()}};
        }
        emit(out, report, format);
        return ok ? kExitValid : kExitInvalid;
    }
};

struct VerifyCmd {
    std::string certificate;
    std::string graph;
    bool exact_rational = false;

    int run(std::ostream &out, const std::string &format) {
        Certificate c = read_certificate_file(certificate);
        std::optional<OrderedGraph> g;
        if (c.source == Certificate::Source::Graph) {
            if (graph.empty())
                throw UsageError("verify: graph certificates need --graph");
            g = read_graph_file(graph);
        }
        CertificateCheck check = verify_certificate(c, g ? &*g : nullptr, exact_rational);
        json report{{"command", "verify"},
                    {"certificate", certificate},
                    {"source", c.source == Certificate::Source::Graph ? "graph" : "lattice"},
                    {"classes", check.classes},
                    {"lambda", c.lambda ? json(*c.lambda) : json(nullptr)},
                    {"valid", check.valid}};
        if (check.exact_valid)
            report["exact_valid"] = *check.exact_valid;
        emit(out, report, format);
        bool ok = check.valid && check.exact_valid.value_or(true);
        return ok ? kExitValid : kExitInvalid;
    }
};

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Walk-hierarchy local lemma toolkit"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    ExactCmd exact;
    auto *e = app.add_subcommand("exact", "Shearer membership and critical activity by enumeration");
    e->add_option("graph", exact.graph, "Graph file")->required();
    exact.act.add(e);
    e->add_flag("--critical", exact.critical, "Also bisect the critical uniform activity");
    e->add_option("--tol", exact.tol, "Bisection tolerance")->capture_default_str();
    e->add_flag("--exact-rational", exact.exact_rational, "Re-check membership in exact arithmetic");

    HierarchyCmd hier;
    auto *h = app.add_subcommand("hierarchy", "Decide validity (or bisect lambda) for filtered walks");
    h->add_option("graph", hier.graph, "Graph file")->required();
    h->add_option("--filters", hier.filters, "none|edges|neighborhoods|full|random or a filter file")
        ->capture_default_str();
    hier.act.add(h);
    hier.solver.add(h);
    h->add_flag("--bound", hier.bound, "Bisect the largest certified uniform activity");
    h->add_option("--budget", hier.budget, "Class budget")->capture_default_str();
    h->add_option("--seed", hier.seed, "Seed for random filters")->capture_default_str();
    h->add_option("--certificate", hier.certificate, "Write the certificate here");
    h->add_flag("--exact-rational", hier.exact_rational, "Re-check the certificate in exact arithmetic");

    LatticeCmd lat;
    auto *l = app.add_subcommand("lattice", "Certified lambda lower bound on a lattice");
    l->add_option("kind", lat.kind, "square|cubic|hexagonal")->required();
    auto *pat_opt = l->add_option("--pattern", lat.pattern,
                                  "none|edges|neighborhoods|headline|extended|ball<r>|box<s>")
                        ->capture_default_str();
    l->add_option("--pattern-file", lat.pattern_file, "Pattern file")->excludes(pat_opt);
    l->add_option("--window", lat.window, "Forgetting window (default: pattern diameter + 1)");
    l->add_option("--budget", lat.budget, "Class budget")->capture_default_str();
    lat.solver.add(l);
    l->add_option("--certificate", lat.certificate, "Write the certificate here");
    l->add_flag("--exact-rational", lat.exact_rational, "Re-check the certificate in exact arithmetic");
    l->add_flag("--timing", lat.timing, "Include wall-clock times in the report");

    TableCmd table;
    auto *t = app.add_subcommand("table", "Lattice bounds for all presets next to reference values");
    t->add_option("--lattices", table.lattices, "Lattices to run")->delimiter(',')->capture_default_str();
    t->add_option("--patterns", table.patterns, "Pattern presets to run")->delimiter(',')->capture_default_str();
    t->add_option("--budget", table.budget, "Class budget")->capture_default_str();
    table.solver.add(t);
    t->add_option("--certificate-dir", table.certificate_dir, "Write one certificate per run here");
    t->add_flag("--timing", table.timing, "Include wall-clock times in the report");

    SupermodCmd sup;
    auto *s = app.add_subcommand("supermod", "Supermodular set-function checks");
    s->add_option("mode", sup.mode, "check|generate|extremal")->required();
    s->add_option("--graph", sup.graph, "Dependency graph file")->required();
    s->add_option("--table", sup.table, "Table file (check)");
    s->add_option("--output", sup.output, "Write the generated table here");
    s->add_option("--seed", sup.seed, "Seed (generate)")->capture_default_str();
    sup.act.add(s);

    VerifyCmd ver;
    auto *v = app.add_subcommand("verify", "Re-check a serialized certificate");
    v->add_option("certificate", ver.certificate, "Certificate file")->required();
    v->add_option("--graph", ver.graph, "Graph file (graph certificates)");
    v->add_flag("--exact-rational", ver.exact_rational, "Also check in exact arithmetic");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &pe) {
        int code = app.exit(pe, out, err);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*e)
            return exact.run(out, format);
        if (*h)
            return hier.run(out, format);
        if (*l)
            return lat.run(out, format);
        if (*t)
            return table.run(out, format);
        if (*s)
            return sup.run(out, format);
        if (*v)
            return ver.run(out, format);
    } catch (const UsageError &x) {
        err << "error: " << x.what() << '\n';
        return kExitUsage;
    } catch (const HashMismatch &x) {
        err << "error: hash mismatch: " << x.what() << '\n';
        return kExitMismatch;
    } catch (const StateBudgetExceeded &x) {
        err << "error: " << x.what() << '\n';
        return kExitBudget;
    } catch (const RegionNotViolated &x) {
        err << "error: " << x.what() << '\n';
        return kExitUsage;
    } catch (const OracleError &x) {
        err << "error: " << x.what() << '\n';
        return kExitBudget;
    } catch (const GraphError &x) {
        err << "error: " << x.what() << '\n';
        return kExitUsage;
    } catch (const PatternParseError &x) {
        err << "error: " << x.what() << '\n';
        return kExitUsage;
    } catch (const CertificateFormatError &x) {
        err << "error: " << x.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &x) {
        err << "error: " << x.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &x) {
        err << "error: " << x.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace walklll::cli
