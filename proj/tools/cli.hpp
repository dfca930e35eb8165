#pragma once

// Command-line front end. Exit status: 0 success, 1 mathematical failure
// (Incompatible, NotSymmetrizable, NotDivisible, failed verification),
// 2 usage or input errors. Errors are reported as one JSON object on `err`.

#include <CLI11.hpp>
#include <json.hpp>

#include <qcluster/qcluster.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qcluster::cli {

using nlohmann::json;

enum class Format { json, dot, text };

struct Options {
    std::string verb;
    std::string input;
    std::string format = "json";
    std::vector<std::int64_t> at;
    std::size_t max_seeds = 10000;
    std::size_t max_depth = 32;
    unsigned threads = 0;
    bool full = false;
    bool fingerprint = false;
};

namespace detail {

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_usage = 2;

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("invalid JSON: ") + e.what());
    }
}

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "dot") return Format::dot;
    if (s == "text") return Format::text;
    throw input_error("unknown format " + s);
}

inline std::vector<std::size_t> directions(const std::vector<std::int64_t>& at, const ExchangeMatrix& b) {
    std::vector<std::size_t> out;
    for (auto k : at) {
        if (k < 1 || static_cast<std::size_t>(k) > b.m()) throw input_error("direction out of range [1,m]");
        const auto k0 = static_cast<std::size_t>(k - 1);
        if (!b.is_exchangeable(k0)) throw invalid_direction(k0);
        out.push_back(k0);
    }
    return out;
}

inline std::string matrix_text(const std::vector<std::vector<std::int64_t>>& rows) {
    std::string s;
    for (const auto& r : rows) {
        s += "  [";
        for (std::size_t j = 0; j < r.size(); ++j) s += (j ? ", " : "") + std::to_string(r[j]);
        s += "]\n";
    }
    return s;
}

inline std::string vector_text(const std::vector<std::int64_t>& v) {
    std::string s = "[";
    for (std::size_t j = 0; j < v.size(); ++j) s += (j ? ", " : "") + std::to_string(v[j]);
    return s + "]";
}

template <class Seed>
std::string seed_text(const Seed& s) {
    std::string out = "B =\n" + matrix_text(s.b.rows());
    if constexpr (std::is_same_v<Seed, QuantumSeed>) out += "Lambda =\n" + matrix_text(s.lambda.rows());
    for (std::size_t i = 0; i < s.vars.size(); ++i)
        out += (s.b.is_exchangeable(i) ? "x" : "c") + std::to_string(i + 1) + " = " + to_string(s.vars[i]) + "\n";
    return out;
}

inline std::string report_text(const QuantumSeedReport& r) {
    auto line = [](const char* name, const CheckResult& c) {
        std::string s = std::string(name) + ": " + (c.passed ? "pass" : "FAIL");
        if (c.at) s += " at (" + std::to_string(c.at->first + 1) + "," + std::to_string(c.at->second + 1) + ")";
        if (!c.detail.empty()) s += " " + c.detail;
        return s + "\n";
    };
    return line("compatibility", r.compatibility) + line("quasi-commutation", r.quasi_commutation) +
           line("bar-invariance", r.bar_invariance);
}

struct Loaded {
    io::SeedFile file;
    ExchangeMatrix b;
    std::optional<SkewMatrix> lambda;
};

inline Loaded load(const std::string& path) {
    Loaded l;
    l.file = io::parse_seed_file(load_json(path));
    l.b = io::exchange_matrix(l.file);
    l.lambda = io::lambda_of(l.file);
    return l;
}

inline int check(const Options& o, Format fmt, std::ostream& out) {
    const Loaded l = load(o.input);
    json j = {{"d_minimal", l.b.minimal_symmetrizer().d}, {"quantum", l.lambda.has_value()}};
    std::string text = "skew-symmetrizer d = " + vector_text(l.b.minimal_symmetrizer().d) + "\n";
    bool ok = true;
    if (l.lambda) {
        const QuantumSeed s = make_quantum_seed(l.b, *l.lambda);
        const QuantumSeedReport report = verify_quantum_seed(s);
        j["d"] = s.d.d;
        j["Lambda"] = io::to_json(s.lambda);
        j["verification"] = io::to_json(report);
        text += "compatible with Lambda, d = " + vector_text(s.d.d) + "\n" + report_text(report);
        ok = report.passed();
    }
    j["ok"] = ok;
    if (fmt == Format::text) out << text;
    else out << j.dump(2) << "\n";
    return ok ? exit_ok : exit_domain;
}

template <class Seed>
int run_mutate(const Seed& root, const std::vector<std::size_t>& seq, Format fmt, std::ostream& out,
               std::ostream& err) {
    const auto report = laurent_report(root, seq);
    const bool same = canonical_key(report.final_seed) == canonical_key(root);
    if (fmt == Format::text) {
        out << seed_text(report.final_seed);
        for (const auto& row : report.rows) {
            if (row.step == 0) continue;
            out << "step " << row.step << " (mu_" << *row.direction + 1 << "): "
                << (row.laurent ? "Laurent, denominator " + qcluster::detail::exponent_string(row.denominator)
                                : "NOT Laurent: " + row.error)
                << "\n";
        }
        out << "equivalent to initial seed: " << (same ? "yes" : "no") << "\n";
    } else {
        json j = {{"seed", io::to_json(report.final_seed)},
                  {"report", io::to_json(report)},
                  {"equivalent_to_initial", same},
                  {"digest", canonical_key(report.final_seed).digest()}};
        out << j.dump(2) << "\n";
    }
    if (!report.completed) {
        const auto& row = report.rows.back();
        err << json{{"error", "NotDivisible"}, {"message", row.error}, {"step", row.step},
                    {"direction", *row.direction + 1}}
                   .dump()
            << "\n";
        return exit_domain;
    }
    return exit_ok;
}

inline int mutate_cmd(const Options& o, Format fmt, std::ostream& out, std::ostream& err) {
    const Loaded l = load(o.input);
    const auto seq = directions(o.at, l.b);
    if (l.lambda) return run_mutate(make_quantum_seed(l.b, *l.lambda), seq, fmt, out, err);
    return run_mutate(make_classical_seed(l.b), seq, fmt, out, err);
}

template <class Seed>
int run_explore(const Seed& root, const Options& o, Format fmt, std::ostream& out) {
    const auto g = explore(root, ExploreLimits{o.max_seeds, o.max_depth, o.threads});
    if (fmt == Format::dot) {
        out << io::to_dot(g);
    } else if (fmt == Format::text) {
        out << "status: " << to_string(g.status) << "\nnodes: " << g.nodes.size() << "\nedges: " << g.edges.size()
            << "\ncluster variables: " << g.cluster_variable_count() << "\n";
    } else {
        out << (o.full ? io::to_json(g) : io::graph_summary(g)).dump(2) << "\n";
    }
    return exit_ok;
}

inline int explore_cmd(const Options& o, Format fmt, std::ostream& out) {
    const Loaded l = load(o.input);
    if (o.fingerprint) return run_explore(make_fingerprint_seed(l.b), o, fmt, out);
    if (l.lambda) return run_explore(make_quantum_seed(l.b, *l.lambda), o, fmt, out);
    return run_explore(make_classical_seed(l.b), o, fmt, out);
}

inline int specialize_cmd(const Options& o, Format fmt, std::ostream& out) {
    const Loaded l = load(o.input);
    if (!l.lambda) throw input_error("specialize needs a quantum seed (Lambda or Lambda0)");
    QuantumSeed s = make_quantum_seed(l.b, *l.lambda);
    for (auto k : directions(o.at, l.b)) s = quantum_mutate(s, k);
    const ClassicalSeed shadow = specialize(s);
    if (fmt == Format::text) out << seed_text(shadow);
    else out << io::to_json(shadow).dump(2) << "\n";
    return exit_ok;
}

inline int principal_cmd(const Options& o, Format fmt, std::ostream& out) {
    const io::SeedFile f = io::parse_seed_file(load_json(o.input));
    const IntRows b = io::principal_block(f);
    const std::size_t n = b.size();
    const std::vector<std::int64_t> d = f.d ? *f.d : find_skew_symmetrizer(b).d;
    const SkewMatrix lambda0 = f.lambda0 ? SkewMatrix(*f.lambda0) : SkewMatrix(n);
    const SkewMatrix lambda = principal_lambda(b, lambda0, d);
    const ExchangeMatrix bt = principal_exchange_matrix(b);
    const SkewSymmetrizer dc = check_compatibility(bt, lambda);
    if (fmt == Format::text) {
        out << "Lambda =\n" << matrix_text(lambda.rows()) << "compatible with [B; I], d = " << vector_text(dc.d)
            << "\n";
    } else {
        json j = io::exchange_matrix_json(bt);
        j["Lambda"] = io::to_json(lambda);
        j["d"] = dc.d;
        out << j.dump(2) << "\n";
    }
    return exit_ok;
}

inline json error_json(const error& e) {
    json j = {{"error", e.code()}, {"message", e.what()}};
    if (const auto* inc = dynamic_cast<const incompatible*>(&e)) j["at"] = {inc->row() + 1, inc->column() + 1};
    if (const auto* mf = dynamic_cast<const mutation_failure*>(&e)) {
        j["direction"] = mf->direction() + 1;
        j["B"] = mf->matrix().rows();
        if (!mf->path().empty()) j["path"] = io::to_one_based(mf->path());
    }
    return j;
}

inline bool is_usage_error(const error& e) {
    return dynamic_cast<const input_error*>(&e) || dynamic_cast<const invalid_seed*>(&e) ||
           dynamic_cast<const dimension_error*>(&e) || dynamic_cast<const invalid_direction*>(&e);
}

} // namespace detail

inline int dispatch(const Options& o, std::ostream& out, std::ostream& err) {
    using namespace detail;
    try {
        const Format fmt = parse_format(o.format);
        if (fmt == Format::dot && o.verb != "explore") throw input_error("dot output is only available for explore");
        if (o.verb == "check") return check(o, fmt, out);
        if (o.verb == "mutate") return mutate_cmd(o, fmt, out, err);
        if (o.verb == "explore") return explore_cmd(o, fmt, out);
        if (o.verb == "specialize") return specialize_cmd(o, fmt, out);
        if (o.verb == "principal-lambda") return principal_cmd(o, fmt, out);
        throw input_error("unknown verb " + o.verb);
    } catch (const error& e) {
        err << error_json(e).dump() << "\n";
        return is_usage_error(e) ? exit_usage : exit_domain;
    } catch (const std::overflow_error& e) {
        err << json{{"error", "Overflow"}, {"message", e.what()}}.dump() << "\n";
        return exit_domain;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact classical and quantum cluster-algebra seeds"};
    app.name("qcluster");
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", o.input, "seed file (JSON)")->required();
        sub->add_option("--format", o.format, "json | text (explore also: dot)")
            ->check(CLI::IsMember({"json", "dot", "text"}));
    };

    auto* check = app.add_subcommand("check", "verify symmetrizability, compatibility and quasi-commutation");
    add_common(check);
    auto* mutate = app.add_subcommand("mutate", "apply a mutation sequence and report on each new variable");
    add_common(mutate);
    mutate->add_option("--at", o.at, "comma-separated directions (1-based)")->delimiter(',')->required();
    auto* explore = app.add_subcommand("explore", "breadth-first exchange-graph exploration");
    add_common(explore);
    explore->add_option("--max-seeds", o.max_seeds, "seed cap")->check(CLI::NonNegativeNumber);
    explore->add_option("--max-depth", o.max_depth, "depth cap")->check(CLI::NonNegativeNumber);
    explore->add_option("--threads", o.threads, "frontier workers (0 = hardware)");
    explore->add_flag("--full", o.full, "include every node and edge in the JSON output");
    explore->add_flag("--fingerprint", o.fingerprint, "explore the modular fingerprint of the classical seed");
    auto* specialize = app.add_subcommand("specialize", "q = 1 shadow of a quantum seed");
    add_common(specialize);
    specialize->add_option("--at", o.at, "optional mutation sequence applied first")->delimiter(',');
    auto* principal = app.add_subcommand("principal-lambda", "principal-coefficient Lambda from B, Lambda0, D");
    add_common(principal);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << json{{"error", "Usage"}, {"message", e.what()}}.dump() << "\n";
        return detail::exit_usage;
    }
    o.verb = app.get_subcommands().front()->get_name();
    return dispatch(o, out, err);
}

} // namespace qcluster::cli
