#pragma once

// JSON and DOT serialization. All user-facing indices are 1-based.
//
// Formats:
//   QLaurent      {"<v-exponent>": "<decimal coefficient>", ...}
//   TorusElement  [{"exp": [a_1,...,a_m], "coeff": <QLaurent>}, ...]   graded-lex ascending
//   CommLaurent   [{"exp": [a_1,...,a_m], "coeff": "<decimal>"}, ...]  graded-lex ascending
//   seed file     {"m", "n", "ex", "B", "Lambda"?, "Lambda0"?, "D"?}

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "explorer.hpp"
#include "fingerprint.hpp"
#include "mutation.hpp"
#include "qring.hpp"
#include "seeds.hpp"
#include "torus.hpp"

namespace qcluster::io {

using nlohmann::json;

inline json to_json(const QLaurent& f) {
    json j = json::object();
    for (const auto& [e, c] : f.terms()) j[std::to_string(e)] = c.str();
    return j;
}

inline BigInt parse_bigint(const json& j) {
    try {
        if (j.is_string()) return BigInt(j.get<std::string>());
        if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    } catch (const std::exception&) {
    }
    throw input_error("coefficient must be a decimal string or integer: " + j.dump());
}

inline std::int64_t parse_int(const std::string& s) {
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw input_error("not an integer: " + s);
    }
    if (pos != s.size()) throw input_error("not an integer: " + s);
    return v;
}

inline QLaurent qlaurent_from_json(const json& j) {
    if (!j.is_object()) throw input_error("QLaurent must be a JSON object");
    QLaurent out;
    for (const auto& [k, v] : j.items()) out.add_term(parse_int(k), parse_bigint(v));
    return out;
}

inline json to_json(const Exponent& a) { return json(a); }

inline json to_json(const TorusElement& f) {
    json j = json::array();
    for (const auto& [a, c] : f.terms()) j.push_back({{"exp", a}, {"coeff", to_json(c)}});
    return j;
}

inline TorusElement torus_from_json(const TorusElement::Frame& frame, const json& j) {
    if (!j.is_array()) throw input_error("torus element must be a JSON array");
    TorusElement out(frame);
    for (const auto& t : j) {
        auto a = t.at("exp").get<Exponent>();
        if (a.size() != frame->size()) throw input_error("exponent length does not match Lambda");
        out += TorusElement::monomial(frame, std::move(a), qlaurent_from_json(t.at("coeff")));
    }
    return out;
}

inline json to_json(const CommLaurent& f) {
    json j = json::array();
    for (const auto& [a, c] : f.terms()) j.push_back({{"exp", a}, {"coeff", c.str()}});
    return j;
}

inline CommLaurent comm_from_json(std::size_t m, const json& j) {
    if (!j.is_array()) throw input_error("Laurent polynomial must be a JSON array");
    CommLaurent out(m);
    for (const auto& t : j) {
        auto a = t.at("exp").get<Exponent>();
        if (a.size() != m) throw input_error("exponent length mismatch");
        out += CommLaurent::monomial(std::move(a), parse_bigint(t.at("coeff")));
    }
    return out;
}

inline json to_json(const Fingerprint& f) { return key_string(f); }

inline json to_json(const SkewMatrix& l) { return json(l.rows()); }

inline std::vector<std::size_t> to_one_based(const std::vector<std::size_t>& v) {
    std::vector<std::size_t> out;
    for (auto x : v) out.push_back(x + 1);
    return out;
}

/// Contents of a seed file, validated for shape but not for algebraic conditions.
struct SeedFile {
    std::size_t m = 0;
    std::vector<std::size_t> ex; ///< 0-based
    IntRows b;
    std::optional<IntRows> lambda;
    std::optional<IntRows> lambda0;
    std::optional<std::vector<std::int64_t>> d;

    std::size_t n() const { return ex.size(); }
    bool quantum() const { return lambda.has_value() || lambda0.has_value(); }
};

namespace detail {

inline IntRows int_rows(const json& j, const char* name) {
    try {
        return j.get<IntRows>();
    } catch (const json::exception&) {
        throw input_error(std::string(name) + " must be a list of integer rows");
    }
}

} // namespace detail

inline SeedFile parse_seed_file(const json& j) {
    if (!j.is_object()) throw input_error("seed file must be a JSON object");
    SeedFile f;
    try {
        if (j.contains("B")) f.b = detail::int_rows(j.at("B"), "B");
        if (j.contains("Lambda")) f.lambda = detail::int_rows(j.at("Lambda"), "Lambda");
        if (j.contains("Lambda0")) f.lambda0 = detail::int_rows(j.at("Lambda0"), "Lambda0");
        if (j.contains("D")) {
            const json& dj = j.at("D");
            if (dj.is_array() && !dj.empty() && dj.front().is_array()) {
                const IntRows dm = detail::int_rows(dj, "D");
                std::vector<std::int64_t> diag;
                for (std::size_t i = 0; i < dm.size(); ++i) {
                    if (dm[i].size() != dm.size()) throw input_error("D must be square");
                    for (std::size_t k = 0; k < dm.size(); ++k)
                        if (k != i && dm[i][k] != 0) throw input_error("D must be diagonal");
                    diag.push_back(dm[i][i]);
                }
                f.d = std::move(diag);
            } else {
                f.d = dj.get<std::vector<std::int64_t>>();
            }
        }
        f.m = j.contains("m") ? j.at("m").get<std::size_t>() : f.b.size();
        std::vector<std::int64_t> ex1;
        if (j.contains("ex")) {
            ex1 = j.at("ex").get<std::vector<std::int64_t>>();
        } else {
            const std::size_t n = j.contains("n") ? j.at("n").get<std::size_t>() : (f.b.empty() ? 0 : f.b[0].size());
            for (std::size_t i = 0; i < n; ++i) ex1.push_back(static_cast<std::int64_t>(i + 1));
        }
        for (auto e : ex1) {
            if (e < 1 || static_cast<std::size_t>(e) > f.m) throw input_error("ex index out of range [1,m]");
            f.ex.push_back(static_cast<std::size_t>(e - 1));
        }
        if (j.contains("n") && j.at("n").get<std::size_t>() != f.ex.size())
            throw input_error("n does not match the size of ex");
    } catch (const json::exception& e) {
        throw input_error(std::string("malformed seed file: ") + e.what());
    }
    if (f.b.empty()) throw input_error("seed file needs B");
    if (f.b.size() != f.m) throw input_error("B must have m rows");
    for (const auto& r : f.b)
        if (r.size() != f.ex.size()) throw input_error("B must have n columns");
    return f;
}

inline ExchangeMatrix exchange_matrix(const SeedFile& f) { return ExchangeMatrix(f.m, f.ex, f.b); }

/// Square principal part B for the principal-coefficient construction: either
/// the whole of an n x n B, or the top block of a 2n x n B = [B; I].
inline IntRows principal_block(const SeedFile& f) {
    const std::size_t n = f.ex.size();
    if (f.m == n) return f.b;
    if (f.m == 2 * n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (f.ex[i] != i) throw input_error("principal construction needs ex = [1,n]");
            for (std::size_t k = 0; k < n; ++k)
                if (f.b[n + i][k] != (i == k ? 1 : 0)) throw input_error("bottom block of B must be the identity");
        }
        return IntRows(f.b.begin(), f.b.begin() + static_cast<std::ptrdiff_t>(n));
    }
    throw input_error("principal construction needs m = n or m = 2n");
}

/// Lambda from the file: explicit Lambda, or the principal-coefficient
/// construction from Lambda0 and D (D defaults to the minimal skew-symmetrizer).
inline std::optional<SkewMatrix> lambda_of(const SeedFile& f) {
    if (f.lambda) {
        if (f.lambda->size() != f.m) throw input_error("Lambda must be m x m");
        return SkewMatrix(*f.lambda);
    }
    if (!f.lambda0) return std::nullopt;
    const IntRows b = principal_block(f);
    const std::vector<std::int64_t> d = f.d ? *f.d : find_skew_symmetrizer(b).d;
    SkewMatrix out = principal_lambda(b, SkewMatrix(*f.lambda0), d);
    if (out.size() != f.m) throw input_error("Lambda0 construction needs B = [B; I] with m = 2n");
    return out;
}

inline json exchange_matrix_json(const ExchangeMatrix& b) {
    return {{"m", b.m()}, {"n", b.n()}, {"ex", to_one_based(b.ex())}, {"B", b.rows()}};
}

inline json to_json(const ClassicalSeed& s) {
    json j = exchange_matrix_json(s.b);
    j["vars"] = json::array();
    for (const auto& x : s.vars) j["vars"].push_back(to_json(x));
    return j;
}

inline json to_json(const QuantumSeed& s) {
    json j = exchange_matrix_json(s.b);
    j["Lambda"] = to_json(s.lambda);
    j["d"] = s.d.d;
    j["vars"] = json::array();
    for (const auto& x : s.vars) j["vars"].push_back(to_json(x));
    return j;
}

inline json to_json(const FingerprintSeed& s) {
    json j = exchange_matrix_json(s.b);
    j["fingerprints"] = json::array();
    for (const auto& x : s.vars) j["fingerprints"].push_back(to_json(x));
    return j;
}

inline json to_json(const CheckResult& r) {
    json j = {{"passed", r.passed}};
    if (r.at) j["at"] = {r.at->first + 1, r.at->second + 1};
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline json to_json(const QuantumSeedReport& r) {
    return {{"passed", r.passed()},
            {"compatibility", to_json(r.compatibility)},
            {"quasi_commutation", to_json(r.quasi_commutation)},
            {"bar_invariance", to_json(r.bar_invariance)}};
}

inline json to_json(const LaurentRow& r) {
    json j = {{"step", r.step}, {"index", r.index + 1}, {"laurent", r.laurent}};
    if (r.direction) j["direction"] = *r.direction + 1;
    if (r.laurent) {
        j["support"] = r.support;
        j["denominator"] = r.denominator;
    } else {
        j["error"] = r.error;
    }
    return j;
}

template <class Seed>
json to_json(const LaurentReport<Seed>& r) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    return {{"completed", r.completed}, {"all_laurent", r.all_laurent()}, {"rows", rows}};
}

template <class Seed>
json graph_summary(const ExchangeGraph<Seed>& g) {
    std::size_t max_depth = 0;
    for (const auto& n : g.nodes) max_depth = std::max(max_depth, n.depth);
    return {{"status", to_string(g.status)},
            {"nodes", g.nodes.size()},
            {"edges", g.edges.size()},
            {"cluster_variables", g.cluster_variable_count()},
            {"depth", max_depth}};
}

template <class Seed>
json to_json(const ExchangeGraph<Seed>& g) {
    json j = graph_summary(g);
    json nodes = json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        json node = {{"id", i}, {"digest", n.key.digest()}, {"depth", n.depth}, {"seed", to_json(n.seed)}};
        if (n.parent) {
            node["parent"] = *n.parent;
            node["parent_direction"] = *n.parent_direction + 1;
        }
        nodes.push_back(std::move(node));
    }
    json edges = json::array();
    for (const auto& e : g.edges) edges.push_back({{"from", e.from}, {"direction", e.direction + 1}, {"to", e.to}});
    j["node_list"] = std::move(nodes);
    j["edge_list"] = std::move(edges);
    return j;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

template <class Element>
std::string variable_summary(const Element& x, std::size_t m) {
    std::string text = to_string(x);
    if (text.size() <= 48) return text;
    Exponent den = min_exponent(x, m);
    for (auto& e : den) e = e < 0 ? -e : 0;
    return std::to_string(x.size()) + " terms, den " + qcluster::detail::exponent_string(den);
}

inline std::string variable_summary(const Fingerprint& x, std::size_t) { return key_string(x).substr(0, 12); }

} // namespace detail

template <class Seed>
std::string to_dot(const ExchangeGraph<Seed>& g) {
    std::ostringstream out;
    out << "digraph exchange_graph {\n";
    out << "  // status: " << to_string(g.status) << "\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        std::string label = n.key.digest().substr(0, 8);
        for (auto k : n.seed.ex())
            label += "\\nx" + std::to_string(k + 1) + " = " + detail::dot_escape(detail::variable_summary(n.seed.vars[k], n.seed.m()));
        out << "  n" << i << " [label=\"" << label << "\"];\n";
    }
    for (const auto& e : g.edges)
        out << "  n" << e.from << " -> n" << e.to << " [label=\"" << e.direction + 1 << "\"];\n";
    out << "}\n";
    return out.str();
}

} // namespace qcluster::io
