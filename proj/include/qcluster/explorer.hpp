#pragma once

// Exchange-graph exploration over a mutation-equivalence class.
//
// Seeds are identified up to simultaneous relabeling of exchangeable indices
// (variables, rows and columns of B, rows and columns of Lambda). Frozen
// indices keep their positions. Nodes are stored in canonical labeling, and
// edge directions refer to the canonical labeling of the source node.

#include <algorithm>
#include <cstdint>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mutation.hpp"
#include "seeds.hpp"
#include "torus.hpp"

namespace qcluster {

struct CanonicalKey {
    std::string bytes;

    /// 64-bit FNV-1a digest as 16 hex digits, used for short labels.
    std::string digest() const {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        static constexpr char hex[] = "0123456789abcdef";
        std::string out(16, '0');
        for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        return out;
    }

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
    friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

namespace detail {

inline std::string column_string(const ExchangeMatrix& b, std::size_t col) {
    std::string s;
    for (std::size_t i = 0; i < b.m(); ++i) s += std::to_string(b.entry(i, col)) + ",";
    return s;
}

/// new_to_old[i] = index in the original seed that moves to position i.
inline std::vector<std::size_t> canonical_permutation(const ExchangeMatrix& b,
                                                      const std::vector<std::string>& var_keys) {
    const auto& ex = b.ex();
    std::vector<std::size_t> order(ex.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::pair<std::string, std::string>> sort_keys;
    for (std::size_t j = 0; j < ex.size(); ++j) sort_keys.emplace_back(var_keys[ex[j]], column_string(b, j));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sort_keys[x] < sort_keys[y]; });
    std::vector<std::size_t> new_to_old(b.m());
    std::iota(new_to_old.begin(), new_to_old.end(), std::size_t{0});
    for (std::size_t j = 0; j < ex.size(); ++j) new_to_old[ex[j]] = ex[order[j]];
    return new_to_old;
}

inline ExchangeMatrix permute(const ExchangeMatrix& b, const std::vector<std::size_t>& new_to_old) {
    IntRows rows(b.m(), std::vector<std::int64_t>(b.n()));
    for (std::size_t i = 0; i < b.m(); ++i)
        for (std::size_t col = 0; col < b.n(); ++col)
            rows[i][col] = b.at(new_to_old[i], new_to_old[b.ex()[col]]);
    return ExchangeMatrix(b.m(), b.ex(), std::move(rows));
}

inline SkewMatrix permute(const SkewMatrix& l, const std::vector<std::size_t>& new_to_old) {
    SkewMatrix out(l.size());
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = i + 1; j < l.size(); ++j) out.set(i, j, l.at(new_to_old[i], new_to_old[j]));
    return out;
}

template <class T>
std::vector<T> permute(const std::vector<T>& v, const std::vector<std::size_t>& new_to_old) {
    std::vector<T> out;
    out.reserve(v.size());
    for (auto i : new_to_old) out.push_back(v[i]);
    return out;
}

inline std::string matrix_string(const ExchangeMatrix& b) {
    std::string s = "B";
    for (const auto& r : b.rows()) {
        s += "[";
        for (auto x : r) s += std::to_string(x) + ",";
        s += "]";
    }
    return s;
}

inline std::string matrix_string(const SkewMatrix& l) {
    std::string s = "L";
    for (std::size_t i = 0; i < l.size(); ++i) {
        s += "[";
        for (std::size_t j = 0; j < l.size(); ++j) s += std::to_string(l.at(i, j)) + ",";
        s += "]";
    }
    return s;
}

template <class Seed>
std::vector<std::string> variable_keys(const Seed& s) {
    std::vector<std::string> keys;
    for (const auto& x : s.vars) keys.push_back(key_string(x));
    return keys;
}

} // namespace detail

/// The seed in canonical labeling together with its key.
inline std::pair<ClassicalSeed, CanonicalKey> canonicalize(const ClassicalSeed& s) {
    const auto keys = detail::variable_keys(s);
    const auto perm = detail::canonical_permutation(s.b, keys);
    ClassicalSeed out{detail::permute(s.b, perm), detail::permute(s.vars, perm)};
    std::string bytes = "C" + detail::matrix_string(out.b) + "V";
    for (auto i : perm) bytes += keys[i] + "|";
    return {std::move(out), CanonicalKey{std::move(bytes)}};
}

inline std::pair<QuantumSeed, CanonicalKey> canonicalize(const QuantumSeed& s) {
    const auto keys = detail::variable_keys(s);
    const auto perm = detail::canonical_permutation(s.b, keys);
    std::vector<std::int64_t> d(s.d.d.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = s.d.d[s.b.column_of(perm[s.ex()[j]])];
    QuantumSeed out{detail::permute(s.lambda, perm), detail::permute(s.b, perm), detail::permute(s.vars, perm),
                    SkewSymmetrizer{std::move(d)}};
    std::string bytes = "Q" + detail::matrix_string(out.b) + detail::matrix_string(out.lambda) + "V";
    for (auto i : perm) bytes += keys[i] + "|";
    return {std::move(out), CanonicalKey{std::move(bytes)}};
}

template <class Seed>
CanonicalKey canonical_key(const Seed& s) {
    return canonicalize(s).second;
}

enum class ExploreStatus { closed, capped_by_seeds, capped_by_depth };

inline const char* to_string(ExploreStatus s) {
    switch (s) {
    case ExploreStatus::closed: return "Closed";
    case ExploreStatus::capped_by_seeds: return "CappedBySeeds";
    case ExploreStatus::capped_by_depth: return "CappedByDepth";
    }
    return "?";
}

struct ExploreLimits {
    std::size_t max_seeds = 10000;
    std::size_t max_depth = 32;
    /// Worker threads for frontier expansion; 0 picks hardware concurrency.
    unsigned threads = 0;
};

template <class Seed>
struct ExchangeGraph {
    struct Node {
        Seed seed;
        CanonicalKey key;
        std::size_t depth = 0;
        std::optional<std::size_t> parent;
        std::optional<std::size_t> parent_direction;
    };
    /// Directed edge: mutating node `from` in direction `direction` gives node `to`.
    struct Edge {
        std::size_t from;
        std::size_t direction;
        std::size_t to;

        friend auto operator<=>(const Edge&, const Edge&) = default;
    };

    std::vector<Node> nodes;
    std::vector<Edge> edges;
    ExploreStatus status = ExploreStatus::closed;

    std::optional<std::size_t> find(const CanonicalKey& key) const {
        auto it = index.find(key.bytes);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }

    /// Mutation path (directions) from the root to node i.
    std::vector<std::size_t> path_to(std::size_t i) const {
        std::vector<std::size_t> path;
        while (nodes[i].parent) {
            path.push_back(*nodes[i].parent_direction);
            i = *nodes[i].parent;
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    /// Distinct exchangeable cluster variables over all nodes.
    std::size_t cluster_variable_count() const {
        std::unordered_set<std::string> seen;
        for (const auto& n : nodes)
            for (auto i : n.seed.ex()) seen.insert(key_string(n.seed.vars[i]));
        return seen.size();
    }

    std::unordered_map<std::string, std::size_t> index;
};

namespace detail {

template <class Seed>
struct Child {
    std::size_t from;
    std::size_t direction;
    std::optional<std::pair<Seed, CanonicalKey>> result;
    std::optional<mutation_failure> failure;
};

template <class Seed>
void expand(const std::vector<typename ExchangeGraph<Seed>::Node>& nodes, std::vector<Child<Seed>>& jobs,
            std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        auto& job = jobs[i];
        try {
            job.result = canonicalize(mutate(nodes[job.from].seed, job.direction));
        } catch (const mutation_failure& e) {
            job.failure = e;
        }
    }
}

} // namespace detail

/// Breadth-first closure of `root` under all mutations, deduplicated by
/// canonical key. Children are generated in ascending direction per node and
/// committed in frontier order, so the result is independent of `threads`.
/// Throws mutation_failure (with the path from the root) on a non-Laurent
/// exchange.
template <class Seed>
ExchangeGraph<Seed> explore(const Seed& root, const ExploreLimits& limits = {}) {
    using Graph = ExchangeGraph<Seed>;
    Graph g;
    auto [canon, key] = canonicalize(root);
    g.index.emplace(key.bytes, 0);
    g.nodes.push_back({std::move(canon), std::move(key), 0, std::nullopt, std::nullopt});
    if (limits.max_seeds == 0) {
        g.status = ExploreStatus::capped_by_seeds;
        return g;
    }

    unsigned threads = limits.threads ? limits.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::size_t> frontier{0};
    for (std::size_t depth = 0; !frontier.empty(); ++depth) {
        if (depth >= limits.max_depth) {
            g.status = ExploreStatus::capped_by_depth;
            break;
        }
        std::vector<detail::Child<Seed>> jobs;
        for (auto u : frontier)
            for (auto k : g.nodes[u].seed.ex()) jobs.push_back({u, k, std::nullopt, std::nullopt});

        const std::size_t workers = std::min<std::size_t>(threads, jobs.size());
        if (workers <= 1) {
            detail::expand<Seed>(g.nodes, jobs, 0, jobs.size());
        } else {
            std::vector<std::future<void>> tasks;
            const std::size_t chunk = (jobs.size() + workers - 1) / workers;
            for (std::size_t b = 0; b < jobs.size(); b += chunk)
                tasks.push_back(std::async(std::launch::async, [&, b] {
                    detail::expand<Seed>(g.nodes, jobs, b, std::min(jobs.size(), b + chunk));
                }));
            for (auto& t : tasks) t.get();
        }

        std::vector<std::size_t> next;
        for (auto& job : jobs) {
            if (job.failure) {
                auto path = g.path_to(job.from);
                path.push_back(job.direction);
                job.failure->set_path(std::move(path));
                throw *job.failure;
            }
            auto& [child, child_key] = *job.result;
            if (auto existing = g.find(child_key)) {
                g.edges.push_back({job.from, job.direction, *existing});
                continue;
            }
            if (g.nodes.size() >= limits.max_seeds) {
                g.status = ExploreStatus::capped_by_seeds;
                std::sort(g.edges.begin(), g.edges.end());
                return g;
            }
            const std::size_t id = g.nodes.size();
            g.index.emplace(child_key.bytes, id);
            g.nodes.push_back({std::move(child), std::move(child_key), depth + 1, job.from, job.direction});
            g.edges.push_back({job.from, job.direction, id});
            next.push_back(id);
        }
        frontier = std::move(next);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

/// One produced (or initial) variable in a Laurent report.
struct LaurentRow {
    std::size_t step = 0;                   ///< 0 for the initial generators
    std::optional<std::size_t> direction;   ///< mutation direction, absent for step 0
    std::size_t index = 0;                  ///< position of the variable in the seed
    bool laurent = true;                    ///< exact division succeeded
    std::vector<Exponent> support;
    Exponent denominator;                   ///< x^denominator clears all negative exponents
    std::string error;
};

template <class Seed>
struct LaurentReport {
    std::vector<LaurentRow> rows;
    bool completed = true;
    Seed final_seed;

    bool all_laurent() const {
        return std::all_of(rows.begin(), rows.end(), [](const LaurentRow& r) { return r.laurent; });
    }
};

namespace detail {

template <class Element>
LaurentRow describe(const Element& x, std::size_t m) {
    LaurentRow row;
    for (const auto& [a, c] : x.terms()) row.support.push_back(a);
    row.denominator = min_exponent(x, m);
    for (auto& e : row.denominator) e = e < 0 ? -e : 0;
    return row;
}

} // namespace detail

/// Applies `sequence` (0-based exchangeable indices) to `root`, recording each
/// produced variable. A failed exchange is recorded as a non-Laurent row and
/// ends the run; it is never swallowed silently.
template <class Seed>
LaurentReport<Seed> laurent_report(const Seed& root, const std::vector<std::size_t>& sequence) {
    for (auto k : sequence)
        if (!root.b.is_exchangeable(k)) throw invalid_direction(k);
    LaurentReport<Seed> report;
    report.final_seed = root;
    const std::size_t m = root.m();
    for (std::size_t i = 0; i < m; ++i) {
        LaurentRow row = detail::describe(root.vars[i], m);
        row.index = i;
        report.rows.push_back(std::move(row));
    }
    for (std::size_t step = 0; step < sequence.size(); ++step) {
        const std::size_t k = sequence[step];
        try {
            report.final_seed = mutate(report.final_seed, k);
        } catch (const mutation_failure& e) {
            LaurentRow row;
            row.step = step + 1;
            row.direction = k;
            row.index = k;
            row.laurent = false;
            row.error = e.what();
            report.rows.push_back(std::move(row));
            report.completed = false;
            return report;
        }
        LaurentRow row = detail::describe(report.final_seed.vars[k], m);
        row.step = step + 1;
        row.direction = k;
        row.index = k;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace qcluster
