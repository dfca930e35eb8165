#pragma once

// Test-only oracles and random generators. Nothing here calls the library's
// multiplication rule, mutation formulas or canonical form; each oracle
// recomputes its answer by a different route.

#include <qcluster/qcluster.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qcluster::testing {

// ---------------------------------------------------------------------------
// Word-rewriting quantum torus. A monomial is a word of letters (i, +1/-1);
// bubble-sorting it into X_1^{a_1}...X_m^{a_m} order with X_i X_j = q^{l_ij} X_j X_i
// accumulates the power of v = q^{1/2}.

struct Letter {
    std::size_t index;
    int sign;
};

/// Normal-orders a word; returns (v-exponent, exponent vector).
inline std::pair<std::int64_t, Exponent> normal_order(std::vector<Letter> word, const SkewMatrix& lambda) {
    std::int64_t v = 0;
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t p = 0; p + 1 < word.size(); ++p) {
            const Letter a = word[p];
            const Letter b = word[p + 1];
            if (a.index > b.index) {
                // X_a^s X_b^t = q^{l_ab s t} X_b^t X_a^s
                v += 2 * lambda.at(a.index, b.index) * a.sign * b.sign;
                std::swap(word[p], word[p + 1]);
                swapped = true;
            }
        }
    }
    Exponent e(lambda.size(), 0);
    for (const auto& l : word) e[l.index] += l.sign;
    return {v, e};
}

inline std::vector<Letter> ordered_word(const Exponent& a) {
    std::vector<Letter> w;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::int64_t r = 0; r < std::abs(a[i]); ++r) w.push_back({i, a[i] > 0 ? 1 : -1});
    return w;
}

/// v-exponent p with X^a = v^p X_1^{a_1}...X_m^{a_m}, straight from the definition.
inline std::int64_t normalization(const SkewMatrix& lambda, const Exponent& a) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) s += lambda.at(i, j) * a[i] * a[j];
    return s;
}

/// Power of v in X^a * X^b = v^r X^{a+b}, computed by rewriting words.
inline std::int64_t product_twist_by_rewriting(const SkewMatrix& lambda, const Exponent& a, const Exponent& b) {
    auto word = ordered_word(a);
    auto wb = ordered_word(b);
    word.insert(word.end(), wb.begin(), wb.end());
    const auto [v, c] = normal_order(std::move(word), lambda);
    return normalization(lambda, a) + normalization(lambda, b) + v - normalization(lambda, c);
}

/// Full product of torus elements via the rewriting oracle.
inline TorusElement multiply_by_rewriting(const TorusElement& f, const TorusElement& g) {
    TorusElement out(f.frame());
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) {
            const std::int64_t r = product_twist_by_rewriting(f.lambda(), a, b);
            out += TorusElement::monomial(f.frame(), a + b, QLaurent::monomial(r) * ca * cb);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Matrix oracles.

/// Mutation via b'_ij = b_ij + sgn(b_ik) max(b_ik b_kj, 0) away from row/column k.
inline IntRows mutate_by_sign_rule(const ExchangeMatrix& b, std::size_t k) {
    IntRows out = b.rows();
    const std::size_t kc = b.column_of(k);
    for (std::size_t i = 0; i < b.m(); ++i)
        for (std::size_t c = 0; c < b.n(); ++c) {
            const std::size_t j = b.ex()[c];
            if (i == k || j == k) {
                out[i][c] = -out[i][c];
                continue;
            }
            const std::int64_t bik = b.entry(i, kc);
            const std::int64_t bkj = b.rows()[k][c];
            const std::int64_t sg = (bik > 0) - (bik < 0);
            out[i][c] += sg * std::max<std::int64_t>(bik * bkj, 0);
        }
    return out;
}

/// The n x m matrix B^T Lambda, computed naively.
inline IntRows bt_lambda(const ExchangeMatrix& b, const SkewMatrix& lambda) {
    IntRows p(b.n(), std::vector<std::int64_t>(b.m(), 0));
    for (std::size_t c = 0; c < b.n(); ++c)
        for (std::size_t i = 0; i < b.m(); ++i)
            for (std::size_t k = 0; k < b.m(); ++k) p[c][i] += b.rows()[k][c] * lambda.at(k, i);
    return p;
}

// ---------------------------------------------------------------------------
// Random generators (fixed seeds in every test for reproducibility).

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline QLaurent random_qlaurent(Rng& rng, int max_terms = 4, std::int64_t span = 4, std::int64_t coeff = 5) {
    QLaurent f;
    const auto terms = uniform(rng, 0, max_terms);
    for (std::int64_t t = 0; t < terms; ++t) f.add_term(uniform(rng, -span, span), uniform(rng, -coeff, coeff));
    return f;
}

inline QLaurent random_nonzero_qlaurent(Rng& rng) {
    QLaurent f;
    while (f.is_zero()) f = random_qlaurent(rng);
    return f;
}

inline SkewMatrix random_skew(Rng& rng, std::size_t m, std::int64_t bound) {
    SkewMatrix l(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) l.set(i, j, uniform(rng, -bound, bound));
    return l;
}

inline Exponent random_exponent(Rng& rng, std::size_t m, std::int64_t bound) {
    Exponent a(m);
    for (auto& x : a) x = uniform(rng, -bound, bound);
    return a;
}

inline TorusElement random_torus(Rng& rng, const TorusElement::Frame& frame, int max_terms = 3,
                                 std::int64_t bound = 2) {
    TorusElement f(frame);
    const auto terms = uniform(rng, 1, max_terms);
    for (std::int64_t t = 0; t < terms; ++t)
        f += TorusElement::monomial(frame, random_exponent(rng, frame->size(), bound), random_qlaurent(rng, 2, 2, 3));
    return f;
}

inline TorusElement random_nonzero_torus(Rng& rng, const TorusElement::Frame& frame, int max_terms = 3) {
    TorusElement f(frame);
    while (f.is_zero()) f = random_torus(rng, frame, max_terms);
    return f;
}

/// Random skew-symmetrizable n x n matrix with entries in [-bound, bound] and
/// symmetrizer drawn from {1,2,3}.
inline IntRows random_skew_symmetrizable(Rng& rng, std::size_t n, std::int64_t bound) {
    std::vector<std::int64_t> d(n);
    for (auto& x : d) x = uniform(rng, 1, 3);
    IntRows b(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::int64_t bij = uniform(rng, -bound, bound);
            // d_i b_ij = -d_j b_ji
            if ((d[i] * bij) % d[j] != 0) continue;
            const std::int64_t bji = -(d[i] * bij) / d[j];
            if (std::abs(bji) > bound) continue;
            b[i][j] = bij;
            b[j][i] = bji;
        }
    return b;
}

/// Random classical exchange matrix: m <= max_m, 1 <= n <= m, entries in [-bound, bound].
inline ExchangeMatrix random_exchange_matrix(Rng& rng, std::size_t max_m, std::int64_t bound) {
    const auto m = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(max_m)));
    const auto n = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(m)));
    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<std::size_t> ex(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(ex.begin(), ex.end());
    const IntRows p = random_skew_symmetrizable(rng, n, bound);
    IntRows rows(m, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < n; ++c) rows[i][c] = uniform(rng, -bound, bound);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c) rows[ex[a]][c] = p[a][c];
    return ExchangeMatrix(m, std::move(ex), std::move(rows));
}

inline bool entries_within(const ExchangeMatrix& b, std::int64_t bound) {
    for (const auto& r : b.rows())
        for (auto x : r)
            if (std::abs(x) > bound) return false;
    return true;
}

/// Random compatible quantum seed with m <= 5 and B entries in [-bound, bound].
///
/// Starts from a principal-coefficient pair ([B; I], Lambda), optionally adds a
/// frozen index with zero B row and zero Lambda column, applies a random
/// unimodular shear on the frozen coordinates (B -> C^{-1} B, Lambda -> C^T Lambda C
/// with C the identity on ex), and finally a few random mutations. Every step
/// preserves compatibility; candidates with large entries are rejected.
inline QuantumSeed random_quantum_seed(Rng& rng, std::int64_t bound) {
    for (;;) {
        const auto n = static_cast<std::size_t>(uniform(rng, 1, 2));
        const IntRows p = random_skew_symmetrizable(rng, n, bound);
        const SkewSymmetrizer d = find_skew_symmetrizer(p);
        const SkewMatrix l0 = random_skew(rng, n, 1);
        SkewMatrix lambda = principal_lambda(p, l0, d.d);
        IntRows rows = principal_exchange_matrix(p).rows();
        std::size_t m = 2 * n;
        if (uniform(rng, 0, 1) == 1) {
            SkewMatrix bigger(m + 1);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) bigger.set(i, j, lambda.at(i, j));
            lambda = bigger;
            rows.emplace_back(n, 0);
            ++m;
        }
        // shear on frozen coordinates a != b (both >= n): c_a += s e_b ... as C = I + s E_{b a}
        if (m - n >= 2) {
            const auto a = static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(n), static_cast<std::int64_t>(m) - 1));
            auto b = a;
            while (b == a) b = static_cast<std::size_t>(uniform(rng, static_cast<std::int64_t>(n), static_cast<std::int64_t>(m) - 1));
            const std::int64_t s = uniform(rng, -1, 1);
            // C = I + s E_{ba}: column a gains s e_b. C^{-1} B: row b -= s * row a.
            std::vector<Exponent> cols(m);
            for (std::size_t j = 0; j < m; ++j) cols[j] = unit_vector(m, j);
            cols[a][b] += s;
            SkewMatrix sheared(m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) sheared.set(i, j, skew_form(lambda, cols[i], cols[j]));
            lambda = sheared;
            for (std::size_t c = 0; c < n; ++c) rows[b][c] -= s * rows[a][c];
        }
        std::vector<std::size_t> ex(n);
        for (std::size_t i = 0; i < n; ++i) ex[i] = i;
        QuantumSeed s = make_quantum_seed(ExchangeMatrix(m, ex, rows), lambda);
        const auto steps = uniform(rng, 0, 3);
        for (std::int64_t t = 0; t < steps; ++t) {
            const auto k = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(n) - 1));
            s = quantum_mutate(s, k);
        }
        if (!entries_within(s.b, bound)) continue;
        // Restart from the mutated pair so that variables are generators again.
        return make_quantum_seed(s.b, s.lambda);
    }
}

// ---------------------------------------------------------------------------
// Desk-scale corpus.

inline ExchangeMatrix a1() { return ExchangeMatrix(1, {0}, {{0}}); }
inline ExchangeMatrix a2() { return ExchangeMatrix(2, {0, 1}, {{0, 1}, {-1, 0}}); }
inline ExchangeMatrix a3() { return ExchangeMatrix(3, {0, 1, 2}, {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}); }
inline ExchangeMatrix kronecker() { return ExchangeMatrix(2, {0, 1}, {{0, 2}, {-2, 0}}); }
inline ExchangeMatrix m2n1() { return ExchangeMatrix(2, {0}, {{0}, {1}}); }

inline SkewMatrix a2_lambda() { return SkewMatrix({{0, 1}, {-1, 0}}); }
inline SkewMatrix m2n1_lambda() { return SkewMatrix({{0, -1}, {1, 0}}); }

inline QuantumSeed quantum_a2() { return make_quantum_seed(a2(), a2_lambda()); }
inline QuantumSeed quantum_m2n1() { return make_quantum_seed(m2n1(), m2n1_lambda()); }

/// Principal-coefficient quantum seed for a square skew-symmetrizable B.
inline QuantumSeed quantum_principal(const IntRows& b, const SkewMatrix& lambda0) {
    const auto d = find_skew_symmetrizer(b);
    return make_quantum_seed(principal_exchange_matrix(b), principal_lambda(b, lambda0, d.d));
}

inline QuantumSeed quantum_a3_principal() { return quantum_principal(a3().principal(), SkewMatrix(3)); }

} // namespace qcluster::testing
