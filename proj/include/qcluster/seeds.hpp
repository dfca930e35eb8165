#pragma once

// Exchange matrices, skew-symmetrizers, compatibility with Lambda, matrix and
// Lambda mutation, principal-coefficient Lambda, and seed constructors.
//
// Indices are 0-based throughout the library; the I/O layer converts to the
// 1-based labels of [1,m].

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "error.hpp"
#include "torus.hpp"

namespace qcluster {

using IntRows = std::vector<std::vector<std::int64_t>>;

/// Positive integers d_j, one per exchangeable column (in ex order).
struct SkewSymmetrizer {
    std::vector<std::int64_t> d;

    friend bool operator==(const SkewSymmetrizer&, const SkewSymmetrizer&) = default;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exchange matrix entry overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exchange matrix entry overflow");
    return r;
}

inline std::string pos(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

} // namespace detail

/// Minimal positive d with d_i b_ij = -d_j b_ji on a square principal part.
///
/// Ratios d_j / d_i are propagated along the graph of nonzero entries; each
/// connected component is then scaled to coprime positive integers.
inline SkewSymmetrizer find_skew_symmetrizer(const IntRows& principal) {
    using boost::multiprecision::cpp_rational;
    using boost::multiprecision::cpp_int;
    const std::size_t n = principal.size();
    for (const auto& row : principal)
        if (row.size() != n) throw dimension_error("principal part must be square");

    for (std::size_t i = 0; i < n; ++i) {
        if (principal[i][i] != 0)
            throw not_symmetrizable("nonzero diagonal entry at " + detail::pos(i, i));
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto a = principal[i][j];
            const auto b = principal[j][i];
            if ((a == 0) != (b == 0) || (a != 0 && (a > 0) == (b > 0)))
                throw not_symmetrizable("sign pattern violated at " + detail::pos(i, j));
        }
    }

    std::vector<std::optional<cpp_rational>> ratio(n);
    std::vector<std::int64_t> d(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (ratio[root]) continue;
        std::vector<std::size_t> component;
        std::queue<std::size_t> todo;
        ratio[root] = cpp_rational(1);
        todo.push(root);
        while (!todo.empty()) {
            const std::size_t i = todo.front();
            todo.pop();
            component.push_back(i);
            for (std::size_t j = 0; j < n; ++j) {
                if (principal[i][j] == 0) continue;
                // d_i b_ij = -d_j b_ji
                cpp_rational dj = -*ratio[i] * principal[i][j] / principal[j][i];
                if (!ratio[j]) {
                    ratio[j] = dj;
                    todo.push(j);
                } else if (*ratio[j] != dj) {
                    throw not_symmetrizable("inconsistent ratio around " + detail::pos(i, j));
                }
            }
        }
        cpp_int den_lcm = 1;
        for (auto i : component) den_lcm = boost::multiprecision::lcm(den_lcm, denominator(*ratio[i]));
        auto scaled = [&](std::size_t i) -> cpp_int {
            return numerator(*ratio[i]) * (den_lcm / denominator(*ratio[i]));
        };
        cpp_int num_gcd = 0;
        for (auto i : component) num_gcd = boost::multiprecision::gcd(num_gcd, scaled(i));
        for (auto i : component) {
            cpp_int v = scaled(i) / num_gcd;
            if (v > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("skew-symmetrizer overflow");
            d[i] = static_cast<std::int64_t>(v);
        }
    }
    return {std::move(d)};
}

/// m x n integer matrix with rows labeled by [0,m) and columns labeled by the
/// sorted exchangeable index set ex. The ex x ex principal part is checked to
/// be skew-symmetrizable on construction.
class ExchangeMatrix {
public:
    ExchangeMatrix() = default;

    ExchangeMatrix(std::size_t m, std::vector<std::size_t> ex, IntRows rows)
        : m_(m), ex_(std::move(ex)), rows_(std::move(rows)) {
        if (ex_.empty()) throw invalid_seed("exchangeable set must be nonempty");
        if (ex_.size() > m_) throw invalid_seed("more exchangeable indices than rows");
        for (std::size_t j = 0; j < ex_.size(); ++j) {
            if (ex_[j] >= m_) throw invalid_seed("exchangeable index out of range");
            if (j > 0 && ex_[j] <= ex_[j - 1]) throw invalid_seed("exchangeable indices must be sorted and distinct");
        }
        if (rows_.size() != m_) throw dimension_error("B must have m rows");
        for (const auto& r : rows_)
            if (r.size() != ex_.size()) throw dimension_error("B must have n columns");
        symmetrizer_ = find_skew_symmetrizer(principal());
    }

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return ex_.size(); }
    const std::vector<std::size_t>& ex() const noexcept { return ex_; }
    const IntRows& rows() const noexcept { return rows_; }

    bool is_exchangeable(std::size_t k) const { return std::binary_search(ex_.begin(), ex_.end(), k); }

    /// Column position of exchangeable index k.
    std::size_t column_of(std::size_t k) const {
        auto it = std::lower_bound(ex_.begin(), ex_.end(), k);
        if (it == ex_.end() || *it != k) throw invalid_direction(k);
        return static_cast<std::size_t>(it - ex_.begin());
    }

    /// b_ik for row i and exchangeable index k.
    std::int64_t at(std::size_t i, std::size_t k) const { return rows_[i][column_of(k)]; }

    /// Entry by column position.
    std::int64_t entry(std::size_t i, std::size_t col) const { return rows_[i][col]; }

    IntRows principal() const {
        IntRows p(ex_.size(), std::vector<std::int64_t>(ex_.size()));
        for (std::size_t a = 0; a < ex_.size(); ++a)
            for (std::size_t b = 0; b < ex_.size(); ++b) p[a][b] = rows_[ex_[a]][b];
        return p;
    }

    /// Minimal skew-symmetrizer of the principal part.
    const SkewSymmetrizer& minimal_symmetrizer() const noexcept { return symmetrizer_; }

    friend bool operator==(const ExchangeMatrix& a, const ExchangeMatrix& b) {
        return a.m_ == b.m_ && a.ex_ == b.ex_ && a.rows_ == b.rows_;
    }

private:
    std::size_t m_ = 0;
    std::vector<std::size_t> ex_;
    IntRows rows_;
    SkewSymmetrizer symmetrizer_;
};

inline SkewSymmetrizer find_skew_symmetrizer(const ExchangeMatrix& b) { return b.minimal_symmetrizer(); }

/// Verifies sum_k b_kj lambda_ki = delta_ij d_j with every d_j > 0 and returns d.
inline SkewSymmetrizer check_compatibility(const ExchangeMatrix& b, const SkewMatrix& lambda) {
    const std::size_t m = b.m();
    if (lambda.size() != m) throw dimension_error("Lambda must be m x m");
    SkewSymmetrizer out;
    for (std::size_t col = 0; col < b.n(); ++col) {
        const std::size_t j = b.ex()[col];
        for (std::size_t i = 0; i < m; ++i) {
            std::int64_t s = 0;
            for (std::size_t k = 0; k < m; ++k) s += b.entry(k, col) * lambda.at(k, i);
            if (i == j) {
                if (s <= 0)
                    throw incompatible(i, j, "diagonal entry at " + detail::pos(i, j) + " is " + std::to_string(s) +
                                                 ", must be positive");
                out.d.push_back(s);
            } else if (s != 0) {
                throw incompatible(i, j, "off-diagonal entry at " + detail::pos(i, j) + " is " + std::to_string(s));
            }
        }
    }
    return out;
}

/// Matrix mutation in direction k (an exchangeable index).
inline ExchangeMatrix matrix_mutate(const ExchangeMatrix& b, std::size_t k) {
    const std::size_t kc = b.column_of(k);
    IntRows out = b.rows();
    for (std::size_t i = 0; i < b.m(); ++i) {
        for (std::size_t col = 0; col < b.n(); ++col) {
            const std::size_t j = b.ex()[col];
            if (i == k || j == k) {
                out[i][col] = -b.entry(i, col);
                continue;
            }
            const std::int64_t bik = b.entry(i, kc);
            const std::int64_t bkj = b.entry(k, col);
            const std::int64_t delta = detail::checked_add(detail::checked_mul(std::abs(bik), bkj),
                                                           detail::checked_mul(bik, std::abs(bkj)));
            out[i][col] = detail::checked_add(b.entry(i, col), delta / 2);
        }
    }
    return ExchangeMatrix(b.m(), b.ex(), std::move(out));
}

/// Which monomial of the quantum exchange relation defines the frame change.
enum class ExchangeTerm { positive, negative };

/// Lambda' = E^T Lambda E, where E has columns c_j = e_j (j != k) and
/// c_k = -e_k + sum_{b_ik > 0} b_ik e_i (or, for ExchangeTerm::negative,
/// -e_k - sum_{b_ik < 0} b_ik e_i).
inline SkewMatrix lambda_mutate(const SkewMatrix& lambda, const ExchangeMatrix& b, std::size_t k,
                                ExchangeTerm term = ExchangeTerm::positive) {
    const std::size_t m = b.m();
    if (lambda.size() != m) throw dimension_error("Lambda must be m x m");
    const std::size_t kc = b.column_of(k);
    std::vector<Exponent> cols(m);
    for (std::size_t j = 0; j < m; ++j) cols[j] = unit_vector(m, j);
    Exponent& ck = cols[k];
    ck.assign(m, 0);
    ck[k] = -1;
    for (std::size_t i = 0; i < m; ++i) {
        const std::int64_t bik = b.entry(i, kc);
        if (term == ExchangeTerm::positive && bik > 0) ck[i] += bik;
        if (term == ExchangeTerm::negative && bik < 0) ck[i] -= bik;
    }
    SkewMatrix out(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) out.set(i, j, skew_form(lambda, cols[i], cols[j]));
    return out;
}

/// The 2n x n matrix [B; I] with ex = first n indices.
inline ExchangeMatrix principal_exchange_matrix(const IntRows& b) {
    const std::size_t n = b.size();
    IntRows rows = b;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::int64_t> r(n, 0);
        r[i] = 1;
        rows.push_back(std::move(r));
    }
    std::vector<std::size_t> ex(n);
    std::iota(ex.begin(), ex.end(), std::size_t{0});
    return ExchangeMatrix(2 * n, std::move(ex), std::move(rows));
}

/// Principal-coefficient Lambda compatible with [B; I]:
///
///   [[ L0,          -D - L0 B       ],
///    [ D - B^T L0,  -D B + B^T L0 B ]]
///
/// Requires D positive diagonal with D B skew-symmetric, and L0 skew-symmetric.
inline SkewMatrix principal_lambda(const IntRows& b, const SkewMatrix& lambda0, const std::vector<std::int64_t>& d) {
    const std::size_t n = b.size();
    if (lambda0.size() != n || d.size() != n) throw dimension_error("B, Lambda0 and D must have matching size n");
    for (const auto& row : b)
        if (row.size() != n) throw dimension_error("B must be square");
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] <= 0) throw invalid_seed("D must have positive diagonal");
        for (std::size_t j = 0; j < n; ++j)
            if (d[i] * b[i][j] != -(d[j] * b[j][i]))
                throw not_symmetrizable("D B is not skew-symmetric at " + detail::pos(i, j));
    }

    auto full = [n](auto&& f) {
        IntRows r(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) r[i][j] = f(i, j);
        return r;
    };
    const IntRows l0b = full([&](std::size_t i, std::size_t j) {
        std::int64_t s = 0;
        for (std::size_t k = 0; k < n; ++k) s += lambda0.at(i, k) * b[k][j];
        return s;
    });
    const IntRows bt_l0b = full([&](std::size_t i, std::size_t j) {
        std::int64_t s = 0;
        for (std::size_t k = 0; k < n; ++k) s += b[k][i] * l0b[k][j];
        return s;
    });

    SkewMatrix out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j > i) out.set(i, j, lambda0.at(i, j));
            // top-right block; the bottom-left block D - B^T L0 is its negated transpose.
            out.set(i, n + j, -(i == j ? d[i] : 0) - l0b[i][j]);
            if (j > i) out.set(n + i, n + j, -d[i] * b[i][j] + bt_l0b[i][j]);
        }
    }
    return out;
}

/// Classical seed: exchange matrix plus the m extended-cluster variables,
/// written as Laurent polynomials in the initial variables.
struct ClassicalSeed {
    ExchangeMatrix b;
    std::vector<CommLaurent> vars;

    std::size_t m() const { return b.m(); }
    const std::vector<std::size_t>& ex() const { return b.ex(); }

    friend bool operator==(const ClassicalSeed&, const ClassicalSeed&) = default;
};

/// Quantum seed. `lambda` is the current quasi-commutation matrix; `vars` live in
/// the torus of the initial seed of the mutation class.
struct QuantumSeed {
    SkewMatrix lambda;
    ExchangeMatrix b;
    std::vector<TorusElement> vars;
    SkewSymmetrizer d;

    std::size_t m() const { return b.m(); }
    const std::vector<std::size_t>& ex() const { return b.ex(); }
    const TorusElement::Frame& frame() const { return vars.front().frame(); }

    friend bool operator==(const QuantumSeed&, const QuantumSeed&) = default;
};

inline ClassicalSeed make_classical_seed(ExchangeMatrix b) {
    ClassicalSeed s{std::move(b), {}};
    for (std::size_t i = 0; i < s.b.m(); ++i) s.vars.push_back(CommLaurent::generator(s.b.m(), i));
    return s;
}

inline QuantumSeed make_quantum_seed(ExchangeMatrix b, SkewMatrix lambda) {
    SkewSymmetrizer d = check_compatibility(b, lambda);
    auto frame = TorusElement::make_frame(lambda);
    QuantumSeed s{std::move(lambda), std::move(b), {}, std::move(d)};
    for (std::size_t i = 0; i < s.b.m(); ++i) s.vars.push_back(TorusElement::generator(frame, i));
    return s;
}

} // namespace qcluster
