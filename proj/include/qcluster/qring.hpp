#pragma once

// Exact arithmetic in Z[q^{1/2}, q^{-1/2}].
//
// Elements are Laurent polynomials in v = q^{1/2} with arbitrary-precision
// integer coefficients, stored sparsely by exponent. No zero coefficient is
// ever stored, so structural equality is mathematical equality.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "error.hpp"

namespace qcluster {

using BigInt = boost::multiprecision::cpp_int;

class QLaurent {
public:
    using TermMap = std::map<std::int64_t, BigInt>;

    QLaurent() = default;
    QLaurent(BigInt constant) { // NOLINT(google-explicit-constructor)
        if (constant != 0) terms_.emplace(0, std::move(constant));
    }
    QLaurent(std::int64_t constant) : QLaurent(BigInt(constant)) {} // NOLINT
    QLaurent(int constant) : QLaurent(BigInt(constant)) {}          // NOLINT

    QLaurent(std::initializer_list<std::pair<const std::int64_t, BigInt>> terms) {
        for (const auto& [e, c] : terms) add_term(e, c);
    }

    static QLaurent from_terms(TermMap terms) {
        QLaurent out;
        for (auto it = terms.begin(); it != terms.end();) {
            if (it->second == 0) it = terms.erase(it);
            else ++it;
        }
        out.terms_ = std::move(terms);
        return out;
    }

    /// c * v^e
    static QLaurent monomial(std::int64_t e, BigInt c = 1) {
        QLaurent out;
        if (c != 0) out.terms_.emplace(e, std::move(c));
        return out;
    }

    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Highest / lowest exponent of v. Undefined on zero.
    std::int64_t degree() const { return terms_.rbegin()->first; }
    std::int64_t low_degree() const { return terms_.begin()->first; }

    BigInt coefficient(std::int64_t e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    /// Multiplication by the unit v^k.
    QLaurent shifted(std::int64_t k) const {
        if (k == 0) return *this;
        QLaurent out;
        for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + k, c);
        return out;
    }

    void add_term(std::int64_t e, const BigInt& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    QLaurent& operator+=(const QLaurent& g) {
        for (const auto& [e, c] : g.terms_) add_term(e, c);
        return *this;
    }
    QLaurent& operator-=(const QLaurent& g) {
        for (const auto& [e, c] : g.terms_) add_term(e, -c);
        return *this;
    }

    friend QLaurent operator+(QLaurent f, const QLaurent& g) { return f += g; }
    friend QLaurent operator-(QLaurent f, const QLaurent& g) { return f -= g; }
    friend QLaurent operator-(QLaurent f) {
        for (auto& [e, c] : f.terms_) c = -c;
        return f;
    }

    friend QLaurent operator*(const QLaurent& f, const QLaurent& g) {
        QLaurent out;
        for (const auto& [e1, c1] : f.terms_)
            for (const auto& [e2, c2] : g.terms_) out.add_term(e1 + e2, c1 * c2);
        return out;
    }
    QLaurent& operator*=(const QLaurent& g) { return *this = *this * g; }

    friend bool operator==(const QLaurent&, const QLaurent&) = default;

    /// Total order used only for deterministic sorting (not a ring order).
    friend bool operator<(const QLaurent& f, const QLaurent& g) { return f.terms_ < g.terms_; }

private:
    TermMap terms_;
};

/// v = q^{1/2}
inline QLaurent qhalf() { return QLaurent::monomial(1); }

/// Exact quotient h with h*g == f, or nullopt when it does not exist in Z[v^{±1}].
/// Throws division_by_zero when g is zero.
inline std::optional<QLaurent> try_exact_div(const QLaurent& f, const QLaurent& g) {
    if (g.is_zero()) throw division_by_zero();
    if (f.is_zero()) return QLaurent{};
    const std::int64_t g_hi = g.degree();
    const std::int64_t g_lo = g.low_degree();
    const BigInt& g_lead = g.terms().rbegin()->second;
    // Every quotient exponent lies in [f_lo - g_lo, f_hi - g_hi].
    const std::int64_t q_lo = f.low_degree() - g_lo;
    if (f.degree() - g_hi < q_lo) return std::nullopt;

    QLaurent rem = f;
    QLaurent::TermMap quotient;
    while (!rem.is_zero()) {
        const auto& [e, c] = *rem.terms().rbegin();
        const std::int64_t qe = e - g_hi;
        if (qe < q_lo) return std::nullopt;
        BigInt r;
        BigInt qc;
        boost::multiprecision::divide_qr(c, g_lead, qc, r);
        if (r != 0) return std::nullopt;
        for (const auto& [ge, gc] : g.terms()) rem.add_term(ge + qe, -(qc * gc));
        quotient.emplace(qe, std::move(qc));
    }
    return QLaurent::from_terms(std::move(quotient));
}

inline QLaurent exact_div(const QLaurent& f, const QLaurent& g) {
    if (auto h = try_exact_div(f, g)) return std::move(*h);
    throw not_divisible("Laurent polynomial in q^{1/2} is not divisible");
}

/// The bar involution v -> v^{-1}.
inline QLaurent bar(const QLaurent& f) {
    QLaurent::TermMap out;
    for (const auto& [e, c] : f.terms()) out.emplace(-e, c);
    return QLaurent::from_terms(std::move(out));
}

/// Specialization q = 1.
inline BigInt eval_at_one(const QLaurent& f) {
    BigInt s = 0;
    for (const auto& [e, c] : f.terms()) s += c;
    return s;
}

namespace detail {

inline std::string power_of_q(std::int64_t v_exp) {
    if (v_exp == 0) return {};
    if (v_exp == 2) return "q";
    if (v_exp % 2 == 0) return "q^(" + std::to_string(v_exp / 2) + ")";
    return "q^(" + std::to_string(v_exp) + "/2)";
}

} // namespace detail

/// Human-readable rendering with explicit q^(p/2) powers, highest power first.
inline std::string to_string(const QLaurent& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        const std::string q = detail::power_of_q(e);
        if (q.empty()) out += mag.str();
        else if (mag == 1) out += q;
        else out += mag.str() + "*" + q;
    }
    return out;
}

} // namespace qcluster
