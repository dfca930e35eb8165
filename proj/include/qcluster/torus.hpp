#pragma once

// The based quantum torus and its commutative shadow.
//
// A TorusElement is a finite Z[q^{±1/2}]-combination of normalized monomials
// X^a, a in Z^m, relative to a skew-symmetric integer matrix Lambda. The
// normalized monomial is the basis vector itself; it relates to the ordered
// product by
//
//     X^a = q^{(1/2) sum_{i>j} lambda_ij a_i a_j} X_1^{a_1} ... X_m^{a_m},
//
// and basis elements multiply as X^a X^b = q^{Lambda(a,b)/2} X^{a+b} with
// Lambda(a,b) = sum_{i,j} lambda_ij a_i b_j.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "qring.hpp"

namespace qcluster {

using Exponent = std::vector<std::int64_t>;

/// Graded lexicographic order: total degree first, then lexicographic.
/// Compatible with addition on Z^m, so leading terms of a product are the
/// products of leading terms.
struct GradedLex {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const auto da = std::accumulate(a.begin(), a.end(), std::int64_t{0});
        const auto db = std::accumulate(b.begin(), b.end(), std::int64_t{0});
        if (da != db) return da < db;
        return a < b;
    }
};

inline Exponent unit_vector(std::size_t m, std::size_t i) {
    Exponent e(m, 0);
    e.at(i) = 1;
    return e;
}

inline Exponent operator+(const Exponent& a, const Exponent& b) {
    Exponent out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Exponent operator-(const Exponent& a, const Exponent& b) {
    Exponent out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

/// Skew-symmetric integer m x m matrix.
class SkewMatrix {
public:
    SkewMatrix() = default;

    explicit SkewMatrix(std::size_t m) : m_(m), entries_(m * m, 0) {}

    explicit SkewMatrix(const std::vector<std::vector<std::int64_t>>& rows) : SkewMatrix(rows.size()) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (rows[i].size() != m_) throw dimension_error("Lambda must be square");
            for (std::size_t j = 0; j < m_; ++j) entries_[i * m_ + j] = rows[i][j];
        }
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = i; j < m_; ++j)
                if (at(i, j) != -at(j, i))
                    throw invalid_seed("Lambda is not skew-symmetric at (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ")");
    }

    std::size_t size() const noexcept { return m_; }
    std::int64_t at(std::size_t i, std::size_t j) const { return entries_[i * m_ + j]; }

    /// Sets lambda_ij and lambda_ji = -value together.
    void set(std::size_t i, std::size_t j, std::int64_t value) {
        entries_[i * m_ + j] = value;
        entries_[j * m_ + i] = -value;
    }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](auto x) { return x == 0; });
    }

    std::vector<std::vector<std::int64_t>> rows() const {
        std::vector<std::vector<std::int64_t>> out(m_, std::vector<std::int64_t>(m_));
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < m_; ++j) out[i][j] = at(i, j);
        return out;
    }

    friend bool operator==(const SkewMatrix&, const SkewMatrix&) = default;

private:
    std::size_t m_ = 0;
    std::vector<std::int64_t> entries_;
};

/// Lambda(a, b) = sum_{i,j} lambda_ij a_i b_j
inline std::int64_t skew_form(const SkewMatrix& lambda, std::span<const std::int64_t> a,
                              std::span<const std::int64_t> b) {
    const std::size_t m = lambda.size();
    if (a.size() != m || b.size() != m) throw dimension_error("exponent length does not match Lambda");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        std::int64_t row = 0;
        for (std::size_t j = 0; j < m; ++j) row += lambda.at(i, j) * b[j];
        s += a[i] * row;
    }
    return s;
}

/// Exponent of v = q^{1/2} in X^a = v^{p} X_1^{a_1}...X_m^{a_m}: p = sum_{i>j} lambda_ij a_i a_j.
inline std::int64_t ordered_product_shift(const SkewMatrix& lambda, std::span<const std::int64_t> a) {
    if (a.size() != lambda.size()) throw dimension_error("exponent length does not match Lambda");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) s += lambda.at(i, j) * a[i] * a[j];
    return s;
}

namespace detail {

template <class Coeff>
using TermMap = std::map<Exponent, Coeff, GradedLex>;

inline bool coeff_is_zero(const BigInt& c) { return c == 0; }
inline bool coeff_is_zero(const QLaurent& c) { return c.is_zero(); }

template <class Coeff>
void add_term(TermMap<Coeff>& terms, const Exponent& e, const Coeff& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (coeff_is_zero(it->second)) terms.erase(it);
    }
}

/// Bilinear product; twist(a, b, c) turns the plain coefficient product c of
/// the basis pair (a, b) into the coefficient of X^{a+b}.
template <class Coeff, class Twist>
TermMap<Coeff> multiply(const TermMap<Coeff>& f, const TermMap<Coeff>& g, Twist twist) {
    TermMap<Coeff> out;
    for (const auto& [a, ca] : f)
        for (const auto& [b, cb] : g) add_term(out, a + b, twist(a, b, ca * cb));
    return out;
}

template <class Coeff>
std::pair<Exponent, Exponent> bounding_box(const TermMap<Coeff>& f, std::size_t m) {
    Exponent lo(m), hi(m);
    bool first = true;
    for (const auto& [a, c] : f) {
        for (std::size_t i = 0; i < m; ++i) {
            lo[i] = first ? a[i] : std::min(lo[i], a[i]);
            hi[i] = first ? a[i] : std::max(hi[i], a[i]);
        }
        first = false;
    }
    return {lo, hi};
}

enum class Side { right, left };

/// Exact division by greedy leading-term elimination in graded-lex order.
///
/// Side::right solves h*g = f, Side::left solves g*h = f. `solve(target, a, b, cb)`
/// returns the coefficient c with twist(c*cb) == target for the basis pair in the
/// product order, or nullopt. Quotient exponents are confined to the box
/// [min f - min g, max f - max g] (degrees in each coordinate are additive in a
/// domain), which makes the loop finite when no quotient exists.
template <class Coeff, class Twist, class Solve>
std::optional<TermMap<Coeff>> divide(const TermMap<Coeff>& f, const TermMap<Coeff>& g, std::size_t m, Side side,
                                     Twist twist, Solve solve) {
    if (g.empty()) throw division_by_zero();
    if (f.empty()) return TermMap<Coeff>{};
    const auto [f_lo, f_hi] = bounding_box(f, m);
    const auto [g_lo, g_hi] = bounding_box(g, m);
    const Exponent q_lo = f_lo - g_lo;
    const Exponent q_hi = f_hi - g_hi;
    for (std::size_t i = 0; i < m; ++i)
        if (q_lo[i] > q_hi[i]) return std::nullopt;

    const auto& [g_lead, g_coeff] = *g.rbegin();
    TermMap<Coeff> rem = f;
    TermMap<Coeff> quotient;
    while (!rem.empty()) {
        const auto& [r_lead, r_coeff] = *rem.rbegin();
        Exponent a = r_lead - g_lead;
        for (std::size_t i = 0; i < m; ++i)
            if (a[i] < q_lo[i] || a[i] > q_hi[i]) return std::nullopt;
        std::optional<Coeff> c =
            side == Side::right ? solve(r_coeff, a, g_lead, g_coeff) : solve(r_coeff, g_lead, a, g_coeff);
        if (!c) return std::nullopt;
        TermMap<Coeff> term;
        term.emplace(a, *c);
        const TermMap<Coeff> prod = side == Side::right ? multiply(term, g, twist) : multiply(g, term, twist);
        for (const auto& [e, pc] : prod) add_term(rem, e, Coeff(-pc));
        quotient.emplace(std::move(a), std::move(*c));
    }
    return quotient;
}

} // namespace detail

class CommLaurent;

/// Element of the quantum torus attached to a fixed frame Lambda.
class TorusElement {
public:
    using Frame = std::shared_ptr<const SkewMatrix>;
    using TermMap = detail::TermMap<QLaurent>;

    TorusElement() = default;
    explicit TorusElement(Frame frame) : frame_(std::move(frame)) {}

    static Frame make_frame(SkewMatrix lambda) { return std::make_shared<const SkewMatrix>(std::move(lambda)); }

    /// coeff * X^a
    static TorusElement monomial(Frame frame, Exponent a, QLaurent coeff = QLaurent(1)) {
        if (a.size() != frame->size()) throw dimension_error("exponent length does not match Lambda");
        TorusElement out(std::move(frame));
        if (!coeff.is_zero()) out.terms_.emplace(std::move(a), std::move(coeff));
        return out;
    }

    static TorusElement one(Frame frame) {
        const std::size_t m = frame->size();
        return monomial(std::move(frame), Exponent(m, 0));
    }

    static TorusElement generator(Frame frame, std::size_t i) {
        const std::size_t m = frame->size();
        return monomial(std::move(frame), unit_vector(m, i));
    }

    static TorusElement from_terms(Frame frame, TermMap terms) {
        TorusElement out(std::move(frame));
        for (auto& [a, c] : terms) {
            if (a.size() != out.rank()) throw dimension_error("exponent length does not match Lambda");
            if (!c.is_zero()) out.terms_.emplace(a, std::move(c));
        }
        return out;
    }

    const Frame& frame() const noexcept { return frame_; }
    const SkewMatrix& lambda() const { return *frame_; }
    std::size_t rank() const { return frame_ ? frame_->size() : 0; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    QLaurent coefficient(const Exponent& a) const {
        auto it = terms_.find(a);
        return it == terms_.end() ? QLaurent{} : it->second;
    }

    bool same_frame(const TorusElement& g) const {
        return frame_ == g.frame_ || (frame_ && g.frame_ && *frame_ == *g.frame_);
    }

    TorusElement& operator+=(const TorusElement& g) {
        require_frame(g);
        for (const auto& [a, c] : g.terms_) detail::add_term(terms_, a, c);
        return *this;
    }
    TorusElement& operator-=(const TorusElement& g) {
        require_frame(g);
        for (const auto& [a, c] : g.terms_) detail::add_term(terms_, a, QLaurent(-c));
        return *this;
    }
    friend TorusElement operator+(TorusElement f, const TorusElement& g) { return f += g; }
    friend TorusElement operator-(TorusElement f, const TorusElement& g) { return f -= g; }

    /// Scalars from Z[q^{±1/2}] are central.
    friend TorusElement operator*(const QLaurent& s, const TorusElement& f) {
        TorusElement out(f.frame_);
        if (s.is_zero()) return out;
        for (const auto& [a, c] : f.terms_) out.terms_.emplace_hint(out.terms_.end(), a, s * c);
        return out;
    }

    friend TorusElement operator*(const TorusElement& f, const TorusElement& g) {
        f.require_frame(g);
        const SkewMatrix& lambda = *f.frame_;
        TorusElement out(f.frame_);
        out.terms_ = detail::multiply(f.terms_, g.terms_, [&](const Exponent& a, const Exponent& b, QLaurent c) {
            return c.shifted(skew_form(lambda, a, b));
        });
        return out;
    }

    friend bool operator==(const TorusElement& f, const TorusElement& g) {
        return f.same_frame(g) && f.terms_ == g.terms_;
    }

private:
    void require_frame(const TorusElement& g) const {
        if (!same_frame(g)) throw frame_mismatch();
    }

    friend std::optional<TorusElement> try_exact_div(const TorusElement&, const TorusElement&, detail::Side);

    Frame frame_;
    TermMap terms_;
};

inline std::optional<TorusElement> try_exact_div(const TorusElement& f, const TorusElement& g, detail::Side side) {
    f.require_frame(g);
    const SkewMatrix& lambda = *f.frame_;
    auto twist = [&](const Exponent& a, const Exponent& b, QLaurent c) { return c.shifted(skew_form(lambda, a, b)); };
    // c * cb * v^{Lambda(a,b)} = target
    auto solve = [&](const QLaurent& target, const Exponent& a, const Exponent& b,
                     const QLaurent& cb) -> std::optional<QLaurent> {
        return try_exact_div(target.shifted(-skew_form(lambda, a, b)), cb);
    };
    auto q = detail::divide(f.terms_, g.terms_, f.rank(), side, twist, solve);
    if (!q) return std::nullopt;
    return TorusElement::from_terms(f.frame_, std::move(*q));
}

/// h with h * g == f.
inline TorusElement exact_div_right(const TorusElement& f, const TorusElement& g) {
    if (auto h = try_exact_div(f, g, detail::Side::right)) return std::move(*h);
    throw not_divisible("torus element is not right-divisible");
}

/// h with g * h == f.
inline TorusElement exact_div_left(const TorusElement& f, const TorusElement& g) {
    if (auto h = try_exact_div(f, g, detail::Side::left)) return std::move(*h);
    throw not_divisible("torus element is not left-divisible");
}

inline TorusElement bar(const TorusElement& f) {
    TorusElement::TermMap out;
    for (const auto& [a, c] : f.terms()) out.emplace(a, bar(c));
    return TorusElement::from_terms(f.frame(), std::move(out));
}

inline TorusElement power(const TorusElement& f, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("negative power of a torus element");
    TorusElement out = TorusElement::one(f.frame());
    for (std::int64_t i = 0; i < n; ++i) out = out * f;
    return out;
}

/// The integer l with f*g = q^l * g*f, if f and g quasi-commute.
inline std::optional<std::int64_t> quasi_commutation(const TorusElement& f, const TorusElement& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("quasi-commutation of a zero element");
    const TorusElement fg = f * g;
    const TorusElement gf = g * f;
    // Both products share the leading exponent; their leading coefficients
    // must differ by an even power of v.
    const QLaurent& c1 = fg.terms().rbegin()->second;
    const QLaurent& c2 = gf.terms().rbegin()->second;
    const std::int64_t shift = c1.degree() - c2.degree();
    if (shift % 2 != 0) return std::nullopt;
    if (QLaurent::monomial(shift) * gf == fg) return shift / 2;
    return std::nullopt;
}

/// Componentwise minimum of the exponent support (zero vector for zero).
template <class Element>
Exponent min_exponent(const Element& f, std::size_t m) {
    if (f.is_zero()) return Exponent(m, 0);
    return detail::bounding_box(f.terms(), m).first;
}

/// Commutative Laurent polynomial over Z in m variables.
class CommLaurent {
public:
    using TermMap = detail::TermMap<BigInt>;

    CommLaurent() = default;
    explicit CommLaurent(std::size_t m) : m_(m) {}

    static CommLaurent monomial(Exponent a, BigInt coeff = 1) {
        CommLaurent out(a.size());
        if (coeff != 0) out.terms_.emplace(std::move(a), std::move(coeff));
        return out;
    }
    static CommLaurent one(std::size_t m) { return monomial(Exponent(m, 0)); }
    static CommLaurent generator(std::size_t m, std::size_t i) { return monomial(unit_vector(m, i)); }

    static CommLaurent from_terms(std::size_t m, TermMap terms) {
        CommLaurent out(m);
        for (auto& [a, c] : terms) {
            if (a.size() != m) throw dimension_error("exponent length mismatch");
            if (c != 0) out.terms_.emplace(a, std::move(c));
        }
        return out;
    }

    std::size_t rank() const noexcept { return m_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    CommLaurent& operator+=(const CommLaurent& g) {
        require_rank(g);
        for (const auto& [a, c] : g.terms_) detail::add_term(terms_, a, c);
        return *this;
    }
    CommLaurent& operator-=(const CommLaurent& g) {
        require_rank(g);
        for (const auto& [a, c] : g.terms_) detail::add_term(terms_, a, BigInt(-c));
        return *this;
    }
    friend CommLaurent operator+(CommLaurent f, const CommLaurent& g) { return f += g; }
    friend CommLaurent operator-(CommLaurent f, const CommLaurent& g) { return f -= g; }

    friend CommLaurent operator*(const CommLaurent& f, const CommLaurent& g) {
        f.require_rank(g);
        CommLaurent out(f.m_);
        out.terms_ = detail::multiply(f.terms_, g.terms_, [](const Exponent&, const Exponent&, BigInt c) { return c; });
        return out;
    }

    friend bool operator==(const CommLaurent&, const CommLaurent&) = default;

private:
    void require_rank(const CommLaurent& g) const {
        if (m_ != g.m_) throw dimension_error("Laurent polynomials in different numbers of variables");
    }

    friend std::optional<CommLaurent> try_exact_div(const CommLaurent&, const CommLaurent&);

    std::size_t m_ = 0;
    TermMap terms_;
};

inline std::optional<CommLaurent> try_exact_div(const CommLaurent& f, const CommLaurent& g) {
    f.require_rank(g);
    auto twist = [](const Exponent&, const Exponent&, BigInt c) { return c; };
    auto solve = [](const BigInt& target, const Exponent&, const Exponent&, const BigInt& cb) -> std::optional<BigInt> {
        BigInt q, r;
        boost::multiprecision::divide_qr(target, cb, q, r);
        if (r != 0) return std::nullopt;
        return q;
    };
    auto q = detail::divide(f.terms_, g.terms_, f.m_, detail::Side::right, twist, solve);
    if (!q) return std::nullopt;
    return CommLaurent::from_terms(f.m_, std::move(*q));
}

inline CommLaurent exact_div(const CommLaurent& f, const CommLaurent& g) {
    if (auto h = try_exact_div(f, g)) return std::move(*h);
    throw not_divisible("Laurent polynomial is not divisible");
}

inline CommLaurent power(const CommLaurent& f, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("negative power of a Laurent polynomial");
    CommLaurent out = CommLaurent::one(f.rank());
    for (std::int64_t i = 0; i < n; ++i) out = out * f;
    return out;
}

/// The commutative shadow at q = 1.
inline CommLaurent specialize_q1(const TorusElement& f) {
    CommLaurent::TermMap out;
    for (const auto& [a, c] : f.terms()) {
        BigInt s = eval_at_one(c);
        if (s != 0) out.emplace(a, std::move(s));
    }
    return CommLaurent::from_terms(f.rank(), std::move(out));
}

namespace detail {

inline std::string exponent_string(const Exponent& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s + ")";
}

template <class Coeff, class Render>
std::string render_terms(const TermMap<Coeff>& terms, Render render) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        if (!first) out += " + ";
        first = false;
        out += render(it->second) + "*X^" + exponent_string(it->first);
    }
    return out;
}

} // namespace detail

inline std::string to_string(const TorusElement& f) {
    return detail::render_terms(f.terms(), [](const QLaurent& c) { return "(" + to_string(c) + ")"; });
}

inline std::string to_string(const CommLaurent& f) {
    return detail::render_terms(f.terms(), [](const BigInt& c) { return c.str(); });
}

/// Compact deterministic serialization used for canonical keys.
inline std::string key_string(const TorusElement& f) {
    std::string out;
    for (const auto& [a, c] : f.terms()) {
        out += detail::exponent_string(a) + "{";
        for (const auto& [e, k] : c.terms()) out += std::to_string(e) + ":" + k.str() + ";";
        out += "}";
    }
    return out;
}

inline std::string key_string(const CommLaurent& f) {
    std::string out;
    for (const auto& [a, c] : f.terms()) out += detail::exponent_string(a) + "{" + c.str() + "}";
    return out;
}

} // namespace qcluster
