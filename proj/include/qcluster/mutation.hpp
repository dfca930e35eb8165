#pragma once

// Classical and quantum seed mutation, with post-mutation verification of the
// quantum-seed axioms.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "seeds.hpp"
#include "torus.hpp"

namespace qcluster {

/// An exchange relation produced a non-Laurent quotient. Carries the exchange
/// matrix of the seed being mutated, the direction, and (when raised from an
/// exploration) the mutation path from the root. Indices are 0-based.
class mutation_failure : public not_divisible {
public:
    mutation_failure(ExchangeMatrix b, std::size_t direction)
        : not_divisible("exchange relation in direction " + std::to_string(direction + 1) +
                        " is not divisible by the current cluster variable"),
          matrix_(std::move(b)), direction_(direction) {}

    const ExchangeMatrix& matrix() const noexcept { return matrix_; }
    std::size_t direction() const noexcept { return direction_; }
    const std::vector<std::size_t>& path() const noexcept { return path_; }
    void set_path(std::vector<std::size_t> path) { path_ = std::move(path); }

private:
    ExchangeMatrix matrix_;
    std::size_t direction_;
    std::vector<std::size_t> path_;
};

/// The two exponent vectors g_+ = sum_{b_ik>0} b_ik e_i and g_- = -sum_{b_ik<0} b_ik e_i.
inline std::pair<Exponent, Exponent> exchange_exponents(const ExchangeMatrix& b, std::size_t k) {
    const std::size_t kc = b.column_of(k);
    Exponent plus(b.m(), 0), minus(b.m(), 0);
    for (std::size_t i = 0; i < b.m(); ++i) {
        const std::int64_t bik = b.entry(i, kc);
        if (bik > 0) plus[i] = bik;
        if (bik < 0) minus[i] = -bik;
    }
    return {std::move(plus), std::move(minus)};
}

inline ClassicalSeed classical_mutate(const ClassicalSeed& s, std::size_t k) {
    const auto [plus, minus] = exchange_exponents(s.b, k);
    const std::size_t m = s.m();
    auto product = [&](const Exponent& g) {
        CommLaurent p = CommLaurent::one(m);
        for (std::size_t i = 0; i < m; ++i)
            if (g[i] != 0) p = p * power(s.vars[i], g[i]);
        return p;
    };
    const CommLaurent numerator = product(plus) + product(minus);
    auto quotient = try_exact_div(numerator, s.vars[k]);
    if (!quotient) throw mutation_failure(s.b, k);

    ClassicalSeed out{matrix_mutate(s.b, k), s.vars};
    out.vars[k] = std::move(*quotient);
    return out;
}

/// Numerator N of the quantum exchange relation, in the initial frame, so that
/// X'_k * vars[k] = N.
///
/// Each term X^{g - e_k} of the relation (normalized with respect to the
/// current Lambda) factors as q^{Lambda(g,e_k)/2} X^g X_k^{-1}, and X^g is the
/// ordered product q^{(1/2) sum_{i>j} lambda_ij g_i g_j} X_1^{g_1}...X_m^{g_m}.
inline TorusElement exchange_numerator(const QuantumSeed& s, std::size_t k) {
    const auto [plus, minus] = exchange_exponents(s.b, k);
    const std::size_t m = s.m();
    const Exponent ek = unit_vector(m, k);
    auto term = [&](const Exponent& g) {
        TorusElement p = TorusElement::one(s.frame());
        for (std::size_t i = 0; i < m; ++i)
            if (g[i] != 0) p = p * power(s.vars[i], g[i]);
        const std::int64_t shift = ordered_product_shift(s.lambda, g) + skew_form(s.lambda, g, ek);
        return QLaurent::monomial(shift) * p;
    };
    return term(plus) + term(minus);
}

inline QuantumSeed quantum_mutate(const QuantumSeed& s, std::size_t k) {
    const TorusElement numerator = exchange_numerator(s, k);
    auto quotient = try_exact_div(numerator, s.vars[k], detail::Side::right);
    if (!quotient) throw mutation_failure(s.b, k);
    if (*quotient * s.vars[k] != numerator)
        throw std::logic_error("quantum exchange relation failed the re-multiplication check");

    QuantumSeed out{lambda_mutate(s.lambda, s.b, k), matrix_mutate(s.b, k), s.vars, s.d};
    out.vars[k] = std::move(*quotient);
    return out;
}

inline ClassicalSeed mutate(const ClassicalSeed& s, std::size_t k) { return classical_mutate(s, k); }
inline QuantumSeed mutate(const QuantumSeed& s, std::size_t k) { return quantum_mutate(s, k); }

/// The q = 1 shadow of a quantum seed.
inline ClassicalSeed specialize(const QuantumSeed& s) {
    ClassicalSeed out{s.b, {}};
    for (const auto& x : s.vars) out.vars.push_back(specialize_q1(x));
    return out;
}

struct CheckResult {
    bool passed = true;
    /// First counterexample as 0-based (i, j); for single-index checks j == i.
    std::optional<std::pair<std::size_t, std::size_t>> at;
    std::string detail;
};

struct QuantumSeedReport {
    CheckResult compatibility;
    CheckResult quasi_commutation;
    CheckResult bar_invariance;

    bool passed() const { return compatibility.passed && quasi_commutation.passed && bar_invariance.passed; }
};

/// Checks compatibility of (lambda, b) with the stored d, pairwise
/// quasi-commutation of vars against lambda, and bar-invariance of each variable.
inline QuantumSeedReport verify_quantum_seed(const QuantumSeed& s) {
    QuantumSeedReport report;
    try {
        SkewSymmetrizer d = check_compatibility(s.b, s.lambda);
        if (d != s.d) {
            report.compatibility.passed = false;
            report.compatibility.detail = "compatibility holds with a different d";
        }
    } catch (const incompatible& e) {
        report.compatibility = {false, std::pair{e.row(), e.column()}, e.what()};
    } catch (const dimension_error& e) {
        report.compatibility = {false, std::nullopt, e.what()};
    }

    const std::size_t m = s.vars.size();
    for (std::size_t i = 0; i < m && report.quasi_commutation.passed; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto l = quasi_commutation(s.vars[i], s.vars[j]);
            if (!l || *l != s.lambda.at(i, j)) {
                report.quasi_commutation = {
                    false, std::pair{i, j},
                    l ? "q-exponent " + std::to_string(*l) + " but lambda is " + std::to_string(s.lambda.at(i, j))
                      : std::string("variables do not quasi-commute")};
                break;
            }
        }
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (bar(s.vars[i]) != s.vars[i]) {
            report.bar_invariance = {false, std::pair{i, i}, "variable is not bar-invariant"};
            break;
        }
    }
    return report;
}

} // namespace qcluster
