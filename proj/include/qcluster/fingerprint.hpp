#pragma once

// Modular fingerprint shadow of classical seeds.
//
// Each cluster variable is replaced by its value at a fixed pseudo-random
// point, reduced modulo two 61-bit primes. The exchange relation is a ring
// identity, so it is evaluated directly on these values. Seeds with distinct
// fingerprint keys are distinct seeds; equal keys mean equal seeds up to a
// hash collision. This makes large explorations (where exact variables grow
// quadratically in size with depth) cheap, and a CappedBySeeds outcome a sound
// lower bound on the size of the mutation class.

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "explorer.hpp"
#include "seeds.hpp"
#include "torus.hpp"

namespace qcluster {

class Fingerprint {
public:
    static constexpr std::array<std::uint64_t, 2> primes{2305843009213693951ULL, 2305843009213693921ULL};

    Fingerprint() = default;
    explicit Fingerprint(std::array<std::uint64_t, 2> v) : v_(v) {}
    static Fingerprint constant(std::uint64_t c) { return Fingerprint({c % primes[0], c % primes[1]}); }

    const std::array<std::uint64_t, 2>& values() const noexcept { return v_; }
    bool has_zero() const { return v_[0] == 0 || v_[1] == 0; }

    friend Fingerprint operator+(const Fingerprint& a, const Fingerprint& b) {
        Fingerprint out;
        for (std::size_t i = 0; i < 2; ++i) out.v_[i] = (a.v_[i] + b.v_[i]) % primes[i];
        return out;
    }
    friend Fingerprint operator*(const Fingerprint& a, const Fingerprint& b) {
        Fingerprint out;
        for (std::size_t i = 0; i < 2; ++i) out.v_[i] = mulmod(a.v_[i], b.v_[i], primes[i]);
        return out;
    }

    Fingerprint pow(std::int64_t e) const {
        Fingerprint out;
        for (std::size_t i = 0; i < 2; ++i) {
            const std::uint64_t p = primes[i];
            // Negative powers via Fermat inversion; callers guarantee nonzero values.
            const std::uint64_t base = e >= 0 ? v_[i] : powmod(v_[i], p - 2, p);
            out.v_[i] = powmod(base, e >= 0 ? static_cast<std::uint64_t>(e) : static_cast<std::uint64_t>(-e), p);
        }
        return out;
    }

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

private:
    static std::uint64_t powmod(std::uint64_t base, std::uint64_t n, std::uint64_t p) {
        std::uint64_t r = 1;
        while (n) {
            if (n & 1) r = mulmod(r, base, p);
            base = mulmod(base, base, p);
            n >>= 1;
        }
        return r;
    }

    static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }

    std::array<std::uint64_t, 2> v_{0, 0};
};

inline std::string key_string(const Fingerprint& f) {
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (auto v : f.values()) {
        std::string part(16, '0');
        for (int i = 15; i >= 0; --i, v >>= 4) part[static_cast<std::size_t>(i)] = hex[v & 0xf];
        out += part;
    }
    return out;
}

/// Default point seed; fixed so that explorations are reproducible.
inline constexpr std::uint64_t default_fingerprint_point = 0x5eed5eedULL;

/// Evaluation point: one nonzero residue pair per initial variable.
inline std::vector<Fingerprint> fingerprint_point(std::size_t m, std::uint64_t point_seed = default_fingerprint_point) {
    std::mt19937_64 rng(point_seed);
    std::vector<Fingerprint> point;
    for (std::size_t i = 0; i < m; ++i) {
        std::array<std::uint64_t, 2> v{};
        for (std::size_t j = 0; j < 2; ++j) {
            std::uniform_int_distribution<std::uint64_t> dist(1, Fingerprint::primes[j] - 1);
            v[j] = dist(rng);
        }
        point.emplace_back(v);
    }
    return point;
}

inline Fingerprint evaluate(const CommLaurent& f, const std::vector<Fingerprint>& point) {
    Fingerprint s = Fingerprint::constant(0);
    for (const auto& [a, c] : f.terms()) {
        std::array<std::uint64_t, 2> cv{};
        for (std::size_t j = 0; j < 2; ++j) {
            BigInt r = c % Fingerprint::primes[j];
            if (r < 0) r += Fingerprint::primes[j];
            cv[j] = static_cast<std::uint64_t>(r);
        }
        Fingerprint term(cv);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != 0) term = term * point[i].pow(a[i]);
        s = s + term;
    }
    return s;
}

struct FingerprintSeed {
    ExchangeMatrix b;
    std::vector<Fingerprint> vars;

    std::size_t m() const { return b.m(); }
    const std::vector<std::size_t>& ex() const { return b.ex(); }

    friend bool operator==(const FingerprintSeed&, const FingerprintSeed&) = default;
};

inline FingerprintSeed make_fingerprint_seed(ExchangeMatrix b, std::uint64_t point_seed = default_fingerprint_point) {
    auto point = fingerprint_point(b.m(), point_seed);
    return FingerprintSeed{std::move(b), std::move(point)};
}

/// The fingerprint of an exact classical seed at the same point.
inline FingerprintSeed fingerprint(const ClassicalSeed& s, std::uint64_t point_seed = default_fingerprint_point) {
    const auto point = fingerprint_point(s.m(), point_seed);
    FingerprintSeed out{s.b, {}};
    for (const auto& x : s.vars) out.vars.push_back(evaluate(x, point));
    return out;
}

inline FingerprintSeed mutate(const FingerprintSeed& s, std::size_t k) {
    const auto [plus, minus] = exchange_exponents(s.b, k);
    auto product = [&](const Exponent& g) {
        Fingerprint p = Fingerprint::constant(1);
        for (std::size_t i = 0; i < s.m(); ++i)
            if (g[i] != 0) p = p * s.vars[i].pow(g[i]);
        return p;
    };
    if (s.vars[k].has_zero()) throw std::runtime_error("fingerprint vanished; choose another evaluation point");
    FingerprintSeed out{matrix_mutate(s.b, k), s.vars};
    out.vars[k] = (product(plus) + product(minus)) * s.vars[k].pow(-1);
    return out;
}

inline std::pair<FingerprintSeed, CanonicalKey> canonicalize(const FingerprintSeed& s) {
    const auto keys = detail::variable_keys(s);
    const auto perm = detail::canonical_permutation(s.b, keys);
    FingerprintSeed out{detail::permute(s.b, perm), detail::permute(s.vars, perm)};
    std::string bytes = "F" + detail::matrix_string(out.b) + "V";
    for (auto i : perm) bytes += keys[i] + "|";
    return {std::move(out), CanonicalKey{std::move(bytes)}};
}

} // namespace qcluster
