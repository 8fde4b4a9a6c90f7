#pragma once

// Arithmetic modulo the Mersenne prime 2^61 - 1, used for fast coprimality and
// squarefreeness certificates. A modular gcd of 1 (with preserved leading
// degree) proves the integer statement; anything else falls back to exact code.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "corrdyn/algebra/zpoly.hpp"

namespace corrdyn::algebra::modp {

inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

using Poly = std::vector<std::uint64_t>;  // lowest degree first, trimmed

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= kPrime ? s - kPrime : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
    std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
    return add(lo, hi);
}
inline std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}
inline std::uint64_t inv(std::uint64_t a) { return pow(a, kPrime - 2); }

inline std::uint64_t reduce(const mpz_class& x) {
    return mpz_fdiv_ui(x.get_mpz_t(), kPrime);
}

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly reduce(const ZPoly& p) {
    Poly r;
    r.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) r.push_back(reduce(c));
    trim(r);
    return r;
}

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(mul(p[i], i % kPrime));
    trim(d);
    return d;
}

// Monic gcd; empty for gcd(0, 0).
inline Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a <- a mod b
        std::uint64_t ib = inv(b.back());
        while (a.size() >= b.size()) {
            std::uint64_t t = mul(a.back(), ib);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = sub(a[shift + i], mul(t, b[i]));
            a.pop_back();
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        std::uint64_t il = inv(a.back());
        for (auto& x : a) x = mul(x, il);
    }
    return a;
}

}  // namespace corrdyn::algebra::modp
