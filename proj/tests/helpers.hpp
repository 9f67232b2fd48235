#pragma once

#include <random>

#include "subcrit/series.hpp"

namespace subcrit::testing {

// Random series with small rational coefficients and [z^0] = constant.
inline TruncatedEGF random_series(std::mt19937& rng, std::size_t order, const Rational& constant = 0) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    TruncatedEGF a(order);
    a.set(0, constant);
    for (std::size_t n = 1; n <= order; ++n) {
        Rational c(num(rng), den(rng));
        c.canonicalize();
        a.set(n, c);
    }
    return a;
}

// mpq_class(p, q) does not reduce; GMP arithmetic expects reduced operands.
inline Rational frac(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline TruncatedEGF series_of(std::initializer_list<Rational> coeffs) {
    return TruncatedEGF(std::vector<Rational>(coeffs));
}

inline BigInt ipow(long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

}  // namespace subcrit::testing
