#include "subcrit/series.hpp"

namespace subcrit {
namespace {

// Rationals num[i]/den over one shared denominator.
class CommonDenominator {
public:
    CommonDenominator() = default;
    explicit CommonDenominator(const std::vector<Rational>& values) {
        for (const auto& v : values) mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(), v.get_den_mpz_t());
        num_.reserve(values.size());
        for (const auto& v : values) {
            BigInt q;
            mpz_divexact(q.get_mpz_t(), den_.get_mpz_t(), v.get_den_mpz_t());
            num_.push_back(q * v.get_num());
        }
    }

    void push(const Rational& v) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), v.get_den_mpz_t());
        BigInt grow;
        mpz_divexact(grow.get_mpz_t(), v.get_den_mpz_t(), g.get_mpz_t());
        if (grow != 1) {
            for (auto& x : num_) x *= grow;
            den_ *= grow;
        }
        BigInt q;
        mpz_divexact(q.get_mpz_t(), den_.get_mpz_t(), v.get_den_mpz_t());
        num_.push_back(q * v.get_num());
    }

    [[nodiscard]] const BigInt& num(std::size_t i) const { return num_[i]; }
    [[nodiscard]] const BigInt& den() const { return den_; }

private:
    std::vector<BigInt> num_;
    BigInt den_ = 1;
};

// sum_{j=lo..hi} a_j b_{n-j} as an integer numerator over a.den()·b.den()
BigInt convolve_numerator(const CommonDenominator& a, const CommonDenominator& b, std::size_t n, std::size_t lo,
                          std::size_t hi) {
    BigInt acc = 0;
    for (std::size_t j = lo; j <= hi; ++j)
        mpz_addmul(acc.get_mpz_t(), a.num(j).get_mpz_t(), b.num(n - j).get_mpz_t());
    return acc;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::vector<Rational> weighted_by_index(const TruncatedEGF& a, std::size_t n) {
    std::vector<Rational> v(n + 1);
    for (std::size_t j = 1; j <= n; ++j) v[j] = a[j] * Rational(static_cast<long>(j));
    return v;
}

}  // namespace

template <>
TruncatedEGF mul<Rational>(const TruncatedEGF& a, const TruncatedEGF& b) {
    const std::size_t n = std::min(a.order(), b.order());
    const CommonDenominator ca(a.truncate(n).coeffs()), cb(b.truncate(n).coeffs());
    const BigInt den = ca.den() * cb.den();
    std::vector<Rational> r(n + 1);
    for (std::size_t m = 0; m <= n; ++m) r[m] = make_rational(convolve_numerator(ca, cb, m, 0, m), den);
    return TruncatedEGF(std::move(r));
}

template <>
TruncatedEGF exp_series<Rational>(const TruncatedEGF& a) {
    if (sgn(a[0]) != 0) throw std::invalid_argument("exp_series: constant term must be zero");
    const std::size_t n = a.order();
    const CommonDenominator ja(weighted_by_index(a, n));
    CommonDenominator e;
    e.push(Rational(1));
    std::vector<Rational> out{Rational(1)};
    for (std::size_t m = 1; m <= n; ++m) {
        const BigInt num = convolve_numerator(ja, e, m, 1, m);
        out.push_back(make_rational(num, ja.den() * e.den() * static_cast<unsigned long>(m)));
        e.push(out.back());
    }
    return TruncatedEGF(std::move(out));
}

template <>
TruncatedEGF solve_exp_fixed_point<Rational>(const TruncatedEGF& g, const TruncatedEGF& h) {
    if (sgn(g[0]) != 0 || sgn(h[0]) != 0)
        throw std::invalid_argument("solve_exp_fixed_point: g and h must vanish at 0");
    const std::size_t n = std::min(g.order(), h.order());
    const CommonDenominator cg(g.truncate(n).coeffs());
    CommonDenominator e, jy;
    e.push(Rational(1));
    jy.push(Rational(0));
    std::vector<Rational> y(n + 1);
    for (std::size_t m = 1; m <= n; ++m) {
        y[m] = h[m] + make_rational(convolve_numerator(cg, e, m, 1, m), cg.den() * e.den());
        jy.push(y[m] * Rational(static_cast<long>(m)));
        const BigInt num = convolve_numerator(jy, e, m, 1, m);
        e.push(make_rational(num, jy.den() * e.den() * static_cast<unsigned long>(m)));
    }
    return TruncatedEGF(std::move(y));
}

TruncatedEGF solve_tree_fixed_point(const SeriesTransformer& phi, std::size_t order) {
    const TruncatedEGF phi0 = phi(TruncatedEGF::zero(0));
    if (sgn(phi0[0]) == 0)
        throw std::invalid_argument("solve_tree_fixed_point: phi(0) must have a nonzero constant term");

    TruncatedEGF y = TruncatedEGF::zero(0);
    for (std::size_t i = 1; i <= order; ++i) {
        // y is exact to order i-1; z·phi(y) is then exact to order i.
        const TruncatedEGF p = phi(y);
        if (p.order() < i - 1) throw std::logic_error("solve_tree_fixed_point: phi lowered the truncation order");
        TruncatedEGF next(i);
        for (std::size_t n = 1; n <= i; ++n) next.set(n, p[n - 1]);
        y = std::move(next);
    }
    return y;
}

TruncatedEGF substitute_u(const BivariateEGF& a, const Rational& u0) {
    std::vector<Rational> r(a.order() + 1);
    for (std::size_t n = 0; n <= a.order(); ++n) r[n] = a[n].evaluate(u0);
    return TruncatedEGF(std::move(r));
}

BivariateEGF lift(const TruncatedEGF& a) {
    std::vector<UPoly> r(a.order() + 1);
    for (std::size_t n = 0; n <= a.order(); ++n) r[n] = UPoly(a[n]);
    return BivariateEGF(std::move(r));
}

BigInt factorial(unsigned long n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

Rational egf_count(const TruncatedEGF& a, std::size_t n) {
    return a[n] * Rational(factorial(n));
}

bool is_labelled_count_series(const TruncatedEGF& a) {
    for (std::size_t n = 0; n <= a.order(); ++n) {
        const Rational c = egf_count(a, n);
        if (c.get_den() != 1 || sgn(c) < 0) return false;
    }
    return true;
}

std::string to_fraction_string(const Rational& r) {
    Rational q = r;
    q.canonicalize();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_fraction(const std::string& s) {
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0 || sgn(r.get_den()) == 0)
        throw std::invalid_argument("parse_fraction: not a fraction: '" + s + "'");
    r.canonicalize();
    return r;
}

}  // namespace subcrit
