#pragma once

// Exact truncated power series over the rationals.
//
// A series of order N stores the N+1 coefficients [z^0] .. [z^N]. Every binary
// operation truncates to the smaller of the two orders. Coefficients are GMP
// rationals, which GMP keeps in lowest terms after every operation.
//
// Two coefficient rings are used: Rational (TruncatedEGF) and UPoly, a dense
// polynomial in the leaf-marking variable u (BivariateEGF). The arithmetic is
// written once over the coefficient ring.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace subcrit {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Polynomial in u with rational coefficients; coeffs()[i] is [u^i].
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
class UPoly {
public:
    UPoly() = default;
    UPoly(const Rational& c) {  // NOLINT(google-explicit-constructor): constants embed
        if (sgn(c) != 0) c_.push_back(c);
    }
    explicit UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    /// c·u^power
    static UPoly monomial(std::size_t power, const Rational& c) {
        if (sgn(c) == 0) return {};
        std::vector<Rational> v(power + 1);
        v[power] = c;
        return UPoly(std::move(v));
    }

    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// Degree, with -1 for the zero polynomial.
    [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
    [[nodiscard]] const std::vector<Rational>& coeffs() const { return c_; }
    [[nodiscard]] Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    [[nodiscard]] Rational evaluate(const Rational& u) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * u + *it;
        return acc;
    }

    UPoly& operator+=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator*=(const Rational& s) {
        if (sgn(s) == 0) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_) x *= s;
        return *this;
    }
    UPoly& operator/=(const Rational& s) {
        if (sgn(s) == 0) throw std::domain_error("UPoly: division by zero");
        for (auto& x : c_) x /= s;
        return *this;
    }

    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
    friend UPoly operator*(const Rational& s, UPoly a) { return a *= s; }
    friend UPoly operator/(UPoly a, const Rational& s) { return a /= s; }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

namespace detail {
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(const UPoly& p) { return p.is_zero(); }
}  // namespace detail

/// Truncated power series sum_{n<=N} a_n z^n over the coefficient ring R.
template <class R>
class PowerSeries {
public:
    using coeff_type = R;

    /// Zero series of order 0.
    PowerSeries() : c_(1) {}
    explicit PowerSeries(std::size_t order) : c_(order + 1) {}
    explicit PowerSeries(std::vector<R> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("PowerSeries: need at least one coefficient");
    }

    static PowerSeries zero(std::size_t order) { return PowerSeries(order); }
    static PowerSeries constant(const R& c, std::size_t order) {
        PowerSeries s(order);
        s.c_[0] = c;
        return s;
    }
    /// c·z^power truncated to order (zero when power > order).
    static PowerSeries monomial(std::size_t power, const R& c, std::size_t order) {
        PowerSeries s(order);
        if (power <= order) s.c_[power] = c;
        return s;
    }
    static PowerSeries z(std::size_t order) { return monomial(1, R(Rational(1)), order); }

    [[nodiscard]] std::size_t order() const { return c_.size() - 1; }
    [[nodiscard]] const std::vector<R>& coeffs() const { return c_; }
    /// [z^n]; coefficients past the truncation order are not known, so asking for them throws.
    [[nodiscard]] const R& operator[](std::size_t n) const {
        if (n >= c_.size()) throw std::out_of_range("PowerSeries: coefficient beyond truncation order");
        return c_[n];
    }
    void set(std::size_t n, R value) {
        if (n >= c_.size()) throw std::out_of_range("PowerSeries: coefficient beyond truncation order");
        c_[n] = std::move(value);
    }

    [[nodiscard]] PowerSeries truncate(std::size_t order) const {
        if (order >= c_.size()) return *this;
        return PowerSeries(std::vector<R>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order) + 1));
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<R> c_;
};

using TruncatedEGF = PowerSeries<Rational>;
using BivariateEGF = PowerSeries<UPoly>;

// ---------------------------------------------------------------------------
// Arithmetic

template <class R>
PowerSeries<R> add(const PowerSeries<R>& a, const PowerSeries<R>& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<R> r(n + 1);
    for (std::size_t i = 0; i <= n; ++i) r[i] = a[i] + b[i];
    return PowerSeries<R>(std::move(r));
}

template <class R>
PowerSeries<R> sub(const PowerSeries<R>& a, const PowerSeries<R>& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<R> r(n + 1);
    for (std::size_t i = 0; i <= n; ++i) r[i] = a[i] - b[i];
    return PowerSeries<R>(std::move(r));
}

template <class R>
PowerSeries<R> scale(const PowerSeries<R>& a, const Rational& s) {
    std::vector<R> r(a.coeffs());
    for (auto& x : r) x = x * s;
    return PowerSeries<R>(std::move(r));
}

/// Multiply every coefficient by the ring element c (e.g. a polynomial in u).
template <class R>
PowerSeries<R> scale_by(const PowerSeries<R>& a, const R& c) {
    std::vector<R> r(a.coeffs());
    for (auto& x : r) x = x * c;
    return PowerSeries<R>(std::move(r));
}

/// Cauchy product truncated to the smaller order.
template <class R>
PowerSeries<R> mul(const PowerSeries<R>& a, const PowerSeries<R>& b) {
    const std::size_t n = std::min(a.order(), b.order());
    std::vector<R> r(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        if (detail::is_zero(a[i])) continue;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (detail::is_zero(b[j])) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return PowerSeries<R>(std::move(r));
}

/// Multiply by z^k, keeping the order.
template <class R>
PowerSeries<R> shift_up(const PowerSeries<R>& a, std::size_t k) {
    PowerSeries<R> r(a.order());
    for (std::size_t i = 0; i + k <= a.order(); ++i) r.set(i + k, a[i]);
    return r;
}

/// a(c·z): coefficient n scaled by c^n.
template <class R>
PowerSeries<R> scale_argument(const PowerSeries<R>& a, const Rational& c) {
    std::vector<R> r(a.coeffs());
    Rational p = 1;
    for (auto& x : r) {
        x = x * p;
        p *= c;
    }
    return PowerSeries<R>(std::move(r));
}

/// exp(a) for a with zero constant term, via n·e_n = sum_{j=1..n} j·a_j·e_{n-j}.
template <class R>
PowerSeries<R> exp_series(const PowerSeries<R>& a) {
    if (!detail::is_zero(a[0])) throw std::invalid_argument("exp_series: constant term must be zero");
    const std::size_t n = a.order();
    std::vector<R> e(n + 1);
    e[0] = R(Rational(1));
    for (std::size_t m = 1; m <= n; ++m) {
        R acc;
        for (std::size_t j = 1; j <= m; ++j) {
            if (detail::is_zero(a[j])) continue;
            acc += a[j] * e[m - j] * Rational(static_cast<long>(j));
        }
        e[m] = acc / Rational(static_cast<long>(m));
    }
    return PowerSeries<R>(std::move(e));
}

/// outer(inner) by Horner's rule; inner must have zero constant term.
template <class R>
PowerSeries<R> compose(const PowerSeries<Rational>& outer, const PowerSeries<R>& inner) {
    if (!detail::is_zero(inner[0])) throw std::invalid_argument("compose: inner series must have zero constant term");
    const std::size_t n = std::min(outer.order(), inner.order());
    PowerSeries<R> acc(n);
    for (std::size_t i = n + 1; i-- > 0;) {
        acc = mul(acc, inner);
        acc.set(0, acc[0] + R(outer[i]));
    }
    return acc;
}

/// Formal derivative; the result has order N-1 (order 0 stays 0).
template <class R>
PowerSeries<R> derive(const PowerSeries<R>& a) {
    if (a.order() == 0) return PowerSeries<R>(0);
    std::vector<R> r(a.order());
    for (std::size_t i = 1; i <= a.order(); ++i) r[i - 1] = a[i] * Rational(static_cast<long>(i));
    return PowerSeries<R>(std::move(r));
}

/// integral_0^z a(s)/s ds, i.e. a_n -> a_n/n in place. The order is preserved.
template <class R>
PowerSeries<R> integrate_div_z(const PowerSeries<R>& a) {
    if (!detail::is_zero(a[0])) throw std::invalid_argument("integrate_div_z: constant term must be zero");
    std::vector<R> r(a.coeffs());
    for (std::size_t i = 1; i < r.size(); ++i) r[i] = r[i] / Rational(static_cast<long>(i));
    return PowerSeries<R>(std::move(r));
}

template <class R>
PowerSeries<R> operator+(const PowerSeries<R>& a, const PowerSeries<R>& b) { return add(a, b); }
template <class R>
PowerSeries<R> operator-(const PowerSeries<R>& a, const PowerSeries<R>& b) { return sub(a, b); }
template <class R>
PowerSeries<R> operator*(const PowerSeries<R>& a, const PowerSeries<R>& b) { return mul(a, b); }

// ---------------------------------------------------------------------------
// Fixed points y = z·Phi(y)

using SeriesTransformer = std::function<TruncatedEGF(const TruncatedEGF&)>;

/// Solves y = z·phi(y) to order N by iteration; pass i fixes [z^i].
/// phi(0) must have a nonzero constant term, otherwise y = 0 is degenerate and
/// the problem is rejected.
TruncatedEGF solve_tree_fixed_point(const SeriesTransformer& phi, std::size_t order);

/// Solves y = g·exp(y) + h with g(0) = h(0) = 0 by the online coefficient
/// recursion, which costs one convolution per coefficient instead of a full
/// pass of exp per coefficient.
template <class R>
PowerSeries<R> solve_exp_fixed_point(const PowerSeries<R>& g, const PowerSeries<R>& h) {
    if (!detail::is_zero(g[0]) || !detail::is_zero(h[0]))
        throw std::invalid_argument("solve_exp_fixed_point: g and h must vanish at 0");
    const std::size_t n = std::min(g.order(), h.order());
    std::vector<R> y(n + 1), e(n + 1);
    e[0] = R(Rational(1));
    for (std::size_t m = 1; m <= n; ++m) {
        R ym = h[m];
        for (std::size_t j = 1; j <= m; ++j) {
            if (detail::is_zero(g[j])) continue;
            ym += g[j] * e[m - j];
        }
        y[m] = ym;
        R acc;
        for (std::size_t j = 1; j <= m; ++j) {
            if (detail::is_zero(y[j])) continue;
            acc += y[j] * e[m - j] * Rational(static_cast<long>(j));
        }
        e[m] = acc / Rational(static_cast<long>(m));
    }
    return PowerSeries<R>(std::move(y));
}

// Rational fast paths. Each convolution is done over one common denominator
// with integer multiply-accumulate, which avoids a gcd per term.
template <>
TruncatedEGF mul<Rational>(const TruncatedEGF& a, const TruncatedEGF& b);
template <>
TruncatedEGF exp_series<Rational>(const TruncatedEGF& a);
template <>
TruncatedEGF solve_exp_fixed_point<Rational>(const TruncatedEGF& g, const TruncatedEGF& h);

// ---------------------------------------------------------------------------
// Bivariate helpers

/// Evaluate every UPoly coefficient at u = u0.
TruncatedEGF substitute_u(const BivariateEGF& a, const Rational& u0);
/// Embed a univariate series as constant-in-u.
BivariateEGF lift(const TruncatedEGF& a);

inline BivariateEGF b_add(const BivariateEGF& a, const BivariateEGF& b) { return add(a, b); }
inline BivariateEGF b_mul(const BivariateEGF& a, const BivariateEGF& b) { return mul(a, b); }
inline BivariateEGF b_exp(const BivariateEGF& a) { return exp_series(a); }

// ---------------------------------------------------------------------------
// Counting helpers

BigInt factorial(unsigned long n);
/// n!·[z^n]a, the labelled count carried by an EGF coefficient.
Rational egf_count(const TruncatedEGF& a, std::size_t n);
/// True when n!·[z^n] is a non-negative integer for every n.
bool is_labelled_count_series(const TruncatedEGF& a);

/// "p/q" with an explicit denominator, also for integers.
std::string to_fraction_string(const Rational& r);
/// Accepts "p/q" or "p".
Rational parse_fraction(const std::string& s);

}  // namespace subcrit
