#include "subcrit/block_function.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

namespace subcrit {
namespace {

constexpr double kRelEps = 1e-18;
constexpr int kZetaTerms = 48;

double direct_polylog(double s, double mu, std::size_t first) {
    double sum = 0;
    for (std::size_t n = first;; ++n) {
        const double term = std::exp(mu * static_cast<double>(n) - s * std::log(static_cast<double>(n)));
        sum += term;
        if (term <= kRelEps * sum || term == 0.0) break;
        if (n - first > 50'000'000) throw std::runtime_error("polylog: direct summation did not converge");
    }
    return sum;
}

// zeta(s - k)/k! for k = 0 .. kZetaTerms-1
std::array<double, kZetaTerms> zeta_coefficients(double s) {
    std::array<double, kZetaTerms> c{};
    double fact = 1;
    for (int k = 0; k < kZetaTerms; ++k) {
        if (k > 0) fact *= k;
        c[static_cast<std::size_t>(k)] = boost::math::zeta(s - k) / fact;
    }
    return c;
}

const std::array<double, kZetaTerms>& cached_zeta_coefficients(double s) {
    static const auto half = zeta_coefficients(0.5);
    static const auto three_halves = zeta_coefficients(1.5);
    if (s == 0.5) return half;
    if (s == 1.5) return three_halves;
    thread_local std::array<double, kZetaTerms> other{};
    thread_local double other_s = std::numeric_limits<double>::quiet_NaN();
    if (s != other_s) {
        other = zeta_coefficients(s);
        other_s = s;
    }
    return other;
}

}  // namespace

double polylog_exp(double s, double mu) {
    if (!(mu < 0)) throw std::domain_error("polylog_exp: need mu < 0");
    if (s >= 2 || s == std::floor(s)) throw std::domain_error("polylog_exp: order must be a non-integer below 2");
    if (mu < -1) return direct_polylog(s, mu, 1);
    // Li_s(e^mu) = Gamma(1-s)(-mu)^{s-1} + sum_k zeta(s-k) mu^k / k!, |mu| < 2 pi
    const auto& c = cached_zeta_coefficients(s);
    double sum = boost::math::tgamma(1 - s) * std::pow(-mu, s - 1);
    double p = 1;
    for (int k = 0; k < kZetaTerms; ++k) {
        const double term = c[static_cast<std::size_t>(k)] * p;
        sum += term;
        if (k > 2 && std::abs(term) <= kRelEps * std::abs(sum)) break;
        p *= mu;
    }
    return sum;
}

double polylog(double s, double q) {
    if (!(q >= 0 && q < 1)) throw std::domain_error("polylog: need 0 <= q < 1");
    if (q == 0) return 0;
    return polylog_exp(s, std::log(q));
}

double polylog_tail_exp(double s, double mu, std::size_t m) {
    if (!(mu < 0)) throw std::domain_error("polylog_tail_exp: need mu < 0");
    if (m == 0) return polylog_exp(s, mu);
    if (mu < -1 || -mu * static_cast<double>(m) > 20) return direct_polylog(s, mu, m + 1);
    double head = 0;
    for (std::size_t n = 1; n <= m; ++n)
        head += std::exp(mu * static_cast<double>(n) - s * std::log(static_cast<double>(n)));
    return polylog_exp(s, mu) - head;
}

BlockFunction BlockFunction::from_series(const TruncatedEGF& b, std::optional<double> radius) {
    BlockFunction f;
    f.radius_ = radius.value_or(std::numeric_limits<double>::infinity());
    if (!(f.radius_ > 0)) throw std::invalid_argument("BlockFunction: radius must be positive");
    for (std::size_t n = 0; n <= b.order(); ++n) {
        const int sg = sgn(b[n]);
        f.sign_.push_back(sg);
        f.log_coeff_.push_back(sg == 0 ? -std::numeric_limits<double>::infinity() : log_rational(abs(b[n])));
    }
    return f;
}

BlockFunction BlockFunction::from_hybrid(const HybridBlockSeries& h) {
    BlockFunction f;
    f.radius_ = h.tail.eta;
    f.tail_ = h.tail;
    for (std::size_t n = 0; n <= h.order; ++n) {
        const double lc = h.log_coefficient(n);
        f.sign_.push_back(std::isinf(lc) ? 0 : 1);
        f.log_coeff_.push_back(lc);
    }
    return f;
}

BlockFunction::Parts BlockFunction::eval_d1(double t, double log_q) const {
    Parts p;
    const double log_t = std::log(t);
    for (std::size_t n = 1; n < log_coeff_.size(); ++n) {
        if (sign_[n] == 0) continue;
        const double power = n == 1 ? 0.0 : static_cast<double>(n - 1) * log_t;
        p.head += sign_[n] * static_cast<double>(n) * std::exp(log_coeff_[n] + power);
    }
    if (tail_ && t > 0) p.remainder = tail_->c / t * polylog_tail_exp(1.5, log_q, explicit_order());
    return p;
}

BlockFunction::Parts BlockFunction::eval_d2(double t, double log_q) const {
    Parts p;
    const double log_t = std::log(t);
    for (std::size_t n = 2; n < log_coeff_.size(); ++n) {
        if (sign_[n] == 0) continue;
        const double power = n == 2 ? 0.0 : static_cast<double>(n - 2) * log_t;
        p.head += sign_[n] * static_cast<double>(n * (n - 1)) * std::exp(log_coeff_[n] + power);
    }
    if (tail_ && t > 0) {
        const std::size_t m = explicit_order();
        p.remainder = tail_->c / (t * t) * (polylog_tail_exp(0.5, log_q, m) - polylog_tail_exp(1.5, log_q, m));
    }
    return p;
}

double BlockFunction::d1(double t) const {
    if (!(t >= 0 && t < radius_)) throw std::domain_error("BlockFunction: t outside [0, radius)");
    const Parts p = eval_d1(t, tail_ ? std::log(t / radius_) : 0.0);
    return p.head + p.remainder;
}

double BlockFunction::d2(double t) const {
    if (!(t >= 0 && t < radius_)) throw std::domain_error("BlockFunction: t outside [0, radius)");
    const Parts p = eval_d2(t, tail_ ? std::log(t / radius_) : 0.0);
    return p.head + p.remainder;
}

double BlockFunction::d1_at_gap(double gap) const {
    if (!std::isfinite(radius_)) throw std::logic_error("BlockFunction: gap evaluation needs a finite radius");
    if (!(gap > 0 && gap <= 1)) throw std::domain_error("BlockFunction: gap must lie in (0, 1]");
    const Parts p = eval_d1(radius_ * (1 - gap), std::log1p(-gap));
    return p.head + p.remainder;
}

double BlockFunction::d2_at_gap(double gap) const {
    if (!std::isfinite(radius_)) throw std::logic_error("BlockFunction: gap evaluation needs a finite radius");
    if (!(gap > 0 && gap <= 1)) throw std::domain_error("BlockFunction: gap must lie in (0, 1]");
    const Parts p = eval_d2(radius_ * (1 - gap), std::log1p(-gap));
    return p.head + p.remainder;
}

double BlockFunction::d2_remainder_share_at_gap(double gap) const {
    if (!std::isfinite(radius_)) throw std::logic_error("BlockFunction: gap evaluation needs a finite radius");
    const Parts p = eval_d2(radius_ * (1 - gap), std::log1p(-gap));
    const double total = p.head + p.remainder;
    return total == 0 ? 0 : p.remainder / total;
}

}  // namespace subcrit
