#pragma once

// Floating-point evaluation of a block generating function B and its first two
// derivatives on (0, radius).
//
// B is given by explicit coefficients up to some order M and, optionally, by a
// tail model c·n^{-5/2}·eta^{-n} for n > M. The tail beyond M is summed in
// closed form through the polylogarithm Li_s(q), q = t/eta, so evaluations stay
// accurate arbitrarily close to the singularity where B'' blows up.

#include <cstddef>
#include <optional>
#include <vector>

#include "subcrit/blocks.hpp"
#include "subcrit/series.hpp"

namespace subcrit {

/// Li_s(q) for s in {1/2, 3/2} (any real s < 2 that is not an integer works) and 0 <= q < 1.
double polylog(double s, double q);
/// Li_s(e^{mu}) for mu < 0; accurate also when mu is tiny.
double polylog_exp(double s, double mu);
/// sum_{n > m} n^{-s} e^{mu·n} for mu < 0.
double polylog_tail_exp(double s, double mu, std::size_t m);

class BlockFunction {
public:
    /// Finite series, no tail: entire, radius = +inf unless one is imposed.
    static BlockFunction from_series(const TruncatedEGF& b, std::optional<double> radius = {});
    /// Hybrid series: exact head, model coefficients up to h.order, analytic remainder after.
    static BlockFunction from_hybrid(const HybridBlockSeries& h);

    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] bool has_tail() const { return tail_.has_value(); }
    [[nodiscard]] std::size_t explicit_order() const { return log_coeff_.size() - 1; }

    /// B'(t), B''(t) for 0 <= t < radius.
    [[nodiscard]] double d1(double t) const;
    [[nodiscard]] double d2(double t) const;

    /// Same at t = radius·(1 - gap); requires a finite radius. Using the gap
    /// keeps full relative precision when t is very close to the radius.
    [[nodiscard]] double d1_at_gap(double gap) const;
    [[nodiscard]] double d2_at_gap(double gap) const;
    /// Share of B''(t) contributed by the analytic remainder n > explicit_order().
    [[nodiscard]] double d2_remainder_share_at_gap(double gap) const;

private:
    struct Parts {
        double head = 0;
        double remainder = 0;
    };
    // log_q = log(t / radius) when the tail is present; ignored otherwise.
    [[nodiscard]] Parts eval_d1(double t, double log_q) const;
    [[nodiscard]] Parts eval_d2(double t, double log_q) const;

    std::vector<double> log_coeff_;  // log|b_n|, -inf for zeros
    std::vector<int> sign_;
    std::optional<TailModel> tail_;
    double radius_ = 0;
};

}  // namespace subcrit
