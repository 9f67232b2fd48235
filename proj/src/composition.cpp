#include "subcrit/composition.hpp"

#include <cmath>
#include <stdexcept>

namespace subcrit {

ClassSeriesBundle class_from_blocks(const TruncatedEGF& B, std::size_t order) {
    if (B.order() < std::max<std::size_t>(order, 1))
        throw std::invalid_argument("class_from_blocks: block series is shorter than the requested order");
    if (sgn(B[0]) != 0 || sgn(B[1]) != 0)
        throw std::invalid_argument("class_from_blocks: blocks need at least two vertices ([z^0]B = [z^1]B = 0)");

    ClassSeriesBundle out;
    out.order = order;
    out.B = B.truncate(order);
    const TruncatedEGF dB = derive(B);
    out.Cdot = solve_tree_fixed_point([&](const TruncatedEGF& y) { return exp_series(compose(dB, y)); }, order);
    out.C = integrate_div_z(out.Cdot);
    out.G = exp_series(out.C);
    return out;
}

std::vector<ClassCountRow> class_counts_from_census(const std::vector<CensusRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("class_counts_from_census: no rows");
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].n != static_cast<int>(i)) throw std::invalid_argument("class_counts_from_census: rows must be n = 0, 1, ...");

    const std::size_t order = rows.size() - 1;
    TruncatedEGF B(std::max<std::size_t>(order, 1));
    for (std::size_t n = 0; n <= order; ++n) B.set(n, Rational(rows[n].count_B) / Rational(factorial(n)));
    const ClassSeriesBundle cls = class_from_blocks(B, order);

    std::vector<ClassCountRow> out;
    for (std::size_t n = 0; n <= order; ++n) {
        ClassCountRow r;
        r.n = static_cast<int>(n);
        const Rational conn = egf_count(cls.C, n), all = egf_count(cls.G, n);
        if (conn.get_den() != 1 || all.get_den() != 1)
            throw std::logic_error("class_counts_from_census: grammar produced a non-integral count");
        r.grammar_connected = conn.get_num();
        r.grammar_all = all.get_num();
        r.oracle_connected = rows[n].count_Gk_connected;
        r.oracle_all = rows[n].count_Gk;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ClassCountRow> gk_class_counts(int k, int n_oracle, unsigned jobs) {
    if (n_oracle < 1 || n_oracle > kMaxOracleVertices) throw std::invalid_argument("gk_class_counts: n_oracle must lie in [1, 8]");
    std::vector<CensusRow> rows;
    for (int n = 0; n <= n_oracle; ++n) rows.push_back(census(n, k, jobs));
    return class_counts_from_census(rows);
}

double evaluate_cdot_numeric(const BlockFunction& blocks, double z, double tol) {
    if (!(z >= 0)) throw std::domain_error("evaluate_cdot_numeric: z must be >= 0");
    if (z == 0) return 0;
    double y = 0;
    for (int it = 0; it < 2000; ++it) {
        if (y >= blocks.radius()) throw std::domain_error("evaluate_cdot_numeric: iterate left the disc of B (z > rho)");
        const double g = z * std::exp(blocks.d1(y));
        const double h = y - g;
        if (h >= 0) return y;
        const double dh = 1 - g * blocks.d2(y);
        if (!(dh > 0)) {
            // Past the tangency point without meeting the curve: no fixed point.
            if (-h <= tol * std::max(y, 1e-300) * 1e3) return y;
            throw std::domain_error("evaluate_cdot_numeric: no fixed point (z > rho)");
        }
        const double next = y - h / dh;
        if (next - y <= tol * next) return next;
        y = next;
    }
    return y;
}

}  // namespace subcrit
