#include "loopkit/matchings.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace loopkit {

double log2_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log2 of a non-positive integer");
    const int top = static_cast<int>(msb(x));
    if (top < 60) return std::log2(x.convert_to<double>());
    const BigInt head = x >> (top - 52);
    return std::log2(head.convert_to<double>()) + (top - 52);
}

EntropyScaling entropy_scaling(int ell_max, int fit_from) {
    if (ell_max < 2) throw std::invalid_argument("entropy_scaling needs ell_max >= 2");
    EntropyScaling out;
    out.fit_from = std::min(fit_from, ell_max - 2 > 0 ? ell_max - 2 : 1);
    for (int l = 1; l <= ell_max; ++l) {
        EntropyRow row{l, 4 * l, count_allowed_dp(Dims::open(l, l)), 0, 0, 0};
        row.log2_count = log2_big(row.count);
        row.corrected = row.log2_count - row.perimeter + 1.5 * std::log2(row.perimeter / 2.0);
        if (!out.rows.empty()) row.increment = row.corrected - out.rows.back().corrected;
        out.rows.push_back(std::move(row));
    }

    out.monotone_from = ell_max;
    for (int i = static_cast<int>(out.rows.size()) - 1; i >= 2; --i) {
        if (std::abs(out.rows[i].increment) > std::abs(out.rows[i - 1].increment)) break;
        out.monotone_from = out.rows[i - 1].ell;
    }
    out.final_increment = out.rows.back().increment;

    auto g = [&](int l) { return out.rows[l - 1].log2_count - out.rows[l - 1].perimeter; };
    const int n = ell_max - out.fit_from + 1;
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        const int l = out.fit_from + i;
        const double L = 4.0 * l;
        X(i, 0) = 1;
        X(i, 1) = -std::log2(L / 2);
        X(i, 2) = 1 / L;
        y[i] = g(l);
    }
    const Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
    out.exponent = beta[1];

    const int a = ell_max / 2, b = ell_max;
    out.exponent_two_point = -(g(b) - g(a)) / (std::log2(2.0 * b) - std::log2(2.0 * a));
    return out;
}

} // namespace loopkit
