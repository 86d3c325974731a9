// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include "twdp/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "twdp/detail/specfun_kernels.hpp"
#include "twdp/detail/summation.hpp"
#include "twdp/error.hpp"

namespace twdp::specfun {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw InvalidParameter(what);
    }
}

struct MarcumPair {
    double q;
    double p;
};

// Q_1(a, b) = sum_j Pois(j; a^2/2) Q_{j+1}(b^2/2) where Q_{j+1}(y) is the
// Poisson CDF of y at j. Whichever of Q and 1 - Q is smaller is summed
// directly from positive terms.
MarcumPair marcum_pair(double a, double b)
{
    require(std::isfinite(a) && a >= 0.0, "Marcum Q: a must be nonnegative");
    require(std::isfinite(b) && b >= 0.0, "Marcum Q: b must be nonnegative");
    const double lam = 0.5 * a * a;
    const double y = 0.5 * b * b;
    if (y == 0.0) {
        return {1.0, 0.0};
    }
    if (lam == 0.0) {
        return {std::exp(-y), -std::expm1(-y)};
    }
    const double log_lam = std::log(lam);
    const double log_y = std::log(y);

    if (y > lam + 1.0) {
        // Upper tail: accumulate Q directly.
        const double j_min = lam + std::sqrt(lam * y) + 10.0 * std::sqrt(lam + std::sqrt(lam * y) + 1.0) + 40.0;
        detail::CompensatedSum<double> sum;
        double lw = -lam;
        double lp = -y;
        double q_cum = std::exp(lp);
        for (int j = 0; j < 2000000; ++j) {
            if (j > 0) {
                lw += log_lam - std::log(static_cast<double>(j));
                lp += log_y - std::log(static_cast<double>(j));
                q_cum += std::exp(lp);
            }
            double term = std::exp(lw) * std::min(q_cum, 1.0);
            sum.add(term);
            if (j > j_min && term <= 1e-18 * sum.value()) {
                break;
            }
        }
        double q = sum.value();
        return {q, 1.0 - q};
    }

    // Lower tail: P_{j+1}(y) = sum_{k > j} Pois(k; y), built downward from a
    // tail series at j = J so every step adds a positive quantity.
    const int big_j = static_cast<int>(std::ceil(lam + 12.0 * std::sqrt(lam) + 40.0));
    std::vector<double> log_pois_y(static_cast<std::size_t>(big_j) + 2);
    log_pois_y[0] = -y;
    for (int k = 1; k <= big_j + 1; ++k) {
        log_pois_y[k] = log_pois_y[k - 1] + log_y - std::log(static_cast<double>(k));
    }
    // sum_{k >= J+1} Pois(k; y) = Pois(J+1; y) sum_n y^n / ((J+2)...(J+1+n)).
    double tail = 1.0;
    double t = 1.0;
    for (int n = 1; n < 100000; ++n) {
        t *= y / static_cast<double>(big_j + 1 + n);
        tail += t;
        if (t < 1e-18 * tail) {
            break;
        }
    }
    std::vector<double> upper(static_cast<std::size_t>(big_j) + 1);  // upper[j] = P_{j+1}(y)
    upper[big_j] = std::exp(log_pois_y[big_j + 1]) * tail;
    for (int j = big_j - 1; j >= 0; --j) {
        upper[j] = upper[j + 1] + std::exp(log_pois_y[j + 1]);
    }
    detail::CompensatedSum<double> sum;
    double lw = -lam;
    for (int j = 0; j <= big_j; ++j) {
        if (j > 0) {
            lw += log_lam - std::log(static_cast<double>(j));
        }
        sum.add(std::exp(lw) * upper[j]);
    }
    double p = sum.value();
    return {1.0 - p, p};
}

} // namespace

double bessel_i_scaled(int nu, double x)
{
    require(nu >= 0, "Bessel order must be nonnegative");
    require(std::isfinite(x) && x >= 0.0, "Bessel argument must be nonnegative");
    return detail::bessel_i_scaled_sequence<double>(nu, x)[static_cast<std::size_t>(nu)];
}

std::vector<double> bessel_i_scaled_sequence(int nu_max, double x)
{
    require(nu_max >= 0, "Bessel order must be nonnegative");
    require(std::isfinite(x) && x >= 0.0, "Bessel argument must be nonnegative");
    return detail::bessel_i_scaled_sequence<double>(nu_max, x);
}

double hyp1f1_poly(int m, double x)
{
    require(m >= 1, "1F1(1-m; 2; x) needs m >= 1");
    require(std::isfinite(x), "1F1 argument must be finite");
    detail::CompensatedSum<double> sum;
    double term = 1.0;
    sum.add(term);
    for (int j = 0; j < m - 1; ++j) {
        term *= static_cast<double>(1 - m + j) / (static_cast<double>(2 + j) * static_cast<double>(j + 1)) * x;
        sum.add(term);
    }
    return sum.value();
}

double hyp2f1_poly(int m, double b)
{
    require(m >= 0, "2F1(-m, -m; 1; b) needs m >= 0");
    require(std::isfinite(b) && b >= 0.0 && b <= 1.0, "2F1(-m, -m; 1; b) needs 0 <= b <= 1");
    detail::CompensatedSum<double> sum;
    double term = 1.0;
    sum.add(term);
    for (int j = 0; j < m; ++j) {
        // Numerator first so that b = 1 stays in exact integer arithmetic.
        double num = static_cast<double>(m - j);
        double den = static_cast<double>(j + 1);
        term = term * (num * num) / (den * den) * b;
        sum.add(term);
    }
    double v = sum.value();
    if (!std::isfinite(v)) {
        throw RangeError("2F1(-m, -m; 1; b) overflows for m = " + std::to_string(m));
    }
    return v;
}

SeriesResult hyp2f1_3half(int m, double z, const SeriesControl& ctl)
{
    require(m >= 0, "2F1(3/2, 1+m; 2; z) needs m >= 0");
    require(std::isfinite(z) && z <= 0.0, "2F1(3/2, 1+m; 2; z) needs z <= 0");
    ctl.validate();
    detail::SeriesOutcome<double> out = detail::hyp2f1_3half_kernel<double>(m, z, ctl, ctl.rel_tol);
    if (!out.converged) {
        throw SeriesDivergence("2F1(3/2, 1+m; 2; z) did not converge", out.terms);
    }
    return detail::to_result(out, false);
}

double appell_f1(int m, double x, double y)
{
    require(m >= 0, "Appell F1 needs m >= 0");
    require(std::isfinite(x) && x >= 0.0 && x <= 1.0, "Appell F1 needs 0 <= x <= 1");
    require(std::isfinite(y) && y <= 0.0, "Appell F1 needs y <= 0");
    if (x == 0.0 && y == 0.0) {
        return 1.0;
    }
    quad::Control<double> qc;
    qc.abs_tol = 1e-15;
    qc.rel_tol = 1e-13;
    return detail::appell_f1_block<double>(m, 1, x, y, qc)[0];
}

double marcum_q1(double a, double b) { return marcum_pair(a, b).q; }

double marcum_p1(double a, double b) { return marcum_pair(a, b).p; }

double exp_i0_identity_rhs(double a, double b)
{
    require(std::isfinite(a), "identity argument a must be finite");
    require(std::isfinite(b) && b >= 0.0 && b <= 1.0, "identity argument b must lie in [0, 1]");
    const double x = 2.0 * std::abs(a) * std::sqrt(b);
    const double e = a * (1.0 + b) + x;
    const double i0s = detail::bessel_i_scaled_sequence<double>(0, x)[0];
    const double log_value = e + std::log(i0s);
    if (log_value > std::log(std::numeric_limits<double>::max())) {
        throw RangeError("exp(a(1+b)) I0(2|a|sqrt(b)) overflows for a = " + std::to_string(a));
    }
    if (e < 700.0) {
        return std::exp(e) * i0s;
    }
    return std::exp(log_value);
}

} // namespace twdp::specfun
