// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include "twdp/dist.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "twdp/detail/specfun_kernels.hpp"
#include "twdp/detail/summation.hpp"
#include "twdp/error.hpp"
#include "twdp/specfun.hpp"

namespace twdp::dist {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw InvalidParameter(what);
    }
}

int bessel_cap(const SeriesControl& ctl, int hint)
{
    int cap = ctl.max_terms - 1;
    if (hint > 0) {
        cap = std::min(cap, hint + 16);
    }
    return cap;
}

template <class Real>
detail::SeriesOutcome<Real> pdf_kernel(const TwdpParams& p, double r_in, const SeriesControl& ctl, int hint)
{
    using std::exp;
    using std::log;
    using std::sqrt;
    const Real r = r_in;
    const Real s2 = p.sigma2();
    const Real k = p.k();
    const Real g = p.gamma();
    const Real one_g2 = 1 + g * g;
    const Real alpha = 2 * r * sqrt(k / (2 * s2 * one_g2));
    const Real beta = g * alpha;
    const Real kappa = 2 * k * g / one_g2;

    const int cap = bessel_cap(ctl, hint);
    std::vector<Real> ia = detail::bessel_i_scaled_sequence<Real>(cap, alpha);
    std::vector<Real> ib = detail::bessel_i_scaled_sequence<Real>(cap, beta);
    std::vector<Real> ik = detail::bessel_i_scaled_sequence<Real>(cap, kappa);

    detail::SeriesMonitor<Real> mon(ctl);
    for (int m = 0; m <= cap; ++m) {
        Real t = ia[m] * ib[m] * ik[m];
        if (m > 0) {
            t *= (m % 2 == 0) ? Real(2) : Real(-2);
        }
        if (mon.add(t)) {
            break;
        }
    }
    const Real expo = -r * r / (2 * s2) - k + alpha + beta + kappa;
    Real sum = mon.value();
    Real value = 0;
    if (sum > 0) {
        value = r / s2 * exp(expo + log(sum));
    }
    return detail::outcome_of(mon, value);
}

// F = x sum_m (-1)^m c_m 1F1(1-m; 2; x), c_m = K'^m/m! 2F1(-m,-m;1;b), with
// 1F1(1;2;x) = expm1(x)/x and 1F1(1-m;2;x) = L_{m-1}^{(1)}(x)/m, the Laguerre
// values carried with the e^{-x} factor folded in.
template <class Real>
detail::SeriesOutcome<Real> cdf_kernel(double x_in, double kprime, double b, const SeriesControl& ctl)
{
    using std::exp;
    using std::expm1;
    const Real x = x_in;
    detail::TwdpCoefficients<Real> coef{Real(kprime), Real(b)};
    detail::SeriesMonitor<Real> mon(ctl);
    // Terms behave like (A x)^m / (m!)^2 while m < x and like c_m beyond, with
    // A = K' (1 + sqrt(b))^2; the stop rule only applies past both peaks.
    const double a = kprime * (1.0 + std::sqrt(b)) * (1.0 + std::sqrt(b));
    mon.require_terms(static_cast<int>(std::ceil(std::sqrt(a * std::max(x_in, a)))) + 2);
    const Real ex = exp(-x);
    Real lag_prev = 0;
    Real lag = ex;  // e^{-x} L_0^{(1)}(x)
    mon.add(coef.next() * (-expm1(-x) / x));
    for (int m = 1; !mon.converged() && !mon.exhausted(); ++m) {
        const int n = m - 1;  // lag holds e^{-x} L_n^{(1)}(x)
        Real t = coef.next() * lag / Real(m);
        if (m % 2 == 1) {
            t = -t;
        }
        mon.add(t);
        Real next = ((Real(2 * n + 2) - x) * lag - Real(n + 1) * lag_prev) / Real(n + 1);
        lag_prev = lag;
        lag = next;
    }
    return detail::outcome_of(mon, x * mon.value());
}

SeriesResult cdf_from_x(const TwdpParams& p, double x, const SeriesControl& ctl)
{
    ctl.validate();
    if (x == 0.0) {
        return SeriesResult{0.0, 1, 0.0, 1.0, false, false};
    }
    const double g2 = p.gamma() * p.gamma();
    const double kprime = p.k() / (1.0 + g2);
    SeriesResult res = detail::evaluate_series(ctl, "envelope CDF series", [&](auto tag, int) {
        using Real = typename decltype(tag)::type;
        return cdf_kernel<Real>(x, kprime, g2, ctl);
    });
    if (!(res.value >= -1e-9 && res.value <= 1.0 + 1e-9)) {
        throw CancellationLoss("envelope CDF series left [0, 1]: " + std::to_string(res.value),
                               res.cancellation_ratio);
    }
    res.value = std::clamp(res.value, 0.0, 1.0);
    return res;
}

} // namespace

SnrContext SnrContext::from_es_n0(const TwdpParams& p, double es_n0)
{
    require(std::isfinite(es_n0) && es_n0 > 0.0, "Es/N0 must be positive");
    return SnrContext(p.omega() * es_n0, es_n0);
}

SnrContext SnrContext::from_gamma0(const TwdpParams& p, double gamma0)
{
    require(std::isfinite(gamma0) && gamma0 > 0.0, "gamma0 must be positive");
    return SnrContext(gamma0, gamma0 / p.omega());
}

SeriesResult pdf(const TwdpParams& p, double r, const SeriesControl& ctl)
{
    require(std::isfinite(r) && r >= 0.0, "r must be nonnegative");
    ctl.validate();
    if (r == 0.0) {
        return SeriesResult{0.0, 1, 0.0, 1.0, false, false};
    }
    return detail::evaluate_series(ctl, "envelope PDF series", [&](auto tag, int hint) {
        using Real = typename decltype(tag)::type;
        return pdf_kernel<Real>(p, r, ctl, hint);
    });
}

SeriesResult cdf(const TwdpParams& p, double r, const SeriesControl& ctl)
{
    require(std::isfinite(r) && r >= 0.0, "r must be nonnegative");
    return cdf_from_x(p, r * r / (2.0 * p.sigma2()), ctl);
}

SeriesResult cdf_snr(const TwdpParams& p, const SnrContext& ctx, double gamma, const SeriesControl& ctl)
{
    require(std::isfinite(gamma) && gamma >= 0.0, "SNR must be nonnegative");
    return cdf_from_x(p, gamma * (1.0 + p.k()) / ctx.gamma0(), ctl);
}

double pdf_rayleigh(double sigma2, double r)
{
    require(std::isfinite(sigma2) && sigma2 > 0.0, "sigma2 must be positive");
    require(std::isfinite(r) && r >= 0.0, "r must be nonnegative");
    return r / sigma2 * std::exp(-r * r / (2.0 * sigma2));
}

double cdf_rayleigh(double sigma2, double r)
{
    require(std::isfinite(sigma2) && sigma2 > 0.0, "sigma2 must be positive");
    require(std::isfinite(r) && r >= 0.0, "r must be nonnegative");
    return -std::expm1(-r * r / (2.0 * sigma2));
}

double pdf_rician(double k, double sigma2, double r)
{
    require(std::isfinite(k) && k >= 0.0, "K must be nonnegative");
    require(std::isfinite(sigma2) && sigma2 > 0.0, "sigma2 must be positive");
    require(std::isfinite(r) && r >= 0.0, "r must be nonnegative");
    const double z = r / std::sqrt(sigma2) * std::sqrt(2.0 * k);
    const double e = -r * r / (2.0 * sigma2) - k + z;
    return r / sigma2 * std::exp(e) * specfun::bessel_i_scaled(0, z);
}

double cdf_rician(double k, double sigma2, double r)
{
    require(std::isfinite(k) && k >= 0.0, "K must be nonnegative");
    require(std::isfinite(sigma2) && sigma2 > 0.0, "sigma2 must be positive");
    require(std::isfinite(r) && r >= 0.0, "r must be nonnegative");
    return specfun::marcum_p1(std::sqrt(2.0 * k), r / std::sqrt(sigma2));
}

} // namespace twdp::dist
