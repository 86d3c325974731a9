// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include "twdp/asep.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "twdp/detail/specfun_kernels.hpp"
#include "twdp/detail/summation.hpp"
#include "twdp/dist.hpp"
#include "twdp/error.hpp"
#include "twdp/mgf.hpp"
#include "twdp/quadrature.hpp"
#include "twdp/specfun.hpp"

namespace twdp::asep {

namespace {

constexpr double pi = boost::math::constants::pi<double>();

void check_gamma0(double gamma0)
{
    if (!(std::isfinite(gamma0) && gamma0 > 0.0)) {
        throw InvalidParameter("gamma0 must be positive, got " + std::to_string(gamma0));
    }
}

template <class Real>
struct Accuracy;

template <>
struct Accuracy<double> {
    static double inner() { return 1e-17; }
    static double appell() { return 1e-14; }
};

template <>
struct Accuracy<detail::wide_real> {
    static detail::wide_real inner() { return detail::wide_real(1e-34); }
    static detail::wide_real appell() { return detail::wide_real(1e-29); }
};

// P = s (1+K)/(3 pi g0) sum_m (-1)^m c_m [3 pi/(2 s^3) 2F1(3/2,1+m;2;-(1+K)/(g0 s^2))
//     - F1(3/2;1/2,1+m;5/2; s^2, -(1+K)/g0)],  s = sin(pi/M).
template <class Real>
detail::SeriesOutcome<Real> exact_kernel(const TwdpParams& p, int m_order, double gamma0, const SeriesControl& ctl)
{
    using std::sin;
    const Real pi_r = boost::math::constants::pi<Real>();
    const Real s = sin(pi_r / Real(m_order));
    const Real s2 = s * s;
    const Real k = p.k();
    const Real b = Real(p.gamma()) * Real(p.gamma());
    const Real kprime = k / (1 + b);
    const Real g0 = gamma0;
    const Real y = -(1 + k) / g0;
    const Real z = y / s2;
    const Real h_scale = 3 * pi_r / (2 * s2 * s);

    quad::Control<Real> qc;
    qc.rel_tol = Accuracy<Real>::appell();
    qc.abs_tol = 0;

    detail::TwdpCoefficients<Real> coef(kprime, b);
    detail::SeriesMonitor<Real> mon(ctl);
    const double a = p.k() / (1.0 + p.gamma() * p.gamma()) * (1.0 + p.gamma()) * (1.0 + p.gamma());
    mon.require_terms(static_cast<int>(std::ceil(a)) + 2);

    constexpr int block = 32;
    std::vector<Real> appell;
    for (int m = 0; !mon.converged() && !mon.exhausted(); ++m) {
        if (m % block == 0) {
            int count = std::min(block, ctl.max_terms - m);
            appell = detail::appell_f1_block<Real>(m, count, s2, y, qc);
        }
        detail::SeriesOutcome<Real> h = detail::hyp2f1_3half_kernel<Real>(m, z, ctl, Accuracy<Real>::inner());
        if (!h.converged) {
            throw SeriesDivergence("2F1(3/2, 1+m; 2; z) inside the ASEP series did not converge", h.terms);
        }
        Real t = coef.next() * (h_scale * h.value - appell[m % block]);
        if (m % 2 == 1) {
            t = -t;
        }
        mon.add(t);
    }
    const Real pref = s * (1 + k) / (3 * pi_r * g0);
    return detail::outcome_of(mon, pref * mon.value());
}

} // namespace

ModulationSpec::ModulationSpec(int m_order) : m_(m_order)
{
    if (m_order < 2) {
        throw InvalidParameter("PSK order must be at least 2, got " + std::to_string(m_order));
    }
    sin_ = std::sin(pi / m_order);
    sin2_ = sin_ * sin_;
}

double db_to_linear(double db)
{
    if (!std::isfinite(db)) {
        throw InvalidParameter("SNR in dB must be finite");
    }
    return std::pow(10.0, db / 10.0);
}

SeriesResult asep_exact(const TwdpParams& p, const ModulationSpec& mod, double gamma0, const SeriesControl& ctl)
{
    check_gamma0(gamma0);
    return detail::evaluate_series(ctl, "ASEP series", [&](auto tag, int) {
        using Real = typename decltype(tag)::type;
        return exact_kernel<Real>(p, mod.m_order(), gamma0, ctl);
    });
}

double asep_asymptotic(const TwdpParams& p, const ModulationSpec& mod, double gamma0)
{
    check_gamma0(gamma0);
    const double m = mod.m_order();
    const double k = p.k();
    const double g = p.gamma();
    const double kappa = 2.0 * k * g / (1.0 + g * g);
    const double angle = (pi - pi / m + 0.5 * std::sin(2.0 * pi / m)) / mod.sin2_pim();
    // e^{-K} I0(kappa) = e^{kappa - K} * scaled I0, kappa <= K.
    const double fading = std::exp(kappa - k) * specfun::bessel_i_scaled(0, kappa);
    return (1.0 + k) / (2.0 * pi * gamma0) * angle * fading;
}

double asep_quadrature(const TwdpParams& p, const ModulationSpec& mod, double gamma0)
{
    check_gamma0(gamma0);
    const auto ctx = dist::SnrContext::from_gamma0(p, gamma0);
    const double s2 = mod.sin2_pim();
    auto integrand = [&](double theta) {
        double st = std::sin(theta);
        if (st == 0.0) {
            return 0.0;
        }
        return mgf::mgf_closed(p, ctx, -s2 / (st * st));
    };
    quad::Control<double> qc;
    qc.abs_tol = 1e-17;
    qc.rel_tol = 1e-12;
    const double upper = pi - pi / mod.m_order();
    double total = quad::integrate(integrand, 0.0, std::min(upper, pi / 2.0), qc).value;
    if (upper > pi / 2.0) {
        total += quad::integrate(integrand, pi / 2.0, upper, qc).value;
    }
    return total / pi;
}

} // namespace twdp::asep
