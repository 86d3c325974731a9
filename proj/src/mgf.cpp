// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include "twdp/mgf.hpp"

#include <cmath>
#include <string>

#include "twdp/detail/specfun_kernels.hpp"
#include "twdp/detail/summation.hpp"
#include "twdp/error.hpp"
#include "twdp/specfun.hpp"

namespace twdp::mgf {

namespace {

void check_argument(double s)
{
    if (!(std::isfinite(s) && s <= 0.0)) {
        throw InvalidParameter("MGF argument must be a finite s <= 0, got " + std::to_string(s));
    }
}

template <class Real>
detail::SeriesOutcome<Real> series_kernel(double kprime, double b, double u, double prefactor,
                                          const SeriesControl& ctl)
{
    detail::TwdpCoefficients<Real> coef{Real(kprime), Real(b)};
    detail::SeriesMonitor<Real> mon(ctl);
    const double a = kprime * (1.0 + std::sqrt(b)) * (1.0 + std::sqrt(b));
    mon.require_terms(static_cast<int>(std::ceil(a * std::abs(u))) + 2);
    const Real ur = u;
    Real pw = 1;
    while (!mon.converged() && !mon.exhausted()) {
        mon.add(coef.next() * pw);
        pw *= ur;
    }
    return detail::outcome_of(mon, Real(prefactor) * mon.value());
}

} // namespace

SeriesResult mgf_series(const TwdpParams& p, const dist::SnrContext& ctx, double s, const SeriesControl& ctl)
{
    check_argument(s);
    const double g0 = ctx.gamma0();
    const double d = 1.0 + p.k() - s * g0;
    const double u = s * g0 / d;
    const double b = p.gamma() * p.gamma();
    const double kprime = p.k() / (1.0 + b);
    const double prefactor = (1.0 + p.k()) / d;
    return detail::evaluate_series(ctl, "MGF series", [&](auto tag, int) {
        using Real = typename decltype(tag)::type;
        return series_kernel<Real>(kprime, b, u, prefactor, ctl);
    });
}

double mgf_closed(const TwdpParams& p, const dist::SnrContext& ctx, double s)
{
    check_argument(s);
    const double g0 = ctx.gamma0();
    const double d = 1.0 + p.k() - s * g0;
    const double u = s * g0 / d;
    const double b = p.gamma() * p.gamma();
    const double kprime = p.k() / (1.0 + b);
    return (1.0 + p.k()) / d * specfun::exp_i0_identity_rhs(kprime * u, b);
}

} // namespace twdp::mgf
