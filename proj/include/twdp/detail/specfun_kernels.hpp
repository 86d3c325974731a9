// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "twdp/detail/summation.hpp"
#include "twdp/detail/wide_real.hpp"
#include "twdp/quadrature.hpp"
#include "twdp/series.hpp"

namespace twdp::detail {

/// e^{-x} I_k(x) for k = 0..nu_max by Miller's backward recurrence,
/// normalized with 1 = e^{-x} (I_0(x) + 2 sum_{k>=1} I_k(x)).
template <class Real>
std::vector<Real> bessel_i_scaled_sequence(int nu_max, const Real& x)
{
    using std::ceil;
    using std::log;
    using std::sqrt;
    std::vector<Real> out(static_cast<std::size_t>(nu_max) + 1, Real(0));
    if (x == 0) {
        out[0] = 1;
        return out;
    }
    const double xd = to_double(x);
    const double digits = -std::log(to_double(epsilon_of<Real>()));
    const double l = 2.5 * digits;
    const double nu = static_cast<double>(nu_max);
    const int start = static_cast<int>(std::ceil(std::sqrt(nu * nu + l * xd) + l / 2.0)) + 10;

    const Real big = Real(1e150);
    const Real shrink = Real(1e-150);
    Real two_over_x = 2 / x;
    Real next = 0;   // I_{k+1}
    Real cur = Real(1e-300);  // I_k at k = start
    CompensatedSum<Real> norm;
    for (int k = start; k >= 1; --k) {
        if (k <= nu_max) {
            out[k] = cur;
        }
        norm.add(2 * cur);
        Real prev = Real(k) * two_over_x * cur + next;
        next = cur;
        cur = prev;
        if (cur > big) {
            cur *= shrink;
            next *= shrink;
            Real s = norm.value() * shrink;
            norm = CompensatedSum<Real>();
            norm.add(s);
            for (int j = k; j <= nu_max && j <= start; ++j) {
                out[j] *= shrink;
            }
        }
    }
    out[0] = cur;
    norm.add(cur);
    Real scale = 1 / norm.value();
    for (auto& v : out) {
        v *= scale;
    }
    return out;
}

/// Streams c_m = K'^m / m! * 2F1(-m, -m; 1; b) through the three-term
/// recurrence of 2F1(-m,-m;1;b) folded together with the K'^m/m! factor, so
/// neither factor overflows on its own.
template <class Real>
class TwdpCoefficients {
public:
    TwdpCoefficients(const Real& kprime, const Real& b)
        : kp_(kprime), one_plus_b_(1 + b), one_minus_b_sq_((1 - b) * (1 - b))
    {
    }

    /// Returns c_m for m = 0, 1, 2, ... on successive calls.
    Real next()
    {
        Real out;
        if (m_ == 0) {
            out = 1;
        } else {
            // c_{m} = K'[(2m-1)(1+b) c_{m-1} - K'(1-b)^2 c_{m-2}] / m^2
            Real mm = Real(m_);
            out = kp_ * (Real(2 * m_ - 1) * one_plus_b_ * prev_ - kp_ * one_minus_b_sq_ * prev2_) / (mm * mm);
        }
        prev2_ = prev_;
        prev_ = out;
        ++m_;
        return out;
    }

private:
    Real kp_;
    Real one_plus_b_;
    Real one_minus_b_sq_;
    Real prev_ = 0;
    Real prev2_ = 0;
    int m_ = 0;
};

/// 2F1(3/2, 1+m; 2; z) for z <= 0.
template <class Real>
SeriesOutcome<Real> hyp2f1_3half_kernel(int m, const Real& z, const SeriesControl& ctl, const Real& rel_tol)
{
    using std::expm1;
    using std::log1p;
    using std::pow;
    using std::sqrt;
    SeriesOutcome<Real> out;
    out.converged = true;
    if (z == 0) {
        out.value = 1;
        out.terms = 1;
        return out;
    }
    if (m == 0) {
        // 2 ((1 - z)^{-1/2} - 1) / z
        out.value = 2 * expm1(-log1p(-z) / 2) / z;
        out.terms = 1;
        return out;
    }
    Real one_minus_z = 1 - z;
    Real zeta = z / (z - 1);
    if (zeta <= Real(0.5)) {
        // Pfaff: (1 - z)^{-1-m} 2F1(1/2, 1+m; 2; zeta), positive terms.
        SeriesMonitor<Real> mon(ctl, rel_tol);
        Real term = 1;
        mon.add(term);
        for (int n = 0; !mon.converged() && !mon.exhausted(); ++n) {
            term *= (Real(n) + Real(0.5)) * Real(1 + m + n) / (Real(2 + n) * Real(n + 1)) * zeta;
            mon.add(term);
        }
        out = outcome_of(mon, mon.value() * pow(one_minus_z, -Real(1 + m)));
        return out;
    }
    // Terminating connection form, exact for integer m >= 1:
    // (1-z)^{-3/2} (1/2)_{m-1}/m! sum_{j<m} (3/2)_j (1-m)_j / ((3/2-m)_j j!) w^j.
    Real w = 1 / one_minus_z;
    Real pref = 1;
    for (int j = 0; j < m - 1; ++j) {
        pref *= (Real(0.5) + Real(j)) / Real(j + 1);
    }
    pref /= Real(m);
    CompensatedSum<Real> sum;
    Real term = 1;
    sum.add(term);
    for (int j = 0; j < m - 1; ++j) {
        term *= (Real(1.5) + Real(j)) * Real(1 - m + j) / ((Real(1.5) - Real(m) + Real(j)) * Real(j + 1)) * w;
        sum.add(term);
    }
    out.value = pref * sum.value() * w * sqrt(w);
    out.terms = m;
    return out;
}

/// F1(3/2; 1/2, 1+m; 5/2; x, y) for m = m0 .. m0+count-1, from the Euler
/// integral with t = sin^2(phi):
///   3 int_0^{pi/2} sin^2 cos / sqrt(cos^2 + (1-x) sin^2) (1 - y sin^2)^{-1-m} dphi.
template <class Real>
std::vector<Real> appell_f1_block(int m0, int count, const Real& x, const Real& y, const quad::Control<Real>& qc)
{
    using std::cos;
    using std::pow;
    using std::sin;
    using std::sqrt;
    const Real half_pi = boost::math::constants::half_pi<Real>();
    const Real one_minus_x = 1 - x;
    auto integrand = [&](const Real& phi, std::span<Real> out) {
        Real s = sin(phi);
        Real c = cos(phi);
        Real s2 = s * s;
        Real den = sqrt(c * c + one_minus_x * s2);
        Real ratio = den > 0 ? c / den : Real(1);
        Real w = 1 / (1 - y * s2);
        Real v = 3 * s2 * ratio * pow(w, Real(1 + m0));
        for (auto& o : out) {
            o = v;
            v *= w;
        }
    };
    auto res = quad::integrate_vector(integrand, static_cast<std::size_t>(count), Real(0), half_pi, qc);
    return std::move(res.value);
}

} // namespace twdp::detail
