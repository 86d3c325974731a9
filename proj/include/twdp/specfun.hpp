// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "twdp/series.hpp"

namespace twdp::specfun {

/// e^{-x} I_nu(x).
double bessel_i_scaled(int nu, double x);

/// e^{-x} I_k(x) for k = 0..nu_max in one backward recurrence.
std::vector<double> bessel_i_scaled_sequence(int nu_max, double x);

/// 1F1(1-m; 2; x), a polynomial of degree m-1. Plain Pochhammer sum; it loses
/// digits for large x, so the CDF evaluates the same quantity through the
/// Laguerre recurrence instead.
double hyp1f1_poly(int m, double x);

/// 2F1(-m, -m; 1; b) = sum_j C(m, j)^2 b^j for 0 <= b <= 1.
double hyp2f1_poly(int m, double b);

/// 2F1(3/2, 1+m; 2; z) for z <= 0.
SeriesResult hyp2f1_3half(int m, double z, const SeriesControl& ctl = {});

/// Appell F1(3/2; 1/2, 1+m; 5/2; x, y) for 0 <= x <= 1, y <= 0.
double appell_f1(int m, double x, double y);

/// First-order Marcum Q-function.
double marcum_q1(double a, double b);

/// 1 - Q_1(a, b), accurate when Q_1 is close to one.
double marcum_p1(double a, double b);

/// exp(a (1 + b)) I_0(2 |a| sqrt(b)), overflow-safe; throws RangeError when
/// the result is not representable. Negative a is accepted.
double exp_i0_identity_rhs(double a, double b);

} // namespace twdp::specfun
