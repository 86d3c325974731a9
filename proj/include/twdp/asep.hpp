// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "twdp/params.hpp"
#include "twdp/series.hpp"

namespace twdp::asep {

/// M-ary PSK constellation order with sin^2(pi/M) cached.
class ModulationSpec {
public:
    /// Throws InvalidParameter unless m_order >= 2.
    explicit ModulationSpec(int m_order);

    int m_order() const noexcept { return m_; }
    double sin_pim() const noexcept { return sin_; }
    double sin2_pim() const noexcept { return sin2_; }

private:
    int m_;
    double sin_;
    double sin2_;
};

/// 10^(db/10).
double db_to_linear(double db);

/// Exact average symbol error probability as the alternating series over the
/// TWDP coefficients, each term combining 2F1(3/2, 1+m; 2; .) with an Appell
/// F1. gamma0 is linear. A set `cancellation` flag on the result means the
/// value should not be trusted; asep_quadrature is the fallback.
SeriesResult asep_exact(const TwdpParams& p, const ModulationSpec& mod, double gamma0, const SeriesControl& ctl = {});

/// High-SNR asymptote, proportional to 1/gamma0.
double asep_asymptotic(const TwdpParams& p, const ModulationSpec& mod, double gamma0);

/// (1/pi) int_0^{pi - pi/M} M_gamma(-sin^2(pi/M) / sin^2(theta)) dtheta with
/// the closed-form MGF.
double asep_quadrature(const TwdpParams& p, const ModulationSpec& mod, double gamma0);

} // namespace twdp::asep
