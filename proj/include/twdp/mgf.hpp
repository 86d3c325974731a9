// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "twdp/dist.hpp"
#include "twdp/params.hpp"
#include "twdp/series.hpp"

namespace twdp::mgf {

/// SNR moment generating function as the series
/// (1+K)/d sum_m (K'u)^m / m! 2F1(-m,-m;1;Gamma^2), d = 1+K-s gamma0,
/// u = s gamma0 / d, K' = K/(1+Gamma^2). Defined for s <= 0.
SeriesResult mgf_series(const TwdpParams& p, const dist::SnrContext& ctx, double s, const SeriesControl& ctl = {});

/// Closed form (1+K)/d exp(K'u (1+Gamma^2)) I0(2 K' |u| Gamma), s <= 0.
double mgf_closed(const TwdpParams& p, const dist::SnrContext& ctx, double s);

} // namespace twdp::mgf
