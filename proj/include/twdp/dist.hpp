// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "twdp/params.hpp"
#include "twdp/series.hpp"

namespace twdp::dist {

/// Average SNR gamma0 = Omega * Es/N0 together with the Es/N0 it came from.
class SnrContext {
public:
    static SnrContext from_es_n0(const TwdpParams& p, double es_n0);
    static SnrContext from_gamma0(const TwdpParams& p, double gamma0);

    double gamma0() const noexcept { return gamma0_; }
    double es_n0() const noexcept { return es_n0_; }

private:
    SnrContext(double gamma0, double es_n0) : gamma0_(gamma0), es_n0_(es_n0) {}

    double gamma0_;
    double es_n0_;
};

/// Envelope PDF f_R(r). Scaled Bessel products are summed and the common
/// exponential factor is applied once at the end.
SeriesResult pdf(const TwdpParams& p, double r, const SeriesControl& ctl = {});

/// Envelope CDF F_R(r). Throws CancellationLoss if the series lands outside
/// [-1e-9, 1 + 1e-9]; otherwise the value is clamped to [0, 1].
SeriesResult cdf(const TwdpParams& p, double r, const SeriesControl& ctl = {});

/// CDF of the instantaneous SNR gamma = r^2 Es/N0.
SeriesResult cdf_snr(const TwdpParams& p, const SnrContext& ctx, double gamma, const SeriesControl& ctl = {});

double pdf_rayleigh(double sigma2, double r);
double cdf_rayleigh(double sigma2, double r);

/// Rician reference with K = v^2 / (2 sigma^2):
/// (r/sigma^2) exp(-r^2/(2 sigma^2) - K) I0((r/sigma) sqrt(2K)).
double pdf_rician(double k, double sigma2, double r);

/// 1 - Q1(sqrt(2K), r/sigma).
double cdf_rician(double k, double sigma2, double r);

} // namespace twdp::dist
