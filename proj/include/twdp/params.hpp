// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

namespace twdp {

/// Specular magnitudes and diffuse half-power of the two-wave channel.
/// Construction enforces v2 <= v1 by swapping; the model is symmetric in the
/// two specular rays.
class PhysicalMagnitudes {
public:
    PhysicalMagnitudes(double v1, double v2, double sigma2);

    double v1() const noexcept { return v1_; }
    double v2() const noexcept { return v2_; }
    double sigma2() const noexcept { return sigma2_; }

private:
    double v1_;
    double v2_;
    double sigma2_;
};

/// TWDP parameter set (K, Gamma, sigma^2).
///
/// K is the ratio of total specular power to diffuse power, Gamma = V2/V1 the
/// linear ratio of the specular magnitudes and sigma^2 half the diffuse power.
/// Everything else (Delta, K_Rice, V1, V2, Omega) is derived.
class TwdpParams {
public:
    /// Throws InvalidParameter unless k >= 0, 0 <= gamma <= 1, sigma2 > 0.
    TwdpParams(double k, double gamma, double sigma2);

    /// sigma^2 chosen so that the total power Omega equals one.
    static TwdpParams normalized(double k, double gamma);

    /// Legacy (K, Delta) parameterization; sigma^2 defaults to the Omega = 1
    /// normalization.
    static TwdpParams from_k_delta(double k, double delta, std::optional<double> sigma2 = std::nullopt);

    double k() const noexcept { return k_; }
    double gamma() const noexcept { return gamma_; }
    double sigma2() const noexcept { return sigma2_; }

    double delta() const;
    double k_rice() const noexcept;
    double v1() const noexcept;
    double v2() const noexcept;
    /// V1^2 + V2^2 + 2 sigma^2 = 2 sigma^2 (1 + K).
    double omega() const noexcept;

    PhysicalMagnitudes magnitudes() const;

private:
    double k_;
    double gamma_;
    double sigma2_;
};

TwdpParams from_magnitudes(const PhysicalMagnitudes& m);

/// 2 Gamma / (1 + Gamma^2).
double delta_from_gamma(double gamma);

/// Inverse of delta_from_gamma, evaluated as delta / (1 + sqrt(1 - delta^2)).
double gamma_from_delta(double delta);

/// K / (1 + Gamma^2).
double k_rice(const TwdpParams& p);

/// K as a multiple of K_Rice for a given Gamma: 1 + Gamma^2.
double k_over_k_rice_from_gamma(double gamma);

/// K as a multiple of K_Rice for a given Delta: 2 (1 - sqrt(1 - Delta^2)) / Delta^2.
double k_over_k_rice_from_delta(double delta);

} // namespace twdp
