// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include "twdp/params.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "twdp/error.hpp"

namespace twdp {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw InvalidParameter(what);
    }
}

void check_unit_interval(double x, const char* name)
{
    require(std::isfinite(x) && x >= 0.0 && x <= 1.0,
            std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
}

} // namespace

PhysicalMagnitudes::PhysicalMagnitudes(double v1, double v2, double sigma2)
    : v1_(v1), v2_(v2), sigma2_(sigma2)
{
    require(std::isfinite(v1) && v1 >= 0.0, "v1 must be a nonnegative amplitude");
    require(std::isfinite(v2) && v2 >= 0.0, "v2 must be a nonnegative amplitude");
    require(std::isfinite(sigma2) && sigma2 > 0.0, "sigma2 must be positive");
    if (v2_ > v1_) {
        std::swap(v1_, v2_);
    }
}

TwdpParams::TwdpParams(double k, double gamma, double sigma2) : k_(k), gamma_(gamma), sigma2_(sigma2)
{
    require(std::isfinite(k) && k >= 0.0, "K must be nonnegative, got " + std::to_string(k));
    check_unit_interval(gamma, "Gamma");
    require(std::isfinite(sigma2) && sigma2 > 0.0, "sigma2 must be positive, got " + std::to_string(sigma2));
}

TwdpParams TwdpParams::normalized(double k, double gamma)
{
    require(std::isfinite(k) && k >= 0.0, "K must be nonnegative, got " + std::to_string(k));
    return TwdpParams(k, gamma, 1.0 / (2.0 * (1.0 + k)));
}

TwdpParams TwdpParams::from_k_delta(double k, double delta, std::optional<double> sigma2)
{
    double gamma = gamma_from_delta(delta);
    if (sigma2) {
        return TwdpParams(k, gamma, *sigma2);
    }
    return normalized(k, gamma);
}

double TwdpParams::delta() const { return delta_from_gamma(gamma_); }

double TwdpParams::k_rice() const noexcept { return k_ / (1.0 + gamma_ * gamma_); }

double TwdpParams::v1() const noexcept { return std::sqrt(2.0 * sigma2_ * k_rice()); }

double TwdpParams::v2() const noexcept { return gamma_ * v1(); }

double TwdpParams::omega() const noexcept { return 2.0 * sigma2_ * (1.0 + k_); }

PhysicalMagnitudes TwdpParams::magnitudes() const { return PhysicalMagnitudes(v1(), v2(), sigma2_); }

TwdpParams from_magnitudes(const PhysicalMagnitudes& m)
{
    double k = (m.v1() * m.v1() + m.v2() * m.v2()) / (2.0 * m.sigma2());
    double gamma = m.v1() > 0.0 ? m.v2() / m.v1() : 0.0;
    return TwdpParams(k, gamma, m.sigma2());
}

double delta_from_gamma(double gamma)
{
    check_unit_interval(gamma, "Gamma");
    // Evaluated with a wider mantissa so the result is (nearly always) the
    // correctly rounded value; gamma_from_delta then only sees one rounding.
    const long double g = gamma;
    return static_cast<double>(2.0L * g / (1.0L + g * g));
}

double gamma_from_delta(double delta)
{
    check_unit_interval(delta, "Delta");
    // (1 - sqrt(1 - d^2)) / d rationalized; no cancellation as d -> 0.
    return delta / (1.0 + std::sqrt((1.0 - delta) * (1.0 + delta)));
}

double k_rice(const TwdpParams& p) { return p.k_rice(); }

double k_over_k_rice_from_gamma(double gamma)
{
    check_unit_interval(gamma, "Gamma");
    return 1.0 + gamma * gamma;
}

double k_over_k_rice_from_delta(double delta)
{
    check_unit_interval(delta, "Delta");
    return 2.0 / (1.0 + std::sqrt((1.0 - delta) * (1.0 + delta)));
}

} // namespace twdp
