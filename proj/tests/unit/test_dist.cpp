// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "twdp/dist.hpp"
#include "twdp/error.hpp"
#include "twdp/params.hpp"

using twdp::SeriesControl;
using twdp::TwdpParams;
namespace dist = twdp::dist;

namespace {

double rel_err(double got, double want)
{
    return want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
}

struct Case {
    double k;
    double gamma;
};

const std::vector<Case> figure_sets = {{0.0, 0.0}, {8.0, 0.0}, {8.0, 0.5}, {14.0, 1.0}};

double integrate_pdf(const TwdpParams& p, double lo, double hi)
{
    auto f = [&](double r) { return dist::pdf(p, r).value; };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 10, 1e-13);
}

} // namespace

TEST(Pdf, RayleighExample)
{
    TwdpParams p(0.0, 0.0, 0.5);
    EXPECT_LT(rel_err(dist::pdf(p, 1.0).value, 2.0 * std::exp(-1.0)), 1e-15);
}

TEST(Pdf, RicianExample)
{
    // Independent Rician formula with Boost's I0.
    TwdpParams p(8.0, 0.0, 1.0);
    double r = 4.0;
    double want = r * std::exp(-r * r / 2.0 - 8.0) * boost::math::cyl_bessel_i(0, r * std::sqrt(16.0));
    EXPECT_LT(rel_err(dist::pdf(p, r).value, want), 1e-13);
}

TEST(Pdf, ZeroAtOrigin)
{
    for (const auto& c : figure_sets) {
        EXPECT_EQ(dist::pdf(TwdpParams::normalized(c.k, c.gamma), 0.0).value, 0.0);
        EXPECT_EQ(dist::cdf(TwdpParams::normalized(c.k, c.gamma), 0.0).value, 0.0);
    }
}

TEST(Pdf, Normalization)
{
    for (const auto& c : figure_sets) {
        for (double s2 : {0.0, 0.3, 2.0}) {
            TwdpParams p = s2 == 0.0 ? TwdpParams::normalized(c.k, c.gamma) : TwdpParams(c.k, c.gamma, s2);
            double area = integrate_pdf(p, 0.0, 8.0 * std::sqrt(p.omega()));
            EXPECT_NEAR(area, 1.0, 1e-8) << c.k << " " << c.gamma << " " << s2;
        }
    }
}

TEST(Pdf, ReducesToRicianAndRayleigh)
{
    for (double k : {0.5, 3.0, 8.0, 20.0}) {
        TwdpParams p = TwdpParams::normalized(k, 0.0);
        for (double r = 0.02; r < 3.0; r += 0.07) {
            double want = dist::pdf_rician(k, p.sigma2(), r);
            EXPECT_NEAR(dist::pdf(p, r).value, want, 1e-12 * std::max(want, 1e-3)) << k << " " << r;
        }
    }
    for (double s2 : {0.1, 0.5, 3.0}) {
        TwdpParams p(0.0, 0.3, s2);
        for (double r = 0.01; r < 8.0; r += 0.1) {
            EXPECT_LT(rel_err(dist::pdf(p, r).value, dist::pdf_rayleigh(s2, r)), 1e-14);
        }
    }
}

TEST(Pdf, RicianReferenceAgainstBoost)
{
    for (double k : {1.0, 8.0}) {
        for (double r : {0.1, 1.0, 3.0, 6.0}) {
            double z = r * std::sqrt(2.0 * k);
            double want = r * std::exp(-r * r / 2.0 - k) * boost::math::cyl_bessel_i(0, z);
            EXPECT_LT(rel_err(dist::pdf_rician(k, 1.0, r), want), 1e-13);
        }
    }
}

TEST(Pdf, RicianReferenceIntegratesToOne)
{
    auto f = [](double r) { return dist::pdf_rician(8.0, 1.0, r); };
    double area = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 40.0, 10, 1e-14);
    EXPECT_NEAR(area, 1.0, 1e-9);
}

TEST(Pdf, TruncationWithin35Terms)
{
    SeriesControl ctl;
    ctl.rel_tol = 1e-6;
    for (const auto& c : figure_sets) {
        TwdpParams p = TwdpParams::normalized(c.k, c.gamma);
        for (double r = 0.01; r <= 3.0; r += 0.01) {
            auto res = dist::pdf(p, r, ctl);
            EXPECT_LE(res.terms_used, 35) << c.k << " " << c.gamma << " " << r;
            EXPECT_LT(res.trunc_estimate, 1e-6);
        }
    }
}

TEST(Pdf, ExtendedPrecisionAgrees)
{
    SeriesControl ext;
    ext.precision = twdp::PrecisionPolicy::extended;
    ext.rel_tol = 1e-20;
    TwdpParams p = TwdpParams::normalized(8.0, 0.5);
    for (double r : {0.2, 0.9, 1.7}) {
        auto a = dist::pdf(p, r);
        auto b = dist::pdf(p, r, ext);
        EXPECT_TRUE(b.extended_precision);
        EXPECT_LT(rel_err(a.value, b.value), 1e-11);
    }
}

TEST(Pdf, HeavyCancellationEscalates)
{
    TwdpParams p = TwdpParams::normalized(14.0, 1.0);
    auto res = dist::pdf(p, 1.5);
    EXPECT_TRUE(res.extended_precision);
    EXPECT_GT(res.cancellation_ratio, 1e4);
    EXPECT_FALSE(res.cancellation);
    SeriesControl dbl;
    dbl.precision = twdp::PrecisionPolicy::double_only;
    auto d = dist::pdf(p, 1.5, dbl);
    EXPECT_FALSE(d.extended_precision);
    EXPECT_GT(d.cancellation_ratio, 1e6);
    EXPECT_TRUE(d.cancellation);
}

TEST(Pdf, DivergenceCarriesTermCount)
{
    SeriesControl ctl;
    ctl.max_terms = 4;
    try {
        dist::pdf(TwdpParams::normalized(14.0, 1.0), 1.0, ctl);
        FAIL();
    } catch (const twdp::SeriesDivergence& e) {
        EXPECT_EQ(e.terms_used(), 4);
    }
}

TEST(Cdf, RayleighReduction)
{
    for (double s2 : {0.2, 1.0}) {
        TwdpParams p(0.0, 0.0, s2);
        for (double r = 0.01; r < 6.0; r += 0.13) {
            EXPECT_LT(rel_err(dist::cdf(p, r).value, dist::cdf_rayleigh(s2, r)), 1e-14);
        }
    }
}

TEST(Cdf, RicianExampleViaMarcum)
{
    TwdpParams p(8.0, 0.0, 1.0);
    double want = 1.0 - oracle::marcum_q1_integral(4.0, 3.0);
    EXPECT_NEAR(dist::cdf(p, 3.0).value, want, 1e-12);
    EXPECT_NEAR(dist::cdf_rician(8.0, 1.0, 3.0), want, 1e-12);
}

TEST(Cdf, MatchesRicianAcrossGrid)
{
    for (double k : {0.5, 2.0, 8.0, 20.0}) {
        TwdpParams p = TwdpParams::normalized(k, 0.0);
        for (double r = 0.02; r < 3.0; r += 0.05) {
            double want = dist::cdf_rician(k, p.sigma2(), r);
            EXPECT_NEAR(dist::cdf(p, r).value, want, 1e-12 * std::max(1e-2, want)) << k << " " << r;
        }
    }
}

TEST(Cdf, LargeArgumentLimit)
{
    TwdpParams p = TwdpParams::normalized(14.0, 1.0);
    EXPECT_NEAR(dist::cdf(p, 4.0).value, 1.0, 1e-8);
    EXPECT_NEAR(dist::cdf(p, 8.0).value, 1.0, 1e-12);
}

TEST(Cdf, MonotoneAndConsistentWithPdf)
{
    for (const auto& c : figure_sets) {
        TwdpParams p = TwdpParams::normalized(c.k, c.gamma);
        const double h = 1e-5 * std::sqrt(p.omega());
        double prev = 0.0;
        for (int i = 1; i <= 50; ++i) {
            double r = 0.06 * i;
            double f = dist::cdf(p, r).value;
            EXPECT_GE(f, prev);
            prev = f;
            double deriv = (dist::cdf(p, r + h).value - dist::cdf(p, r - h).value) / (2.0 * h);
            EXPECT_NEAR(deriv, dist::pdf(p, r).value, 1e-6) << c.k << " " << c.gamma << " " << r;
        }
    }
}

TEST(Cdf, MatchesIntegratedPdf)
{
    for (const auto& c : figure_sets) {
        TwdpParams p = TwdpParams::normalized(c.k, c.gamma);
        for (double r : {0.3, 0.8, 1.2, 2.0}) {
            EXPECT_NEAR(dist::cdf(p, r).value, integrate_pdf(p, 0.0, r), 1e-11);
        }
    }
}

TEST(Cdf, DoublePrecisionTruncation)
{
    for (const auto& c : figure_sets) {
        TwdpParams p = TwdpParams::normalized(c.k, c.gamma);
        for (double r = 0.05; r <= 3.0; r += 0.05) {
            EXPECT_LT(dist::cdf(p, r).trunc_estimate, 1e-12);
        }
    }
}

TEST(CdfSnr, Examples)
{
    TwdpParams p = TwdpParams::normalized(8.0, 0.5);
    auto ctx = dist::SnrContext::from_gamma0(p, 10.0);
    EXPECT_EQ(dist::cdf_snr(p, ctx, 0.0).value, 0.0);
    TwdpParams ray = TwdpParams::normalized(0.0, 0.0);
    auto rctx = dist::SnrContext::from_gamma0(ray, 10.0);
    for (double g : {0.1, 1.0, 10.0, 50.0}) {
        EXPECT_LT(rel_err(dist::cdf_snr(ray, rctx, g).value, -std::expm1(-g / 10.0)), 1e-14);
    }
    // Quadrature of the SNR PDF f_R(sqrt(g/es)) / (2 sqrt(g es)) up to gamma0.
    auto f = [&](double g) {
        if (g == 0.0) {
            return 0.0;
        }
        double r = std::sqrt(g / ctx.es_n0());
        return dist::pdf(p, r).value / (2.0 * std::sqrt(g * ctx.es_n0()));
    };
    double want = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 10.0, 12, 1e-12);
    EXPECT_NEAR(dist::cdf_snr(p, ctx, 10.0).value, want, 1e-10);
}

TEST(CdfSnr, ChangeOfVariables)
{
    for (const auto& c : figure_sets) {
        TwdpParams p(c.k, c.gamma, 0.7);
        auto ctx = dist::SnrContext::from_es_n0(p, 3.0);
        EXPECT_NEAR(ctx.gamma0(), 2 * 0.7 * (1 + c.k) * 3.0, 1e-12);
        for (double g : {0.01, 0.5, 3.0, 12.0, 40.0}) {
            double a = dist::cdf_snr(p, ctx, g).value;
            double b = dist::cdf(p, std::sqrt(g / 3.0)).value;
            EXPECT_NEAR(a, b, 1e-12);
        }
    }
}

TEST(Dist, RejectsInvalidInput)
{
    TwdpParams p = TwdpParams::normalized(1.0, 0.5);
    EXPECT_THROW(dist::pdf(p, -1.0), twdp::InvalidParameter);
    EXPECT_THROW(dist::cdf(p, std::nan("")), twdp::InvalidParameter);
    SeriesControl bad;
    bad.rel_tol = 2.0;
    EXPECT_THROW(dist::pdf(p, 1.0, bad), twdp::InvalidParameter);
    EXPECT_THROW(dist::SnrContext::from_gamma0(p, 0.0), twdp::InvalidParameter);
}
