// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: one [PASS]/[FAIL] line per criterion; exit status 1 if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/distributions/non_central_chi_squared.hpp>

#include "support/oracles.hpp"
#include "twdp/asep.hpp"
#include "twdp/dist.hpp"
#include "twdp/error.hpp"
#include "twdp/mcsim.hpp"
#include "twdp/mgf.hpp"
#include "twdp/params.hpp"
#include "twdp/specfun.hpp"

using namespace twdp;
using asep::ModulationSpec;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Set {
    double k;
    double gamma;
    const char* name;
};

const std::vector<Set> figure_sets = {{0.0, 0.0, "K0"}, {8.0, 0.0, "K8G0"}, {8.0, 0.5, "K8G0.5"}, {14.0, 1.0, "K14G1"}};
const std::vector<int> orders = {2, 4, 8, 16};

std::string fmt(const char* f, double a)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::vector<double> db_grid(double from, double to, double step)
{
    std::vector<double> v;
    for (double d = from; d <= to + 1e-9; d += step) {
        v.push_back(d);
    }
    return v;
}

// ---------------------------------------------------------------------------

Outcome envelope_reproduction()
{
    mcsim::SimConfig cfg;
    cfg.n_samples = 1'000'000;
    cfg.n_bins = 20;
    cfg.seed = 1;
    bool ok = true;
    std::string detail;
    for (const auto& s : figure_sets) {
        TwdpParams p = TwdpParams::normalized(s.k, s.gamma);
        auto samples = mcsim::sample_envelope(p, cfg);
        auto h = mcsim::histogram(samples, false, cfg);
        double worst_z = 0.0;
        for (int b = 0; b < cfg.n_bins; ++b) {
            auto i = static_cast<std::size_t>(b);
            auto f = [&](double r) { return dist::pdf(p, r).value; };
            double pb = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, h.edges[i], h.edges[i + 1], 8, 1e-12);
            double n = static_cast<double>(cfg.n_samples);
            double se = std::sqrt(n * pb * (1.0 - pb));
            double dev = std::abs(static_cast<double>(h.counts[i]) - n * pb);
            double z = se > 0.0 ? dev / se : (dev == 0.0 ? 0.0 : 1e9);
            worst_z = std::max(worst_z, z);
        }
        auto ks = mcsim::ks_test_envelope(p, samples);
        ok = ok && worst_z <= 4.0 && ks.passed;
        detail += std::string(" ") + s.name + fmt(" z=%.2f", worst_z) + fmt(" D=%.2e/%.2e", ks.statistic, ks.critical_1pct);
    }
    return {ok, "bins within 4 SE and KS at 1%:" + detail};
}

Outcome truncation_counts()
{
    bool ok = true;
    int pdf_worst = 0;
    double pdf_trunc = 0.0;
    SeriesControl six;
    six.rel_tol = 1e-6;
    for (const auto& s : figure_sets) {
        TwdpParams p = TwdpParams::normalized(s.k, s.gamma);
        for (int i = 1; i <= 300; ++i) {
            auto r = dist::pdf(p, 0.01 * i, six);
            pdf_worst = std::max(pdf_worst, r.terms_used);
            pdf_trunc = std::max(pdf_trunc, r.trunc_estimate);
        }
    }
    ok = ok && pdf_worst <= 35 && pdf_trunc < 1e-6;

    int asep_worst = 0;
    double asep_trunc = 0.0;
    for (const auto& s : figure_sets) {
        TwdpParams p = TwdpParams::normalized(s.k, s.gamma);
        for (int m : orders) {
            for (double db : db_grid(0, 40, 5)) {
                auto r = asep::asep_exact(p, ModulationSpec(m), asep::db_to_linear(db), six);
                asep_worst = std::max(asep_worst, r.terms_used);
                asep_trunc = std::max(asep_trunc, r.trunc_estimate);
            }
        }
    }
    ok = ok && asep_worst <= 78 && asep_trunc < 1e-6;

    // CDF in double: default tolerance, truncation estimate below 1e-12.
    double cdf_trunc = 0.0;
    // CDF in binary128: absolute truncation below 1e-26, at most 118 terms.
    int ext_worst = 0;
    double ext_abs = 0.0;
    for (const auto& s : figure_sets) {
        TwdpParams p = TwdpParams::normalized(s.k, s.gamma);
        for (int i = 1; i <= 60; ++i) {
            double r = 0.05 * i;
            auto d = dist::cdf(p, r);
            cdf_trunc = std::max(cdf_trunc, d.trunc_estimate);
            SeriesControl ext;
            ext.precision = PrecisionPolicy::extended;
            ext.consec_below = 1;
            ext.rel_tol = std::min(0.5, 1e-26 / d.value);
            auto e = dist::cdf(p, r, ext);
            ext_worst = std::max(ext_worst, e.terms_used);
            ext_abs = std::max(ext_abs, e.trunc_estimate * e.value);
        }
    }
    ok = ok && cdf_trunc < 1e-12 && ext_worst <= 118 && ext_abs < 1e-26;
    return {ok, "pdf " + std::to_string(pdf_worst) + " terms" + fmt(" (trunc %.1e);", pdf_trunc) + " asep " +
                    std::to_string(asep_worst) + " terms" + fmt(" (trunc %.1e);", asep_trunc) +
                    fmt(" cdf double trunc %.1e;", cdf_trunc) + " cdf binary128 " + std::to_string(ext_worst) +
                    " terms" + fmt(" (abs trunc %.1e)", ext_abs)};
}

Outcome mgf_equivalence()
{
    double worst = 0.0;
    int points = 0;
    for (double k : {0.0, 2.0, 8.0, 14.0}) {
        for (double g : {0.0, 0.25, 0.5, 1.0}) {
            TwdpParams p = TwdpParams::normalized(k, g);
            for (double g0 : {1.0, 10.0, 100.0}) {
                auto ctx = dist::SnrContext::from_gamma0(p, g0);
                for (double s : {-10.0, -1.0, -0.1, 0.0}) {
                    worst = std::max(worst, rel(mgf::mgf_series(p, ctx, s).value, mgf::mgf_closed(p, ctx, s)));
                    ++points;
                }
            }
        }
    }
    return {worst <= 1e-10, std::to_string(points) + fmt(" points, worst rel diff %.2e (limit 1e-10)", worst)};
}

Outcome identity_check()
{
    // Left side summed from its definition in long double, 60 terms.
    auto lhs = [](long double a, long double b) {
        long double sum = 0.0L;
        long double am = 1.0L;
        for (int m = 0; m < 60; ++m) {
            if (m > 0) {
                am *= a / m;
            }
            long double f = 1.0L, t = 1.0L;
            for (int j = 0; j < m; ++j) {
                t *= static_cast<long double>(m - j) * (m - j) / ((j + 1.0L) * (j + 1.0L)) * b;
                f += t;
            }
            sum += am * f;
        }
        return sum;
    };
    double worst = 0.0;
    std::string where;
    int bad = 0;
    for (double a : {0.1, 1.0, 5.0, 20.0}) {
        for (double b : {0.0, 0.25, 0.5, 1.0}) {
            double r = specfun::exp_i0_identity_rhs(a, b);
            double e = rel(static_cast<double>(lhs(a, b)), r);
            if (e > 1e-11) {
                ++bad;
            }
            if (e > worst) {
                worst = e;
                where = fmt("a=%g b=%g", a, b);
            }
        }
    }
    return {bad == 0, std::to_string(bad) + " of 16 points above 1e-11; worst " + fmt("%.2e", worst) + " at " + where};
}

Outcome asep_oracle()
{
    double worst = 0.0;
    int flagged = 0;
    int total = 0;
    for (const auto& s : figure_sets) {
        TwdpParams p = TwdpParams::normalized(s.k, s.gamma);
        for (int m : orders) {
            for (double db : db_grid(0, 40, 5)) {
                double g0 = asep::db_to_linear(db);
                auto r = asep::asep_exact(p, ModulationSpec(m), g0);
                ++total;
                if (r.cancellation) {
                    ++flagged;
                    continue;
                }
                worst = std::max(worst, rel(r.value, asep::asep_quadrature(p, ModulationSpec(m), g0)));
            }
        }
    }
    bool ok = worst <= 1e-8 && flagged * 10 < total;
    return {ok, std::to_string(total) + " points, " + std::to_string(flagged) + " flagged," +
                    fmt(" worst rel diff %.2e (limit 1e-8)", worst)};
}

Outcome asymptote_claim()
{
    double worst = 0.0;
    std::string where;
    int bad = 0, total = 0;
    for (const auto& s : figure_sets) {
        TwdpParams p = TwdpParams::normalized(s.k, s.gamma);
        for (int m : orders) {
            for (double db : db_grid(20, 40, 5)) {
                double g0 = asep::db_to_linear(db);
                double ex = asep::asep_exact(p, ModulationSpec(m), g0).value;
                double e = std::abs(asep::asep_asymptotic(p, ModulationSpec(m), g0) / ex - 1.0);
                ++total;
                bad += e > 0.05 ? 1 : 0;
                if (e > worst) {
                    worst = e;
                    where = std::string(s.name) + " M=" + std::to_string(m) + fmt(" %g dB", db);
                }
            }
        }
    }
    return {bad == 0, std::to_string(bad) + " of " + std::to_string(total) + " points beyond 5%; worst " +
                          fmt("%.1f%%", 100 * worst) + " at " + where};
}

Outcome ser_reproduction()
{
    mcsim::SimConfig cfg;
    cfg.seed = 1;
    mcsim::StopRule stop{100, 10'000'000};
    int miss = 0, total = 0;
    std::string misses;
    for (const auto& s : figure_sets) {
        TwdpParams p = TwdpParams::normalized(s.k, s.gamma);
        for (int m : orders) {
            for (double db : {5.0, 10.0, 15.0, 20.0}) {
                auto e = mcsim::simulate_psk_ser(p, ModulationSpec(m), db, cfg, stop);
                double want = asep::asep_quadrature(p, ModulationSpec(m), asep::db_to_linear(db));
                ++total;
                if (want < e.ci_low || want > e.ci_high) {
                    ++miss;
                    misses += std::string(" ") + s.name + "/M" + std::to_string(m) + fmt("/%gdB", db);
                }
            }
        }
    }
    return {miss == 0, std::to_string(miss) + " of " + std::to_string(total) + " analytic values outside the 95% CI" +
                           (misses.empty() ? "" : ":" + misses)};
}

Outcome orderings()
{
    const double g0 = asep::db_to_linear(30.0);
    bool ok = true;
    std::string detail;
    for (int m : orders) {
        ModulationSpec mod(m);
        double a = asep::asep_exact(TwdpParams::normalized(8.0, 0.5), mod, g0).value;
        double b = asep::asep_exact(TwdpParams::normalized(8.0, 0.0), mod, g0).value;
        double c = asep::asep_exact(TwdpParams::normalized(14.0, 1.0), mod, g0).value;
        double d = asep::asep_exact(TwdpParams::normalized(0.0, 0.0), mod, g0).value;
        ok = ok && a > b && c > d;
        detail += " M" + std::to_string(m) + fmt(": %.3g>%.3g", a, b) + fmt(", %.3g>%.3g;", c, d);
    }
    return {ok, "at 30 dB" + detail};
}

Outcome reductions()
{
    double rice_worst = 0.0, ray_worst = 0.0;
    std::string rice_where, ray_where;
    auto track = [](double e, double& worst, std::string& where, const std::string& tag) {
        if (e > worst) {
            worst = e;
            where = tag;
        }
    };
    // Gamma = 0 against independent Rician references.
    for (double k : {0.5, 2.0, 8.0, 14.0}) {
        TwdpParams p = TwdpParams::normalized(k, 0.0);
        const double s2 = p.sigma2();
        boost::math::non_central_chi_squared_distribution<double> chi(2.0, 2.0 * k);
        for (int i = 1; i <= 60; ++i) {
            double r = 0.05 * i;
            double ref_pdf = r / s2 * std::exp(-r * r / (2 * s2) - k + r * std::sqrt(2 * k / s2)) *
                             oracle::bessel_i_scaled(0, r * std::sqrt(2 * k / s2));
            track(rel(dist::pdf(p, r).value, ref_pdf), rice_worst, rice_where, "pdf");
            double ref_cdf = boost::math::cdf(chi, r * r / s2);
            track(rel(dist::cdf(p, r).value, ref_cdf), rice_worst, rice_where, "cdf");
        }
        for (double g0 : {1.0, 10.0, 100.0}) {
            auto ctx = dist::SnrContext::from_gamma0(p, g0);
            for (double s : {-10.0, -1.0, -0.1}) {
                double d = 1 + k - s * g0;
                double ref = (1 + k) / d * std::exp(k * s * g0 / d);
                track(rel(mgf::mgf_series(p, ctx, s).value, ref), rice_worst, rice_where, "mgf");
            }
        }
        for (int m : orders) {
            const double sin2 = std::pow(std::sin(oracle::pi / m), 2);
            for (double db : db_grid(0, 40, 10)) {
                double g0 = asep::db_to_linear(db);
                auto f = [&](double th) {
                    double s = -sin2 / (std::sin(th) * std::sin(th));
                    double d = 1 + k - s * g0;
                    return (1 + k) / d * std::exp(k * s * g0 / d);
                };
                using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
                double hi = oracle::pi - oracle::pi / m;
                double ref = (GK::integrate(f, 0.0, std::min(hi, oracle::pi / 2), 15, 1e-14) +
                              (hi > oracle::pi / 2 ? GK::integrate(f, oracle::pi / 2, hi, 15, 1e-14) : 0.0)) /
                             oracle::pi;
                track(rel(asep::asep_exact(p, ModulationSpec(m), g0).value, ref), rice_worst, rice_where, "asep");
            }
        }
    }
    // K = 0 against Rayleigh closed forms.
    for (double s2 : {0.5, 0.25, 2.0}) {
        TwdpParams p(0.0, 0.0, s2);
        for (int i = 1; i <= 60; ++i) {
            double r = 0.05 * i * std::sqrt(2 * s2);
            track(rel(dist::pdf(p, r).value, r / s2 * std::exp(-r * r / (2 * s2))), ray_worst, ray_where, "pdf");
            track(rel(dist::cdf(p, r).value, -std::expm1(-r * r / (2 * s2))), ray_worst, ray_where, "cdf");
        }
        for (double g0 : {1.0, 10.0, 100.0}) {
            auto ctx = dist::SnrContext::from_gamma0(p, g0);
            for (double s : {-10.0, -1.0, -0.1}) {
                track(rel(mgf::mgf_series(p, ctx, s).value, 1.0 / (1.0 - s * g0)), ray_worst, ray_where, "mgf");
            }
        }
    }
    for (int m : orders) {
        for (double db : db_grid(0, 40, 5)) {
            double g0 = asep::db_to_linear(db);
            // Closed form summed in long double: it cancels to ~1/gamma0.
            const long double pil = 3.141592653589793238462643383279502884L;
            const long double mm = m;
            long double g = static_cast<long double>(g0) * std::pow(std::sin(pil / mm), 2.0L);
            long double mu = std::sqrt(g / (1 + g));
            double ref = static_cast<double>((mm - 1) / mm *
                                             (1 - mu * mm / ((mm - 1) * pil) *
                                                      (pil / 2 + std::atan(mu / std::tan(pil / mm)))));
            track(rel(asep::asep_exact(TwdpParams::normalized(0.0, 0.0), ModulationSpec(m), g0).value, ref), ray_worst,
                  ray_where, "asep");
        }
    }
    bool ok = rice_worst <= 1e-10 && ray_worst <= 1e-12;
    return {ok, fmt("Rician worst %.2e", rice_worst) + " (" + rice_where + ")" + fmt(", Rayleigh worst %.2e", ray_worst) +
                    " (" + ray_where + ")"};
}

Outcome parameterization()
{
    double worst_g = 0.0, worst_d = 0.0, worst_k = 0.0;
    int bad_g = 0;
    for (int i = 0; i <= 1000; ++i) {
        double x = i / 1000.0;
        double eg = std::abs(gamma_from_delta(delta_from_gamma(x)) - x);
        double ed = std::abs(delta_from_gamma(gamma_from_delta(x)) - x);
        bad_g += eg > 1e-14 ? 1 : 0;
        worst_g = std::max(worst_g, eg);
        worst_d = std::max(worst_d, ed);
        if (i > 0) {
            for (double kr : {0.5, 1.0, 7.0}) {
                double a = kr * k_over_k_rice_from_gamma(x);
                double b = kr * k_over_k_rice_from_delta(delta_from_gamma(x));
                worst_k = std::max(worst_k, rel(b, a));
            }
        }
    }
    // fig1 / fig2 curve data on their 101-point grids.
    bool mono = true;
    for (int i = 1; i <= 100; ++i) {
        double x0 = (i - 1) / 100.0, x1 = i / 100.0;
        mono = mono && delta_from_gamma(x1) > delta_from_gamma(x0);
        mono = mono && (i == 100 ? delta_from_gamma(x1) == x1 : delta_from_gamma(x1) > x1);
        mono = mono && k_over_k_rice_from_delta(x1) > k_over_k_rice_from_delta(x0);
        mono = mono && k_over_k_rice_from_gamma(x1) > k_over_k_rice_from_gamma(x0);
        mono = mono && k_over_k_rice_from_delta(x1) >= 1.0 && k_over_k_rice_from_delta(x1) <= 2.0;
    }
    bool ok = bad_g == 0 && worst_d <= 1e-14 && worst_k <= 1e-12 && mono;
    return {ok, fmt("Gamma->Delta->Gamma worst %.2e", worst_g) + " (" + std::to_string(bad_g) + " of 1001 above 1e-14)" +
                    fmt(", Delta->Gamma->Delta worst %.2e", worst_d) + fmt(", K consistency %.2e", worst_k) +
                    ", monotonicity " + (mono ? "holds" : "violated")};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"fig3 envelope histograms and KS", envelope_reproduction},
        {"truncation-count claims", truncation_counts},
        {"MGF series vs closed form", mgf_equivalence},
        {"exp-I0 identity, 60-term left side", identity_check},
        {"ASEP exact vs quadrature", asep_oracle},
        {"asymptote within 5% above 20 dB", asymptote_claim},
        {"fig4 simulated SER vs analytic", ser_reproduction},
        {"qualitative ASEP orderings", orderings},
        {"Rician and Rayleigh reductions", reductions},
        {"parameterization round trips", parameterization},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += o.pass ? 0 : 1;
        std::printf("[%s] %d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
