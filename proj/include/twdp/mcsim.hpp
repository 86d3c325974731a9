// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "twdp/asep.hpp"
#include "twdp/params.hpp"

namespace twdp::mcsim {

/// Worker count from TWDP_WORKERS when it holds a positive integer, else the
/// hardware concurrency.
int default_workers();

struct SimConfig {
    std::int64_t n_samples = 1'000'000;
    int n_bins = 20;
    std::uint64_t seed = 0;
    int workers = default_workers();

    /// Throws InvalidParameter unless n_samples >= n_bins >= 1 and workers >= 1.
    void validate() const;
};

/// n_samples draws of |V1 e^{j phi1} + V2 e^{j phi2} + n| with n complex
/// Gaussian, sigma^2 per component. Sample i depends only on (seed, i).
std::vector<double> sample_envelope(const TwdpParams& p, const SimConfig& cfg);

struct Histogram {
    std::vector<double> edges;
    /// Counts / (n * width) when normalized, raw counts otherwise.
    std::vector<double> density;
    std::vector<std::int64_t> counts;

    double bin_width() const { return edges[1] - edges[0]; }
};

/// cfg.n_bins equal bins over [0, max sample]. A constant sample set goes
/// into the last bin.
Histogram histogram(std::span<const double> samples, bool normalized, const SimConfig& cfg);

struct KsResult {
    double statistic;
    double critical_1pct;
    bool passed;
};

/// Asymptotic 1% critical value of the one-sample KS statistic, 1.6276/sqrt(n).
double ks_critical_1pct(std::int64_t n);

/// One-sample KS test of envelope samples against the series CDF. The CDF is
/// tabulated on a fine grid and interpolated with cubic Hermite segments
/// using the PDF as derivative.
KsResult ks_test_envelope(const TwdpParams& p, std::span<const double> samples);

struct SerEstimate {
    std::int64_t errors = 0;
    std::int64_t trials = 0;
    double ser = 0.0;
    /// Half-width of the 95% Wilson score interval [ci_low, ci_high].
    double ci95_halfwidth = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    /// At least 10 error events observed.
    bool converged = false;
};

SerEstimate make_estimate(std::int64_t errors, std::int64_t trials);

/// Stop once the block-ordered running totals reach target_errors or
/// max_trials.
struct StopRule {
    std::int64_t target_errors = 100;
    std::int64_t max_trials = 10'000'000;
};

/// M-PSK symbol error rate with coherent nearest-phase detection. Fading is
/// scaled to unit mean square and redrawn for every symbol; the noise is
/// CN(0, 1) so the symbol SNR is r^2 gamma0. Runs exactly cfg.n_samples trials.
SerEstimate simulate_psk_ser(const TwdpParams& p, const asep::ModulationSpec& mod, double gamma0_db,
                             const SimConfig& cfg);

/// Adaptive variant. Trials are grouped in fixed blocks and the stop is taken
/// on the block-ordered prefix, so the result does not depend on cfg.workers.
SerEstimate simulate_psk_ser(const TwdpParams& p, const asep::ModulationSpec& mod, double gamma0_db,
                             const SimConfig& cfg, const StopRule& stop);

} // namespace twdp::mcsim
