// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include "twdp/mcsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <thread>

#include "twdp/dist.hpp"
#include "twdp/error.hpp"
#include "twdp/rng.hpp"

namespace twdp::mcsim {

namespace {

constexpr std::uint32_t envelope_stream = 0;
constexpr std::uint32_t ser_stream = 1;
constexpr std::int64_t block_size = 1 << 16;

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw InvalidParameter(what);
    }
}

/// Runs body(b) for b in [first, last) on `workers` threads.
void parallel_blocks(int workers, std::int64_t first, std::int64_t last, const std::function<void(std::int64_t)>& body)
{
    const std::int64_t n = last - first;
    if (n <= 0) {
        return;
    }
    const int threads = static_cast<int>(std::min<std::int64_t>(workers, n));
    if (threads <= 1) {
        for (std::int64_t b = first; b < last; ++b) {
            body(b);
        }
        return;
    }
    std::atomic<std::int64_t> next{first};
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::int64_t b = next++; b < last; b = next++) {
                body(b);
            }
        });
    }
}

struct Channel {
    double v1;
    double v2;
    double sigma;

    std::complex<double> draw(const rng::StreamRng& g, std::uint64_t i) const
    {
        const auto phase = g.uniforms(i, 0);
        const auto diffuse = g.normals(i, 1);
        const double two_pi = 2.0 * std::numbers::pi;
        return std::polar(v1, two_pi * phase[0]) + std::polar(v2, two_pi * phase[1]) +
               std::complex<double>(sigma * diffuse[0], sigma * diffuse[1]);
    }
};

Channel channel_of(const TwdpParams& p, double scale)
{
    return {p.v1() * scale, p.v2() * scale, std::sqrt(p.sigma2()) * scale};
}

class PskTrial {
public:
    PskTrial(const TwdpParams& p, const asep::ModulationSpec& mod, double gamma0_db, std::uint64_t seed)
        : chan_(channel_of(p, 1.0 / std::sqrt(p.omega()))),
          g_(seed, ser_stream),
          m_(mod.m_order()),
          amp_(std::sqrt(asep::db_to_linear(gamma0_db))),
          half_sector_(std::numbers::pi / mod.m_order())
    {
        for (int k = 0; k < m_; ++k) {
            symbols_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / m_));
        }
    }

    bool error(std::uint64_t i) const
    {
        const std::complex<double> h = chan_.draw(g_, i);
        const auto u = g_.uniforms(i, 2);
        const int k = std::min(static_cast<int>(u[0] * m_), m_ - 1);
        const auto w = g_.normals(i, 3);
        const std::complex<double> y =
            amp_ * h * symbols_[static_cast<std::size_t>(k)] + std::complex<double>(w[0], w[1]) * std::numbers::sqrt2 / 2.0;
        // Phase of the equalized sample relative to the transmitted symbol.
        const std::complex<double> z = y * std::conj(h) * std::conj(symbols_[static_cast<std::size_t>(k)]);
        return std::abs(std::arg(z)) > half_sector_;
    }

private:
    Channel chan_;
    rng::StreamRng g_;
    int m_;
    double amp_;
    double half_sector_;
    std::vector<std::complex<double>> symbols_;
};

std::int64_t count_errors(const PskTrial& trial, std::int64_t begin, std::int64_t end)
{
    std::int64_t errors = 0;
    for (std::int64_t i = begin; i < end; ++i) {
        errors += trial.error(static_cast<std::uint64_t>(i)) ? 1 : 0;
    }
    return errors;
}

void check_snr(double gamma0_db) { require(std::isfinite(gamma0_db), "gamma0 (dB) must be finite"); }

} // namespace

int default_workers()
{
    if (const char* env = std::getenv("TWDP_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 4096) {
            return static_cast<int>(v);
        }
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void SimConfig::validate() const
{
    require(n_bins >= 1, "n_bins must be positive");
    require(n_samples >= n_bins, "n_samples must be at least n_bins");
    require(workers >= 1, "workers must be positive");
}

std::vector<double> sample_envelope(const TwdpParams& p, const SimConfig& cfg)
{
    cfg.validate();
    const Channel chan = channel_of(p, 1.0);
    const rng::StreamRng g(cfg.seed, envelope_stream);
    std::vector<double> out(static_cast<std::size_t>(cfg.n_samples));
    const std::int64_t blocks = (cfg.n_samples + block_size - 1) / block_size;
    parallel_blocks(cfg.workers, 0, blocks, [&](std::int64_t b) {
        const std::int64_t end = std::min(cfg.n_samples, (b + 1) * block_size);
        for (std::int64_t i = b * block_size; i < end; ++i) {
            out[static_cast<std::size_t>(i)] = std::abs(chan.draw(g, static_cast<std::uint64_t>(i)));
        }
    });
    return out;
}

Histogram histogram(std::span<const double> samples, bool normalized, const SimConfig& cfg)
{
    require(!samples.empty(), "histogram needs at least one sample");
    require(cfg.n_bins >= 1, "n_bins must be positive");
    double top = 0.0;
    for (double s : samples) {
        require(std::isfinite(s) && s >= 0.0, "histogram samples must be finite and nonnegative");
        top = std::max(top, s);
    }
    if (top == 0.0) {
        top = 1.0;
    }
    const int nb = cfg.n_bins;
    Histogram h;
    h.edges.resize(static_cast<std::size_t>(nb) + 1);
    for (int i = 0; i <= nb; ++i) {
        h.edges[static_cast<std::size_t>(i)] = top * i / nb;
    }
    h.counts.assign(static_cast<std::size_t>(nb), 0);
    const double width = top / nb;
    for (double s : samples) {
        int bin = std::min(static_cast<int>(s / width), nb - 1);
        ++h.counts[static_cast<std::size_t>(bin)];
    }
    const double n = static_cast<double>(samples.size());
    h.density.resize(static_cast<std::size_t>(nb));
    for (int i = 0; i < nb; ++i) {
        double c = static_cast<double>(h.counts[static_cast<std::size_t>(i)]);
        h.density[static_cast<std::size_t>(i)] = normalized ? c / (n * width) : c;
    }
    return h;
}

double ks_critical_1pct(std::int64_t n)
{
    require(n >= 1, "KS test needs samples");
    return 1.6276 / std::sqrt(static_cast<double>(n));
}

KsResult ks_test_envelope(const TwdpParams& p, std::span<const double> samples)
{
    require(!samples.empty(), "KS test needs samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double top = sorted.back();
    const int nodes = 4000;
    const double h = top / nodes;
    std::vector<double> f(nodes + 1), d(nodes + 1);
    for (int i = 0; i <= nodes; ++i) {
        double r = h * i;
        f[static_cast<std::size_t>(i)] = dist::cdf(p, r).value;
        d[static_cast<std::size_t>(i)] = dist::pdf(p, r).value;
    }
    auto cdf_at = [&](double r) {
        if (top == 0.0) {
            return 0.0;
        }
        int i = std::min(static_cast<int>(r / h), nodes - 1);
        double t = (r - h * i) / h;
        auto k = static_cast<std::size_t>(i);
        double t2 = t * t;
        double t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * f[k] + (t3 - 2 * t2 + t) * h * d[k] + (-2 * t3 + 3 * t2) * f[k + 1] +
               (t3 - t2) * h * d[k + 1];
    };
    const double n = static_cast<double>(sorted.size());
    double stat = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double fx = cdf_at(sorted[i]);
        stat = std::max({stat, fx - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - fx});
    }
    const double crit = ks_critical_1pct(static_cast<std::int64_t>(sorted.size()));
    return {stat, crit, stat < crit};
}

SerEstimate make_estimate(std::int64_t errors, std::int64_t trials)
{
    require(trials > 0 && errors >= 0 && errors <= trials, "invalid error/trial counts");
    SerEstimate e;
    e.errors = errors;
    e.trials = trials;
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(errors) / n;
    const double z = 1.959963984540054;
    const double z2 = z * z;
    const double centre = (ph + z2 / (2 * n)) / (1 + z2 / n);
    const double half = z / (1 + z2 / n) * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n));
    e.ser = ph;
    // The Wilson bounds at the extremes are exactly 0 and 1; avoid rounding
    // residue there.
    e.ci_low = errors == 0 ? 0.0 : std::max(0.0, centre - half);
    e.ci_high = errors == trials ? 1.0 : std::min(1.0, centre + half);
    e.ci95_halfwidth = half;
    e.converged = errors >= 10;
    return e;
}

SerEstimate simulate_psk_ser(const TwdpParams& p, const asep::ModulationSpec& mod, double gamma0_db,
                             const SimConfig& cfg)
{
    cfg.validate();
    check_snr(gamma0_db);
    const PskTrial trial(p, mod, gamma0_db, cfg.seed);
    const std::int64_t blocks = (cfg.n_samples + block_size - 1) / block_size;
    std::vector<std::int64_t> errs(static_cast<std::size_t>(blocks));
    parallel_blocks(cfg.workers, 0, blocks, [&](std::int64_t b) {
        errs[static_cast<std::size_t>(b)] = count_errors(trial, b * block_size, std::min(cfg.n_samples, (b + 1) * block_size));
    });
    std::int64_t total = 0;
    for (auto e : errs) {
        total += e;
    }
    return make_estimate(total, cfg.n_samples);
}

SerEstimate simulate_psk_ser(const TwdpParams& p, const asep::ModulationSpec& mod, double gamma0_db,
                             const SimConfig& cfg, const StopRule& stop)
{
    require(cfg.workers >= 1, "workers must be positive");
    require(stop.target_errors >= 1 && stop.max_trials >= 1, "stop rule needs positive limits");
    check_snr(gamma0_db);
    const PskTrial trial(p, mod, gamma0_db, cfg.seed);
    const std::int64_t total_blocks = (stop.max_trials + block_size - 1) / block_size;
    const std::int64_t round = std::max<std::int64_t>(4, 2 * cfg.workers);
    std::int64_t errors = 0;
    std::int64_t trials = 0;
    for (std::int64_t first = 0; first < total_blocks;) {
        const std::int64_t last = std::min(total_blocks, first + round);
        std::vector<std::int64_t> errs(static_cast<std::size_t>(last - first));
        parallel_blocks(cfg.workers, first, last, [&](std::int64_t b) {
            errs[static_cast<std::size_t>(b - first)] =
                count_errors(trial, b * block_size, std::min(stop.max_trials, (b + 1) * block_size));
        });
        for (std::int64_t b = first; b < last; ++b) {
            errors += errs[static_cast<std::size_t>(b - first)];
            trials = std::min(stop.max_trials, (b + 1) * block_size);
            if (errors >= stop.target_errors) {
                return make_estimate(errors, trials);
            }
        }
        first = last;
    }
    return make_estimate(errors, trials);
}

} // namespace twdp::mcsim
