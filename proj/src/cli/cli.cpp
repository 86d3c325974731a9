// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include "twdp/cli.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/csv.hpp"
#include "cli/figures.hpp"
#include "twdp/asep.hpp"
#include "twdp/dist.hpp"
#include "twdp/error.hpp"
#include "twdp/mcsim.hpp"
#include "twdp/mgf.hpp"
#include "twdp/params.hpp"

namespace twdp::cli {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw InvalidParameter(what);
    }
}

struct ParamFlags {
    double k = 0.0;
    std::optional<double> gamma;
    std::optional<double> delta;
    std::optional<double> sigma2;

    void attach(CLI::App& app)
    {
        app.add_option("--k", k, "Specular-to-diffuse power ratio K")->default_val(0.0);
        auto* g = app.add_option("--gamma", gamma, "Specular magnitude ratio V2/V1");
        auto* d = app.add_option("--delta", delta, "Legacy parameter 2 V1 V2 / (V1^2 + V2^2)");
        g->excludes(d);
        d->excludes(g);
        app.add_option("--sigma2", sigma2, "Diffuse half-power (default: unit total power)");
    }

    TwdpParams resolve() const
    {
        double g = gamma ? *gamma : (delta ? gamma_from_delta(*delta) : 0.0);
        return sigma2 ? TwdpParams(k, g, *sigma2) : TwdpParams::normalized(k, g);
    }
};

struct SeriesFlags {
    double tol = 1e-12;
    int max_terms = 500;
    std::string precision = "auto";

    void attach(CLI::App& app)
    {
        app.add_option("--tol", tol, "Relative truncation tolerance")->default_val(1e-12);
        app.add_option("--max-terms", max_terms, "Series term cap")->default_val(500);
        app.add_option("--precision", precision, "auto | double | extended")
            ->check(CLI::IsMember({"auto", "double", "extended"}))
            ->default_val("auto");
    }

    SeriesControl control() const
    {
        SeriesControl c;
        c.rel_tol = tol;
        c.max_terms = max_terms;
        c.precision = precision == "double"     ? PrecisionPolicy::double_only
                      : precision == "extended" ? PrecisionPolicy::extended
                                                : PrecisionPolicy::automatic;
        c.validate();
        return c;
    }
};

int exit_code_of(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_parameter:
        return exit_usage;
    case ErrorKind::series_divergence:
        return exit_convergence;
    case ErrorKind::quadrature_failure:
        return exit_quadrature;
    case ErrorKind::io_error:
        return exit_io;
    case ErrorKind::cancellation_loss:
        return exit_cancellation;
    case ErrorKind::range_error:
        break;
    }
    return exit_other;
}

void emit_envelope(std::ostream& os, const ParamFlags& pf, const SeriesFlags& sf, int points, double rmax,
                   bool normalized, bool cumulative)
{
    const TwdpParams p = pf.resolve();
    const SeriesControl ctl = sf.control();
    SweepGrid grid{Axis::envelope_r, 0.0, rmax, points, Scale::linear};
    grid.validate();
    const double unit = normalized ? std::sqrt(p.omega()) : 1.0;
    CsvWriter csv(os, {"x", "y", "terms_used"});
    for (double x : grid.values()) {
        const double r = x * unit;
        SeriesResult res = cumulative ? dist::cdf(p, r, ctl) : dist::pdf(p, r, ctl);
        const double y = cumulative ? res.value : res.value * unit;
        csv.real(x).real(y).integer(res.terms_used).end_row();
    }
}

void emit_mgf(std::ostream& os, const ParamFlags& pf, const SeriesFlags& sf, double snr_db, double s_min, int points,
              const std::string& method)
{
    const TwdpParams p = pf.resolve();
    const SeriesControl ctl = sf.control();
    const auto ctx = dist::SnrContext::from_gamma0(p, asep::db_to_linear(snr_db));
    SweepGrid grid{Axis::mgf_argument, s_min, 0.0, points, Scale::linear};
    grid.validate();
    CsvWriter csv(os, {"x", "y", "terms_used"});
    for (double s : grid.values()) {
        if (method == "closed") {
            csv.real(s).real(mgf::mgf_closed(p, ctx, s)).integer(0).end_row();
        } else {
            SeriesResult r = mgf::mgf_series(p, ctx, s, ctl);
            csv.real(s).real(r.value).integer(r.terms_used).end_row();
        }
    }
}

void emit_asep(std::ostream& os, const ParamFlags& pf, const SeriesFlags& sf, int m_order, const std::string& range,
               const std::string& method)
{
    const TwdpParams p = pf.resolve();
    const SeriesControl ctl = sf.control();
    const asep::ModulationSpec mod(m_order);
    const bool all = method == "all";
    std::vector<std::string> header{"x"};
    if (all || method == "exact") {
        header.push_back("exact");
    }
    if (all || method == "asymptotic") {
        header.push_back("asymptotic");
    }
    if (all || method == "quadrature") {
        header.push_back("quadrature");
    }
    header.push_back("terms_used");
    header.push_back("method_tag");
    CsvWriter csv(os, header);
    for (double db : parse_db_range(range)) {
        const double g0 = asep::db_to_linear(db);
        csv.real(db);
        int terms = 0;
        std::string tag = method;
        if (all || method == "exact") {
            double v;
            tag = "exact";
            try {
                SeriesResult r = asep::asep_exact(p, mod, g0, ctl);
                terms = r.terms_used;
                v = r.value;
                if (r.cancellation) {
                    v = asep::asep_quadrature(p, mod, g0);
                    tag = "exact>quadrature:cancellation";
                }
            } catch (const SeriesDivergence& e) {
                terms = e.terms_used();
                v = asep::asep_quadrature(p, mod, g0);
                tag = "exact>quadrature:divergence";
            }
            csv.real(v);
        }
        if (all || method == "asymptotic") {
            csv.real(asep::asep_asymptotic(p, mod, g0));
        }
        if (all || method == "quadrature") {
            csv.real(asep::asep_quadrature(p, mod, g0));
        }
        if (all) {
            tag = tag == "exact" ? "all" : "all;" + tag;
        }
        csv.integer(terms).text(tag).end_row();
    }
}

void emit_simulate(std::ostream& os, const ParamFlags& pf, int m_order, const std::string& range,
                   std::int64_t samples, std::uint64_t seed, int workers, std::optional<std::int64_t> target)
{
    require(samples >= 1000, "--samples must be at least 1000");
    const TwdpParams p = pf.resolve();
    const asep::ModulationSpec mod(m_order);
    mcsim::SimConfig cfg;
    cfg.n_samples = samples;
    cfg.seed = seed;
    cfg.workers = workers;
    cfg.validate();
    CsvWriter csv(os, {"x", "ser", "ci95", "errors", "trials"});
    for (double db : parse_db_range(range)) {
        mcsim::SerEstimate e = target ? mcsim::simulate_psk_ser(p, mod, db, cfg, mcsim::StopRule{*target, samples})
                                      : mcsim::simulate_psk_ser(p, mod, db, cfg);
        csv.real(db).real(e.ser).real(e.ci95_halfwidth).integer(e.errors).integer(e.trials).end_row();
    }
}

void emit_convert(std::ostream& os, std::optional<double> gamma, std::optional<double> delta,
                  std::optional<double> k_rice)
{
    require(gamma.has_value() != delta.has_value(), "give exactly one of --gamma and --delta");
    const double g = gamma ? *gamma : gamma_from_delta(*delta);
    const double d = delta ? *delta : delta_from_gamma(*gamma);
    std::vector<std::string> header{"gamma", "delta"};
    if (k_rice) {
        require(std::isfinite(*k_rice) && *k_rice >= 0.0, "--k-rice must be nonnegative");
        header.push_back("k_rice");
        header.push_back("k");
    }
    CsvWriter csv(os, header);
    csv.real(g).real(d);
    if (k_rice) {
        const double ratio = gamma ? k_over_k_rice_from_gamma(g) : k_over_k_rice_from_delta(d);
        csv.real(*k_rice).real(*k_rice * ratio);
    }
    csv.end_row();
}

} // namespace

void SweepGrid::validate() const
{
    require(std::isfinite(start) && std::isfinite(stop) && start < stop, "sweep needs start < stop");
    require(points >= 2, "sweep needs at least two points");
    require(scale == Scale::linear || start > 0.0, "log sweep needs start > 0");
}

std::vector<double> SweepGrid::values() const
{
    validate();
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        v[static_cast<std::size_t>(i)] = scale == Scale::linear
                                             ? start + (stop - start) * t
                                             : start * std::pow(stop / start, t);
    }
    v.back() = stop;
    return v;
}

std::vector<double> parse_db_range(const std::string& text)
{
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == item.size() && !item.empty() && std::isfinite(v), "bad SNR range '" + text + "'");
        parts.push_back(v);
    }
    if (parts.size() == 1) {
        return parts;
    }
    require(parts.size() == 3, "SNR range must be 'from:to:step' or a single value");
    const double from = parts[0], to = parts[1], step = parts[2];
    require(step > 0.0 && from <= to, "SNR range needs step > 0 and from <= to");
    const auto n = static_cast<long>(std::floor((to - from) / step * (1 + 1e-12))) + 1;
    require(n <= 100000, "SNR range has too many points");
    std::vector<double> out;
    for (long i = 0; i < n; ++i) {
        out.push_back(from + step * static_cast<double>(i));
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"TWDP fading statistics and M-PSK error probability"};
    app.require_subcommand(1);
    std::function<void(std::ostream&)> action;

    ParamFlags pf;
    SeriesFlags sf;
    int points = 101;
    double rmax = 3.0;
    bool normalized = true;
    auto envelope = [&](const char* name, const char* help, bool cumulative) {
        CLI::App* sub = app.add_subcommand(name, help);
        pf.attach(*sub);
        sf.attach(*sub);
        sub->add_option("--points", points, "Grid points")->default_val(101);
        sub->add_option("--rmax", rmax, "Upper end of the envelope grid")->default_val(3.0);
        sub->add_flag("--normalized,!--no-normalized", normalized, "Use r / sqrt(Omega) as the axis (default on)");
        sub->callback([&, cumulative] {
            action = [&, cumulative](std::ostream& os) { emit_envelope(os, pf, sf, points, rmax, normalized, cumulative); };
        });
    };
    envelope("pdf", "Envelope PDF curve", false);
    envelope("cdf", "Envelope CDF curve", true);

    double snr_db = 10.0;
    double s_min = -10.0;
    std::string mgf_method = "series";
    {
        CLI::App* sub = app.add_subcommand("mgf", "SNR moment generating function M(s) for s in [s-min, 0]");
        pf.attach(*sub);
        sf.attach(*sub);
        sub->add_option("--snr-db", snr_db, "Average SNR gamma0 in dB")->default_val(10.0);
        sub->add_option("--s-min", s_min, "Lower end of the s grid (negative)")->default_val(-10.0);
        sub->add_option("--points", points, "Grid points")->default_val(101);
        sub->add_option("--method", mgf_method, "series | closed")
            ->check(CLI::IsMember({"series", "closed"}))
            ->default_val("series");
        sub->callback([&] {
            action = [&](std::ostream& os) { emit_mgf(os, pf, sf, snr_db, s_min, points, mgf_method); };
        });
    }

    int m_order = 2;
    std::string range = "0:40:5";
    std::string asep_method = "exact";
    {
        CLI::App* sub = app.add_subcommand("asep", "Average M-PSK symbol error probability versus SNR");
        pf.attach(*sub);
        sf.attach(*sub);
        sub->add_option("--mod-order", m_order, "PSK order M >= 2")->default_val(2);
        sub->add_option("--snr-db", range, "from:to:step in dB, or one value")->default_val("0:40:5");
        sub->add_option("--method", asep_method, "exact | asymptotic | quadrature | all")
            ->check(CLI::IsMember({"exact", "asymptotic", "quadrature", "all"}))
            ->default_val("exact");
        sub->callback([&] {
            action = [&](std::ostream& os) { emit_asep(os, pf, sf, m_order, range, asep_method); };
        });
    }

    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    int workers = mcsim::default_workers();
    std::optional<std::int64_t> target;
    {
        CLI::App* sub = app.add_subcommand("simulate", "Monte Carlo M-PSK symbol error rate");
        pf.attach(*sub);
        sub->add_option("--mod-order", m_order, "PSK order M >= 2")->default_val(2);
        sub->add_option("--snr-db", range, "from:to:step in dB, or one value")->default_val("0:40:5");
        sub->add_option("--samples", samples, "Trials per SNR point (cap when adaptive)")->default_val(1000000);
        sub->add_option("--seed", seed, "RNG seed")->default_val(1);
        sub->add_option("--workers", workers, "Worker threads (default: TWDP_WORKERS or core count)");
        sub->add_option("--target-errors", target, "Stop each point after this many errors");
        sub->callback([&] {
            action = [&](std::ostream& os) { emit_simulate(os, pf, m_order, range, samples, seed, workers, target); };
        });
    }

    std::optional<double> conv_gamma;
    std::optional<double> conv_delta;
    std::optional<double> k_rice;
    {
        CLI::App* sub = app.add_subcommand("convert", "Convert between Gamma and Delta");
        auto* g = sub->add_option("--gamma", conv_gamma, "Gamma in [0, 1]");
        auto* d = sub->add_option("--delta", conv_delta, "Delta in [0, 1]");
        g->excludes(d);
        d->excludes(g);
        sub->add_option("--k-rice", k_rice, "Also report K for this K_Rice");
        sub->callback([&] { action = [&](std::ostream& os) { emit_convert(os, conv_gamma, conv_delta, k_rice); }; });
    }

    FigureOptions fig;
    fig.workers = workers;
    {
        CLI::App* sub = app.add_subcommand("figures", "Write all figure CSVs and a manifest");
        sub->add_option("--outdir", fig.outdir, "Output directory")->required();
        sub->add_flag("--simulate", fig.simulate, "Add Monte Carlo overlay files");
        sub->add_option("--seed", fig.seed, "RNG seed")->default_val(1);
        sub->add_option("--samples", fig.samples, "Monte Carlo samples per curve")->default_val(1000000);
        sub->add_option("--workers", fig.workers, "Worker threads");
        sub->callback([&] { action = [&](std::ostream&) { write_figures(fig); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        std::ostringstream buf;
        action(buf);
        out << buf.str();
        out.flush();
        return exit_ok;
    } catch (const Error& e) {
        err << "twdp: " << e.what() << '\n';
        return exit_code_of(e.kind());
    } catch (const std::exception& e) {
        err << "twdp: " << e.what() << '\n';
        return exit_other;
    }
}

} // namespace twdp::cli
