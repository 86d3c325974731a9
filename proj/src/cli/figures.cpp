// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "cli/csv.hpp"
#include "twdp/asep.hpp"
#include "twdp/cli.hpp"
#include "twdp/dist.hpp"
#include "twdp/error.hpp"
#include "twdp/mcsim.hpp"
#include "twdp/params.hpp"

namespace twdp::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Curve {
    std::string label;
    TwdpParams params;
};

std::vector<Curve> envelope_sets()
{
    return {{"k0_g0", TwdpParams::normalized(0.0, 0.0)},
            {"k8_g0", TwdpParams::normalized(8.0, 0.0)},
            {"k8_g0.5", TwdpParams::normalized(8.0, 0.5)},
            {"k14_g1", TwdpParams::normalized(14.0, 1.0)}};
}

json describe(const std::string& column, const TwdpParams& p)
{
    return {{"column", column}, {"k", p.k()}, {"gamma", p.gamma()}, {"delta", p.delta()}, {"sigma2", p.sigma2()}};
}

std::string tenths(double v)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

class FigureWriter {
public:
    explicit FigureWriter(const FigureOptions& opts) : opts_(opts)
    {
        std::error_code ec;
        fs::create_directories(opts.outdir, ec);
        if (ec || !fs::is_directory(opts.outdir)) {
            throw IoError("cannot create output directory " + opts.outdir + ": " + ec.message());
        }
        manifest_ = {{"seed", opts.seed}, {"samples", opts.samples}, {"simulate", opts.simulate}, {"files", json::array()}};
    }

    void save(const std::string& name, const std::string& body, json entry)
    {
        const fs::path path = fs::path(opts_.outdir) / name;
        std::ofstream f(path, std::ios::binary);
        f << body;
        f.close();
        if (!f) {
            throw IoError("cannot write " + path.string());
        }
        entry["file"] = name;
        manifest_["files"].push_back(std::move(entry));
    }

    void finish()
    {
        save_raw("manifest.json", manifest_.dump(2) + "\n");
    }

    const FigureOptions& opts() const { return opts_; }

private:
    void save_raw(const std::string& name, const std::string& body)
    {
        const fs::path path = fs::path(opts_.outdir) / name;
        std::ofstream f(path, std::ios::binary);
        f << body;
        f.close();
        if (!f) {
            throw IoError("cannot write " + path.string());
        }
    }

    FigureOptions opts_;
    json manifest_;
};

void fig1(FigureWriter& w)
{
    std::ostringstream os;
    CsvWriter csv(os, {"x", "gamma", "delta"});
    for (double x : SweepGrid{Axis::gamma, 0.0, 1.0, 101}.values()) {
        csv.real(x).real(x).real(delta_from_gamma(x)).end_row();
    }
    w.save("fig1.csv", os.str(), {{"description", "Delta and Gamma versus V2/V1"}, {"x", "V2/V1"}});
}

void fig2(FigureWriter& w)
{
    std::ostringstream os;
    CsvWriter csv(os, {"x", "k_over_k_rice_delta", "k_over_k_rice_gamma"});
    for (double x : SweepGrid{Axis::delta, 0.0, 1.0, 101}.values()) {
        csv.real(x).real(k_over_k_rice_from_delta(x)).real(k_over_k_rice_from_gamma(x)).end_row();
    }
    w.save("fig2.csv", os.str(),
           {{"description", "K/K_Rice versus Delta (first column) and versus Gamma (second column)"},
            {"x", "Delta or Gamma"}});
}

std::vector<double> envelope_grid() { return SweepGrid{Axis::envelope_r, 0.0, 3.0, 301}.values(); }

void fig3(FigureWriter& w, bool cumulative)
{
    SeriesControl ctl;
    if (!cumulative) {
        ctl.rel_tol = 1e-6;
    }
    const auto sets = envelope_sets();
    std::vector<std::string> header{"x"};
    json curves = json::array();
    std::vector<int> max_terms(sets.size(), 0);
    for (const auto& c : sets) {
        header.push_back((cumulative ? "cdf_" : "pdf_") + c.label);
    }
    std::ostringstream os;
    CsvWriter csv(os, header);
    for (double x : envelope_grid()) {
        csv.real(x);
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const TwdpParams& p = sets[i].params;
            const double r = x * std::sqrt(p.omega());
            SeriesResult res = cumulative ? dist::cdf(p, r, ctl) : dist::pdf(p, r, ctl);
            max_terms[i] = std::max(max_terms[i], res.terms_used);
            csv.real(cumulative ? res.value : res.value * std::sqrt(p.omega()));
        }
        csv.end_row();
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
        json d = describe(header[i + 1], sets[i].params);
        d["max_terms_used"] = max_terms[i];
        d["rel_tol"] = ctl.rel_tol;
        curves.push_back(d);
    }
    w.save(cumulative ? "fig3b.csv" : "fig3a.csv", os.str(),
           {{"description", cumulative ? "normalized envelope CDF" : "normalized envelope PDF"},
            {"x", "r/sqrt(Omega)"},
            {"curves", curves}});

    if (!w.opts().simulate) {
        return;
    }
    mcsim::SimConfig cfg;
    cfg.n_samples = w.opts().samples;
    cfg.seed = w.opts().seed;
    cfg.workers = w.opts().workers;
    std::vector<std::vector<double>> samples;
    for (const auto& c : sets) {
        auto s = mcsim::sample_envelope(c.params, cfg);
        const double unit = std::sqrt(c.params.omega());
        for (double& v : s) {
            v /= unit;
        }
        std::sort(s.begin(), s.end());
        samples.push_back(std::move(s));
    }
    std::ostringstream mc;
    if (!cumulative) {
        std::vector<std::string> h;
        std::vector<mcsim::Histogram> hists;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            h.push_back("x_" + sets[i].label);
            h.push_back("density_" + sets[i].label);
            hists.push_back(mcsim::histogram(samples[i], true, cfg));
        }
        CsvWriter out(mc, h);
        for (int b = 0; b < cfg.n_bins; ++b) {
            for (const auto& hist : hists) {
                auto k = static_cast<std::size_t>(b);
                out.real(0.5 * (hist.edges[k] + hist.edges[k + 1])).real(hist.density[k]);
            }
            out.end_row();
        }
    } else {
        std::vector<std::string> h{"x"};
        for (const auto& c : sets) {
            h.push_back("ecdf_" + c.label);
        }
        CsvWriter out(mc, h);
        for (double x : envelope_grid()) {
            out.real(x);
            for (const auto& s : samples) {
                auto n = std::upper_bound(s.begin(), s.end(), x) - s.begin();
                out.real(static_cast<double>(n) / static_cast<double>(s.size()));
            }
            out.end_row();
        }
    }
    w.save(cumulative ? "fig3b_mc.csv" : "fig3a_mc.csv", mc.str(),
           {{"description", cumulative ? "empirical CDF of simulated envelopes" : "normalized 20-bin histograms"},
            {"seed", cfg.seed},
            {"samples", cfg.n_samples}});
}

struct AsepValue {
    double value;
    int terms;
    bool fallback;
};

AsepValue exact_or_fallback(const TwdpParams& p, const asep::ModulationSpec& mod, double g0)
{
    try {
        SeriesResult r = asep::asep_exact(p, mod, g0);
        if (!r.cancellation) {
            return {r.value, r.terms_used, false};
        }
        return {asep::asep_quadrature(p, mod, g0), r.terms_used, true};
    } catch (const SeriesDivergence& e) {
        return {asep::asep_quadrature(p, mod, g0), e.terms_used(), true};
    }
}

void fig4(FigureWriter& w, int m_order, const std::string& name)
{
    const asep::ModulationSpec mod(m_order);
    const auto sets = envelope_sets();
    const auto snr = parse_db_range("0:40:1");
    std::vector<std::string> header{"x"};
    for (const auto& c : sets) {
        header.push_back("exact_" + c.label);
        header.push_back("asymptotic_" + c.label);
    }
    std::vector<int> max_terms(sets.size(), 0);
    std::vector<int> fallbacks(sets.size(), 0);
    std::ostringstream os;
    CsvWriter csv(os, header);
    for (double db : snr) {
        const double g0 = asep::db_to_linear(db);
        csv.real(db);
        for (std::size_t i = 0; i < sets.size(); ++i) {
            AsepValue v = exact_or_fallback(sets[i].params, mod, g0);
            max_terms[i] = std::max(max_terms[i], v.terms);
            fallbacks[i] += v.fallback ? 1 : 0;
            csv.real(v.value).real(asep::asep_asymptotic(sets[i].params, mod, g0));
        }
        csv.end_row();
    }
    json curves = json::array();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        json d = describe("exact_" + sets[i].label, sets[i].params);
        d["max_terms_used"] = max_terms[i];
        d["quadrature_fallbacks"] = fallbacks[i];
        curves.push_back(d);
    }
    w.save(name + ".csv", os.str(),
           {{"description", std::to_string(m_order) + "-PSK ASEP, exact and asymptotic"},
            {"x", "gamma0 (dB)"},
            {"mod_order", m_order},
            {"curves", curves}});

    if (!w.opts().simulate) {
        return;
    }
    mcsim::SimConfig cfg;
    cfg.n_samples = w.opts().samples;
    cfg.seed = w.opts().seed;
    cfg.workers = w.opts().workers;
    std::vector<std::string> h{"x"};
    for (const auto& c : sets) {
        h.push_back("ser_" + c.label);
        h.push_back("ci95_" + c.label);
    }
    std::ostringstream mc;
    CsvWriter out(mc, h);
    for (double db : parse_db_range("0:40:5")) {
        out.real(db);
        for (const auto& c : sets) {
            mcsim::SerEstimate e = mcsim::simulate_psk_ser(c.params, mod, db, cfg);
            out.real(e.ser).real(e.ci95_halfwidth);
        }
        out.end_row();
    }
    w.save(name + "_mc.csv", mc.str(),
           {{"description", std::to_string(m_order) + "-PSK simulated SER"},
            {"seed", cfg.seed},
            {"samples", cfg.n_samples}});
}

void fig6(FigureWriter& w, bool by_gamma)
{
    const asep::ModulationSpec bpsk(2);
    const auto snr = parse_db_range("0:40:1");
    std::vector<TwdpParams> params;
    std::vector<std::string> header{"x"};
    for (int i = 0; i <= 10; ++i) {
        const double v = i / 10.0;
        params.push_back(by_gamma ? TwdpParams::normalized(6.0, v) : TwdpParams::from_k_delta(6.0, v));
        header.push_back((by_gamma ? "gamma_" : "delta_") + tenths(v));
    }
    std::vector<int> max_terms(params.size(), 0);
    std::vector<int> fallbacks(params.size(), 0);
    std::ostringstream os;
    CsvWriter csv(os, header);
    for (double db : snr) {
        csv.real(db);
        for (std::size_t i = 0; i < params.size(); ++i) {
            AsepValue v = exact_or_fallback(params[i], bpsk, asep::db_to_linear(db));
            max_terms[i] = std::max(max_terms[i], v.terms);
            fallbacks[i] += v.fallback ? 1 : 0;
            csv.real(v.value);
        }
        csv.end_row();
    }
    json curves = json::array();
    for (std::size_t i = 0; i < params.size(); ++i) {
        json d = describe(header[i + 1], params[i]);
        d["max_terms_used"] = max_terms[i];
        d["quadrature_fallbacks"] = fallbacks[i];
        curves.push_back(d);
    }
    w.save(by_gamma ? "fig6b.csv" : "fig6a.csv", os.str(),
           {{"description", std::string("BPSK ASEP for K = 6 over ") + (by_gamma ? "Gamma" : "Delta")},
            {"x", "gamma0 (dB)"},
            {"curves", curves}});
}

} // namespace

void write_figures(const FigureOptions& opts)
{
    FigureWriter w(opts);
    fig1(w);
    fig2(w);
    fig3(w, false);
    fig3(w, true);
    fig4(w, 2, "fig4a");
    fig4(w, 4, "fig4b");
    fig4(w, 8, "fig4c");
    fig4(w, 16, "fig4d");
    fig6(w, false);
    fig6(w, true);
    w.finish();
}

} // namespace twdp::cli
