// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "twdp/detail/wide_real.hpp"
#include "twdp/error.hpp"

namespace twdp::quad {

template <class Real>
struct Control {
    Real abs_tol = 0;
    Real rel_tol = Real(1e-12);
    int max_panels = 4000;
};

template <class Real>
struct VectorResult {
    std::vector<Real> value;
    std::vector<Real> error;
    int panels = 0;
    long evaluations = 0;
};

template <class Real>
struct Result {
    Real value = 0;
    Real error = 0;
    int panels = 0;
    long evaluations = 0;
};

/// Gauss-Legendre rule on [-1, 1], nodes found by Newton iteration in Real.
template <class Real>
struct GaussLegendre {
    std::vector<Real> nodes;
    std::vector<Real> weights;

    explicit GaussLegendre(int n)
    {
        using std::abs;
        using std::cos;
        nodes.resize(n);
        weights.resize(n);
        const double pi = 3.14159265358979323846;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            Real x = Real(cos(pi * (i + 0.75) / (n + 0.5)));
            Real dp = 0;
            for (int it = 0; it < 100; ++it) {
                Real p0 = 1;
                Real p1 = x;
                for (int j = 2; j <= n; ++j) {
                    Real p2 = (Real(2 * j - 1) * x * p1 - Real(j - 1) * p0) / Real(j);
                    p0 = p1;
                    p1 = p2;
                }
                dp = Real(n) * (x * p1 - p0) / (x * x - 1);
                Real dx = p1 / dp;
                x -= dx;
                if (abs(dx) <= 4 * std::numeric_limits<Real>::epsilon()) {
                    break;
                }
            }
            // Recompute the derivative at the converged node for the weight.
            Real p0 = 1;
            Real p1 = x;
            for (int j = 2; j <= n; ++j) {
                Real p2 = (Real(2 * j - 1) * x * p1 - Real(j - 1) * p0) / Real(j);
                p0 = p1;
                p1 = p2;
            }
            dp = Real(n) * (x * p1 - p0) / (x * x - 1);
            Real w = 2 / ((1 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if (n % 2 == 1) {
            nodes[n / 2] = 0;
        }
    }
};

template <class Real>
const GaussLegendre<Real>& gauss_legendre20()
{
    static const GaussLegendre<Real> rule(20);
    return rule;
}

namespace detail {

template <class Real, class F>
void panel_rule(F& f, const Real& a, const Real& b, std::span<Real> out, std::vector<Real>& scratch, long& evals)
{
    const auto& gl = gauss_legendre20<Real>();
    Real half = (b - a) / 2;
    Real mid = (a + b) / 2;
    std::fill(out.begin(), out.end(), Real(0));
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        f(mid + half * gl.nodes[i], std::span<Real>(scratch));
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += gl.weights[i] * scratch[k];
        }
    }
    for (auto& v : out) {
        v *= half;
    }
    evals += static_cast<long>(gl.nodes.size());
}

template <class Real>
struct Panel {
    Real a;
    Real b;
    std::vector<Real> coarse;
    std::vector<Real> left;
    std::vector<Real> right;
};

} // namespace detail

/// Globally adaptive 20-point Gauss-Legendre integration of a vector-valued
/// integrand `f(t, out)` over [a, b]. Each panel's error is estimated by
/// comparing the whole-panel rule with the sum over its two halves; the panel
/// with the largest error relative to its component tolerance is bisected.
/// Throws QuadratureFailure when `max_panels` is exhausted.
template <class Real, class F>
VectorResult<Real> integrate_vector(F&& f, std::size_t dim, Real a, Real b, const Control<Real>& ctl)
{
    using std::abs;
    using std::max;
    const Real floor_rel = 32 * std::numeric_limits<Real>::epsilon();
    const Real rel_tol = max(ctl.rel_tol, floor_rel);

    VectorResult<Real> res;
    std::vector<Real> scratch(dim);
    std::vector<detail::Panel<Real>> panels;

    auto make_panel = [&](const Real& lo, const Real& hi, std::vector<Real>* known) {
        detail::Panel<Real> p{lo, hi, std::vector<Real>(dim), std::vector<Real>(dim), std::vector<Real>(dim)};
        Real m = (lo + hi) / 2;
        if (known) {
            p.coarse = std::move(*known);
        } else {
            detail::panel_rule(f, lo, hi, std::span<Real>(p.coarse), scratch, res.evaluations);
        }
        detail::panel_rule(f, lo, m, std::span<Real>(p.left), scratch, res.evaluations);
        detail::panel_rule(f, m, hi, std::span<Real>(p.right), scratch, res.evaluations);
        return p;
    };

    panels.push_back(make_panel(a, b, nullptr));

    std::vector<Real> total(dim);
    std::vector<Real> err(dim);
    std::vector<Real> tol(dim);
    for (;;) {
        std::fill(total.begin(), total.end(), Real(0));
        std::fill(err.begin(), err.end(), Real(0));
        for (const auto& p : panels) {
            for (std::size_t k = 0; k < dim; ++k) {
                Real fine = p.left[k] + p.right[k];
                total[k] += fine;
                err[k] += abs(fine - p.coarse[k]);
            }
        }
        bool done = true;
        Real worst_ratio = 0;
        for (std::size_t k = 0; k < dim; ++k) {
            tol[k] = max(ctl.abs_tol, rel_tol * abs(total[k]));
            if (tol[k] == 0) {
                tol[k] = std::numeric_limits<Real>::min();
            }
            if (!(err[k] <= tol[k])) {
                done = false;
            }
            Real r = err[k] / tol[k];
            if (r > worst_ratio) {
                worst_ratio = r;
            }
        }
        if (done) {
            break;
        }
        if (static_cast<int>(panels.size()) >= ctl.max_panels) {
            double achieved = 0;
            for (std::size_t k = 0; k < dim; ++k) {
                Real denom = abs(total[k]);
                double r = twdp::detail::to_double(denom > 0 ? err[k] / denom : err[k]);
                achieved = std::max(achieved, r);
            }
            throw QuadratureFailure("adaptive quadrature exhausted its panel budget", achieved);
        }
        std::size_t pick = 0;
        Real pick_score = -1;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            Real score = 0;
            for (std::size_t k = 0; k < dim; ++k) {
                Real e = abs(panels[i].left[k] + panels[i].right[k] - panels[i].coarse[k]) / tol[k];
                if (e > score) {
                    score = e;
                }
            }
            if (score > pick_score) {
                pick_score = score;
                pick = i;
            }
        }
        detail::Panel<Real> old = std::move(panels[pick]);
        Real m = (old.a + old.b) / 2;
        panels[pick] = make_panel(old.a, m, &old.left);
        panels.push_back(make_panel(m, old.b, &old.right));
    }
    res.value = std::move(total);
    res.error = std::move(err);
    res.panels = static_cast<int>(panels.size());
    return res;
}

template <class Real, class F>
Result<Real> integrate(F&& f, Real a, Real b, const Control<Real>& ctl)
{
    auto wrapped = [&f](const Real& t, std::span<Real> out) { out[0] = f(t); };
    VectorResult<Real> v = integrate_vector(wrapped, 1, a, b, ctl);
    return {v.value[0], v.error[0], v.panels, v.evaluations};
}

} // namespace twdp::quad
