// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

#include "twdp/detail/wide_real.hpp"
#include "twdp/error.hpp"
#include "twdp/series.hpp"

namespace twdp::detail {

/// Neumaier's variant of Kahan summation.
template <class Real>
class CompensatedSum {
public:
    void add(const Real& x)
    {
        using std::abs;
        Real t = sum_ + x;
        if (abs(sum_) >= abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    Real value() const { return sum_ + comp_; }

private:
    Real sum_ = 0;
    Real comp_ = 0;
};

/// Applies the truncation policy of a SeriesControl to a stream of terms and
/// records the largest partial sum for the cancellation diagnostic.
template <class Real>
class SeriesMonitor {
public:
    SeriesMonitor(const SeriesControl& ctl, Real rel_tol)
        : rel_tol_(rel_tol), consec_(ctl.consec_below), max_terms_(ctl.max_terms)
    {
    }

    explicit SeriesMonitor(const SeriesControl& ctl) : SeriesMonitor(ctl, Real(ctl.rel_tol)) {}

    /// Adds a term; returns true once the series has converged.
    bool add(const Real& term)
    {
        using std::abs;
        sum_.add(term);
        ++terms_;
        last_ = term;
        Real s = sum_.value();
        if (abs(s) > max_partial_) {
            max_partial_ = abs(s);
        }
        if (abs(term) <= rel_tol_ * abs(s)) {
            ++small_;
        } else {
            small_ = 0;
        }
        converged_ = small_ >= consec_ && terms_ >= min_terms_;
        return converged_;
    }

    /// Terms of unimodal series can start out small; no stop is accepted
    /// before `n` terms have been added.
    void require_terms(int n) { min_terms_ = n; }

    bool converged() const { return converged_; }
    bool exhausted() const { return terms_ >= max_terms_; }
    int terms() const { return terms_; }
    Real value() const { return sum_.value(); }

    Real trunc_estimate() const
    {
        using std::abs;
        Real v = abs(value());
        if (v == 0) {
            return last_ == 0 ? Real(0) : std::numeric_limits<Real>::infinity();
        }
        return abs(last_) / v;
    }

    Real cancellation_ratio() const
    {
        using std::abs;
        Real v = abs(value());
        if (v == 0) {
            return max_partial_ == 0 ? Real(1) : std::numeric_limits<Real>::infinity();
        }
        Real r = max_partial_ / v;
        return r < 1 ? Real(1) : r;
    }

private:
    CompensatedSum<Real> sum_;
    Real rel_tol_;
    int consec_;
    int max_terms_;
    int min_terms_ = 0;
    int terms_ = 0;
    int small_ = 0;
    bool converged_ = false;
    Real last_ = 0;
    Real max_partial_ = 0;
};

/// What a templated series kernel hands back to the precision dispatcher.
template <class Real>
struct SeriesOutcome {
    Real value = 0;
    int terms = 0;
    Real trunc = 0;
    Real ratio = 1;
    bool converged = false;
};

template <class Real>
SeriesOutcome<Real> outcome_of(const SeriesMonitor<Real>& mon, const Real& value)
{
    return {value, mon.terms(), mon.trunc_estimate(), mon.cancellation_ratio(), mon.converged()};
}

/// Cancellation beyond this ratio triggers a binary128 re-evaluation.
inline constexpr double escalation_ratio = 1e4;

/// Flag threshold expressed as lost precision: ratio * eps must stay below
/// what a 1e6 ratio costs in double.
inline constexpr double cancellation_budget = 1e6 * std::numeric_limits<double>::epsilon();

template <class Real>
bool cancellation_flag(const Real& ratio)
{
    return to_double(ratio) * to_double(epsilon_of<Real>()) > cancellation_budget;
}

template <class Real>
SeriesResult to_result(const SeriesOutcome<Real>& out, bool extended)
{
    SeriesResult r;
    r.value = to_double(out.value);
    r.terms_used = out.terms;
    r.trunc_estimate = to_double(out.trunc);
    r.cancellation_ratio = to_double(out.ratio);
    r.cancellation = cancellation_flag(out.ratio);
    r.extended_precision = extended;
    return r;
}

template <class T>
struct PrecisionTag {
    using type = T;
};

/// Runs `kernel(PrecisionTag<Real>{}, hint)` in double and, depending on the
/// policy and the observed cancellation, again in binary128. `hint` is the
/// number of terms the previous pass needed (0 on the first pass).
template <class Kernel>
SeriesResult evaluate_series(const SeriesControl& ctl, const std::string& what, Kernel&& kernel)
{
    ctl.validate();
    if (ctl.precision != PrecisionPolicy::extended) {
        SeriesOutcome<double> d = kernel(PrecisionTag<double>{}, 0);
        if (!d.converged) {
            throw SeriesDivergence(what + " did not converge", d.terms);
        }
        bool escalate = ctl.precision == PrecisionPolicy::automatic &&
                        (!(d.ratio <= escalation_ratio) || !std::isfinite(d.value));
        if (!escalate) {
            return to_result(d, false);
        }
        SeriesOutcome<wide_real> w = kernel(PrecisionTag<wide_real>{}, d.terms);
        if (!w.converged) {
            throw SeriesDivergence(what + " did not converge in extended precision", w.terms);
        }
        return to_result(w, true);
    }
    SeriesOutcome<wide_real> w = kernel(PrecisionTag<wide_real>{}, 0);
    if (!w.converged) {
        throw SeriesDivergence(what + " did not converge in extended precision", w.terms);
    }
    return to_result(w, true);
}

} // namespace twdp::detail
