// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace twdp {

/// Working precision for the alternating series.
///
/// `automatic` evaluates in double and re-evaluates in 113-bit binary128 when
/// the observed cancellation would cost more digits than `rel_tol` allows.
enum class PrecisionPolicy { automatic, double_only, extended };

/// Truncation policy shared by every series evaluation.
///
/// A series stops once `consec_below` consecutive terms satisfy
/// |term| < rel_tol * |partial sum|.
struct SeriesControl {
    double rel_tol = 1e-12;
    int max_terms = 500;
    int consec_below = 3;
    PrecisionPolicy precision = PrecisionPolicy::automatic;

    /// Throws InvalidParameter when the invariants are violated.
    void validate() const;
};

struct SeriesResult {
    double value = 0.0;
    int terms_used = 0;
    /// |last included term| / |value|.
    double trunc_estimate = 0.0;
    /// max |partial sum| / |final sum|; 1 for series without cancellation.
    double cancellation_ratio = 1.0;
    /// Set when the precision actually used leaves fewer than ~10 significant
    /// digits after cancellation.
    bool cancellation = false;
    bool extended_precision = false;
};

} // namespace twdp
