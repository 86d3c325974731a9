// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace twdp::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_other = 1,
    exit_usage = 2,
    exit_convergence = 3,
    exit_quadrature = 4,
    exit_io = 5,
    exit_cancellation = 6,
};

enum class Axis { envelope_r, snr_db, gamma, delta, mgf_argument };
enum class Scale { linear, log };

struct SweepGrid {
    Axis axis = Axis::envelope_r;
    double start = 0.0;
    double stop = 1.0;
    int points = 2;
    Scale scale = Scale::linear;

    /// Throws InvalidParameter unless start < stop, points >= 2 and, for a
    /// log scale, start > 0.
    void validate() const;
    /// Ascending grid; the end points are hit exactly.
    std::vector<double> values() const;
};

/// Parses "from:to:step" (inclusive, step > 0) or a single number into an
/// SNR grid in dB.
std::vector<double> parse_db_range(const std::string& text);

struct CurvePoint {
    double x;
    double y;
    std::optional<int> terms_used;
    std::optional<double> ci_halfwidth;
    std::optional<std::string> method_tag;
};

/// Entry point of the `twdp` tool. Writes CSV to `out`, diagnostics to `err`
/// and returns one of the ExitCode values.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace twdp::cli
