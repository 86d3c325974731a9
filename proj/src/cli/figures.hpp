// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace twdp::cli {

struct FigureOptions {
    std::string outdir;
    bool simulate = false;
    std::uint64_t seed = 1;
    std::int64_t samples = 1'000'000;
    int workers = 1;
};

/// Writes the figure CSVs and manifest.json into opts.outdir (created if
/// missing). Throws IoError with the offending path.
void write_figures(const FigureOptions& opts);

} // namespace twdp::cli
