// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include "twdp/series.hpp"

#include <cmath>
#include <string>

#include "twdp/error.hpp"

namespace twdp {

void SeriesControl::validate() const
{
    if (!(std::isfinite(rel_tol) && rel_tol > 0.0 && rel_tol < 1.0)) {
        throw InvalidParameter("rel_tol must lie in (0, 1), got " + std::to_string(rel_tol));
    }
    if (max_terms < 1) {
        throw InvalidParameter("max_terms must be at least 1");
    }
    if (consec_below < 1) {
        throw InvalidParameter("consec_below must be at least 1");
    }
}

} // namespace twdp
