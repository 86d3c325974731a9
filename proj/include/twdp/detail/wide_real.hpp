// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>

#include <boost/multiprecision/float128.hpp>

namespace twdp::detail {

/// IEEE binary128 (113-bit significand); used where alternating series lose
/// more digits than double can spare.
using wide_real = boost::multiprecision::float128;

template <class Real>
constexpr Real epsilon_of()
{
    return std::numeric_limits<Real>::epsilon();
}

template <class Real>
inline double to_double(const Real& x)
{
    return static_cast<double>(x);
}

} // namespace twdp::detail
