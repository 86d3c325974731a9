// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace twdp::rng {

/// Philox4x32 counter-based generator, 10 rounds. Stateless: the output is
/// a pure function of counter and key, so any draw can be regenerated from
/// its coordinates.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
};

/// Uniform double on the 2^52-point midpoint grid of (0, 1); both ends are
/// excluded exactly.
inline double to_unit_open(std::uint32_t hi, std::uint32_t lo) noexcept
{
    const std::uint64_t bits = (std::uint64_t{hi} << 20) ^ (lo >> 12);
    return (static_cast<double>(bits) + 0.5) * 0x1p-52;
}

/// Draws for sample `index` of stream `stream`: draw block `block` yields two
/// uniforms. Streams separate independent uses of one seed.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint32_t stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream)
    {
    }

    std::array<double, 2> uniforms(std::uint64_t index, std::uint32_t block) const noexcept
    {
        const Philox4x32::Counter c{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), block,
                                    stream_};
        const auto r = Philox4x32::generate(c, key_);
        return {to_unit_open(r[0], r[1]), to_unit_open(r[2], r[3])};
    }

    /// Box-Muller pair of independent standard normals.
    std::array<double, 2> normals(std::uint64_t index, std::uint32_t block) const noexcept
    {
        const auto u = uniforms(index, block);
        const double rad = std::sqrt(-2.0 * std::log(u[0]));
        const double ang = 2.0 * std::numbers::pi * u[1];
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

private:
    Philox4x32::Key key_;
    std::uint32_t stream_;
};

} // namespace twdp::rng
