// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace twdp::cli {

/// Stable CSV: fixed header, %.12e reals, LF line endings.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os)
    {
        for (std::size_t i = 0; i < header.size(); ++i) {
            os_ << (i ? "," : "") << header[i];
        }
        os_ << '\n';
    }

    CsvWriter& real(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12e", v);
        return field(buf);
    }

    CsvWriter& integer(std::int64_t v) { return field(std::to_string(v)); }

    CsvWriter& text(const std::string& v) { return field(v); }

    void end_row()
    {
        os_ << '\n';
        first_ = true;
    }

private:
    CsvWriter& field(const std::string& s)
    {
        if (!first_) {
            os_ << ',';
        }
        os_ << s;
        first_ = false;
        return *this;
    }

    std::ostream& os_;
    bool first_ = true;
};

} // namespace twdp::cli
