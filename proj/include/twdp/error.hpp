// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace twdp {

enum class ErrorKind {
    invalid_parameter,
    series_divergence,
    cancellation_loss,
    quadrature_failure,
    range_error,
    io_error,
};

/// Base class for every error raised by the library. The kind drives the CLI
/// exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidParameter : public Error {
public:
    explicit InvalidParameter(const std::string& what) : Error(ErrorKind::invalid_parameter, what) {}
};

class SeriesDivergence : public Error {
public:
    SeriesDivergence(const std::string& what, int terms_used)
        : Error(ErrorKind::series_divergence, what + " (terms used: " + std::to_string(terms_used) + ")"),
          terms_used_(terms_used) {}

    int terms_used() const noexcept { return terms_used_; }

private:
    int terms_used_;
};

class CancellationLoss : public Error {
public:
    CancellationLoss(const std::string& what, double ratio)
        : Error(ErrorKind::cancellation_loss, what), ratio_(ratio) {}

    /// max |partial sum| / |final sum| observed by the failing evaluation.
    double ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

class QuadratureFailure : public Error {
public:
    QuadratureFailure(const std::string& what, double achieved)
        : Error(ErrorKind::quadrature_failure, what + " (achieved error estimate: " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& what) : Error(ErrorKind::range_error, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io_error, what) {}
};

} // namespace twdp
