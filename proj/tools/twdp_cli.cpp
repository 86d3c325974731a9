// Copyright 2026 The twdp authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "twdp/cli.hpp"

int main(int argc, char** argv) { return twdp::cli::run(argc, argv, std::cout, std::cerr); }
