// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include "gridfst/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gridfst::run_cli(args);
}
