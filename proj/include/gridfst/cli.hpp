// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace gridfst {

// Entry point behind the gridfst binary. Exit codes: 0 success, 1 usage
// error, 2 runtime error, 3 emulation divergence found by `verify`.
int run_cli(const std::vector<std::string>& args);

}  // namespace gridfst
