// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Ground-truth arithmetic for evaluation: schoolbook big-integer add and
// multiply over digit vectors in a given radix. Kept deliberately
// independent of the agent machinery so it can serve as an oracle.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridfst/alphabet.hpp"

namespace gridfst {

// Little-endian limbs, each < radix; canonical (no high zero limbs, and
// the value zero is the empty vector).
struct BigNumber {
    int radix = 10;
    std::vector<std::uint8_t> limbs;

    static BigNumber from_string(const std::string& digits, int radix);
    std::string to_string() const;  // canonical: no leading zeros, "0" for zero

    static BigNumber add(const BigNumber& x, const BigNumber& y);
    static BigNumber mul(const BigNumber& x, const BigNumber& y);

    std::uint64_t to_u64() const;  // precondition: fits
};

// f* for the four tasks; canonical output.
std::string oracle(ExpertTask task, const std::string& a, const std::string& b);

}  // namespace gridfst
