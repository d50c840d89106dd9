// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Hand-designed expert transition tables for the four arithmetic tasks.
//
// Input convention: "a<op>b" written on row 0 starting at column 0, the
// agent starting at (0,0) in q0. On halt the grid holds exactly one
// horizontal run of digits: the canonical answer (no leading zeros,
// except a single "0").
//
// Addition (4R+13 states): schoolbook right-to-left. Operand digits are
// consumed from the right of each side; the cell vacated by the current
// `a` digit doubles as the landing slot for the result digit, so the
// result builds in place, right-aligned at a's last input column and
// growing leftward. The separator stays put as a navigation landmark
// until both operands are exhausted; a final sweep strips leading zeros.
//
// Multiplication (2R+23 states): long multiplication as repeated
// addition. b is consumed right-to-left; each b digit is decremented in
// place, and per decrement the (sliding) multiplicand row is added into
// the accumulator row directly below it. After a digit reaches zero the
// multiplicand slides one cell left, which realigns it for the next
// significance. A zero-add pass keeps the accumulator contiguous when a
// b digit is 0. Cleanup erases the scratch and strips leading zeros.

#pragma once

#include "gridfst/fst.hpp"

namespace gridfst {

FstSpec expert_spec(ExpertTask task);

// Generous step bound for running an expert on operands of the given
// lengths (used by recorders and evaluators).
std::int64_t expert_step_budget(ExpertTask task, std::size_t len_a, std::size_t len_b);

// Builds the input world "a<op>b" at row 0, column 0.
WorldState make_input_world(const Alphabet& a, const std::string& lhs, const std::string& rhs);

}  // namespace gridfst
