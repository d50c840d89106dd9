// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Differential testing of a transition table against a compiled (or
// trained) model: both run side by side on the same inputs and every
// emitted (symbol, motion) pair must agree. Policy equivalence is
// undecidable in general, so this is a randomized confidence check, not
// a proof.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gridfst/dfst.hpp"
#include "gridfst/experts.hpp"

namespace gridfst {

struct Divergence {
    std::size_t input_index = 0;
    std::string a, b;
    std::int64_t timestep = 0;
    Sym expert_sym = 0;
    Motion expert_move = Motion::Stay;
    Sym model_sym = 0;
    Motion model_move = Motion::Stay;
};

struct EmulationReport {
    std::size_t n_inputs = 0;
    std::size_t n_exact = 0;
    std::optional<Divergence> first_divergence;  // lowest input index

    bool all_exact() const { return n_exact == n_inputs; }
};

using InputPair = std::pair<std::string, std::string>;

// Runs the table and the model on each input world "a<op>b" for at most
// max_steps steps (or until the table halts) and compares actions
// step-for-step. Inputs fan out across threads.
EmulationReport verify_emulation(const FstSpec& spec, const DfstParams& params,
                                 const std::vector<InputPair>& inputs, std::int64_t max_steps,
                                 int n_threads = 0);

// Uniform digit strings for emulation fuzzing: lengths 1..max_digits.
std::vector<InputPair> random_input_pairs(int radix, std::size_t count, std::size_t max_digits,
                                          std::uint64_t seed);

}  // namespace gridfst
