// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Policy-trajectory observations: the externally visible trace of an
// expert run (observed symbol, written symbol, motion per step, up to
// and including the transition into the final state), plus the
// stratified dataset sampler and its on-disk format.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridfst/experts.hpp"

namespace gridfst {

struct Pto {
    ExpertTask task = ExpertTask::add2;
    std::string a, b;
    std::vector<Sym> x;  // observed symbol per step
    std::vector<Sym> s;  // written symbol per step
    std::vector<int> m;  // motion index per step

    std::int64_t t_len() const { return static_cast<std::int64_t>(x.size()); }
};

// Runs the expert on "a<op>b" and records the trace.
// Errors: runaway_expert if the expert does not halt within max_steps.
Pto record_pto(const FstSpec& spec, ExpertTask task, const std::string& a, const std::string& b,
               std::int64_t max_steps);

// Replaying (s, m) from the initial world must regenerate x exactly.
bool replay_consistent(const Pto& pto, const Alphabet& alphabet);

// Trace-length guidance used as a dataset sanity bound: exceeding it on
// paper-scale operands is reported as a warning, not a failure.
std::int64_t trace_length_bound(ExpertTask task);

struct Dataset {
    ExpertTask task = ExpertTask::add2;
    int radix = 2;
    int p = 1;
    int q = 3;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::size_t n_exhaustive = 0;
    std::size_t n_same_digit = 0;
    std::size_t n_random = 0;
    std::vector<Pto> records;
    std::vector<std::string> warnings;  // not serialized

    std::int64_t max_t_len() const;
};

// Number of digit strings of length 1..p over the radix: R(R^p-1)/(R-1).
std::int64_t operand_count(int radix, int p);

// Stratified sampler:
//   1. all operand pairs with up to p digits (leading zeros allowed),
//   2. all R^2 pairs of q-digit single-digit repetitions,
//   3. seeded uniform random distinct pairs with up to q digits until N.
// Deterministic given the seed; pairs are distinct across all strata.
Dataset ds_sample(ExpertTask task, int p, int q, std::int64_t n, std::uint64_t seed);

std::string serialize_dataset(const Dataset& ds);
Dataset deserialize_dataset(const std::string& text);  // parse + integrity checks
void save_dataset(const std::string& path, const Dataset& ds);
Dataset load_dataset(const std::string& path);

}  // namespace gridfst
