// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-loop evaluation: exact-match accuracy against the big-integer
// oracle, probabilistic and robust length-generalization searches, and
// per-checkpoint generalization curves.
//
// Probabilistic LG at m: perfect exact match on 5 seeded random pairs
// with exactly m digits and 5 with at most m digits. Robust LG at m
// additionally requires all R² same-digit m-digit pairs. RLG ≤ PLG by
// construction.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridfst/bignum.hpp"
#include "gridfst/dfst.hpp"
#include "gridfst/pto.hpp"

namespace gridfst {

enum class HaltPolicy { oracle_timed, fixpoint };

struct ProbeOutcome {
    std::string a, b;
    std::string predicted;  // empty when unreadable
    std::string expected;
    bool match = false;
    std::int64_t steps = 0;
    bool halted = false;
    std::string note;  // mismatch reason, if any
};

// Builds "a<op>b", rolls the model out, extracts the answer and compares
// with the oracle. Unreadable grids and non-halting runs are mismatches,
// never exceptions. Oracle-timed halting runs the model for exactly the
// expert's step count on the same input.
ProbeOutcome exact_match(const DfstParams& params, ExpertTask task, const std::string& a,
                         const std::string& b, HaltPolicy halt = HaltPolicy::oracle_timed);

struct ProbeStats {
    std::int64_t env_steps = 0;  // rollout + expert timing steps
    std::vector<ProbeOutcome> outcomes;
};

bool plg_probe(const DfstParams& params, ExpertTask task, int m, std::uint64_t seed,
               HaltPolicy halt = HaltPolicy::oracle_timed, ProbeStats* stats = nullptr);

// plg_probe(m) plus all R² same-digit m-digit pairs.
bool rlg_probe(const DfstParams& params, ExpertTask task, int m, std::uint64_t seed,
               HaltPolicy halt = HaltPolicy::oracle_timed, ProbeStats* stats = nullptr);

struct LgResult {
    int plg = 0;
    int rlg = 0;
    bool truncated = false;  // stopped by the step budget
    std::string notes;
};

// Grid search over m ∈ {1, 1+step, ...} ≤ m_max; PLG/RLG are the largest
// probed prefix that passes, i.e. lower bounds at the grid granularity.
// step == 0 selects the adaptive schedule: dense to 64, multiplicative
// (×1.5) beyond, with binary refinement at the failure boundary.
LgResult lg_search(const DfstParams& params, ExpertTask task, int m_max, int step,
                   std::uint64_t seed, HaltPolicy halt = HaltPolicy::oracle_timed,
                   std::int64_t step_budget = 100'000'000);

// Callback-driven core (also used by tests with stub probes). The
// callbacks return pass/fail; probe_cost reports consumed budget.
LgResult lg_search_impl(const std::function<bool(int)>& plg_fn,
                        const std::function<bool(int)>& rlg_fn, int m_max, int step,
                        const std::function<std::int64_t()>& spent,
                        std::int64_t step_budget);

struct EvalReport {
    ExpertTask task = ExpertTask::add2;
    std::string checkpoint_id;
    std::string halt_mode;
    int plg = 0;
    int rlg = 0;
    bool truncated = false;
    std::vector<ProbeOutcome> probes;
    std::string notes;
};

// Asserts rlg <= plg.
EvalReport make_eval_report(ExpertTask task, std::string checkpoint_id, std::string halt_mode,
                            const LgResult& lg, std::vector<ProbeOutcome> probes);

std::string eval_report_json(const EvalReport& r);

struct CurveRow {
    std::int64_t iter = 0;
    double loss = 0.0;
    int rlg = 0;
    int plg = 0;
};

// One row per checkpoint: the trainer's logged loss joined with a fresh
// lg_search. Rows come out sorted and unique by iteration.
std::vector<CurveRow> generalization_curve(const std::vector<std::string>& checkpoint_paths,
                                           int m_max, int step, std::uint64_t seed,
                                           HaltPolicy halt = HaltPolicy::oracle_timed,
                                           std::int64_t step_budget = 100'000'000);

std::string curve_csv(const std::vector<CurveRow>& rows);

}  // namespace gridfst
