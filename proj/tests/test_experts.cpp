// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Expert correctness against the big-integer oracle: exhaustive small
// operand grids plus random long pairs, and the structural halting
// contract (single clean run on the grid, canonical digits).

#include <doctest.h>

#include "gridfst/bignum.hpp"
#include "gridfst/experts.hpp"
#include "gridfst/rng.hpp"

using namespace gridfst;

namespace {

std::string run_expert(const FstSpec& spec, ExpertTask task, const std::string& a,
                       const std::string& b) {
    WorldState w = make_input_world(spec.alphabet, a, b);
    const RunResult r = run_fst(spec, w, {0, 0}, expert_step_budget(task, a.size(), b.size()));
    REQUIRE(r.halted);
    return read_answer(w, spec.alphabet);
}

std::vector<std::string> operands_up_to(int radix, int digits) {
    std::vector<std::string> out;
    for (int l = 1; l <= digits; ++l) {
        std::string s(static_cast<std::size_t>(l), '0');
        for (;;) {
            out.push_back(s);
            int i = l - 1;
            while (i >= 0 && s[static_cast<std::size_t>(i)] == static_cast<char>('0' + radix - 1)) {
                s[static_cast<std::size_t>(i)] = '0';
                --i;
            }
            if (i < 0) break;
            ++s[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

void exhaustive_check(ExpertTask task, int digits) {
    const FstSpec spec = expert_spec(task);
    const auto ops = operands_up_to(task_radix(task), digits);
    for (const auto& a : ops) {
        for (const auto& b : ops) {
            const std::string got = run_expert(spec, task, a, b);
            const std::string want = oracle(task, a, b);
            if (got != want) {
                CAPTURE(a);
                CAPTURE(b);
                CHECK(got == want);
                return;  // one detailed failure beats thousands
            }
        }
    }
    CHECK(true);
}

std::string random_digits(Rng& rng, int radix, std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i)
        s.push_back(static_cast<char>('0' + rng.index(static_cast<std::uint64_t>(radix))));
    return s;
}

void random_check(ExpertTask task, int trials, std::size_t max_digits, std::uint64_t seed) {
    const FstSpec spec = expert_spec(task);
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        const auto la = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(max_digits)));
        const auto lb = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(max_digits)));
        const std::string a = random_digits(rng, task_radix(task), la);
        const std::string b = random_digits(rng, task_radix(task), lb);
        const std::string got = run_expert(spec, task, a, b);
        const std::string want = oracle(task, a, b);
        if (got != want) {
            CAPTURE(a);
            CAPTURE(b);
            CHECK(got == want);
            return;
        }
    }
    CHECK(true);
}

}  // namespace

TEST_CASE("spot checks from the worked layouts") {
    const FstSpec add2 = expert_spec(ExpertTask::add2);
    CHECK(run_expert(add2, ExpertTask::add2, "101", "11") == "1000");
    CHECK(run_expert(add2, ExpertTask::add2, "111", "111") == "1110");
    CHECK(run_expert(add2, ExpertTask::add2, "1", "1") == "10");
    CHECK(run_expert(add2, ExpertTask::add2, "0", "0") == "0");

    const FstSpec add10 = expert_spec(ExpertTask::add10);
    CHECK(run_expert(add10, ExpertTask::add10, "999", "1") == "1000");
    CHECK(run_expert(add10, ExpertTask::add10, "007", "003") == "10");

    const FstSpec mult2 = expert_spec(ExpertTask::mult2);
    CHECK(run_expert(mult2, ExpertTask::mult2, "0", "11111") == "0");
    CHECK(run_expert(mult2, ExpertTask::mult2, "11", "11") == "1001");

    const FstSpec mult10 = expert_spec(ExpertTask::mult10);
    CHECK(run_expert(mult10, ExpertTask::mult10, "12", "12") == "144");
    CHECK(run_expert(mult10, ExpertTask::mult10, "10", "10") == "100");
    CHECK(run_expert(mult10, ExpertTask::mult10, "99", "99") == "9801");
    CHECK(run_expert(mult10, ExpertTask::mult10, "2", "3") == "6");
}

TEST_CASE("expert state counts") {
    CHECK(expert_spec(ExpertTask::add2).n_states == 4 * 2 + 13);
    CHECK(expert_spec(ExpertTask::add10).n_states == 4 * 10 + 13);
    CHECK(expert_spec(ExpertTask::mult2).n_states == 2 * 2 + 23);
    CHECK(expert_spec(ExpertTask::mult10).n_states == 2 * 10 + 23);
}

TEST_CASE("addition agrees with the oracle exhaustively up to 3 digits") {
    exhaustive_check(ExpertTask::add2, 3);
    exhaustive_check(ExpertTask::add10, 3);
}

TEST_CASE("single decimal digits exhaustively") {
    const FstSpec spec = expert_spec(ExpertTask::add10);
    for (int x = 0; x < 10; ++x) {
        for (int y = 0; y < 10; ++y) {
            CHECK(run_expert(spec, ExpertTask::add10, std::to_string(x), std::to_string(y)) ==
                  std::to_string(x + y));
        }
    }
}

TEST_CASE("multiplication agrees with the oracle exhaustively") {
    exhaustive_check(ExpertTask::mult2, 4);
    exhaustive_check(ExpertTask::mult10, 2);
}

TEST_CASE("experts agree with the oracle on random long operands") {
    random_check(ExpertTask::add2, 200, 50, 101);
    random_check(ExpertTask::add10, 200, 50, 102);
    random_check(ExpertTask::mult2, 200, 50, 103);
    random_check(ExpertTask::mult10, 200, 50, 104);
}

TEST_CASE("experts leave a single clean row (read_answer succeeds by construction)") {
    // run_expert already read_answers; additionally check the world holds
    // nothing but the answer.
    const FstSpec spec = expert_spec(ExpertTask::mult10);
    WorldState w = make_input_world(spec.alphabet, "78", "89");
    run_fst(spec, w, {0, 0}, expert_step_budget(ExpertTask::mult10, 2, 2));
    CHECK(w.occupied() == oracle(ExpertTask::mult10, "78", "89").size());
}

TEST_CASE("the initial transition is defined on an empty world") {
    for (const ExpertTask task : {ExpertTask::add2, ExpertTask::add10, ExpertTask::mult2,
                                  ExpertTask::mult10}) {
        const FstSpec spec = expert_spec(task);
        CHECK(spec.at(spec.q0, spec.alphabet.lambda()).has_value());
    }
}

TEST_CASE("reachability scan: every configuration hit by valid inputs is defined") {
    // Empirical totality: run_fst throws incomplete_table on any hole, so a
    // sweep over input shapes doubles as the reachability analysis.
    Rng rng(55);
    for (const ExpertTask task : {ExpertTask::add2, ExpertTask::add10, ExpertTask::mult2,
                                  ExpertTask::mult10}) {
        const FstSpec spec = expert_spec(task);
        const auto ops = operands_up_to(task_radix(task), 2);
        for (const auto& a : ops) {
            for (const auto& b : ops) {
                WorldState w = make_input_world(spec.alphabet, a, b);
                CHECK_NOTHROW(run_fst(spec, w, {0, 0}, expert_step_budget(task, a.size(), b.size())));
            }
        }
    }
}

TEST_CASE("addition trace length stays within the reference bound") {
    for (const ExpertTask task : {ExpertTask::add2, ExpertTask::add10}) {
        const FstSpec spec = expert_spec(task);
        const auto ops = operands_up_to(task_radix(task), 3);
        std::int64_t worst = 0;
        for (const auto& a : ops) {
            for (const auto& b : ops) {
                WorldState w = make_input_world(spec.alphabet, a, b);
                const RunResult r = run_fst(spec, w, {0, 0}, 100000);
                REQUIRE(r.halted);
                worst = std::max(worst, r.steps);
            }
        }
        CHECK(worst <= 70);
    }
}
