// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "gridfst/experts.hpp"
#include "gridfst/fst.hpp"

using namespace gridfst;

namespace {

// Two-state fixture: reads one cell, copies it, halts.
FstSpec identity_copier() {
    FstSpec spec;
    spec.alphabet = Alphabet::arithmetic(2, "+");
    spec.n_states = 2;
    spec.q0 = 0;
    spec.qf = 1;
    spec.delta.assign(2 * 4, std::nullopt);
    for (Sym s = 0; s < spec.alphabet.size(); ++s)
        spec.set(0, s, Transition{1, s, Motion::Stay});
    spec.validate();
    return spec;
}

}  // namespace

TEST_CASE("step_fst writes, moves and transitions") {
    const FstSpec spec = identity_copier();
    WorldState w(spec.alphabet);
    w.write({0, 0}, 1);
    Position p{0, 0};
    const StepResult r = step_fst(spec, 0, w, p);
    CHECK(r.state == 1);
    CHECK(r.written == 1);
    CHECK(r.moved == Motion::Stay);
    CHECK(w.read({0, 0}) == 1);
    CHECK(p == Position{0, 0});

    CHECK_THROWS_AS(step_fst(spec, spec.qf, w, p), Error);  // stepping from qf
}

TEST_CASE("undefined transition raises incomplete_table") {
    FstSpec spec = identity_copier();
    spec.delta[0] = std::nullopt;  // (q0, symbol 0) now undefined
    WorldState w(spec.alphabet);
    w.write({0, 0}, 0);
    Position p{0, 0};
    try {
        step_fst(spec, 0, w, p);
        FAIL("expected incomplete_table");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::incomplete_table);
    }
}

TEST_CASE("run_fst halts and respects max_steps") {
    const FstSpec spec = identity_copier();
    WorldState w(spec.alphabet);
    w.write({0, 0}, 1);
    const RunResult r = run_fst(spec, w, {0, 0}, 10);
    CHECK(r.halted);
    CHECK(r.steps == 1);

    const FstSpec add2 = expert_spec(ExpertTask::add2);
    WorldState w2 = make_input_world(add2.alphabet, "101", "11");
    const RunResult r2 = run_fst(add2, w2, {0, 0}, 1);
    CHECK_FALSE(r2.halted);
    CHECK(r2.steps == 1);

    WorldState w3(spec.alphabet);
    CHECK_THROWS_AS(run_fst(spec, w3, {0, 0}, 0), Error);
}

TEST_CASE("run_fst is deterministic") {
    const FstSpec add2 = expert_spec(ExpertTask::add2);
    auto run_once = [&] {
        WorldState w = make_input_world(add2.alphabet, "1101", "111");
        const RunResult r = run_fst(add2, w, {0, 0}, 100000);
        REQUIRE(r.halted);
        return std::pair{r.steps, read_answer(w, add2.alphabet)};
    };
    CHECK(run_once() == run_once());
}

TEST_CASE("steps change at most one cell and move at most one unit") {
    Rng rng(11);
    const Alphabet a = Alphabet::arithmetic(2, "+");
    for (int trial = 0; trial < 20; ++trial) {
        const FstSpec spec = random_fst(rng, a, 2 + static_cast<int>(rng.index(5)));
        WorldState w = make_input_world(a, "101", "11");
        Position p{0, 0};
        int q = spec.q0;
        for (int t = 0; t < 200 && q != spec.qf; ++t) {
            const WorldState before = w;
            const Position p_before = p;
            q = step_fst(spec, q, w, p).state;
            int changed = 0;
            for (const auto& [pos, sym] : w.cells()) {
                if (before.read(pos) != sym) ++changed;
            }
            for (const auto& [pos, sym] : before.cells()) {
                if (w.read(pos) != sym && w.read(pos) == a.lambda()) ++changed;
            }
            CHECK(changed <= 1);
            const std::int64_t dc = p.col - p_before.col, dr = p.row - p_before.row;
            CHECK(dc * dc + dr * dr <= 1);
        }
    }
}

TEST_CASE("textual format round-trips") {
    const FstSpec add2 = expert_spec(ExpertTask::add2);
    const std::string text = dump_fst(add2);
    const FstSpec back = parse_fst(text);
    CHECK(back == add2);
    CHECK(dump_fst(back) == text);

    const FstSpec mult10 = expert_spec(ExpertTask::mult10);
    CHECK(parse_fst(dump_fst(mult10)) == mult10);
}

TEST_CASE("parser reports line numbers and rejects bad tables") {
    CHECK_THROWS_AS(parse_fst("states 2\n"), Error);  // missing alphabet
    const char* bad =
        "alphabet 0 1 \xce\xbb +\n"
        "lambda 2\nradix 2\noperator +\nstates 2\nq0 0\nqf 1\n"
        "0 0 -> 5 0 S\n";  // target out of range
    try {
        parse_fst(bad);
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::parse);
        CHECK(std::string(e.what()).find("line 8") != std::string::npos);
    }
    const char* dup =
        "alphabet 0 1 \xce\xbb +\n"
        "lambda 2\nradix 2\noperator +\nstates 2\nq0 0\nqf 1\n"
        "0 0 -> 1 0 S\n0 0 -> 1 1 S\n";
    CHECK_THROWS_AS(parse_fst(dup), Error);
}

TEST_CASE("comments and blank lines are ignored") {
    const char* text =
        "# a copier\n"
        "alphabet 0 1 \xce\xbb +\n"
        "lambda 2\nradix 2\noperator +\n"
        "states 2\nq0 0\nqf 1\n"
        "\n"
        "0 0 -> 1 0 S  # copy zero\n"
        "0 1 -> 1 1 S\n";
    const FstSpec spec = parse_fst(text);
    CHECK(spec.n_states == 2);
    CHECK(spec.at(0, 0)->write == 0);
    CHECK_FALSE(spec.at(0, 2).has_value());
}
