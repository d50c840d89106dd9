// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Grid agents as explicit finite transition tables.
//
// A transition maps (state, observed symbol) to (next state, written
// symbol, motion). The final state is absorbing: it has no outgoing
// transitions. Tables may be partial; stepping onto an undefined entry
// raises incomplete_table, which signals a bug in the table, not bad
// input.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridfst/alphabet.hpp"
#include "gridfst/grid.hpp"
#include "gridfst/rng.hpp"

namespace gridfst {

struct Transition {
    int next_state = 0;
    Sym write = 0;
    Motion move = Motion::Stay;
    bool operator==(const Transition&) const = default;
};

struct FstSpec {
    Alphabet alphabet;
    int n_states = 0;
    int q0 = 0;
    int qf = 0;
    // Row-major (state * n_symbols + symbol); nullopt = undefined entry.
    std::vector<std::optional<Transition>> delta;

    const std::optional<Transition>& at(int q, Sym s) const {
        return delta[static_cast<std::size_t>(q) * static_cast<std::size_t>(alphabet.size()) +
                     static_cast<std::size_t>(s)];
    }
    void set(int q, Sym s, Transition t) {
        delta[static_cast<std::size_t>(q) * static_cast<std::size_t>(alphabet.size()) +
              static_cast<std::size_t>(s)] = t;
    }

    void validate() const;
    bool operator==(const FstSpec&) const = default;
};

struct StepResult {
    int state;
    Sym written;
    Motion moved;
};

// One transition: writes at p, shifts p, returns the new state.
// Preconditions: q != qf and delta defined at (q, w.read(p)).
StepResult step_fst(const FstSpec& spec, int q, WorldState& w, Position& p);

struct RunResult {
    std::int64_t steps = 0;
    bool halted = false;
};

RunResult run_fst(const FstSpec& spec, WorldState& w, Position p0, std::int64_t max_steps);

// Textual transition-table format (round-trips exactly):
//   alphabet <glyph> <glyph> ...
//   lambda <index>  /  radix <R>  /  operator <glyph>
//   states <n>  /  q0 <i>  /  qf <i>
//   <state> <glyph> -> <state'> <glyph'> <motion>
// '#' starts a comment.
FstSpec parse_fst(const std::string& text);
std::string dump_fst(const FstSpec& spec);

// Fully-defined random table over the given alphabet (tests, emulation
// fuzzing). qf = n_states-1 and is absorbing; other entries uniform.
FstSpec random_fst(Rng& rng, const Alphabet& a, int n_states);

}  // namespace gridfst
