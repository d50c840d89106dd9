// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/experts.hpp"

#include <map>
#include <string>

namespace gridfst {

namespace {

// Names states on demand so the table definitions below stay readable.
class FstBuilder {
public:
    explicit FstBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

    int state(const std::string& name) {
        auto it = names_.find(name);
        if (it != names_.end()) return it->second;
        const int id = next_++;
        names_.emplace(name, id);
        return id;
    }

    void on(int q, Sym obs, int q2, Sym wr, Motion m) {
        table_[{q, obs}] = Transition{q2, wr, m};
    }

    FstSpec build(int q0, int qf) const {
        FstSpec spec;
        spec.alphabet = alphabet_;
        spec.n_states = next_;
        spec.q0 = q0;
        spec.qf = qf;
        spec.delta.assign(static_cast<std::size_t>(next_) *
                              static_cast<std::size_t>(alphabet_.size()),
                          std::nullopt);
        for (const auto& [key, t] : table_) spec.set(key.first, key.second, t);
        spec.validate();
        return spec;
    }

private:
    Alphabet alphabet_;
    std::map<std::string, int> names_;
    std::map<std::pair<int, Sym>, Transition> table_;
    int next_ = 0;
};

std::string tag(const std::string& base, int v) { return base + "/" + std::to_string(v); }
std::string tag2(const std::string& base, int v, int w) {
    return base + "/" + std::to_string(v) + "/" + std::to_string(w);
}

// ---------------------------------------------------------------------------
// Addition.
//
// Loop invariant at the k-th iteration: a's unconsumed digits sit left of a
// one-cell gap; right of the gap lie the result digits produced so far, then
// the separator, then b's unconsumed digits. One iteration consumes the last
// digit of a (creating the next gap), walks right to consume the last digit
// of b, and drops the sum digit into the old gap on the way back. Once a is
// exhausted the left boundary of the result run plays the role of the gap.
// ---------------------------------------------------------------------------
FstSpec build_add_expert(int radix) {
    Alphabet al = Alphabet::arithmetic(radix, "+");
    const Sym LAM = al.lambda();
    const Sym OP = al.operator_index();
    FstBuilder b(al);

    const int INIT = b.state("init");
    const int QF = b.state("halt");

    auto TAKE_A = [&](int c) { return b.state(tag("take_a", c)); };
    auto WALK_R = [&](int s0) { return b.state(tag("walk_r", s0)); };
    auto WALK_R_AD = [&](int c) { return b.state(tag("walk_r_adone", c)); };
    auto TAKE_B = [&](int s0) { return b.state(tag("take_b", s0)); };
    auto TAKE_B_AD = [&](int c) { return b.state(tag("take_b_adone", c)); };
    auto WALK_L = [&](int r, int c) { return b.state(tag2("walk_l", r, c)); };
    const int SEEK_MSB = b.state("seek_msb");
    const int STRIP = b.state("strip");
    const int FINAL_ONE = b.state("final_carry");

    // Find a's last digit (one left of the separator).
    for (Sym g = 0; g < radix; ++g) b.on(INIT, g, INIT, g, Motion::Right);
    b.on(INIT, OP, TAKE_A(0), OP, Motion::Left);
    b.on(INIT, LAM, QF, LAM, Motion::Stay);  // degenerate input: nothing to do

    for (int c = 0; c <= 1; ++c) {
        for (Sym g = 0; g < radix; ++g)
            b.on(TAKE_A(c), g, WALK_R(g + c), LAM, Motion::Right);
        b.on(TAKE_A(c), LAM, WALK_R_AD(c), LAM, Motion::Right);
    }

    for (int s0 = 0; s0 <= radix; ++s0) {
        for (Sym g = 0; g < radix; ++g) b.on(WALK_R(s0), g, WALK_R(s0), g, Motion::Right);
        b.on(WALK_R(s0), OP, WALK_R(s0), OP, Motion::Right);
        b.on(WALK_R(s0), LAM, TAKE_B(s0), LAM, Motion::Left);
    }
    for (int c = 0; c <= 1; ++c) {
        for (Sym g = 0; g < radix; ++g) b.on(WALK_R_AD(c), g, WALK_R_AD(c), g, Motion::Right);
        b.on(WALK_R_AD(c), OP, WALK_R_AD(c), OP, Motion::Right);
        b.on(WALK_R_AD(c), LAM, TAKE_B_AD(c), LAM, Motion::Left);
    }

    for (int s0 = 0; s0 <= radix; ++s0) {
        for (Sym g = 0; g < radix; ++g) {
            const int s = s0 + g;
            b.on(TAKE_B(s0), g, WALK_L(s % radix, s / radix), LAM, Motion::Left);
        }
        // b exhausted: keep the separator as a landmark for later walks.
        b.on(TAKE_B(s0), OP, WALK_L(s0 % radix, s0 / radix), OP, Motion::Left);
    }
    for (int c = 0; c <= 1; ++c) {
        for (Sym g = 0; g < radix; ++g) {
            const int s = c + g;
            b.on(TAKE_B_AD(c), g, WALK_L(s % radix, s / radix), LAM, Motion::Left);
        }
        // Both operands exhausted: erase the separator and finish.
        b.on(TAKE_B_AD(c), OP, c == 0 ? SEEK_MSB : FINAL_ONE, LAM, Motion::Left);
    }

    for (int r = 0; r < radix; ++r) {
        for (int c = 0; c <= 1; ++c) {
            const int W = WALK_L(r, c);
            for (Sym g = 0; g < radix; ++g) b.on(W, g, W, g, Motion::Left);
            b.on(W, OP, W, OP, Motion::Left);
            b.on(W, LAM, TAKE_A(c), static_cast<Sym>(r), Motion::Left);
        }
    }

    for (Sym g = 0; g < radix; ++g) b.on(SEEK_MSB, g, SEEK_MSB, g, Motion::Left);
    b.on(SEEK_MSB, LAM, STRIP, LAM, Motion::Right);

    b.on(STRIP, 0, STRIP, LAM, Motion::Right);
    for (Sym g = 1; g < radix; ++g) b.on(STRIP, g, QF, g, Motion::Stay);
    b.on(STRIP, LAM, QF, 0, Motion::Stay);  // the sum was all zeros

    for (Sym g = 0; g < radix; ++g) b.on(FINAL_ONE, g, FINAL_ONE, g, Motion::Left);
    b.on(FINAL_ONE, LAM, QF, 1, Motion::Stay);

    return b.build(INIT, QF);
}

// ---------------------------------------------------------------------------
// Multiplication.
//
// Row 0 holds the sliding multiplicand, the operator and b; row -1 holds the
// accumulator, whose digit of significance m lives at column |a|-1-m. Each
// slide of the multiplicand multiplies its alignment by the radix, so the
// add passes for the current b digit always land directly below it.
// ---------------------------------------------------------------------------
FstSpec build_mult_expert(int radix) {
    Alphabet al = Alphabet::arithmetic(radix, "\xc3\x97");
    const Sym LAM = al.lambda();
    const Sym OP = al.operator_index();
    FstBuilder b(al);

    const int FETCH_GO = b.state("fetch_go");  // q0
    const int QF = b.state("halt");
    const int B_SCAN = b.state("b_scan");
    const int B_TAKE = b.state("b_take");
    const int GO_ADD_B = b.state("go_add_b");
    const int GO_ADD_VAC = b.state("go_add_vac");
    auto ADD_READ = [&](int c) { return b.state(tag("add_read", c)); };
    auto ADD_DEP = [&](int v) { return b.state(tag("add_dep", v)); };
    auto ADD_UP = [&](int c) { return b.state(tag("add_up", c)); };
    const int ACC_INC = b.state("acc_inc");
    const int GO_Z_B = b.state("go_zero_b");
    const int GO_Z_VAC = b.state("go_zero_vac");
    const int Z_READ = b.state("zero_read");
    const int Z_DEP = b.state("zero_dep");
    const int Z_UP = b.state("zero_up");
    const int SL_TAKE = b.state("slide_take");
    auto SL_PUT = [&](int g) { return b.state(tag("slide_put", g)); };
    const int SL_SKIP = b.state("slide_skip");
    const int CLEAN_VAC = b.state("clean_vac");
    const int CLEAN_MAST = b.state("clean_mast");
    const int STRIP_SEEK = b.state("strip_seek");
    const int STRIP_Z = b.state("strip_zero");

    // Walk right to the operator (over the multiplicand and vacated cells).
    for (Sym g = 0; g < radix; ++g) b.on(FETCH_GO, g, FETCH_GO, g, Motion::Right);
    b.on(FETCH_GO, LAM, FETCH_GO, LAM, Motion::Right);
    b.on(FETCH_GO, OP, B_SCAN, OP, Motion::Right);

    // Find b's rightmost remaining digit (or the operator when b is done).
    for (Sym g = 0; g < radix; ++g) b.on(B_SCAN, g, B_SCAN, g, Motion::Right);
    b.on(B_SCAN, LAM, B_TAKE, LAM, Motion::Left);

    b.on(B_TAKE, 0, GO_Z_B, LAM, Motion::Left);  // digit spent: zero pass, then slide
    for (Sym g = 1; g < radix; ++g)
        b.on(B_TAKE, g, GO_ADD_B, static_cast<Sym>(g - 1), Motion::Left);  // decrement in place
    b.on(B_TAKE, OP, CLEAN_VAC, LAM, Motion::Left);  // b exhausted

    for (Sym g = 0; g < radix; ++g) b.on(GO_ADD_B, g, GO_ADD_B, g, Motion::Left);
    b.on(GO_ADD_B, OP, GO_ADD_VAC, OP, Motion::Left);
    b.on(GO_ADD_VAC, LAM, GO_ADD_VAC, LAM, Motion::Left);
    for (Sym g = 0; g < radix; ++g) b.on(GO_ADD_VAC, g, ADD_DEP(g), g, Motion::Down);

    // One add pass: read multiplicand digit, fold into the cell below.
    for (int c = 0; c <= 1; ++c) {
        for (Sym g = 0; g < radix; ++g) b.on(ADD_READ(c), g, ADD_DEP(g + c), g, Motion::Down);
    }
    b.on(ADD_READ(0), LAM, FETCH_GO, LAM, Motion::Right);
    b.on(ADD_READ(1), LAM, ACC_INC, LAM, Motion::Down);
    for (int v = 0; v <= radix; ++v) {
        for (Sym o = 0; o < radix; ++o) {
            const int s = v + o;
            b.on(ADD_DEP(v), o, ADD_UP(s / radix), static_cast<Sym>(s % radix), Motion::Up);
        }
        b.on(ADD_DEP(v), LAM, ADD_UP(v / radix), static_cast<Sym>(v % radix), Motion::Up);
    }
    for (int c = 0; c <= 1; ++c) {
        for (Sym g = 0; g < radix; ++g) b.on(ADD_UP(c), g, ADD_READ(c), g, Motion::Left);
    }

    // Carry past the multiplicand's left end cascades along the accumulator.
    b.on(ACC_INC, static_cast<Sym>(radix - 1), ACC_INC, 0, Motion::Left);
    for (Sym g = 0; g + 1 < radix; ++g)
        b.on(ACC_INC, g, FETCH_GO, static_cast<Sym>(g + 1), Motion::Up);
    b.on(ACC_INC, LAM, FETCH_GO, 1, Motion::Up);

    // Zero pass: copies the accumulator onto itself, writing 0 on empty
    // cells, which keeps the accumulator contiguous under the new alignment.
    for (Sym g = 0; g < radix; ++g) b.on(GO_Z_B, g, GO_Z_B, g, Motion::Left);
    b.on(GO_Z_B, OP, GO_Z_VAC, OP, Motion::Left);
    b.on(GO_Z_VAC, LAM, GO_Z_VAC, LAM, Motion::Left);
    for (Sym g = 0; g < radix; ++g) b.on(GO_Z_VAC, g, Z_DEP, g, Motion::Down);
    for (Sym g = 0; g < radix; ++g) b.on(Z_READ, g, Z_DEP, g, Motion::Down);
    b.on(Z_READ, LAM, SL_TAKE, LAM, Motion::Right);
    for (Sym o = 0; o < radix; ++o) b.on(Z_DEP, o, Z_UP, o, Motion::Up);
    b.on(Z_DEP, LAM, Z_UP, 0, Motion::Up);
    for (Sym g = 0; g < radix; ++g) b.on(Z_UP, g, Z_READ, g, Motion::Left);

    // Slide the multiplicand one cell left, leftmost digit first.
    for (Sym g = 0; g < radix; ++g) b.on(SL_TAKE, g, SL_PUT(g), LAM, Motion::Left);
    b.on(SL_TAKE, LAM, FETCH_GO, LAM, Motion::Right);
    b.on(SL_TAKE, OP, B_SCAN, OP, Motion::Right);
    for (Sym g = 0; g < radix; ++g) b.on(SL_PUT(g), LAM, SL_SKIP, g, Motion::Right);
    b.on(SL_SKIP, LAM, SL_TAKE, LAM, Motion::Right);

    // b exhausted: erase the multiplicand, then strip leading zeros of the
    // accumulator, which is the answer.
    b.on(CLEAN_VAC, LAM, CLEAN_VAC, LAM, Motion::Left);
    for (Sym g = 0; g < radix; ++g) b.on(CLEAN_VAC, g, CLEAN_MAST, LAM, Motion::Left);
    for (Sym g = 0; g < radix; ++g) b.on(CLEAN_MAST, g, CLEAN_MAST, LAM, Motion::Left);
    b.on(CLEAN_MAST, LAM, STRIP_SEEK, LAM, Motion::Down);

    b.on(STRIP_SEEK, LAM, STRIP_SEEK, LAM, Motion::Right);
    b.on(STRIP_SEEK, 0, STRIP_Z, LAM, Motion::Right);
    for (Sym g = 1; g < radix; ++g) b.on(STRIP_SEEK, g, QF, g, Motion::Stay);
    b.on(STRIP_Z, 0, STRIP_Z, LAM, Motion::Right);
    for (Sym g = 1; g < radix; ++g) b.on(STRIP_Z, g, QF, g, Motion::Stay);
    b.on(STRIP_Z, LAM, QF, 0, Motion::Stay);  // the product was all zeros

    return b.build(FETCH_GO, QF);
}

}  // namespace

FstSpec expert_spec(ExpertTask task) {
    switch (task) {
        case ExpertTask::add2: return build_add_expert(2);
        case ExpertTask::add10: return build_add_expert(10);
        case ExpertTask::mult2: return build_mult_expert(2);
        case ExpertTask::mult10: return build_mult_expert(10);
    }
    fail(Errc::precondition, "bad task");
}

std::int64_t expert_step_budget(ExpertTask task, std::size_t len_a, std::size_t len_b) {
    const auto n = static_cast<std::int64_t>(len_a + len_b + 4);
    if (task_is_mult(task)) return 32 * task_radix(task) * n * n + 1024;
    return 16 * n * n + 256;
}

WorldState make_input_world(const Alphabet& a, const std::string& lhs, const std::string& rhs) {
    WorldState w(a);
    write_string(w, a, {0, 0}, lhs + a.operator_glyph + rhs);
    return w;
}

}  // namespace gridfst
