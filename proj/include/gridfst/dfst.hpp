// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// The differentiable finite-state transducer: a linear recurrence
// h_{t+1} = A(x_t) h_t with symbol head s_t = B(x_t) h_t and motion head
// m_t = C(x_t) h_t, decoded by argmax. Training and inference run in
// float32; the double instantiation exists for finite-difference
// checks.

#pragma once

#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gridfst/fst.hpp"
#include "gridfst/grid.hpp"
#include "gridfst/rng.hpp"

namespace gridfst {

struct DfstDims {
    int d = 0;
    int n_sym = 0;
    int n_mot = kNumMotions;
    bool operator==(const DfstDims&) const = default;
};

// |Σ|d² + |Σ|²d + |Σ||M|d + d
std::int64_t param_count(const DfstDims& dims);

template <typename T>
struct ParamsT {
    DfstDims dims;
    std::vector<T> a;   // n_sym × d × d, A[s](i',i) at a[(s·d + i')·d + i]
    std::vector<T> b;   // n_sym × n_sym × d
    std::vector<T> c;   // n_sym × n_mot × d
    std::vector<T> h0;  // d

    void resize(const DfstDims& dm) {
        dims = dm;
        const auto d = static_cast<std::size_t>(dm.d);
        a.assign(static_cast<std::size_t>(dm.n_sym) * d * d, T{0});
        b.assign(static_cast<std::size_t>(dm.n_sym) * static_cast<std::size_t>(dm.n_sym) * d, T{0});
        c.assign(static_cast<std::size_t>(dm.n_sym) * static_cast<std::size_t>(dm.n_mot) * d, T{0});
        h0.assign(d, T{0});
    }

    std::span<const T> a_mat(int sym) const {
        const auto dd = static_cast<std::size_t>(dims.d) * static_cast<std::size_t>(dims.d);
        return {a.data() + static_cast<std::size_t>(sym) * dd, dd};
    }
    std::span<const T> b_mat(int sym) const {
        const auto sz = static_cast<std::size_t>(dims.n_sym) * static_cast<std::size_t>(dims.d);
        return {b.data() + static_cast<std::size_t>(sym) * sz, sz};
    }
    std::span<const T> c_mat(int sym) const {
        const auto sz = static_cast<std::size_t>(dims.n_mot) * static_cast<std::size_t>(dims.d);
        return {c.data() + static_cast<std::size_t>(sym) * sz, sz};
    }

    bool operator==(const ParamsT&) const = default;
};

using DfstParams = ParamsT<float>;

template <typename To, typename From>
ParamsT<To> convert_params(const ParamsT<From>& p) {
    ParamsT<To> q;
    q.dims = p.dims;
    auto cv = [](const std::vector<From>& src, std::vector<To>& dst) {
        dst.assign(src.begin(), src.end());
    };
    cv(p.a, q.a);
    cv(p.b, q.b);
    cv(p.c, q.c);
    cv(p.h0, q.h0);
    return q;
}

// out = M·v for a rows×cols row-major matrix.
template <typename T>
void matvec(std::span<const T> m, std::span<const T> v, std::span<T> out, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        T acc{0};
        const T* row = m.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(cols);
        for (int c = 0; c < cols; ++c) acc += row[c] * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = acc;
    }
}

// A[s] = I for every symbol, B = C = 0, h0 uniform on (0,1) scaetled to
// unit Euclidean norm.
DfstParams init_identity(const DfstDims& dims, std::uint64_t seed);

// One-hot embedding of a transition table: h0 = e_q0 and, for every
// δ(q_i, s_j) = (q_i', s_j', m_l), A[j,i',i] = B[j,j',i] = C[j,l,i] = 1.
// Undefined table entries become all-zero slices. The compiled model,
// run closed-loop, reproduces the table's policy exactly.
DfstParams compile_fst(const FstSpec& spec);

template <typename T>
struct ForwardTraceT {
    int d = 0, n_sym = 0, n_mot = 0;
    std::int64_t len = 0;
    std::vector<T> h;         // (len+1) × d, row 0 = h0
    std::vector<T> s_logits;  // len × n_sym
    std::vector<T> m_logits;  // len × n_mot

    std::span<const T> h_at(std::int64_t t) const {
        return {h.data() + static_cast<std::size_t>(t) * static_cast<std::size_t>(d),
                static_cast<std::size_t>(d)};
    }
    std::span<const T> s_at(std::int64_t t) const {
        return {s_logits.data() + static_cast<std::size_t>(t) * static_cast<std::size_t>(n_sym),
                static_cast<std::size_t>(n_sym)};
    }
    std::span<const T> m_at(std::int64_t t) const {
        return {m_logits.data() + static_cast<std::size_t>(t) * static_cast<std::size_t>(n_mot),
                static_cast<std::size_t>(n_mot)};
    }
};

using ForwardTrace = ForwardTraceT<float>;

template <typename T>
ForwardTraceT<T> forward(const ParamsT<T>& p, std::span<const Sym> tokens);

// Same semantics as forward; hidden states come from a Blelloch-style
// prefix scan over block products of the transition matrices. Exact on
// 0/1 compiled tensors, within reassociation tolerance otherwise.
ForwardTrace forward_scan(const DfstParams& p, std::span<const Sym> tokens, int n_threads = 0);

// Argmax with ties broken toward the lowest index; NaN -> non_finite.
int decode(std::span<const float> logits);

struct HaltMode {
    enum class Kind { oracle_timed, fixpoint } kind = Kind::fixpoint;
    std::int64_t t_star = 0;  // oracle_timed: run exactly this many steps
    int patience = 8;         // fixpoint: consecutive no-op stay steps

    static HaltMode oracle_timed(std::int64_t t_star) {
        return {Kind::oracle_timed, t_star, 0};
    }
    static HaltMode fixpoint(int patience = 8) { return {Kind::fixpoint, 0, patience}; }
};

struct RolloutResult {
    std::int64_t steps = 0;
    bool halted = false;
};

// Incremental closed-loop runner; constant memory in trajectory length.
// When the hidden state is exactly one-hot (as with compiled tables) the
// update is a column extraction, which equals the dense product bit for
// bit and keeps long emulation runs cheap.
class DfstRunner {
public:
    explicit DfstRunner(const DfstParams& p);

    struct Action {
        Sym sym;
        Motion move;
    };
    // Observe w(p), emit, write, move.
    Action step(WorldState& w, Position& p);

    void reset();
    std::span<const float> hidden() const { return h_; }

private:
    const DfstParams& p_;
    std::vector<float> h_, next_, s_out_, m_out_;
};

RolloutResult rollout(const DfstParams& p, WorldState& w, Position p0, HaltMode halt,
                      std::int64_t budget);

// Checkpoint: text header, then raw little-endian float32 tensors in the
// order A (symbol-major), B, C, h0.
struct Checkpoint {
    DfstParams params;
    Alphabet alphabet;
    std::map<std::string, std::string> meta;  // task, iter, seed, loss, ...
};

std::string serialize_checkpoint(const Checkpoint& c);
Checkpoint deserialize_checkpoint(const std::string& bytes);
void save_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace gridfst
