// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/dfst.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "gridfst/parallel.hpp"

#include "gridfst/errors.hpp"
#include "gridfst/fileio.hpp"

namespace gridfst {

std::int64_t param_count(const DfstDims& dims) {
    const std::int64_t d = dims.d, s = dims.n_sym, m = dims.n_mot;
    return s * d * d + s * s * d + s * m * d + d;
}

DfstParams init_identity(const DfstDims& dims, std::uint64_t seed) {
    DfstParams p;
    p.resize(dims);
    const auto d = static_cast<std::size_t>(dims.d);
    for (int s = 0; s < dims.n_sym; ++s) {
        float* m = p.a.data() + static_cast<std::size_t>(s) * d * d;
        for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1.0f;
    }
    Rng rng = Rng::salted(seed, 0x68302e696e6974ULL);
    double norm2 = 0.0;
    std::vector<double> raw(d);
    for (std::size_t i = 0; i < d; ++i) {
        raw[i] = rng.real_open();
        norm2 += raw[i] * raw[i];
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < d; ++i) p.h0[i] = static_cast<float>(raw[i] * inv);
    return p;
}

DfstParams compile_fst(const FstSpec& spec) {
    DfstDims dims{spec.n_states, spec.alphabet.size(), kNumMotions};
    DfstParams p;
    p.resize(dims);
    const auto d = static_cast<std::size_t>(dims.d);
    p.h0[static_cast<std::size_t>(spec.q0)] = 1.0f;
    for (int q = 0; q < spec.n_states; ++q) {
        for (Sym s = 0; s < spec.alphabet.size(); ++s) {
            const auto& t = spec.at(q, s);
            if (!t) continue;
            const auto j = static_cast<std::size_t>(s);
            const auto i = static_cast<std::size_t>(q);
            const auto i2 = static_cast<std::size_t>(t->next_state);
            p.a[(j * d + i2) * d + i] = 1.0f;
            p.b[(j * static_cast<std::size_t>(dims.n_sym) + static_cast<std::size_t>(t->write)) * d +
                i] = 1.0f;
            p.c[(j * static_cast<std::size_t>(dims.n_mot) +
                 static_cast<std::size_t>(static_cast<int>(t->move))) *
                    d +
                i] = 1.0f;
        }
    }
    return p;
}

template <typename T>
ForwardTraceT<T> forward(const ParamsT<T>& p, std::span<const Sym> tokens) {
    const auto& dm = p.dims;
    ForwardTraceT<T> tr;
    tr.d = dm.d;
    tr.n_sym = dm.n_sym;
    tr.n_mot = dm.n_mot;
    tr.len = static_cast<std::int64_t>(tokens.size());
    const auto d = static_cast<std::size_t>(dm.d);
    tr.h.resize((tokens.size() + 1) * d);
    tr.s_logits.resize(tokens.size() * static_cast<std::size_t>(dm.n_sym));
    tr.m_logits.resize(tokens.size() * static_cast<std::size_t>(dm.n_mot));
    std::copy(p.h0.begin(), p.h0.end(), tr.h.begin());
    for (std::size_t t = 0; t < tokens.size(); ++t) {
        const Sym x = tokens[t];
        if (x < 0 || x >= dm.n_sym) fail(Errc::precondition, "forward: token out of range");
        std::span<const T> h{tr.h.data() + t * d, d};
        matvec<T>(p.b_mat(x), h,
                  {tr.s_logits.data() + t * static_cast<std::size_t>(dm.n_sym),
                   static_cast<std::size_t>(dm.n_sym)},
                  dm.n_sym, dm.d);
        matvec<T>(p.c_mat(x), h,
                  {tr.m_logits.data() + t * static_cast<std::size_t>(dm.n_mot),
                   static_cast<std::size_t>(dm.n_mot)},
                  dm.n_mot, dm.d);
        matvec<T>(p.a_mat(x), h, {tr.h.data() + (t + 1) * d, d}, dm.d, dm.d);
    }
    return tr;
}

template ForwardTraceT<float> forward<float>(const ParamsT<float>&, std::span<const Sym>);
template ForwardTraceT<double> forward<double>(const ParamsT<double>&, std::span<const Sym>);

namespace {

// out = lhs·rhs, d×d row-major.
void matmul(const float* lhs, const float* rhs, float* out, int d) {
    const auto dd = static_cast<std::size_t>(d);
    for (std::size_t i = 0; i < dd; ++i) {
        for (std::size_t j = 0; j < dd; ++j) out[i * dd + j] = 0.0f;
        for (std::size_t k = 0; k < dd; ++k) {
            const float l = lhs[i * dd + k];
            if (l == 0.0f) continue;
            const float* rrow = rhs + k * dd;
            for (std::size_t j = 0; j < dd; ++j) out[i * dd + j] += l * rrow[j];
        }
    }
}

}  // namespace

ForwardTrace forward_scan(const DfstParams& p, std::span<const Sym> tokens, int n_threads) {
    const auto& dm = p.dims;
    if (n_threads <= 0)
        n_threads = default_threads();
    const auto len = static_cast<std::int64_t>(tokens.size());
    // Block count: enough for parallel speedup, small enough that the
    // d^3 combines stay negligible next to the d^2 sweep.
    std::int64_t n_blocks = std::min<std::int64_t>(4 * n_threads, std::max<std::int64_t>(1, len / 16));
    if (n_blocks <= 1) return forward(p, tokens);

    for (const Sym x : tokens) {
        if (x < 0 || x >= dm.n_sym) fail(Errc::precondition, "forward_scan: token out of range");
    }

    const auto d = static_cast<std::size_t>(dm.d);
    const std::int64_t block = (len + n_blocks - 1) / n_blocks;
    n_blocks = (len + block - 1) / block;

    // Up phase: per-block products A(x_hi-1)···A(x_lo).
    std::vector<std::vector<float>> prod(static_cast<std::size_t>(n_blocks));
    parallel_for(n_blocks, n_threads, [&](std::int64_t bi) {
        const std::int64_t lo = bi * block, hi = std::min(len, lo + block);
        std::vector<float> acc(p.a_mat(tokens[static_cast<std::size_t>(lo)]).begin(),
                               p.a_mat(tokens[static_cast<std::size_t>(lo)]).end());
        std::vector<float> tmp(d * d);
        for (std::int64_t t = lo + 1; t < hi; ++t) {
            matmul(p.a_mat(tokens[static_cast<std::size_t>(t)]).data(), acc.data(), tmp.data(), dm.d);
            std::swap(acc, tmp);
        }
        prod[static_cast<std::size_t>(bi)] = std::move(acc);
    });

    // Exclusive prefix over block products; block counts are tiny, so a
    // sequential sweep of d×d combines costs nothing next to the block
    // work (later factors multiply from the left).
    const std::size_t nb = static_cast<std::size_t>(n_blocks);
    std::vector<float> identity(d * d, 0.0f);
    for (std::size_t i = 0; i < d; ++i) identity[i * d + i] = 1.0f;
    std::vector<std::vector<float>> tree(nb);
    tree[0] = identity;
    for (std::size_t i = 1; i < nb; ++i) {
        tree[i].resize(d * d);
        matmul(prod[i - 1].data(), tree[i - 1].data(), tree[i].data(), dm.d);
    }

    ForwardTrace tr;
    tr.d = dm.d;
    tr.n_sym = dm.n_sym;
    tr.n_mot = dm.n_mot;
    tr.len = len;
    tr.h.resize(static_cast<std::size_t>(len + 1) * d);
    tr.s_logits.resize(static_cast<std::size_t>(len) * static_cast<std::size_t>(dm.n_sym));
    tr.m_logits.resize(static_cast<std::size_t>(len) * static_cast<std::size_t>(dm.n_mot));

    // Down phase: each block starts from prefix·h0 and sweeps locally.
    parallel_for(n_blocks, n_threads, [&](std::int64_t bi) {
        const std::int64_t lo = bi * block, hi = std::min(len, lo + block);
        std::span<const float> h0{p.h0.data(), d};
        float* hrow = tr.h.data() + static_cast<std::size_t>(lo) * d;
        if (bi == 0) {
            std::copy(h0.begin(), h0.end(), hrow);
        } else {
            matvec<float>({tree[static_cast<std::size_t>(bi)].data(), d * d}, h0, {hrow, d}, dm.d,
                          dm.d);
        }
        for (std::int64_t t = lo; t < hi; ++t) {
            const Sym x = tokens[static_cast<std::size_t>(t)];
            std::span<const float> h{tr.h.data() + static_cast<std::size_t>(t) * d, d};
            matvec<float>(p.b_mat(x), h,
                          {tr.s_logits.data() +
                               static_cast<std::size_t>(t) * static_cast<std::size_t>(dm.n_sym),
                           static_cast<std::size_t>(dm.n_sym)},
                          dm.n_sym, dm.d);
            matvec<float>(p.c_mat(x), h,
                          {tr.m_logits.data() +
                               static_cast<std::size_t>(t) * static_cast<std::size_t>(dm.n_mot),
                           static_cast<std::size_t>(dm.n_mot)},
                          dm.n_mot, dm.d);
            if (t + 1 < hi || bi + 1 == n_blocks) {
                matvec<float>(p.a_mat(x), h, {tr.h.data() + static_cast<std::size_t>(t + 1) * d, d},
                              dm.d, dm.d);
            }
        }
    });
    return tr;
}

int decode(std::span<const float> logits) {
    if (logits.empty()) fail(Errc::precondition, "decode: empty logits");
    int best = 0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        if (std::isnan(logits[i])) fail(Errc::non_finite, "decode: NaN logit");
        if (logits[i] > logits[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
    }
    return best;
}

DfstRunner::DfstRunner(const DfstParams& p) : p_(p) {
    h_.assign(p.h0.begin(), p.h0.end());
    next_.resize(h_.size());
    s_out_.resize(static_cast<std::size_t>(p.dims.n_sym));
    m_out_.resize(static_cast<std::size_t>(p.dims.n_mot));
}

void DfstRunner::reset() { h_.assign(p_.h0.begin(), p_.h0.end()); }

DfstRunner::Action DfstRunner::step(WorldState& w, Position& p) {
    const Sym x = w.read(p);
    if (x < 0 || x >= p_.dims.n_sym) fail(Errc::precondition, "rollout: observation out of range");
    const auto d = static_cast<std::size_t>(p_.dims.d);

    // One-hot fast path: A·e_q is exactly column q.
    int hot = -1;
    bool one_hot = true;
    for (std::size_t i = 0; i < d && one_hot; ++i) {
        if (h_[i] == 0.0f) continue;
        if (h_[i] == 1.0f && hot < 0) {
            hot = static_cast<int>(i);
        } else {
            one_hot = false;
        }
    }
    if (one_hot && hot >= 0) {
        const auto q = static_cast<std::size_t>(hot);
        const float* bm = p_.b_mat(x).data();
        for (std::size_t j = 0; j < s_out_.size(); ++j) s_out_[j] = bm[j * d + q];
        const float* cm = p_.c_mat(x).data();
        for (std::size_t j = 0; j < m_out_.size(); ++j) m_out_[j] = cm[j * d + q];
        const float* am = p_.a_mat(x).data();
        for (std::size_t i = 0; i < d; ++i) next_[i] = am[i * d + q];
    } else {
        matvec<float>(p_.b_mat(x), h_, s_out_, p_.dims.n_sym, p_.dims.d);
        matvec<float>(p_.c_mat(x), h_, m_out_, p_.dims.n_mot, p_.dims.d);
        matvec<float>(p_.a_mat(x), h_, next_, p_.dims.d, p_.dims.d);
    }

    const Sym sym = decode(s_out_);
    const auto move = static_cast<Motion>(decode(m_out_));
    w.write(p, sym);
    p = apply_motion(p, move);
    std::swap(h_, next_);
    return {sym, move};
}

RolloutResult rollout(const DfstParams& p, WorldState& w, Position p0, HaltMode halt,
                      std::int64_t budget) {
    if (budget <= 0) fail(Errc::precondition, "rollout: budget must be positive");
    DfstRunner runner(p);
    Position pos = p0;
    RolloutResult r;
    int quiet = 0;
    while (r.steps < budget) {
        if (halt.kind == HaltMode::Kind::oracle_timed && r.steps == halt.t_star) {
            r.halted = true;
            return r;
        }
        const Sym before = w.read(pos);
        const Position here = pos;
        const auto act = runner.step(w, pos);
        ++r.steps;
        if (halt.kind == HaltMode::Kind::fixpoint) {
            quiet = (act.sym == before && act.move == Motion::Stay && pos == here) ? quiet + 1 : 0;
            if (quiet >= halt.patience) {
                r.halted = true;
                return r;
            }
        }
    }
    if (halt.kind == HaltMode::Kind::oracle_timed && r.steps == halt.t_star) r.halted = true;
    return r;
}

// --------------------------- checkpoint I/O ---------------------------

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

std::string serialize_checkpoint(const Checkpoint& c) {
    std::ostringstream out;
    out << "gridfst-checkpoint 1\n";
    out << "d " << c.params.dims.d << '\n';
    out << "n_sym " << c.params.dims.n_sym << '\n';
    out << "n_mot " << c.params.dims.n_mot << '\n';
    out << "alphabet";
    for (const auto& s : c.alphabet.symbols) out << ' ' << s;
    out << '\n';
    out << "lambda " << c.alphabet.lambda_index << '\n';
    out << "radix " << c.alphabet.radix << '\n';
    out << "operator " << c.alphabet.operator_glyph << '\n';
    for (const auto& [k, v] : c.meta) out << "meta " << k << ' ' << v << '\n';
    out << "data\n";
    std::string head = out.str();
    auto append = [&head](const std::vector<float>& v) {
        const std::size_t off = head.size();
        head.resize(off + v.size() * sizeof(float));
        std::memcpy(head.data() + off, v.data(), v.size() * sizeof(float));
    };
    append(c.params.a);
    append(c.params.b);
    append(c.params.c);
    append(c.params.h0);
    return head;
}

Checkpoint deserialize_checkpoint(const std::string& bytes) {
    Checkpoint c;
    std::size_t pos = 0;
    int line_no = 0;
    bool saw_data = false;
    while (pos < bytes.size()) {
        const std::size_t eol = bytes.find('\n', pos);
        if (eol == std::string::npos) break;
        const std::string line = bytes.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (line_no == 1) {
            if (line != "gridfst-checkpoint 1")
                fail(Errc::parse, "line 1: not a gridfst checkpoint");
            continue;
        }
        if (key == "data") {
            saw_data = true;
            break;
        } else if (key == "d") {
            ss >> c.params.dims.d;
        } else if (key == "n_sym") {
            ss >> c.params.dims.n_sym;
        } else if (key == "n_mot") {
            ss >> c.params.dims.n_mot;
        } else if (key == "alphabet") {
            std::string tok;
            while (ss >> tok) c.alphabet.symbols.push_back(tok);
        } else if (key == "lambda") {
            ss >> c.alphabet.lambda_index;
        } else if (key == "radix") {
            ss >> c.alphabet.radix;
        } else if (key == "operator") {
            ss >> c.alphabet.operator_glyph;
        } else if (key == "meta") {
            std::string k;
            ss >> k;
            std::string v;
            std::getline(ss, v);
            if (!v.empty() && v[0] == ' ') v.erase(0, 1);
            c.meta[k] = v;
        } else {
            fail(Errc::parse, "line " + std::to_string(line_no) + ": unknown checkpoint key");
        }
        if (ss.fail()) fail(Errc::parse, "line " + std::to_string(line_no) + ": bad value");
    }
    if (!saw_data) fail(Errc::parse, "checkpoint: missing data section");
    if (c.params.dims.d <= 0 || c.params.dims.n_sym < 2 || c.params.dims.n_mot != kNumMotions)
        fail(Errc::parse, "checkpoint: bad dims");
    c.alphabet.validate();
    if (c.alphabet.size() != c.params.dims.n_sym)
        fail(Errc::integrity, "checkpoint: alphabet size does not match n_sym");
    DfstDims dims = c.params.dims;
    c.params.resize(dims);
    auto take = [&bytes, &pos](std::vector<float>& v) {
        const std::size_t want = v.size() * sizeof(float);
        if (bytes.size() - pos < want) fail(Errc::parse, "checkpoint: truncated tensor data");
        std::memcpy(v.data(), bytes.data() + pos, want);
        pos += want;
    };
    take(c.params.a);
    take(c.params.b);
    take(c.params.c);
    take(c.params.h0);
    if (pos != bytes.size()) fail(Errc::parse, "checkpoint: trailing bytes");
    return c;
}

void save_checkpoint(const std::string& path, const Checkpoint& c) {
    write_file_atomic(path, serialize_checkpoint(c));
}

Checkpoint load_checkpoint(const std::string& path) {
    return deserialize_checkpoint(read_file(path));
}

}  // namespace gridfst
