// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/emulate.hpp"

#include "gridfst/parallel.hpp"

namespace gridfst {

EmulationReport verify_emulation(const FstSpec& spec, const DfstParams& params,
                                 const std::vector<InputPair>& inputs, std::int64_t max_steps,
                                 int n_threads) {
    if (spec.alphabet.size() != params.dims.n_sym)
        fail(Errc::precondition, "verify_emulation: alphabet size mismatch");
    EmulationReport report;
    report.n_inputs = inputs.size();
    std::vector<std::optional<Divergence>> divs(inputs.size());

    parallel_for(static_cast<std::int64_t>(inputs.size()), n_threads, [&](std::int64_t i) {
        const auto& [a, b] = inputs[static_cast<std::size_t>(i)];
        WorldState w_fst = make_input_world(spec.alphabet, a, b);
        WorldState w_dfst = w_fst;
        Position p_fst{0, 0}, p_dfst{0, 0};
        int q = spec.q0;
        DfstRunner runner(params);
        for (std::int64_t t = 0; t < max_steps && q != spec.qf; ++t) {
            const StepResult expert = step_fst(spec, q, w_fst, p_fst);
            const DfstRunner::Action model = runner.step(w_dfst, p_dfst);
            if (expert.written != model.sym || expert.moved != model.move) {
                divs[static_cast<std::size_t>(i)] =
                    Divergence{static_cast<std::size_t>(i), a,     b,         t,
                               expert.written,              expert.moved,
                               model.sym,                   model.move};
                return;
            }
            q = expert.state;
        }
    });

    for (std::size_t i = 0; i < divs.size(); ++i) {
        if (divs[i]) {
            if (!report.first_divergence) report.first_divergence = divs[i];
        } else {
            ++report.n_exact;
        }
    }
    return report;
}

std::vector<InputPair> random_input_pairs(int radix, std::size_t count, std::size_t max_digits,
                                          std::uint64_t seed) {
    Rng rng = Rng::salted(seed, 0x696e70757473ULL);
    auto digits = [&](std::size_t len) {
        std::string s;
        s.reserve(len);
        for (std::size_t i = 0; i < len; ++i)
            s.push_back(static_cast<char>('0' + rng.index(static_cast<std::uint64_t>(radix))));
        return s;
    };
    std::vector<InputPair> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto la = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(max_digits)));
        const auto lb = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(max_digits)));
        out.emplace_back(digits(la), digits(lb));
    }
    return out;
}

}  // namespace gridfst
