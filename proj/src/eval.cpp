// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/eval.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "gridfst/emulate.hpp"

namespace gridfst {

namespace {

// Memoized per task; expert tables are pure functions of the task.
const FstSpec& task_expert(ExpertTask task) {
    static const FstSpec experts[4] = {
        expert_spec(ExpertTask::add2),
        expert_spec(ExpertTask::add10),
        expert_spec(ExpertTask::mult2),
        expert_spec(ExpertTask::mult10),
    };
    return experts[static_cast<int>(task)];
}

}  // namespace

ProbeOutcome exact_match(const DfstParams& params, ExpertTask task, const std::string& a,
                         const std::string& b, HaltPolicy halt) {
    const Alphabet al = task_alphabet(task);
    if (params.dims.n_sym != al.size())
        fail(Errc::precondition, "exact_match: checkpoint alphabet does not match task");
    ProbeOutcome out;
    out.a = a;
    out.b = b;
    out.expected = oracle(task, a, b);

    const std::int64_t budget = expert_step_budget(task, a.size(), b.size());
    HaltMode mode = HaltMode::fixpoint();
    std::int64_t rollout_budget = budget;
    if (halt == HaltPolicy::oracle_timed) {
        WorldState w_exp = make_input_world(al, a, b);
        const RunResult expert = run_fst(task_expert(task), w_exp, {0, 0}, budget);
        out.steps += expert.steps;
        if (!expert.halted) {
            out.note = "expert budget exhausted";
            return out;
        }
        mode = HaltMode::oracle_timed(expert.steps);
        rollout_budget = expert.steps;
    }

    WorldState w = make_input_world(al, a, b);
    const RolloutResult rr = rollout(params, w, {0, 0}, mode, rollout_budget);
    out.steps += rr.steps;
    out.halted = rr.halted;
    if (!rr.halted) {
        out.note = "did not halt";
        return out;
    }
    try {
        out.predicted = read_answer(w, al);
    } catch (const Error& e) {
        out.note = std::string("unreadable grid: ") + errc_name(e.code());
        return out;
    }
    out.match = (out.predicted == out.expected);
    if (!out.match && out.note.empty()) out.note = "wrong answer";
    return out;
}

namespace {

std::string random_operand(Rng& rng, int radix, int len, bool leading_nonzero) {
    std::string s;
    s.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        int lo = (i == 0 && leading_nonzero) ? 1 : 0;
        s.push_back(static_cast<char>('0' + lo + rng.index(static_cast<std::uint64_t>(radix - lo))));
    }
    return s;
}

bool run_probe_set(const DfstParams& params, ExpertTask task, const std::vector<InputPair>& pairs,
                   HaltPolicy halt, ProbeStats* stats) {
    bool all = true;
    for (const auto& [a, b] : pairs) {
        const ProbeOutcome o = exact_match(params, task, a, b, halt);
        if (stats) {
            stats->env_steps += o.steps;
            stats->outcomes.push_back(o);
        }
        if (!o.match) {
            all = false;
            break;  // one miss already fails the probe
        }
    }
    return all;
}

}  // namespace

bool plg_probe(const DfstParams& params, ExpertTask task, int m, std::uint64_t seed,
               HaltPolicy halt, ProbeStats* stats) {
    if (m < 1) fail(Errc::precondition, "plg_probe: m must be >= 1");
    const int radix = task_radix(task);
    Rng rng = Rng::salted(seed, splitmix64(0x706c67ULL ^ static_cast<std::uint64_t>(m)));
    std::vector<InputPair> pairs;
    // 5 pairs with exactly m digits (nonzero leading digit)...
    for (int i = 0; i < 5; ++i)
        pairs.emplace_back(random_operand(rng, radix, m, true), random_operand(rng, radix, m, true));
    // ...and 5 with at most m digits (single-digit operands may be "0").
    for (int i = 0; i < 5; ++i) {
        const int la = static_cast<int>(rng.range(1, m));
        const int lb = static_cast<int>(rng.range(1, m));
        pairs.emplace_back(random_operand(rng, radix, la, la > 1),
                           random_operand(rng, radix, lb, lb > 1));
    }
    return run_probe_set(params, task, pairs, halt, stats);
}

namespace {

// The "hard instances": all R² pairs of one digit repeated m times.
bool same_digit_probe(const DfstParams& params, ExpertTask task, int m, HaltPolicy halt,
                      ProbeStats* stats) {
    const int radix = task_radix(task);
    std::vector<InputPair> pairs;
    for (int da = 0; da < radix; ++da) {
        for (int db = 0; db < radix; ++db) {
            pairs.emplace_back(std::string(static_cast<std::size_t>(m), static_cast<char>('0' + da)),
                               std::string(static_cast<std::size_t>(m), static_cast<char>('0' + db)));
        }
    }
    return run_probe_set(params, task, pairs, halt, stats);
}

}  // namespace

bool rlg_probe(const DfstParams& params, ExpertTask task, int m, std::uint64_t seed,
               HaltPolicy halt, ProbeStats* stats) {
    if (!plg_probe(params, task, m, seed, halt, stats)) return false;
    return same_digit_probe(params, task, m, halt, stats);
}

LgResult lg_search_impl(const std::function<bool(int)>& plg_fn,
                        const std::function<bool(int)>& rlg_fn, int m_max, int step,
                        const std::function<std::int64_t()>& spent, std::int64_t step_budget) {
    if (m_max < 1) fail(Errc::precondition, "lg_search: m_max must be >= 1");
    LgResult r;
    auto over_budget = [&] { return spent() > step_budget; };

    auto probe_level = [&](int m, bool rlg_alive) -> std::pair<bool, bool> {
        const bool pp = plg_fn(m);
        const bool rp = pp && rlg_alive && rlg_fn(m);
        return {pp, rp};
    };

    if (step >= 1) {
        bool rlg_alive = true;
        for (int m = 1; m <= m_max; m += step) {
            if (over_budget()) {
                r.truncated = true;
                r.notes = "step budget exhausted at m=" + std::to_string(m);
                break;
            }
            auto [pp, rp] = probe_level(m, rlg_alive);
            if (!pp) break;
            r.plg = m;
            if (rp) r.rlg = m; else rlg_alive = false;
        }
        return r;
    }

    // Adaptive schedule: dense to 64, ×1.5 beyond, binary refinement of
    // the failing boundary so reported values are exact.
    bool rlg_alive = true;
    int last_pass_plg = 0;
    int prev = 0;
    int m = 1;
    std::vector<int> grid;
    while (m <= m_max) {
        grid.push_back(m);
        prev = m;
        m = (m < 64) ? m + 1 : std::max(m + 1, (m * 3) / 2);
    }
    if (grid.empty() || grid.back() != m_max) grid.push_back(m_max);
    (void)prev;

    int fail_plg = 0;  // smallest known-failing m (0 = none)
    int last_rlg_pass = 0, fail_rlg = 0;
    for (int level : grid) {
        if (over_budget()) {
            r.truncated = true;
            r.notes = "step budget exhausted at m=" + std::to_string(level);
            break;
        }
        auto [pp, rp] = probe_level(level, rlg_alive);
        if (pp) {
            last_pass_plg = level;
            if (rp) last_rlg_pass = level;
            else if (rlg_alive) { fail_rlg = level; rlg_alive = false; }
        } else {
            fail_plg = level;
            if (rlg_alive) { fail_rlg = level; rlg_alive = false; }
            break;
        }
    }
    // Refine PLG in (last_pass, fail) when there is a gap.
    auto refine = [&](int lo, int hi, const std::function<bool(int)>& fn) {
        while (hi - lo > 1 && !over_budget()) {
            const int mid = lo + (hi - lo) / 2;
            if (fn(mid)) lo = mid; else hi = mid;
        }
        return lo;
    };
    r.plg = last_pass_plg;
    if (fail_plg > 0 && fail_plg - last_pass_plg > 1)
        r.plg = refine(last_pass_plg, fail_plg, plg_fn);
    r.rlg = last_rlg_pass;
    if (fail_rlg > 0 && fail_rlg - last_rlg_pass > 1) {
        auto rfn = [&](int mm) { return plg_fn(mm) && rlg_fn(mm); };
        r.rlg = refine(last_rlg_pass, std::min(fail_rlg, std::max(r.plg + 1, last_rlg_pass + 1)), rfn);
    }
    r.rlg = std::min(r.rlg, r.plg);
    if (over_budget()) r.truncated = true;
    return r;
}

LgResult lg_search(const DfstParams& params, ExpertTask task, int m_max, int step,
                   std::uint64_t seed, HaltPolicy halt, std::int64_t step_budget) {
    ProbeStats stats;
    auto plg_fn = [&](int m) { return plg_probe(params, task, m, seed, halt, &stats); };
    // The impl only calls this after plg_fn passed at the same m, so the
    // two together form the robust probe.
    auto rlg_fn = [&](int m) { return same_digit_probe(params, task, m, halt, &stats); };
    auto spent = [&] { return stats.env_steps; };
    return lg_search_impl(plg_fn, rlg_fn, m_max, step, spent, step_budget);
}

EvalReport make_eval_report(ExpertTask task, std::string checkpoint_id, std::string halt_mode,
                            const LgResult& lg, std::vector<ProbeOutcome> probes) {
    if (lg.rlg > lg.plg) fail(Errc::integrity, "eval report: rlg > plg");
    EvalReport r;
    r.task = task;
    r.checkpoint_id = std::move(checkpoint_id);
    r.halt_mode = std::move(halt_mode);
    r.plg = lg.plg;
    r.rlg = lg.rlg;
    r.truncated = lg.truncated;
    r.probes = std::move(probes);
    r.notes = lg.notes;
    return r;
}

std::string eval_report_json(const EvalReport& r) {
    nlohmann::json j;
    j["task"] = task_name(r.task);
    j["checkpoint"] = r.checkpoint_id;
    j["halt_mode"] = r.halt_mode;
    j["plg"] = r.plg;
    j["rlg"] = r.rlg;
    j["truncated"] = r.truncated;
    j["notes"] = r.notes;
    auto arr = nlohmann::json::array();
    for (const auto& p : r.probes) {
        arr.push_back({{"a", p.a},
                       {"b", p.b},
                       {"predicted", p.predicted},
                       {"expected", p.expected},
                       {"match", p.match},
                       {"steps", p.steps},
                       {"halted", p.halted},
                       {"note", p.note}});
    }
    j["probes"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::vector<CurveRow> generalization_curve(const std::vector<std::string>& checkpoint_paths,
                                           int m_max, int step, std::uint64_t seed,
                                           HaltPolicy halt, std::int64_t step_budget) {
    std::vector<CurveRow> rows;
    for (const auto& path : checkpoint_paths) {
        const Checkpoint ck = load_checkpoint(path);
        auto need = [&](const char* key) -> std::string {
            auto it = ck.meta.find(key);
            if (it == ck.meta.end())
                fail(Errc::integrity, "checkpoint " + path + " lacks meta key " + key);
            return it->second;
        };
        CurveRow row;
        row.iter = std::stoll(need("iter"));
        row.loss = std::stod(need("loss"));
        const ExpertTask task = task_from_name(need("task"));
        const LgResult lg = lg_search(ck.params, task, m_max, step, seed, halt, step_budget);
        row.rlg = lg.rlg;
        row.plg = lg.plg;
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(), [](const CurveRow& a, const CurveRow& b) {
        return a.iter < b.iter;
    });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const CurveRow& a, const CurveRow& b) { return a.iter == b.iter; }),
               rows.end());
    return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
    std::ostringstream out;
    out << "iter,loss,rlg,plg\n";
    out.precision(10);
    for (const auto& r : rows) out << r.iter << ',' << r.loss << ',' << r.rlg << ',' << r.plg << '\n';
    return out.str();
}

}  // namespace gridfst
