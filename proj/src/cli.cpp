// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "gridfst/emulate.hpp"
#include "gridfst/eval.hpp"
#include "gridfst/fileio.hpp"
#include "gridfst/train.hpp"

namespace gridfst {

namespace {

namespace fs = std::filesystem;

std::string default_out_dir() {
    if (const char* env = std::getenv("GRIDFST_OUT_DIR")) return env;
    return "out";
}

HaltPolicy parse_halt(const std::string& s) {
    if (s == "oracle") return HaltPolicy::oracle_timed;
    if (s == "fixpoint") return HaltPolicy::fixpoint;
    fail(Errc::precondition, "halt mode must be 'oracle' or 'fixpoint'");
}

int cmd_gen_data(const std::string& task_name_, int p, int q, std::int64_t n, std::uint64_t seed,
                 const std::string& out) {
    const ExpertTask task = task_from_name(task_name_);
    const Dataset ds = ds_sample(task, p, q, n, seed);
    for (const auto& w : ds.warnings) std::cerr << "gridfst: warning: " << w << '\n';
    save_dataset(out, ds);
    std::cout << "wrote " << ds.records.size() << " records (" << ds.n_exhaustive << " exhaustive, "
              << ds.n_same_digit << " same-digit, " << ds.n_random << " random) to " << out << '\n';
    return 0;
}

int cmd_train(const std::string& config_path, const std::string& out_dir_flag,
              const std::string& dataset_flag) {
    TrainConfig cfg = parse_train_config(read_file(config_path));
    if (!out_dir_flag.empty()) cfg.out_dir = out_dir_flag;
    if (cfg.out_dir.empty()) cfg.out_dir = default_out_dir();
    if (!dataset_flag.empty()) cfg.dataset_path = dataset_flag;
    if (cfg.dataset_path.empty()) fail(Errc::precondition, "train: no dataset_path configured");
    const Dataset ds = load_dataset(cfg.dataset_path);
    const TrainResult res = train_loop(cfg, ds);
    std::cout << "trained " << cfg.total_iters << " iters; final loss "
              << (res.log.empty() ? 0.0 : res.log.back().loss) << "; wrote "
              << res.checkpoints.size() << " checkpoints to " << cfg.out_dir << '\n';
    return 0;
}

int cmd_eval(const std::string& ckpt_path, int m_max, int step, std::uint64_t seed,
             const std::string& halt, const std::string& out, std::int64_t budget) {
    const Checkpoint ck = load_checkpoint(ckpt_path);
    auto it = ck.meta.find("task");
    if (it == ck.meta.end()) fail(Errc::integrity, "checkpoint lacks task metadata");
    const ExpertTask task = task_from_name(it->second);
    const HaltPolicy policy = parse_halt(halt);
    const LgResult lg = lg_search(ck.params, task, m_max, step, seed, policy, budget);
    const EvalReport report = make_eval_report(task, ckpt_path, halt, lg, {});
    const std::string text = eval_report_json(report);
    if (out.empty()) {
        std::cout << text;
    } else {
        write_file_atomic(out, text);
        std::cout << "plg " << lg.plg << " rlg " << lg.rlg << (lg.truncated ? " (truncated)" : "")
                  << "; report written to " << out << '\n';
    }
    return 0;
}

int cmd_compile(const std::string& fst_path, const std::string& out) {
    const FstSpec spec = parse_fst(read_file(fst_path));
    Checkpoint ck;
    ck.params = compile_fst(spec);
    ck.alphabet = spec.alphabet;
    ck.meta["iter"] = "0";
    ck.meta["loss"] = "0";
    ck.meta["source"] = fst_path;
    save_checkpoint(out, ck);
    std::cout << "compiled " << spec.n_states << " states over " << spec.alphabet.size()
              << " symbols (" << param_count(ck.params.dims) << " parameters) to " << out << '\n';
    return 0;
}

int cmd_verify(const std::string& fst_path, const std::string& params_path, std::size_t n_random,
               std::size_t max_digits, std::uint64_t seed, std::int64_t max_steps, int threads) {
    const FstSpec spec = parse_fst(read_file(fst_path));
    const Checkpoint ck = load_checkpoint(params_path);
    const auto inputs = random_input_pairs(spec.alphabet.radix, n_random, max_digits, seed);
    std::int64_t budget = max_steps;
    if (budget <= 0) {
        budget = 0;
        for (const auto& [a, b] : inputs) {
            // generous per-input cap reused as a common ceiling
            budget = std::max(budget, 64 * static_cast<std::int64_t>((a.size() + b.size() + 4) *
                                                                     (a.size() + b.size() + 4)));
        }
    }
    const EmulationReport report = verify_emulation(spec, ck.params, inputs, budget, threads);
    std::cout << "exact " << report.n_exact << "/" << report.n_inputs << '\n';
    if (report.first_divergence) {
        const auto& d = *report.first_divergence;
        std::cout << "first divergence: input " << d.input_index << " (" << d.a << ","
                  << d.b << ") at step " << d.timestep << ": expert ("
                  << spec.alphabet.glyph(d.expert_sym) << ","
                  << kMotionGlyphs[static_cast<int>(d.expert_move)] << ") model ("
                  << spec.alphabet.glyph(d.model_sym) << ","
                  << kMotionGlyphs[static_cast<int>(d.model_move)] << ")\n";
        return 3;
    }
    return 0;
}

int cmd_report(const std::string& run_dir, const std::string& out, int m_max, int step,
               std::uint64_t seed, const std::string& halt, std::int64_t budget) {
    std::vector<std::string> ckpts;
    for (const auto& entry : fs::directory_iterator(run_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("ckpt_", 0) == 0 && entry.path().extension() == ".dfst")
            ckpts.push_back(entry.path().string());
    }
    if (ckpts.empty()) fail(Errc::io, "no checkpoints found under " + run_dir);
    std::sort(ckpts.begin(), ckpts.end());
    const auto rows = generalization_curve(ckpts, m_max, step, seed, parse_halt(halt), budget);
    const std::string csv = curve_csv(rows);
    if (out.empty()) {
        std::cout << csv;
    } else {
        write_file_atomic(out, csv);
        std::cout << "wrote " << rows.size() << " rows to " << out << '\n';
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"differentiable finite-state transducers on a symbolic grid"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap (0 = all cores)");

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "record an expert trajectory dataset");
    std::string g_task, g_out = "dataset.txt";
    int g_p = 1, g_q = 3;
    std::int64_t g_n = 20;
    std::uint64_t g_seed = 1;
    gen->add_option("--task", g_task, "add2|add10|mult2|mult10")->required();
    gen->add_option("--p", g_p, "exhaustive stratum: operands up to p digits");
    gen->add_option("--q", g_q, "random stratum: operands up to q digits");
    gen->add_option("--n", g_n, "total records");
    gen->add_option("--seed", g_seed, "sampler seed");
    gen->add_option("--out", g_out, "output path");

    // train
    auto* tr = app.add_subcommand("train", "run the training loop from a config file");
    std::string t_config, t_out_dir, t_dataset;
    tr->add_option("--config", t_config, "key = value config file")->required();
    tr->add_option("--out-dir", t_out_dir, "output directory (overrides config)");
    tr->add_option("--dataset", t_dataset, "dataset path (overrides config)");

    // eval
    auto* ev = app.add_subcommand("eval", "length-generalization search on a checkpoint");
    std::string e_ckpt, e_halt = "oracle", e_out;
    int e_m_max = 32, e_step = 1;
    std::uint64_t e_seed = 1;
    std::int64_t e_budget = 100'000'000;
    ev->add_option("--checkpoint", e_ckpt, "checkpoint file")->required();
    ev->add_option("--m-max", e_m_max, "largest digit count probed");
    ev->add_option("--step", e_step, "probe grid step (0 = adaptive with refinement)");
    ev->add_option("--seed", e_seed, "probe seed");
    ev->add_option("--halt-mode", e_halt, "oracle|fixpoint");
    ev->add_option("--budget", e_budget, "environment step budget");
    ev->add_option("--out", e_out, "report path (stdout when omitted)");

    // compile
    auto* co = app.add_subcommand("compile", "one-hot compile a transition table");
    std::string c_fst, c_out = "compiled.dfst";
    co->add_option("--fst", c_fst, "textual transition table")->required();
    co->add_option("--out", c_out, "checkpoint output path");

    // verify
    auto* ve = app.add_subcommand("verify", "side-by-side emulation check");
    std::string v_fst, v_params;
    std::size_t v_n_random = 100, v_max_digits = 20;
    std::uint64_t v_seed = 1;
    std::int64_t v_max_steps = 0;
    ve->add_option("--fst", v_fst, "textual transition table")->required();
    ve->add_option("--params", v_params, "checkpoint file")->required();
    ve->add_option("--n-random", v_n_random, "number of random inputs");
    ve->add_option("--max-digits", v_max_digits, "operand length cap");
    ve->add_option("--seed", v_seed, "input seed");
    ve->add_option("--max-steps", v_max_steps, "per-input step cap (0 = auto)");

    // report
    auto* re = app.add_subcommand("report", "generalization curve over a run directory");
    std::string r_run_dir, r_out, r_halt = "oracle";
    int r_m_max = 16, r_step = 1;
    std::uint64_t r_seed = 1;
    std::int64_t r_budget = 100'000'000;
    re->add_option("--run-dir", r_run_dir, "training output directory")->required();
    re->add_option("--out", r_out, "CSV path (stdout when omitted)");
    re->add_option("--m-max", r_m_max, "largest digit count probed");
    re->add_option("--step", r_step, "probe grid step (0 = adaptive)");
    re->add_option("--seed", r_seed, "probe seed");
    re->add_option("--halt-mode", r_halt, "oracle|fixpoint");
    re->add_option("--budget", r_budget, "environment step budget per checkpoint");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << "gridfst: error[usage]: " << e.what() << '\n';
        return 1;
    }

    try {
        if (gen->parsed()) return cmd_gen_data(g_task, g_p, g_q, g_n, g_seed, g_out);
        if (tr->parsed()) return cmd_train(t_config, t_out_dir, t_dataset);
        if (ev->parsed()) return cmd_eval(e_ckpt, e_m_max, e_step, e_seed, e_halt, e_out, e_budget);
        if (co->parsed()) return cmd_compile(c_fst, c_out);
        if (ve->parsed())
            return cmd_verify(v_fst, v_params, v_n_random, v_max_digits, v_seed, v_max_steps,
                              threads);
        if (re->parsed()) return cmd_report(r_run_dir, r_out, r_m_max, r_step, r_seed, r_halt,
                                            r_budget);
    } catch (const Error& e) {
        std::cerr << "gridfst: error[" << errc_name(e.code()) << "]: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "gridfst: error[internal]: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace gridfst
