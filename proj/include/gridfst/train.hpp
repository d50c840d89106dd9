// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0
//
// Next-action-prediction training: squared-error loss against one-hot
// expert actions, analytic backpropagation through the linear
// recurrence, Adam with cosine annealing. Fully deterministic for a
// given config: batches are seeded, accumulation order is fixed.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gridfst/dfst.hpp"
#include "gridfst/pto.hpp"

namespace gridfst {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct TrainConfig {
    ExpertTask task = ExpertTask::add2;
    int d = 0;  // 0: use the expert's state count
    double lr0 = 0.01;
    std::int64_t total_iters = 1000;
    int batch_size = 32;
    AdamConfig adam;
    std::uint64_t seed = 1;
    std::int64_t checkpoint_every = 0;  // 0: final checkpoint only
    bool sample_with_replacement = true;
    std::string dataset_path;
    std::string out_dir;

    int resolved_d() const;
};

// key = value text, '#' comments.
TrainConfig parse_train_config(const std::string& text);
std::string dump_train_config(const TrainConfig& cfg);

// Mean over the batch of (1/(2T)) Σ_t (‖ŝ_t − s_t‖² + ‖m̂_t − m_t‖²)
// with one-hot targets.
template <typename T>
double nap_loss(const ParamsT<T>& params, std::span<const Pto> batch);

template <typename T>
struct GradResult {
    ParamsT<T> grads;  // same shapes as the parameters
    double loss = 0.0;
};

// Exact gradients via the backward recursion
//   g_t = A(x_t)ᵀ g_{t+1} + B(x_t)ᵀ(ŝ_t−s_t)/T + C(x_t)ᵀ(m̂_t−m_t)/T,
// accumulated into per-symbol slices; batch gradient is the mean.
template <typename T>
GradResult<T> grad(const ParamsT<T>& params, std::span<const Pto> batch);

// lr0 · ½(1 + cos(π t / total)); nonincreasing on [0, total].
double cosine_lr(double lr0, std::int64_t t, std::int64_t total_iters);

struct AdamState {
    ParamsT<float> m, v;
    std::int64_t t = 0;  // completed steps
};

// Standard bias-corrected update; rejects non-finite gradients.
void adam_step(DfstParams& params, const GradResult<float>& g, AdamState& state, double lr,
               const AdamConfig& cfg);

struct LossLogEntry {
    std::int64_t iter;
    double loss;
    double lr;
};

std::string loss_log_csv(const std::vector<LossLogEntry>& log);

struct TrainResult {
    DfstParams params;
    std::vector<LossLogEntry> log;
    std::vector<std::pair<std::int64_t, std::string>> checkpoints;  // (iter, path)
};

// Runs the full loop; writes checkpoints and loss.csv under cfg.out_dir
// when it is non-empty.
TrainResult train_loop(const TrainConfig& cfg, const Dataset& dataset);

}  // namespace gridfst
