// Copyright (c) 2026 the gridfst authors
// SPDX-License-Identifier: Apache-2.0

#include "gridfst/train.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "gridfst/fileio.hpp"

namespace gridfst {

int TrainConfig::resolved_d() const {
    if (d > 0) return d;
    return expert_spec(task).n_states;
}

TrainConfig parse_train_config(const std::string& text) {
    TrainConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        std::string eq;
        ss >> eq;
        if (eq != "=") fail(Errc::parse, "line " + std::to_string(line_no) + ": expected 'key = value'");
        std::string value;
        ss >> value;
        if (value.empty()) fail(Errc::parse, "line " + std::to_string(line_no) + ": missing value");
        try {
            if (key == "task") cfg.task = task_from_name(value);
            else if (key == "d") cfg.d = std::stoi(value);
            else if (key == "lr0") cfg.lr0 = std::stod(value);
            else if (key == "total_iters") cfg.total_iters = std::stoll(value);
            else if (key == "batch_size") cfg.batch_size = std::stoi(value);
            else if (key == "beta1") cfg.adam.beta1 = std::stod(value);
            else if (key == "beta2") cfg.adam.beta2 = std::stod(value);
            else if (key == "eps") cfg.adam.eps = std::stod(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "checkpoint_every") cfg.checkpoint_every = std::stoll(value);
            else if (key == "sample_with_replacement") cfg.sample_with_replacement = (value == "true" || value == "1");
            else if (key == "dataset_path") cfg.dataset_path = value;
            else if (key == "out_dir") cfg.out_dir = value;
            else fail(Errc::parse, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail(Errc::parse, "line " + std::to_string(line_no) + ": bad value for " + key);
        }
    }
    if (cfg.lr0 <= 0 || cfg.total_iters < 1 || cfg.batch_size < 1)
        fail(Errc::precondition, "config: need lr0 > 0, total_iters >= 1, batch_size >= 1");
    return cfg;
}

std::string dump_train_config(const TrainConfig& cfg) {
    std::ostringstream out;
    out << "task = " << task_name(cfg.task) << '\n';
    out << "d = " << cfg.d << '\n';
    out << "lr0 = " << cfg.lr0 << '\n';
    out << "total_iters = " << cfg.total_iters << '\n';
    out << "batch_size = " << cfg.batch_size << '\n';
    out << "seed = " << cfg.seed << '\n';
    out << "checkpoint_every = " << cfg.checkpoint_every << '\n';
    out << "sample_with_replacement = " << (cfg.sample_with_replacement ? "true" : "false") << '\n';
    if (!cfg.dataset_path.empty()) out << "dataset_path = " << cfg.dataset_path << '\n';
    if (!cfg.out_dir.empty()) out << "out_dir = " << cfg.out_dir << '\n';
    return out.str();
}

namespace {

template <typename T>
double trajectory_loss(const ParamsT<T>& params, const Pto& pto) {
    if (pto.t_len() == 0) fail(Errc::degenerate_sample, "nap_loss: empty trajectory");
    const auto tr = forward<T>(params, pto.x);
    const auto& dm = params.dims;
    double sum = 0.0;
    for (std::int64_t t = 0; t < tr.len; ++t) {
        const auto sl = tr.s_at(t);
        const auto ml = tr.m_at(t);
        for (int j = 0; j < dm.n_sym; ++j) {
            const double r = static_cast<double>(sl[static_cast<std::size_t>(j)]) -
                             (j == pto.s[static_cast<std::size_t>(t)] ? 1.0 : 0.0);
            sum += r * r;
        }
        for (int j = 0; j < dm.n_mot; ++j) {
            const double r = static_cast<double>(ml[static_cast<std::size_t>(j)]) -
                             (j == pto.m[static_cast<std::size_t>(t)] ? 1.0 : 0.0);
            sum += r * r;
        }
    }
    return sum / (2.0 * static_cast<double>(tr.len));
}

}  // namespace

template <typename T>
double nap_loss(const ParamsT<T>& params, std::span<const Pto> batch) {
    if (batch.empty()) fail(Errc::precondition, "nap_loss: empty batch");
    double sum = 0.0;
    for (const auto& pto : batch) sum += trajectory_loss(params, pto);
    return sum / static_cast<double>(batch.size());
}

template double nap_loss<float>(const ParamsT<float>&, std::span<const Pto>);
template double nap_loss<double>(const ParamsT<double>&, std::span<const Pto>);

template <typename T>
GradResult<T> grad(const ParamsT<T>& params, std::span<const Pto> batch) {
    if (batch.empty()) fail(Errc::precondition, "grad: empty batch");
    const auto& dm = params.dims;
    const auto d = static_cast<std::size_t>(dm.d);
    GradResult<T> out;
    out.grads.resize(dm);
    const T inv_batch = T(1) / static_cast<T>(batch.size());
    double loss_sum = 0.0;

    std::vector<T> rs(static_cast<std::size_t>(dm.n_sym));
    std::vector<T> rm(static_cast<std::size_t>(dm.n_mot));
    std::vector<T> g(d), g_prev(d);

    for (const auto& pto : batch) {
        if (pto.t_len() == 0) fail(Errc::degenerate_sample, "grad: empty trajectory");
        const auto tr = forward<T>(params, pto.x);
        const T inv_t = T(1) / static_cast<T>(tr.len);
        const T scale = inv_batch * inv_t;
        double sample_sum = 0.0;

        std::fill(g.begin(), g.end(), T(0));  // g = dL/dh_{t+1}, zero at t = len-1
        for (std::int64_t t = tr.len - 1; t >= 0; --t) {
            const Sym x = pto.x[static_cast<std::size_t>(t)];
            const auto h = tr.h_at(t);
            const auto sl = tr.s_at(t);
            const auto ml = tr.m_at(t);
            for (int j = 0; j < dm.n_sym; ++j) {
                rs[static_cast<std::size_t>(j)] =
                    sl[static_cast<std::size_t>(j)] -
                    (j == pto.s[static_cast<std::size_t>(t)] ? T(1) : T(0));
                sample_sum += static_cast<double>(rs[static_cast<std::size_t>(j)]) *
                              static_cast<double>(rs[static_cast<std::size_t>(j)]);
            }
            for (int j = 0; j < dm.n_mot; ++j) {
                rm[static_cast<std::size_t>(j)] =
                    ml[static_cast<std::size_t>(j)] -
                    (j == pto.m[static_cast<std::size_t>(t)] ? T(1) : T(0));
                sample_sum += static_cast<double>(rm[static_cast<std::size_t>(j)]) *
                              static_cast<double>(rm[static_cast<std::size_t>(j)]);
            }

            // dA[x] += g_{t+1} ⊗ h_t (g already includes 1/T and 1/batch).
            T* da = out.grads.a.data() + static_cast<std::size_t>(x) * d * d;
            for (std::size_t i2 = 0; i2 < d; ++i2) {
                const T gi = g[i2];
                if (gi != T(0)) {
                    for (std::size_t i = 0; i < d; ++i) da[i2 * d + i] += gi * h[i];
                }
            }
            // dB[x] += rs ⊗ h / (T·batch); dC likewise.
            T* db = out.grads.b.data() +
                    static_cast<std::size_t>(x) * static_cast<std::size_t>(dm.n_sym) * d;
            for (int j = 0; j < dm.n_sym; ++j) {
                const T rj = rs[static_cast<std::size_t>(j)] * scale;
                for (std::size_t i = 0; i < d; ++i)
                    db[static_cast<std::size_t>(j) * d + i] += rj * h[i];
            }
            T* dc = out.grads.c.data() +
                    static_cast<std::size_t>(x) * static_cast<std::size_t>(dm.n_mot) * d;
            for (int j = 0; j < dm.n_mot; ++j) {
                const T rj = rm[static_cast<std::size_t>(j)] * scale;
                for (std::size_t i = 0; i < d; ++i)
                    dc[static_cast<std::size_t>(j) * d + i] += rj * h[i];
            }

            // g_t = A(x)ᵀ g_{t+1} + B(x)ᵀ rs/(T·batch) + C(x)ᵀ rm/(T·batch)
            const T* am = params.a_mat(x).data();
            const T* bm = params.b_mat(x).data();
            const T* cm = params.c_mat(x).data();
            for (std::size_t i = 0; i < d; ++i) {
                T acc{0};
                for (std::size_t i2 = 0; i2 < d; ++i2) acc += am[i2 * d + i] * g[i2];
                for (int j = 0; j < dm.n_sym; ++j)
                    acc += bm[static_cast<std::size_t>(j) * d + i] *
                           (rs[static_cast<std::size_t>(j)] * scale);
                for (int j = 0; j < dm.n_mot; ++j)
                    acc += cm[static_cast<std::size_t>(j) * d + i] *
                           (rm[static_cast<std::size_t>(j)] * scale);
                g_prev[i] = acc;
            }
            std::swap(g, g_prev);
        }
        for (std::size_t i = 0; i < d; ++i) out.grads.h0[i] += g[i];
        loss_sum += sample_sum / (2.0 * static_cast<double>(tr.len));
    }
    out.loss = loss_sum / static_cast<double>(batch.size());
    return out;
}

template GradResult<float> grad<float>(const ParamsT<float>&, std::span<const Pto>);
template GradResult<double> grad<double>(const ParamsT<double>&, std::span<const Pto>);

double cosine_lr(double lr0, std::int64_t t, std::int64_t total_iters) {
    if (t < 0 || t > total_iters) fail(Errc::precondition, "cosine_lr: t out of range");
    return lr0 * 0.5 *
           (1.0 + std::cos(M_PI * static_cast<double>(t) / static_cast<double>(total_iters)));
}

namespace {

void adam_update_tensor(std::vector<float>& theta, const std::vector<float>& g,
                        std::vector<float>& m, std::vector<float>& v, double lr, double bc1,
                        double bc2, const AdamConfig& cfg) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double gi = g[i];
        if (!std::isfinite(gi)) fail(Errc::non_finite, "adam_step: non-finite gradient");
        const double mi = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * gi;
        const double vi = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * gi * gi;
        m[i] = static_cast<float>(mi);
        v[i] = static_cast<float>(vi);
        const double mhat = mi / bc1;
        const double vhat = vi / bc2;
        theta[i] = static_cast<float>(theta[i] - lr * mhat / (std::sqrt(vhat) + cfg.eps));
    }
}

}  // namespace

void adam_step(DfstParams& params, const GradResult<float>& g, AdamState& state, double lr,
               const AdamConfig& cfg) {
    if (state.t == 0) {
        state.m.resize(params.dims);
        state.v.resize(params.dims);
    }
    ++state.t;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
    adam_update_tensor(params.a, g.grads.a, state.m.a, state.v.a, lr, bc1, bc2, cfg);
    adam_update_tensor(params.b, g.grads.b, state.m.b, state.v.b, lr, bc1, bc2, cfg);
    adam_update_tensor(params.c, g.grads.c, state.m.c, state.v.c, lr, bc1, bc2, cfg);
    adam_update_tensor(params.h0, g.grads.h0, state.m.h0, state.v.h0, lr, bc1, bc2, cfg);
}

std::string loss_log_csv(const std::vector<LossLogEntry>& log) {
    std::ostringstream out;
    out << "iter,loss,lr\n";
    out.precision(10);
    for (const auto& e : log) out << e.iter << ',' << e.loss << ',' << e.lr << '\n';
    return out.str();
}

TrainResult train_loop(const TrainConfig& cfg, const Dataset& dataset) {
    if (dataset.records.empty()) fail(Errc::precondition, "train_loop: empty dataset");
    if (dataset.task != cfg.task) fail(Errc::precondition, "train_loop: dataset task mismatch");
    const Alphabet al = task_alphabet(cfg.task);
    const DfstDims dims{cfg.resolved_d(), al.size(), kNumMotions};

    TrainResult result;
    result.params = init_identity(dims, cfg.seed);
    AdamState adam;
    Rng rng = Rng::salted(cfg.seed, 0x62617463686573ULL);
    result.log.reserve(static_cast<std::size_t>(cfg.total_iters));

    const auto n = dataset.records.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::size_t epoch_pos = n;  // triggers a shuffle on first use

    std::vector<Pto> batch;
    batch.reserve(static_cast<std::size_t>(cfg.batch_size));

    auto write_ckpt = [&](std::int64_t iter, double loss) {
        if (cfg.out_dir.empty()) return;
        Checkpoint ck;
        ck.params = result.params;
        ck.alphabet = al;
        ck.meta["task"] = task_name(cfg.task);
        ck.meta["iter"] = std::to_string(iter);
        ck.meta["seed"] = std::to_string(cfg.seed);
        std::ostringstream ls;
        ls.precision(10);
        ls << loss;
        ck.meta["loss"] = ls.str();
        char name[64];
        std::snprintf(name, sizeof(name), "ckpt_%09lld.dfst", static_cast<long long>(iter));
        const std::string path = cfg.out_dir + "/" + name;
        save_checkpoint(path, ck);
        result.checkpoints.emplace_back(iter, path);
    };

    double last_loss = 0.0;
    for (std::int64_t iter = 0; iter < cfg.total_iters; ++iter) {
        batch.clear();
        for (int k = 0; k < cfg.batch_size; ++k) {
            std::size_t idx;
            if (cfg.sample_with_replacement) {
                idx = static_cast<std::size_t>(rng.index(n));
            } else {
                if (epoch_pos >= n) {
                    for (std::size_t i = n; i > 1; --i)
                        std::swap(order[i - 1], order[static_cast<std::size_t>(rng.index(i))]);
                    epoch_pos = 0;
                }
                idx = order[epoch_pos++];
            }
            batch.push_back(dataset.records[idx]);
        }
        const double lr = cosine_lr(cfg.lr0, iter, cfg.total_iters);
        GradResult<float> g = grad<float>(result.params, batch);
        adam_step(result.params, g, adam, lr, cfg.adam);
        result.log.push_back({iter, g.loss, lr});
        last_loss = g.loss;
        if (cfg.checkpoint_every > 0 && (iter + 1) % cfg.checkpoint_every == 0 &&
            iter + 1 != cfg.total_iters) {
            write_ckpt(iter + 1, g.loss);
        }
    }
    write_ckpt(cfg.total_iters, last_loss);
    if (!cfg.out_dir.empty()) {
        write_file_atomic(cfg.out_dir + "/loss.csv", loss_log_csv(result.log));
        write_file_atomic(cfg.out_dir + "/config.txt", dump_train_config(cfg));
    }
    return result;
}

}  // namespace gridfst
