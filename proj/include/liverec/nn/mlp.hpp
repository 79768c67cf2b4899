#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "liverec/core/rng.hpp"

namespace liverec::nn {

enum class OutputHead {
    Identity,    // raw affine outputs (Q-values, regression)
    LogSoftmax,  // log-probabilities (policies)
};

// Per-layer gradient container mirroring MlpModel's parameter shapes.
struct MlpGradients {
    std::vector<std::vector<double>> dw;  // [layer] row-major (out x in)
    std::vector<std::vector<double>> db;  // [layer]

    void scale(double s) {
        for (auto& m : dw)
            for (double& v : m) v *= s;
        for (auto& b : db)
            for (double& v : b) v *= s;
    }

    void accumulate(const MlpGradients& other) {
        for (std::size_t l = 0; l < dw.size(); ++l) {
            for (std::size_t i = 0; i < dw[l].size(); ++i) dw[l][i] += other.dw[l][i];
            for (std::size_t i = 0; i < db[l].size(); ++i) db[l][i] += other.db[l][i];
        }
    }
};

// Fully-connected network with rectifier hidden layers, fixed graph, and
// analytic backprop. Value type: copying a model snapshots its parameters.
class MlpModel {
public:
    MlpModel() = default;

    MlpModel(std::vector<int> layer_sizes, OutputHead head, core::Rng& rng)
        : sizes_(std::move(layer_sizes)), head_(head) {
        if (sizes_.size() < 2) throw std::invalid_argument("MlpModel: need input and output layer");
        for (int s : sizes_)
            if (s < 1) throw std::invalid_argument("MlpModel: layer sizes must be positive");
        weights_.resize(n_layers());
        biases_.resize(n_layers());
        for (std::size_t l = 0; l < n_layers(); ++l) {
            const int fan_in = sizes_[l];
            const int fan_out = sizes_[l + 1];
            // He initialization, matched to the rectifier hidden units.
            const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
            weights_[l].resize(static_cast<std::size_t>(fan_in) * fan_out);
            for (double& w : weights_[l]) w = rng.normal(0.0, scale);
            biases_[l].assign(static_cast<std::size_t>(fan_out), 0.0);
        }
    }

    const std::vector<int>& layer_sizes() const noexcept { return sizes_; }
    OutputHead head() const noexcept { return head_; }
    int input_size() const noexcept { return sizes_.front(); }
    int output_size() const noexcept { return sizes_.back(); }
    std::size_t n_layers() const noexcept { return sizes_.size() - 1; }

    std::vector<std::vector<double>>& weights() noexcept { return weights_; }
    std::vector<std::vector<double>>& biases() noexcept { return biases_; }
    const std::vector<std::vector<double>>& weights() const noexcept { return weights_; }
    const std::vector<std::vector<double>>& biases() const noexcept { return biases_; }

    std::size_t parameter_count() const noexcept {
        std::size_t n = 0;
        for (std::size_t l = 0; l < n_layers(); ++l) n += weights_[l].size() + biases_[l].size();
        return n;
    }

    // Flat view over every parameter, in a fixed order. Used by the optimizer,
    // checkpointing, and finite-difference probes.
    std::vector<double*> parameter_pointers() {
        std::vector<double*> out;
        out.reserve(parameter_count());
        for (std::size_t l = 0; l < n_layers(); ++l) {
            for (double& w : weights_[l]) out.push_back(&w);
            for (double& b : biases_[l]) out.push_back(&b);
        }
        return out;
    }

    std::vector<double> parameters_flat() const {
        std::vector<double> out;
        out.reserve(parameter_count());
        for (std::size_t l = 0; l < n_layers(); ++l) {
            out.insert(out.end(), weights_[l].begin(), weights_[l].end());
            out.insert(out.end(), biases_[l].begin(), biases_[l].end());
        }
        return out;
    }

    MlpGradients zero_gradients() const {
        MlpGradients g;
        g.dw.resize(n_layers());
        g.db.resize(n_layers());
        for (std::size_t l = 0; l < n_layers(); ++l) {
            g.dw[l].assign(weights_[l].size(), 0.0);
            g.db[l].assign(biases_[l].size(), 0.0);
        }
        return g;
    }

    // Activations recorded by forward_cached, consumed by backward.
    struct Cache {
        std::vector<std::vector<double>> post;  // post[0] = input, post[l+1] = layer l output
        std::vector<double> log_probs;          // populated for the LogSoftmax head
    };

    std::vector<double> forward(std::span<const double> input) const {
        Cache cache;
        return forward_cached(input, cache);
    }

    std::vector<double> forward_cached(std::span<const double> input, Cache& cache) const {
        if (static_cast<int>(input.size()) != input_size())
            throw std::invalid_argument("MlpModel::forward: input size " +
                                        std::to_string(input.size()) + ", expected " +
                                        std::to_string(input_size()));
        cache.post.assign(1, std::vector<double>(input.begin(), input.end()));
        cache.post.reserve(n_layers() + 1);
        for (std::size_t l = 0; l < n_layers(); ++l) {
            const auto& x = cache.post.back();
            const int in = sizes_[l];
            const int out = sizes_[l + 1];
            std::vector<double> y(static_cast<std::size_t>(out));
            for (int o = 0; o < out; ++o) {
                double acc = biases_[l][static_cast<std::size_t>(o)];
                const double* wrow = weights_[l].data() + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) acc += wrow[i] * x[static_cast<std::size_t>(i)];
                y[static_cast<std::size_t>(o)] = acc;
            }
            if (l + 1 < n_layers())
                for (double& v : y) v = v > 0.0 ? v : 0.0;  // rectifier on hidden layers
            cache.post.push_back(std::move(y));
        }
        if (head_ == OutputHead::LogSoftmax) {
            cache.log_probs = log_softmax(cache.post.back());
            return cache.log_probs;
        }
        return cache.post.back();
    }

    // Backprop for the cached forward pass. `upstream` is dLoss/dOutput where
    // "output" is what forward returned (log-probabilities for the LogSoftmax
    // head). Returns parameter gradients; `input_grad`, when given, receives
    // dLoss/dInput (needed where embeddings feed the network).
    MlpGradients backward(const Cache& cache, std::span<const double> upstream,
                          std::vector<double>* input_grad = nullptr) const {
        if (static_cast<int>(upstream.size()) != output_size())
            throw std::invalid_argument("MlpModel::backward: upstream size mismatch");
        MlpGradients grads = zero_gradients();
        std::vector<double> delta(upstream.begin(), upstream.end());
        if (head_ == OutputHead::LogSoftmax) {
            // d log_softmax: dL/dz_a = g_a - p_a * sum_b g_b
            double gsum = 0.0;
            for (double g : delta) gsum += g;
            for (int a = 0; a < output_size(); ++a) {
                const double p = std::exp(cache.log_probs[static_cast<std::size_t>(a)]);
                delta[static_cast<std::size_t>(a)] -= p * gsum;
            }
        }
        for (std::size_t li = n_layers(); li-- > 0;) {
            const int in = sizes_[li];
            const int out = sizes_[li + 1];
            const auto& x = cache.post[li];
            for (int o = 0; o < out; ++o) {
                const double d = delta[static_cast<std::size_t>(o)];
                grads.db[li][static_cast<std::size_t>(o)] += d;
                double* gw = grads.dw[li].data() + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) gw[i] += d * x[static_cast<std::size_t>(i)];
            }
            if (li == 0 && input_grad == nullptr) break;
            std::vector<double> prev(static_cast<std::size_t>(in), 0.0);
            for (int o = 0; o < out; ++o) {
                const double d = delta[static_cast<std::size_t>(o)];
                const double* wrow = weights_[li].data() + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) prev[static_cast<std::size_t>(i)] += d * wrow[i];
            }
            if (li > 0) {
                // Rectifier gate: the layer below emitted max(z, 0).
                const auto& act = cache.post[li];
                for (int i = 0; i < in; ++i)
                    if (act[static_cast<std::size_t>(i)] <= 0.0) prev[static_cast<std::size_t>(i)] = 0.0;
            }
            if (li == 0) {
                *input_grad = std::move(prev);
                break;
            }
            delta = std::move(prev);
        }
        return grads;
    }

    static std::vector<double> log_softmax(const std::vector<double>& logits) {
        double m = logits[0];
        for (double v : logits) m = std::max(m, v);
        double sum = 0.0;
        for (double v : logits) sum += std::exp(v - m);
        const double lse = m + std::log(sum);
        std::vector<double> out(logits.size());
        for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
        return out;
    }

    bool operator==(const MlpModel& other) const = default;

private:
    std::vector<int> sizes_;
    OutputHead head_ = OutputHead::Identity;
    std::vector<std::vector<double>> weights_;
    std::vector<std::vector<double>> biases_;
};

inline std::vector<double> probs_from_log(const std::vector<double>& log_probs) {
    std::vector<double> p(log_probs.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_probs[i]);
    return p;
}

inline double entropy_from_log(const std::vector<double>& log_probs) {
    double h = 0.0;
    for (double lp : log_probs) h -= std::exp(lp) * lp;
    return h;
}

}  // namespace liverec::nn
