#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "liverec/nn/mlp.hpp"

namespace liverec::nn {

// Adaptive-moment estimation with bias correction.
class AdamState {
public:
    AdamState() = default;

    explicit AdamState(std::size_t n_params, double lr, double beta1 = 0.9, double beta2 = 0.999,
                       double epsilon = 1e-8)
        : lr_(lr), beta1_(beta1), beta2_(beta2), epsilon_(epsilon),
          m_(n_params, 0.0), v_(n_params, 0.0) {}

    double learning_rate() const noexcept { return lr_; }
    std::int64_t step_count() const noexcept { return t_; }
    std::size_t size() const noexcept { return m_.size(); }
    std::vector<double>& first_moments() noexcept { return m_; }
    std::vector<double>& second_moments() noexcept { return v_; }
    void set_step_count(std::int64_t t) { t_ = t; }

    // One update over a flat parameter view. Gradients must be finite.
    void step(const std::vector<double*>& params, const std::vector<double>& grads) {
        if (params.size() != m_.size() || grads.size() != m_.size())
            throw std::invalid_argument("AdamState::step: size mismatch");
        for (double g : grads)
            if (!std::isfinite(g)) throw std::runtime_error("AdamState::step: non-finite gradient");
        ++t_;
        const double bc1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
        const double bc2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
        for (std::size_t i = 0; i < m_.size(); ++i) {
            m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grads[i];
            v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grads[i] * grads[i];
            const double mhat = m_[i] / bc1;
            const double vhat = v_[i] / bc2;
            *params[i] -= lr_ * mhat / (std::sqrt(vhat) + epsilon_);
        }
    }

private:
    double lr_ = 1e-3;
    double beta1_ = 0.9;
    double beta2_ = 0.999;
    double epsilon_ = 1e-8;
    std::int64_t t_ = 0;
    std::vector<double> m_;
    std::vector<double> v_;
};

inline std::vector<double> flatten_gradients(const MlpGradients& g) {
    std::vector<double> out;
    for (std::size_t l = 0; l < g.dw.size(); ++l) {
        out.insert(out.end(), g.dw[l].begin(), g.dw[l].end());
        out.insert(out.end(), g.db[l].begin(), g.db[l].end());
    }
    return out;
}

// Convenience wrapper for the common "model + its optimizer" pairing.
inline void adam_step(MlpModel& model, const MlpGradients& grads, AdamState& state) {
    auto params = model.parameter_pointers();
    state.step(params, flatten_gradients(grads));
}

}  // namespace liverec::nn
