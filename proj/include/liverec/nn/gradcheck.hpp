#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace liverec::nn {

// Central finite differences over a scalar loss. The probe never touches the
// backprop path, so it serves as the independent check of analytic gradients.
inline std::vector<double> numeric_gradient(const std::function<double()>& loss,
                                            const std::vector<double*>& params,
                                            double step = 1e-5) {
    std::vector<double> grad(params.size(), 0.0);
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = *params[i];
        *params[i] = saved + step;
        const double up = loss();
        *params[i] = saved - step;
        const double down = loss();
        *params[i] = saved;
        grad[i] = (up - down) / (2.0 * step);
    }
    return grad;
}

struct GradCheckResult {
    double max_rel_error = 0.0;
    std::size_t worst_index = 0;
    std::size_t compared = 0;  // elements above the both-tiny floor
};

// Elementwise relative error, skipping elements where both magnitudes fall
// under `tiny` (noise-dominated entries carry no signal about correctness).
inline GradCheckResult compare_gradients(const std::vector<double>& analytic,
                                         const std::vector<double>& numeric,
                                         double tiny = 1e-8) {
    GradCheckResult r;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double a = analytic[i];
        const double n = numeric[i];
        if (std::abs(a) < tiny && std::abs(n) < tiny) continue;
        ++r.compared;
        const double rel = std::abs(a - n) / std::max(std::abs(a), std::abs(n));
        if (rel > r.max_rel_error) {
            r.max_rel_error = rel;
            r.worst_index = i;
        }
    }
    return r;
}

}  // namespace liverec::nn
