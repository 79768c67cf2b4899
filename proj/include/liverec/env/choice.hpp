#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "liverec/core/rng.hpp"
#include "liverec/core/types.hpp"

namespace liverec::env {

// Multinomial-logit slate choice with a no-click option.
//
// Given slate A and state s, the customer picks item i with probability
//     P(i | s, A) = exp(u(s, i)) / (exp(u0) + sum_{j in A} exp(u(s, j)))
// and clicks nothing with the complementary probability. Utilities of -inf are
// allowed and contribute zero weight.
struct SlateChoiceModel {
    std::function<double(const core::ExposureState&, const core::ContentItem&)> utility;
    double null_utility = 0.0;

    // Probabilities over the slate; the final entry is the null option.
    std::vector<double> probabilities(const core::ExposureState& state,
                                      const std::vector<core::ContentItem>& slate) const {
        if (slate.empty()) throw std::invalid_argument("SlateChoiceModel: empty slate");
        std::unordered_set<std::string> seen;
        for (const auto& item : slate)
            if (!seen.insert(item.content_id).second)
                throw std::invalid_argument("SlateChoiceModel: duplicate item '" + item.content_id +
                                            "' in slate");
        std::vector<double> u(slate.size() + 1);
        for (std::size_t i = 0; i < slate.size(); ++i) u[i] = utility(state, slate[i]);
        u.back() = null_utility;
        double m = u[0];
        for (double v : u) m = std::max(m, v);
        if (!std::isfinite(m)) m = 0.0;  // every option at -inf degenerates to "all null"
        std::vector<double> p(u.size());
        double z = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            p[i] = std::exp(u[i] - m);
            z += p[i];
        }
        if (z <= 0.0) {
            // no finite utility anywhere: the customer walks away
            for (auto& v : p) v = 0.0;
            p.back() = 1.0;
            return p;
        }
        for (auto& v : p) v /= z;
        return p;
    }

    // Index into the slate, or nullopt for no click.
    std::optional<std::size_t> sample(const core::ExposureState& state,
                                      const std::vector<core::ContentItem>& slate,
                                      core::Rng& rng) const {
        const auto p = probabilities(state, slate);
        double x = rng.uniform();
        for (std::size_t i = 0; i < slate.size(); ++i) {
            x -= p[i];
            if (x < 0.0) return i;
        }
        return std::nullopt;
    }
};

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace liverec::env
