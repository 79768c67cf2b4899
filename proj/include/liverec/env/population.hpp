#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "liverec/core/config.hpp"
#include "liverec/core/rng.hpp"
#include "liverec/core/types.hpp"
#include "liverec/env/choice.hpp"

namespace liverec::env {

// Latent ground truth for one simulated customer. Hidden from agents; only the
// environment and test oracles may read it.
struct CustomerProfile {
    std::vector<double> base_utility;  // per content type
    double satiation_rate = 0.0;       // utility lost per prior exposure of a type
    double patience = 0.0;             // expected session length; 0 = never departs randomly
    double null_utility = 0.0;
};

struct PopulationParams {
    int n_types = 8;
    std::vector<double> base_utility_mean;  // length n_types
    double base_utility_std = 1.5;
    double satiation_mean = 0.6;
    double satiation_std = 0.2;
    double patience = 10.0;
    double null_utility = 0.5;
    double deal_given_click = 0.3;
    int user_pool = 64;
    int store_pool = 4;

    static PopulationParams from_config(const core::ExperimentConfig& cfg) {
        PopulationParams p;
        p.n_types = cfg.run.n_types;
        p.base_utility_mean = cfg.base_utility_mean_vec();
        p.base_utility_std = cfg.env.base_utility_std;
        p.satiation_mean = cfg.env.satiation_mean;
        p.satiation_std = cfg.env.satiation_std;
        p.patience = cfg.env.patience;
        p.null_utility = cfg.env.null_utility;
        p.deal_given_click = cfg.env.deal_given_click;
        p.user_pool = cfg.env.user_pool;
        p.store_pool = cfg.env.store_pool;
        return p;
    }
};

inline CustomerProfile sample_profile(const PopulationParams& pop, core::Rng& rng) {
    CustomerProfile prof;
    prof.base_utility.resize(static_cast<std::size_t>(pop.n_types));
    for (int i = 0; i < pop.n_types; ++i)
        prof.base_utility[static_cast<std::size_t>(i)] =
            rng.normal(pop.base_utility_mean[static_cast<std::size_t>(i)], pop.base_utility_std);
    prof.satiation_rate = std::max(0.0, rng.normal(pop.satiation_mean, pop.satiation_std));
    prof.patience = pop.patience;
    prof.null_utility = pop.null_utility;
    return prof;
}

// Every session of the same user sees the same profile: the profile stream is
// keyed by (master seed, user index), independent of session order.
inline CustomerProfile profile_for_user(const PopulationParams& pop, std::uint64_t master_seed,
                                        int user_index) {
    core::Rng rng = core::Rng(master_seed).derive("profile").derive(static_cast<std::uint64_t>(user_index));
    return sample_profile(pop, rng);
}

// Click propensity for type-level actions: preference minus accumulated
// satiation, squashed against the null alternative.
inline double click_probability(const CustomerProfile& prof, const core::ExposureState& state,
                                core::Action action) {
    const auto a = static_cast<std::size_t>(action.content_type_index);
    if (action.content_type_index < 0 || a >= prof.base_utility.size())
        throw std::out_of_range("click_probability: action index out of range");
    return logistic(prof.base_utility[a] - prof.satiation_rate * state.counts[a] -
                    prof.null_utility);
}

}  // namespace liverec::env
