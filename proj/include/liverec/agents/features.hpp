#pragma once

#include <string>
#include <vector>

#include "liverec/core/config.hpp"
#include "liverec/core/rng.hpp"
#include "liverec/core/types.hpp"

namespace liverec::agents {

// Dense state+context features for the network agents: exposure counts scaled
// into [0, 1], then hashed one-hots for the user and store ids. Hashing keeps
// the input width fixed no matter how many ids the catalog grows.
class Featurizer {
public:
    Featurizer(int n_types, int user_buckets, int store_buckets, int count_cap)
        : n_types_(n_types), user_buckets_(user_buckets), store_buckets_(store_buckets),
          count_scale_(1.0 / (1.0 + static_cast<double>(count_cap))) {}

    static Featurizer from_config(const core::ExperimentConfig& cfg) {
        return Featurizer(cfg.run.n_types, cfg.run.user_buckets, cfg.run.store_buckets,
                          cfg.run.session_cap);
    }

    int dim() const noexcept { return n_types_ + user_buckets_ + store_buckets_; }
    int n_types() const noexcept { return n_types_; }

    std::vector<double> operator()(const core::Context& ctx,
                                   const core::ExposureState& state) const {
        std::vector<double> out(static_cast<std::size_t>(dim()), 0.0);
        for (int i = 0; i < n_types_; ++i)
            out[static_cast<std::size_t>(i)] = state.counts[static_cast<std::size_t>(i)] * count_scale_;
        out[static_cast<std::size_t>(n_types_ + user_bucket(ctx.user_id))] = 1.0;
        out[static_cast<std::size_t>(n_types_ + user_buckets_ + store_bucket(ctx.store_id))] = 1.0;
        return out;
    }

    int user_bucket(const std::string& id) const {
        return static_cast<int>(core::fnv1a64(id) % static_cast<std::uint64_t>(user_buckets_));
    }

    int store_bucket(const std::string& id) const {
        return static_cast<int>(core::fnv1a64(id) % static_cast<std::uint64_t>(store_buckets_));
    }

private:
    int n_types_;
    int user_buckets_;
    int store_buckets_;
    double count_scale_;
};

}  // namespace liverec::agents
