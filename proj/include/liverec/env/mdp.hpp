#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "liverec/core/types.hpp"
#include "liverec/env/population.hpp"
#include "liverec/env/session.hpp"

namespace liverec::env {

// Exposure-count states with total() <= horizon, indexed densely. Counts only
// grow and the session caps at `horizon` steps, so this truncation is exact:
// every reachable state is enumerated, states at the cap are terminal.
class TruncatedStateSpace {
public:
    TruncatedStateSpace(int n_types, int horizon, std::size_t max_states = 2'000'000)
        : n_types_(n_types), horizon_(horizon) {
        if (n_types < 1 || horizon < 0) throw std::invalid_argument("TruncatedStateSpace: bad shape");
        std::vector<int> counts(static_cast<std::size_t>(n_types), 0);
        enumerate(counts, 0, horizon, max_states);
    }

    int n_types() const noexcept { return n_types_; }
    int horizon() const noexcept { return horizon_; }
    std::size_t size() const noexcept { return states_.size(); }
    const core::ExposureState& state(std::size_t i) const { return states_[i]; }

    std::size_t index_of(const core::ExposureState& s) const {
        const auto it = index_.find(encode(s));
        if (it == index_.end()) throw std::out_of_range("TruncatedStateSpace: state outside truncation");
        return it->second;
    }

    bool contains(const core::ExposureState& s) const { return index_.contains(encode(s)); }

    std::uint64_t encode(const core::ExposureState& s) const {
        std::uint64_t key = 0;
        const auto base = static_cast<std::uint64_t>(horizon_ + 1);
        for (int c : s.counts) key = key * base + static_cast<std::uint64_t>(c);
        return key;
    }

private:
    void enumerate(std::vector<int>& counts, int type, int budget, std::size_t max_states) {
        if (type == n_types_) {
            if (states_.size() >= max_states)
                throw std::runtime_error("TruncatedStateSpace: enumeration limit exceeded");
            core::ExposureState s(counts);
            index_[encode(s)] = states_.size();
            states_.push_back(std::move(s));
            return;
        }
        for (int c = 0; c <= budget; ++c) {
            counts[static_cast<std::size_t>(type)] = c;
            enumerate(counts, type + 1, budget - c, max_states);
        }
        counts[static_cast<std::size_t>(type)] = 0;
    }

    int n_types_;
    int horizon_;
    std::vector<core::ExposureState> states_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

// Exact optimal Q for the truncated type-level decision process, by backward
// induction over the state DAG (states ordered by total count, which equals
// the number of steps already taken). Geometric departure enters as the
// constant continuation factor (1 - 1/patience) on the discounted tail.
struct GroundTruthQ {
    TruncatedStateSpace space;
    std::vector<std::vector<double>> q;  // [state][action]
    std::vector<double> v;               // [state], optimal value

    double q_at(const core::ExposureState& s, core::Action a) const {
        return q[space.index_of(s)][static_cast<std::size_t>(a.content_type_index)];
    }

    double v_at(const core::ExposureState& s) const { return v[space.index_of(s)]; }

    int greedy_action(const core::ExposureState& s) const {
        const auto& row = q[space.index_of(s)];
        int best = 0;
        for (int a = 1; a < static_cast<int>(row.size()); ++a)
            if (row[static_cast<std::size_t>(a)] > row[static_cast<std::size_t>(best)]) best = a;
        return best;
    }
};

inline GroundTruthQ ground_truth_q(const CustomerProfile& prof, double gamma, int horizon,
                                   std::size_t max_states = 2'000'000) {
    const int n = static_cast<int>(prof.base_utility.size());
    GroundTruthQ out{TruncatedStateSpace(n, horizon, max_states), {}, {}};
    const auto& space = out.space;
    out.q.assign(space.size(), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    out.v.assign(space.size(), 0.0);
    const double cont = prof.patience > 0.0 ? 1.0 - 1.0 / prof.patience : 1.0;

    // Sort indices by total count descending so successors are always ready.
    std::vector<std::size_t> order(space.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return space.state(a).total() > space.state(b).total();
    });

    for (std::size_t idx : order) {
        const auto& s = space.state(idx);
        if (s.total() >= horizon) continue;  // terminal: cap reached, all zeros
        double best = 0.0;
        for (int a = 0; a < n; ++a) {
            const auto next = core::increment_exposure(s, core::Action{a});
            const double tail = next.total() >= horizon ? 0.0 : out.v[space.index_of(next)];
            const double qa = click_probability(prof, s, core::Action{a}) + gamma * cont * tail;
            out.q[idx][static_cast<std::size_t>(a)] = qa;
            if (a == 0 || qa > best) best = qa;
        }
        out.v[idx] = best;
    }
    return out;
}

// --- slate-level policy evaluation --------------------------------------------
//
// In slate mode a round either ends the session (no click) or clicks exactly
// one item, so sum(counts) equals the round index and the same DAG induction
// applies. For a fixed slate policy pi:
//     qbar(s, i) = 1 + gamma * cont * v(s + e_type(i))
//     v(s)       = sum_{i in pi(s)} P(i | s, pi(s)) * qbar(s, i)
// with v = 0 at the cap. qbar is slate-independent; v is where pi enters.

using SlatePolicy = std::function<std::vector<core::ContentItem>(const core::ExposureState&)>;

class SlatePolicyDp {
public:
    SlatePolicyDp(const LiveRoom& room, const CustomerProfile& prof, SlatePolicy policy,
                  double gamma, int horizon, std::size_t max_states = 2'000'000)
        : space_(room.population().n_types, horizon, max_states), gamma_(gamma),
          horizon_(horizon) {
        cont_ = prof.patience > 0.0 ? 1.0 - 1.0 / prof.patience : 1.0;
        const auto model = room.true_choice_model(prof);
        v_.assign(space_.size(), 0.0);

        std::vector<std::size_t> order(space_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return space_.state(a).total() > space_.state(b).total();
        });

        for (std::size_t idx : order) {
            const auto& s = space_.state(idx);
            if (s.total() >= horizon) continue;
            const auto slate = policy(s);
            const auto probs = model.probabilities(s, slate);
            double val = 0.0;
            for (std::size_t i = 0; i < slate.size(); ++i) val += probs[i] * qbar(s, slate[i]);
            v_[idx] = val;
        }
    }

    double v(const core::ExposureState& s) const {
        return s.total() >= horizon_ ? 0.0 : v_[space_.index_of(s)];
    }

    double qbar(const core::ExposureState& s, const core::ContentItem& item) const {
        const auto next = core::increment_exposure(s, core::Action{item.content_type});
        const double tail = next.total() >= horizon_ ? 0.0 : v_[space_.index_of(next)];
        return 1.0 + gamma_ * cont_ * tail;
    }

private:
    TruncatedStateSpace space_;
    double gamma_;
    int horizon_;
    double cont_ = 1.0;
    std::vector<double> v_;
};

}  // namespace liverec::env
