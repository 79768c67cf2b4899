#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "liverec/core/config.hpp"
#include "liverec/core/rng.hpp"
#include "liverec/core/types.hpp"
#include "liverec/env/choice.hpp"
#include "liverec/env/population.hpp"

namespace liverec::env {

inline std::string user_id_for(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "u%04d", index);
    return buf;
}

inline std::string store_id_for(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "s%02d", index);
    return buf;
}

inline int parse_entity_index(const std::string& id) {
    if (id.size() < 2) throw std::invalid_argument("bad entity id: " + id);
    return static_cast<int>(core::parse_int(std::string_view(id).substr(1)));
}

// One open customer visit. Agents may read session_id, context and state; the
// profile is ground truth reserved for the environment and test oracles.
struct SessionHandle {
    std::uint64_t session_id = 0;
    core::Context context;
    CustomerProfile profile;
    core::ExposureState state;
    int steps = 0;
    bool alive = true;
    core::Rng rng{0};
    int user_index = 0;
    int store_index = 0;
};

struct StepResult {
    core::Transition transition;
    bool deal = false;
};

struct SlateStepResult {
    core::ExposureState state;
    std::optional<std::size_t> chosen;  // index into the slate; nullopt = no click
    double reward = 0.0;
    bool deal = false;
    core::ExposureState next_state;
    bool done = false;
};

// Simulated virtual live-broadcast room.
//
// Stands in for the proprietary interaction logs: hidden per-customer
// preference profiles drive Bernoulli clicks whose propensity decays with
// repeated exposure of the same content type, so the decision problem is
// genuinely sequential. Sessions end by a step cap or geometric departure.
//
// Determinism contract: each session draws from its own stream, keyed by
// (master seed, session_id). Interleaving sessions in any order, or advancing
// them from different threads, cannot change any outcome.
class LiveRoom {
public:
    LiveRoom(PopulationParams pop, std::uint64_t master_seed, int session_cap,
             int catalog_size = 0, double item_bias_std = 0.0)
        : pop_(std::move(pop)), master_(master_seed), session_cap_(session_cap) {
        if (session_cap_ < 1) throw std::invalid_argument("LiveRoom: session_cap must be >= 1");
        core::Rng crng = core::Rng(master_).derive("catalog");
        catalog_.reserve(static_cast<std::size_t>(catalog_size));
        for (int i = 0; i < catalog_size; ++i) {
            core::ContentItem item;
            char buf[16];
            std::snprintf(buf, sizeof(buf), "c%04d", i);
            item.content_id = buf;
            item.content_type = i % pop_.n_types;
            if (i % 3 != 2) item.content_tab = "tab" + std::to_string(item.content_type);
            item_bias_[item.content_id] = item_bias_std > 0.0 ? crng.normal(0.0, item_bias_std) : 0.0;
            catalog_.push_back(std::move(item));
        }
    }

    static LiveRoom from_config(const core::ExperimentConfig& cfg, std::uint64_t seed) {
        return LiveRoom(PopulationParams::from_config(cfg), seed, cfg.run.session_cap,
                        cfg.env.catalog_size, cfg.env.item_bias_std);
    }

    const PopulationParams& population() const noexcept { return pop_; }
    int session_cap() const noexcept { return session_cap_; }
    std::uint64_t master_seed() const noexcept { return master_; }
    const std::vector<core::ContentItem>& catalog() const noexcept { return catalog_; }

    SessionHandle open_session(std::uint64_t session_id) const {
        SessionHandle s;
        s.session_id = session_id;
        s.rng = core::Rng(master_).derive("session").derive(session_id);
        s.user_index = static_cast<int>(s.rng.uniform_int(static_cast<std::uint64_t>(pop_.user_pool)));
        s.store_index = static_cast<int>(s.rng.uniform_int(static_cast<std::uint64_t>(pop_.store_pool)));
        s.context = {user_id_for(s.user_index), store_id_for(s.store_index)};
        s.profile = profile_for_user(pop_, master_, s.user_index);
        s.state = core::ExposureState::zeros(pop_.n_types);
        return s;
    }

    // Opens a session at an arbitrary exposure state. Test/oracle hook for
    // exploring-starts training; the regular entry point always starts at zero.
    SessionHandle open_session_at(std::uint64_t session_id, core::ExposureState start) const {
        SessionHandle s = open_session(session_id);
        if (start.n_types() != pop_.n_types)
            throw std::invalid_argument("open_session_at: state width mismatch");
        s.steps = start.total();
        if (s.steps >= session_cap_) throw std::invalid_argument("open_session_at: state beyond cap");
        s.state = std::move(start);
        return s;
    }

    double p_click(const CustomerProfile& prof, const core::ExposureState& state,
                   core::Action action) const {
        return click_probability(prof, state, action);
    }

    StepResult step(SessionHandle& session, core::Action action) const {
        if (!session.alive) throw std::runtime_error("LiveRoom::step: session is not alive");
        const double p = p_click(session.profile, session.state, action);
        const bool clicked = session.rng.bernoulli(p);
        const bool deal = clicked && session.rng.bernoulli(pop_.deal_given_click);
        core::Transition t;
        t.context = session.context;
        t.state = session.state;
        t.action = action;
        t.reward = clicked ? 1.0 : 0.0;
        t.next_state = core::increment_exposure(session.state, action);
        t.timestamp = session.steps;  // session-local; the harness assigns global time
        ++session.steps;
        bool done = session.steps >= session_cap_;
        if (!done && session.profile.patience > 0.0)
            done = session.rng.bernoulli(1.0 / session.profile.patience);
        t.done = done;
        session.state = t.next_state;
        session.alive = !done;
        return {std::move(t), deal};
    }

    double item_utility(const CustomerProfile& prof, const core::ExposureState& state,
                        const core::ContentItem& item) const {
        const auto ty = static_cast<std::size_t>(item.content_type);
        if (item.content_type < 0 || ty >= prof.base_utility.size())
            throw std::out_of_range("item_utility: content_type out of range");
        return prof.base_utility[ty] + item_bias(item) - prof.satiation_rate * state.counts[ty];
    }

    double item_bias(const core::ContentItem& item) const {
        const auto it = item_bias_.find(item.content_id);
        return it == item_bias_.end() ? 0.0 : it->second;
    }

    // The ground-truth choice model for one customer. Holds a reference to the
    // room; oracle tests pass it to the SlateQ planner directly.
    SlateChoiceModel true_choice_model(const CustomerProfile& prof) const {
        SlateChoiceModel m;
        m.null_utility = prof.null_utility;
        m.utility = [this, prof](const core::ExposureState& s, const core::ContentItem& item) {
            return item_utility(prof, s, item);
        };
        return m;
    }

    // Slate interaction round. The customer picks one item (or nothing) by
    // multinomial logit over hidden utilities. A click earns reward 1 and
    // raises the chosen item's type count; no click ends the visit, so an
    // unclicked slate carries no future value.
    SlateStepResult step_slate(SessionHandle& session,
                               const std::vector<core::ContentItem>& slate) const {
        if (!session.alive) throw std::runtime_error("LiveRoom::step_slate: session is not alive");
        const auto model = true_choice_model(session.profile);
        const auto chosen = model.sample(session.state, slate, session.rng);
        SlateStepResult r;
        r.state = session.state;
        r.chosen = chosen;
        ++session.steps;
        if (chosen.has_value()) {
            r.reward = 1.0;
            r.deal = session.rng.bernoulli(pop_.deal_given_click);
            r.next_state = core::increment_exposure(
                session.state, core::Action{slate[*chosen].content_type});
            bool done = session.steps >= session_cap_;
            if (!done && session.profile.patience > 0.0)
                done = session.rng.bernoulli(1.0 / session.profile.patience);
            r.done = done;
        } else {
            r.reward = 0.0;
            r.next_state = session.state;
            r.done = true;
        }
        session.state = r.next_state;
        session.alive = !r.done;
        return r;
    }

private:
    PopulationParams pop_;
    std::uint64_t master_;
    int session_cap_;
    std::vector<core::ContentItem> catalog_;
    std::unordered_map<std::string, double> item_bias_;
};

}  // namespace liverec::env
