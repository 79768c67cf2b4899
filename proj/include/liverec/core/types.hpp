#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace liverec::core {

// One of the discrete content categories the agent decides between.
// Indices are dense in [0, n_types).
struct ContentType {
    int index = 0;
    std::string name;
};

struct ContentItem {
    std::string content_id;
    int content_type = 0;
    std::optional<std::string> content_tab;  // only some items carry a tab label
};

// Who is being served: the customer and the store whose room they entered.
struct Context {
    std::string user_id;
    std::string store_id;
};

// Per-content-type exposure counts for the current session; the decision state.
struct ExposureState {
    std::vector<int> counts;

    ExposureState() = default;
    explicit ExposureState(std::vector<int> c) : counts(std::move(c)) {}

    static ExposureState zeros(int n_types) {
        return ExposureState(std::vector<int>(static_cast<std::size_t>(n_types), 0));
    }

    int n_types() const noexcept { return static_cast<int>(counts.size()); }

    int total() const noexcept {
        int s = 0;
        for (int c : counts) s += c;
        return s;
    }

    bool operator==(const ExposureState&) const = default;
};

struct Action {
    int content_type_index = 0;

    bool operator==(const Action&) const = default;
};

// One interaction round: the unit of learning and logging.
struct Transition {
    Context context;
    ExposureState state;
    Action action;
    double reward = 0.0;  // in {0.0, 1.0}
    ExposureState next_state;
    bool done = false;
    std::int64_t timestamp = 0;  // monotone step counter, not wall clock
};

// Returns a copy of `state` with the acted-on type's count raised by one.
// The input is left untouched.
inline ExposureState increment_exposure(const ExposureState& state, Action action) {
    const int a = action.content_type_index;
    if (a < 0 || a >= state.n_types())
        throw std::out_of_range("increment_exposure: action index " + std::to_string(a) +
                                " out of range [0, " + std::to_string(state.n_types()) + ")");
    ExposureState next = state;
    ++next.counts[static_cast<std::size_t>(a)];
    return next;
}

// Checks the structural contract every environment transition must satisfy:
// next state differs from state by exactly +1 at the acted index, reward is 0/1.
inline bool transition_valid(const Transition& t) {
    if (t.reward != 0.0 && t.reward != 1.0) return false;
    if (t.state.n_types() != t.next_state.n_types()) return false;
    const int a = t.action.content_type_index;
    if (a < 0 || a >= t.state.n_types()) return false;
    for (int i = 0; i < t.state.n_types(); ++i) {
        const int want = t.state.counts[static_cast<std::size_t>(i)] + (i == a ? 1 : 0);
        if (t.next_state.counts[static_cast<std::size_t>(i)] != want) return false;
    }
    return true;
}

}  // namespace liverec::core
