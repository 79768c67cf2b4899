#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "liverec/core/kvfile.hpp"

namespace liverec::eval {

// One interaction round turned into a ranking problem: the model orders all
// actions, and the action the customer actually clicked (if any) is relevant.
struct RankedQuery {
    std::string id;
    std::vector<int> ranking;   // action indices, best first
    int relevant_action = -1;   // -1: the round produced no click

    // 1-based rank of the relevant action; 0 when absent.
    int relevant_rank() const {
        if (relevant_action < 0) return 0;
        for (std::size_t i = 0; i < ranking.size(); ++i)
            if (ranking[i] == relevant_action) return static_cast<int>(i) + 1;
        return 0;
    }
};

// Actions ordered by descending score; equal scores break toward the lower index.
inline std::vector<int> rank_actions(std::span<const double> scores) {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[static_cast<std::size_t>(a)] >
                                                scores[static_cast<std::size_t>(b)]; });
    return order;
}

inline double mrr(std::span<const RankedQuery> queries) {
    if (queries.empty()) throw std::invalid_argument("mrr: empty query list");
    double acc = 0.0;
    for (const auto& q : queries) {
        const int r = q.relevant_rank();
        if (r > 0) acc += 1.0 / static_cast<double>(r);
    }
    return acc / static_cast<double>(queries.size());
}

inline double hits_at_k(std::span<const RankedQuery> queries, int k) {
    if (k < 1) throw std::invalid_argument("hits_at_k: k must be >= 1");
    if (queries.empty()) throw std::invalid_argument("hits_at_k: empty query list");
    std::size_t hits = 0;
    for (const auto& q : queries) {
        const int r = q.relevant_rank();
        if (r > 0 && r <= k) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(queries.size());
}

// Fraction of sessions that closed at least one deal.
inline double conversion_rate(std::span<const bool> session_converted) {
    if (session_converted.empty()) throw std::invalid_argument("conversion_rate: no sessions");
    std::size_t n = 0;
    for (bool c : session_converted) n += c ? 1 : 0;
    return static_cast<double>(n) / static_cast<double>(session_converted.size());
}

// --- time split ----------------------------------------------------------------

template <typename Rec>
struct SplitResult {
    std::vector<Rec> train;
    std::vector<Rec> validation;
    bool split_outside_range = false;  // caller decides how loudly to warn
};

// Whole sessions stay together: a session lands on the side its first record
// falls on. Record types only need session_id and timestamp members.
template <typename Rec>
SplitResult<Rec> time_split(const std::vector<Rec>& records, std::int64_t split_timestamp) {
    SplitResult<Rec> out;
    if (records.empty()) {
        out.split_outside_range = true;
        return out;
    }
    std::unordered_map<std::uint64_t, std::int64_t> session_start;
    std::int64_t lo = records.front().timestamp, hi = records.front().timestamp;
    for (const auto& r : records) {
        lo = std::min(lo, r.timestamp);
        hi = std::max(hi, r.timestamp);
        const auto it = session_start.find(r.session_id);
        if (it == session_start.end() || r.timestamp < it->second)
            session_start[r.session_id] = r.timestamp;
    }
    out.split_outside_range = split_timestamp <= lo || split_timestamp > hi;
    for (const auto& r : records) {
        if (session_start.at(r.session_id) < split_timestamp)
            out.train.push_back(r);
        else
            out.validation.push_back(r);
    }
    return out;
}

// --- report --------------------------------------------------------------------

struct MetricsReport {
    std::string agent;
    std::string config_digest;
    std::uint64_t seed = 0;
    std::uint64_t query_count = 0;
    double mrr = 0.0;
    std::map<int, double> hits_at_k;  // ordered by K for stable serialization
    double conversion_rate = 0.0;

    std::string serialize() const {
        core::KvDoc doc;
        auto& meta = doc.add_section("meta");
        meta.entries = {{"schema", "liverec.metrics.v1"},
                        {"agent", agent},
                        {"config_digest", config_digest},
                        {"seed", std::to_string(seed)},
                        {"queries", std::to_string(query_count)}};
        auto& m = doc.add_section("metrics");
        m.entries.push_back({"mrr", core::format_double(mrr)});
        for (const auto& [k, v] : hits_at_k)
            m.entries.push_back({"hits@" + std::to_string(k), core::format_double(v)});
        m.entries.push_back({"conversion_rate", core::format_double(conversion_rate)});
        return doc.serialize();
    }

    static MetricsReport parse(std::string_view text) {
        const auto doc = core::KvDoc::parse(text);
        const auto* meta = doc.find("meta");
        const auto* m = doc.find("metrics");
        if (meta == nullptr || m == nullptr)
            throw std::invalid_argument("metrics report: missing sections");
        const auto* schema = meta->find("schema");
        if (schema == nullptr || *schema != "liverec.metrics.v1")
            throw std::invalid_argument("metrics report: unknown schema");
        MetricsReport rep;
        core::SectionReader meta_in(*meta);
        (void)meta_in.get("schema");
        rep.agent = meta_in.get_string("agent");
        rep.config_digest = meta_in.get_string("config_digest");
        rep.seed = meta_in.get_uint("seed");
        rep.query_count = meta_in.get_uint("queries");
        meta_in.finish();
        for (const auto& e : m->entries) {
            if (e.key == "mrr")
                rep.mrr = core::parse_double(e.value);
            else if (e.key == "conversion_rate")
                rep.conversion_rate = core::parse_double(e.value);
            else if (e.key.starts_with("hits@"))
                rep.hits_at_k[static_cast<int>(core::parse_int(e.key.substr(5)))] =
                    core::parse_double(e.value);
            else
                throw std::invalid_argument("metrics report: unknown metric '" + e.key + "'");
        }
        return rep;
    }
};

}  // namespace liverec::eval
