#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "liverec/core/kvfile.hpp"
#include "liverec/core/rng.hpp"

namespace liverec::core {

struct RunConfig {
    int n_types = 8;
    std::uint64_t seed = 1;
    int session_cap = 16;            // hard stop on rounds per session
    std::int64_t split_timestamp = -1;  // explicit train/validation boundary; -1 = use split_fraction
    double split_fraction = 0.5;
    int user_buckets = 32;           // hashed one-hot sizes for model features
    int store_buckets = 8;
};

struct EnvConfig {
    int user_pool = 64;
    int store_pool = 4;
    std::vector<double> base_utility_mean{0.0};  // scalar broadcasts over types
    double base_utility_std = 1.5;
    double satiation_mean = 0.6;
    double satiation_std = 0.2;
    double patience = 10.0;          // expected session length; 0 disables random departure
    double null_utility = 0.5;
    double deal_given_click = 0.3;
    int catalog_size = 24;           // slate-mode item catalog
    double item_bias_std = 0.3;
};

struct SacConfig {
    double gamma = 0.9;
    double alpha = 0.1;
    double lr_policy = 3e-4;
    double lr_critic = 1e-3;
    double tau = 0.01;
    int batch_size = 64;
    int replay_capacity = 100000;
    std::vector<int> hidden{64, 64};
    int warmup_rounds = 10;
    int updates_per_round = 1;
};

struct SarsaConfig {
    double gamma = 0.9;
    double lr = 0.1;
    std::string lr_schedule = "constant";  // constant | harmonic (per state-action visit)
    double epsilon = 0.1;
    std::int64_t epsilon_decay_episodes = 0;  // 0 = constant epsilon
    int count_cap = 5;               // state discretization clamp
};

struct SlateqConfig {
    double gamma = 0.9;
    double lr = 0.05;
    int slate_size = 3;
    double epsilon = 0.1;
    std::string planner = "greedy";  // greedy | exhaustive
    int count_cap = 5;
    int refit_interval = 200;        // rounds between choice-model refits; 0 = fit once
};

struct DfmConfig {
    int factors = 8;
    std::vector<int> hidden{32, 32};
    double lr = 0.01;
    int epochs = 40;
    int batch_size = 128;
    double l2 = 1e-6;
};

struct HarnessConfig {
    int breadth = 32;                // concurrent sessions per learner round
    int sessions = 2000;             // session budget for generate / training
    std::int64_t steps = 40000;      // env-step budget for online training
    std::string logging_policy = "uniform";  // uniform | dfm
};

struct EvalConfig {
    std::vector<int> hits_ks{1, 3, 5};
    int eval_sessions = 200;
};

struct ExperimentConfig {
    RunConfig run;
    EnvConfig env;
    SacConfig sac;
    SarsaConfig sarsa;
    SlateqConfig slateq;
    DfmConfig dfm;
    HarnessConfig harness;
    EvalConfig eval;

    // Population mean vector expanded to n_types entries.
    std::vector<double> base_utility_mean_vec() const {
        if (env.base_utility_mean.size() == 1)
            return std::vector<double>(static_cast<std::size_t>(run.n_types), env.base_utility_mean[0]);
        return env.base_utility_mean;
    }

    void validate() const {
        auto require = [](bool ok, const char* what) {
            if (!ok) throw std::invalid_argument(std::string("config: ") + what);
        };
        require(run.n_types >= 2, "run.n_types must be >= 2");
        require(run.session_cap >= 1, "run.session_cap must be >= 1");
        require(run.split_fraction > 0.0 && run.split_fraction < 1.0,
                "run.split_fraction must be in (0, 1)");
        require(run.user_buckets >= 1 && run.store_buckets >= 1, "feature buckets must be >= 1");
        require(env.user_pool >= 1 && env.store_pool >= 1, "env pools must be >= 1");
        require(env.base_utility_mean.size() == 1 ||
                    env.base_utility_mean.size() == static_cast<std::size_t>(run.n_types),
                "env.base_utility_mean must be scalar or one value per type");
        require(env.base_utility_std >= 0.0, "env.base_utility_std must be >= 0");
        require(env.satiation_mean >= 0.0, "env.satiation_mean must be >= 0");
        require(env.satiation_std >= 0.0, "env.satiation_std must be >= 0");
        require(env.patience >= 0.0, "env.patience must be >= 0");
        require(env.deal_given_click >= 0.0 && env.deal_given_click <= 1.0,
                "env.deal_given_click must be in [0, 1]");
        require(env.catalog_size >= 1, "env.catalog_size must be >= 1");
        require(sac.gamma >= 0.0 && sac.gamma < 1.0, "sac.gamma must be in [0, 1)");
        require(sac.alpha > 0.0, "sac.alpha must be > 0");
        require(sac.lr_policy > 0.0 && sac.lr_critic > 0.0, "sac learning rates must be > 0");
        require(sac.tau > 0.0 && sac.tau <= 1.0, "sac.tau must be in (0, 1]");
        require(sac.batch_size >= 1, "sac.batch_size must be >= 1");
        require(sac.replay_capacity >= 1, "sac.replay_capacity must be >= 1");
        require(!sac.hidden.empty(), "sac.hidden must name at least one layer");
        require(sarsa.gamma >= 0.0 && sarsa.gamma < 1.0, "sarsa.gamma must be in [0, 1)");
        require(sarsa.lr > 0.0 && sarsa.lr <= 1.0, "sarsa.lr must be in (0, 1]");
        require(sarsa.lr_schedule == "constant" || sarsa.lr_schedule == "harmonic",
                "sarsa.lr_schedule must be constant or harmonic");
        require(sarsa.epsilon >= 0.0 && sarsa.epsilon <= 1.0, "sarsa.epsilon must be in [0, 1]");
        require(sarsa.count_cap >= 1, "sarsa.count_cap must be >= 1");
        require(slateq.gamma >= 0.0 && slateq.gamma < 1.0, "slateq.gamma must be in [0, 1)");
        require(slateq.lr > 0.0 && slateq.lr <= 1.0, "slateq.lr must be in (0, 1]");
        require(slateq.slate_size >= 1 && slateq.slate_size <= env.catalog_size,
                "slateq.slate_size must be in [1, env.catalog_size]");
        require(slateq.planner == "greedy" || slateq.planner == "exhaustive",
                "slateq.planner must be greedy or exhaustive");
        require(slateq.count_cap >= 1, "slateq.count_cap must be >= 1");
        require(dfm.factors >= 1, "dfm.factors must be >= 1");
        require(dfm.lr > 0.0, "dfm.lr must be > 0");
        require(dfm.epochs >= 1, "dfm.epochs must be >= 1");
        require(dfm.batch_size >= 1, "dfm.batch_size must be >= 1");
        require(dfm.l2 >= 0.0, "dfm.l2 must be >= 0");
        require(harness.breadth >= 1, "harness.breadth must be >= 1");
        require(harness.sessions >= 0, "harness.sessions must be >= 0");
        require(harness.steps >= 0, "harness.steps must be >= 0");
        require(harness.logging_policy == "uniform" || harness.logging_policy == "dfm",
                "harness.logging_policy must be uniform or dfm");
        require(!eval.hits_ks.empty(), "eval.hits_ks must not be empty");
        for (int k : eval.hits_ks) require(k >= 1, "eval.hits_ks entries must be >= 1");
        require(eval.eval_sessions >= 1, "eval.eval_sessions must be >= 1");
    }

    std::string serialize() const {
        KvDoc doc;
        auto& r = doc.add_section("run");
        r.entries = {{"n_types", std::to_string(run.n_types)},
                     {"seed", std::to_string(run.seed)},
                     {"session_cap", std::to_string(run.session_cap)},
                     {"split_timestamp", std::to_string(run.split_timestamp)},
                     {"split_fraction", format_double(run.split_fraction)},
                     {"user_buckets", std::to_string(run.user_buckets)},
                     {"store_buckets", std::to_string(run.store_buckets)}};
        auto& e = doc.add_section("env");
        e.entries = {{"user_pool", std::to_string(env.user_pool)},
                     {"store_pool", std::to_string(env.store_pool)},
                     {"base_utility_mean", join_doubles(env.base_utility_mean)},
                     {"base_utility_std", format_double(env.base_utility_std)},
                     {"satiation_mean", format_double(env.satiation_mean)},
                     {"satiation_std", format_double(env.satiation_std)},
                     {"patience", format_double(env.patience)},
                     {"null_utility", format_double(env.null_utility)},
                     {"deal_given_click", format_double(env.deal_given_click)},
                     {"catalog_size", std::to_string(env.catalog_size)},
                     {"item_bias_std", format_double(env.item_bias_std)}};
        auto& s = doc.add_section("sac");
        s.entries = {{"gamma", format_double(sac.gamma)},
                     {"alpha", format_double(sac.alpha)},
                     {"lr_policy", format_double(sac.lr_policy)},
                     {"lr_critic", format_double(sac.lr_critic)},
                     {"tau", format_double(sac.tau)},
                     {"batch_size", std::to_string(sac.batch_size)},
                     {"replay_capacity", std::to_string(sac.replay_capacity)},
                     {"hidden", join_ints(sac.hidden)},
                     {"warmup_rounds", std::to_string(sac.warmup_rounds)},
                     {"updates_per_round", std::to_string(sac.updates_per_round)}};
        auto& q = doc.add_section("sarsa");
        q.entries = {{"gamma", format_double(sarsa.gamma)},
                     {"lr", format_double(sarsa.lr)},
                     {"lr_schedule", sarsa.lr_schedule},
                     {"epsilon", format_double(sarsa.epsilon)},
                     {"epsilon_decay_episodes", std::to_string(sarsa.epsilon_decay_episodes)},
                     {"count_cap", std::to_string(sarsa.count_cap)}};
        auto& sq = doc.add_section("slateq");
        sq.entries = {{"gamma", format_double(slateq.gamma)},
                      {"lr", format_double(slateq.lr)},
                      {"slate_size", std::to_string(slateq.slate_size)},
                      {"epsilon", format_double(slateq.epsilon)},
                      {"planner", slateq.planner},
                      {"count_cap", std::to_string(slateq.count_cap)},
                      {"refit_interval", std::to_string(slateq.refit_interval)}};
        auto& d = doc.add_section("dfm");
        d.entries = {{"factors", std::to_string(dfm.factors)},
                     {"hidden", join_ints(dfm.hidden)},
                     {"lr", format_double(dfm.lr)},
                     {"epochs", std::to_string(dfm.epochs)},
                     {"batch_size", std::to_string(dfm.batch_size)},
                     {"l2", format_double(dfm.l2)}};
        auto& h = doc.add_section("harness");
        h.entries = {{"breadth", std::to_string(harness.breadth)},
                     {"sessions", std::to_string(harness.sessions)},
                     {"steps", std::to_string(harness.steps)},
                     {"logging_policy", harness.logging_policy}};
        auto& ev = doc.add_section("eval");
        ev.entries = {{"hits_ks", join_ints(eval.hits_ks)},
                      {"eval_sessions", std::to_string(eval.eval_sessions)}};
        return doc.serialize();
    }

    static ExperimentConfig parse(std::string_view text) {
        const KvDoc doc = KvDoc::parse(text);
        ExperimentConfig cfg;
        std::vector<std::string> seen;
        for (const auto& section : doc.sections) {
            for (const auto& name : seen)
                if (name == section.name)
                    throw std::invalid_argument("config: duplicate section [" + section.name + "]");
            seen.push_back(section.name);
            SectionReader in(section);
            if (section.name == "run") {
                cfg.run.n_types = static_cast<int>(in.get_int("n_types"));
                cfg.run.seed = in.get_uint("seed");
                cfg.run.session_cap = static_cast<int>(in.get_int("session_cap"));
                cfg.run.split_timestamp = in.get_int("split_timestamp");
                cfg.run.split_fraction = in.get_double("split_fraction");
                cfg.run.user_buckets = static_cast<int>(in.get_int("user_buckets"));
                cfg.run.store_buckets = static_cast<int>(in.get_int("store_buckets"));
            } else if (section.name == "env") {
                cfg.env.user_pool = static_cast<int>(in.get_int("user_pool"));
                cfg.env.store_pool = static_cast<int>(in.get_int("store_pool"));
                cfg.env.base_utility_mean = in.get_doubles("base_utility_mean");
                cfg.env.base_utility_std = in.get_double("base_utility_std");
                cfg.env.satiation_mean = in.get_double("satiation_mean");
                cfg.env.satiation_std = in.get_double("satiation_std");
                cfg.env.patience = in.get_double("patience");
                cfg.env.null_utility = in.get_double("null_utility");
                cfg.env.deal_given_click = in.get_double("deal_given_click");
                cfg.env.catalog_size = static_cast<int>(in.get_int("catalog_size"));
                cfg.env.item_bias_std = in.get_double("item_bias_std");
            } else if (section.name == "sac") {
                cfg.sac.gamma = in.get_double("gamma");
                cfg.sac.alpha = in.get_double("alpha");
                cfg.sac.lr_policy = in.get_double("lr_policy");
                cfg.sac.lr_critic = in.get_double("lr_critic");
                cfg.sac.tau = in.get_double("tau");
                cfg.sac.batch_size = static_cast<int>(in.get_int("batch_size"));
                cfg.sac.replay_capacity = static_cast<int>(in.get_int("replay_capacity"));
                cfg.sac.hidden = in.get_ints("hidden");
                cfg.sac.warmup_rounds = static_cast<int>(in.get_int("warmup_rounds"));
                cfg.sac.updates_per_round = static_cast<int>(in.get_int("updates_per_round"));
            } else if (section.name == "sarsa") {
                cfg.sarsa.gamma = in.get_double("gamma");
                cfg.sarsa.lr = in.get_double("lr");
                cfg.sarsa.lr_schedule = in.get_string("lr_schedule");
                cfg.sarsa.epsilon = in.get_double("epsilon");
                cfg.sarsa.epsilon_decay_episodes = in.get_int("epsilon_decay_episodes");
                cfg.sarsa.count_cap = static_cast<int>(in.get_int("count_cap"));
            } else if (section.name == "slateq") {
                cfg.slateq.gamma = in.get_double("gamma");
                cfg.slateq.lr = in.get_double("lr");
                cfg.slateq.slate_size = static_cast<int>(in.get_int("slate_size"));
                cfg.slateq.epsilon = in.get_double("epsilon");
                cfg.slateq.planner = in.get_string("planner");
                cfg.slateq.count_cap = static_cast<int>(in.get_int("count_cap"));
                cfg.slateq.refit_interval = static_cast<int>(in.get_int("refit_interval"));
            } else if (section.name == "dfm") {
                cfg.dfm.factors = static_cast<int>(in.get_int("factors"));
                cfg.dfm.hidden = in.get_ints("hidden");
                cfg.dfm.lr = in.get_double("lr");
                cfg.dfm.epochs = static_cast<int>(in.get_int("epochs"));
                cfg.dfm.batch_size = static_cast<int>(in.get_int("batch_size"));
                cfg.dfm.l2 = in.get_double("l2");
            } else if (section.name == "harness") {
                cfg.harness.breadth = static_cast<int>(in.get_int("breadth"));
                cfg.harness.sessions = static_cast<int>(in.get_int("sessions"));
                cfg.harness.steps = in.get_int("steps");
                cfg.harness.logging_policy = in.get_string("logging_policy");
            } else if (section.name == "eval") {
                cfg.eval.hits_ks = in.get_ints("hits_ks");
                cfg.eval.eval_sessions = static_cast<int>(in.get_int("eval_sessions"));
            } else {
                throw std::invalid_argument("config: unknown section [" + section.name + "]");
            }
            in.finish();
        }
        cfg.validate();
        return cfg;
    }

    // Digest of the canonical serialization; identifies a config in logs,
    // checkpoints and reports.
    std::string digest() const {
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(serialize())));
        return std::string(buf);
    }
};

}  // namespace liverec::core
