#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "liverec/core/config.hpp"
#include "liverec/core/kvfile.hpp"
#include "liverec/core/rng.hpp"
#include "liverec/core/types.hpp"

using namespace liverec;

TEST_CASE("increment_exposure bumps exactly the acted index") {
    core::ExposureState s = core::ExposureState::zeros(8);
    const auto next = core::increment_exposure(s, core::Action{2});
    CHECK(next.counts == std::vector<int>{0, 0, 1, 0, 0, 0, 0, 0});
    CHECK(s.counts == std::vector<int>(8, 0));  // input untouched

    core::ExposureState two({5, 1});
    CHECK(core::increment_exposure(two, core::Action{0}).counts == std::vector<int>{6, 1});
}

TEST_CASE("increment_exposure rejects out-of-range actions") {
    core::ExposureState s(std::vector<int>{3});
    CHECK_THROWS_AS(core::increment_exposure(s, core::Action{1}), std::out_of_range);
    CHECK_THROWS_AS(core::increment_exposure(s, core::Action{-1}), std::out_of_range);
}

TEST_CASE("transition validity catches corrupted records") {
    core::ExposureState s({1, 2, 0});
    core::Transition t;
    t.state = s;
    t.action = core::Action{1};
    t.reward = 1.0;
    t.next_state = core::increment_exposure(s, t.action);
    CHECK(core::transition_valid(t));

    auto bad_reward = t;
    bad_reward.reward = 0.5;
    CHECK_FALSE(core::transition_valid(bad_reward));

    auto bad_next = t;
    bad_next.next_state.counts[0] += 1;
    CHECK_FALSE(core::transition_valid(bad_next));
}

TEST_CASE("seeded rng reproduces exactly and separates seeds") {
    core::Rng a(42), b(42), c(43);
    bool all_equal = true;
    bool any_diff_from_c = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        all_equal = all_equal && (x == b.next_u64());
        any_diff_from_c = any_diff_from_c || (x != c.next_u64());
    }
    CHECK(all_equal);
    CHECK(any_diff_from_c);
}

TEST_CASE("uniform draws have the right first moment") {
    core::Rng rng(7);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) sum += rng.uniform();
    CHECK_THAT(sum / n, Catch::Matchers::WithinAbs(0.5, 0.01));
}

TEST_CASE("uniform_int is bounded and roughly uniform") {
    core::Rng rng(11);
    std::vector<int> hist(10, 0);
    for (int i = 0; i < 100000; ++i) ++hist[rng.uniform_int(10)];
    for (int count : hist) CHECK_THAT(count / 100000.0, Catch::Matchers::WithinAbs(0.1, 0.01));
    CHECK_THROWS_AS(rng.uniform_int(0), std::invalid_argument);
}

TEST_CASE("normal draws match the first two moments") {
    core::Rng rng(5);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    CHECK_THAT(mean, Catch::Matchers::WithinAbs(0.0, 0.02));
    CHECK_THAT(sq / n - mean * mean, Catch::Matchers::WithinAbs(1.0, 0.03));
}

TEST_CASE("derived streams are deterministic and distinct") {
    core::Rng master(99);
    auto s1 = master.derive(1);
    auto s1_again = core::Rng(99).derive(1);
    auto s2 = master.derive(2);
    CHECK(s1.next_u64() == s1_again.next_u64());
    CHECK(core::Rng(99).derive(1).next_u64() != s2.next_u64());
    CHECK(core::Rng(99).derive("profile").next_u64() ==
          core::Rng(99).derive("profile").next_u64());
}

TEST_CASE("bernoulli edge probabilities") {
    core::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        CHECK_FALSE(rng.bernoulli(0.0));
        CHECK(rng.bernoulli(1.0));
    }
}

TEST_CASE("config serialize -> parse -> serialize is byte-identical") {
    core::ExperimentConfig cfg;
    const std::string once = cfg.serialize();
    const auto parsed = core::ExperimentConfig::parse(once);
    CHECK(parsed.serialize() == once);

    core::ExperimentConfig tweaked;
    tweaked.run.n_types = 4;
    tweaked.env.base_utility_mean = {0.25, -1.5, 0.125, 3.0};
    tweaked.sac.alpha = 0.015625;
    tweaked.harness.logging_policy = "dfm";
    const std::string t1 = tweaked.serialize();
    CHECK(core::ExperimentConfig::parse(t1).serialize() == t1);
}

TEST_CASE("config parser rejects silent typos") {
    core::ExperimentConfig cfg;
    std::string text = cfg.serialize();
    SECTION("unknown key") {
        text.insert(text.find("[env]"), "typo_key = 1\n");
        CHECK_THROWS_AS(core::ExperimentConfig::parse(text), std::invalid_argument);
    }
    SECTION("unknown section") {
        text += "\n[nonsense]\nx = 1\n";
        CHECK_THROWS_AS(core::ExperimentConfig::parse(text), std::invalid_argument);
    }
    SECTION("duplicate key") {
        std::string dup = "[run]\nn_types = 8\nn_types = 9\n";
        CHECK_THROWS_AS(core::KvDoc::parse(dup), std::invalid_argument);
    }
    SECTION("duplicate section") {
        text += "\n[run]\nn_types = 8\n";
        CHECK_THROWS_AS(core::ExperimentConfig::parse(text), std::invalid_argument);
    }
    SECTION("out-of-range value") {
        core::ExperimentConfig bad;
        bad.sac.gamma = 1.5;
        CHECK_THROWS_AS(core::ExperimentConfig::parse(bad.serialize()), std::invalid_argument);
    }
}

TEST_CASE("config digest is stable and input-sensitive") {
    core::ExperimentConfig a, b;
    CHECK(a.digest() == b.digest());
    b.run.seed = 2;
    CHECK(a.digest() != b.digest());
    CHECK(a.digest().size() == 16);
}

TEST_CASE("kv documents round-trip values exactly") {
    const double values[] = {0.1, 1e-300, -3.25, 1.0 / 3.0, 12345.6789};
    for (double v : values) CHECK(core::parse_double(core::format_double(v)) == v);
    for (double v : values) CHECK(core::parse_double_hex(core::format_double_hex(v)) == v);
    CHECK_THROWS_AS(core::parse_double("abc"), std::invalid_argument);
    CHECK_THROWS_AS(core::parse_int("1.5"), std::invalid_argument);
}
