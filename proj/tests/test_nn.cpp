#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>

#include "liverec/core/rng.hpp"
#include "liverec/nn/adam.hpp"
#include "liverec/nn/checkpoint.hpp"
#include "liverec/nn/gradcheck.hpp"
#include "liverec/nn/mlp.hpp"

using namespace liverec;

namespace {

// Test-side forward pass: naive loops over the raw weight arrays, written
// independently of MlpModel::forward.
std::vector<double> oracle_forward(const nn::MlpModel& m, std::vector<double> x) {
    for (std::size_t l = 0; l < m.n_layers(); ++l) {
        const int in = m.layer_sizes()[l];
        const int out = m.layer_sizes()[l + 1];
        std::vector<double> y(out, 0.0);
        for (int o = 0; o < out; ++o) {
            y[o] = m.biases()[l][o];
            for (int i = 0; i < in; ++i) y[o] += m.weights()[l][o * in + i] * x[i];
        }
        if (l + 1 < m.n_layers())
            for (double& v : y) v = std::max(0.0, v);
        x = y;
    }
    if (m.head() == nn::OutputHead::LogSoftmax) {
        double mx = x[0];
        for (double v : x) mx = std::max(mx, v);
        double z = 0.0;
        for (double v : x) z += std::exp(v - mx);
        for (double& v : x) v = v - mx - std::log(z);
    }
    return x;
}

void zero_parameters(nn::MlpModel& m) {
    for (double* p : m.parameter_pointers()) *p = 0.0;
}

}  // namespace

TEST_CASE("all-zero weights with identity head give zero output") {
    core::Rng rng(1);
    nn::MlpModel m({4, 8, 3}, nn::OutputHead::Identity, rng);
    zero_parameters(m);
    for (double v : m.forward(std::vector<double>{1.0, -2.0, 3.0, 0.5})) CHECK(v == 0.0);
}

TEST_CASE("single linear layer with identity weights passes input through") {
    core::Rng rng(1);
    nn::MlpModel m({3, 3}, nn::OutputHead::Identity, rng);
    zero_parameters(m);
    for (int i = 0; i < 3; ++i) m.weights()[0][i * 3 + i] = 1.0;
    const std::vector<double> x{0.5, -1.25, 2.0};
    CHECK(m.forward(x) == x);
}

TEST_CASE("forward matches an independently coded forward pass") {
    core::Rng rng(12345);
    for (auto head : {nn::OutputHead::Identity, nn::OutputHead::LogSoftmax}) {
        nn::MlpModel m({6, 10, 7, 4}, head, rng);
        std::vector<double> x(6);
        for (double& v : x) v = rng.normal();
        const auto got = m.forward(x);
        const auto want = oracle_forward(m, x);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK_THAT(got[i], Catch::Matchers::WithinAbs(want[i], 1e-12));
    }
}

TEST_CASE("forward is pure: repeated calls are bit-identical") {
    core::Rng rng(7);
    nn::MlpModel m({5, 16, 2}, nn::OutputHead::LogSoftmax, rng);
    std::vector<double> x(5);
    for (double& v : x) v = rng.uniform(-1, 1);
    const auto a = m.forward(x);
    const auto b = m.forward(x);
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

TEST_CASE("zero upstream gradient yields zero parameter gradients") {
    core::Rng rng(2);
    nn::MlpModel m({4, 6, 3}, nn::OutputHead::Identity, rng);
    nn::MlpModel::Cache cache;
    std::vector<double> x{0.1, 0.2, 0.3, 0.4};
    m.forward_cached(x, cache);
    const auto grads = m.backward(cache, std::vector<double>{0.0, 0.0, 0.0});
    for (double g : nn::flatten_gradients(grads)) CHECK(g == 0.0);
}

TEST_CASE("linear model squared loss matches the closed-form residual gradient") {
    core::Rng rng(3);
    nn::MlpModel m({4, 1}, nn::OutputHead::Identity, rng);
    const std::vector<double> x{1.0, -0.5, 2.0, 0.25};
    const double target = 0.75;
    nn::MlpModel::Cache cache;
    const double pred = m.forward_cached(x, cache)[0];
    const double upstream = 2.0 * (pred - target);
    const auto grads = m.backward(cache, std::vector<double>{upstream});
    for (int i = 0; i < 4; ++i)  // d/dw_i (wx + b - y)^2 = 2 (pred - y) x_i
        CHECK_THAT(grads.dw[0][i], Catch::Matchers::WithinAbs(2.0 * (pred - target) * x[i], 1e-12));
    CHECK_THAT(grads.db[0][0], Catch::Matchers::WithinAbs(2.0 * (pred - target), 1e-12));
}

TEST_CASE("analytic gradients match central finite differences") {
    for (std::uint64_t seed : {10ull, 11ull, 12ull, 13ull, 14ull}) {
        core::Rng rng(seed);
        const auto head = seed % 2 == 0 ? nn::OutputHead::Identity : nn::OutputHead::LogSoftmax;
        nn::MlpModel m({5, 12, 8, 3}, head, rng);  // 203 parameters
        std::vector<double> x(5);
        for (double& v : x) v = rng.normal();
        std::vector<double> mix(3);
        for (double& v : mix) v = rng.normal();

        // loss = sum_a mix_a * out_a  (linear in the head output)
        auto loss = [&]() {
            const auto out = m.forward(x);
            double acc = 0.0;
            for (std::size_t a = 0; a < out.size(); ++a) acc += mix[a] * out[a];
            return acc;
        };
        nn::MlpModel::Cache cache;
        m.forward_cached(x, cache);
        std::vector<double> input_grad;
        const auto analytic = m.backward(cache, mix, &input_grad);

        auto params = m.parameter_pointers();
        const auto numeric = nn::numeric_gradient(loss, params, 1e-5);
        const auto cmp = nn::compare_gradients(nn::flatten_gradients(analytic), numeric);
        INFO("seed " << seed << " worst index " << cmp.worst_index);
        CHECK(cmp.compared > 0);
        CHECK(cmp.max_rel_error < 1e-4);

        // input gradient against the same probe
        std::vector<double*> xptrs;
        for (double& v : x) xptrs.push_back(&v);
        const auto x_numeric = nn::numeric_gradient(loss, xptrs, 1e-5);
        const auto xcmp = nn::compare_gradients(input_grad, x_numeric);
        CHECK(xcmp.max_rel_error < 1e-4);
    }
}

TEST_CASE("adam leaves parameters alone on zero gradients") {
    core::Rng rng(4);
    nn::MlpModel m({3, 5, 2}, nn::OutputHead::Identity, rng);
    const auto before = m.parameters_flat();
    nn::AdamState opt(m.parameter_count(), 0.01);
    nn::adam_step(m, m.zero_gradients(), opt);
    CHECK(m.parameters_flat() == before);
}

TEST_CASE("first adam step moves each parameter by about lr in the sign direction") {
    std::vector<double> params{1.0, -2.0, 0.5};
    std::vector<double> grads{0.3, -0.7, 2.0};
    std::vector<double*> ptrs{&params[0], &params[1], &params[2]};
    const double lr = 0.01;
    nn::AdamState opt(3, lr);
    opt.step(ptrs, grads);
    const std::vector<double> want{1.0 - lr, -2.0 + lr, 0.5 - lr};
    for (int i = 0; i < 3; ++i) CHECK_THAT(params[i], Catch::Matchers::WithinAbs(want[i], lr * 1e-6));
}

TEST_CASE("adam drives a quadratic bowl to the bottom") {
    std::vector<double> theta{3.0, -4.0, 1.5, 0.25};
    const std::vector<double> target{-1.0, 2.0, 0.0, 5.0};
    std::vector<double*> ptrs;
    for (double& t : theta) ptrs.push_back(&t);
    nn::AdamState opt(theta.size(), 0.05);
    double loss = 0.0;
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<double> g(theta.size());
        loss = 0.0;
        for (std::size_t i = 0; i < theta.size(); ++i) {
            const double d = theta[i] - target[i];
            loss += d * d;
            g[i] = 2.0 * d;
        }
        opt.step(ptrs, g);
    }
    CHECK(loss < 1e-6);
}

TEST_CASE("adam rejects non-finite gradients") {
    std::vector<double> params{1.0};
    std::vector<double*> ptrs{&params[0]};
    nn::AdamState opt(1, 0.01);
    CHECK_THROWS_AS(opt.step(ptrs, {std::nan("")}), std::runtime_error);
}

TEST_CASE("checkpoint container reloads a model bit-for-bit") {
    core::Rng rng(20);
    nn::MlpModel m({7, 9, 5}, nn::OutputHead::LogSoftmax, rng);
    nn::CheckpointWriter w;
    w.add_meta({{"agent", "test"}, {"seed", "20"}});
    w.add_mlp("net", m);
    w.add_table("tbl", {{"0:1", 0.1}, {"2:0", -3.0e-7}});

    nn::CheckpointReader r(w.str());
    const auto meta = r.read_meta();
    REQUIRE(meta.size() == 2);
    CHECK(meta[0].second == "test");
    const auto back = r.read_mlp("net");
    CHECK(back == m);
    const auto tbl = r.read_table("tbl");
    REQUIRE(tbl.size() == 2);
    CHECK(tbl[0].first == "0:1");
    CHECK(tbl[0].second == 0.1);
    CHECK(tbl[1].second == -3.0e-7);
    r.expect_end();
}

TEST_CASE("checkpoint survives a filesystem round trip") {
    core::Rng rng(21);
    nn::MlpModel m({3, 4, 2}, nn::OutputHead::Identity, rng);
    const auto path = std::filesystem::temp_directory_path() / "liverec_ckpt_test.txt";
    {
        nn::CheckpointWriter w;
        w.add_meta({{"agent", "test"}});
        w.add_mlp("net", m);
        w.save(path.string());
    }
    auto r = nn::CheckpointReader::load(path.string());
    (void)r.read_meta();
    CHECK(r.read_mlp("net") == m);
    std::filesystem::remove(path);
}

TEST_CASE("model shape errors are loud") {
    core::Rng rng(6);
    nn::MlpModel m({3, 2}, nn::OutputHead::Identity, rng);
    CHECK_THROWS_AS(m.forward(std::vector<double>{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(nn::MlpModel({5}, nn::OutputHead::Identity, rng), std::invalid_argument);
}
