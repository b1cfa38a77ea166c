#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "monobandit/instances.hpp"
#include "monobandit/piecewise_linear.hpp"
#include "monobandit/rng.hpp"

using namespace monobandit;

namespace {
PiecewiseLinearFunction prop1_f1() { return make_prop1_pair().first; }
PiecewiseLinearFunction prop1_f2() { return make_prop1_pair().second; }
}  // namespace

TEST_CASE("construction rejects invalid breakpoints") {
    CHECK_THROWS_AS(PiecewiseLinearFunction({{0.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseLinearFunction({{0.1, 0.0}, {1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseLinearFunction({{0.0, 0.0}, {0.9, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseLinearFunction({{0.0, 0.0}, {0.5, 1.2}, {1.0, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseLinearFunction({{0.0, 0.0}, {0.5, 0.5}, {0.5, 0.6}, {1.0, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("eval interpolates the prefix-pair tent") {
    const auto f1 = prop1_f1();
    CHECK(f1.eval(0.25) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f1.eval(0.75) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(f1.eval(0.125) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("eval is exact at breakpoints") {
    PiecewiseLinearFunction f({{0.0, 0.1}, {0.3, 0.7}, {1.0, 0.2}});
    for (const auto& p : f.breakpoints()) {
        CHECK(f.eval(p.x) == p.y);
    }
}

TEST_CASE("eval rejects out-of-domain points") {
    const auto f1 = prop1_f1();
    CHECK_THROWS_AS(f1.eval(-0.01), std::domain_error);
    CHECK_THROWS_AS(f1.eval(1.01), std::domain_error);
    CHECK_THROWS_AS(f1.eval(std::nan("")), std::domain_error);
}

TEST_CASE("eval is linear between adjacent breakpoints") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto f = make_random_peak_instance(rng);
        const auto& pts = f.breakpoints();
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const double a = pts[i - 1].x, b = pts[i].x;
            const double mid = (a + b) / 2.0;
            CHECK(f.eval(mid) ==
                  doctest::Approx((f.eval(a) + f.eval(b)) / 2.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("random-peak instance from a forced draw") {
    const auto f = make_random_peak_instance(0.5, 0.8);
    CHECK(f.eval(0.25) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(f.eval(0.5) == 0.8);
    CHECK(f.max_value().x == 0.5);
    CHECK(f.max_value().value == 0.8);
    CHECK(f.eval(0.0) == 0.0);
    CHECK(f.eval(1.0) == 0.0);
}

TEST_CASE("random-peak degenerate draws collapse instead of crashing") {
    const auto left = make_random_peak_instance(0.0, 0.6);
    CHECK(left.breakpoints().size() == 2);
    CHECK(left.eval(0.0) == 0.6);
    const auto right = make_random_peak_instance(1.0, 0.6);
    CHECK(right.breakpoints().size() == 2);
    CHECK(right.eval(1.0) == 0.6);
}

TEST_CASE("random-peak samples satisfy the family invariants") {
    Rng rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const double x1 = rng.next_uniform(0.0, 1.0);
        const double x2 = rng.next_uniform(0.5, 1.0);
        const auto f = make_random_peak_instance(x1, x2);
        CHECK(check_quasiconcave(f));
        const double c = random_peak_lipschitz(x1, x2);
        CHECK(check_lipschitz(f, c));
        CHECK_FALSE(check_lipschitz(f, c * (1.0 - 1e-6)));
        CHECK(f.max_value().x == x1);
        CHECK(f.max_value().value == x2);
    }
}

TEST_CASE("lower-bound instances match the closed form") {
    const auto f2 = make_lower_bound_instance(2, 2);
    CHECK(f2.eval(0.75) == 0.75);
    const auto f1 = make_lower_bound_instance(2, 1);
    CHECK(f1.eval(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    for (int K = 1; K <= 8; ++K) {
        for (int k = 1; k <= K; ++k) {
            const auto f = make_lower_bound_instance(K, k);
            CHECK(f.eval(0.0) == 0.0);
            const double peak = (static_cast<double>(k) - 0.5) / static_cast<double>(K);
            CHECK(f.max_value().x == peak);
            CHECK(f.max_value().value == peak);
        }
    }
    CHECK_THROWS_AS(make_lower_bound_instance(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_lower_bound_instance(4, 5), std::invalid_argument);
}

TEST_CASE("lower-bound instances ascend with unit slope away from the peak") {
    // f_k(x) = x before the peak and max{(2k-1)/K - x, 0} after it.
    const auto f = make_lower_bound_instance(5, 3);
    CHECK(f.eval(0.3) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(f.eval(0.6) == doctest::Approx(1.0 - 0.6).epsilon(1e-12));  // (2*3-1)/5 - 0.6
    CHECK(f.eval(0.9) == doctest::Approx(1.0 - 0.9).epsilon(1e-12));
    const auto early = make_lower_bound_instance(5, 2);  // zero from x = 0.6 onward
    CHECK(early.eval(0.7) == 0.0);
    CHECK(early.eval(1.0) == 0.0);
}

TEST_CASE("prefix pair agrees below 0.5 and diverges above") {
    const auto [f1, f2] = make_prop1_pair();
    CHECK(f2.eval(0.75) == 1.0);
    CHECK(f1.eval(0.0) == 0.0);
    CHECK(f2.eval(0.0) == 0.0);
    for (int g = 0; g <= 500; ++g) {
        const double x = g / 1000.0;
        CHECK(f1.eval(x) == f2.eval(x));
    }
    CHECK(f1.eval(0.75) != f2.eval(0.75));
}

TEST_CASE("sample_reward is exact when sigma is zero") {
    const auto f = prop1_f1();
    Rng rng(5);
    const NoiseModel off(0.0);
    for (int i = 0; i < 32; ++i) {
        const double x = i / 32.0;
        CHECK(sample_reward(f, x, off, rng) == f.eval(x));
    }
}

TEST_CASE("sample_reward noise has the configured moments") {
    const auto f = prop1_f1();
    const NoiseModel noise(0.1);
    Rng rng(42);
    const double x = 0.3;
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = sample_reward(f, x, noise, rng);
        sum += z;
        sum_sq += z * z;
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sum_sq - n * mean * mean) / (n - 1));
    CHECK(std::abs(mean - f.eval(x)) < 3.0 * 0.1 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(sd - 0.1) < 0.05 * 0.1);
}

TEST_CASE("negative noise sigma is rejected") {
    CHECK_THROWS_AS(NoiseModel(-0.1), std::invalid_argument);
}

TEST_CASE("check_lipschitz on the reference instances") {
    const auto f1 = prop1_f1();
    CHECK(check_lipschitz(f1, 2.0));
    CHECK_FALSE(check_lipschitz(f1, 1.0));
    for (int K = 1; K <= 20; ++K) {
        for (int k = 1; k <= K; ++k) {
            CHECK(check_lipschitz(make_lower_bound_instance(K, k), 1.0));
        }
    }
}

TEST_CASE("check_quasiconcave separates the prefix pair") {
    CHECK(check_quasiconcave(prop1_f1()));
    CHECK_FALSE(check_quasiconcave(prop1_f2()));
    CHECK(check_quasiconcave(PiecewiseLinearFunction({{0.0, 0.3}, {1.0, 0.3}})));
    // plateau at the top is still unimodal
    CHECK(check_quasiconcave(
        PiecewiseLinearFunction({{0.0, 0.0}, {0.4, 0.9}, {0.6, 0.9}, {1.0, 0.1}})));
}

TEST_CASE("max_value breaks ties toward the smallest x") {
    const PiecewiseLinearFunction constant({{0.0, 0.3}, {1.0, 0.3}});
    CHECK(constant.max_value().x == 0.0);
    CHECK(constant.max_value().value == 0.3);
    const auto f = make_lower_bound_instance(4, 3);
    CHECK(f.max_value().x == 0.625);
    CHECK(f.max_value().value == 0.625);
}

TEST_CASE("every family stays inside [0,1] on a dense grid") {
    Rng rng(7);
    std::vector<PiecewiseLinearFunction> functions;
    for (int i = 0; i < 50; ++i) functions.push_back(make_random_peak_instance(rng));
    for (int K : {1, 3, 7, 17}) {
        for (int k = 1; k <= K; ++k) functions.push_back(make_lower_bound_instance(K, k));
    }
    functions.push_back(prop1_f1());
    functions.push_back(prop1_f2());
    for (const auto& f : functions) {
        for (int g = 0; g <= 10000; ++g) {
            const double v = f.eval(g / 10000.0);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("instance specs parse, name, and draw") {
    Rng rng(3);

    auto spec = InstanceSpec::parse("random-peak");
    CHECK(spec.name() == "random-peak");
    auto drawn = spec.draw(rng);
    CHECK(check_quasiconcave(drawn.f));
    CHECK(check_lipschitz(drawn.f, drawn.lipschitz_c));

    spec = InstanceSpec::parse("lower-bound:6:2");
    CHECK(spec.name() == "lower-bound:6:2");
    drawn = spec.draw(rng);
    CHECK(drawn.lipschitz_c == 1.0);
    CHECK(drawn.f.max_value().value == (2.0 - 0.5) / 6.0);

    spec = InstanceSpec::parse("prop1:2");
    drawn = spec.draw(rng);
    CHECK_FALSE(check_quasiconcave(drawn.f));
    CHECK(check_lipschitz(drawn.f, 4.0));

    spec = InstanceSpec::parse("explicit:0,0;0.5,1;1,0");
    drawn = spec.draw(rng);
    CHECK(drawn.f.eval(0.5) == 1.0);
    CHECK(drawn.lipschitz_c == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(InstanceSpec::parse("lower-bound:3:4"), std::invalid_argument);
    CHECK_THROWS_AS(InstanceSpec::parse("prop1:3"), std::invalid_argument);
    CHECK_THROWS_AS(InstanceSpec::parse("mystery"), std::invalid_argument);
    CHECK_THROWS_AS(InstanceSpec::parse("explicit:0,0;1,2"), std::invalid_argument);
}

TEST_CASE("stream seeds are stable and distinct") {
    const auto a = stream_seed(1, {10, 2, 3});
    CHECK(a == stream_seed(1, {10, 2, 3}));
    CHECK(a != stream_seed(1, {10, 2, 4}));
    CHECK(a != stream_seed(2, {10, 2, 3}));
    CHECK(fnv1a64("alg1") != fnv1a64("ucb"));
}
