#include <doctest.h>

#include <cmath>

#include "fabriclab/errors.hpp"
#include "fabriclab/spread.hpp"
#include "oracles.hpp"

using namespace fabriclab;

namespace {

Graph cycle_graph(std::uint32_t n) {
    Graph g;
    g.n = n;
    for (std::uint32_t i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n});
    return g;
}

Graph matching_graph(std::uint32_t pairs) {
    Graph g;
    g.n = 2 * pairs;
    for (std::uint32_t k = 0; k < pairs; ++k) g.edges.push_back({2 * k, 2 * k + 1});
    return g;
}

} // namespace

TEST_SUITE("spread") {

TEST_CASE("audience sizes follow the sublinear schedule") {
    AudienceSpec spec;
    auto [obs, rew] = audience_sizes(10000, spec);
    CHECK(obs == 8);
    CHECK(rew == 8);
    CHECK(audience_sizes(1000000, spec).first == 12);
    CHECK(audience_sizes(1, spec).first == 0);

    spec.k_obs = 5.0;
    spec.k_rew = 2.0;
    auto [o2, r2] = audience_sizes(10000, spec);
    CHECK(o2 == 13); // ceil(5 * 10^0.4) = ceil(12.559)
    CHECK(r2 == 6);  // ceil(2 * 10^0.4) = ceil(5.024)

    AudienceSpec bad;
    bad.alpha = 1.0 / 6.0;
    CHECK_THROWS_AS(audience_sizes(100, bad), ValidationError);
    bad.alpha = 0.0;
    CHECK_THROWS_AS(audience_sizes(100, bad), ValidationError);
    bad.alpha = 0.1;
    bad.k_obs = 0.0;
    CHECK_THROWS_AS(audience_sizes(100, bad), ValidationError);
}

TEST_CASE("a connected graph always rewards") {
    RngStream g(0, 401);
    auto est = reward_probability_mc(cycle_graph(50), 7, 3, 3, 50, g);
    CHECK(est.p_hat == 1.0);
    CHECK(est.std_err == 0.0);
    CHECK(est.replications == 50);
}

TEST_CASE("tiny components almost never reward") {
    RngStream g(1, 401);
    auto est = reward_probability_mc(matching_graph(5000), 0, 8, 8, 200, g);
    CHECK(est.p_hat <= 0.05);
}

TEST_CASE("the empty graph reduces to pure set overlap") {
    RngStream g(2, 401);
    Graph empty;
    empty.n = 100;
    auto est = reward_probability_mc(empty, 0, 3, 3, 4000, g);
    double expected = 1.0 - oracle::miss_all(99, 3, 3);
    CHECK(expected == doctest::Approx(0.089062).epsilon(1e-5));
    CHECK(est.p_hat == doctest::Approx(expected).epsilon(0.015 / expected));
}

TEST_CASE("estimates rise with audience sizes") {
    RngStream g(3, 401);
    auto seq = sample_degrees(binomial_pmf(6, 0.22), 3000, g);
    auto graph = sample_configuration(seq, g);
    auto lo = reward_probability_mc(graph, 0, 2, 2, 300, g);
    auto hi_obs = reward_probability_mc(graph, 0, 8, 2, 300, g);
    auto hi_rew = reward_probability_mc(graph, 0, 2, 8, 300, g);
    auto pooled = [](const RewardEstimate& a, const RewardEstimate& b) {
        return std::sqrt(a.std_err * a.std_err + b.std_err * b.std_err);
    };
    CHECK(hi_obs.p_hat > lo.p_hat - 2.0 * pooled(lo, hi_obs));
    CHECK(hi_rew.p_hat > lo.p_hat - 2.0 * pooled(lo, hi_rew));
}

TEST_CASE("the measured agent's own degree is irrelevant") {
    RngStream g(4, 401);
    auto seq = sample_degrees(binomial_pmf(6, 0.3), 2000, g);
    auto seq_low = seq, seq_high = seq;
    seq_low.degrees[0] = 0;
    seq_high.degrees[0] = 6;
    if (seq_low.stub_total() % 2 != 0) {
        ++seq_low.degrees[1];
        ++seq_high.degrees[1];
    }
    auto est_low =
        reward_probability_mc(sample_configuration(seq_low, g), 0, 6, 6, 400, g);
    auto est_high =
        reward_probability_mc(sample_configuration(seq_high, g), 0, 6, 6, 400, g);
    double pooled = std::sqrt(est_low.std_err * est_low.std_err +
                              est_high.std_err * est_high.std_err);
    CHECK(std::abs(est_low.p_hat - est_high.p_hat) <= 2.0 * pooled + 1e-12);
}

TEST_CASE("limit prediction per regime with finite-n agreement") {
    CHECK(predicted_reward(Regime::Supercritical) == 1.0);
    CHECK(predicted_reward(Regime::Subcritical) == 0.0);

    RngStream g(5, 401);
    DegreeSequence cubic;
    cubic.degrees.assign(4000, 3);
    auto graph = sample_configuration(cubic, g);
    auto est = reward_probability_mc(graph, 11, 6, 6, 100, g);
    CHECK(est.p_hat >= 0.9);
}

TEST_CASE("infeasible sample sizes are rejected") {
    RngStream g(6, 401);
    Graph tiny;
    tiny.n = 5;
    CHECK_THROWS_AS(reward_probability_mc(tiny, 0, 5, 2, 10, g), std::domain_error);
    CHECK_THROWS_AS(reward_probability_mc(tiny, 0, 2, 5, 10, g), std::domain_error);
    CHECK_THROWS_AS(reward_probability_mc(tiny, 9, 2, 2, 10, g), std::domain_error);
    CHECK_THROWS_AS(reward_probability_mc(tiny, 0, 2, 2, 0, g), std::domain_error);
}

} // TEST_SUITE
