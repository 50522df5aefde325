#include <doctest.h>

#include <cmath>

#include "fabriclab/errors.hpp"
#include "fabriclab/percolation.hpp"
#include "oracles.hpp"

using namespace fabriclab;

namespace {

DegreePmf random_pmf(RngStream& g, int max_degree) {
    DegreePmf pmf;
    pmf.probs.resize(std::size_t(max_degree) + 1);
    double total = 0.0;
    for (auto& p : pmf.probs) {
        p = g.uniform();
        total += p;
    }
    for (auto& p : pmf.probs) p /= total;
    return pmf;
}

} // namespace

TEST_SUITE("percolation") {

TEST_CASE("thinning matches binomial survival counts") {
    auto delta2 = point_mass(2, 6);
    auto half = thin_pmf(delta2, 0.5);
    CHECK(half.probs[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(half.probs[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(half.probs[2] == doctest::Approx(0.25).epsilon(1e-12));

    auto keep = thin_pmf(delta2, 1.0);
    for (std::size_t d = 0; d < keep.probs.size(); ++d)
        CHECK(keep.probs[d] == doctest::Approx(delta2.probs[d]).epsilon(1e-12));

    auto drop = thin_pmf(delta2, 0.0);
    CHECK(drop.probs[0] == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(thin_pmf(delta2, 1.5), std::domain_error);
}

TEST_CASE("thinning preserves mass and scales the mean exactly") {
    RngStream g(0, 301);
    for (int rep = 0; rep < 50; ++rep) {
        auto pmf = random_pmf(g, 4 + int(g.below(6)));
        double psi = g.uniform();
        auto thinned = thin_pmf(pmf, psi);
        double mass = 0.0;
        for (double p : thinned.probs) mass += p;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(moments(thinned).mean ==
              doctest::Approx(psi * moments(pmf).mean).epsilon(1e-12));
    }
}

TEST_CASE("thinning a binomial degree law rescales its link probability") {
    RngStream g(1, 301);
    for (int rep = 0; rep < 30; ++rep) {
        double theta = 0.1 + 0.8 * g.uniform();
        double psi = 0.1 + 0.9 * g.uniform();
        auto thinned = thin_pmf(binomial_pmf(6, theta), psi);
        auto direct = binomial_pmf(6, theta * psi);
        for (std::size_t d = 0; d < thinned.probs.size(); ++d)
            CHECK(thinned.probs[d] == doctest::Approx(direct.probs[d]).epsilon(1e-11));
    }
}

TEST_CASE("chi on point masses") {
    CHECK(chi(point_mass(2, 6), {0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(chi(point_mass(3, 6), {0.0, 0.0}) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(chi(point_mass(2, 6), {0.0, 0.5}) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("chi without deletion reduces to the connectivity statistic") {
    RngStream g(2, 301);
    for (int rep = 0; rep < 100; ++rep) {
        auto pmf = random_pmf(g, 4 + int(g.below(8)));
        CHECK(chi(pmf, {0.0, 0.0}) ==
              doctest::Approx(connectivity_z(pmf)).epsilon(1e-12));
    }
}

TEST_CASE("active subgraph respects its survival rates") {
    RngStream g(3, 301);
    DegreeSequence cubic;
    cubic.degrees.assign(20000, 3);
    auto base = sample_configuration(cubic, g);
    REQUIRE(base.edges.size() == 30000);

    auto same = active_subgraph(base, {0.0, 0.0}, g);
    CHECK(same.edges == base.edges);

    auto muted = active_subgraph(base, {0.0, 1.0}, g);
    CHECK(muted.edges.empty());
    CHECK(muted.n == base.n);

    auto kept = active_subgraph(base, {0.3, 0.0}, g);
    // psi = 0.49, 30000 trials: 3 sigma ~ 260
    CHECK(double(kept.edges.size()) == doctest::Approx(14700.0).epsilon(260.0 / 14700.0));
}

TEST_CASE("regime prediction with a subcritical boundary") {
    CHECK(predicted_regime(point_mass(3, 6), {0.0, 0.0}) == Regime::Supercritical);
    CHECK(predicted_regime(point_mass(2, 6), {0.0, 0.5}) == Regime::Subcritical);
    CHECK(predicted_regime(point_mass(2, 6), {0.0, 0.0}) == Regime::Subcritical);
    CHECK_THROWS_AS(chi(point_mass(2, 6), {1.2, 0.0}), ValidationError);
}

TEST_CASE("edge deletion and pmf thinning give matching largest components") {
    RngStream g(4, 301);
    const int n = 4000, reps = 8;
    const double psi = 0.6;
    auto base_pmf = binomial_pmf(6, 0.45);
    PercolationParams params{1.0 - std::sqrt(psi), 0.0};
    double via_deletion = 0.0, via_thinning = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        auto seq = sample_degrees(base_pmf, n, g);
        auto graph = sample_configuration(seq, g);
        via_deletion += components(active_subgraph(graph, params, g)).gc_fraction;
        auto thin_seq = sample_degrees(thin_pmf(base_pmf, psi), n, g);
        via_thinning += components(sample_configuration(thin_seq, g)).gc_fraction;
    }
    CHECK(std::abs(via_deletion - via_thinning) / reps < 0.05);
}

} // TEST_SUITE
