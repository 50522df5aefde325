#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fabriclab/degree_model.hpp"
#include "fabriclab/errors.hpp"
#include "fabriclab/rng.hpp"
#include "oracles.hpp"

using namespace fabriclab;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
    auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << body;
    return path;
}

} // namespace

TEST_SUITE("degree_model") {

TEST_CASE("binomial pmf matches closed-form entries") {
    CHECK(binomial_pmf(6, 0.5).probs[0] == doctest::Approx(0.015625).epsilon(1e-12));
    CHECK(binomial_pmf(6, 0.1).probs[0] == doctest::Approx(0.531441).epsilon(1e-12));
    RngStream g(0, 101);
    for (int rep = 0; rep < 40; ++rep) {
        int trials = 4 + int(g.below(6));
        double theta = 0.05 + 0.9 * g.uniform();
        auto pmf = binomial_pmf(trials, theta);
        REQUIRE(pmf.max_degree() == trials);
        for (int d = 0; d <= trials; ++d)
            CHECK(pmf.probs[std::size_t(d)] ==
                  doctest::Approx(oracle::binom_prob(trials, d, theta)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(binomial_pmf(3, 0.5), ValidationError);
    CHECK_THROWS_AS(binomial_pmf(6, 0.0), ValidationError);
    CHECK_THROWS_AS(binomial_pmf(6, 1.0), ValidationError);
}

TEST_CASE("moments of a binomial draw") {
    auto m = moments(binomial_pmf(6, 0.2));
    CHECK(m.mean == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(m.second == doctest::Approx(2.4).epsilon(1e-12));
}

TEST_CASE("connectivity statistic against the closed binomial form") {
    auto z_binom = [](int d, double th) { return d * ((d - 1) * th * th - th); };
    CHECK(connectivity_z(binomial_pmf(6, 0.2)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(connectivity_z(binomial_pmf(6, 0.3)) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(connectivity_z(binomial_pmf(6, 0.35)) == doctest::Approx(1.575).epsilon(1e-12));
    CHECK(connectivity_z(binomial_pmf(6, 0.13)) == doctest::Approx(-0.273).epsilon(1e-12));
    RngStream g(1, 101);
    for (int rep = 0; rep < 60; ++rep) {
        int trials = 4 + int(g.below(8));
        double theta = 0.05 + 0.9 * g.uniform();
        auto pmf = binomial_pmf(trials, theta);
        CHECK(connectivity_z(pmf) == doctest::Approx(z_binom(trials, theta)).epsilon(1e-11));
        auto m = moments(pmf);
        CHECK(connectivity_z(pmf) == doctest::Approx(m.second - 2.0 * m.mean).epsilon(1e-11));
    }
}

TEST_CASE("population mixtures are linear in the statistic") {
    auto lo = point_mass(1, 6);
    auto hi = point_mass(3, 6);
    auto mixed = mix_population({{0.5, lo}, {0.5, hi}});
    CHECK(connectivity_z(mixed) == doctest::Approx(1.0).epsilon(1e-12));
    RngStream g(2, 101);
    for (int rep = 0; rep < 30; ++rep) {
        double w = g.uniform();
        auto a = binomial_pmf(6, 0.1 + 0.5 * g.uniform());
        auto b = binomial_pmf(6, 0.1 + 0.5 * g.uniform());
        auto mix = mix_population({{w, a}, {1.0 - w, b}});
        CHECK(connectivity_z(mix) ==
              doctest::Approx(w * connectivity_z(a) + (1.0 - w) * connectivity_z(b))
                  .epsilon(1e-11));
    }
    CHECK_THROWS_AS(mix_population({{0.5, lo}, {0.4, hi}}), ValidationError);
    CHECK_THROWS_AS(mix_population({{0.5, lo}, {0.5, point_mass(2, 5)}}), ValidationError);
}

TEST_CASE("link family crosses criticality at 7/22") {
    DegreeModelSpec spec;
    CHECK(critical_t(spec) == doctest::Approx(7.0 / 22.0).epsilon(1e-9));
    double prev = connectivity_z(pmf_at(spec, 0.0));
    for (int i = 1; i <= 100; ++i) {
        double z = connectivity_z(pmf_at(spec, i / 100.0));
        CHECK(z > prev);
        prev = z;
    }
}

TEST_CASE("degenerate link range is rejected as infeasible") {
    DegreeModelSpec spec;
    spec.theta_min = 0.1;
    spec.theta_max = 0.2;
    CHECK_THROWS_AS(critical_t(spec), InfeasibleError);
}

TEST_CASE("spec validation rejects bad link ranges") {
    DegreeModelSpec spec;
    spec.theta_min = 0.05; // below 1/(2(D-1)) = 0.1 for D=6
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.theta_min = 0.4;
    spec.theta_max = 0.3;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    CHECK_THROWS_AS(pmf_at(DegreeModelSpec{}, -0.1), std::domain_error);
    CHECK_THROWS_AS(pmf_at(DegreeModelSpec{}, 1.1), std::domain_error);
}

TEST_CASE("tabulated grids interpolate linearly") {
    auto path = write_temp("fabriclab_grid_ok.txt",
                           "# toy grid\n"
                           "0.0 0.3 0.4 0.2 0.1 0.0\n"
                           "\n"
                           "1.0 0.1 0.2 0.2 0.3 0.2\n");
    auto spec = load_tabulated(path);
    CHECK(spec.tabulated());
    CHECK(spec.max_degree == 4);
    CHECK(connectivity_z(pmf_at(spec, 0.0)) == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(connectivity_z(pmf_at(spec, 1.0)) == doctest::Approx(2.3).epsilon(1e-12));
    auto mid = pmf_at(spec, 0.5);
    CHECK(mid.probs[0] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(mid.probs[3] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(connectivity_z(mid) == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(critical_t(spec) == doctest::Approx(1.0 / 24.0).epsilon(1e-9));
    std::remove(path.c_str());
}

TEST_CASE("tabulated loader rejects malformed grids") {
    CHECK_THROWS_AS(load_tabulated("/nonexistent/fabriclab.txt"), IoError);

    auto bad_token = write_temp("fabriclab_grid_tok.txt", "0.0 0.3 x 0.2 0.1 0.0\n");
    CHECK_THROWS_AS(load_tabulated(bad_token), ValidationError);
    std::remove(bad_token.c_str());

    auto one_row = write_temp("fabriclab_grid_one.txt", "0.0 0.3 0.4 0.2 0.1 0.0\n");
    CHECK_THROWS_AS(load_tabulated(one_row), ValidationError);
    std::remove(one_row.c_str());

    auto ragged = write_temp("fabriclab_grid_rag.txt",
                             "0.0 0.3 0.4 0.2 0.1 0.0\n"
                             "1.0 0.1 0.2 0.2 0.5\n");
    CHECK_THROWS_AS(load_tabulated(ragged), ValidationError);
    std::remove(ragged.c_str());

    // Z must strictly increase along the grid.
    auto nonmono = write_temp("fabriclab_grid_mono.txt",
                              "0.0 0.1 0.2 0.2 0.3 0.2\n"
                              "1.0 0.3 0.4 0.2 0.1 0.0\n");
    CHECK_THROWS_AS(load_tabulated(nonmono), ValidationError);
    std::remove(nonmono.c_str());

    // Rows need positive mass on degree 1.
    auto no_leaf = write_temp("fabriclab_grid_leaf.txt",
                              "0.0 0.4 0.0 0.3 0.2 0.1\n"
                              "1.0 0.1 0.0 0.2 0.3 0.4\n");
    CHECK_THROWS_AS(load_tabulated(no_leaf), ValidationError);
    std::remove(no_leaf.c_str());

    // Grid must span [0,1].
    auto short_span = write_temp("fabriclab_grid_span.txt",
                                 "0.0 0.3 0.4 0.2 0.1 0.0\n"
                                 "0.9 0.1 0.2 0.2 0.3 0.2\n");
    CHECK_THROWS_AS(load_tabulated(short_span), ValidationError);
    std::remove(short_span.c_str());
}

TEST_CASE("point mass validation") {
    auto pmf = point_mass(3, 6);
    CHECK(pmf.probs[3] == 1.0);
    CHECK(connectivity_z(pmf) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(point_mass(7, 6), ValidationError);
    CHECK_THROWS_AS(point_mass(-1, 6), ValidationError);
}

} // TEST_SUITE
