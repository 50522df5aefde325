#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>

#include "fabriclab/errors.hpp"
#include "fabriclab/graph.hpp"

using namespace fabriclab;

namespace {

std::vector<std::uint32_t> endpoint_degrees(const Graph& g) {
    std::vector<std::uint32_t> deg(g.n, 0);
    for (const auto& [u, v] : g.edges) {
        ++deg[u];
        ++deg[v]; // self-loops count twice by construction
    }
    return deg;
}

std::multiset<std::pair<std::uint32_t, std::uint32_t>> edge_multiset(const Graph& g) {
    std::multiset<std::pair<std::uint32_t, std::uint32_t>> s;
    for (auto [u, v] : g.edges) s.insert({std::min(u, v), std::max(u, v)});
    return s;
}

} // namespace

TEST_SUITE("graph") {

TEST_CASE("degree draws repair odd stub totals") {
    RngStream g(0, 201);
    auto forced = point_mass(1, 6);
    for (int rep = 0; rep < 20; ++rep) {
        auto seq = sample_degrees(forced, 3, g);
        CHECK(seq.stub_total() == 2);
        std::multiset<std::uint32_t> ms(seq.degrees.begin(), seq.degrees.end());
        CHECK(ms == std::multiset<std::uint32_t>{0, 1, 1});
    }
    auto zeros = sample_degrees(point_mass(0, 6), 8, g);
    CHECK(zeros.stub_total() == 0);
    CHECK(zeros.n() == 8);
}

TEST_CASE("degree draws track the generating pmf") {
    RngStream g(1, 201);
    auto seq = sample_degrees(binomial_pmf(6, 0.3), 100000, g);
    double mean = double(seq.stub_total()) / 100000.0;
    CHECK(mean == doctest::Approx(1.8).epsilon(0.0106 / 1.8)); // 3 SE
    CHECK(connectivity_statistic(seq) == doctest::Approx(0.9).epsilon(0.03 / 0.9));
}

TEST_CASE("typed degree draws follow each agent's pmf") {
    RngStream g(2, 201);
    std::vector<DegreePmf> table = {point_mass(1, 6), point_mass(3, 6)};
    std::vector<std::uint32_t> types = {0, 0, 1, 1};
    auto seq = sample_degrees(table, types, g);
    CHECK(seq.degrees == std::vector<std::uint32_t>{1, 1, 3, 3});
    std::vector<std::uint32_t> bad_types = {0, 2};
    CHECK_THROWS_AS(sample_degrees(table, bad_types, g), ValidationError);
}

TEST_CASE("configuration sampling matches forced cases") {
    RngStream g(3, 201);
    auto pair = sample_configuration(DegreeSequence{{1, 1}}, g);
    REQUIRE(pair.edges.size() == 1);
    CHECK(pair.edges[0] == std::pair<std::uint32_t, std::uint32_t>{0, 1});

    auto empty = sample_configuration(DegreeSequence{{0, 0, 0}}, g);
    CHECK(empty.edges.empty());
    CHECK(empty.n == 3);

    CHECK_THROWS_AS(sample_configuration(DegreeSequence{{1, 1, 1}}, g), ValidationError);
}

TEST_CASE("configuration sampling preserves every degree") {
    RngStream g(4, 201);
    DegreeSequence two;
    two.degrees.assign(30, 2);
    auto cyc = sample_configuration(two, g);
    for (auto d : endpoint_degrees(cyc)) CHECK(d == 2);

    auto seq = sample_degrees(binomial_pmf(6, 0.3), 200, g);
    auto graph = sample_configuration(seq, g);
    CHECK(endpoint_degrees(graph) == seq.degrees);
}

TEST_CASE("bipartite sampling crosses sides and trims excess stubs") {
    RngStream g(5, 201);
    auto single = sample_bipartite(DegreeSequence{{1}}, DegreeSequence{{1}}, g);
    CHECK(single.n == 2);
    REQUIRE(single.edges.size() == 1);
    CHECK(edge_multiset(single).count({0, 1}) == 1);

    auto forced = sample_bipartite(DegreeSequence{{2, 0}}, DegreeSequence{{1, 1}}, g);
    auto ms = edge_multiset(forced);
    CHECK(ms.count({0, 2}) == 1);
    CHECK(ms.count({0, 3}) == 1);

    auto trimmed = sample_bipartite(DegreeSequence{{3, 2}}, DegreeSequence{{2, 1}}, g);
    CHECK(trimmed.edges.size() == 3);
    for (auto [u, v] : trimmed.edges) {
        CHECK(u < 2);
        CHECK(v >= 2);
        CHECK(v < 4);
    }
}

TEST_CASE("component census partitions the nodes") {
    Graph path;
    path.n = 4;
    path.edges = {{0, 1}, {1, 2}};
    auto census = components(path);
    CHECK(census.largest_size == 3);
    std::multiset<std::uint32_t> sizes(census.sizes.begin(), census.sizes.end());
    CHECK(sizes == std::multiset<std::uint32_t>{1, 3});
    CHECK(census.gc_fraction == doctest::Approx(0.75));
    CHECK(census.component_id[0] == census.component_id[2]);
    CHECK(census.component_id[0] != census.component_id[3]);

    Graph lone;
    lone.n = 5;
    auto singles = components(lone);
    CHECK(singles.sizes.size() == 5);
    CHECK(singles.largest_size == 1);

    Graph cycle;
    cycle.n = 4;
    cycle.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    CHECK(components(cycle).largest_size == 4);

    RngStream g(6, 201);
    auto seq = sample_degrees(binomial_pmf(6, 0.3), 500, g);
    auto random_graph = sample_configuration(seq, g);
    auto rc = components(random_graph);
    std::uint32_t total = 0;
    for (auto s : rc.sizes) total += s;
    CHECK(total == 500);
}

TEST_CASE("empirical connectivity statistic") {
    DegreeSequence two;
    two.degrees.assign(7, 2);
    CHECK(connectivity_statistic(two) == doctest::Approx(0.0));
    CHECK(connectivity_statistic(DegreeSequence{{1, 1, 3, 3}}) == doctest::Approx(1.0));
    DegreeSequence ones;
    ones.degrees.assign(9, 1);
    CHECK(connectivity_statistic(ones) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(connectivity_statistic(DegreeSequence{}), std::domain_error);
}

TEST_CASE("agent removal isolates exactly one node") {
    Graph single;
    single.n = 2;
    single.edges = {{0, 1}};
    CHECK(remove_agent(single, 0).edges.empty());
    CHECK(remove_agent(single, 0).n == 2);

    Graph tri;
    tri.n = 3;
    tri.edges = {{0, 1}, {1, 2}, {0, 2}};
    auto cut = remove_agent(tri, 2);
    REQUIRE(cut.edges.size() == 1);
    CHECK(cut.edges[0] == std::pair<std::uint32_t, std::uint32_t>{0, 1});

    Graph iso;
    iso.n = 3;
    iso.edges = {{0, 1}};
    CHECK(remove_agent(iso, 2).edges == iso.edges);
    CHECK_THROWS_AS(remove_agent(iso, 3), ValidationError);
}

TEST_CASE("triadic links close open triads without touching the partition") {
    RngStream g(7, 201);
    Graph path;
    path.n = 4;
    path.edges = {{0, 1}, {1, 2}};
    auto closed = add_triadic_links(path, 1, g);
    REQUIRE(closed.edges.size() == 3);
    CHECK(closed.edges[2] == std::pair<std::uint32_t, std::uint32_t>{0, 2});
    CHECK(components(closed).component_id == components(path).component_id);

    CHECK(add_triadic_links(path, 0, g).edges == path.edges);

    Graph empty;
    empty.n = 6;
    CHECK(add_triadic_links(empty, 5, g).edges.empty());

    Graph matching;
    matching.n = 4;
    matching.edges = {{0, 1}, {2, 3}};
    CHECK(add_triadic_links(matching, 5, g).edges == matching.edges);

    auto seq = sample_degrees(binomial_pmf(6, 0.3), 400, g);
    auto base = sample_configuration(seq, g);
    auto extended = add_triadic_links(base, 50, g);
    CHECK(extended.edges.size() == base.edges.size() + 50);
    CHECK(components(extended).component_id == components(base).component_id);
}

TEST_CASE("edge-list dump round-trips") {
    RngStream g(8, 201);
    auto seq = sample_degrees(binomial_pmf(6, 0.3), 60, g);
    auto graph = sample_configuration(seq, g);
    auto path = (std::filesystem::temp_directory_path() / "fabriclab_graph.txt").string();
    dump_graph(graph, path);
    auto loaded = load_graph(path);
    CHECK(loaded.n == graph.n);
    CHECK(edge_multiset(loaded) == edge_multiset(graph));
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_graph("/nonexistent/fabriclab_graph.txt"), IoError);
}

TEST_CASE("giant predicate uses an inclusive threshold") {
    ComponentCensus census;
    census.gc_fraction = 0.05;
    CHECK(has_giant(census));
    census.gc_fraction = 0.0499;
    CHECK_FALSE(has_giant(census));
    CHECK(has_giant(census, 0.04));
}

TEST_CASE("largest component brackets the connectivity transition") {
    RngStream g(9, 201);
    double sub = 0.0, super = 0.0;
    const int reps = 5, n = 5000;
    for (int rep = 0; rep < reps; ++rep) {
        auto s1 = sample_degrees(binomial_pmf(6, 0.16), n, g);
        sub += components(sample_configuration(s1, g)).gc_fraction;
        auto s2 = sample_degrees(binomial_pmf(6, 0.25), n, g);
        super += components(sample_configuration(s2, g)).gc_fraction;
    }
    CHECK(sub / reps < 0.03);
    CHECK(super / reps > 0.08);
}

} // TEST_SUITE
