#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fabriclab/degree_model.hpp"
#include "fabriclab/rng.hpp"

namespace fabriclab {

struct DegreeSequence {
    std::vector<std::uint32_t> degrees;

    std::uint32_t n() const { return std::uint32_t(degrees.size()); }
    std::uint64_t stub_total() const;
};

// Multigraph: self-loops and parallel edges are retained, component structure
// is unaffected by either.
struct Graph {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

struct ComponentCensus {
    std::vector<std::uint32_t> component_id; // compact ids, first-seen order
    std::vector<std::uint32_t> sizes;
    std::uint32_t largest_size = 0;
    double gc_fraction = 0.0;
};

// Finite-n stand-in for "a giant component exists".
inline bool has_giant(const ComponentCensus& census, double gamma = 0.05) {
    return census.gc_fraction >= gamma;
}

// Independent draws, one per agent. An odd stub total is repaired by reducing
// one uniformly chosen positive degree by one.
DegreeSequence sample_degrees(const DegreePmf& pmf, std::uint32_t n, RngStream& rng);
DegreeSequence sample_degrees(const std::vector<DegreePmf>& table,
                              const std::vector<std::uint32_t>& type_of,
                              RngStream& rng);

// Uniform stub matching. Throws if the stub total is odd.
Graph sample_configuration(const DegreeSequence& seq, RngStream& rng);

// Cross-side stub matching; nodes of seq_b are relabeled to n_a..n_a+n_b-1.
// Excess stubs on the larger side are discarded uniformly at random.
Graph sample_bipartite(const DegreeSequence& seq_a, const DegreeSequence& seq_b,
                       RngStream& rng);

ComponentCensus components(const Graph& g);

// (1/n) sum_i d_i (d_i - 2); empirical counterpart of connectivity_z.
double connectivity_statistic(const DegreeSequence& seq);

// Deletes all edges incident to i; i stays as an isolated node.
Graph remove_agent(const Graph& g, std::uint32_t i);

// Adds `count` edges, each from a uniformly chosen node with at least one
// friend-of-a-friend to a uniformly chosen such partner. Never changes the
// component partition. No-op when no length-2 path exists.
Graph add_triadic_links(const Graph& g, std::uint32_t count, RngStream& rng);

// Edge-list text format: header "n m", then one "u v" line per edge.
void dump_graph(const Graph& g, const std::string& path);
Graph load_graph(const std::string& path);

} // namespace fabriclab
