#include "fabriclab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "fabriclab/errors.hpp"

namespace fabriclab {

std::uint64_t DegreeSequence::stub_total() const {
    return std::accumulate(degrees.begin(), degrees.end(), std::uint64_t(0));
}

namespace {

void repair_parity(DegreeSequence& seq, RngStream& rng) {
    if (seq.stub_total() % 2 == 0) return;
    std::vector<std::uint32_t> positive;
    for (std::uint32_t i = 0; i < seq.n(); ++i)
        if (seq.degrees[i] > 0) positive.push_back(i);
    if (positive.empty())
        throw ValidationError("sample_degrees: odd stub total with no positive degree");
    seq.degrees[positive[std::size_t(rng.below(positive.size()))]] -= 1;
}

std::vector<std::uint32_t> stub_array(const DegreeSequence& seq, std::uint32_t offset) {
    std::vector<std::uint32_t> stubs;
    stubs.reserve(std::size_t(seq.stub_total()));
    for (std::uint32_t i = 0; i < seq.n(); ++i)
        for (std::uint32_t k = 0; k < seq.degrees[i]; ++k) stubs.push_back(offset + i);
    return stubs;
}

} // namespace

DegreeSequence sample_degrees(const DegreePmf& pmf, std::uint32_t n, RngStream& rng) {
    pmf.validate();
    DegreeSequence seq;
    seq.degrees.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) seq.degrees[i] = rng.sample_pmf(pmf.probs);
    repair_parity(seq, rng);
    return seq;
}

DegreeSequence sample_degrees(const std::vector<DegreePmf>& table,
                              const std::vector<std::uint32_t>& type_of,
                              RngStream& rng) {
    for (const auto& pmf : table) pmf.validate();
    DegreeSequence seq;
    seq.degrees.resize(type_of.size());
    for (std::size_t i = 0; i < type_of.size(); ++i) {
        if (type_of[i] >= table.size())
            throw ValidationError("sample_degrees: type index out of range");
        seq.degrees[i] = rng.sample_pmf(table[type_of[i]].probs);
    }
    repair_parity(seq, rng);
    return seq;
}

Graph sample_configuration(const DegreeSequence& seq, RngStream& rng) {
    if (seq.stub_total() % 2 != 0)
        throw ValidationError("sample_configuration: odd stub total");
    auto stubs = stub_array(seq, 0);
    rng.shuffle(stubs);
    Graph g;
    g.n = seq.n();
    g.edges.reserve(stubs.size() / 2);
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
        auto u = stubs[k], v = stubs[k + 1];
        g.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return g;
}

Graph sample_bipartite(const DegreeSequence& seq_a, const DegreeSequence& seq_b,
                       RngStream& rng) {
    auto stubs_a = stub_array(seq_a, 0);
    auto stubs_b = stub_array(seq_b, seq_a.n());
    rng.shuffle(stubs_a);
    rng.shuffle(stubs_b);
    // Keeping a uniformly shuffled prefix deletes a uniform random subset of
    // the excess stubs on the larger side.
    std::size_t total = std::min(stubs_a.size(), stubs_b.size());
    Graph g;
    g.n = seq_a.n() + seq_b.n();
    g.edges.reserve(total);
    for (std::size_t k = 0; k < total; ++k) g.edges.emplace_back(stubs_a[k], stubs_b[k]);
    return g;
}

ComponentCensus components(const Graph& g) {
    std::vector<std::uint32_t> parent(g.n);
    std::vector<std::uint32_t> rank(g.n, 0);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [u, v] : g.edges) {
        auto ru = find(u), rv = find(v);
        if (ru == rv) continue;
        if (rank[ru] < rank[rv]) std::swap(ru, rv);
        parent[rv] = ru;
        if (rank[ru] == rank[rv]) ++rank[ru];
    }
    ComponentCensus census;
    census.component_id.resize(g.n);
    std::vector<std::uint32_t> compact(g.n, std::uint32_t(-1));
    for (std::uint32_t i = 0; i < g.n; ++i) {
        auto root = find(i);
        if (compact[root] == std::uint32_t(-1)) {
            compact[root] = std::uint32_t(census.sizes.size());
            census.sizes.push_back(0);
        }
        census.component_id[i] = compact[root];
        ++census.sizes[compact[root]];
    }
    for (auto s : census.sizes) census.largest_size = std::max(census.largest_size, s);
    census.gc_fraction = g.n == 0 ? 0.0 : double(census.largest_size) / double(g.n);
    return census;
}

double connectivity_statistic(const DegreeSequence& seq) {
    if (seq.n() == 0) throw std::domain_error("connectivity_statistic: empty sequence");
    double acc = 0.0;
    for (auto d : seq.degrees) acc += double(d) * (double(d) - 2.0);
    return acc / double(seq.n());
}

Graph remove_agent(const Graph& g, std::uint32_t i) {
    if (i >= g.n) throw ValidationError("remove_agent: node out of range");
    Graph out;
    out.n = g.n;
    out.edges.reserve(g.edges.size());
    for (const auto& e : g.edges)
        if (e.first != i && e.second != i) out.edges.push_back(e);
    return out;
}

Graph add_triadic_links(const Graph& g, std::uint32_t count, RngStream& rng) {
    std::vector<std::vector<std::uint32_t>> adj(g.n);
    for (const auto& [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    // Candidate partners of u: nodes other than u reachable along some
    // length-2 path. Parallel edges are acceptable output, so candidates may
    // include existing neighbors.
    auto candidates = [&](std::uint32_t u) {
        std::vector<std::uint32_t> cand;
        for (auto v : adj[u])
            for (auto w : adj[v])
                if (w != u) cand.push_back(w);
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        return cand;
    };
    std::vector<std::uint32_t> eligible;
    for (std::uint32_t u = 0; u < g.n; ++u)
        if (!candidates(u).empty()) eligible.push_back(u);
    Graph out = g;
    if (eligible.empty()) return out;
    for (std::uint32_t k = 0; k < count; ++k) {
        auto u = eligible[std::size_t(rng.below(eligible.size()))];
        auto cand = candidates(u);
        auto w = cand[std::size_t(rng.below(cand.size()))];
        out.edges.emplace_back(std::min(u, w), std::max(u, w));
    }
    return out;
}

void dump_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("dump_graph: cannot open " + path);
    out << g.n << ' ' << g.edges.size() << '\n';
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
    if (!out) throw IoError("dump_graph: write failed for " + path);
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_graph: cannot open " + path);
    Graph g;
    std::size_t m = 0;
    if (!(in >> g.n >> m)) throw ValidationError("load_graph: bad header in " + path);
    g.edges.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        std::uint32_t u, v;
        if (!(in >> u >> v))
            throw ValidationError("load_graph: truncated edge list in " + path);
        if (u >= g.n || v >= g.n)
            throw ValidationError("load_graph: endpoint out of range in " + path);
        g.edges.emplace_back(u, v);
    }
    return g;
}

} // namespace fabriclab
