#include "fabriclab/extensions.hpp"

#include <cmath>

#include "fabriclab/errors.hpp"

namespace fabriclab {

std::vector<EquilibriumReport> independent_communities(
    const std::vector<CommunitySpec>& specs, std::uint64_t master_seed) {
    std::vector<EquilibriumReport> out;
    out.reserve(specs.size());
    StreamKey root = master_key(master_seed);
    for (std::size_t m = 0; m < specs.size(); ++m) {
        // Stream (master_seed, m) is reserved per community so that any
        // sampling a community solve performs stays isolated from neighbours.
        // The analytic solve below happens to consume no draws.
        RngStream stream = root.child(m).stream();
        (void)stream;
        out.push_back(
            solve_equilibrium(specs[m].prefs, specs[m].degrees, specs[m].f));
    }
    return out;
}

void CrossCommunitySpec::validate() const {
    pmf_a.validate();
    pmf_b.validate();
    out_pmf.validate();
    if (n_a < 2)
        throw ValidationError(
            "CrossCommunitySpec: community A needs a focal agent plus audience");
    if (n_b < 1) throw ValidationError("CrossCommunitySpec: community B is empty");
}

RewardEstimate cross_membership_reward(const CrossCommunitySpec& spec,
                                       std::uint32_t m_obs, std::uint32_t m_rew,
                                       std::uint32_t replications,
                                       RngStream& rng) {
    spec.validate();
    if (replications < 1)
        throw std::domain_error("cross_membership_reward: need a replication");
    if (m_obs < 1 || m_rew < 1 || m_obs > spec.n_a - 1 || m_rew > spec.n_a - 1)
        throw std::domain_error(
            "cross_membership_reward: audience does not fit community A");

    const std::uint32_t focal = 0;
    std::uint32_t hits = 0;
    std::vector<char> informed;
    for (std::uint32_t rep = 0; rep < replications; ++rep) {
        auto seq_a = sample_degrees(spec.pmf_a, spec.n_a, rng);
        auto seq_b = sample_degrees(spec.pmf_b, spec.n_b, rng);
        // Raw between-community degrees: no parity repair, the bipartite
        // matcher reconciles the two sides by trimming.
        DegreeSequence out_a, out_b;
        out_a.degrees.resize(spec.n_a);
        for (auto& d : out_a.degrees)
            d = std::uint32_t(rng.sample_pmf(spec.out_pmf.probs));
        out_b.degrees.resize(spec.n_b);
        for (auto& d : out_b.degrees)
            d = std::uint32_t(rng.sample_pmf(spec.out_pmf.probs));

        Graph g_a = sample_configuration(seq_a, rng);
        Graph g_b = sample_configuration(seq_b, rng);
        Graph g_ab = sample_bipartite(out_a, out_b, rng);

        Graph unioned;
        unioned.n = spec.n_a + spec.n_b;
        unioned.edges = g_a.edges;
        for (auto [u, v] : g_b.edges)
            unioned.edges.push_back({u + spec.n_a, v + spec.n_a});
        unioned.edges.insert(unioned.edges.end(), g_ab.edges.begin(),
                             g_ab.edges.end());

        auto census = components(remove_agent(unioned, focal));
        auto observers = rng.distinct(m_obs, spec.n_a, focal);
        auto rewarders = rng.distinct(m_rew, spec.n_a, focal);
        informed.assign(census.sizes.size(), 0);
        for (auto o : observers) informed[census.component_id[o]] = 1;
        for (auto r : rewarders) {
            if (informed[census.component_id[r]]) {
                ++hits;
                break;
            }
        }
    }

    RewardEstimate est;
    est.replications = replications;
    est.p_hat = double(hits) / double(replications);
    est.std_err =
        std::sqrt(est.p_hat * (1.0 - est.p_hat) / double(replications));
    return est;
}

namespace {

double zero_atom(const CostPmf& pmf) {
    double p = 0.0;
    for (std::size_t k = 0; k < pmf.values.size(); ++k)
        if (pmf.values[k] == 0.0) p += pmf.probs[k];
    return p;
}

double draw_cost(const CostPmf& pmf, RngStream& rng) {
    return pmf.values[rng.sample_pmf(pmf.probs)];
}

} // namespace

void StrategicSpec::validate() const {
    if (!(r_tilde > 0.0))
        throw ValidationError("StrategicSpec: reward must be positive");
    gossip_cost_pmf.validate();
    reward_cost_pmf.validate();
    for (double v : gossip_cost_pmf.values)
        if (v < 0.0)
            throw ValidationError("StrategicSpec: negative gossip cost");
    for (double v : reward_cost_pmf.values)
        if (v < 0.0)
            throw ValidationError("StrategicSpec: negative reward cost");
    if (!(zero_atom(gossip_cost_pmf) > 0.0))
        throw ValidationError("StrategicSpec: gossip costs need an atom at zero");
    if (!(zero_atom(reward_cost_pmf) > 0.0))
        throw ValidationError("StrategicSpec: reward costs need an atom at zero");
}

RealizedCosts realize_costs(const StrategicSpec& spec, const Graph& g,
                            RngStream& rng) {
    spec.validate();
    RealizedCosts out;
    out.reward_cost.reserve(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i)
        out.reward_cost.push_back(draw_cost(spec.reward_cost_pmf, rng));
    out.link_cost.reserve(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        double forward = draw_cost(spec.gossip_cost_pmf, rng);
        double backward = draw_cost(spec.gossip_cost_pmf, rng);
        out.link_cost.push_back({forward, backward});
    }
    return out;
}

SpreadingEquilibria classify_spreading_equilibria(const Graph& g,
                                                  const RealizedCosts& costs,
                                                  double r_tilde) {
    if (!(r_tilde > 0.0))
        throw std::domain_error("classify_spreading_equilibria: reward must be positive");
    if (g.n == 0)
        throw ValidationError("classify_spreading_equilibria: no agents");
    if (costs.link_cost.size() != g.edges.size() ||
        costs.reward_cost.size() != g.n)
        throw ValidationError(
            "classify_spreading_equilibria: costs do not match the graph");

    Graph affordable{g.n, {}};
    Graph free_only{g.n, {}};
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [forward, backward] = costs.link_cost[e];
        if (forward <= r_tilde && backward <= r_tilde)
            affordable.edges.push_back(g.edges[e]);
        if (forward == 0.0 && backward == 0.0)
            free_only.edges.push_back(g.edges[e]);
    }

    SpreadingEquilibria out;
    auto census_r = components(affordable);
    auto census_0 = components(free_only);
    out.gc_affordable = census_r.gc_fraction;
    out.gc_free = census_0.gc_fraction;
    if (has_giant(census_0)) {
        out.thresholded = true;
    } else if (!has_giant(census_r)) {
        out.zero_cost_only = true;
    } else {
        out.thresholded = true;
        out.zero_cost_only = true;
    }
    return out;
}

} // namespace fabriclab
