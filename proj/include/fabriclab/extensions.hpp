#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fabriclab/agents.hpp"
#include "fabriclab/graph.hpp"
#include "fabriclab/rng.hpp"
#include "fabriclab/spread.hpp"

namespace fabriclab {

// One community of the two-type game; several of these run side by side.
struct CommunitySpec {
    PreferenceSpec prefs;
    DegreeModelSpec degrees;
    double f = 0.5;
};

// Solves every community separately. Community m only ever touches the rng
// stream derived from (master_seed, m), so its report is bit-identical under
// any change to the other communities' parameters.
std::vector<EquilibriumReport> independent_communities(
    const std::vector<CommunitySpec>& specs, std::uint64_t master_seed);

// Two communities A and B whose members also hold links across the divide.
struct CrossCommunitySpec {
    DegreePmf pmf_a;              // within-community degrees in A
    DegreePmf pmf_b;              // within-community degrees in B
    DegreePmf out_pmf;            // between-community degrees, every agent
    std::uint32_t n_a = 0;
    std::uint32_t n_b = 0;

    void validate() const;
};

// P(a focal agent in A is rewarded) when observers and rewarders are drawn
// from A only but information may travel through B. Each replication samples
// G_A, G_B and the bipartite overlap afresh, removes the focal agent from
// the union graph, and checks whether some rewarder shares a component with
// some observer.
RewardEstimate cross_membership_reward(const CrossCommunitySpec& spec,
                                       std::uint32_t m_obs, std::uint32_t m_rew,
                                       std::uint32_t replications,
                                       RngStream& rng);

// Relaying information and providing rewards are costly acts, each rewarded
// like any other public good when observed.
struct StrategicSpec {
    double r_tilde = 1.0;     // reward for one act of relaying or rewarding
    CostPmf gossip_cost_pmf;  // cost of relaying along one directed link
    CostPmf reward_cost_pmf;  // cost of standing ready to reward

    // Nonnegative finite support and an atom at zero in both distributions.
    void validate() const;
};

// Costs drawn up front, before play: one reward cost per agent, and one
// gossip cost per direction of every realized link. Draw order is fixed
// (agents by index, then edges in list order, lower endpoint first).
struct RealizedCosts {
    std::vector<double> reward_cost;                   // [i]
    std::vector<std::pair<double, double>> link_cost;  // [e]: u->v then v->u
};

RealizedCosts realize_costs(const StrategicSpec& spec, const Graph& g,
                            RngStream& rng);

// Nash set of the gossip stage. A link carries information only with mutual
// consent, so the two candidate active networks keep a link iff both directed
// costs clear the bar: r_tilde for the thresholded profile, zero for the
// free-riding profile.
struct SpreadingEquilibria {
    bool thresholded = false;    // act whenever the cost is at most r_tilde
    bool zero_cost_only = false; // act only when the cost is zero
    double gc_affordable = 0.0;  // giant fraction, both costs <= r_tilde
    double gc_free = 0.0;        // giant fraction, both costs zero
};

SpreadingEquilibria classify_spreading_equilibria(const Graph& g,
                                                  const RealizedCosts& costs,
                                                  double r_tilde);

} // namespace fabriclab
