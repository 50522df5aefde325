#pragma once

#include <cstdint>
#include <utility>

#include "fabriclab/graph.hpp"
#include "fabriclab/percolation.hpp"
#include "fabriclab/rng.hpp"

namespace fabriclab {

struct AudienceSpec {
    double k_obs = 3.0;
    double k_rew = 3.0;
    double alpha = 0.1;

    void validate() const;
};

struct RewardEstimate {
    double p_hat = 0.0;
    int replications = 0;
    double std_err = 0.0;
};

// ceil(k * n^alpha) per role, capped at n-1.
std::pair<std::uint32_t, std::uint32_t> audience_sizes(std::uint32_t n,
                                                       const AudienceSpec& spec);

// Monte Carlo estimate of the probability that agent i's contribution is seen
// and rewarded: observers and rewarders are drawn independently and uniformly
// without replacement from nodes other than i (the two sets may overlap), and
// a replication succeeds when some rewarder shares a component with some
// observer in the graph with i removed.
RewardEstimate reward_probability_mc(const Graph& g, std::uint32_t i,
                                     std::uint32_t m_obs, std::uint32_t m_rew,
                                     int replications, RngStream& rng);

// Large-n limit used by the equilibrium solver.
inline double predicted_reward(Regime regime) {
    return regime == Regime::Supercritical ? 1.0 : 0.0;
}

} // namespace fabriclab
