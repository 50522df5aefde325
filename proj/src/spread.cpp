#include "fabriclab/spread.hpp"

#include <cmath>

#include "fabriclab/errors.hpp"

namespace fabriclab {

void AudienceSpec::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0 / 6.0))
        throw ValidationError("AudienceSpec: alpha must lie strictly in (0, 1/6)");
    if (!(k_obs > 0.0 && k_rew > 0.0))
        throw ValidationError("AudienceSpec: scaling constants must be positive");
}

std::pair<std::uint32_t, std::uint32_t> audience_sizes(std::uint32_t n,
                                                       const AudienceSpec& spec) {
    spec.validate();
    if (n < 1) throw std::domain_error("audience_sizes: n must be at least 1");
    auto size_for = [&](double k) {
        auto m = std::uint64_t(std::ceil(k * std::pow(double(n), spec.alpha)));
        return std::uint32_t(std::min<std::uint64_t>(m, n - 1));
    };
    return {size_for(spec.k_obs), size_for(spec.k_rew)};
}

RewardEstimate reward_probability_mc(const Graph& g, std::uint32_t i,
                                     std::uint32_t m_obs, std::uint32_t m_rew,
                                     int replications, RngStream& rng) {
    if (i >= g.n) throw std::domain_error("reward_probability_mc: node out of range");
    if (g.n < 2 || m_obs > g.n - 1 || m_rew > g.n - 1)
        throw std::domain_error("reward_probability_mc: sample sizes exceed population");
    if (replications < 1)
        throw std::domain_error("reward_probability_mc: need at least one replication");

    auto census = components(remove_agent(g, i));
    std::vector<char> observed(census.sizes.size(), 0);
    int successes = 0;
    for (int rep = 0; rep < replications; ++rep) {
        auto observers = rng.distinct(m_obs, g.n, i);
        auto rewarders = rng.distinct(m_rew, g.n, i);
        for (auto o : observers) observed[census.component_id[o]] = 1;
        bool hit = false;
        for (auto r : rewarders) hit = hit || observed[census.component_id[r]];
        if (hit) ++successes;
        for (auto o : observers) observed[census.component_id[o]] = 0;
    }
    RewardEstimate est;
    est.replications = replications;
    est.p_hat = double(successes) / double(replications);
    est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / double(replications));
    return est;
}

} // namespace fabriclab
