#include "fabriclab/percolation.hpp"

#include <cmath>

#include "fabriclab/errors.hpp"

namespace fabriclab {

void PercolationParams::validate() const {
    if (!(q >= 0.0 && q <= 1.0 && Q >= 0.0 && Q <= 1.0))
        throw ValidationError("PercolationParams: q and Q must lie in [0,1]");
}

DegreePmf thin_pmf(const DegreePmf& pmf, double psi) {
    if (!(psi >= 0.0 && psi <= 1.0))
        throw std::domain_error("thin_pmf: psi outside [0,1]");
    std::size_t size = pmf.probs.size();
    // Pascal's triangle up to max degree; D is small so this dominates nothing.
    std::vector<std::vector<double>> choose(size);
    for (std::size_t d = 0; d < size; ++d) {
        choose[d].assign(d + 1, 1.0);
        for (std::size_t k = 1; k < d; ++k)
            choose[d][k] = choose[d - 1][k - 1] + choose[d - 1][k];
    }
    DegreePmf out;
    out.probs.assign(size, 0.0);
    for (std::size_t d = 0; d < size; ++d) {
        if (pmf.probs[d] == 0.0) continue;
        for (std::size_t k = 0; k <= d; ++k)
            out.probs[k] += pmf.probs[d] * choose[d][k] * std::pow(psi, double(k)) *
                            std::pow(1.0 - psi, double(d - k));
    }
    return out;
}

double chi(const DegreePmf& pmf, const PercolationParams& params) {
    params.validate();
    auto thinned = thin_pmf(pmf, params.psi());
    double pair_term = 0.0, mean_term = 0.0;
    for (std::size_t d = 0; d < thinned.probs.size(); ++d) {
        pair_term += double(d) * (double(d) - 1.0) * thinned.probs[d];
        mean_term += double(d) * thinned.probs[d];
    }
    return (1.0 - params.Q) * pair_term - mean_term;
}

Graph active_subgraph(const Graph& g, const PercolationParams& params, RngStream& rng) {
    params.validate();
    std::vector<char> silent(g.n, 0);
    for (std::uint32_t i = 0; i < g.n; ++i) silent[i] = rng.bernoulli(params.Q) ? 1 : 0;
    double psi = params.psi();
    Graph out;
    out.n = g.n;
    out.edges.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        bool keep = rng.bernoulli(psi); // drawn unconditionally to keep stream use fixed
        if (keep && !silent[e.first] && !silent[e.second]) out.edges.push_back(e);
    }
    return out;
}

Regime predicted_regime(const DegreePmf& pmf, const PercolationParams& params) {
    return chi(pmf, params) > 0.0 ? Regime::Supercritical : Regime::Subcritical;
}

} // namespace fabriclab
