#pragma once

#include "fabriclab/degree_model.hpp"
#include "fabriclab/graph.hpp"
#include "fabriclab/rng.hpp"

namespace fabriclab {

enum class Regime { Supercritical, Subcritical };

inline const char* to_string(Regime r) {
    return r == Regime::Supercritical ? "Supercritical" : "Subcritical";
}

// q is the per-endpoint link deletion probability, so a link survives both of
// its endpoint coins with probability psi = (1-q)^2. Q silences a node
// entirely (all incident links dropped).
struct PercolationParams {
    double q = 0.0;
    double Q = 0.0;

    double psi() const { return (1.0 - q) * (1.0 - q); }
    void validate() const;
};

// Binomial thinning: each unit of degree survives independently with
// probability psi. Mean scales by exactly psi.
DegreePmf thin_pmf(const DegreePmf& pmf, double psi);

// Connectivity criterion on the thinned distribution:
// (1-Q) sum d(d-1) thinned_d - sum d thinned_d. Reduces to the plain
// connectivity statistic at q = Q = 0.
double chi(const DegreePmf& pmf, const PercolationParams& params);

// Empirical counterpart of thinning: silence nodes w.p. Q, then keep each
// remaining edge w.p. psi. Node set unchanged.
Graph active_subgraph(const Graph& g, const PercolationParams& params, RngStream& rng);

// Supercritical iff chi > 0; the boundary counts as Subcritical.
Regime predicted_regime(const DegreePmf& pmf, const PercolationParams& params);

} // namespace fabriclab
