#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fabriclab/degree_model.hpp"
#include "fabriclab/percolation.hpp"
#include "fabriclab/rng.hpp"

namespace fabriclab {

// Finite-support cost distribution; values may be negative.
struct CostPmf {
    std::vector<double> values;
    std::vector<double> probs;

    void validate() const;
    double prob_strictly_below(double r) const;
    double prob_at_most(double r) const;
};

struct PreferenceSpec {
    double a_in = 1.0;
    double a_out = 1.0;
    double kappa = 0.3;
    double pi_l = 0.8;
    double pi_h = 1.5;
    double reward = 1.0;
    double beta = 2.0;
    CostPmf cost_pmf{{-0.5, 0.4, 0.8, 1.5}, {0.10, 0.60, 0.25, 0.05}};

    void validate() const;
};

struct TimeChoice {
    double t = 0.0;
    double t_out = 0.0;
};

// a_in*ln(1+t) + a_out*ln(1+pi*t_out) + kappa*ln(1-(t+t_out)); the last term
// is the (negated) time cost, which blows up as total time approaches 1.
double first_stage_payoff(const PreferenceSpec& spec, double pi, double t,
                          double t_out);

// Unique maximizer of the strictly concave first-stage payoff over the open
// feasible triangle, via nested golden-section search (1e-8 in arguments).
TimeChoice optimize_time(const PreferenceSpec& spec, double pi);

// First-stage value of inside time t after optimizing the outside share:
// max over t_out of first_stage_payoff(spec, pi, t, t_out). Concave in t.
double stage_value(const PreferenceSpec& spec, double pi, double t);

// Supercritical: contribute iff cost < reward. Subcritical: iff cost <= 0
// (zero cost is weakly dominant).
bool second_stage_rule(double cost, double reward, Regime regime);

// (v1, v2): average second-stage payoff under each regime.
std::pair<double, double> second_stage_values(const PreferenceSpec& spec);

// Between-group Gini of the two-point payoff distribution
// {i_h + v w.p. f, i_l + v w.p. 1-f}.
double gini_between(double f, double i_h, double i_l, double v);

struct EquilibriumReport {
    double f = 0.0;
    TimeChoice high, low;
    DegreePmf mixture;
    double connectivity = 0.0;
    Regime regime = Regime::Subcritical;
    double i_h = 0.0, i_l = 0.0;
    double v = 0.0;
    double u_h = 0.0, u_l = 0.0;
    double gini = 0.0;
};

EquilibriumReport solve_equilibrium(const PreferenceSpec& spec,
                                    const DegreeModelSpec& degree_spec, double f);

struct Population {
    std::uint32_t n = 0;
    double f = 0.0;
    std::vector<std::uint8_t> is_high;
    std::vector<double> cost;
    std::vector<double> t, t_out;
    std::vector<std::uint8_t> contributes;
};

// Realizes n agents at the equilibrium choices: round(f*n) high-skill agents,
// i.i.d. cost draws, contribution from second_stage_rule under eq.regime.
Population realize_population(const PreferenceSpec& spec, const EquilibriumReport& eq,
                              std::uint32_t n, RngStream& rng);

struct SampleStat {
    double mean = 0.0;
    double se = 0.0;
};

// Mean realized second-stage payoff: benefit beta * (contributor share) plus
// each contributor's reward-minus-cost, with the reward paid at the limit
// probability of the regime.
SampleStat mean_second_stage_payoff(const Population& pop, const PreferenceSpec& spec,
                                    Regime regime);

} // namespace fabriclab
