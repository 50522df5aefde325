#include "fabriclab/agents.hpp"

#include <cmath>

#include "fabriclab/errors.hpp"
#include "fabriclab/spread.hpp"

namespace fabriclab {

void CostPmf::validate() const {
    if (values.empty() || values.size() != probs.size())
        throw ValidationError("CostPmf: values and probs must align and be non-empty");
    double sum = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (!(probs[k] >= 0.0 && probs[k] <= 1.0))
            throw ValidationError("CostPmf: probability outside [0,1]");
        if (!std::isfinite(values[k]))
            throw ValidationError("CostPmf: non-finite cost value");
        sum += probs[k];
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError("CostPmf: probabilities do not sum to 1");
}

double CostPmf::prob_strictly_below(double r) const {
    double p = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k)
        if (values[k] < r) p += probs[k];
    return p;
}

double CostPmf::prob_at_most(double r) const {
    double p = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k)
        if (values[k] <= r) p += probs[k];
    return p;
}

void PreferenceSpec::validate() const {
    if (!(a_in > 0.0 && a_out > 0.0))
        throw ValidationError("PreferenceSpec: interaction weights must be positive");
    if (!(kappa > 0.0)) throw ValidationError("PreferenceSpec: kappa must be positive");
    // Equality is tolerated so the degenerate symmetric-type case stays
    // solvable; it collapses both types onto one choice with zero gini.
    if (!(pi_h >= pi_l && pi_l > 0.0))
        throw ValidationError("PreferenceSpec: need pi_h >= pi_l > 0");
    if (!(reward > 0.0)) throw ValidationError("PreferenceSpec: reward must be positive");
    if (!(beta > 0.0)) throw ValidationError("PreferenceSpec: beta must be positive");
    cost_pmf.validate();
}

double first_stage_payoff(const PreferenceSpec& spec, double pi, double t,
                          double t_out) {
    if (!(t >= 0.0 && t_out >= 0.0 && t + t_out < 1.0))
        throw std::domain_error("first_stage_payoff: time outside feasible triangle");
    return spec.a_in * std::log1p(t) + spec.a_out * std::log1p(pi * t_out) +
           spec.kappa * std::log1p(-(t + t_out));
}

namespace {

// Golden-section maximization of a concave function on [lo, hi]; endpoints are
// never evaluated, so the objective may diverge at the boundary.
template <class Fn>
double golden_max(Fn&& fn, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = fn(x1);
        }
    }
    return 0.5 * (a + b);
}

double best_t_out(const PreferenceSpec& spec, double pi, double t, double tol) {
    auto obj = [&](double o) { return first_stage_payoff(spec, pi, t, o); };
    double hi = 1.0 - t;
    if (hi <= tol) return 0.0;
    return golden_max(obj, 0.0, hi, tol);
}

} // namespace

double stage_value(const PreferenceSpec& spec, double pi, double t) {
    if (!(t >= 0.0 && t < 1.0))
        throw std::domain_error("stage_value: t outside [0,1)");
    return first_stage_payoff(spec, pi, t, best_t_out(spec, pi, t, 1e-10));
}

TimeChoice optimize_time(const PreferenceSpec& spec, double pi) {
    spec.validate();
    if (!(pi > 0.0)) throw std::domain_error("optimize_time: pi must be positive");
    const double tol = 1e-10;
    auto value_at = [&](double t) {
        return first_stage_payoff(spec, pi, t, best_t_out(spec, pi, t, tol));
    };
    TimeChoice choice;
    choice.t = golden_max(value_at, 0.0, 1.0, tol);
    choice.t_out = best_t_out(spec, pi, choice.t, tol);
    return choice;
}

bool second_stage_rule(double cost, double reward, Regime regime) {
    return regime == Regime::Supercritical ? cost < reward : cost <= 0.0;
}

std::pair<double, double> second_stage_values(const PreferenceSpec& spec) {
    spec.validate();
    double v1 = spec.beta * spec.cost_pmf.prob_strictly_below(spec.reward);
    double v2 = spec.beta * spec.cost_pmf.prob_at_most(0.0);
    for (std::size_t k = 0; k < spec.cost_pmf.values.size(); ++k) {
        double c = spec.cost_pmf.values[k], p = spec.cost_pmf.probs[k];
        if (c < spec.reward) v1 += p * (spec.reward - c);
        if (c <= 0.0) v2 += p * (-c);
    }
    return {v1, v2};
}

double gini_between(double f, double i_h, double i_l, double v) {
    if (!(f >= 0.0 && f <= 1.0))
        throw std::domain_error("gini_between: f outside [0,1]");
    if (i_h < i_l) throw std::domain_error("gini_between: needs i_h >= i_l");
    double mu = f * (i_h - i_l) + i_l + v;
    if (!(mu > 0.0)) throw std::domain_error("gini_between: mean payoff must be positive");
    return f * (1.0 - f) * (i_h - i_l) / mu;
}

EquilibriumReport solve_equilibrium(const PreferenceSpec& spec,
                                    const DegreeModelSpec& degree_spec, double f) {
    spec.validate();
    degree_spec.validate();
    if (!(f >= 0.0 && f <= 1.0))
        throw ValidationError("solve_equilibrium: f outside [0,1]");
    EquilibriumReport report;
    report.f = f;
    report.high = optimize_time(spec, spec.pi_h);
    report.low = optimize_time(spec, spec.pi_l);
    report.mixture = mix_population({{f, pmf_at(degree_spec, report.high.t)},
                                     {1.0 - f, pmf_at(degree_spec, report.low.t)}});
    report.connectivity = connectivity_z(report.mixture);
    report.regime = predicted_regime(report.mixture, {0.0, 0.0});
    report.i_h = first_stage_payoff(spec, spec.pi_h, report.high.t, report.high.t_out);
    report.i_l = first_stage_payoff(spec, spec.pi_l, report.low.t, report.low.t_out);
    auto [v1, v2] = second_stage_values(spec);
    report.v = report.regime == Regime::Supercritical ? v1 : v2;
    report.u_h = report.i_h + report.v;
    report.u_l = report.i_l + report.v;
    report.gini = gini_between(f, report.i_h, report.i_l, report.v);
    return report;
}

Population realize_population(const PreferenceSpec& spec, const EquilibriumReport& eq,
                              std::uint32_t n, RngStream& rng) {
    spec.validate();
    Population pop;
    pop.n = n;
    pop.f = eq.f;
    auto high_count = std::uint32_t(std::lround(eq.f * double(n)));
    pop.is_high.resize(n);
    pop.cost.resize(n);
    pop.t.resize(n);
    pop.t_out.resize(n);
    pop.contributes.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        bool high = i < high_count;
        pop.is_high[i] = high ? 1 : 0;
        pop.cost[i] = spec.cost_pmf.values[rng.sample_pmf(spec.cost_pmf.probs)];
        const TimeChoice& choice = high ? eq.high : eq.low;
        pop.t[i] = choice.t;
        pop.t_out[i] = choice.t_out;
        pop.contributes[i] =
            second_stage_rule(pop.cost[i], spec.reward, eq.regime) ? 1 : 0;
    }
    return pop;
}

SampleStat mean_second_stage_payoff(const Population& pop, const PreferenceSpec& spec,
                                    Regime regime) {
    if (pop.n == 0) throw std::domain_error("mean_second_stage_payoff: empty population");
    double p = predicted_reward(regime);
    // Per agent i the payoff is beta*share + x_i(pR - C_i); averaging over the
    // population, the benefit term collapses into each contributor's own draw:
    // mean = (1/n) sum_i x_i (beta + pR - C_i).
    double sum = 0.0, sumsq = 0.0;
    for (std::uint32_t i = 0; i < pop.n; ++i) {
        double y = pop.contributes[i]
                       ? spec.beta + p * spec.reward - pop.cost[i]
                       : 0.0;
        sum += y;
        sumsq += y * y;
    }
    SampleStat stat;
    stat.mean = sum / double(pop.n);
    double var = (sumsq - sum * sum / double(pop.n)) / double(pop.n - 1);
    stat.se = std::sqrt(std::max(0.0, var) / double(pop.n));
    return stat;
}

} // namespace fabriclab
