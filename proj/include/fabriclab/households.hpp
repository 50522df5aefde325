#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fabriclab/agents.hpp"
#include "fabriclab/degree_model.hpp"
#include "fabriclab/graph.hpp"
#include "fabriclab/rng.hpp"

namespace fabriclab {

// Coordination game among H households. Each household h allocates inside
// time t_h; aggregate connectivity is (1/H) sum z_h(t_h) plus an anticipated
// shock of half-width xi_bar whose slope is k_plus on the gain side and
// k_minus on the loss side. delta_v is the second-stage value at stake.
// z_h must be strictly increasing on [0,1]; w_h (inner-maximized first-stage
// value) is only needed by payoff-evaluating callers and may be left empty.
struct HouseholdGame {
    std::size_t H = 0;
    std::vector<std::function<double(double)>> z;
    std::vector<std::function<double(double)>> w;
    std::vector<double> t_hat;
    std::vector<double> t_max;
    double xi_bar = 0.0;
    double k_plus = 0.0;
    double k_minus = 0.0;
    double delta_v = 0.0;

    void validate() const;
};

// Builds the game from shared preferences and degree model with per-household
// outside productivities. z is connectivity_z of pmf_at; t_hat and w come from
// the first-stage optimizer; delta_v = v1 - v2; the shock slopes use
// d_bar = E[d | d >= 2] under the myopic-profile mixture, k_plus = 2*d_bar - 1
// and k_minus = 2*d_bar - 3 (requires d_bar > 1.5).
HouseholdGame make_household_game(const PreferenceSpec& prefs,
                                  const DegreeModelSpec& degrees,
                                  const std::vector<double>& pi, double xi_bar);

double z_of(const HouseholdGame& game, std::size_t h, double t);

// (1/H) sum z_h(t_h) + k * xi with the slope matched to the sign of xi.
double connectivity_post_shock(const HouseholdGame& game,
                               const std::vector<double>& t_vec, double xi);

// Probability over a uniform shock on [-xi_bar, xi_bar] that post-shock
// connectivity is positive, integrated exactly branch by branch.
double p_sc(const HouseholdGame& game, const std::vector<double>& t_vec);
double p_sc_at_connectivity(const HouseholdGame& game, double mean_z);

struct ThresholdTime {
    enum class Kind { Feasible, BelowRange, AboveRange };
    Kind kind = Kind::Feasible;
    double value = 0.0;

    bool feasible() const { return kind == Kind::Feasible; }
    // BelowRange compares as -infinity, AboveRange as +infinity.
    bool at_most(double t) const {
        return kind == Kind::BelowRange || (feasible() && value <= t);
    }
    bool exceeds(double t) const { return !at_most(t); }
};

// Smallest t_h with guaranteed positive post-shock connectivity given the
// others: solves z_h(t) = xi_bar*H*k_minus - sum_{h' != h} z_h'(t_h').
// Entry h of t_vec is ignored.
ThresholdTime t_crit(const HouseholdGame& game, std::size_t h,
                     const std::vector<double>& t_vec);

// Largest t_h below which the shock can never rescue connectivity:
// z_h(t) = -xi_bar*H*k_plus - sum_{h' != h} z_h'(t_h').
ThresholdTime t_uncrit(const HouseholdGame& game, std::size_t h,
                       const std::vector<double>& t_vec);

// Largest inside time worth sacrificing: the point past t_hat on the
// decreasing branch of w where w(t_hat) - w(t) = delta_v.
double solve_t_max(const std::function<double(double)>& w, double t_hat,
                   double delta_v);

// t_crit if it is feasible and lies in [t_hat_h, t_max_h]; t_hat_h otherwise.
double best_response(const HouseholdGame& game, std::size_t h,
                     const std::vector<double>& t_vec);

enum class HouseholdCase { AlwaysHigh, ThresholdUnique, Bistable, AlwaysLow };

inline const char* to_string(HouseholdCase c) {
    switch (c) {
        case HouseholdCase::AlwaysHigh: return "AlwaysHigh";
        case HouseholdCase::ThresholdUnique: return "ThresholdUnique";
        case HouseholdCase::Bistable: return "Bistable";
        default: return "AlwaysLow";
    }
}

struct EquilibriumCase {
    HouseholdCase tag = HouseholdCase::AlwaysLow;
    std::vector<double> witness;
    // Second equilibrium for the bistable case: the myopic t_hat profile.
    std::vector<double> miscoordination;
    bool multiple = false;
};

// Four-case classifier. Threshold witnesses are built by lexicographic fill:
// households are raised in index order from t_hat toward t_max until the
// aggregate z sum reaches xi_bar*H*k_minus.
EquilibriumCase classify_equilibrium(const HouseholdGame& game);

// Finite-n validation utility for the shock algebra: gives (xi > 0) or takes
// (xi < 0) one unit of degree to round(|xi|*n) uniformly chosen agents with
// degree >= 2. Not used by the solver path.
DegreeSequence apply_friendship_shock(const DegreeSequence& seq, double xi,
                                      RngStream& rng);

} // namespace fabriclab
