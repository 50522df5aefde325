#include "fabriclab/households.hpp"

#include <algorithm>
#include <cmath>

#include "fabriclab/errors.hpp"

namespace fabriclab {

void HouseholdGame::validate() const {
    if (H < 1) throw ValidationError("HouseholdGame: need at least one household");
    if (z.size() != H || t_hat.size() != H || t_max.size() != H)
        throw ValidationError("HouseholdGame: per-household fields must have size H");
    if (!w.empty() && w.size() != H)
        throw ValidationError("HouseholdGame: w must be empty or have size H");
    if (!(xi_bar > 0.0)) throw ValidationError("HouseholdGame: xi_bar must be positive");
    if (!(delta_v > 0.0)) throw ValidationError("HouseholdGame: delta_v must be positive");
    if (!(k_plus >= k_minus && k_minus > 0.0))
        throw ValidationError("HouseholdGame: need k_plus >= k_minus > 0");
    for (std::size_t h = 0; h < H; ++h) {
        if (!(t_hat[h] >= 0.0 && t_hat[h] <= t_max[h] && t_max[h] <= 1.0))
            throw ValidationError("HouseholdGame: need 0 <= t_hat <= t_max <= 1");
        if (!z[h]) throw ValidationError("HouseholdGame: missing z function");
    }
}

HouseholdGame make_household_game(const PreferenceSpec& prefs,
                                  const DegreeModelSpec& degrees,
                                  const std::vector<double>& pi, double xi_bar) {
    prefs.validate();
    degrees.validate();
    if (pi.empty()) throw ValidationError("make_household_game: no households");
    for (double p : pi)
        if (!(p > 0.0))
            throw ValidationError("make_household_game: productivities must be positive");

    HouseholdGame game;
    game.H = pi.size();
    game.xi_bar = xi_bar;
    auto [v1, v2] = second_stage_values(prefs);
    game.delta_v = v1 - v2;

    std::vector<std::pair<double, DegreePmf>> mixture_entries;
    for (double pi_h : pi) {
        auto choice = optimize_time(prefs, pi_h);
        game.t_hat.push_back(choice.t);
        game.z.push_back([degrees](double t) {
            return connectivity_z(pmf_at(degrees, t));
        });
        game.w.push_back(
            [prefs, pi_h](double t) { return stage_value(prefs, pi_h, t); });
        mixture_entries.push_back({1.0 / double(game.H), pmf_at(degrees, choice.t)});
    }
    auto mixture = mix_population(mixture_entries);

    // d_bar = E[d | d >= 2] under the myopic-profile mixture.
    double mass = 0.0, mean = 0.0;
    for (std::size_t d = 2; d < mixture.probs.size(); ++d) {
        mass += mixture.probs[d];
        mean += double(d) * mixture.probs[d];
    }
    if (!(mass > 0.0))
        throw ValidationError("make_household_game: no mass on degrees >= 2");
    double d_bar = mean / mass;
    if (!(d_bar > 1.5))
        throw ValidationError("make_household_game: mean shocked degree must exceed 1.5");
    game.k_plus = 2.0 * d_bar - 1.0;
    game.k_minus = 2.0 * d_bar - 3.0;

    for (std::size_t h = 0; h < game.H; ++h)
        game.t_max.push_back(solve_t_max(game.w[h], game.t_hat[h], game.delta_v));
    game.validate();
    return game;
}

double z_of(const HouseholdGame& game, std::size_t h, double t) {
    if (h >= game.H) throw std::domain_error("z_of: household out of range");
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("z_of: t outside [0,1]");
    return game.z[h](t);
}

namespace {

double mean_z(const HouseholdGame& game, const std::vector<double>& t_vec) {
    if (t_vec.size() != game.H)
        throw std::domain_error("household profile has wrong length");
    double sum = 0.0;
    for (std::size_t h = 0; h < game.H; ++h) sum += game.z[h](t_vec[h]);
    return sum / double(game.H);
}

double sum_z_except(const HouseholdGame& game, const std::vector<double>& t_vec,
                    std::size_t h) {
    if (t_vec.size() != game.H)
        throw std::domain_error("household profile has wrong length");
    double sum = 0.0;
    for (std::size_t j = 0; j < game.H; ++j)
        if (j != h) sum += game.z[j](t_vec[j]);
    return sum;
}

// Root of z(t) = target on [0,1] for strictly increasing z. Values at or
// below z(0) count as out of range below: a zero-or-negative root means the
// constraint never binds, which callers treat as minus infinity.
ThresholdTime solve_increasing(const std::function<double(double)>& z, double target) {
    ThresholdTime out;
    if (target <= z(0.0)) {
        out.kind = ThresholdTime::Kind::BelowRange;
        return out;
    }
    if (target > z(1.0)) {
        out.kind = ThresholdTime::Kind::AboveRange;
        out.value = 1.0;
        return out;
    }
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (z(mid) < target ? lo : hi) = mid;
    }
    // The upper end satisfies z(hi) >= target, so acting at the returned
    // time genuinely secures the constraint rather than just approaching it.
    out.kind = ThresholdTime::Kind::Feasible;
    out.value = hi;
    return out;
}

} // namespace

double connectivity_post_shock(const HouseholdGame& game,
                               const std::vector<double>& t_vec, double xi) {
    game.validate();
    if (std::abs(xi) > game.xi_bar)
        throw std::domain_error("connectivity_post_shock: shock outside its support");
    double k = xi > 0.0 ? game.k_plus : game.k_minus;
    return mean_z(game, t_vec) + k * xi;
}

double p_sc_at_connectivity(const HouseholdGame& game, double s) {
    if (s >= game.xi_bar * game.k_minus) return 1.0;
    if (s >= 0.0) return 0.5 + s / (2.0 * game.xi_bar * game.k_minus);
    if (s > -game.xi_bar * game.k_plus)
        return 0.5 + s / (2.0 * game.xi_bar * game.k_plus);
    return 0.0;
}

double p_sc(const HouseholdGame& game, const std::vector<double>& t_vec) {
    game.validate();
    return p_sc_at_connectivity(game, mean_z(game, t_vec));
}

ThresholdTime t_crit(const HouseholdGame& game, std::size_t h,
                     const std::vector<double>& t_vec) {
    game.validate();
    if (h >= game.H) throw std::domain_error("t_crit: household out of range");
    double target =
        game.xi_bar * double(game.H) * game.k_minus - sum_z_except(game, t_vec, h);
    return solve_increasing(game.z[h], target);
}

ThresholdTime t_uncrit(const HouseholdGame& game, std::size_t h,
                       const std::vector<double>& t_vec) {
    game.validate();
    if (h >= game.H) throw std::domain_error("t_uncrit: household out of range");
    double target =
        -game.xi_bar * double(game.H) * game.k_plus - sum_z_except(game, t_vec, h);
    return solve_increasing(game.z[h], target);
}

double solve_t_max(const std::function<double(double)>& w, double t_hat,
                   double delta_v) {
    if (!w) throw std::domain_error("solve_t_max: missing stage-value function");
    if (delta_v < 0.0) throw std::domain_error("solve_t_max: negative sacrifice");
    if (delta_v == 0.0) return t_hat;
    double w_hat = w(t_hat);
    double hi = 1.0 - 1e-9;
    if (t_hat >= hi) return t_hat;
    if (w_hat - w(hi) < delta_v)
        throw InfeasibleError("solve_t_max: sacrifice exceeds the decreasing branch");
    double lo = t_hat;
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (w_hat - w(mid) < delta_v ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double best_response(const HouseholdGame& game, std::size_t h,
                     const std::vector<double>& t_vec) {
    game.validate();
    if (h >= game.H) throw std::domain_error("best_response: household out of range");
    auto crit = t_crit(game, h, t_vec);
    if (crit.feasible() && crit.value >= game.t_hat[h] && crit.value <= game.t_max[h])
        return crit.value;
    return game.t_hat[h];
}

namespace {

// Raise households in index order from t_hat toward t_max until the z sum
// reaches xi_bar * H * k_minus. Reachability is the caller's burden.
std::vector<double> lexicographic_fill(const HouseholdGame& game) {
    std::vector<double> profile = game.t_hat;
    double target_sum = game.xi_bar * double(game.H) * game.k_minus;
    for (std::size_t h = 0; h < game.H; ++h) {
        double others = sum_z_except(game, profile, h);
        double needed = target_sum - others;
        if (game.z[h](profile[h]) >= needed) break;
        if (game.z[h](game.t_max[h]) >= needed) {
            auto root = solve_increasing(game.z[h], needed);
            profile[h] = root.feasible() ? std::min(root.value, game.t_max[h])
                                         : game.t_max[h];
            break;
        }
        profile[h] = game.t_max[h];
    }
    return profile;
}

} // namespace

EquilibriumCase classify_equilibrium(const HouseholdGame& game) {
    game.validate();
    EquilibriumCase result;

    bool all_secured = true, all_above = true, some_bridge = false;
    for (std::size_t h = 0; h < game.H; ++h) {
        auto crit = t_crit(game, h, game.t_hat);
        if (crit.at_most(game.t_hat[h]))
            all_above = false;
        else
            all_secured = false;
        if (crit.at_most(game.t_max[h])) some_bridge = true;
    }
    if (all_secured) {
        result.tag = HouseholdCase::AlwaysHigh;
        result.witness = game.t_hat;
        return result;
    }
    if (all_above && some_bridge) {
        result.tag = HouseholdCase::ThresholdUnique;
        result.witness = lexicographic_fill(game);
        result.multiple = game.H > 1;
        return result;
    }
    bool none_reach = true;
    for (std::size_t h = 0; h < game.H; ++h) {
        auto crit = t_crit(game, h, game.t_max);
        if (crit.at_most(game.t_max[h])) none_reach = false;
    }
    if (none_reach) {
        result.tag = HouseholdCase::AlwaysLow;
        result.witness = game.t_hat;
        return result;
    }
    result.tag = HouseholdCase::Bistable;
    result.witness = lexicographic_fill(game);
    result.miscoordination = game.t_hat;
    result.multiple = true;
    return result;
}

DegreeSequence apply_friendship_shock(const DegreeSequence& seq, double xi,
                                      RngStream& rng) {
    if (!(xi >= -1.0 && xi <= 1.0))
        throw std::domain_error("apply_friendship_shock: |xi| must not exceed 1");
    DegreeSequence out = seq;
    auto count = std::uint32_t(std::lround(std::abs(xi) * double(seq.n())));
    if (count == 0) return out;
    std::vector<std::uint32_t> eligible;
    for (std::uint32_t i = 0; i < seq.n(); ++i)
        if (seq.degrees[i] >= 2) eligible.push_back(i);
    if (count > eligible.size())
        throw InfeasibleError("apply_friendship_shock: not enough agents with d >= 2");
    auto chosen = rng.distinct(count, std::uint32_t(eligible.size()),
                               std::uint32_t(eligible.size()));
    for (auto idx : chosen) {
        if (xi > 0.0)
            ++out.degrees[eligible[idx]];
        else
            --out.degrees[eligible[idx]];
    }
    return out;
}

} // namespace fabriclab
