#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fabriclab/agents.hpp"
#include "fabriclab/extensions.hpp"
#include "fabriclab/households.hpp"
#include "fabriclab/percolation.hpp"
#include "fabriclab/spread.hpp"

namespace fabriclab {

// Everything a run needs, filled from a flat key-value config file plus
// command-line overrides. docs/config.md lists every key and its default.
struct ScenarioConfig {
    bool has_n = false;
    std::uint32_t n = 0;
    std::uint32_t replications = 20;
    std::uint64_t master_seed = 0;
    double gamma = 0.05;
    int threads = 1;
    std::string out_dir = "out";
    double f = 0.5;

    PreferenceSpec prefs;
    DegreeModelSpec degrees;
    AudienceSpec audience;
    PercolationParams percolation;

    std::string sweep_parameter = "pi_h";
    double sweep_from = 0.8;
    double sweep_to = 3.0;
    std::uint32_t sweep_steps = 12;

    double q_from = 0.0, q_to = 0.8;
    std::uint32_t q_steps = 5;
    double site_q_from = 0.0, site_q_to = 0.8;
    std::uint32_t site_q_steps = 5;

    std::vector<double> household_pi = {1.5, 0.8};
    double household_xi_bar = 0.05;

    std::uint32_t cross_n_a = 0, cross_n_b = 0; // 0 falls back to n
    int cross_degree_a = 0, cross_degree_b = 3, cross_out_degree = 1;
    std::uint32_t cross_m_obs = 8, cross_m_rew = 8;

    StrategicSpec strategic{1.0,
                            CostPmf{{0.0, 0.6, 1.5}, {0.4, 0.4, 0.2}},
                            CostPmf{{0.0, 0.5, 1.6}, {0.4, 0.4, 0.2}}};
    int strategic_graph_degree = 3;

    void require_n() const; // names the key in the error
    void validate_core() const;
    void validate_sweep() const;
};

// Parses `key = value` lines ('#' comments); rejects unknown and duplicate
// keys by name. Defaults match ScenarioConfig's initializers.
ScenarioConfig load_config(const std::string& path);

// 12 significant digits, '.' decimal point, locale-independent.
std::string format_double(double x);

struct SweepRow {
    double value = 0.0;
    TimeChoice high, low;
    double connectivity = 0.0;
    Regime regime = Regime::Subcritical;
    double gc_mean = 0.0, gc_se = 0.0;
    double p_hat = 0.0;
    double u_h = 0.0, u_l = 0.0, v = 0.0, gini = 0.0;
};

struct PercolationRow {
    double q = 0.0, site_q = 0.0;
    double chi_value = 0.0;
    Regime regime = Regime::Subcritical;
    double gc_mean = 0.0, gc_se = 0.0;
    double p_hat = 0.0;
};

// Analytic solve per grid point plus Monte Carlo giant-component and reward
// checks; replication r of grid point s draws only from the stream
// (master_seed, s, r), so results never depend on the thread count.
std::vector<SweepRow> sweep_pi_h(const ScenarioConfig& cfg);
std::vector<SweepRow> sweep_f(const ScenarioConfig& cfg);
std::vector<PercolationRow> sweep_percolation(const ScenarioConfig& cfg);
SweepRow run_single(const ScenarioConfig& cfg);

// Single SVG line chart, one polyline per y column, axes labeled with the
// column names. Fails before creating the file when a column is missing or
// the CSV has no data rows.
void emit_plot(const std::string& csv_path, const std::string& x_column,
               const std::vector<std::string>& y_columns,
               const std::string& out_path);

// Executes one CLI command end to end, writing its CSV and summary.json into
// cfg.out_dir. Returns the paths written.
std::vector<std::string> run_command(const ScenarioConfig& cfg,
                                     const std::string& command);

} // namespace fabriclab
