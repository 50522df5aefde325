#include "fabriclab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "fabriclab/errors.hpp"
#include "json.hpp"

namespace fabriclab {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "n", "replications", "master_seed", "gamma", "threads", "out_dir", "f",
        "degree.max_degree", "degree.theta_min", "degree.theta_max",
        "degree.grid_file",
        "prefs.a_in", "prefs.a_out", "prefs.kappa", "prefs.pi_l", "prefs.pi_h",
        "prefs.reward", "prefs.beta", "prefs.cost_values", "prefs.cost_probs",
        "spread.k_obs", "spread.k_rew", "spread.alpha",
        "percolation.q", "percolation.site_q",
        "percolation.q_from", "percolation.q_to", "percolation.q_steps",
        "percolation.site_q_from", "percolation.site_q_to",
        "percolation.site_q_steps",
        "sweep.parameter", "sweep.from", "sweep.to", "sweep.steps",
        "household.pi", "household.xi_bar",
        "cross.n_a", "cross.n_b", "cross.degree_a", "cross.degree_b",
        "cross.out_degree", "cross.m_obs", "cross.m_rew",
        "strategic.r_tilde", "strategic.graph_degree",
        "strategic.gossip_values", "strategic.gossip_probs",
        "strategic.reward_values", "strategic.reward_probs",
    };
    return keys;
}

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing text");
        return value;
    } catch (const std::exception&) {
        throw ValidationError("key " + key + ": not a number: " + text);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        unsigned long long value = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing text");
        return value;
    } catch (const std::exception&) {
        throw ValidationError("key " + key + ": not a whole number: " + text);
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw ValidationError("key " + key + ": empty list");
    return out;
}

} // namespace

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);

    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": empty key");
        if (!known_keys().count(key))
            throw ValidationError("unknown configuration key: " + key);
        if (kv.count(key))
            throw ValidationError("duplicate configuration key: " + key);
        kv[key] = value;
    }

    ScenarioConfig cfg;
    auto has = [&](const char* k) { return kv.count(k) != 0; };
    auto str = [&](const char* k) { return kv.at(k); };
    auto num = [&](const char* k) { return parse_double(k, kv.at(k)); };
    auto whole = [&](const char* k) { return parse_u64(k, kv.at(k)); };

    if (has("n")) {
        cfg.n = std::uint32_t(whole("n"));
        cfg.has_n = true;
    }
    if (has("replications")) cfg.replications = std::uint32_t(whole("replications"));
    if (has("master_seed")) cfg.master_seed = whole("master_seed");
    if (has("gamma")) cfg.gamma = num("gamma");
    if (has("threads")) cfg.threads = int(whole("threads"));
    if (has("out_dir")) cfg.out_dir = str("out_dir");
    if (has("f")) cfg.f = num("f");

    if (has("degree.max_degree")) cfg.degrees.max_degree = int(whole("degree.max_degree"));
    if (has("degree.theta_min")) cfg.degrees.theta_min = num("degree.theta_min");
    if (has("degree.theta_max")) cfg.degrees.theta_max = num("degree.theta_max");

    if (has("prefs.a_in")) cfg.prefs.a_in = num("prefs.a_in");
    if (has("prefs.a_out")) cfg.prefs.a_out = num("prefs.a_out");
    if (has("prefs.kappa")) cfg.prefs.kappa = num("prefs.kappa");
    if (has("prefs.pi_l")) cfg.prefs.pi_l = num("prefs.pi_l");
    if (has("prefs.pi_h")) cfg.prefs.pi_h = num("prefs.pi_h");
    if (has("prefs.reward")) cfg.prefs.reward = num("prefs.reward");
    if (has("prefs.beta")) cfg.prefs.beta = num("prefs.beta");
    if (has("prefs.cost_values") != has("prefs.cost_probs"))
        throw ValidationError(
            "prefs.cost_values and prefs.cost_probs must be given together");
    if (has("prefs.cost_values"))
        cfg.prefs.cost_pmf = CostPmf{parse_list("prefs.cost_values", str("prefs.cost_values")),
                                     parse_list("prefs.cost_probs", str("prefs.cost_probs"))};

    if (has("spread.k_obs")) cfg.audience.k_obs = num("spread.k_obs");
    if (has("spread.k_rew")) cfg.audience.k_rew = num("spread.k_rew");
    if (has("spread.alpha")) cfg.audience.alpha = num("spread.alpha");

    if (has("percolation.q")) cfg.percolation.q = num("percolation.q");
    if (has("percolation.site_q")) cfg.percolation.Q = num("percolation.site_q");
    if (has("percolation.q_from")) cfg.q_from = num("percolation.q_from");
    if (has("percolation.q_to")) cfg.q_to = num("percolation.q_to");
    if (has("percolation.q_steps")) cfg.q_steps = std::uint32_t(whole("percolation.q_steps"));
    if (has("percolation.site_q_from")) cfg.site_q_from = num("percolation.site_q_from");
    if (has("percolation.site_q_to")) cfg.site_q_to = num("percolation.site_q_to");
    if (has("percolation.site_q_steps"))
        cfg.site_q_steps = std::uint32_t(whole("percolation.site_q_steps"));

    if (has("sweep.parameter")) cfg.sweep_parameter = str("sweep.parameter");
    if (has("sweep.from")) cfg.sweep_from = num("sweep.from");
    if (has("sweep.to")) cfg.sweep_to = num("sweep.to");
    if (has("sweep.steps")) cfg.sweep_steps = std::uint32_t(whole("sweep.steps"));

    if (has("household.pi")) cfg.household_pi = parse_list("household.pi", str("household.pi"));
    if (has("household.xi_bar")) cfg.household_xi_bar = num("household.xi_bar");

    if (has("cross.n_a")) cfg.cross_n_a = std::uint32_t(whole("cross.n_a"));
    if (has("cross.n_b")) cfg.cross_n_b = std::uint32_t(whole("cross.n_b"));
    if (has("cross.degree_a")) cfg.cross_degree_a = int(whole("cross.degree_a"));
    if (has("cross.degree_b")) cfg.cross_degree_b = int(whole("cross.degree_b"));
    if (has("cross.out_degree")) cfg.cross_out_degree = int(whole("cross.out_degree"));
    if (has("cross.m_obs")) cfg.cross_m_obs = std::uint32_t(whole("cross.m_obs"));
    if (has("cross.m_rew")) cfg.cross_m_rew = std::uint32_t(whole("cross.m_rew"));

    if (has("strategic.r_tilde")) cfg.strategic.r_tilde = num("strategic.r_tilde");
    if (has("strategic.graph_degree"))
        cfg.strategic_graph_degree = int(whole("strategic.graph_degree"));
    if (has("strategic.gossip_values") != has("strategic.gossip_probs"))
        throw ValidationError(
            "strategic.gossip_values and strategic.gossip_probs must be given together");
    if (has("strategic.gossip_values"))
        cfg.strategic.gossip_cost_pmf =
            CostPmf{parse_list("strategic.gossip_values", str("strategic.gossip_values")),
                    parse_list("strategic.gossip_probs", str("strategic.gossip_probs"))};
    if (has("strategic.reward_values") != has("strategic.reward_probs"))
        throw ValidationError(
            "strategic.reward_values and strategic.reward_probs must be given together");
    if (has("strategic.reward_values"))
        cfg.strategic.reward_cost_pmf =
            CostPmf{parse_list("strategic.reward_values", str("strategic.reward_values")),
                    parse_list("strategic.reward_probs", str("strategic.reward_probs"))};

    // A tabulated grid replaces the binomial-link family wholesale.
    if (has("degree.grid_file")) cfg.degrees = load_tabulated(str("degree.grid_file"));

    return cfg;
}

void ScenarioConfig::require_n() const {
    if (!has_n) throw ValidationError("missing required key: n");
}

void ScenarioConfig::validate_core() const {
    if (has_n && n < 100) throw ValidationError("n must be at least 100");
    if (replications < 1) throw ValidationError("replications must be at least 1");
    if (threads < 1) throw ValidationError("threads must be at least 1");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ValidationError("gamma must lie strictly between 0 and 1");
    prefs.validate();
    degrees.validate();
    audience.validate();
    percolation.validate();
}

void ScenarioConfig::validate_sweep() const {
    if (sweep_steps < 2) throw ValidationError("sweep.steps must be at least 2");
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x,
                             std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

void parallel_for(std::uint32_t count, int threads,
                  const std::function<void(std::uint32_t)>& fn) {
    int workers = std::min<int>(std::max(threads, 1), int(count));
    if (workers <= 1) {
        for (std::uint32_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint32_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    auto body = [&]() {
        for (;;) {
            std::uint32_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct McStats {
    double gc_mean = 0.0;
    double gc_se = 0.0;
    double p_hat = 0.0;
};

// One graph per replication at the equilibrium mixture; replication r of
// grid point `scenario` draws only from (master_seed, scenario, r).
McStats simulate_mixture(const ScenarioConfig& cfg, const EquilibriumReport& report,
                         std::uint64_t scenario, const PercolationParams* thin) {
    const std::uint32_t n = cfg.n;
    std::vector<DegreePmf> table = {pmf_at(cfg.degrees, report.high.t),
                                    pmf_at(cfg.degrees, report.low.t)};
    std::vector<std::uint32_t> type_of(n, 1);
    auto high_count = std::uint32_t(std::lround(report.f * double(n)));
    for (std::uint32_t i = 0; i < high_count && i < n; ++i) type_of[i] = 0;
    auto [m_obs, m_rew] = audience_sizes(n, cfg.audience);

    StreamKey scenario_key = master_key(cfg.master_seed).child(scenario);
    std::vector<double> gc(cfg.replications, 0.0);
    std::vector<double> hit(cfg.replications, 0.0);
    parallel_for(cfg.replications, cfg.threads, [&](std::uint32_t r) {
        auto rng = scenario_key.child(r).stream();
        auto seq = sample_degrees(table, type_of, rng);
        auto g = sample_configuration(seq, rng);
        if (thin) g = active_subgraph(g, *thin, rng);
        gc[r] = components(g).gc_fraction;
        hit[r] = reward_probability_mc(g, 0, m_obs, m_rew, 1, rng).p_hat;
    });

    McStats stats;
    for (std::uint32_t r = 0; r < cfg.replications; ++r) {
        stats.gc_mean += gc[r];
        stats.p_hat += hit[r];
    }
    stats.gc_mean /= double(cfg.replications);
    stats.p_hat /= double(cfg.replications);
    if (cfg.replications > 1) {
        double ss = 0.0;
        for (std::uint32_t r = 0; r < cfg.replications; ++r)
            ss += (gc[r] - stats.gc_mean) * (gc[r] - stats.gc_mean);
        stats.gc_se = std::sqrt(ss / double(cfg.replications - 1) /
                                double(cfg.replications));
    }
    return stats;
}

SweepRow make_row(double value, const EquilibriumReport& report, const McStats& mc) {
    SweepRow row;
    row.value = value;
    row.high = report.high;
    row.low = report.low;
    row.connectivity = report.connectivity;
    row.regime = report.regime;
    row.gc_mean = mc.gc_mean;
    row.gc_se = mc.gc_se;
    row.p_hat = mc.p_hat;
    row.u_h = report.u_h;
    row.u_l = report.u_l;
    row.v = report.v;
    row.gini = report.gini;
    if ((row.connectivity > 0.0) != (row.regime == Regime::Supercritical))
        throw ValidationError("sweep row regime contradicts its connectivity sign");
    return row;
}

double lerp_step(double from, double to, std::uint32_t step, std::uint32_t steps) {
    return from + (to - from) * double(step) / double(steps - 1);
}

} // namespace

std::vector<SweepRow> sweep_pi_h(const ScenarioConfig& cfg) {
    cfg.require_n();
    cfg.validate_core();
    cfg.validate_sweep();
    std::vector<SweepRow> rows;
    for (std::uint32_t s = 0; s < cfg.sweep_steps; ++s) {
        double value = lerp_step(cfg.sweep_from, cfg.sweep_to, s, cfg.sweep_steps);
        PreferenceSpec prefs = cfg.prefs;
        prefs.pi_h = value;
        auto report = solve_equilibrium(prefs, cfg.degrees, cfg.f);
        rows.push_back(make_row(value, report, simulate_mixture(cfg, report, s, nullptr)));
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.value < b.value; });
    return rows;
}

std::vector<SweepRow> sweep_f(const ScenarioConfig& cfg) {
    cfg.require_n();
    cfg.validate_core();
    cfg.validate_sweep();
    std::vector<SweepRow> rows;
    for (std::uint32_t s = 0; s < cfg.sweep_steps; ++s) {
        double value = lerp_step(cfg.sweep_from, cfg.sweep_to, s, cfg.sweep_steps);
        auto report = solve_equilibrium(cfg.prefs, cfg.degrees, value);
        rows.push_back(make_row(value, report, simulate_mixture(cfg, report, s, nullptr)));
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.value < b.value; });
    return rows;
}

std::vector<PercolationRow> sweep_percolation(const ScenarioConfig& cfg) {
    cfg.require_n();
    cfg.validate_core();
    if (cfg.q_steps < 2 || cfg.site_q_steps < 2)
        throw ValidationError("percolation grid needs at least 2 steps per axis");
    auto report = solve_equilibrium(cfg.prefs, cfg.degrees, cfg.f);
    std::vector<PercolationRow> rows;
    for (std::uint32_t qi = 0; qi < cfg.q_steps; ++qi) {
        for (std::uint32_t si = 0; si < cfg.site_q_steps; ++si) {
            PercolationParams params;
            params.q = lerp_step(cfg.q_from, cfg.q_to, qi, cfg.q_steps);
            params.Q = lerp_step(cfg.site_q_from, cfg.site_q_to, si, cfg.site_q_steps);
            params.validate();
            std::uint64_t scenario = std::uint64_t(qi) * cfg.site_q_steps + si;
            auto mc = simulate_mixture(cfg, report, scenario, &params);
            PercolationRow row;
            row.q = params.q;
            row.site_q = params.Q;
            row.chi_value = chi(report.mixture, params);
            row.regime = predicted_regime(report.mixture, params);
            row.gc_mean = mc.gc_mean;
            row.gc_se = mc.gc_se;
            row.p_hat = mc.p_hat;
            rows.push_back(row);
        }
    }
    return rows;
}

SweepRow run_single(const ScenarioConfig& cfg) {
    cfg.require_n();
    cfg.validate_core();
    auto report = solve_equilibrium(cfg.prefs, cfg.degrees, cfg.f);
    const PercolationParams* thin = nullptr;
    if (cfg.percolation.q != 0.0 || cfg.percolation.Q != 0.0) thin = &cfg.percolation;
    return make_row(cfg.prefs.pi_h, report, simulate_mixture(cfg, report, 0, thin));
}

namespace {

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write: " + path);
    for (const auto& line : lines) out << line << '\n';
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

std::vector<std::string> sweep_csv_lines(const std::string& parameter,
                                         const std::vector<SweepRow>& rows) {
    std::vector<std::string> lines;
    lines.push_back(parameter +
                    ",t_high,t_out_high,t_low,t_out_low,connectivity,regime,"
                    "gc_mean,gc_se,p_hat,u_high,u_low,v,gini");
    for (const auto& row : rows) {
        std::string line = format_double(row.value);
        line += "," + format_double(row.high.t);
        line += "," + format_double(row.high.t_out);
        line += "," + format_double(row.low.t);
        line += "," + format_double(row.low.t_out);
        line += "," + format_double(row.connectivity);
        line += std::string(",") + to_string(row.regime);
        line += "," + format_double(row.gc_mean);
        line += "," + format_double(row.gc_se);
        line += "," + format_double(row.p_hat);
        line += "," + format_double(row.u_h);
        line += "," + format_double(row.u_l);
        line += "," + format_double(row.v);
        line += "," + format_double(row.gini);
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> percolation_csv_lines(const std::vector<PercolationRow>& rows) {
    std::vector<std::string> lines;
    lines.push_back("q,Q,chi,regime,gc_mean,gc_se,p_hat");
    for (const auto& row : rows) {
        std::string line = format_double(row.q);
        line += "," + format_double(row.site_q);
        line += "," + format_double(row.chi_value);
        line += std::string(",") + to_string(row.regime);
        line += "," + format_double(row.gc_mean);
        line += "," + format_double(row.gc_se);
        line += "," + format_double(row.p_hat);
        lines.push_back(line);
    }
    return lines;
}

} // namespace

void emit_plot(const std::string& csv_path, const std::string& x_column,
               const std::vector<std::string>& y_columns,
               const std::string& out_path) {
    if (y_columns.empty()) throw ValidationError("no y columns requested");
    std::ifstream in(csv_path);
    if (!in) throw IoError("cannot open csv: " + csv_path);

    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("csv has no header: " + csv_path);
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(trim(cell));
    }
    auto column_index = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw ValidationError("column not in csv: " + name);
        return std::size_t(it - header.begin());
    };
    std::size_t xi = column_index(x_column);
    std::vector<std::size_t> yi;
    for (const auto& name : y_columns) yi.push_back(column_index(name));

    std::vector<double> xs;
    std::vector<std::vector<double>> ys(y_columns.size());
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < header.size())
            throw ValidationError(csv_path + ":" + std::to_string(lineno) +
                                  ": short row");
        auto cell_value = [&](std::size_t idx) {
            return parse_double(header[idx], trim(cells[idx]));
        };
        xs.push_back(cell_value(xi));
        for (std::size_t k = 0; k < yi.size(); ++k)
            ys[k].push_back(cell_value(yi[k]));
    }
    if (xs.empty()) throw ValidationError("csv has no data rows: " + csv_path);

    double x_min = xs[0], x_max = xs[0];
    for (double x : xs) {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
    }
    double y_min = ys[0][0], y_max = ys[0][0];
    for (const auto& col : ys)
        for (double y : col) {
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    if (x_max - x_min < 1e-300) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if (y_max - y_min < 1e-300) {
        y_min -= 0.5;
        y_max += 0.5;
    }

    const double left = 70, right = 760, top = 40, bottom = 430;
    auto px = [&](double x) {
        return left + (x - x_min) / (x_max - x_min) * (right - left);
    };
    auto py = [&](double y) {
        return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
    };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    const std::size_t palette_size = sizeof(palette) / sizeof(palette[0]);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
           "height=\"500\" viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg += "<line x1=\"70\" y1=\"430\" x2=\"760\" y2=\"430\" stroke=\"black\"/>\n";
    svg += "<line x1=\"70\" y1=\"40\" x2=\"70\" y2=\"430\" stroke=\"black\"/>\n";
    svg += "<text x=\"415\" y=\"478\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" + x_column + "</text>\n";
    std::string y_label;
    for (std::size_t k = 0; k < y_columns.size(); ++k) {
        if (k) y_label += ", ";
        y_label += y_columns[k];
    }
    svg += "<text x=\"70\" y=\"24\" font-family=\"sans-serif\" "
           "font-size=\"15\">" + y_label + "</text>\n";
    svg += "<text x=\"70\" y=\"450\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"12\">" + format_double(x_min) + "</text>\n";
    svg += "<text x=\"760\" y=\"450\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"12\">" + format_double(x_max) + "</text>\n";
    svg += "<text x=\"62\" y=\"434\" text-anchor=\"end\" "
           "font-family=\"sans-serif\" font-size=\"12\">" + format_double(y_min) + "</text>\n";
    svg += "<text x=\"62\" y=\"48\" text-anchor=\"end\" "
           "font-family=\"sans-serif\" font-size=\"12\">" + format_double(y_max) + "</text>\n";
    for (std::size_t k = 0; k < ys.size(); ++k) {
        const char* color = palette[k % palette_size];
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t p = 0; p < xs.size(); ++p) {
            if (p) svg += " ";
            svg += format_double(px(xs[p])) + "," + format_double(py(ys[k][p]));
        }
        svg += "\"/>\n";
        svg += "<text x=\"640\" y=\"" + std::to_string(60 + 18 * k) +
               "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"";
        svg += color;
        svg += "\">" + y_columns[k] + "</text>\n";
    }
    svg += "</svg>\n";

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write: " + out_path);
    out << svg;
    out.flush();
    if (!out) throw IoError("write failed: " + out_path);
}

namespace {

nlohmann::ordered_json module_versions() {
    nlohmann::ordered_json modules;
    for (const char* name : {"rng", "degree_model", "graph", "percolation",
                             "spread", "agents", "households", "extensions",
                             "runner"})
        modules[name] = "1.0.0";
    return modules;
}

} // namespace

std::vector<std::string> run_command(const ScenarioConfig& cfg,
                                     const std::string& command) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + cfg.out_dir);

    std::vector<std::string> outputs;
    nlohmann::ordered_json summary;
    summary["schema_version"] = 1;
    summary["command"] = command;
    summary["master_seed"] = cfg.master_seed;
    summary["gamma"] = cfg.gamma;
    summary["modules"] = module_versions();
    summary["stream_rule"] = "master(seed).child(scenario).child(replication)";

    auto emit = [&](const std::string& name, const std::vector<std::string>& lines) {
        std::string path = cfg.out_dir + "/" + name;
        write_lines(path, lines);
        outputs.push_back(path);
    };

    if (command == "simulate") {
        summary["n"] = cfg.n;
        summary["replications"] = cfg.replications;
        emit("simulate.csv", sweep_csv_lines("pi_h", {run_single(cfg)}));
    } else if (command == "sweep") {
        summary["n"] = cfg.n;
        summary["replications"] = cfg.replications;
        summary["sweep_parameter"] = cfg.sweep_parameter;
        std::vector<SweepRow> rows;
        if (cfg.sweep_parameter == "pi_h")
            rows = sweep_pi_h(cfg);
        else if (cfg.sweep_parameter == "f")
            rows = sweep_f(cfg);
        else
            throw ValidationError("unknown sweep parameter: " + cfg.sweep_parameter);
        emit("sweep.csv", sweep_csv_lines(cfg.sweep_parameter, rows));
    } else if (command == "percolation") {
        summary["n"] = cfg.n;
        summary["replications"] = cfg.replications;
        emit("percolation.csv", percolation_csv_lines(sweep_percolation(cfg)));
    } else if (command == "household") {
        cfg.prefs.validate();
        cfg.degrees.validate();
        auto game = make_household_game(cfg.prefs, cfg.degrees, cfg.household_pi,
                                        cfg.household_xi_bar);
        auto result = classify_equilibrium(game);
        summary["household_case"] = to_string(result.tag);
        summary["multiple_equilibria"] = result.multiple;
        std::vector<std::string> lines;
        lines.push_back("household,pi,t_hat,t_max,witness_t,case");
        for (std::size_t h = 0; h < game.H; ++h) {
            std::string line = std::to_string(h);
            line += "," + format_double(cfg.household_pi[h]);
            line += "," + format_double(game.t_hat[h]);
            line += "," + format_double(game.t_max[h]);
            line += "," + format_double(result.witness[h]);
            line += std::string(",") + to_string(result.tag);
            lines.push_back(line);
        }
        emit("household.csv", lines);
    } else if (command == "cross-community") {
        std::uint32_t n_a = cfg.cross_n_a, n_b = cfg.cross_n_b;
        if (n_a == 0 || n_b == 0) {
            cfg.require_n();
            if (n_a == 0) n_a = cfg.n;
            if (n_b == 0) n_b = cfg.n;
        }
        auto pad = [](int d) { return point_mass(d, std::max(4, d)); };
        CrossCommunitySpec spec;
        spec.pmf_a = pad(cfg.cross_degree_a);
        spec.pmf_b = pad(cfg.cross_degree_b);
        spec.out_pmf = pad(cfg.cross_out_degree);
        spec.n_a = n_a;
        spec.n_b = n_b;
        auto rng = master_key(cfg.master_seed).child(0).child(0).stream();
        auto est = cross_membership_reward(spec, cfg.cross_m_obs, cfg.cross_m_rew,
                                           cfg.replications, rng);
        summary["replications"] = cfg.replications;
        std::vector<std::string> lines;
        lines.push_back("n_a,n_b,degree_a,degree_b,out_degree,m_obs,m_rew,"
                        "replications,p_hat,std_err");
        std::string line = std::to_string(n_a);
        line += "," + std::to_string(n_b);
        line += "," + std::to_string(cfg.cross_degree_a);
        line += "," + std::to_string(cfg.cross_degree_b);
        line += "," + std::to_string(cfg.cross_out_degree);
        line += "," + std::to_string(cfg.cross_m_obs);
        line += "," + std::to_string(cfg.cross_m_rew);
        line += "," + std::to_string(cfg.replications);
        line += "," + format_double(est.p_hat);
        line += "," + format_double(est.std_err);
        lines.push_back(line);
        emit("cross_community.csv", lines);
    } else if (command == "classify-spreading") {
        cfg.require_n();
        cfg.strategic.validate();
        auto rng = master_key(cfg.master_seed).child(0).child(0).stream();
        auto pmf = point_mass(cfg.strategic_graph_degree,
                              std::max(4, cfg.strategic_graph_degree));
        auto seq = sample_degrees(pmf, cfg.n, rng);
        auto g = sample_configuration(seq, rng);
        auto costs = realize_costs(cfg.strategic, g, rng);
        auto verdict = classify_spreading_equilibria(g, costs, cfg.strategic.r_tilde);
        summary["thresholded"] = verdict.thresholded;
        summary["zero_cost_only"] = verdict.zero_cost_only;
        std::vector<std::string> lines;
        lines.push_back(
            "n,graph_degree,r_tilde,gc_affordable,gc_free,thresholded,zero_cost_only");
        std::string line = std::to_string(cfg.n);
        line += "," + std::to_string(cfg.strategic_graph_degree);
        line += "," + format_double(cfg.strategic.r_tilde);
        line += "," + format_double(verdict.gc_affordable);
        line += "," + format_double(verdict.gc_free);
        line += std::string(",") + (verdict.thresholded ? "1" : "0");
        line += std::string(",") + (verdict.zero_cost_only ? "1" : "0");
        lines.push_back(line);
        emit("classify_spreading.csv", lines);
    } else {
        throw ValidationError("unknown command: " + command);
    }

    nlohmann::ordered_json names = nlohmann::ordered_json::array();
    for (const auto& path : outputs)
        names.push_back(fs::path(path).filename().string());
    summary["outputs"] = names;
    std::string summary_path = cfg.out_dir + "/summary.json";
    write_lines(summary_path, {summary.dump(2)});
    outputs.push_back(summary_path);
    return outputs;
}

} // namespace fabriclab
