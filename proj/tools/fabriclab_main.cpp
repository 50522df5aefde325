#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fabriclab/errors.hpp"
#include "fabriclab/runner.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Community fabric simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_dir;
    auto* config_opt = app.add_option("--config", config_path, "Config file (key = value lines)");
    auto* seed_opt = app.add_option("--seed", seed, "Master seed override");
    auto* threads_opt = app.add_option("--threads", threads, "Worker thread count");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory");

    for (const char* name : {"simulate", "sweep", "percolation", "household",
                             "cross-community", "classify-spreading"})
        app.add_subcommand(name);

    auto* plot = app.add_subcommand("plot", "Render CSV columns as an SVG line chart");
    std::string plot_csv, plot_x, plot_y, plot_svg = "plot.svg";
    plot->add_option("--csv", plot_csv, "Input CSV")->required();
    plot->add_option("--x", plot_x, "X-axis column")->required();
    plot->add_option("--y", plot_y, "Comma-separated y columns")->required();
    plot->add_option("--svg", plot_svg, "Output SVG path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::string command = app.get_subcommands().front()->get_name();
        if (command == "plot") {
            fabriclab::emit_plot(plot_csv, plot_x, split_commas(plot_y), plot_svg);
            std::cout << "wrote " << plot_svg << "\n";
            return 0;
        }

        fabriclab::ScenarioConfig cfg;
        if (config_opt->count()) cfg = fabriclab::load_config(config_path);
        if (seed_opt->count()) cfg.master_seed = seed;
        if (threads_opt->count()) cfg.threads = threads;
        if (out_opt->count()) cfg.out_dir = out_dir;

        for (const auto& path : fabriclab::run_command(cfg, command))
            std::cout << "wrote " << path << "\n";
        return 0;
    } catch (const fabriclab::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
