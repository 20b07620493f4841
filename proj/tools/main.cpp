#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecpp/io.hpp"
#include "ecpp/pipeline.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& out_override,
            unsigned seed, bool has_seed, bool quiet) {
    ecpp::RunConfig config = ecpp::RunConfig::from_json_file(config_path);
    if (!out_override.empty()) config.output_dir = out_override;
    if (has_seed) config.seed = seed;
    config.quiet = quiet;

    const ecpp::RunResult result = ecpp::run(config);
    for (const std::string& w : result.warnings) std::cerr << "warning: " << w << "\n";
    if (!quiet) {
        std::cout << result.summary;
        std::cout << "wrote " << result.files.size() << " files to "
                  << config.output_dir << "\n";
    }
    return result.any_ok() ? 0 : 3;
}

int cmd_compare(const std::vector<std::string>& report_paths) {
    std::vector<ecpp::CoverageReport> reports;
    for (const std::string& p : report_paths)
        reports.push_back(ecpp::report_from_json(ecpp::read_text_file(p)));
    std::cout << ecpp::format_comparison(ecpp::compare(reports));
    return 0;
}

int cmd_validate(const std::string& config_path) {
    ecpp::RunConfig::from_json_file(config_path);
    std::cout << "config ok: " << config_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge-coverage path planning for mowing robots"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    unsigned seed = 0;
    bool quiet = false;
    std::vector<std::string> report_paths;

    CLI::App* run = app.add_subcommand("run", "Run the planning pipeline");
    run->add_option("config", config_path, "Config JSON file")->required();
    run->add_option("--out", out_override, "Output directory override");
    CLI::Option* seed_opt =
        run->add_option("--seed", seed, "Seed for randomized corpora (reserved)");
    run->add_flag("--quiet", quiet, "Suppress the summary table");

    CLI::App* cmp = app.add_subcommand("compare", "Compare coverage reports");
    cmp->add_option("reports", report_paths, "Report JSON files")
        ->required()
        ->expected(-2);

    CLI::App* val = app.add_subcommand("validate", "Validate a config file");
    val->add_option("config", config_path, "Config JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, out_override, seed,
                           seed_opt->count() > 0, quiet);
        if (cmp->parsed()) return cmd_compare(report_paths);
        if (val->parsed()) return cmd_validate(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
