// Command-line front end: toolkit <subcommand> --config <path> [--seed N] [--out DIR]
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "infospread/common/error.hpp"
#include "infospread/report/config.hpp"
#include "infospread/report/pipeline.hpp"
#include "infospread/version.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
};

}  // namespace

int main(int argc, char** argv) {
    using namespace infospread;
    CLI::App app{"Disinformation vs debunk spread analysis toolkit"};
    app.set_version_flag("--version", std::string(kToolkitVersion));
    app.require_subcommand(1);

    Options opts;
    std::string chosen;
    const std::pair<const char*, const char*> commands[] = {
        {"ingest", "Load, filter and match debunks and posts"},
        {"engagement", "Engagement metrics, lags, hashtags, countries and daily series"},
        {"causality", "ADF, VAR, Granger tests, impulse responses and FEVD"},
        {"topics", "K-means topic clusters, c-TF-IDF and cluster timelines"},
        {"dedup", "Duplicate debunk detection"},
        {"report", "Render SVG plots from stage artifacts"},
        {"all", "Run every stage in order"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config, "Pipeline config (YAML)")->required();
        sub->add_option("--seed", opts.seed, "Override the config seed");
        sub->add_option("--out", opts.out, "Override the output directory");
        sub->callback([&chosen, n = std::string(name)] { chosen = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        auto config = report::load_config(opts.config);
        std::optional<std::filesystem::path> out;
        if (opts.out) {
            out = std::filesystem::path(*opts.out);
        }
        report::Pipeline pipeline(std::move(config), opts.seed, out);
        if (chosen == "all") {
            pipeline.run_all();
        } else {
            pipeline.run(*report::parse_stage(chosen));
        }
        std::cerr << chosen << ": ok, artifacts in " << pipeline.out_dir().string() << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error (" << chosen << "): " << e.what() << "\n";
        return kExitRuntime;
    }
}
