#include "infospread/report/pipeline.hpp"

#include <chrono>
#include <fstream>

#include "infospread/common/files.hpp"
#include "infospread/common/rng.hpp"
#include "infospread/version.hpp"

namespace infospread::report {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Stage s) noexcept {
    switch (s) {
        case Stage::ingest: return "ingest";
        case Stage::engagement: return "engagement";
        case Stage::causality: return "causality";
        case Stage::topics: return "topics";
        case Stage::dedup: return "dedup";
        case Stage::report: return "report";
    }
    return "ingest";
}

std::optional<Stage> parse_stage(std::string_view name) noexcept {
    for (Stage s : kAllStages) {
        if (to_string(s) == name) {
            return s;
        }
    }
    return std::nullopt;
}

const std::vector<std::string>& stage_outputs(Stage s) {
    static const std::map<Stage, std::vector<std::string>> outputs{
        {Stage::ingest,
         {"ingest/debunks.jsonl", "ingest/posts_matched.jsonl", "ingest/rejects.csv", "ingest/domains.csv",
          "ingest/diagnostics.json"}},
        {Stage::engagement,
         {"engagement/metrics.csv", "engagement/lag_days.csv", "engagement/lag_histogram.csv",
          "engagement/hashtags.csv", "engagement/countries.csv", "engagement/summary.json", "timeseries/daily.csv",
          "timeseries/rolling.csv"}},
        {Stage::causality, {"causality/results.json", "causality/irf.csv", "causality/fevd.csv"}},
        {Stage::topics,
         {"topics/assignments.csv", "topics/clusters.csv", "topics/top_words.csv", "topics/similarity.csv",
          "topics/timeline.csv", "topics/k_selection.csv", "topics/summary.json"}},
        {Stage::dedup, {"dedup/pairs.csv", "dedup/timeline.csv", "dedup/sweep.csv", "dedup/summary.json"}},
        {Stage::report,
         {"plots/series_stacked.svg", "plots/lag_histogram.svg", "plots/irf_grid.svg", "plots/fevd_stacked.svg",
          "plots/cluster_timeline.svg", "plots/cluster_similarity.svg"}},
    };
    return outputs.at(s);
}

std::vector<std::string> all_artifacts() {
    std::vector<std::string> out;
    for (Stage s : kAllStages) {
        const auto& o = stage_outputs(s);
        out.insert(out.end(), o.begin(), o.end());
    }
    return out;
}

json RunManifest::to_json() const {
    json stages_json = json::object();
    for (const auto& [name, rec] : stages) {
        json r{{"status", rec.status}, {"inputs", rec.inputs}, {"outputs", rec.outputs}};
        if (!rec.error.empty()) {
            r["error"] = rec.error;
        }
        stages_json[name] = std::move(r);
    }
    return json{{"config_hash", config_hash},
                {"toolkit_version", toolkit_version},
                {"rng_version", rng_version},
                {"seed", seed},
                {"stages", std::move(stages_json)}};
}

RunManifest RunManifest::from_json(const json& j) {
    RunManifest m;
    m.config_hash = j.at("config_hash").get<std::string>();
    m.toolkit_version = j.at("toolkit_version").get<std::string>();
    m.rng_version = j.at("rng_version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [name, r] : j.at("stages").items()) {
        StageRecord rec;
        rec.status = r.at("status").get<std::string>();
        rec.error = r.value("error", "");
        rec.inputs = r.at("inputs").get<std::map<std::string, std::string>>();
        rec.outputs = r.at("outputs").get<std::map<std::string, std::string>>();
        m.stages[name] = std::move(rec);
    }
    return m;
}

Pipeline::Pipeline(PipelineConfig config, std::optional<std::uint64_t> seed, std::optional<fs::path> out_dir)
    : config_(std::move(config)), seed_(seed.value_or(config_.seed)), out_(out_dir.value_or(config_.output)) {
    manifest_.config_hash = files::sha256_hex(config_.config_text + "\nseed=" + std::to_string(seed_));
    manifest_.toolkit_version = std::string(kToolkitVersion);
    manifest_.rng_version = std::string(Rng::kVersion);
    manifest_.seed = seed_;
    // Keep the records of stages run earlier against the same config and seed.
    const fs::path existing = out_ / "manifest.json";
    if (fs::is_regular_file(existing)) {
        try {
            RunManifest old = RunManifest::from_json(json::parse(files::read_text(existing)));
            if (old.config_hash == manifest_.config_hash && old.toolkit_version == manifest_.toolkit_version) {
                manifest_.stages = std::move(old.stages);
            }
        } catch (const std::exception&) {
            // Unreadable manifest: start over.
        }
    }
}

void Pipeline::run(Stage stage) {
    fs::create_directories(out_);
    StageRecord rec;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        switch (stage) {
            case Stage::ingest: run_ingest(rec); break;
            case Stage::engagement: run_engagement(rec); break;
            case Stage::causality: run_causality(rec); break;
            case Stage::topics: run_topics(rec); break;
            case Stage::dedup: run_dedup(rec); break;
            case Stage::report: run_report(rec); break;
        }
        rec.status = "ok";
    } catch (const std::exception& e) {
        rec.status = "failed";
        rec.error = e.what();
        manifest_.stages[std::string(to_string(stage))] = std::move(rec);
        write_manifest();
        throw;
    }
    manifest_.stages[std::string(to_string(stage))] = std::move(rec);
    write_manifest();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    append_timing(stage, elapsed.count());
}

void Pipeline::run_all() {
    // One worker: stages run in dependency order.
    for (Stage s : kAllStages) {
        run(s);
    }
}

void Pipeline::write_manifest() const {
    files::write_atomic(out_ / "manifest.json", manifest_.to_json().dump(2) + "\n");
}

void Pipeline::append_timing(Stage stage, double seconds) const {
    const fs::path path = out_ / "timings.tsv";
    const bool fresh = !fs::exists(path);
    std::ofstream out(path, std::ios::app);
    if (fresh) {
        out << "stage\tseconds\n";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", seconds);
    out << to_string(stage) << '\t' << buf << '\n';
}

}  // namespace infospread::report
