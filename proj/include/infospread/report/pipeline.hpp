#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "infospread/common/error.hpp"
#include "infospread/report/config.hpp"

namespace infospread::report {

enum class Stage { ingest, engagement, causality, topics, dedup, report };

inline constexpr Stage kAllStages[] = {Stage::ingest, Stage::engagement, Stage::causality,
                                       Stage::topics, Stage::dedup,      Stage::report};

[[nodiscard]] std::string_view to_string(Stage s) noexcept;
[[nodiscard]] std::optional<Stage> parse_stage(std::string_view name) noexcept;

/// Artifacts a stage writes, relative to the output directory.
[[nodiscard]] const std::vector<std::string>& stage_outputs(Stage s);

/// Every artifact of a full run, excluding manifest.json and timings.tsv.
[[nodiscard]] std::vector<std::string> all_artifacts();

struct StageRecord {
    std::string status;  // "ok" or "failed"
    std::string error;
    /// Input label or relative artifact path -> SHA-256.
    std::map<std::string, std::string> inputs;
    std::map<std::string, std::string> outputs;
};

/// Provenance of the artifacts in one output directory. Timings live in a
/// separate timings.tsv so the manifest itself stays byte-stable.
struct RunManifest {
    std::string config_hash;
    std::string toolkit_version;
    std::string rng_version;
    std::uint64_t seed = 0;
    std::map<std::string, StageRecord> stages;

    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] static RunManifest from_json(const nlohmann::json& j);
};

/// A missing upstream artifact; names the stage that produces it.
class MissingArtifact : public Error {
public:
    using Error::Error;
};

/// Runs stages against one output directory. Stages read only files the
/// earlier stages wrote, so each can be rerun on its own.
class Pipeline {
public:
    /// `seed` and `out_dir` override the config when given. A relative
    /// out_dir is taken as is (relative to the working directory).
    explicit Pipeline(PipelineConfig config, std::optional<std::uint64_t> seed = std::nullopt,
                      std::optional<std::filesystem::path> out_dir = std::nullopt);

    /// Runs one stage and rewrites manifest.json. On failure the manifest
    /// records the error and the exception propagates.
    void run(Stage stage);
    /// All stages in dependency order; halts at the first failure.
    void run_all();

    [[nodiscard]] const RunManifest& manifest() const noexcept { return manifest_; }
    [[nodiscard]] const std::filesystem::path& out_dir() const noexcept { return out_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

private:
    void run_ingest(StageRecord& rec);
    void run_engagement(StageRecord& rec);
    void run_causality(StageRecord& rec);
    void run_topics(StageRecord& rec);
    void run_dedup(StageRecord& rec);
    void run_report(StageRecord& rec);

    void write_manifest() const;
    void append_timing(Stage stage, double seconds) const;

    PipelineConfig config_;
    std::uint64_t seed_;
    std::filesystem::path out_;
    RunManifest manifest_;
};

}  // namespace infospread::report
