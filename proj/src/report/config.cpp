#include "infospread/report/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <map>
#include <set>

#include "infospread/common/error.hpp"
#include "infospread/common/files.hpp"

namespace infospread::report {

std::string_view to_string(VarInput v) noexcept {
    switch (v) {
        case VarInput::raw:
            return "raw";
        case VarInput::rolling:
            return "rolling";
        case VarInput::log:
            return "log";
    }
    return "raw";
}

namespace {

// Collects problems instead of stopping at the first one.
class Reader {
public:
    Reader(const YAML::Node& root, std::filesystem::path base) : root_(root), base_(std::move(base)) {}

    std::vector<std::string> errors;

    [[nodiscard]] YAML::Node node(const std::string& dotted) const {
        YAML::Node cur;
        cur.reset(root_);
        std::size_t start = 0;
        while (start <= dotted.size()) {
            const auto dot = dotted.find('.', start);
            const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
            if (!cur.IsMap() || !cur[key]) {
                return YAML::Node(YAML::NodeType::Undefined);
            }
            const YAML::Node child = cur[key];
            cur.reset(child);
            if (dot == std::string::npos) {
                break;
            }
            start = dot + 1;
        }
        return cur;
    }

    template <typename T>
    void get(const std::string& key, T& out) {
        const YAML::Node n = node(key);
        if (!n.IsDefined() || n.IsNull()) {
            return;
        }
        try {
            out = n.as<T>();
        } catch (const YAML::Exception&) {
            errors.push_back(key + ": invalid value '" + YAML::Dump(n) + "'");
        }
    }

    void date(const std::string& key, Date& out) {
        std::string text;
        get(key, text);
        if (text.empty()) {
            return;
        }
        try {
            out = parse_date(text);
        } catch (const FormatError&) {
            errors.push_back(key + ": invalid date '" + text + "' (want YYYY-MM-DD)");
        }
    }

    std::optional<std::filesystem::path> path(const std::string& key, bool required) {
        std::string text;
        get(key, text);
        if (text.empty()) {
            if (required) {
                errors.push_back(key + ": required path missing");
            }
            return std::nullopt;
        }
        std::filesystem::path p(text);
        if (p.is_relative()) {
            p = base_ / p;
        }
        p = p.lexically_normal();
        if (!std::filesystem::is_regular_file(p)) {
            errors.push_back(key + ": file not found: " + p.string());
        }
        return p;
    }

    [[nodiscard]] const std::filesystem::path& base() const noexcept { return base_; }

private:
    YAML::Node root_;
    std::filesystem::path base_;
};

constexpr const char* kKnownKeys[] = {"inputs", "window", "alpha", "seed", "output", "timeseries",
                                      "engagement", "causality", "topics", "dedup"};

const std::map<std::string, std::vector<std::string>> kSectionKeys{
    {"inputs", {"claimreview", "euvsdisinfo", "posts", "keywords", "embeddings", "gazetteer"}},
    {"window", {"start", "end"}},
    {"timeseries", {"rolling_window", "include_retweets"}},
    {"engagement", {"top_hashtags", "crosstab_rows", "top_domains", "lag_bin_width"}},
    {"causality", {"input", "max_lag", "lag", "horizon", "bootstrap_draws", "adf_regression",
                   "difference_if_nonstationary"}},
    {"topics", {"k", "k_range", "max_iter", "top_words", "lexical_dimension"}},
    {"dedup", {"threshold", "sweep"}},
};

}  // namespace

PipelineConfig parse_config(std::string_view yaml, const std::filesystem::path& base_dir) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml));
    } catch (const YAML::Exception& e) {
        throw ConfigError("config: YAML parse error: " + std::string(e.what()));
    }
    if (!root.IsMap()) {
        throw ConfigError("config: top level must be a mapping");
    }
    PipelineConfig c;
    c.config_text = std::string(yaml);
    Reader r(root, base_dir);

    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys)) {
            r.errors.push_back(key + ": unknown key");
            continue;
        }
        const auto section = kSectionKeys.find(key);
        if (section == kSectionKeys.end()) {
            continue;
        }
        if (!kv.second.IsMap()) {
            r.errors.push_back(key + ": expected a mapping");
            continue;
        }
        for (const auto& child : kv.second) {
            const auto name = child.first.as<std::string>();
            if (std::find(section->second.begin(), section->second.end(), name) == section->second.end()) {
                r.errors.push_back(key + "." + name + ": unknown key");
            }
        }
    }

    c.claimreview = r.path("inputs.claimreview", false);
    c.euvsdisinfo = r.path("inputs.euvsdisinfo", false);
    if (!r.node("inputs.claimreview").IsDefined() && !r.node("inputs.euvsdisinfo").IsDefined()) {
        r.errors.push_back("inputs: need at least one of inputs.claimreview, inputs.euvsdisinfo");
    }
    if (auto p = r.path("inputs.posts", true)) {
        c.posts = *p;
    }
    if (auto p = r.path("inputs.keywords", true)) {
        c.keywords = *p;
    }
    c.embeddings = r.path("inputs.embeddings", false);
    if (r.node("inputs.gazetteer").IsDefined()) {
        if (auto p = r.path("inputs.gazetteer", true)) {
            c.gazetteer = *p;
        }
    } else {
        c.gazetteer = std::filesystem::path(INFOSPREAD_DATA_DIR) / "gazetteer.tsv";
        if (!std::filesystem::is_regular_file(c.gazetteer)) {
            r.errors.push_back("inputs.gazetteer: bundled gazetteer not found at " + c.gazetteer.string());
        }
    }

    r.date("window.start", c.window.first);
    r.date("window.end", c.window.last);
    r.get("alpha", c.alpha);
    r.get("seed", c.seed);
    std::string out;
    r.get("output", out);
    if (!out.empty()) {
        c.output = std::filesystem::path(out).is_relative() ? base_dir / out : std::filesystem::path(out);
    } else {
        c.output = base_dir / c.output;
    }

    r.get("timeseries.rolling_window", c.rolling_window);
    r.get("timeseries.include_retweets", c.include_retweets);
    r.get("engagement.top_hashtags", c.top_hashtags);
    r.get("engagement.crosstab_rows", c.crosstab_rows);
    r.get("engagement.top_domains", c.top_domains);
    r.get("engagement.lag_bin_width", c.lag_bin_width);

    std::string input;
    r.get("causality.input", input);
    if (input == "raw" || input.empty()) {
        c.var_input = VarInput::raw;
    } else if (input == "rolling") {
        c.var_input = VarInput::rolling;
    } else if (input == "log") {
        c.var_input = VarInput::log;
    } else {
        r.errors.push_back("causality.input: expected raw, rolling or log, got '" + input + "'");
    }
    r.get("causality.max_lag", c.max_lag);
    if (r.node("causality.lag").IsDefined()) {
        std::size_t lag = 0;
        r.get("causality.lag", lag);
        c.lag = lag;
    }
    r.get("causality.horizon", c.horizon);
    r.get("causality.bootstrap_draws", c.bootstrap_draws);
    std::string regression;
    r.get("causality.adf_regression", regression);
    if (regression == "c" || regression.empty()) {
        c.adf_regression = timeseries::AdfRegression::constant;
    } else if (regression == "ct") {
        c.adf_regression = timeseries::AdfRegression::constant_and_trend;
    } else {
        r.errors.push_back("causality.adf_regression: expected c or ct, got '" + regression + "'");
    }
    r.get("causality.difference_if_nonstationary", c.difference_if_nonstationary);

    if (r.node("topics.k_range").IsDefined()) {
        std::vector<std::size_t> range;
        r.get("topics.k_range", range);
        if (range.size() != 2) {
            r.errors.push_back("topics.k_range: expected [min, max]");
        } else {
            c.k_min = range[0];
            c.k_max = range[1];
            c.k.reset();
        }
        if (r.node("topics.k").IsDefined()) {
            r.errors.push_back("topics: give either k or k_range, not both");
        }
    } else {
        std::size_t k = *c.k;
        r.get("topics.k", k);
        c.k = k;
    }
    r.get("topics.max_iter", c.max_iter);
    r.get("topics.top_words", c.top_words);
    r.get("topics.lexical_dimension", c.lexical_dimension);
    r.get("dedup.threshold", c.dedup_threshold);
    r.get("dedup.sweep", c.dedup_sweep);

    // Range checks.
    if (!c.window.valid()) {
        r.errors.push_back("window: end precedes start");
    }
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) {
        r.errors.push_back("alpha: must lie in (0, 1)");
    }
    if (c.rolling_window < 1) {
        r.errors.push_back("timeseries.rolling_window: must be >= 1");
    }
    if (c.top_hashtags < 1 || c.crosstab_rows < 1 || c.top_domains < 1) {
        r.errors.push_back("engagement: top_hashtags, crosstab_rows and top_domains must be >= 1");
    }
    if (!(c.lag_bin_width > 0.0)) {
        r.errors.push_back("engagement.lag_bin_width: must be > 0");
    }
    if (c.max_lag < 1) {
        r.errors.push_back("causality.max_lag: must be >= 1");
    }
    if (c.lag && *c.lag < 1) {
        r.errors.push_back("causality.lag: must be >= 1");
    }
    if (c.horizon < 1) {
        r.errors.push_back("causality.horizon: must be >= 1");
    }
    if (c.k && *c.k < 2) {
        r.errors.push_back("topics.k: must be >= 2");
    }
    if (!c.k && (c.k_min < 2 || c.k_max < c.k_min)) {
        r.errors.push_back("topics.k_range: need 2 <= min <= max");
    }
    if (c.max_iter < 1) {
        r.errors.push_back("topics.max_iter: must be >= 1");
    }
    if (c.top_words < 1 || c.lexical_dimension < 1) {
        r.errors.push_back("topics: top_words and lexical_dimension must be >= 1");
    }
    if (!(c.dedup_threshold > 0.0 && c.dedup_threshold <= 1.0)) {
        r.errors.push_back("dedup.threshold: must lie in (0, 1]");
    }
    for (double t : c.dedup_sweep) {
        if (!(t > 0.0 && t <= 1.0)) {
            r.errors.push_back("dedup.sweep: thresholds must lie in (0, 1]");
            break;
        }
    }

    if (!r.errors.empty()) {
        std::string msg = "config has " + std::to_string(r.errors.size()) + " problem(s):";
        for (const auto& e : r.errors) {
            msg += "\n  " + e;
        }
        throw ConfigError(msg);
    }
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    if (!std::filesystem::is_regular_file(path)) {
        throw ConfigError("config file not found: " + path.string());
    }
    PipelineConfig c = parse_config(files::read_text(path), path.parent_path().empty() ? "." : path.parent_path());
    c.config_path = path;
    return c;
}

}  // namespace infospread::report
