#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "infospread/causality/granger.hpp"
#include "infospread/causality/irf.hpp"
#include "infospread/causality/var.hpp"
#include "infospread/common/csv.hpp"
#include "infospread/common/files.hpp"
#include "infospread/common/rng.hpp"
#include "infospread/dedup/dedup.hpp"
#include "infospread/engagement/engagement.hpp"
#include "infospread/ingest/filter.hpp"
#include "infospread/ingest/gazetteer.hpp"
#include "infospread/ingest/loaders.hpp"
#include "infospread/ingest/matching.hpp"
#include "infospread/ingest/url.hpp"
#include "infospread/report/pipeline.hpp"
#include "infospread/report/plots.hpp"
#include "infospread/timeseries/adf.hpp"
#include "infospread/timeseries/series.hpp"
#include "infospread/topics/ctfidf.hpp"
#include "infospread/topics/embeddings.hpp"
#include "infospread/topics/kmeans.hpp"
#include "infospread/topics/timeline.hpp"

namespace infospread::report {

namespace fs = std::filesystem;
using nlohmann::json;
using ingest::DebunkRecord;
using ingest::MatchedPost;
using ingest::StreamLabel;

namespace {

constexpr const char* kDisinfo = "disinformation";
constexpr const char* kDebunk = "debunk";

// Reads upstream artifacts and writes this stage's, recording digests.
class StageIo {
public:
    StageIo(const fs::path& out, StageRecord& rec) : out_(out), rec_(rec) {}

    std::string read(const std::string& rel, Stage producer) {
        const fs::path p = out_ / rel;
        if (!fs::is_regular_file(p)) {
            throw MissingArtifact("missing artifact " + rel + "; run `toolkit " + std::string(to_string(producer)) +
                                  "` first");
        }
        std::string text = files::read_text(p);
        rec_.inputs[rel] = files::sha256_hex(text);
        return text;
    }

    void input_file(const std::string& label, const fs::path& path) {
        rec_.inputs[label] = files::sha256_file(path);
    }

    void write(const std::string& rel, std::string_view content) {
        const fs::path p = out_ / rel;
        fs::create_directories(p.parent_path());
        files::write_atomic(p, content);
        rec_.outputs[rel] = files::sha256_hex(content);
    }

    void write_json(const std::string& rel, const json& j) { write(rel, j.dump(2) + "\n"); }

private:
    const fs::path& out_;
    StageRecord& rec_;
};

std::vector<DebunkRecord> read_debunks(StageIo& io) {
    std::vector<DebunkRecord> out;
    const std::string text = io.read("ingest/debunks.jsonl", Stage::ingest);
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        if (end > start) {
            out.push_back(ingest::debunk_from_json(json::parse(text.substr(start, end - start))));
        }
        start = end + 1;
    }
    return out;
}

struct Streams {
    std::vector<MatchedPost> disinformation;
    std::vector<MatchedPost> debunk;
};

Streams read_posts(StageIo& io) {
    Streams s;
    const std::string text = io.read("ingest/posts_matched.jsonl", Stage::ingest);
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        if (end > start) {
            MatchedPost p = ingest::matched_post_from_json(json::parse(text.substr(start, end - start)));
            (p.label == StreamLabel::disinformation ? s.disinformation : s.debunk).push_back(std::move(p));
        }
        start = end + 1;
    }
    return s;
}

std::vector<ingest::PostRecord> plain(const std::vector<MatchedPost>& posts) {
    std::vector<ingest::PostRecord> out;
    out.reserve(posts.size());
    for (const auto& p : posts) {
        out.push_back(p.post);
    }
    return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// Claim embeddings from the configured file, or the lexical fallback.
topics::EmbeddingSet claim_embeddings(const PipelineConfig& config, const std::vector<DebunkRecord>& debunks,
                                      StageIo& io, std::string& source) {
    std::vector<std::string> ids;
    for (const auto& d : debunks) {
        ids.push_back(d.id);
    }
    if (config.embeddings) {
        io.input_file("embeddings", *config.embeddings);
        const auto set = topics::load_embeddings(*config.embeddings);
        std::vector<std::string> missing;
        for (const auto& id : ids) {
            if (!set.contains(id)) {
                missing.push_back(id);
            }
        }
        if (!missing.empty()) {
            std::string msg = "embeddings file lacks " + std::to_string(missing.size()) + " debunk id(s):";
            for (std::size_t i = 0; i < std::min<std::size_t>(missing.size(), 5); ++i) {
                msg += " " + missing[i];
            }
            throw PreconditionError(msg);
        }
        source = "file";
        return set.subset(ids);
    }
    std::map<std::string, std::string> texts;
    for (const auto& d : debunks) {
        texts[d.id] = d.filter_text();
    }
    source = "lexical";
    return topics::LexicalEmbedder(config.lexical_dimension).embed(texts);
}

json adf_json(const std::string& series, const std::string& stage, const timeseries::AdfReport& r) {
    json j{{"series", series},
           {"stage", stage},
           {"statistic", r.test_statistic},
           {"p_value", r.p_value},
           {"lags_used", r.n_lags_used},
           {"n_obs", r.n_obs},
           {"critical_values", {{"1%", r.critical_values[0]}, {"5%", r.critical_values[1]}, {"10%", r.critical_values[2]}}}};
    j["stationary_at"] = r.stationary_at ? json(*r.stationary_at) : json(nullptr);
    return j;
}

csv::Table read_table(StageIo& io, const std::string& rel, Stage producer) {
    return csv::Table(csv::parse(io.read(rel, producer)));
}

double to_double(const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw FormatError("expected a number, got '" + s + "'");
}

// Rebuilds [step][row, col] matrices from long-format rows.
struct LongMatrices {
    std::vector<std::string> labels;
    std::vector<Eigen::MatrixXd> value;
    std::vector<Eigen::MatrixXd> lower;
    std::vector<Eigen::MatrixXd> upper;
};

LongMatrices long_matrices(const csv::Table& t, const std::string& step_col, const std::string& row_col,
                           const std::string& col_col, const std::string& value_col, bool bands) {
    const auto cs = t.column(step_col);
    const auto cr = t.column(row_col);
    const auto cc = t.column(col_col);
    const auto cv = t.column(value_col);
    LongMatrices out;
    std::size_t min_step = SIZE_MAX;
    std::size_t max_step = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (const auto* name : {&t.get(i, cr), &t.get(i, cc)}) {
            if (std::find(out.labels.begin(), out.labels.end(), *name) == out.labels.end()) {
                out.labels.push_back(*name);
            }
        }
        const auto step = static_cast<std::size_t>(to_double(t.get(i, cs)));
        min_step = std::min(min_step, step);
        max_step = std::max(max_step, step);
    }
    if (t.size() == 0) {
        throw FormatError(value_col + " table is empty");
    }
    const auto m = static_cast<Eigen::Index>(out.labels.size());
    const std::size_t steps = max_step - min_step + 1;
    out.value.assign(steps, Eigen::MatrixXd::Zero(m, m));
    out.lower = out.value;
    out.upper = out.value;
    auto index = [&](const std::string& l) {
        return static_cast<Eigen::Index>(std::find(out.labels.begin(), out.labels.end(), l) - out.labels.begin());
    };
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto h = static_cast<std::size_t>(to_double(t.get(i, cs))) - min_step;
        const auto r = index(t.get(i, cr));
        const auto c = index(t.get(i, cc));
        out.value[h](r, c) = to_double(t.get(i, cv));
        if (bands) {
            out.lower[h](r, c) = to_double(t.get(i, t.column("lower")));
            out.upper[h](r, c) = to_double(t.get(i, t.column("upper")));
        }
    }
    return out;
}

}  // namespace

void Pipeline::run_ingest(StageRecord& rec) {
    StageIo io(out_, rec);
    std::vector<DebunkRecord> loaded;
    std::vector<std::pair<std::string, ingest::Reject>> rejects;
    std::vector<std::string> warnings;
    auto add_source = [&](const std::optional<fs::path>& path, ingest::DebunkFormat format, const char* label) {
        if (!path) {
            return;
        }
        io.input_file(label, *path);
        auto load = ingest::load_debunks(*path, format);
        for (auto& r : load.rejects) {
            rejects.emplace_back(kDebunk, std::move(r));
        }
        warnings.insert(warnings.end(), load.warnings.begin(), load.warnings.end());
        loaded.insert(loaded.end(), load.records.begin(), load.records.end());
    };
    add_source(config_.claimreview, ingest::DebunkFormat::claimreview_json, "claimreview");
    add_source(config_.euvsdisinfo, ingest::DebunkFormat::euvsdisinfo_table, "euvsdisinfo");

    // Both sources share one id space; the first occurrence wins.
    std::vector<DebunkRecord> unique;
    std::set<std::string> seen;
    for (auto& d : loaded) {
        if (seen.insert(d.id).second) {
            unique.push_back(std::move(d));
        } else {
            rejects.emplace_back(kDebunk, ingest::Reject{d.id, "duplicate_id"});
        }
    }

    io.input_file("keywords", config_.keywords);
    const auto keywords = ingest::load_keywords(config_.keywords);
    auto filtered = ingest::filter_records(unique, keywords, config_.window);
    for (auto& r : filtered.rejects) {
        rejects.emplace_back(kDebunk, std::move(r));
    }
    auto& kept = filtered.kept;
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.id < b.id; });

    io.input_file("posts", config_.posts);
    auto posts = ingest::load_posts(config_.posts);
    for (auto& r : posts.rejects) {
        rejects.emplace_back("post", std::move(r));
    }
    std::vector<ingest::PostRecord> in_window;
    for (auto& p : posts.records) {
        if (config_.window.contains(to_date(p.created_at))) {
            in_window.push_back(std::move(p));
        } else {
            rejects.emplace_back("post", ingest::Reject{p.id, "out_of_window"});
        }
    }
    auto match = ingest::match_posts_to_links(in_window, kept);

    io.input_file("gazetteer", config_.gazetteer);
    const auto gazetteer = ingest::Gazetteer::load(config_.gazetteer);
    const auto cov_disinfo = ingest::resolve_authors(match.disinformation, gazetteer);
    const auto cov_debunk = ingest::resolve_authors(match.debunk, gazetteer);

    std::string debunks_out;
    std::size_t link_less = 0;
    for (const auto& d : kept) {
        debunks_out += ingest::to_json(d).dump() + "\n";
        link_less += d.link_less() ? 1 : 0;
    }
    io.write("ingest/debunks.jsonl", debunks_out);

    std::vector<const MatchedPost*> all_posts;
    for (const auto* list : {&match.disinformation, &match.debunk}) {
        for (const auto& p : *list) {
            all_posts.push_back(&p);
        }
    }
    std::sort(all_posts.begin(), all_posts.end(), [](const MatchedPost* a, const MatchedPost* b) {
        return std::tie(a->label, a->post.id) < std::tie(b->label, b->post.id);
    });
    std::string posts_out;
    for (const auto* p : all_posts) {
        posts_out += ingest::to_json(*p).dump() + "\n";
    }
    io.write("ingest/posts_matched.jsonl", posts_out);

    std::string rejects_out = "kind,id,reason\n";
    for (const auto& [kind, r] : rejects) {
        rejects_out += csv::join({kind, r.id, r.reason}) + "\n";
    }
    io.write("ingest/rejects.csv", rejects_out);

    std::set<std::string> disinfo_links;
    std::vector<std::string> debunk_urls;
    std::vector<std::string> link_list;
    for (const auto& d : kept) {
        disinfo_links.insert(d.disinfo_links.begin(), d.disinfo_links.end());
        debunk_urls.push_back(d.url);
    }
    link_list.assign(disinfo_links.begin(), disinfo_links.end());
    std::string domains_out = "stream,rank,domain,count,percent\n";
    for (const auto& [stream, urls] : {std::pair{kDisinfo, &link_list}, std::pair{kDebunk, &debunk_urls}}) {
        const auto shares = ingest::top_domains(*urls, config_.top_domains);
        for (std::size_t i = 0; i < shares.size(); ++i) {
            domains_out += csv::join({stream, std::to_string(i + 1), shares[i].domain, std::to_string(shares[i].count),
                                      csv::fixed(shares[i].percent, 1)}) +
                           "\n";
        }
    }
    io.write("ingest/domains.csv", domains_out);

    auto coverage = [](const ingest::CountryCoverage& c) {
        return json{{"posts", c.posts}, {"with_location", c.with_location}, {"resolved", c.resolved},
                    {"percent", c.percent}};
    };
    const auto& md = match.diagnostics;
    json diag{{"debunks_loaded", loaded.size()},
              {"debunks_kept", kept.size()},
              {"debunks_link_less", link_less},
              {"disinformation_links", link_list.size()},
              {"empty_after_filter", filtered.empty_warning},
              {"posts_loaded", posts.records.size()},
              {"posts_in_window", in_window.size()},
              {"rejects", rejects.size()},
              {"matching",
               {{"posts_in", md.posts_in},
                {"disinformation", md.disinformation},
                {"debunk", md.debunk},
                {"both_streams", md.both_streams},
                {"unmatched", md.unmatched},
                {"unparseable_urls", md.unparseable_urls}}},
              {"author_countries", {{kDisinfo, coverage(cov_disinfo)}, {kDebunk, coverage(cov_debunk)}}},
              {"warnings", warnings}};
    io.write_json("ingest/diagnostics.json", diag);
}

void Pipeline::run_engagement(StageRecord& rec) {
    StageIo io(out_, rec);
    const auto debunks = read_debunks(io);
    const auto streams = read_posts(io);
    const auto disinfo = plain(streams.disinformation);
    const auto debunk = plain(streams.debunk);

    const auto summary = engagement::metric_summary(disinfo, debunk, config_.alpha);
    std::string metrics = "metric,disinformation_n,disinformation_mean,disinformation_std,debunk_n,debunk_mean,"
                          "debunk_std,t,df,p_value,significant,skipped\n";
    for (const auto& m : summary.metrics) {
        metrics += csv::join({std::string(engagement::to_string(m.metric)), std::to_string(m.a.n),
                              csv::fixed(m.a.mean, 1), csv::fixed(m.a.std_sample, 1), std::to_string(m.b.n),
                              csv::fixed(m.b.mean, 1), csv::fixed(m.b.std_sample, 1), csv::real(m.test.t),
                              csv::real(m.test.df), csv::real(m.test.p_value), m.significant ? "true" : "false",
                              m.test.skipped ? m.test.skip_reason : ""}) +
                   "\n";
    }
    io.write("engagement/metrics.csv", metrics);

    const auto lags = engagement::lag_days(debunks, streams.disinformation);
    std::string lag_out = "debunk_id,mean_lag_days,posts\n";
    std::vector<double> lag_values;
    for (const auto& l : lags.per_debunk) {
        lag_out += csv::join({l.debunk_id, csv::real(l.mean_lag_days), std::to_string(l.posts)}) + "\n";
        lag_values.push_back(l.mean_lag_days);
    }
    io.write("engagement/lag_days.csv", lag_out);
    std::string hist_out = "lower,upper,count\n";
    for (const auto& b : engagement::histogram(lag_values, config_.lag_bin_width)) {
        hist_out += csv::join({csv::real(b.lower), csv::real(b.upper), std::to_string(b.count)}) + "\n";
    }
    io.write("engagement/lag_histogram.csv", hist_out);

    std::string tags = "stream,rank,hashtag,count\n";
    for (const auto& [stream, posts] : {std::pair{kDisinfo, &disinfo}, std::pair{kDebunk, &debunk}}) {
        const auto top = engagement::top_hashtags(*posts, config_.top_hashtags);
        for (std::size_t i = 0; i < top.size(); ++i) {
            tags += csv::join({stream, std::to_string(i + 1), top[i].hashtag, std::to_string(top[i].count)}) + "\n";
        }
    }
    io.write("engagement/hashtags.csv", tags);

    const auto pairs = engagement::country_pairs(debunks, streams.disinformation);
    std::string countries = "affected,author,count,percent\n";
    for (const auto& row : engagement::country_crosstab(pairs, config_.crosstab_rows)) {
        countries += csv::join({row.affected, row.author, std::to_string(row.count), csv::fixed(row.percent, 1)}) + "\n";
    }
    io.write("engagement/countries.csv", countries);

    json sig = json::object();
    for (const auto& m : summary.metrics) {
        sig[std::string(engagement::to_string(m.metric))] = m.significant;
    }
    json s{{"alpha", config_.alpha},
           {"posts", {{kDisinfo, disinfo.size()}, {kDebunk, debunk.size()}}},
           {"debunks", debunks.size()},
           {"debunks_with_lag", lags.per_debunk.size()},
           {"country_pairs", pairs.size()},
           {"significant", sig}};
    s["lag_skewness_g1"] = lags.skewness_g1 ? json(*lags.skewness_g1) : json(nullptr);
    io.write_json("engagement/summary.json", s);

    const std::vector<timeseries::DailySeries> daily{
        timeseries::daily_counts(streams.disinformation, config_.window, config_.include_retweets, kDisinfo),
        timeseries::daily_counts(streams.debunk, config_.window, config_.include_retweets, kDebunk)};
    const std::vector<timeseries::DailySeries> rolling{timeseries::rolling_mean(daily[0], config_.rolling_window),
                                                       timeseries::rolling_mean(daily[1], config_.rolling_window)};
    io.write("timeseries/daily.csv", timeseries::to_csv(daily));
    io.write("timeseries/rolling.csv", timeseries::to_csv(rolling));
}

void Pipeline::run_causality(StageRecord& rec) {
    StageIo io(out_, rec);
    auto series = timeseries::from_csv(io.read("timeseries/daily.csv", Stage::engagement));
    auto find = [&](const std::string& label) {
        for (const auto& s : series) {
            if (s.label == label) {
                return s;
            }
        }
        throw FormatError("timeseries/daily.csv has no '" + label + "' series");
    };
    // Cholesky order: disinformation first, so debunk shocks are orthogonal to it.
    std::vector<timeseries::DailySeries> pair{find(kDisinfo), find(kDebunk)};
    for (auto& s : pair) {
        if (config_.var_input == VarInput::rolling) {
            s = timeseries::rolling_mean(s, config_.rolling_window);
        } else if (config_.var_input == VarInput::log) {
            s = timeseries::log1p(s);
        }
    }

    json adf = json::array();
    bool nonstationary = false;
    for (const auto& s : pair) {
        const auto r = timeseries::adf_test(s.values, timeseries::default_adf_max_lag(s.size(), config_.adf_regression),
                                            config_.adf_regression);
        adf.push_back(adf_json(s.label, "levels", r));
        nonstationary = nonstationary || r.p_value > config_.alpha;
    }
    const bool differenced = nonstationary && config_.difference_if_nonstationary;
    if (differenced) {
        for (auto& s : pair) {
            s = timeseries::difference(s, 1);
            const auto r = timeseries::adf_test(
                s.values, timeseries::default_adf_max_lag(s.size(), config_.adf_regression), config_.adf_regression);
            adf.push_back(adf_json(s.label, "differenced", r));
        }
    }

    const auto data = timeseries::stack(pair);
    json lag_json{{"max_lag", config_.max_lag}, {"fixed", config_.lag.has_value()}};
    std::size_t lag = 0;
    if (config_.lag) {
        lag = *config_.lag;
        lag_json["aic"] = json::array();
    } else {
        const auto sel = causality::select_lag(data, config_.max_lag);
        lag = sel.lag;
        lag_json["aic"] = sel.aic;
    }
    lag_json["selected"] = lag;

    const auto model = causality::fit_var(data, lag);
    json coeffs = json::array();
    for (const auto& a : model.coeffs) {
        coeffs.push_back(matrix_json(a));
    }
    json granger = json::array();
    for (const auto& [cause, effect] : {std::pair{kDebunk, kDisinfo}, std::pair{kDisinfo, kDebunk}}) {
        const auto g = causality::granger_test(data, lag, cause, effect);
        granger.push_back({{"cause", g.cause},
                           {"effect", g.effect},
                           {"f_statistic", g.f_statistic},
                           {"df_num", g.df_num},
                           {"df_den", g.df_den},
                           {"p_value", g.p_value},
                           {"significant", g.p_value <= config_.alpha}});
    }

    const auto ir = causality::irf(model, config_.horizon, config_.bootstrap_draws, derive_seed(seed_, "causality-irf"));
    const auto fe = causality::fevd(model, config_.horizon);

    json results{{"input", std::string(to_string(config_.var_input))},
                 {"alpha", config_.alpha},
                 {"adf", adf},
                 {"differenced", differenced},
                 {"lag_selection", lag_json},
                 {"model",
                  {{"labels", model.labels},
                   {"lag_order", model.lag_order},
                   {"t_effective", model.t_effective},
                   {"intercepts", std::vector<double>(model.intercepts.begin(), model.intercepts.end())},
                   {"coeffs", coeffs},
                   {"sigma", matrix_json(model.sigma)},
                   {"aic", model.aic},
                   {"spectral_radius", causality::spectral_radius(model.coeffs)}}},
                 {"granger", granger},
                 {"irf",
                  {{"horizon", ir.horizon},
                   {"orthogonalized", ir.orthogonalized},
                   {"bootstrap_draws", ir.bootstrap_draws},
                   {"failed_draws", ir.failed_draws}}}};
    io.write_json("causality/results.json", results);

    const auto m = static_cast<Eigen::Index>(model.dim());
    std::string irf_out = "step,response,impulse,value,lower,upper\n";
    for (std::size_t h = 0; h < ir.responses.size(); ++h) {
        for (Eigen::Index r = 0; r < m; ++r) {
            for (Eigen::Index i = 0; i < m; ++i) {
                irf_out += csv::join({std::to_string(h), model.labels[static_cast<std::size_t>(r)],
                                      model.labels[static_cast<std::size_t>(i)], csv::real(ir.responses[h](r, i)),
                                      csv::real(ir.lower[h](r, i)), csv::real(ir.upper[h](r, i))}) +
                           "\n";
            }
        }
    }
    io.write("causality/irf.csv", irf_out);
    std::string fevd_out = "horizon,target,source,proportion\n";
    for (std::size_t h = 0; h < fe.proportions.size(); ++h) {
        for (Eigen::Index t = 0; t < m; ++t) {
            for (Eigen::Index s = 0; s < m; ++s) {
                fevd_out += csv::join({std::to_string(h + 1), model.labels[static_cast<std::size_t>(t)],
                                       model.labels[static_cast<std::size_t>(s)], csv::real(fe.proportions[h](t, s))}) +
                            "\n";
            }
        }
    }
    io.write("causality/fevd.csv", fevd_out);
}

void Pipeline::run_topics(StageRecord& rec) {
    StageIo io(out_, rec);
    const auto debunks = read_debunks(io);
    const auto streams = read_posts(io);
    std::string source;
    const auto embeddings = claim_embeddings(config_, debunks, io, source);
    const std::size_t n = embeddings.size();

    topics::KMeansOptions opts;
    opts.max_iter = config_.max_iter;
    opts.seed = derive_seed(seed_, "topics-kmeans");

    std::vector<topics::KDiagnostics> curve;
    bool low_confidence = false;
    std::size_t k = 0;
    if (config_.k) {
        k = *config_.k;
        if (k > n) {
            throw PreconditionError("topics.k = " + std::to_string(k) + " exceeds the " + std::to_string(n) +
                                    " debunks available");
        }
    } else {
        const std::size_t k_max = std::min(config_.k_max, n == 0 ? 0 : n - 1);
        if (config_.k_min > k_max) {
            throw PreconditionError("topics.k_range: too few debunks (" + std::to_string(n) + ") for k >= " +
                                    std::to_string(config_.k_min));
        }
        auto sel = topics::select_k(embeddings, config_.k_min, k_max, opts);
        k = sel.k;
        curve = std::move(sel.curve);
        low_confidence = sel.low_confidence;
    }
    const auto km = topics::kmeans(embeddings, k, opts);
    if (config_.k) {
        topics::KDiagnostics d{k, km.inertia, 0.0};
        if (k >= 2 && k < n) {
            d.silhouette = topics::silhouette(embeddings.normalized().matrix(), km.assignments);
            low_confidence = d.silhouette < topics::kLowConfidenceSilhouette;
        }
        curve.push_back(d);
    }

    std::map<std::string, int> assignment;
    std::map<std::string, const DebunkRecord*> by_id;
    for (const auto& d : debunks) {
        by_id[d.id] = &d;
    }
    std::vector<std::vector<topics::Tokens>> docs(k);
    std::vector<std::size_t> sizes(k, 0);
    std::string assign_out = "debunk_id,cluster\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto& id = embeddings.ids()[i];
        const int c = km.assignments[i];
        assignment[id] = c;
        docs[static_cast<std::size_t>(c)].push_back(topics::tokenize_claim(by_id.at(id)->filter_text()));
        ++sizes[static_cast<std::size_t>(c)];
        assign_out += csv::join({id, std::to_string(c)}) + "\n";
    }
    io.write("topics/assignments.csv", assign_out);

    const auto tf = topics::ctfidf(docs, config_.top_words);
    const auto sim = topics::cluster_similarity(tf.scores);
    const auto timeline = topics::cluster_timeline(assignment, k, streams.disinformation, config_.window);

    std::string clusters = "cluster,label,debunks,disinformation_posts,top_words\n";
    std::string words = "cluster,rank,word,score\n";
    for (std::size_t c = 0; c < k; ++c) {
        std::string joined;
        for (std::size_t r = 0; r < tf.top_words[c].size(); ++r) {
            const auto& w = tf.top_words[c][r];
            words += csv::join({std::to_string(c), std::to_string(r + 1), w.word, csv::real(w.score)}) + "\n";
            if (r < 5) {
                joined += (joined.empty() ? "" : " ") + w.word;
            }
        }
        clusters += csv::join({std::to_string(c), timeline.series[c].label, std::to_string(sizes[c]),
                               std::to_string(timeline.totals[c]), joined}) +
                    "\n";
    }
    io.write("topics/clusters.csv", clusters);
    io.write("topics/top_words.csv", words);

    std::string sim_out = "cluster";
    for (std::size_t c = 0; c < k; ++c) {
        sim_out += ",cluster_" + std::to_string(c);
    }
    sim_out += "\n";
    for (Eigen::Index i = 0; i < sim.rows(); ++i) {
        sim_out += "cluster_" + std::to_string(i);
        for (Eigen::Index j = 0; j < sim.cols(); ++j) {
            sim_out += "," + csv::real(sim(i, j));
        }
        sim_out += "\n";
    }
    io.write("topics/similarity.csv", sim_out);
    io.write("topics/timeline.csv", timeseries::to_csv(timeline.series));

    std::string ksel = "k,inertia,silhouette,selected\n";
    for (const auto& d : curve) {
        ksel += csv::join({std::to_string(d.k), csv::real(d.inertia), csv::real(d.silhouette),
                           d.k == k ? "true" : "false"}) +
                "\n";
    }
    io.write("topics/k_selection.csv", ksel);

    json s{{"k", k},
           {"selection", config_.k ? "fixed" : "silhouette"},
           {"low_confidence", low_confidence},
           {"embedding_source", source},
           {"debunks", n},
           {"inertia", km.inertia},
           {"iterations", km.iterations},
           {"converged", km.converged},
           {"reseeds", km.reseeds},
           {"multi_cluster_posts", timeline.multi_cluster_posts},
           {"unassigned_posts", timeline.unassigned_posts}};
    io.write_json("topics/summary.json", s);
}

void Pipeline::run_dedup(StageRecord& rec) {
    StageIo io(out_, rec);
    const auto debunks = read_debunks(io);
    std::string source;
    const auto embeddings = claim_embeddings(config_, debunks, io, source);
    const auto result = dedup::find_prior_debunks(debunks, embeddings, config_.dedup_threshold);
    const auto sweep = dedup::threshold_sweep(debunks, embeddings, config_.dedup_sweep);
    io.write("dedup/pairs.csv", dedup::pairs_csv(result));
    io.write("dedup/timeline.csv", dedup::timeline_csv(result));
    io.write("dedup/sweep.csv", dedup::sweep_csv(sweep));
    std::set<std::string> narratives;
    for (const auto& e : result.timeline) {
        narratives.insert(e.narrative_id);
    }
    json s{{"threshold", result.threshold},
           {"embedding_source", source},
           {"debunks", result.debunks},
           {"duplicated", result.duplicated},
           {"duplicate_rate", result.duplicate_rate},
           {"same_publisher_pairs", result.same_publisher_pairs},
           {"narratives", narratives.size()}};
    io.write_json("dedup/summary.json", s);
}

void Pipeline::run_report(StageRecord& rec) {
    StageIo io(out_, rec);
    const auto rolling = timeseries::from_csv(io.read("timeseries/rolling.csv", Stage::engagement));
    io.write("plots/series_stacked.svg",
             plot_stacked_series(rolling, std::to_string(config_.rolling_window) + "-day rolling average of posts"));

    const auto lag_table = read_table(io, "engagement/lag_days.csv", Stage::engagement);
    const auto hist_table = read_table(io, "engagement/lag_histogram.csv", Stage::engagement);
    std::vector<double> samples;
    for (std::size_t i = 0; i < lag_table.size(); ++i) {
        samples.push_back(to_double(lag_table.get(i, lag_table.column("mean_lag_days"))));
    }
    std::vector<engagement::HistogramBin> bins;
    for (std::size_t i = 0; i < hist_table.size(); ++i) {
        bins.push_back({to_double(hist_table.get(i, hist_table.column("lower"))),
                        to_double(hist_table.get(i, hist_table.column("upper"))),
                        static_cast<std::size_t>(to_double(hist_table.get(i, hist_table.column("count"))))});
    }
    if (bins.empty()) {
        throw PreconditionError("engagement/lag_histogram.csv is empty: no debunk has matched disinformation posts");
    }
    io.write("plots/lag_histogram.svg", plot_histogram(bins, samples, "Days between disinformation posts and debunk"));

    const auto irf_m = long_matrices(read_table(io, "causality/irf.csv", Stage::causality), "step", "response",
                                     "impulse", "value", true);
    io.write("plots/irf_grid.svg", plot_irf_grid(irf_m.labels, irf_m.value, irf_m.lower, irf_m.upper));
    const auto fevd_m = long_matrices(read_table(io, "causality/fevd.csv", Stage::causality), "horizon", "target",
                                      "source", "proportion", false);
    io.write("plots/fevd_stacked.svg", plot_fevd(fevd_m.labels, fevd_m.value));

    const auto timeline = timeseries::from_csv(io.read("topics/timeline.csv", Stage::topics));
    io.write("plots/cluster_timeline.svg", plot_lines(timeline, "Disinformation posts per topic cluster"));

    const auto sim_table = read_table(io, "topics/similarity.csv", Stage::topics);
    const auto k = static_cast<Eigen::Index>(sim_table.size());
    Eigen::MatrixXd sim(k, k);
    std::vector<std::string> labels;
    for (Eigen::Index i = 0; i < k; ++i) {
        labels.push_back(sim_table.get(static_cast<std::size_t>(i), 0));
        for (Eigen::Index j = 0; j < k; ++j) {
            sim(i, j) = to_double(sim_table.get(static_cast<std::size_t>(i), static_cast<std::size_t>(j) + 1));
        }
    }
    io.write("plots/cluster_similarity.svg", plot_heatmap(labels, sim, "Cluster similarity (cosine of c-TF-IDF)"));
}

}  // namespace infospread::report
