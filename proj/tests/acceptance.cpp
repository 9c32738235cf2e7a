// Acceptance checks: one PASS/FAIL line per criterion. Seed sets are fixed
// (0..N-1) and never tuned to the outcome.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infospread/causality/granger.hpp"
#include "infospread/causality/irf.hpp"
#include "infospread/causality/var.hpp"
#include "infospread/common/csv.hpp"
#include "infospread/common/files.hpp"
#include "infospread/common/rng.hpp"
#include "infospread/dedup/dedup.hpp"
#include "infospread/engagement/engagement.hpp"
#include "infospread/synth/synth.hpp"
#include "infospread/timeseries/adf.hpp"
#include "infospread/topics/ctfidf.hpp"
#include "infospread/topics/kmeans.hpp"

using namespace infospread;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every model fitted here also feeds the FEVD normalization check.
std::vector<causality::VarModel> g_models;

synth::VarSpec var1_spec(const Eigen::MatrixXd& a, std::uint64_t seed, std::size_t length) {
    synth::VarSpec spec;
    spec.labels = {"x", "y"};
    spec.coeffs = {a};
    spec.sigma = Eigen::MatrixXd::Identity(2, 2);
    spec.length = length;
    spec.seed = seed;
    return spec;
}

Outcome var_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    Eigen::MatrixXd a(2, 2);
    a << 0.5, 0.1, 0.0, 0.4;
    int good = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto m = causality::fit_var(synth::simulate_var(var1_spec(a, seed, 5000)), 1);
        const double err = (m.coeffs[0] - a).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        good += err <= 0.05 ? 1 : 0;
        g_models.push_back(std::move(m));
    }
    const double secs = seconds_since(t0);
    return {good >= 19 && secs < 5.0, fmt("%.0f/20 seeds within 0.05 (worst %.4f), %.2f s", good, worst, secs)};
}

Outcome granger_direction() {
    const auto t0 = std::chrono::steady_clock::now();
    Eigen::MatrixXd a(2, 2);
    a << 0.5, 0.0, 0.5, 0.0;  // x drives y with beta = 0.5; y never feeds back
    int forward = 0;
    int backward = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto data = synth::simulate_var(var1_spec(a, seed, 1000));
        forward += causality::granger_test(data, 1, "x", "y").p_value < 0.01 ? 1 : 0;
        backward += causality::granger_test(data, 1, "y", "x").p_value >= 0.05 ? 1 : 0;
        if (seed < 10) {
            g_models.push_back(causality::fit_var(data, 1));
        }
    }
    const double secs = seconds_since(t0);
    return {forward >= 95 && backward >= 95 && secs < 30.0,
            fmt("x->y rejects %.0f/100, y->x kept %.0f/100, %.2f s", forward, backward, secs)};
}

Outcome irf_exactness() {
    Eigen::MatrixXd a(2, 2);
    a << 0.5, 0.1, 0.0, 0.4;
    Eigen::MatrixXd sigma(2, 2);
    sigma << 1.0, 0.3, 0.3, 2.0;
    causality::VarModel m;
    m.lag_order = 1;
    m.labels = {"x", "y"};
    m.intercepts = Eigen::VectorXd::Zero(2);
    m.coeffs = {a};
    m.sigma = sigma;
    const Eigen::MatrixXd p = linalg::cholesky(sigma);
    const auto theta = causality::orthogonalized_responses(m, 14);
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(2, 2);
    double worst = 0.0;
    for (std::size_t h = 0; h <= 14; ++h) {
        worst = std::max(worst, (theta[h] - power * p).cwiseAbs().maxCoeff());
        power = power * a;
    }
    const bool exact0 = theta[0] == p;
    g_models.push_back(m);
    return {worst < 1e-10 && exact0 && theta.size() == 15,
            fmt("max |Theta_h - A^h P| = %.2e over h=0..14, Theta_0 == P exactly: ", worst) +
                (exact0 ? "yes" : "no")};
}

Outcome fevd_normalization() {
    double worst = 0.0;
    for (const auto& m : g_models) {
        for (const auto& prop : causality::fevd(m, 14).proportions) {
            for (Eigen::Index j = 0; j < prop.rows(); ++j) {
                worst = std::max(worst, std::abs(prop.row(j).sum() - 1.0));
            }
        }
    }
    causality::VarModel decoupled;
    decoupled.lag_order = 1;
    decoupled.labels = {"x", "y"};
    decoupled.intercepts = Eigen::VectorXd::Zero(2);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a.diagonal() << 0.7, -0.3;
    decoupled.coeffs = {a};
    decoupled.sigma = Eigen::MatrixXd::Zero(2, 2);
    decoupled.sigma.diagonal() << 2.0, 0.5;
    bool identity = true;
    for (const auto& prop : causality::fevd(decoupled, 14).proportions) {
        identity = identity && prop == Eigen::MatrixXd::Identity(2, 2);
    }
    return {worst <= 1e-10 && identity,
            fmt("%.0f models, max |row sum - 1| = %.2e; decoupled system is the identity: ",
                static_cast<double>(g_models.size()), worst) +
                (identity ? "yes" : "no")};
}

std::vector<double> normals(std::uint64_t seed, std::size_t n) {
    Rng rng = Rng::substream(seed, "acceptance-adf");
    std::vector<double> v(n);
    for (auto& x : v) {
        x = rng.normal();
    }
    return v;
}

Outcome adf_discrimination() {
    int noise_rejects = 0;
    int walk_keeps = 0;
    const std::size_t n = 500;
    const std::size_t lag = timeseries::default_adf_max_lag(n);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto noise = normals(seed, n);
        const auto steps = normals(seed + 1'000'000, n);
        std::vector<double> walk(n);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += steps[i];
            walk[i] = acc;
        }
        noise_rejects += timeseries::adf_test(noise, lag).p_value < 0.01 ? 1 : 0;
        walk_keeps += timeseries::adf_test(walk, lag).p_value >= 0.05 ? 1 : 0;
    }
    auto v = normals(424242, n);
    const double base = timeseries::adf_test(v, lag).test_statistic;
    for (auto& x : v) {
        x = 250.0 * x + 17.0;
    }
    const double scaled_diff = std::abs(timeseries::adf_test(v, lag).test_statistic - base);
    return {noise_rejects >= 95 && walk_keeps >= 95 && scaled_diff < 1e-8,
            fmt("white noise rejects %.0f/100, random walk kept %.0f/100, scale change moves tau by %.1e",
                noise_rejects, walk_keeps, scaled_diff)};
}

Outcome engagement_stats() {
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> b = {2, 4, 6, 8, 10};
    const auto r = engagement::welch_t_test(a, b);
    const double t = -3.0 / std::sqrt(2.5);
    const double df = 6.25 / (0.25 / 4.0 + 4.0 / 4.0);
    const double p = 0.10753119493062718;
    const double welch_err = std::max({std::abs(r.t - t), std::abs(r.df - df), std::abs(r.p_value - p)});
    const double sym = std::max(std::abs(engagement::fisher_pearson_skewness(std::vector<double>{1, 2, 3})),
                                std::abs(engagement::fisher_pearson_skewness(std::vector<double>{-4, -1, 0, 1, 4})));
    // m2 = 15.1875, m3 = 45.5625 over n = 4: g1 = 2 / sqrt(3).
    const double skew_err = std::abs(engagement::fisher_pearson_skewness(std::vector<double>{1, 1, 1, 10}) -
                                     2.0 / std::sqrt(3.0));
    return {welch_err < 1e-10 && sym < 1e-12 && skew_err < 1e-12,
            fmt("Welch max error %.1e; symmetric g1 %.1e; [1,1,1,10] error %.1e", welch_err, sym, skew_err)};
}

double adjusted_rand(const std::vector<int>& a, const std::vector<int>& b) {
    auto c2 = [](double n) { return n * (n - 1.0) / 2.0; };
    std::map<std::pair<int, int>, double> table;
    std::map<int, double> ra;
    std::map<int, double> rb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        table[{a[i], b[i]}] += 1;
        ra[a[i]] += 1;
        rb[b[i]] += 1;
    }
    double index = 0, sa = 0, sb = 0;
    for (const auto& e : table) index += c2(e.second);
    for (const auto& e : ra) sa += c2(e.second);
    for (const auto& e : rb) sb += c2(e.second);
    const double expected = sa * sb / c2(static_cast<double>(a.size()));
    return (index - expected) / (0.5 * (sa + sb) - expected);
}

Eigen::MatrixXd blobs(const std::vector<Eigen::VectorXd>& centers, std::size_t per, double sd, std::uint64_t seed,
                      std::vector<int>& truth) {
    Rng rng = Rng::substream(seed, "acceptance-blobs");
    Eigen::MatrixXd x(static_cast<Eigen::Index>(centers.size() * per), centers.front().size());
    Eigen::Index row = 0;
    for (std::size_t c = 0; c < centers.size(); ++c) {
        for (std::size_t i = 0; i < per; ++i, ++row) {
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                x(row, j) = centers[c](j) + sd * rng.normal();
            }
            truth.push_back(static_cast<int>(c));
        }
    }
    return x;
}

Outcome clustering() {
    Eigen::VectorXd c1(2), c2(2), c3(2);
    c1 << 0, 0;
    c2 << 10, 0;
    c3 << 0, 10;
    std::vector<int> truth;
    const auto x = blobs({c1, c2, c3}, 40, 0.6, 1, truth);
    topics::KMeansOptions opts;
    opts.normalize = false;
    opts.seed = 42;
    const auto r = topics::kmeans(x, 3, opts);
    const double ari = adjusted_rand(r.assignments, truth);
    const double sil = topics::silhouette(x, r.assignments);
    bool monotone = true;
    for (std::size_t i = 1; i < r.inertia_trace.size(); ++i) {
        monotone = monotone && r.inertia_trace[i] <= r.inertia_trace[i - 1];
    }
    Eigen::VectorXd a = Eigen::VectorXd::Zero(6), b = Eigen::VectorXd::Zero(6);
    a(0) = 10;
    b(1) = 10;
    std::vector<int> truth2;
    const auto two = blobs({a, b}, 30, 0.5, 2, truth2);
    std::map<std::string, std::vector<double>> vectors;
    for (Eigen::Index i = 0; i < two.rows(); ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "c%04d", static_cast<int>(i));
        vectors[id] = std::vector<double>(two.row(i).data(), two.row(i).data() + two.cols());
        for (Eigen::Index j = 0; j < two.cols(); ++j) {
            vectors[id][static_cast<std::size_t>(j)] = two(i, j);
        }
    }
    const auto sel = topics::select_k(topics::EmbeddingSet::from_map(vectors), 2, 5);
    return {std::abs(ari - 1.0) < 1e-12 && sil > 0.6 && monotone && sel.k == 2,
            fmt("ARI %.4f, silhouette %.3f, select_k on two blobs = %.0f", ari, sil, static_cast<double>(sel.k)) +
                (monotone ? ", inertia non-increasing" : ", inertia rose")};
}

Outcome ctfidf_check() {
    const std::vector<std::vector<topics::Tokens>> docs = {
        {{"apple", "banana"}, {"apple"}},
        {{"banana", "cherry", "cherry", "cherry"}},
    };
    const auto r = topics::ctfidf(docs);
    const double avg = 7.0 / 2.0;
    Eigen::MatrixXd expected(2, 3);
    expected << 2 * std::log(1 + avg / 2), std::log(1 + avg / 2), 0,  //
        0, std::log(1 + avg / 2), 3 * std::log(1 + avg / 3);
    const double err = (r.scores - expected).cwiseAbs().maxCoeff();
    const bool exclusive_first = r.top_words[0][0].word == "apple" && r.top_words[1][0].word == "cherry";
    return {err < 1e-12 && exclusive_first,
            fmt("toy matrix max error %.1e; exclusive terms rank first: ", err) + (exclusive_first ? "yes" : "no")};
}

Outcome dedup_check() {
    std::map<std::string, std::vector<double>> vectors;
    std::vector<ingest::DebunkRecord> debunks;
    std::set<std::pair<std::string, std::string>> truth;
    const double off = std::sqrt(1.0 - 0.85 * 0.85);
    auto record = [](const std::string& id, int day) {
        ingest::DebunkRecord d;
        d.id = id;
        d.date_published = parse_date("2022-03-01") + std::chrono::days{day};
        d.publisher_domain = "fc.example";
        return d;
    };
    for (int i = 0; i < 9; ++i) {
        std::vector<double> v(12, 0.0);
        v[static_cast<std::size_t>(i)] = 1.0;
        vectors["o" + std::to_string(i)] = v;
        debunks.push_back(record("o" + std::to_string(i), i));
    }
    const int originals[] = {1, 4, 7};
    for (int j = 0; j < 3; ++j) {
        std::vector<double> v(12, 0.0);
        v[static_cast<std::size_t>(originals[j])] = 0.85;
        v[static_cast<std::size_t>(9 + j)] = off;
        vectors["dup" + std::to_string(j)] = v;
        debunks.push_back(record("dup" + std::to_string(j), 20 + j));
        truth.insert({"dup" + std::to_string(j), "o" + std::to_string(originals[j])});
    }
    const auto set = topics::EmbeddingSet::from_map(vectors);
    const auto r = dedup::find_prior_debunks(debunks, set, 0.8);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& p : r.pairs) {
        got.insert({p.later_id, p.earlier_id});
    }
    const std::vector<double> thresholds{0.6, 0.7, 0.8, 0.9};
    const auto sweep = dedup::threshold_sweep(debunks, set, thresholds);
    bool monotone = true;
    for (std::size_t i = 1; i < sweep.size(); ++i) {
        monotone = monotone && sweep[i].duplicate_rate <= sweep[i - 1].duplicate_rate;
    }
    return {got == truth && monotone,
            fmt("%.0f flagged pairs, %.0f planted, exact match: ", static_cast<double>(got.size()),
                static_cast<double>(truth.size())) +
                (got == truth ? "yes" : "no") + "; sweep rates " + csv::fixed(sweep[0].duplicate_rate, 3) + " " +
                csv::fixed(sweep[1].duplicate_rate, 3) + " " + csv::fixed(sweep[2].duplicate_rate, 3) + " " +
                csv::fixed(sweep[3].duplicate_rate, 3)};
}

int run_toolkit(const std::string& args) {
    const std::string cmd = std::string(TOOLKIT_EXE) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
    auto p = fs::temp_directory_path() / ("infospread_acceptance_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

Outcome pipeline_determinism() {
    const fs::path config = fs::path(INFOSPREAD_FIXTURE_DIR) / "mini" / "config.yaml";
    std::vector<std::map<std::string, std::string>> runs;
    double slowest = 0.0;
    for (const char* name : {"run_a", "run_b"}) {
        const auto dir = fresh_dir(name);
        const auto t0 = std::chrono::steady_clock::now();
        const int rc = run_toolkit("all --config " + config.string() + " --seed 42 --out " + dir.string());
        slowest = std::max(slowest, seconds_since(t0));
        if (rc != 0) {
            return {false, "toolkit all exited with " + std::to_string(rc)};
        }
        std::map<std::string, std::string> files;
        for (const auto& e : fs::recursive_directory_iterator(dir)) {
            const auto ext = e.path().extension();
            if (e.is_regular_file() && (ext == ".csv" || ext == ".json" || ext == ".jsonl" || ext == ".svg")) {
                files[fs::relative(e.path(), dir).generic_string()] = files::read_text(e.path());
            }
        }
        runs.push_back(std::move(files));
    }
    const bool same = runs[0] == runs[1];
    return {same && !runs[0].empty() && slowest < 60.0,
            fmt("%.0f CSV/JSON/SVG artifacts, byte-identical: ", static_cast<double>(runs[0].size())) +
                (same ? "yes" : "no") + fmt(", slowest run %.2f s", slowest)};
}

Outcome paper_shape() {
    const fs::path fixture = fs::path(INFOSPREAD_FIXTURE_DIR) / "paper_like";
    const auto dir = fresh_dir("paper_like");
    fs::create_directories(dir / "timeseries");
    fs::copy_file(fixture / "series.csv", dir / "timeseries" / "daily.csv");
    const int rc = run_toolkit("causality --config " + (fixture / "config.yaml").string() + " --out " + dir.string());
    if (rc != 0) {
        return {false, "toolkit causality exited with " + std::to_string(rc)};
    }
    const auto results = nlohmann::json::parse(files::read_text(dir / "causality" / "results.json"));
    double p_max = 0.0;
    for (const auto& g : results.at("granger")) {
        p_max = std::max(p_max, g.at("p_value").get<double>());
    }
    // omega(h): share of disinformation forecast variance due to debunk shocks.
    const csv::Table t(csv::read_file(dir / "causality" / "fevd.csv"));
    std::vector<double> omega;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t.get(i, t.column("target")) == "disinformation" && t.get(i, t.column("source")) == "debunk") {
            omega.push_back(std::stod(t.get(i, t.column("proportion"))));
        }
    }
    if (omega.size() != 14) {
        return {false, "expected 14 FEVD horizons"};
    }
    // Shape: nothing at one step, a rise after the one-day delay, no real
    // decline over the first five steps, flat from a week on.
    const bool delayed = omega[0] < 1e-12;
    const bool rises = omega[1] > omega[0] + 0.01;
    bool monotone = true;
    for (std::size_t h = 0; h + 1 < 5; ++h) {
        monotone = monotone && omega[h + 1] >= omega[h] - 0.01;
    }
    const auto [lo, hi] = std::minmax_element(omega.begin() + 6, omega.end());
    const bool flat = *hi - *lo < 0.02;
    const bool differenced = results.at("differenced").get<bool>();
    return {p_max <= 0.01 && delayed && rises && monotone && flat,
            fmt("Granger max p %.2e both ways; omega(1)=%.3f omega(2)=%.3f", p_max, omega[0], omega[1]) +
                fmt(" omega(14)=%.3f, range over h=7..14 %.4f", omega[13], *hi - *lo) +
                (differenced ? " (differenced)" : " (levels)")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"VAR recovery", var_recovery},
        {"Granger directionality", granger_direction},
        {"IRF exactness", irf_exactness},
        {"FEVD normalization", fevd_normalization},
        {"ADF discrimination", adf_discrimination},
        {"Engagement statistics", engagement_stats},
        {"Clustering", clustering},
        {"c-TF-IDF", ctfidf_check},
        {"Dedup", dedup_check},
        {"Pipeline determinism", pipeline_determinism},
        {"Paper-shape fixture", paper_shape},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("criterion %2zu %-24s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
