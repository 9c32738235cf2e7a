#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "infospread/common/error.hpp"
#include "infospread/common/rng.hpp"
#include "infospread/dedup/dedup.hpp"

using namespace infospread;
using namespace infospread::dedup;

namespace {

ingest::DebunkRecord debunk(const std::string& id, const std::string& date, const std::string& lang = "en",
                            const std::string& publisher = "fc.example") {
    ingest::DebunkRecord d;
    d.id = id;
    d.date_published = parse_date(date);
    d.language = lang;
    d.publisher_domain = publisher;
    return d;
}

// Nine orthogonal originals plus three planted copies at cosine 0.85.
struct Planted {
    std::vector<ingest::DebunkRecord> debunks;
    topics::EmbeddingSet embeddings;
    std::set<std::pair<std::string, std::string>> truth;
};

Planted planted() {
    Planted p;
    std::map<std::string, std::vector<double>> vectors;
    const double off = std::sqrt(1.0 - 0.85 * 0.85);
    for (int i = 0; i < 9; ++i) {
        const std::string id = "o" + std::to_string(i);
        std::vector<double> v(12, 0.0);
        v[static_cast<std::size_t>(i)] = 1.0;
        vectors[id] = v;
        p.debunks.push_back(debunk(id, "2022-03-0" + std::to_string(i + 1)));
    }
    const int originals[] = {1, 4, 7};
    for (int j = 0; j < 3; ++j) {
        const std::string id = "dup" + std::to_string(j);
        std::vector<double> v(12, 0.0);
        v[static_cast<std::size_t>(originals[j])] = 0.85;
        v[static_cast<std::size_t>(9 + j)] = off;
        vectors[id] = v;
        p.debunks.push_back(debunk(id, "2022-03-2" + std::to_string(j), j == 0 ? "de" : "en",
                                   j == 2 ? "fc.example" : "other.example"));
        p.truth.insert({id, "o" + std::to_string(originals[j])});
    }
    p.embeddings = topics::EmbeddingSet::from_map(vectors);
    return p;
}

}  // namespace

TEST_CASE("pairwise similarity basics and brute force") {
    const auto set = topics::EmbeddingSet::from_map({{"a", {1, 0}}, {"b", {1, 0}}, {"c", {0, 3}}});
    const std::vector<std::string> ids = {"c", "b", "a"};
    const auto pairs = pairwise_similarity(set, ids, 0.01);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].id_a == "a");
    CHECK(pairs[0].id_b == "b");
    CHECK(pairs[0].cosine == doctest::Approx(1.0));

    Rng rng = Rng::substream(1, "dedup-vectors");
    std::map<std::string, std::vector<double>> v;
    for (int i = 0; i < 10; ++i) {
        auto& row = v["v" + std::to_string(i)];
        for (int j = 0; j < 4; ++j) row.push_back(rng.normal() + (i % 3 == 0 ? 3.0 : 0.0));
    }
    const auto ten = topics::EmbeddingSet::from_map(v);
    std::vector<std::string> all_ids = ten.ids();
    const auto found = pairwise_similarity(ten, all_ids, 0.8);
    std::set<std::pair<std::string, std::string>> expected;
    for (std::size_t i = 0; i < all_ids.size(); ++i) {
        for (std::size_t j = i + 1; j < all_ids.size(); ++j) {
            const Eigen::RowVectorXd a = ten.matrix().row(static_cast<Eigen::Index>(i));
            const Eigen::RowVectorXd b = ten.matrix().row(static_cast<Eigen::Index>(j));
            if (a.dot(b) / (a.norm() * b.norm()) >= 0.8) expected.insert({all_ids[i], all_ids[j]});
        }
    }
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& p : found) got.insert({p.id_a, p.id_b});
    CHECK(got == expected);
    CHECK_FALSE(expected.empty());

    CHECK_THROWS_AS((void)pairwise_similarity(set, ids, 0.0), PreconditionError);
    CHECK_THROWS_AS((void)pairwise_similarity(set, ids, 1.5), PreconditionError);
    const std::vector<std::string> missing = {"a", "nope"};
    CHECK_THROWS_AS((void)pairwise_similarity(set, missing, 0.5), PreconditionError);
    const auto zero = topics::EmbeddingSet::from_map({{"a", {1, 0}}, {"z", {0, 0}}});
    const std::vector<std::string> za = {"a", "z"};
    try {
        (void)pairwise_similarity(zero, za, 0.5);
        FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("'z'") != std::string::npos);
    }
}

TEST_CASE("two identical claims three days apart") {
    const std::vector<ingest::DebunkRecord> d = {debunk("late", "2022-03-04", "fr"), debunk("early", "2022-03-01")};
    const auto set = topics::EmbeddingSet::from_map({{"late", {0.3, 0.4}}, {"early", {0.3, 0.4}}});
    const DedupResult r = find_prior_debunks(d, set, 0.8);
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0].later_id == "late");
    CHECK(r.pairs[0].earlier_id == "early");
    CHECK(r.pairs[0].day_gap == 3);
    CHECK(r.pairs[0].later_language == "fr");
    CHECK(r.pairs[0].same_publisher);
    CHECK(r.duplicate_rate == 0.5);
    REQUIRE(r.timeline.size() == 2);
    CHECK(r.timeline[0].narrative_id == "early");
    CHECK(r.timeline[1].debunk_id == "late");
}

TEST_CASE("planted near-duplicates are exactly the flagged pairs") {
    const Planted p = planted();
    const DedupResult r = find_prior_debunks(p.debunks, p.embeddings, 0.8);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& pair : r.pairs) {
        got.insert({pair.later_id, pair.earlier_id});
        CHECK(pair.similarity == doctest::Approx(0.85));
        CHECK(pair.similarity >= 0.8);
        CHECK(pair.day_gap >= 0);
    }
    CHECK(got == p.truth);
    CHECK(r.duplicate_rate == doctest::Approx(3.0 / 12.0));
    CHECK(r.same_publisher_pairs == 1);

    const std::vector<double> sweep = {0.6, 0.7, 0.8, 0.9};
    const auto rows = threshold_sweep(p.debunks, p.embeddings, sweep);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].duplicate_rate <= rows[i - 1].duplicate_rate);
    }
    CHECK(rows[3].duplicated == 0);
}

TEST_CASE("dedup properties on random data") {
    Rng rng = Rng::substream(77, "dedup-props");
    std::map<std::string, std::vector<double>> v;
    std::vector<ingest::DebunkRecord> debunks;
    for (int i = 0; i < 60; ++i) {
        const std::string id = "d" + std::to_string(i);
        auto& row = v[id];
        const int topic = static_cast<int>(rng.below(5));
        for (int j = 0; j < 8; ++j) row.push_back((j == topic ? 2.0 : 0.0) + 0.5 * rng.normal());
        debunks.push_back(debunk(id, format_date(parse_date("2022-02-01") + std::chrono::days{rng.below(60)})));
    }
    const auto set = topics::EmbeddingSet::from_map(v);
    double prev = 1.0;
    for (double t : {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.0}) {
        const DedupResult r = find_prior_debunks(debunks, set, t);
        CHECK(r.duplicate_rate >= 0.0);
        CHECK(r.duplicate_rate <= prev);
        prev = r.duplicate_rate;

        std::map<std::string, Date> date_of;
        for (const auto& d : debunks) date_of[d.id] = d.date_published;
        std::set<std::string> later_ids;
        for (const auto& p : r.pairs) {
            CHECK(date_of[p.earlier_id] <= date_of[p.later_id]);
            CHECK(later_ids.insert(p.later_id).second);
        }
        // Acyclic: following earlier links always terminates at a narrative root.
        std::map<std::string, std::string> parent;
        for (const auto& p : r.pairs) parent[p.later_id] = p.earlier_id;
        for (const auto& [start, _] : parent) {
            std::string cur = start;
            std::size_t steps = 0;
            while (parent.count(cur) && steps <= parent.size()) {
                const std::string next = parent[cur];
                CHECK(std::tie(date_of[next], next) < std::tie(date_of[cur], cur));
                cur = next;
                ++steps;
            }
            CHECK(steps <= parent.size());
        }

        auto shuffled = debunks;
        std::reverse(shuffled.begin(), shuffled.end());
        std::rotate(shuffled.begin(), shuffled.begin() + 17, shuffled.end());
        const DedupResult s = find_prior_debunks(shuffled, set, t);
        CHECK(pairs_csv(s) == pairs_csv(r));
        CHECK(timeline_csv(s) == timeline_csv(r));
    }
}

TEST_CASE("dedup csv layout and errors") {
    const Planted p = planted();
    const DedupResult r = find_prior_debunks(p.debunks, p.embeddings, 0.8);
    const std::string csv = pairs_csv(r);
    CHECK(csv.rfind("later_id,earlier_id,similarity,later_language,earlier_language,day_gap,same_publisher\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(timeline_csv(r).rfind("narrative_id,debunk_id,date,language\n", 0) == 0);

    auto missing = p.debunks;
    missing.push_back(debunk("ghost", "2022-03-01"));
    CHECK_THROWS_AS((void)find_prior_debunks(missing, p.embeddings, 0.8), PreconditionError);
}
