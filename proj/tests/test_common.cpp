#include <doctest.h>

#include <set>

#include "infospread/common/csv.hpp"
#include "infospread/common/date.hpp"
#include "infospread/common/error.hpp"
#include "infospread/common/files.hpp"
#include "infospread/common/rng.hpp"
#include "infospread/common/text.hpp"
#include "support.hpp"

using namespace infospread;
using namespace infospread::files;

TEST_CASE("dates and timestamps") {
    const Date d = parse_date("2022-02-28");
    CHECK(format_date(d + std::chrono::days{1}) == "2022-03-01");
    CHECK_THROWS_AS((void)parse_date("2022-02-30"), FormatError);
    CHECK_THROWS_AS((void)parse_date("22-2-1"), FormatError);
    CHECK(format_timestamp(parse_timestamp("2022-03-01T01:30:00+02:00")) == "2022-02-28T23:30:00Z");
    CHECK(format_timestamp(parse_timestamp("2022-03-01T12:00:00.750Z")) == "2022-03-01T12:00:00Z");
    CHECK(format_timestamp(parse_timestamp("2022-03-01")) == "2022-03-01T00:00:00Z");
    CHECK(days_between(parse_date("2022-02-01"), parse_date("2022-04-30")) == 88);
    const DateRange w{parse_date("2022-02-01"), parse_date("2022-04-30")};
    CHECK(w.days() == 89);
    CHECK(w.contains(parse_date("2022-04-30")));
    CHECK_FALSE(w.contains(parse_date("2022-05-01")));
}

TEST_CASE("text normalization") {
    CHECK(text::normalize_lower("KYIV Ünïcode") == "kyiv ünïcode");
    CHECK(text::fold_for_lookup("São Paulo") == text::fold_for_lookup("sao paulo"));
    CHECK(text::letter_tokens("U.S. biolabs, 100% funded!") == std::vector<std::string>{"u", "s", "biolabs", "funded"});
    CHECK(text::trim("  a b \t") == "a b");
    CHECK(text::split("a|b||c", '|') == std::vector<std::string>{"a", "b", "", "c"});
}

TEST_CASE("csv round trip with quoting") {
    const std::string line = csv::join({"plain", "with,comma", "with \"quote\"", "multi\nline"});
    const auto rows = csv::parse("h1,h2,h3,h4\n" + line + "\n");
    REQUIRE(rows.size() == 2);
    CHECK(rows[1] == csv::Row{"plain", "with,comma", "with \"quote\"", "multi\nline"});
    const csv::Table t(rows);
    CHECK(t.column("h3") == 2);
    CHECK_THROWS_AS((void)t.column("nope"), FormatError);
    CHECK(csv::real(0.1) == "0.1");
    CHECK(csv::fixed(15.04, 1) == "15.0");
    CHECK_THROWS_AS((void)csv::parse("a,\"unterminated\n"), FormatError);
}

TEST_CASE("rng is reproducible and substreams are independent") {
    Rng a = Rng::substream(42, "alpha");
    Rng b = Rng::substream(42, "alpha");
    Rng c = Rng::substream(42, "beta");
    bool all_same = true;
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        all_same = all_same && x == b.next_u64();
        any_diff = any_diff || x != c.next_u64();
    }
    CHECK(all_same);
    CHECK(any_diff);
    CHECK(derive_seed(1, "irf-bootstrap", 0) != derive_seed(1, "irf-bootstrap", 1));
    CHECK(Rng::kVersion == "mt19937_64+splitmix/v1");
}

TEST_CASE("rng distribution moments") {
    Rng rng = Rng::substream(7, "moments");
    const int n = 200'000;
    double sn = 0, sn2 = 0, sg = 0, sp = 0, snb = 0, snb2 = 0, su = 0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
        sg += rng.gamma(2.5);
        sp += static_cast<double>(rng.poisson(3.0));
        const double nb = static_cast<double>(rng.negative_binomial(15.0, 0.5));
        snb += nb;
        snb2 += nb * nb;
        su += rng.uniform();
    }
    CHECK(sn / n == doctest::Approx(0.0).epsilon(0.01).scale(1.0));
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(sg / n == doctest::Approx(2.5).epsilon(0.01));
    CHECK(sp / n == doctest::Approx(3.0).epsilon(0.01));
    CHECK(snb / n == doctest::Approx(15.0).epsilon(0.02));
    const double var_nb = snb2 / n - (snb / n) * (snb / n);
    CHECK(var_nb == doctest::Approx(15.0 + 15.0 * 15.0 / 0.5).epsilon(0.05));
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const auto v = rng.below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("atomic write and sha256") {
    const auto dir = test_support::temp_dir("files");
    write_atomic(dir / "a.txt", "abc");
    CHECK(read_text(dir / "a.txt") == "abc");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_file(dir / "a.txt") == sha256_hex("abc"));
    write_atomic(dir / "a.txt", "xyz");
    CHECK(read_text(dir / "a.txt") == "xyz");
    CHECK_THROWS_AS((void)read_text(dir / "missing.txt"), Error);
}
