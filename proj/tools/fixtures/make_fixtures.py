"""Regenerates fixtures/mini and fixtures/paper_like.

Run from the repository root: python3 tools/fixtures/make_fixtures.py
Output is deterministic for a given numpy version.
"""
import csv
import datetime as dt
import json
import pathlib
import warnings

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parents[2] / "fixtures"
START = dt.date(2022, 2, 1)
DAYS = 89  # 2022-02-01 .. 2022-04-30

TOPICS = {
    "biolabs": [
        ("en", "US-funded biolabs in Ukraine are developing bioweapons", None),
        ("de", "In der Ukraine entwickeln von den USA finanzierte Biolabore Biowaffen",
         "Biolabs in Ukraine funded by the USA develop biological weapons"),
        ("en", "Pentagon secretly runs military biological laboratories in Ukraine", None),
        ("fr", "Des laboratoires biologiques americains en Ukraine preparent des armes",
         "American biological laboratories in Ukraine prepare weapons"),
        ("en", "Ukraine biolabs experimented with bat coronavirus for the Pentagon", None),
        ("es", "Los biolaboratorios de Ucrania fabrican armas biologicas para la OTAN",
         "Ukraine biolabs make biological weapons for NATO"),
        ("en", "Hunter Biden financed dangerous pathogen research labs in Ukraine", None),
        ("en", "Migratory birds carry pathogens from Ukraine biolabs to Russia", None),
    ],
    "refugees": [
        ("en", "Ukrainian refugees are committing violent crimes in Poland", None),
        ("de", "Ukrainische Fluechtlinge erhalten mehr Geld als deutsche Rentner",
         "Ukrainian refugees receive more money than German pensioners"),
        ("en", "Refugees from Ukraine burned a Polish flag in Warsaw", None),
        ("fr", "Les refugies ukrainiens ont vandalise des voitures en France",
         "Ukrainian refugees vandalized cars in France"),
        ("en", "Ukrainian refugee murdered a family in Germany", None),
        ("es", "Los refugiados ucranianos reciben casas gratis en Espana",
         "Ukrainian refugees receive free houses in Spain"),
        ("en", "Only Ukrainian refugees with Nazi tattoos are let into Europe", None),
        ("en", "Ukraine refugees spread disease in Moldova camps", None),
    ],
    "staged": [
        ("en", "The Bucha massacre in Ukraine was staged with crisis actors", None),
        ("de", "Die Leichen in Butscha haben sich im Video bewegt, alles inszeniert",
         "The corpses in Bucha moved in the video, everything was staged Ukraine"),
        ("en", "Kramatorsk station strike was a Ukrainian army false flag", None),
        ("fr", "Le bombardement de la maternite de Marioupol etait une mise en scene",
         "The bombing of the Mariupol maternity hospital in Ukraine was staged"),
        ("en", "Zelensky filmed his Kyiv videos in front of a green screen", None),
        ("es", "La mujer embarazada de Mariupol era una actriz pagada",
         "The pregnant woman from Mariupol Ukraine was a paid actress"),
        ("en", "Dead bodies in Kyiv streets were mannequins placed by the army", None),
        ("en", "Ukraine staged the sinking of the Moskva cruiser footage", None),
    ],
}
# (later index, earlier index) within the same topic: planted duplicate debunks.
DUPLICATES = {"biolabs": [(3, 0)], "refugees": [(5, 2)], "staged": [(7, 1)]}
PUBLISHERS = ["https://factcheck.example.org", "https://correctiv.example.de", "https://afp.example.com",
              "https://maldita.example.es"]
DISINFO_HOSTS = ["https://www.facebook.com/posts/", "https://t.me/channel/", "https://arabic.rt.com/news/",
                 "https://de.news-front.info/", "https://www.youtube.com/watch?v="]
LOCATIONS = ["Berlin, Germany", "Moscow", "Kyiv, Ukraine", "Paris", "Warszawa", "Madrid, Spain",
             "somewhere over the rainbow", None, None]
AFFECTED = ["Ukraine", "Germany", "Poland", "France", "United States"]


def iso(d):
    return d.isoformat()


def make_mini(rng):
    out = ROOT / "mini"
    out.mkdir(parents=True, exist_ok=True)
    dim = 64
    centers = {t: rng.normal(size=dim) for t in TOPICS}
    debunks = []
    vectors = {}
    n = 0
    for ti, (topic, claims) in enumerate(TOPICS.items()):
        for ci, (lang, claim, claim_en) in enumerate(claims):
            n += 1
            day = int(rng.integers(0, 70))
            ident = f"d{n:02d}"
            vec = centers[topic] + rng.normal(scale=1.0, size=dim)
            debunks.append({"id": ident, "topic": topic, "index": ci, "lang": lang, "claim": claim,
                            "claim_en": claim_en, "date": START + dt.timedelta(days=day),
                            "publisher": PUBLISHERS[(ti + ci) % len(PUBLISHERS)],
                            "links": [f"{DISINFO_HOSTS[(n + j) % len(DISINFO_HOSTS)]}{topic}{n}x{j}"
                                      for j in range(1 + n % 3)],
                            "source": "euvsdisinfo" if ci in (2, 6) else "claimreview"})
            vectors[ident] = vec
    by_key = {(d["topic"], d["index"]): d for d in debunks}
    for topic, pairs in DUPLICATES.items():
        for later, earlier in pairs:
            a, b = by_key[(topic, later)], by_key[(topic, earlier)]
            vectors[a["id"]] = vectors[b["id"]] + rng.normal(scale=0.05, size=dim)
            a["date"] = b["date"] + dt.timedelta(days=5)
    # Check the planted pairs are the only ones at cosine >= 0.8.
    ids = sorted(vectors)
    unit = {i: vectors[i] / np.linalg.norm(vectors[i]) for i in ids}
    planted = {(by_key[(t, l)]["id"], by_key[(t, e)]["id"]) for t, p in DUPLICATES.items() for l, e in p}
    planted = {tuple(sorted(p)) for p in planted}
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            c = float(unit[a] @ unit[b])
            assert (c >= 0.8) == ((a, b) in planted), (a, b, c)

    reviews = []
    euvs = []
    for d in debunks:
        url = f"{d['publisher']}/check/{d['id']}"
        if d["source"] == "claimreview":
            review = {"@type": "ClaimReview", "@id": d["id"], "url": url, "datePublished": iso(d["date"]),
                      "claimReviewed": d["claim"], "inLanguage": {"@type": "Language", "alternateName": d["lang"]},
                      "itemReviewed": {"@type": "Claim", "appearance": [{"url": u} for u in d["links"]]},
                      "reviewRating": {"alternateName": "False"}}
            if d["claim_en"]:
                review["claimReviewedEn"] = d["claim_en"]
            reviews.append(review)
        else:
            euvs.append({"id": d["id"], "url": url, "date_published": iso(d["date"]), "claim_text": d["claim"],
                         "claim_text_en": d["claim_en"] or "", "language": d["lang"],
                         "disinfo_links": "|".join(d["links"]),
                         "affected_countries": "|".join(AFFECTED[: 1 + int(d["id"][1:]) % 3])})
    # Rejected by the filter: out of window, and no keyword.
    reviews.append({"@type": "ClaimReview", "@id": "d90", "url": "https://afp.example.com/check/d90",
                    "datePublished": "2022-05-10", "claimReviewed": "Ukraine sold donated weapons on the dark web",
                    "inLanguage": "en", "itemReviewed": {"appearance": [{"url": "https://t.me/channel/late"}]}})
    reviews.append({"@type": "ClaimReview", "@id": "d91", "url": "https://afp.example.com/check/d91",
                    "datePublished": "2022-03-03", "claimReviewed": "Vaccines contain tracking microchips",
                    "inLanguage": "en", "itemReviewed": {"appearance": [{"url": "https://t.me/channel/vax"}]}})
    feed = {"@context": "https://schema.org", "@type": "DataFeed",
            "dataFeedElement": [{"@type": "DataFeedItem", "item": [r]} for r in reviews]}
    (out / "claimreview.json").write_text(json.dumps(feed, indent=1, ensure_ascii=False) + "\n")
    with open(out / "euvsdisinfo.csv", "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=["id", "url", "date_published", "claim_text", "claim_text_en", "language",
                                          "disinfo_links", "affected_countries"], lineterminator="\n")
        w.writeheader()
        w.writerows(euvs)
    with open(out / "embeddings.jsonl", "w") as f:
        for i in ids:
            f.write(json.dumps({"id": i, "vector": [round(float(v), 6) for v in vectors[i]]}) + "\n")
    (out / "keywords.txt").write_text("# placeholder keyword list\nukrain\nkyiv\nbucha\nmariupol\nzelensky\n")

    # Posts: daily intensities with a March spike; debunk sharing follows disinformation.
    posts = []
    spike = np.array([1.0 + 2.5 * np.exp(-((t - 33) / 7.0) ** 2) for t in range(DAYS)])
    dis_prev = 0.0
    pid = 0
    hashtags_dis = ["ukraine", "biolabs", "nato", "stopnato", "bucha"]
    hashtags_deb = ["factcheck", "ukraine", "disinformation"]
    for t in range(DAYS):
        day = START + dt.timedelta(days=t)
        n_dis = int(rng.poisson(5.0 * spike[t]))
        n_deb = int(rng.poisson(1.0 + 0.35 * dis_prev))
        dis_prev = n_dis
        for label, count in (("dis", n_dis), ("deb", n_deb)):
            for _ in range(count):
                pid += 1
                # Posts cluster around the debunk date, mostly just before it.
                w = np.array([np.exp(-abs(t - ((x["date"] - START).days - 2)) / 5.0) for x in debunks])
                d = debunks[int(rng.choice(len(debunks), p=w / w.sum()))]
                if label == "dis":
                    url = d["links"][int(rng.integers(0, len(d["links"])))]
                    if rng.random() < 0.2:
                        url += ("&" if "?" in url else "?") + "utm_source=twitter"
                    followers = int(rng.negative_binomial(1.2, 1.2 / (1.2 + 6000)))
                    tags = [hashtags_dis[int(rng.integers(0, len(hashtags_dis)))]]
                else:
                    url = f"{d['publisher']}/check/{d['id']}"
                    followers = int(rng.negative_binomial(1.2, 1.2 / (1.2 + 2000)))
                    tags = [hashtags_deb[int(rng.integers(0, len(hashtags_deb)))]]
                secs = int(rng.integers(0, 86400))
                ts = dt.datetime.combine(day, dt.time()) + dt.timedelta(seconds=secs)
                posts.append({"id": f"p{pid:04d}", "created_at": ts.strftime("%Y-%m-%dT%H:%M:%SZ"),
                              "text": f"shared {url}", "author_followers": followers,
                              "author_tweet_count": int(rng.negative_binomial(1.5, 1.5 / (1.5 + 8000))),
                              "retweet_count": int(rng.poisson(3 if label == "dis" else 1.5)),
                              "reply_count": int(rng.poisson(1)),
                              "like_count": int(rng.poisson(8 if label == "dis" else 4)),
                              "quote_count": int(rng.poisson(0.3)),
                              "author_location": LOCATIONS[int(rng.integers(0, len(LOCATIONS)))],
                              "urls": [url], "hashtags": tags, "is_retweet": bool(rng.random() < 0.3)})
    posts.append({"id": "p9990", "created_at": "2022-03-02T10:00:00Z", "text": "no links here",
                  "author_followers": 10, "author_tweet_count": 5, "retweet_count": 0, "reply_count": 0,
                  "like_count": 0, "quote_count": 0, "urls": ["https://example.net/unrelated"], "hashtags": [],
                  "is_retweet": False})
    posts.append({"id": "p9991", "created_at": "2022-06-02T10:00:00Z", "text": "too late",
                  "author_followers": 10, "author_tweet_count": 5, "retweet_count": 0, "reply_count": 0,
                  "like_count": 0, "quote_count": 0, "urls": [debunks[0]["links"][0]], "hashtags": [],
                  "is_retweet": False})
    with open(out / "posts.jsonl", "w") as f:
        for p in posts:
            if p.get("author_location") is None:
                p.pop("author_location", None)
            f.write(json.dumps(p, ensure_ascii=False) + "\n")

    (out / "config.yaml").write_text("""# Mini end-to-end fixture.
inputs:
  claimreview: claimreview.json
  euvsdisinfo: euvsdisinfo.csv
  posts: posts.jsonl
  keywords: keywords.txt
  embeddings: embeddings.jsonl
window:
  start: 2022-02-01
  end: 2022-04-30
alpha: 0.01
seed: 42
output: out
timeseries:
  rolling_window: 7
  include_retweets: true
engagement:
  top_hashtags: 100
  crosstab_rows: 8
  top_domains: 10
  lag_bin_width: 1
causality:
  input: raw
  max_lag: 7
  horizon: 14
  bootstrap_draws: 200
  adf_regression: c
  difference_if_nonstationary: true
topics:
  k: 3
  max_iter: 300
  top_words: 10
dedup:
  threshold: 0.8
  sweep: [0.6, 0.7, 0.8, 0.9]
""")
    return len(debunks), len(posts)


def make_paper_like(rng):
    """Two coupled daily count streams with a March spike in disinformation."""
    out = ROOT / "paper_like"
    out.mkdir(parents=True, exist_ok=True)
    a = np.array([[0.30, -0.70], [0.40, 0.20]])  # row: equation (disinformation, debunk)
    burn = 60
    x = np.zeros((DAYS + burn, 2))
    for t in range(1, DAYS + burn):
        day = t - burn
        spike = 60.0 * np.exp(-((day - 33) / 3.0) ** 2) if day >= 0 else 0.0
        c = np.array([100.0 + spike, 20.0])
        x[t] = c + a @ x[t - 1] + rng.normal(scale=[12.0, 12.0])
    counts = np.maximum(np.rint(x[burn:]), 0).astype(int)
    with open(out / "series.csv", "w") as f:
        f.write("date,label,count\n")
        for label, col in (("disinformation", 0), ("debunk", 1)):
            for t in range(DAYS):
                f.write(f"{iso(START + dt.timedelta(days=t))},{label},{counts[t, col]}\n")
    (out / "config.yaml").write_text("""# Series-only fixture; the causality stage reads timeseries/daily.csv
# (a copy of series.csv). Inputs point at the mini fixture to satisfy validation.
inputs:
  claimreview: ../mini/claimreview.json
  posts: ../mini/posts.jsonl
  keywords: ../mini/keywords.txt
alpha: 0.01
seed: 42
output: out
causality:
  input: raw
  max_lag: 7
  horizon: 14
  bootstrap_draws: 200
  adf_regression: c
  difference_if_nonstationary: true
""")
    return counts


def check_paper_like(counts):
    from statsmodels.tsa.api import VAR
    from statsmodels.tsa.stattools import adfuller, grangercausalitytests
    warnings.simplefilter("ignore")
    data = counts.astype(float)
    # Same rule as the causality stage: difference both series once unless
    # both reject a unit root at 1%.
    pvals = [adfuller(data[:, col], regression="c", autolag="AIC")[1] for col in range(2)]
    print("adf p (levels):", [f"{p:.3g}" for p in pvals])
    assert max(pvals) <= 0.01, "levels should be stationary, as the paper reports"
    res = VAR(data).fit(maxlags=7, ic="aic", trend="c")
    print("selected lag", res.k_ar)
    for cause, effect in ((1, 0), (0, 1)):
        # Single-equation SSR F test, as in the causality stage.
        out = grangercausalitytests(data[:, [effect, cause]], [res.k_ar], verbose=False)
        p = out[res.k_ar][0]["ssr_ftest"][1]
        print(f"granger {cause}->{effect}: p = {p:.3g}")
        assert p <= 0.01
    fevd = res.fevd(14).decomp[0][:, 1]
    print("debunk share of disinformation FEVD:", np.round(fevd, 4))
    assert fevd[0] < 1e-12 and fevd[1] > fevd[0] + 0.01
    assert all(fevd[i + 1] >= fevd[i] - 0.01 for i in range(4))
    assert fevd[6:].max() - fevd[6:].min() < 0.02


if __name__ == "__main__":
    rng = np.random.default_rng(20220201)
    print("mini: %d debunks, %d posts" % make_mini(rng))
    check_paper_like(make_paper_like(np.random.default_rng(20220224)))
