#!/usr/bin/env python3
"""Build data/gazetteer.tsv (place<TAB>country) from the geonamescache package.

Usage: python3 make_gazetteer.py <path-to-geonamescache-package-dir> > gazetteer.tsv

Entries: country names plus a small alias list, US state names, and every
city with population >= 15000 (primary name, plus Latin/Cyrillic alternate
names for cities above ALT_MIN_POPULATION). Keys are written as-is; the loader folds case and diacritics.
Collisions keep countries first, then the most populous city.
"""
import sys
import unicodedata

sys.path.insert(0, sys.argv[1])
import geonamescache  # noqa: E402

STOP = {
    "a", "an", "and", "are", "as", "at", "be", "by", "for", "from", "home", "in",
    "is", "it", "of", "on", "or", "the", "to", "with", "world", "earth", "here",
    "everywhere", "nowhere", "somewhere", "north", "south", "east", "west",
    "city", "town", "love", "life", "free", "truth", "god", "heaven", "hell",
}

ALT_MIN_POPULATION = 300000

ALIASES = {
    "usa": "United States", "u.s.a.": "United States", "u.s.": "United States",
    "america": "United States", "united states of america": "United States",
    "uk": "United Kingdom", "great britain": "United Kingdom", "britain": "United Kingdom",
    "england": "United Kingdom", "scotland": "United Kingdom", "wales": "United Kingdom",
    "northern ireland": "United Kingdom",
    "россия": "Russia", "российская федерация": "Russia", "russian federation": "Russia",
    "україна": "Ukraine", "украина": "Ukraine", "deutschland": "Germany",
    "españa": "Spain", "méxico": "Mexico", "italia": "Italy", "polska": "Poland",
    "brasil": "Brazil", "nederland": "Netherlands", "the netherlands": "Netherlands",
    "holland": "Netherlands", "schweiz": "Switzerland", "suisse": "Switzerland",
    "österreich": "Austria", "magyarország": "Hungary", "türkiye": "Turkey",
    "беларусь": "Belarus", "srbija": "Serbia", "србија": "Serbia",
}


def fold(s):
    s = unicodedata.normalize("NFD", s)
    s = "".join(ch for ch in s if unicodedata.category(ch) != "Mn")
    return " ".join(s.casefold().split())


def usable(name):
    if len(name) < 3:
        return False
    for ch in name:
        if ch.isalpha():
            script = unicodedata.name(ch, "")
            if not (script.startswith("LATIN") or script.startswith("CYRILLIC")):
                return False
    return True


def main():
    gc = geonamescache.GeonamesCache()
    countries = gc.get_countries()
    iso_to_name = {iso: c["name"] for iso, c in countries.items()}
    table = {}

    def put(key, country, rank):
        k = fold(key)
        if not k or k in STOP:
            return
        prev = table.get(k)
        if prev is None or rank > prev[2]:
            table[k] = (key, country, rank)

    top = float("inf")
    for c in countries.values():
        put(c["name"], c["name"], top)
    for alias, country in ALIASES.items():
        put(alias, country, top)
    for s in gc.get_us_states().values():
        put(s["name"], "United States", 1e12)
    for city in gc.get_cities().values():
        country = iso_to_name.get(city["countrycode"])
        if country is None:
            continue
        pop = city["population"]
        if usable(city["name"]):
            put(city["name"], country, pop)
        if pop < ALT_MIN_POPULATION:
            continue
        for alt in city.get("alternatenames", []):
            if usable(alt):
                put(alt, country, pop)

    out = sys.stdout
    out.write("# place\tcountry -- generated by tools/data/make_gazetteer.py from geonamescache 3.0.2\n")
    for k in sorted(table):
        key, country, _ = table[k]
        out.write(f"{key}\t{country}\n")


if __name__ == "__main__":
    main()
