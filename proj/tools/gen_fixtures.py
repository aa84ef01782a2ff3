#!/usr/bin/env python3
"""Regenerate the fixture corpus, keyword pool, lexicon files, and sample config.

Deterministic: same seed, same bytes. Run from the repository root:

    python3 tools/gen_fixtures.py
"""

import os
import random
import shutil

SEED = 7
ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")

POOL = [
    "solar", "photovoltaic", "panel", "inverter", "irradiance",
    "silicon", "grid", "cell", "energy", "module",
]

# keywords that stay topic-exclusive versus ones other topics also use
# heavily; queries built from the ambiguous ones retrieve junk until the
# evolution breeds them out
STRONG = ["solar", "photovoltaic", "panel", "inverter", "irradiance", "silicon", "module"]
WEAK = ["cell", "grid", "energy"]

# surface variants that lemmatize back onto pool or synonym lemmas
SOLAR_SURFACES = {
    "solar": ["solar"],
    "photovoltaic": ["photovoltaic", "pv"],
    "panel": ["panel", "panels"],
    "inverter": ["inverter", "inverters", "converter"],
    "irradiance": ["irradiance", "insolation", "sunlight"],
    "silicon": ["silicon", "wafer", "wafers"],
    "grid": ["grid", "grids", "network"],
    "cell": ["cell", "cells", "battery", "batteries"],
    "energy": ["energy", "electricity"],
    "module": ["module", "modules", "array"],
}

GENOME_VOCAB = [
    "genome", "gene", "dna", "sequencing", "chromosome", "protein",
    "enzyme", "splicing", "helix", "polymerase", "nucleotide", "plasmid",
    "primer", "codon", "ribosome", "transcription",
]

COFFEE_VOCAB = [
    "coffee", "espresso", "roast", "roasting", "brew", "brewing", "grind",
    "grinding", "barista", "arabica", "robusta", "crema", "caffeine",
    "portafilter", "tamper", "cupping",
]

FILLERS = [
    "report", "study", "method", "design", "result", "measure", "data",
    "system", "test", "field", "note", "review", "model", "value", "case",
    "process", "team", "plan", "work", "survey",
]

CONNECTORS = ["the", "a", "of", "for", "and", "with", "on", "in", "also", "via"]


def sentence(rng, words):
    picked = list(words)
    out = []
    for i, word in enumerate(picked):
        out.append(word)
        if i + 1 < len(picked) and rng.random() < 0.4:
            out.append(rng.choice(CONNECTORS))
    text = " ".join(out)
    return text[0].upper() + text[1:] + "."


def solar_doc(rng, n):
    if rng.random() < 0.10:
        return survey_doc(rng, n)
    # deep pages: a few pool keywords covered together at real depth; a
    # query whose genes match one of these focus sets ranks it above any
    # single-keyword spam page
    focus = rng.sample(STRONG, rng.randint(2, 4))
    title_terms = rng.sample(focus, min(2, len(focus)))
    title = "Solar briefing {}: {}".format(n, " and ".join(title_terms))
    bag = []
    for key in focus:
        for _ in range(rng.randint(4, 7)):
            bag.append(rng.choice(SOLAR_SURFACES[key]))
    for _ in range(rng.randint(2, 3)):
        bag.append(rng.choice(FILLERS))
    rng.shuffle(bag)
    return title, bag


def survey_doc(rng, n):
    # a handful of broad overview pages carrying every pool keyword; they
    # keep every pool term present in whatever mix a population retrieves
    # and score high against the pool pattern
    keys = rng.sample(POOL, 2)
    title = "Solar briefing {}: {} and {} overview".format(n, keys[0], keys[1])
    bag = []
    for key in POOL:
        for _ in range(rng.randint(2, 3)):
            bag.append(rng.choice(SOLAR_SURFACES[key]))
    if rng.random() < 0.5:
        bag.append(rng.choice(FILLERS))
    rng.shuffle(bag)
    return title, bag


def trap_doc(rng, n, label, vocab, key):
    # spam pages: one strong pool keyword stuffed hard into otherwise
    # off-topic text; they outrank genuine pages for scattered queries but
    # score poorly against the pool pattern
    surfaces = SOLAR_SURFACES[key]
    title = "{} {} deals {}".format(key.capitalize(), label, n)
    bag = []
    for _ in range(rng.randint(10, 14)):
        bag.append(rng.choice(surfaces))
    for word in rng.sample(vocab, rng.randint(4, 6)):
        for _ in range(rng.randint(1, 3)):
            bag.append(word)
    for _ in range(rng.randint(2, 4)):
        bag.append(rng.choice(FILLERS))
    rng.shuffle(bag)
    return title, bag


def offtopic_doc(rng, n, label, vocab, stuffing, hub):
    title_terms = rng.sample(vocab, 2)
    title = "{} briefing {}: {}".format(label.capitalize(), n, " and ".join(title_terms))
    bag = []
    for word in rng.sample(vocab, rng.randint(5, 8)):
        for _ in range(rng.randint(1, 4)):
            bag.append(word)
    # off-topic docs lean hard on a few words the keyword pool also uses;
    # hub docs stuff every one of them at once, so several of the pool's
    # ambiguous keywords retrieve the same junk
    for surfaces, prob, lo, hi in stuffing:
        if hub:
            for _ in range(hi):
                bag.append(rng.choice(surfaces))
        elif rng.random() < prob:
            for _ in range(rng.randint(lo, hi)):
                bag.append(rng.choice(surfaces))
    for _ in range(rng.randint(3, 7)):
        bag.append(rng.choice(FILLERS))
    rng.shuffle(bag)
    return title, bag


def write_doc(path, title, bag, rng):
    lines = [title]
    i = 0
    while i < len(bag):
        take = min(len(bag) - i, rng.randint(6, 11))
        lines.append(sentence(rng, bag[i:i + take]))
        i += take
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


def main():
    rng = random.Random(SEED)
    corpus = os.path.join(ROOT, "corpus")
    if os.path.isdir(corpus):
        shutil.rmtree(corpus)
    # one directory per site; same_host grouping keys on the first path
    # component, so spreading a topic over several sites keeps a full page
    # of on-topic results from collapsing under the same-host demotion
    sites = {"solar": 8, "genome": 3, "coffee": 3}
    for topic, count in sites.items():
        for k in range(count):
            os.makedirs(os.path.join(corpus, "%s%d" % (topic, k)))

    genome_stuffing = [
        (["cell", "cells"], 0.7, 4, 8),
        (["grid", "grids"], 0.3, 3, 6),
    ]
    coffee_stuffing = [
        (["energy"], 0.7, 3, 7),
        (["grid"], 0.25, 2, 4),
    ]
    for n in range(80):
        title, bag = solar_doc(rng, n)
        site = "solar%d" % (n % sites["solar"])
        write_doc(os.path.join(corpus, site, "doc_%03d.txt" % n), title, bag, rng)
    for n in range(60):
        if n % 4 == 2:
            key = STRONG[(n // 4) % len(STRONG)]
            title, bag = trap_doc(rng, n, "genome", GENOME_VOCAB, key)
        else:
            title, bag = offtopic_doc(rng, n, "genome", GENOME_VOCAB, genome_stuffing, n % 6 == 0)
        site = "genome%d" % (n % sites["genome"])
        write_doc(os.path.join(corpus, site, "doc_%03d.txt" % n), title, bag, rng)
    for n in range(60):
        if n % 4 == 2:
            key = STRONG[(n // 4 + 3) % len(STRONG)]
            title, bag = trap_doc(rng, n, "coffee", COFFEE_VOCAB, key)
        else:
            title, bag = offtopic_doc(rng, n, "coffee", COFFEE_VOCAB, coffee_stuffing, n % 6 == 0)
        site = "coffee%d" % (n % sites["coffee"])
        write_doc(os.path.join(corpus, site, "doc_%03d.txt" % n), title, bag, rng)

    with open(os.path.join(ROOT, "keywords_solar.txt"), "w", encoding="utf-8") as f:
        f.write("# keyword pool: solar power\n")
        for word in POOL:
            f.write(word + "\n")

    lex = os.path.join(ROOT, "lexicon")
    os.makedirs(lex, exist_ok=True)
    with open(os.path.join(lex, "lemmas.tsv"), "w", encoding="utf-8") as f:
        f.write("# surface<TAB>lemma overrides\n")
        for pair in [
            ("modules", "module"),
            ("sequencing", "sequencing"),
            ("splicing", "splicing"),
            ("roasting", "roast"),
            ("brewing", "brew"),
            ("grinding", "grind"),
            ("cupping", "cupping"),
        ]:
            f.write("%s\t%s\n" % pair)
    with open(os.path.join(lex, "synonyms.txt"), "w", encoding="utf-8") as f:
        f.write("# one comma-separated group per line\n")
        for group in [
            "photovoltaic, pv",
            "irradiance, insolation, sunlight",
            "grid, network",
            "inverter, converter",
            "silicon, wafer",
            "module, array",
            "cell, battery",
            "energy, electricity",
        ]:
            f.write(group + "\n")
    with open(os.path.join(lex, "stopwords.txt"), "w", encoding="utf-8") as f:
        f.write("# extra stopwords\nalso\nvia\nusing\nwithin\nbetween\n")

    with open(os.path.join(ROOT, "sample.cfg"), "w", encoding="utf-8") as f:
        f.write(
            "# engine and population shape\n"
            "g1 = local\n"
            "g2 = 8\n"
            "g3 = 3\n"
            "g4 = fixtures/keywords_solar.txt\n"
            "# retrieval and fitness\n"
            "f1 = 10\n"
            "f2 = 200\n"
            "f3 = 1000\n"
            "f4 = 0.8\n"
            "f5 = 1\n"
            "f6 = 1\n"
            "f7 = 2\n"
            "f8 = mean\n"
            "# operators\n"
            "c1 = 1.0\n"
            "m1 = 0.1\n"
            "synonym_swap_prob = 0.2\n"
            "crossover_type = one_point\n"
            "# stopping\n"
            "e1 = 10\n"
            "e2 = 0.000001\n"
            "e3 = 50\n"
            "# run control\n"
            "rng_seed = 42\n"
            "autosave = false\n"
        )
    print("fixtures written under", os.path.normpath(ROOT))


if __name__ == "__main__":
    main()
