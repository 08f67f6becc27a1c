#!/usr/bin/env python3
"""Regenerates the bundled toy corpus under data/toy/.

Three synthetic "authors" with distinct function-word habits and
author-specific spellings of a shared lemma vocabulary. Deterministic:
rerunning produces byte-identical files.
"""

import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data" / "toy"

FUNCTION_WORDS = {
    # form, lemma, pos
    "le": ("le", "DETdef"),
    "la": ("le", "DETdef"),
    "un": ("un", "DETndf"),
    "de": ("de", "PRE"),
    "a": ("a", "PRE"),
    "en": ("en", "PRE"),
    "et": ("et", "CONcoo"),
    "que": ("que", "CONsub"),
    "il": ("il", "PROper"),
    "se": ("se", "PROper"),
    "mout": ("mout", "ADVgen"),
    "si": ("si", "ADVgen"),
    "ne": ("ne", "ADVneg"),
}

# lemma -> per-author spelling
CONTENT = {
    "seignor": {"Alp": "seignor", "Bet": "seigneur", "Gam": "signor"},
    "saint": {"Alp": "saint", "Bet": "sainz", "Gam": "sains"},
    "glorieus": {"Alp": "glorieus", "Bet": "glorieux", "Gam": "glorios"},
    "chose": {"Alp": "chose", "Bet": "cose", "Gam": "chouse"},
    "avoir": {"Alp": "avoit", "Bet": "avoir", "Gam": "auoit"},
    "estre": {"Alp": "estoit", "Bet": "estre", "Gam": "iert"},
    "dire": {"Alp": "dist", "Bet": "dit", "Gam": "dis"},
    "faire": {"Alp": "fist", "Bet": "fait", "Gam": "fis"},
    "entendre": {"Alp": "entendre", "Bet": "entandre", "Gam": "entendres"},
    "corone": {"Alp": "corone", "Bet": "couronne", "Gam": "corune"},
    "martir": {"Alp": "martir", "Bet": "martyr", "Gam": "martirs"},
    "miracle": {"Alp": "miracle", "Bet": "miracles", "Gam": "mirecle"},
    "vertu": {"Alp": "vertu", "Bet": "vertus", "Gam": "uertu"},
    "ame": {"Alp": "ame", "Bet": "asme", "Gam": "arme"},
    "ciel": {"Alp": "ciel", "Bet": "chiel", "Gam": "cius"},
}
CONTENT_POS = {
    "seignor": "NOMcom", "saint": "ADJqua", "glorieus": "ADJqua",
    "chose": "NOMcom", "avoir": "VERcjg", "estre": "VERcjg",
    "dire": "VERcjg", "faire": "VERcjg", "entendre": "VERinf",
    "corone": "NOMcom", "martir": "NOMcom", "miracle": "NOMcom",
    "vertu": "NOMcom", "ame": "NOMcom", "ciel": "NOMcom",
}

# Author-specific function-word preference weights.
FW_WEIGHTS = {
    "Alp": {"le": 8, "la": 6, "de": 7, "et": 9, "que": 2, "il": 5, "mout": 4,
            "si": 1, "ne": 2, "a": 3, "en": 2, "un": 1, "se": 1},
    "Bet": {"le": 4, "la": 2, "de": 9, "et": 3, "que": 7, "il": 2, "mout": 1,
            "si": 6, "ne": 5, "a": 5, "en": 4, "un": 3, "se": 3},
    "Gam": {"le": 2, "la": 8, "de": 3, "et": 5, "que": 4, "il": 7, "mout": 2,
            "si": 3, "ne": 1, "a": 2, "en": 6, "un": 4, "se": 6},
}
CONTENT_WEIGHTS = {
    "Alp": [6, 5, 4, 3, 5, 4, 3, 2, 2, 1, 1, 2, 1, 1, 1],
    "Bet": [2, 3, 1, 5, 4, 6, 2, 4, 1, 3, 2, 1, 2, 1, 2],
    "Gam": [3, 2, 5, 1, 2, 3, 5, 3, 4, 2, 3, 2, 1, 2, 1],
}

COLLECTIONS = {"Alp": "Leg-A", "Bet": "Leg-B", "Gam": "Leg-C"}
TITLES = ["Pierre", "Nicolas", "Marguerite", "Benoit"]


def make_doc(rng, author, length):
    lemmas = list(CONTENT)
    tokens = []
    for _ in range(length):
        if rng.random() < 0.55:
            fw = rng.choices(list(FW_WEIGHTS[author]),
                             weights=list(FW_WEIGHTS[author].values()))[0]
            lemma, pos = FUNCTION_WORDS[fw]
            tokens.append((fw, lemma, pos))
        else:
            lemma = rng.choices(lemmas, weights=CONTENT_WEIGHTS[author])[0]
            tokens.append((CONTENT[lemma][author], lemma, CONTENT_POS[lemma]))
        if rng.random() < 0.04:
            tokens.append((".", ".", "PONfrt"))
    return tokens


def main():
    rng = random.Random(412)
    raw_dir = ROOT / "raw"
    ann_dir = ROOT / "annotated"
    raw_dir.mkdir(parents=True, exist_ok=True)
    ann_dir.mkdir(parents=True, exist_ok=True)
    idx = 0
    for author in ["Alp", "Bet", "Gam"]:
        for title in TITLES:
            idx += 1
            length = rng.randint(260, 420)
            tokens = make_doc(rng, author, length)
            doc_id = f"{idx:02d}_{author}_{COLLECTIONS[author]}_NA_NA_Vie_{title}"
            (ann_dir / f"{doc_id}.tsv").write_text(
                "".join(f"{f}\t{l}\t{p}\n" for f, l, p in tokens), encoding="utf-8")
            # raw text: forms only, no punctuation (HTR-style stream)
            forms = [f for f, _, p in tokens if not p.startswith("PON")]
            lines = [" ".join(forms[i:i + 10]) for i in range(0, len(forms), 10)]
            (raw_dir / f"{doc_id}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    # one deliberately short text, removed by the demo config's length filter
    idx += 1
    tokens = make_doc(rng, "Alp", 40)
    doc_id = f"{idx:02d}_Alp_Leg-A_NA_NA_Vie_Fragment"
    (ann_dir / f"{doc_id}.tsv").write_text(
        "".join(f"{f}\t{l}\t{p}\n" for f, l, p in tokens), encoding="utf-8")
    forms = [f for f, _, p in tokens if not p.startswith("PON")]
    (raw_dir / f"{doc_id}.txt").write_text(" ".join(forms) + "\n", encoding="utf-8")
    print(f"wrote {idx} documents under {ROOT}")


if __name__ == "__main__":
    main()
