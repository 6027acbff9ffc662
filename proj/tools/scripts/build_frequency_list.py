#!/usr/bin/env python3
"""Builds data/word_frequency.tsv from the English word counts shipped with
the `autocorrect` package (Wikipedia-derived). Counts are case-merged, only
alphabetic words are kept, wiki-markup residue is dropped, and common
contractions are added with the count of their apostrophe-free spelling."""
import json
import re
import sys
import tarfile
from pathlib import Path

import autocorrect

MARKUP = {"quot", "gt", "lt", "amp", "nbsp", "ref", "http", "https", "www",
          "html", "px", "td", "br", "nowiki"}
CONTRACTIONS = """ain't aren't can't couldn't didn't doesn't don't hadn't hasn't haven't
he'd he'll he's i'd i'll i'm i've isn't it'd it'll it's let's mightn't mustn't needn't
shan't she'd she'll she's shouldn't that's there's they'd they'll they're they've
wasn't we'd we'll we're we've weren't what's who's won't wouldn't you'd you'll
you're you've""".split()


def main(out_path: str) -> None:
    archive = Path(autocorrect.__file__).parent / "data" / "en.tar.gz"
    with tarfile.open(archive) as tar:
        raw = json.load(tar.extractfile("word_count.json"))
    counts = {}
    for word, n in raw.items():
        w = word.lower()
        if re.fullmatch(r"[a-z]+", w) and w not in MARKUP:
            counts[w] = counts.get(w, 0) + n
    for c in CONTRACTIONS:
        base = c.replace("'", "")
        counts[c] = max(counts.get(base, 0), 1000)
    rows = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    with open(out_path, "w", encoding="utf-8", newline="\n") as f:
        for w, n in rows:
            f.write(f"{w}\t{n}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/word_frequency.tsv")
