#!/usr/bin/env python3
"""Extracts the sentiment lexicon, booster table and negation list from the
vaderSentiment distribution (MIT licensed) into the plain-text asset formats
read by hvd::sentiment."""
import sys
from pathlib import Path

import vaderSentiment.vaderSentiment as vs


def main(out_dir: str) -> None:
    out = Path(out_dir)
    src = Path(vs.__file__).parent / "vader_lexicon.txt"
    with open(src, encoding="utf-8") as f, \
            open(out / "sentiment_lexicon.tsv", "w", encoding="utf-8", newline="\n") as g:
        for line in f:
            parts = line.rstrip("\n").split("\t")
            if len(parts) >= 2 and parts[0]:
                g.write(f"{parts[0]}\t{parts[1]}\n")
    with open(out / "boosters.tsv", "w", encoding="utf-8", newline="\n") as g:
        for word, inc in sorted(vs.BOOSTER_DICT.items()):
            if " " not in word:
                g.write(f"{word}\t{inc}\n")
    with open(out / "negations.txt", "w", encoding="utf-8", newline="\n") as g:
        # "no" is a lexicon word that the reference model also treats as a
        # negator of the following lexicon word
        for word in sorted(set(vs.NEGATE) | {"no"}):
            g.write(word + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
