"""Freezes reference compound scores for the 200-sentence sentiment fixture.

The fixture is the 50 example reviews in tests/fixtures/table_reviews.jsonl
plus 150 synthetic review sentences built from templates below. Scores come
from the vaderSentiment package (the reference implementation), not from the
C++ code under test.

Output: tests/data/sentiment_reference.tsv, "compound<TAB>sentence" per line.
"""

import json
import random
from pathlib import Path

from vaderSentiment.vaderSentiment import SentimentIntensityAnalyzer

ROOT = Path(__file__).resolve().parents[2]

SUBJECTS = ["This app", "The new update", "Customer support", "The payment screen",
            "Parking history", "The reminder feature", "Group chat", "The sticker pack",
            "Online play", "The video feed"]
PREDICATES = ["is great", "is useless", "is not helpful", "is very good", "is REALLY bad",
              "works fine", "is extremely slow", "is not bad at all", "is kind of okay",
              "never works", "is a scam", "is amazing", "is barely usable", "is honest",
              "is dishonest", "is so frustrating", "keeps crashing", "is the best",
              "is absolutely terrible", "is not great"]
TAILS = ["", ".", "!", "!!", "!!!!", " but the ads are annoying.", " but I love the design!",
         " and I hate it.", " and support is helpful.", " at least it is free."]
EXTRA = [
    "",
    "I would not recommend it to anyone",
    "Thanks for the quick fix",
    "Not happy with the latest changes",
    "Five stars, keep it up",
    "Waste of money and time",
]


def main() -> None:
    rng = random.Random(200)
    sentences = []
    with open(ROOT / "tests" / "fixtures" / "table_reviews.jsonl", encoding="utf-8") as f:
        for line in f:
            sentences.append(json.loads(line)["text"])
    seen = set(sentences)
    while len(sentences) < 200:
        s = f"{rng.choice(SUBJECTS)} {rng.choice(PREDICATES)}{rng.choice(TAILS)}"
        extra = rng.choice(EXTRA)
        if extra:
            s = f"{s} {extra}."
        if s not in seen:
            seen.add(s)
            sentences.append(s)

    analyzer = SentimentIntensityAnalyzer()
    out = ROOT / "tests" / "data" / "sentiment_reference.tsv"
    with open(out, "w", encoding="utf-8", newline="\n") as f:
        for s in sentences:
            assert "\t" not in s and "\n" not in s
            f.write(f"{analyzer.polarity_scores(s)['compound']:.4f}\t{s}\n")


if __name__ == "__main__":
    main()
