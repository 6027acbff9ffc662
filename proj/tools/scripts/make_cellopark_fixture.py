"""Writes tests/fixtures/cellopark_reviews.csv: 607 synthetic Cellopark reviews."""

import csv
import random
from pathlib import Path

OPENERS = ["The app", "Cellopark", "This parking app", "Payment", "The new update", "Support"]
MIDDLES = [
    "charged me twice for one parking session",
    "works fine most of the time",
    "keeps logging me out, very annoying",
    "is easy to use and saves time",
    "would not stop the parking, \"stop\" button did nothing",
    "asked for my card details again",
    "lost my parking history after the update",
    "is useless when the network is slow",
]
ENDINGS = ["", ".", "!", " Please fix.", " Thanks.", "\nWill update my rating."]


def main() -> None:
    rng = random.Random(607)
    out = Path(__file__).resolve().parents[2] / "tests" / "fixtures" / "cellopark_reviews.csv"
    with out.open("w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["review_id", "app_id", "text", "rating", "likes", "date"])
        for i in range(607):
            text = f"{rng.choice(OPENERS)} {rng.choice(MIDDLES)}{rng.choice(ENDINGS)}"
            date = f"2022-{rng.randint(1, 12):02d}-{rng.randint(1, 28):02d}" if i % 5 else ""
            w.writerow([f"cellopark-{i:04d}", "cellopark", text, rng.randint(1, 5), rng.randint(0, 40), date])


if __name__ == "__main__":
    main()
