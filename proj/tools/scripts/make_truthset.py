"""Truthset for the detection corpus: each review is labelled with the value
item of the table row it was taken from."""

import json
import sys

SPELLING = {"Curiousity": "Curiosity"}


def main(table: str, corpus: str, dst: str) -> None:
    rows = [json.loads(line) for line in open(table, encoding="utf-8")]
    reviews = [json.loads(line) for line in open(corpus, encoding="utf-8")]
    assert len(rows) == len(reviews)
    with open(dst, "w", encoding="utf-8", newline="\n") as out:
        for row, rev in zip(rows, reviews):
            assert row["text"] == rev["text"]
            rec = {"review_id": rev["review_id"],
                   "violated_items": [SPELLING.get(row["item"], row["item"])],
                   "violated_categories": [row["category"]]}
            out.write(json.dumps(rec) + "\n")


if __name__ == "__main__":
    main(*sys.argv[1:4])
