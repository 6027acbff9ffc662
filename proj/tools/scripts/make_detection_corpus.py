"""Turns tests/fixtures/table_reviews.jsonl into a review corpus for the
detection tests: ids t01..t50, apps assigned round-robin, seeded likes.
Reviews of the Self-direction and Benevolence rows get a likes bonus so the
likes ranking has those two categories on top."""

import json
import random
import sys

APPS = ["pinterest", "trainingpeaks", "minecraft", "monopoly", "picsart", "anydo",
        "telegram", "tripadvisor", "paybyphone", "cellopark", "tiktok", "cba"]


def main(src: str, dst: str) -> None:
    rng = random.Random(50)
    rows = [json.loads(line) for line in open(src, encoding="utf-8")]
    with open(dst, "w", encoding="utf-8", newline="\n") as out:
        for n, row in enumerate(rows):
            likes = rng.randint(0, 12)
            if row["category"] in ("Self-direction", "Benevolence"):
                likes += 40
            rec = {"review_id": f"t{n + 1:02d}", "app_id": APPS[n % len(APPS)],
                   "text": row["text"], "rating": 1 + rng.randint(0, 2), "likes": likes}
            out.write(json.dumps(rec, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
