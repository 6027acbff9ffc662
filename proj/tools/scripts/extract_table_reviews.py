"""Extracts the 50 example reviews of the value-items table from a LaTeX
source into tests/fixtures/table_reviews.jsonl (item, category, f, keywords,
text)."""

import json
import re
import sys
from pathlib import Path


def clean(cell: str) -> tuple[str, list[str]]:
    keywords = re.findall(r"\\textbf\{\\textit\{([^}]*)\}\}|\\textit\{\\textbf\{([^}]*)\}\}", cell)
    keywords = [a or b for a, b in keywords]
    s = re.sub(r"\\begin\{tabular\}\[c\]\{@\{\}[pl](\{13cm\})?@\{\}\}", "", cell)
    s = s.replace("\\end{tabular}", "")
    s = re.sub(r"\\textbf\{\\textit\{([^}]*)\}\}", r"\1", s)
    s = re.sub(r"\\textit\{\\textbf\{([^}]*)\}\}", r"\1", s)
    s = s.replace("\\\\", " ").replace("\\#", "#")
    s = re.sub(r"\s+", " ", s).strip()
    return s, keywords


def main(src: str, dst: str) -> None:
    text = Path(src).read_text(encoding="utf-8")
    start = text.index("\\label{tab:hugetable}")
    body = text[start:text.index("\\end{table*}", start)]
    rows = []
    category = None
    for line in body.splitlines():
        if "&" not in line or "textbf{Value Category" in line:
            continue
        cells = [c.strip() for c in line.split("&")]
        if len(cells) < 4:
            continue
        m = re.search(r"\\multirow\{\d+\}\{\*\}\{([^}]*)\}", cells[0])
        if m:
            category = m.group(1).strip()
        review = "&".join(cells[3:]).rstrip().removesuffix("\\\\").strip()
        review, keywords = clean(review)
        rows.append({"category": category, "item": cells[1], "f": int(cells[2]),
                     "keywords": keywords, "text": review})
    assert len(rows) == 50, len(rows)
    with open(dst, "w", encoding="utf-8", newline="\n") as f:
        for r in rows:
            f.write(json.dumps(r, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
