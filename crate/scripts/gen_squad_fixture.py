"""Writes fixtures/squad_fixture.json from the hand-written articles."""
import json, pathlib, sys

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))
from fixture_articles import ARTICLES

def find_nth(text, sub, n):
    i = -1
    for _ in range(n + 1):
        i = text.find(sub, i + 1)
        if i < 0:
            raise SystemExit(f"answer {sub!r} occurrence {n} missing in {text[:40]!r}")
    return i

data = []
qid = 0
for title, paras in ARTICLES:
    ps = []
    for ctx, qas in paras:
        out = []
        for q, a, occ in qas:
            qid += 1
            out.append({"id": f"fx{qid:04d}", "question": q,
                        "answers": [{"text": a, "answer_start": find_nth(ctx, a, occ)}]})
        ps.append({"context": ctx, "qas": out})
    data.append({"title": title, "paragraphs": ps})
json.dump({"version": "1.1", "data": data}, open(HERE.parent / 'fixtures' / 'squad_fixture.json', 'w'), ensure_ascii=False, indent=1)
print(len(data), qid)
