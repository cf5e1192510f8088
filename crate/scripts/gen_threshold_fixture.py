"""Writes fixtures/threshold_records.jsonl: transfer records crafted so that
every gate, both perplexity bounds, and backend failures are exercised.

Records with a preset perplexity skip scoring; the rest are scored by the
stub scorer.
"""
import json, pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent

PERPLEXITIES = [None, 12.0, 49.99, 50.0, 120.5, 600.0, 600.01, 1500.0]
SUBJECTS = ["bridge", "canal", "cathedral", "railway", "harbour", "museum", "library", "tower", "dam", "palace"]


def originals(i):
    subject = SUBJECTS[i % len(SUBJECTS)]
    year = 1850 + (i * 7) % 150
    span = 2 + i % 9
    return {
        "long": (f"The {subject} over the river was completed in {year}, and the work took {span} years.",
                 [f"The {subject} over the river was completed in {year}.", f"The work took {span} years."],
                 [f"The {subject} over the river was completed.", f"The work took {span} years."]),
        "four": (f"The {subject} opened {year}.",
                 [f"The {subject} opened {year}."],
                 [f"The {subject} opened."]),
        "five": (f"The old {subject} opened {year}.",
                 [f"The old {subject} opened {year}."],
                 [f"The old {subject} opened."]),
    }


def candidate(kind, good, lossy):
    if kind == "good":
        return good
    if kind == "redundant":
        return [good[0], "  " + good[0] + " "]
    if kind == "numeric_loss":
        return lossy
    return lossy + [lossy[0]]


records = []
for i in range(240):
    ppl = PERPLEXITIES[i % 8]
    length = ["long", "four", "five"][(i // 8) % 3]
    kind = ["good", "redundant", "numeric_loss", "redundant_and_lossy"][(i // 24) % 4]
    original, good, lossy = originals(i)[length]
    words = len([t for t in original.split() if any(c.isalnum() for c in t)])
    record = {
        "context_id": f"t:{i // 10}",
        "sentence_index": i % 10,
        "original": original,
        "original_word_count": words,
    }
    if i % 20 == 19:
        record["status"] = "rejected:backend_failure"
        record["error"] = "synthetic backend failure"
    else:
        record["candidate"] = candidate(kind, good, lossy)
        if ppl is not None:
            record["perplexity"] = ppl
        record["status"] = "pending"
    records.append(record)

with open(ROOT / "fixtures" / "threshold_records.jsonl", "w") as out:
    for r in records:
        out.write(json.dumps(r, ensure_ascii=False, separators=(",", ":")) + "\n")
print(len(records))
