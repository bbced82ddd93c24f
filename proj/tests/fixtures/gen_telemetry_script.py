#!/usr/bin/env python3
"""Writes telemetry_script.tsv: 101 scripted invocations against twenty_threads.xml.

Columns: origin, query, next_count, helpful. Queries listed in NO_RESULT match
no thread, so their invocations land in the "no code snippet" row. The header
carries the expected tally, computed here without touching the C++ code.
"""
import random

KNOWN = [
    "add lines to text file",
    "convert inputstream to string",
    "complete bubble sort",
    "print stack trace",
    "add custom jpanel to jframe",
    "sort arraylist",
]
NO_RESULT = ["unknownzzz", "frobnicate quuxle"]
ORIGINS = ["question-marks", "selection", "content-assist"]

rng = random.Random(20140601)
rows = []
for i in range(101):
    query = rng.choice(NO_RESULT) if rng.random() < 0.1 else rng.choice(KNOWN)
    origin = ORIGINS[i % 3]
    nexts = 0 if query in NO_RESULT else rng.randrange(0, 6)
    helpful = rng.random() < 0.7
    rows.append((origin, query, nexts, helpful))

helpful = sum(1 for o, q, n, h in rows if q not in NO_RESULT and h)
unhelpful = sum(1 for o, q, n, h in rows if q not in NO_RESULT and not h)
no_snippet = sum(1 for o, q, n, h in rows if q in NO_RESULT)

with open("telemetry_script.tsv", "w") as out:
    out.write(f"# expect\thelpful={helpful}\tunhelpful={unhelpful}\tno_snippet={no_snippet}\n")
    for o, q, n, h in rows:
        out.write(f"{o}\t{q}\t{n}\t{'true' if h else 'false'}\n")
print(helpful, unhelpful, no_snippet)
