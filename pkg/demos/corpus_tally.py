"""Tally cube-class tags over a small random corpus and check every identity.

Run with ``python3 demos/corpus_tally.py [count] [seed]``.
"""

import sys

from hyperdescent.checks import CheckResult, check_record
from hyperdescent.corpus import generate_corpus
from hyperdescent.descent import tally
from hyperdescent.points import SearchBox, enumerate_points

count = int(sys.argv[1]) if len(sys.argv) > 1 else 10
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0

total = CheckResult()
print(f"{'roots':<24} {'#S':>3} {'pts':>4} {'tags':>5} {'skeleton':>12} {'max fiber':>9}")
for entry in generate_corpus(count, seed):
    c = entry.curve
    pts = enumerate_points(c, SearchBox(5000, 100, c.S))
    rep = tally(c, pts, "all")
    for rec in rep.records:
        total.merge(check_record(rec, c))
    n_pts = len(pts) - len(rep.weierstrass)
    print(f"{str(entry.roots):<24} {len(c.S):>3} {n_pts:>4} {rep.distinct_tags:>5} {rep.skeleton_bound:>12.2e} {rep.max_fiber:>9}")

print("\nidentity checks:", dict(total.counts))
print("failures:", total.failures or "none")
