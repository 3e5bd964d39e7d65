"""
Brute-force ground truth
========================

Two naive oracles, unrelated to the flow code: a depth-first search that
fills the missing cells directly, and a direct search for an (a, b) witness.
Over a small exhaustive corpus all three deciders agree.
"""

import time

from latin_forge import check_admissible
from latin_forge.oracle import ScaleBounds, brute_extend, corpus_digest, enumerate_instances, witness_search

bounds = ScaleBounds.parse("n=2,k=3,lambda=2")
for simple in (False, True):
    bounds = ScaleBounds(**{**bounds.__dict__, "simple": simple})
    t0 = time.time()
    corpus = list(enumerate_instances(bounds))
    agree = sum(
        bool(check_admissible(i, simple)) == (brute_extend(i, simple) is not None)
        == (witness_search(i, simple) is not None)
        for i in corpus)
    print(f"{'simple' if simple else 'plain '}: {agree}/{len(corpus)} agree "
          f"in {time.time() - t0:.1f}s, digest {corpus_digest(corpus)[:16]}")

# Oracles refuse to run outside their scale instead of silently sampling.
try:
    list(enumerate_instances(ScaleBounds(n_max=5, k_max=5, lam_max=1)))
except ValueError as exc:
    print("guard:", exc)
