"""Seeded instance generation.

Randomness comes from a fixed 64-bit linear congruential generator so that
corpora are reproducible from the seed alone, independent of platform or
library versions:

    state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64
    output = state >> 32                      (a 32-bit word)

``below(m)`` returns ``output % m``.  The seed is taken mod 2**64 and the
generator is stepped once before the first output.
"""
from __future__ import annotations

from typing import Optional

import numpy as np

from .model import Instance, InternalError

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = (1 << 64) - 1


class LCG:
    def __init__(self, seed: int):
        self.state = seed & MASK
        self.next_u32()

    def next_u32(self) -> int:
        self.state = (MULTIPLIER * self.state + INCREMENT) & MASK
        return self.state >> 32

    def below(self, m: int) -> int:
        if m < 1:
            raise ValueError("below() needs m >= 1")
        return self.next_u32() % m

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def permutation(self, m: int) -> list[int]:
        """Fisher-Yates shuffle of ``range(m)``."""
        p = list(range(m))
        for i in range(m - 1, 0, -1):
            j = self.below(i + 1)
            p[i], p[j] = p[j], p[i]
        return p


def rho_cap(n: int, lam: int, simple: bool) -> int:
    return min(lam * n, n * n) if simple else lam * n


def random_rho(rng: LCG, n: int, k: int, lam: int, simple: bool = False) -> tuple[int, ...]:
    """Random valid rho: start every symbol at 1, hand out the rest one unit at a time."""
    cap = rho_cap(n, lam, simple)
    total = lam * n * n
    if not k <= total <= k * cap:
        raise ValueError(f"no valid rho for n={n}, k={k}, lambda={lam}" + (" (simple)" if simple else ""))
    rho = [1] * k
    open_ = [l for l in range(k) if rho[l] < cap]
    for _ in range(total - k):
        idx = rng.below(len(open_))
        l = open_[idx]
        rho[l] += 1
        if rho[l] == cap:
            open_.pop(idx)
    return tuple(rho)


def generate_admissible(n: int, k: int, lam: int, r: int, s: int, simple: bool = False,
                        seed: int = 0) -> Instance:
    """An r x s rectangle cut from a complete square, hence always (simply) admissible.

    The square is the completion of the empty rectangle for a random rho, with
    rows, columns and symbols shuffled by the seeded generator.
    """
    from .completion import complete

    if not max(r, s) <= n <= k:
        raise ValueError("need max(r, s) <= n <= k")
    if simple and lam > k:
        raise ValueError("simple generation needs lambda <= k")
    rng = LCG(seed)
    rho = random_rho(rng, n, k, lam, simple)
    sq = complete(Instance.empty(n, k, lam, rho), simple)
    if not sq:
        raise InternalError("empty rectangle not admissible", {"n": n, "k": k, "lambda": lam, "rho": rho})
    sym = rng.permutation(k)
    rows = rng.permutation(n)
    cols = rng.permutation(n)
    cells = sq.cells[rows][:, cols][:, :, sym]
    new_rho = tuple(rho[l] for l in sym)
    return Instance(n, k, lam, new_rho, cells[:r, :s])


def random_rectangle(rng: LCG, n: int, k: int, lam: int, r: int, s: int,
                     simple: bool = False, tries: int = 1000) -> Optional[Instance]:
    """A random valid (possibly non-extendable) rectangle, or None if sampling kept failing.

    Cells are filled one symbol at a time uniformly among the symbols that
    keep the row, column, cell and rho budgets; a dead end restarts.
    """
    rho = random_rho(rng, n, k, lam, simple)
    for _ in range(tries):
        cells = np.zeros((r, s, k), dtype=np.int64)
        row = np.zeros((r, k), dtype=np.int64)
        col = np.zeros((s, k), dtype=np.int64)
        tot = np.zeros(k, dtype=np.int64)
        stuck = False
        for i in range(r):
            for j in range(s):
                for _slot in range(lam):
                    ok = [l for l in range(k) if row[i, l] < lam and col[j, l] < lam
                          and tot[l] < rho[l] and not (simple and cells[i, j, l])]
                    if not ok:
                        stuck = True
                        break
                    l = rng.choice(ok)
                    cells[i, j, l] += 1
                    row[i, l] += 1
                    col[j, l] += 1
                    tot[l] += 1
                if stuck:
                    break
            if stuck:
                break
        if not stuck:
            return Instance(n, k, lam, rho, cells)
    return None
