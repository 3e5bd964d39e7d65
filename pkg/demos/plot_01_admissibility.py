"""
Deciding whether a rectangle extends
====================================

A (rho, lambda)-Latin rectangle extends to an n x n square exactly when a
small system of integer inequalities has a solution.  ``check_admissible``
finds one with a single flow computation, or explains why none exists.
"""

from latin_forge import check_admissible, recheck_conditions
from latin_forge.model import Instance, from_symbol_lists

# A 2x2 Latin rectangle on 3 symbols, to be completed to order 3.
# Symbol 3 is absent, yet each symbol must appear 3 times in the square.
blocked = Instance(3, 3, 1, (3, 3, 3), from_symbol_lists([[[1], [2]], [[2], [1]]], 3))
res = check_admissible(blocked)
print("blocked:", bool(res), "-", res.reason)

# Swap one cell for symbol 3 and the obstruction goes away.
ok = Instance(3, 3, 1, (3, 3, 3), from_symbol_lists([[[1], [2]], [[2], [3]]], 3))
w = check_admissible(ok)
print("witness a =", w.a, " b =", w.b)
print("copies of each symbol in the top-right, bottom-left and corner blocks:")
print("  A", w.block_a, " B", w.block_b, " C", w.block_c)

# The witness can be checked against every inequality of the definition,
# including one for each of the 2^k symbol subsets.
rep = recheck_conditions(ok, w)
print(f"{rep.count()} conditions evaluated, {len(rep.failures())} failed")

# Simple mode forbids repeated symbols inside a cell, which tightens the system.
pair = Instance(2, 2, 2, (4, 4), from_symbol_lists([[[1, 2]]], 2))
print("simple {1,2}:", bool(check_admissible(pair, simple=True)))
