"""
Closed-form special cases
=========================

For some families the general inequality system collapses to something
checkable by hand: squares from scratch, rectangles with k = n and uniform
rho, rectangles that already span all columns, and embeddings of partial
squares into much larger ones.
"""

from latin_forge import (check_admissible, cyclic_simple_square, evans_embed, exists_square,
                         hall_check, simple_ryser_check)
from latin_forge.cli import format_grid
from latin_forge.model import Instance, PartialInstance, from_symbol_lists, verify_square

print("simple 2x2 with lambda=2 exists:", exists_square(2, 2, 2, (4, 4), simple=True).verdict)
print("simple 2x2 with lambda=3:", exists_square(2, 2, 3, (6, 6), simple=True).failures())

blocked = Instance(3, 3, 1, (3, 3, 3), from_symbol_lists([[[1], [2]], [[2], [1]]], 3))
print("band condition:", simple_ryser_check(blocked).failures()[:1])

hall = Instance(3, 3, 1, (3, 3, 3), from_symbol_lists([[[1], [2], [3]], [[2], [3], [1]]], 3))
print("full-width rectangle:", hall_check(hall).verdict, bool(check_admissible(hall)))

print("cyclic block, m=3, lambda=2:")
print(format_grid(cyclic_simple_square(3, 2)))

# A simple partial 2x2 square with lambda=2 embeds in order 4 but not order 3.
p = PartialInstance(2, 2, from_symbol_lists([[[1, 2], []], [[], [1]]], 2))
sq = evans_embed(p, 4)
print(format_grid(sq.cells), "\nverified:", verify_square(sq, simple_required=True).ok)
print("order 3:", evans_embed(p, 3).reason)
