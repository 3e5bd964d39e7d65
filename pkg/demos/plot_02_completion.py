"""
Completing a rectangle step by step
===================================

The completion first builds a small outline array whose last row and column
carry weights n-r and n-s, then peels off one row (or column) at a time by
rounding against two laminar families.  Every intermediate array is checked.
"""

from latin_forge import check_admissible, complete
from latin_forge.cli import format_grid
from latin_forge.completion import build_step1, split_last_col, split_last_row
from latin_forge.model import Instance, from_symbol_lists, verify_square

inst = Instance(4, 5, 2, (7, 7, 6, 6, 6),
                from_symbol_lists([[[1, 2], [3, 4]], [[3, 5], [1, 2]]], 5))
w = check_admissible(inst)

# Outline: the 2x2 block plus a weighted last row and last column.
q = build_step1(inst, w)
print("outline weights:", q.row_weights, q.col_weights)

# Rows first, then columns, until every weight is 1.
while q.row_weights[-1] >= 2:
    q = split_last_row(q)
    print("after row split:", q.row_weights)
while q.col_weights[-1] >= 2:
    q = split_last_col(q)
    print("after column split:", q.col_weights)

# complete() runs the same pipeline and verifies the result.
sq = complete(inst)
print(format_grid(sq.cells))
print("verified:", verify_square(sq, contains=inst).ok)

# Plain mode allows repeated symbols, so {1,1} completes too.
double = Instance(2, 2, 2, (4, 4), from_symbol_lists([[[1, 1]]], 2))
print(format_grid(complete(double).cells))
