"""
Flows, f-factors and laminar rounding
=====================================

The building blocks underneath the completion: an integral max-flow, a
circulation with lower bounds, degree-constrained subgraphs of a bipartite
multigraph, and simultaneous rounding against two laminar set families.
"""

import numpy as np

from latin_forge.factors import (BipartiteMultigraph, DegreeSpec, FlowNetwork, LaminarInstance,
                                 f_factor, feasible_flow, laminar_round, max_flow,
                                 ore_condition_holds, rounding_violations)

# Max flow on a diamond.
net = FlowNetwork(4, 0, 3)
for u, v, c in [(0, 1, 3), (0, 2, 2), (1, 2, 1), (1, 3, 2), (2, 3, 3)]:
    net.add_arc(u, v, upper=c)
print("max flow:", max_flow(net).value)

# A circulation that must push at least 4 units around a loop of capacity 3.
loop = FlowNetwork(3, 0, 2)
loop.add_arc(0, 1, upper=5, lower=4)
loop.add_arc(1, 2, upper=3)
loop.add_arc(2, 0)
res = feasible_flow(loop)
print("circulation feasible:", bool(res), " shortfall:", res.shortfall)

# f-factor: pick edges so that every vertex gets its prescribed degree.
g = BipartiteMultigraph(np.array([[2, 1, 0], [0, 1, 2]]))
f = DegreeSpec([2, 2], [2, 1, 1])
print("f-factor:\n", f_factor(g, f), "\nOre's condition:", ore_condition_holds(g, f))
bad = DegreeSpec([1, 3], [3, 1, 0])     # row 2 can reach only 1 unit outside column 3
print("infeasible spec:", f_factor(g, bad), ore_condition_holds(g, bad))

# Rounding: choose about a third of every column, every symbol and every cell at once.
li = LaminarInstance(np.array([[4, 1, 2], [0, 3, 5]]), 3)
z = laminar_round(li)
print("selection:\n", z, "\nviolations:", rounding_violations(li, z))
