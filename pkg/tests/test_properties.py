"""Randomised properties over small instances."""
import numpy as np
from hypothesis import given, settings, strategies as st

from latin_forge.admissibility import check_admissible, recheck_conditions
from latin_forge.completion import complete
from latin_forge.factors import (BipartiteMultigraph, DegreeSpec, LaminarInstance, f_factor,
                                 laminar_round, ore_condition_holds, rounding_violations)
from latin_forge.generate import LCG, random_rectangle
from latin_forge.model import Instance, verify_square
from latin_forge.oracle import brute_extend


@st.composite
def rectangles(draw, simple=False):
    n = draw(st.integers(1, 3))
    lam = draw(st.integers(1, 2))
    k = draw(st.integers(n, min(4, lam * n * n)))
    if simple and lam > k:
        lam = k
    r, s = draw(st.integers(0, n)), draw(st.integers(0, n))
    seed = draw(st.integers(0, 2**32))
    return random_rectangle(LCG(seed), n, k, lam, r, s, simple, 20)


@settings(max_examples=150, deadline=None)
@given(rectangles(), st.booleans())
def test_flow_matches_brute_force(inst, simple):
    if inst is None or (simple and not inst.is_simple()):
        return
    res = check_admissible(inst, simple)
    assert bool(res) == (brute_extend(inst, simple) is not None)
    if res:
        assert recheck_conditions(inst, res, simple).ok
        sq = complete(inst, simple)
        assert verify_square(sq, contains=inst, simple_required=simple).ok


@settings(max_examples=150, deadline=None)
@given(rectangles(simple=True))
def test_simple_implies_plain(inst):
    if inst is None:
        return
    if check_admissible(inst, simple=True):
        assert check_admissible(inst)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_f_factor_vs_ore(nx, k, data):
    mult = np.array(data.draw(st.lists(st.integers(0, 2), min_size=nx * k, max_size=nx * k)))
    g = BipartiteMultigraph(mult.reshape(nx, k))
    left = data.draw(st.lists(st.integers(0, 4), min_size=nx, max_size=nx))
    right = data.draw(st.lists(st.integers(0, 4), min_size=k, max_size=k))
    f = DegreeSpec(left, right)
    assert (f_factor(g, f) is not None) == ore_condition_holds(g, f)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 5), st.data())
def test_laminar_round(cols, k, m, data):
    counts = np.array(data.draw(st.lists(st.integers(0, 4), min_size=cols * k,
                                         max_size=cols * k))).reshape(cols, k)
    li = LaminarInstance(counts, m)
    assert rounding_violations(li, laminar_round(li)) == []


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5), st.data())
def test_empty_rectangle_admissible_iff_rho_valid(n, data):
    k = data.draw(st.integers(n, n + 2))
    lam = data.draw(st.integers(1, 3))
    rho = data.draw(st.lists(st.integers(1, lam * n), min_size=k, max_size=k))
    if sum(rho) != lam * n * n:
        return
    inst = Instance.empty(n, k, lam, rho)
    assert check_admissible(inst)
