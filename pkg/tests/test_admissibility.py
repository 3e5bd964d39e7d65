import numpy as np
import pytest

from latin_forge.admissibility import (Deficits, NotAdmissible, Witness, check_admissible,
                                       gamma_multiplicities, monus, necessary_quick_check,
                                       recheck_conditions)
from latin_forge.generate import LCG, random_rectangle
from latin_forge.oracle import ScaleBounds, enumerate_instances, witness_search

from conftest import make


def test_monus():
    assert monus(5, 3) == 2 and monus(3, 5) == 0
    assert monus(np.array([1, 4]), 2).tolist() == [0, 2]


def test_deficits(latin_1x1):
    d = Deficits.of(latin_1x1)
    assert d.rem.tolist() == [1, 2]
    assert d.forced_a.tolist() == [0, 1]
    assert d.forced_b.tolist() == [0, 1]


def test_latin_1x1_witness(latin_1x1):
    w = check_admissible(latin_1x1)
    assert isinstance(w, Witness)
    assert recheck_conditions(latin_1x1, w).ok
    # column 2 of row 1 must take symbol 2: block A is forced
    assert w.block_a == (0, 1) and w.block_b == (0, 1) and w.block_c == (1, 0)


def test_simple_1x1(simple_1x1):
    w = check_admissible(simple_1x1, simple=True)
    assert w.a == (0, 0) and w.b == (0, 0)
    assert w.block_a == (1, 1) and w.block_b == (1, 1) and w.block_c == (1, 1)
    assert recheck_conditions(simple_1x1, w, simple=True).ok


def test_blocked_instance(blocked_2x2):
    assert not necessary_quick_check(blocked_2x2)
    res = check_admissible(blocked_2x2)
    assert isinstance(res, NotAdmissible) and not res
    assert res.reason == "rho_3-|M_3| = 3 > lambda(2n-r-s) = 2"
    assert res.symbols == (3,)


def test_flow_cut_reason():
    # passes the quick screen but row 1 already holds both copies of symbol 1
    # allowed per line, leaving symbol 1 with too few places
    inst = make(3, 3, 1, (3, 3, 3), [[[1], [2]], [[3], [1]]])
    assert necessary_quick_check(inst)
    res = check_admissible(inst)
    assert bool(res) == (witness_search(inst) is not None)


def test_invalid_instance_raises():
    bad = make(2, 2, 1, (2, 2), [[[1], [1]]])
    with pytest.raises(ValueError):
        check_admissible(bad)
    multi = make(2, 2, 2, (4, 4), [[[1, 1]]])
    with pytest.raises(ValueError):
        check_admissible(multi, simple=True)


def test_simple_lambda_above_k():
    inst = make(1, 1, 2, (2,))
    assert check_admissible(inst)                    # plain: {1,1}
    assert not check_admissible(inst, simple=True)


def test_gamma_multiplicities_simple_caps():
    inst = make(3, 3, 2, (6, 6, 6), [[[1, 2]]])
    g1, g2 = gamma_multiplicities(inst, simple=False)
    assert g1.tolist() == [[1, 1, 2]] and g2.tolist() == [[1, 1, 2]]
    g1s, _ = gamma_multiplicities(inst, simple=True)
    assert g1s.tolist() == [[1, 1, 2]]
    inst = make(3, 3, 2, (6, 6, 6), [[[1, 2], [1, 3]]])
    g1s, _ = gamma_multiplicities(inst, simple=True)
    assert g1s.tolist() == [[0, 1, 1]]


def test_recheck_catches_mutated_witnesses():
    rng = LCG(5)
    mutated = caught = 0
    for _ in range(150):
        inst = random_rectangle(rng, 3, 4, 2, rng.below(4), rng.below(4), False, 20)
        if inst is None:
            continue
        w = check_admissible(inst)
        if not w:
            continue
        assert recheck_conditions(inst, w).ok
        for l in range(inst.k):
            for da, db in ((1, 0), (0, 1), (-1, 0), (1, -1)):
                a, b = list(w.a), list(w.b)
                a[l] += da
                b[l] += db
                mutated += 1
                caught += not recheck_conditions(inst, Witness.build(inst, a, b)).ok
    # single-coordinate changes break a sum equality; the swap keeps sums but
    # not necessarily the bounds, so count only the guaranteed ones
    assert mutated and caught >= mutated * 3 // 4


def test_condition_report_lists_subsets():
    inst = make(3, 3, 1, (3, 3, 3), [[[1], [2]]])
    rep = recheck_conditions(inst, check_admissible(inst))
    names = {c.name for c in rep.entries()}
    assert {"row_subset", "col_subset"} <= names
    assert rep.count() >= 2 * 2 ** 3
    assert rep.failures() == []


def test_flow_matches_witness_search_corpus():
    for simple in (False, True):
        for inst in enumerate_instances(ScaleBounds(n_max=2, k_max=3, lam_max=2, simple=simple)):
            res = check_admissible(inst, simple)
            assert bool(res) == (witness_search(inst, simple) is not None)
            if res:
                assert recheck_conditions(inst, res, simple).ok
