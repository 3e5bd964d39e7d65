import numpy as np
import pytest

from latin_forge.admissibility import check_admissible
from latin_forge.corollaries import (Rejected, cyclic_simple_square, evans_bound, evans_embed,
                                     exists_square, hall_check, simple_ryser_check)
from latin_forge.model import (PartialInstance, Square, cell_symbol_lists, from_symbol_lists,
                               verify_square)
from latin_forge.oracle import ScaleBounds, brute_extend, enumerate_instances

from conftest import make


def test_exists_square():
    assert exists_square(2, 2, 2, (4, 4), simple=True)
    assert not exists_square(2, 2, 3, (6, 6), simple=True)
    rep = exists_square(2, 4, 2, (5, 1, 1, 1), simple=True)
    fails = " ".join(rep.failures())
    assert "rho_1<=lambda*n" in fails and "rho_1<=n^2" in fails


def test_exists_square_matches_flow():
    for inst in enumerate_instances(ScaleBounds(n_max=3, k_max=4, lam_max=2, r=0, s=0)):
        for simple in (False, True):
            assert bool(exists_square(inst.n, inst.k, inst.lam, inst.rho, simple)) == \
                bool(check_admissible(inst, simple))


def test_ryser_examples():
    yes = make(3, 3, 1, (3, 3, 3), [[[1], [2]], [[2], [3]]])
    assert simple_ryser_check(yes)
    assert brute_extend(yes) is not None
    no = make(3, 3, 1, (3, 3, 3), [[[1], [2]], [[2], [1]]])
    rep = simple_ryser_check(no)
    assert not rep and any("|M_3|" in f for f in rep.failures())


def test_ryser_full_square():
    sq = make(2, 2, 1, (2, 2), [[[1], [2]], [[2], [1]]])
    assert simple_ryser_check(sq)


def test_ryser_preconditions():
    with pytest.raises(ValueError):
        simple_ryser_check(make(2, 3, 1, (2, 1, 1)))
    with pytest.raises(ValueError):
        simple_ryser_check(make(2, 2, 2, (4, 4), [[[1, 1]]]))


def test_hall_examples():
    inst = make(3, 3, 1, (3, 3, 3), [[[1], [2], [3]], [[2], [3], [1]]])
    assert hall_check(inst)
    full = make(2, 2, 1, (2, 2), [[[1], [2]], [[2], [1]]])
    assert hall_check(full) and hall_check(full, simple=True)
    with pytest.raises(ValueError):
        hall_check(make(3, 3, 1, (3, 3, 3), [[[1]]]))


def test_hall_negative():
    inst = make(3, 3, 1, (3, 3, 3), [[[1], [2], [3]]])
    ok = hall_check(inst)
    assert bool(ok) == bool(check_admissible(inst))


def test_cyclic_square():
    assert cell_symbol_lists(cyclic_simple_square(2, 1)) == [[[1], [2]], [[2], [1]]]
    c = cyclic_simple_square(3, 2)
    assert cell_symbol_lists(c)[0][:2] == [[1, 2], [2, 3]]
    assert (cyclic_simple_square(2, 2) == 1).all()
    for m in range(1, 6):
        for lam in range(1, m + 1):
            sq = Square(m, m, lam, (lam * m,) * m, cyclic_simple_square(m, lam))
            assert verify_square(sq, simple_required=True).ok
    with pytest.raises(ValueError):
        cyclic_simple_square(2, 3)


def test_cyclic_offset():
    c = cyclic_simple_square(2, 1, offset=3)
    assert c.shape == (2, 2, 5) and c[:, :, :3].sum() == 0


def test_evans_embed_examples():
    p = PartialInstance(1, 1, from_symbol_lists([[[]]], 1))
    sq = evans_embed(p, 2)
    assert verify_square(sq, simple_required=True).ok
    p = PartialInstance(2, 2, from_symbol_lists([[[1, 2], []], [[], []]], 2))
    sq = evans_embed(p, 4)
    assert verify_square(sq, simple_required=True).ok
    assert sq.cells[0, 0, :2].tolist() == [1, 1]


def test_evans_rejects_below_bound():
    p = PartialInstance(2, 2, from_symbol_lists([[[1, 2], []], [[], []]], 2))
    res = evans_embed(p, 3)
    assert isinstance(res, Rejected) and not res
    assert "n=3" in res.reason
    assert evans_bound(p, 4) == []


def test_evans_requires_simple():
    p = PartialInstance(2, 2, from_symbol_lists([[[1, 1]]], 2))
    with pytest.raises(ValueError):
        evans_embed(p, 4)
