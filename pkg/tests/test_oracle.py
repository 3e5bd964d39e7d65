import numpy as np
import pytest

from latin_forge.model import Instance, cell_symbol_lists, from_symbol_lists, verify_square
from latin_forge.oracle import (GUARD_ENV, CorpusDigest, GuardError, ScaleBounds, brute_extend,
                                corpus_digest, enumerate_grids, enumerate_instances,
                                rho_vectors, witness_search)

from conftest import make


def test_brute_extend_latin_1x1(latin_1x1):
    sq = brute_extend(latin_1x1)
    assert cell_symbol_lists(sq.cells) == [[[1], [2]], [[2], [1]]]


def test_brute_extend_refuses_blocked(blocked_2x2):
    assert brute_extend(blocked_2x2) is None


def test_brute_extend_full_square_unchanged():
    grid = [[[1], [2]], [[2], [1]]]
    inst = make(2, 2, 1, (2, 2), grid)
    assert np.array_equal(brute_extend(inst).cells, inst.cells)


def test_brute_extend_simple_mode():
    inst = make(2, 2, 2, (4, 4), [[[1, 2]]])
    sq = brute_extend(inst, simple=True)
    assert verify_square(sq, contains=inst, simple_required=True).ok
    # plain mode may use repeated symbols
    assert brute_extend(make(2, 2, 2, (4, 4), [[[1, 1]]])) is not None


def test_guards(monkeypatch):
    big = Instance.empty(5, 5, 3, (15,) * 5)
    with pytest.raises(GuardError):
        brute_extend(big)
    with pytest.raises(GuardError):
        list(enumerate_instances(ScaleBounds(n_max=4, k_max=4, lam_max=1)))
    monkeypatch.setenv(GUARD_ENV, "1")
    assert next(iter(enumerate_instances(ScaleBounds(n_min=4, n_max=4, k_max=4, lam_max=1))))


def test_enumerate_n1():
    got = list(enumerate_instances(ScaleBounds(n_max=1, k_max=1, lam_max=1)))
    assert [(i.r, i.s) for i in got] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert got[-1].cells.tolist() == [[[1]]]
    assert all(i.rho == (1,) for i in got)


def test_enumerate_1x1_count():
    got = list(enumerate_instances(ScaleBounds(n_min=2, n_max=2, k_min=2, k_max=2, lam_max=1,
                                               r=1, s=1)))
    assert len(got) == 2


def test_empty_bounds():
    assert list(enumerate_instances(ScaleBounds(n_min=3, n_max=2, k_max=3, lam_max=1))) == []


def test_rho_vectors_lexicographic():
    got = list(rho_vectors(2, 3, 1))
    assert got == sorted(got)
    assert all(sum(v) == 4 and all(1 <= x <= 2 for x in v) for v in got)
    assert len(got) == 3


def test_enumerate_grids_simple():
    grids = list(enumerate_grids(1, 2, 2, 2, simple=True))
    assert len(grids) == 1 and grids[0].tolist() == [[[1, 1], [1, 1]]]
    assert len(list(enumerate_grids(1, 1, 2, 2))) == 3


def test_scale_bounds_parse():
    b = ScaleBounds.parse("n=2,k=3,lambda=1..2,s=n")
    assert (b.n_min, b.n_max, b.k_max, b.lam_min, b.lam_max, b.s) == (1, 2, 3, 1, 2, "n")
    with pytest.raises(ValueError):
        ScaleBounds.parse("n=2,k=3")
    with pytest.raises(ValueError):
        ScaleBounds.parse("n=2,k=3,lambda=1,q=4")


def test_corpus_digest_is_stable():
    b = ScaleBounds(n_max=2, k_max=2, lam_max=1)
    d1 = corpus_digest(enumerate_instances(b))
    d = CorpusDigest()
    for inst in enumerate_instances(b):
        d.add(inst)
    assert d.hexdigest() == d1 and d.count == 17


def test_witness_search_uniform_rho_point():
    inst = make(3, 3, 1, (3, 3, 3), [[[1], [2]], [[2], [3]]])
    assert witness_search(inst, simple=True) == ([0, 0, 0], [0, 0, 0])


def test_witness_search_refuses(blocked_2x2):
    assert witness_search(blocked_2x2) is None


def test_three_way_equivalence_small():
    for simple in (False, True):
        for inst in enumerate_instances(ScaleBounds(n_max=2, k_max=3, lam_max=1, simple=simple)):
            sq = brute_extend(inst, simple)
            assert (sq is not None) == (witness_search(inst, simple) is not None)
            if sq is not None:
                assert verify_square(sq, contains=inst, simple_required=simple).ok
