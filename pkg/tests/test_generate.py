import pytest

from latin_forge.admissibility import check_admissible
from latin_forge.generate import LCG, generate_admissible, random_rectangle, random_rho
from latin_forge.model import validate


def test_lcg_sequence():
    # state_1 = a*0 + c, state_2 = a*state_1 + c (mod 2^64); outputs are the top 32 bits
    a, c, mask = 6364136223846793005, 1442695040888963407, 2**64 - 1
    st = c
    expect = []
    for _ in range(3):
        st = (a * st + c) & mask
        expect.append(st >> 32)
    rng = LCG(0)
    assert [rng.next_u32() for _ in range(3)] == expect


def test_lcg_reproducible():
    assert LCG(9).permutation(10) == LCG(9).permutation(10)
    assert sorted(LCG(9).permutation(10)) == list(range(10))
    with pytest.raises(ValueError):
        LCG(1).below(0)


@pytest.mark.parametrize("simple", [False, True])
def test_random_rho_valid(simple):
    rng = LCG(3)
    for _ in range(50):
        rho = random_rho(rng, 4, 6, 3, simple)
        assert sum(rho) == 3 * 16 and min(rho) >= 1
        assert max(rho) <= (min(12, 16) if simple else 12)
    with pytest.raises(ValueError):
        random_rho(rng, 2, 9, 1)


def test_generate_deterministic():
    a = generate_admissible(5, 6, 2, 3, 4, True, 17)
    b = generate_admissible(5, 6, 2, 3, 4, True, 17)
    assert a == b
    assert a != generate_admissible(5, 6, 2, 3, 4, True, 18)


@pytest.mark.parametrize("simple", [False, True])
def test_generated_are_admissible(simple):
    for seed in range(30):
        inst = generate_admissible(4, 5, 2, seed % 5, (seed // 5) % 5, simple, seed)
        assert validate(inst, simple_required=simple).ok
        assert check_admissible(inst, simple)


def test_generate_rejects_bad_shape():
    with pytest.raises(ValueError):
        generate_admissible(3, 3, 1, 4, 1)
    with pytest.raises(ValueError):
        generate_admissible(3, 3, 4, 1, 1, simple=True)


def test_random_rectangle_valid():
    rng = LCG(1)
    for _ in range(30):
        inst = random_rectangle(rng, 3, 4, 2, 2, 3, True, 50)
        assert inst is None or validate(inst, simple_required=True).ok
