import random

import pytest

from spunbook.algebra import AbelianGroupPresentation as A
from spunbook.mcg import TwistWord, random_word, word_action
from spunbook.openbook import OpenBookDescriptor, first_homology, is_c1_even_candidate
from spunbook.surface import CurveClass, chain_registry, gamma_name, standard_registry

from oracles import determinantal_invariants


def h1_oracle(ob):
    """|H_1| straight from the determinantal divisors of Phi - I."""
    n = 2 * ob.genus
    phi = word_action(ob.word).to_lists()
    rows = [[phi[i][j] - (i == j) for j in range(n)] for i in range(n)]
    f = determinantal_invariants(rows, n)
    return n - len(f), [d for d in f if d != 1]


def test_empty_word_g1():
    ob = OpenBookDescriptor(1, TwistWord((), standard_registry(1)))
    assert first_homology(ob) == A(2)


def test_trefoil_is_homology_sphere():
    ob = OpenBookDescriptor.from_pairs(1, [("gamma1", 1), ("gamma2", 1)])
    assert first_homology(ob).is_trivial()
    assert h1_oracle(ob) == (0, [])


def test_e_minus_3_boundary_word():
    pairs = [(gamma_name(i), 1) for i in range(1, 8)]
    ob = OpenBookDescriptor.from_pairs(3, pairs)
    assert first_homology(ob) == A(0, (3,))
    assert h1_oracle(ob) == (0, [3])


@pytest.mark.parametrize("g", [1, 2, 3])
def test_disk_word_trivial(g):
    ob = OpenBookDescriptor.from_pairs(g, [(gamma_name(i), 1) for i in range(1, 2 * g + 1)])
    assert first_homology(ob).is_trivial()


def test_c1_even_candidates():
    assert is_c1_even_candidate(A(1), (2,))
    assert not is_c1_even_candidate(A(1), (1,))
    g = A(1, (3,))
    assert is_c1_even_candidate(g, (2, 1))
    assert any((2 * x - 1) % 3 == 0 for x in range(3))


def test_genus_mismatch():
    with pytest.raises(ValueError):
        OpenBookDescriptor(2, TwistWord((), standard_registry(3)))


def test_json_round_trip_with_extra_curve():
    extra = CurveClass("delta", (1, 1, 0, 0, 0, 0))
    ob = OpenBookDescriptor.from_pairs(3, [("gamma1", 1), ("delta", -1)], "x", [extra])
    data = ob.to_json()
    assert data["curves"] == [{"name": "delta", "vector": [1, 1, 0, 0, 0, 0]}]
    back = OpenBookDescriptor.from_json(data)
    assert back.word.pairs() == ob.word.pairs()
    assert first_homology(back) == first_homology(ob)


def test_invariance_under_rotation_and_conjugation():
    rng = random.Random(7)
    for _ in range(100):
        g = rng.randint(1, 3)
        reg = standard_registry(g)
        w = random_word(rng, reg, rng.randint(1, 15))
        v = random_word(rng, reg, rng.randint(0, 6))
        base = first_homology(OpenBookDescriptor(g, w))
        assert first_homology(OpenBookDescriptor(g, w.rotate(rng.randint(0, len(w))))) == base
        assert first_homology(OpenBookDescriptor(g, w.conjugate(v))) == base


def test_random_words_agree_with_oracle():
    rng = random.Random(8)
    for _ in range(60):
        g = rng.randint(1, 3)
        ob = OpenBookDescriptor(g, random_word(rng, chain_registry(g), rng.randint(0, 10)))
        h = first_homology(ob)
        assert (h.free_rank, list(h.torsion)) == h1_oracle(ob)
