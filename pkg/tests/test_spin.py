import itertools
import random

import pytest

from spunbook.mcg import TwistWord, random_word
from spunbook.spin import (
    MAX_ORBIT_GENUS,
    NonGenerationCertificate,
    QuadraticForm,
    all_forms,
    arf,
    evaluate,
    even_odd_counts,
    fixed_forms,
    non_generation_certificate,
    orbit,
    orbit_partition,
    pushforward,
    replay_certificate,
    twist_pushforward,
)
from spunbook.surface import SurfaceModel, chain_registry, standard_registry

from oracles import all_vectors_mod2, q_from_definition, twist

Q0 = (1, 1, 0, 1, 1, 1)


def alphabet(g, *extra):
    reg = standard_registry(g)
    return reg.chain() + [reg.gamma(i) for i in extra]


def test_evaluate_examples():
    s = SurfaceModel(1)
    zero = QuadraticForm(1, (0, 0))
    assert evaluate(zero, s.a(1)) == 0
    assert evaluate(zero, (1, 1)) == 1
    assert evaluate(QuadraticForm(1, (1, 1)), (1, 1)) == 1
    with pytest.raises(ValueError):
        evaluate(zero, (1, 0, 0, 0))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_evaluate_matches_definition(g):
    rng = random.Random(g)
    for _ in range(20):
        values = tuple(rng.randint(0, 1) for _ in range(2 * g))
        q = QuadraticForm(g, values)
        for x in all_vectors_mod2(2 * g):
            assert evaluate(q, x) == q_from_definition(values, x)


def test_quadratic_relation():
    g = 2
    for q in all_forms(g):
        for x, y in itertools.product(all_vectors_mod2(4), repeat=2):
            xy = tuple((a + b) % 2 for a, b in zip(x, y))
            cross = sum(x[k] * y[k + 1] + x[k + 1] * y[k] for k in (0, 2)) % 2
            assert evaluate(q, xy) == (evaluate(q, x) + evaluate(q, y) + cross) % 2


def test_arf_examples():
    assert arf(QuadraticForm(2, (0, 0, 0, 0))) == 0
    assert arf(QuadraticForm(1, (1, 1))) == 1
    assert arf(QuadraticForm(3, Q0)) == 0


def test_arf_is_majority_value():
    # Arf(q) is the value q takes on more than half of H_1(Sigma; Z/2)
    for g in (1, 2, 3):
        for q in all_forms(g):
            ones = sum(evaluate(q, x) for x in all_vectors_mod2(2 * g))
            assert arf(q) == int(ones > 2 ** (2 * g - 1))


def test_pushforward_identity_word():
    reg = standard_registry(3)
    q = QuadraticForm(3, (1, 0, 1, 1, 0, 0))
    assert pushforward(q, TwistWord((), reg)) == q


def test_pushforward_twist_about_a1():
    reg = chain_registry(1)
    q = QuadraticForm(1, (0, 0))
    w = TwistWord.from_pairs(reg, [("gamma1", 1)])
    out = pushforward(q, w)
    assert out.basis_values == (0, 1)
    # exhaustive on the four classes: q'(x) = q(T^-1 x)
    a1 = (1, 0)
    for x in all_vectors_mod2(2):
        assert evaluate(out, x) == q_from_definition(q.basis_values, twist(x, a1, -1))


def test_pushforward_genus_mismatch():
    with pytest.raises(ValueError):
        pushforward(QuadraticForm(1, (0, 0)), TwistWord((), standard_registry(2)))


def test_fixed_forms_chain_g3():
    forms = fixed_forms(alphabet(3))
    assert [f.basis_values for f in forms] == [Q0]


def test_fixed_forms_chain_plus_even():
    assert [f.basis_values for f in fixed_forms(alphabet(3, 8))] == [Q0]


def test_fixed_forms_chain_plus_odd_is_empty():
    assert fixed_forms(alphabet(3, 7)) == []


def test_fixed_forms_is_brute_force():
    for g in (1, 2, 3):
        for alpha in (alphabet(g), standard_registry(g).curves):
            brute = [q for q in all_forms(g) if all(evaluate(q, c) == 1 for c in alpha)]
            assert fixed_forms(list(alpha)) == brute


def test_orbit_examples_g1():
    reg = chain_registry(1)
    ab = [reg["gamma1"], reg["gamma2"]]
    odd = QuadraticForm(1, (1, 1))
    assert orbit(odd, ab) == {odd}
    even = orbit(QuadraticForm(1, (0, 0)), ab)
    assert len(even) == 3
    assert all(arf(q) == 0 for q in even)


def test_orbit_trivial_when_every_generator_fixes():
    alpha = alphabet(3)
    q0 = QuadraticForm(3, Q0)
    assert orbit(q0, alpha) == {q0}


def test_orbit_genus_cap():
    g = MAX_ORBIT_GENUS + 1
    reg = chain_registry(g)
    with pytest.raises(ValueError):
        orbit(QuadraticForm(g, (0,) * (2 * g)), reg.chain())


def test_certificates():
    cert = non_generation_certificate(alphabet(3, 8))
    assert cert is not None and cert.form.basis_values == Q0
    assert cert.sound and replay_certificate(cert)
    assert non_generation_certificate(alphabet(3, 7)) is None
    g1 = non_generation_certificate([chain_registry(1)["gamma1"]])
    assert g1.form.basis_values == (1, 0)


def test_certificate_json_round_trip():
    cert = non_generation_certificate(alphabet(4, 10))
    back = NonGenerationCertificate.from_json(cert.to_json())
    assert back.form == cert.form and back.checks == cert.checks
    assert replay_certificate(back)


def test_tampered_certificate_fails_replay():
    cert = non_generation_certificate(alphabet(3, 8))
    bad = NonGenerationCertificate(cert.alphabet, QuadraticForm(3, (0,) * 6), cert.checks)
    assert not replay_certificate(bad)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_fix_iff_law(g):
    s = SurfaceModel(g)
    classes = [c.vector for c in standard_registry(g)] + [v for _, v in s.basis()]
    for q in all_forms(g):
        for c in classes:
            fixed = twist_pushforward(q, c) == q
            assert fixed == (evaluate(q, c) == 1)


def test_arf_preserved_exhaustive_g2():
    reg = standard_registry(2)
    for q in all_forms(2):
        for c in reg:
            for sign in (1, -1):
                assert arf(twist_pushforward(q, c, sign)) == arf(q)


def test_arf_preserved_random_words():
    rng = random.Random(20240611)
    for _ in range(500):
        g = rng.randint(1, 4)
        reg = standard_registry(g)
        w = random_word(rng, reg, rng.randint(0, 20))
        q = QuadraticForm(g, tuple(rng.randint(0, 1) for _ in range(2 * g)))
        assert arf(pushforward(q, w)) == arf(q)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_orbit_partition_by_arf(g):
    # genus 1 has no gamma_3; the chain alone already acts as the full group there
    reg = standard_registry(g)
    alpha = reg.chain() + ([reg.gamma(2 * g + 1)] if g > 1 else [])
    orbits = orbit_partition(g, alpha)
    assert len(orbits) == 2
    sizes = sorted(len(o) for o in orbits)
    even_n, odd_n = even_odd_counts(g)
    assert sizes == sorted([even_n, odd_n])
    assert even_n == sum(arf(q) == 0 for q in all_forms(g))
    for o in orbits:
        assert len({arf(q) for q in o}) == 1
