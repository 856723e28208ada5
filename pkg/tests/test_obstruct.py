import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from spunbook.algebra import AbelianGroupPresentation as A
from spunbook.obstruct import (
    H2_FIVE_MANIFOLD,
    CohomologyElement,
    IncompatibleGroupsError,
    OddDifferenceError,
    PullbackMap,
    difference_class,
    multiple_of_h,
    pullback_condition,
    s2s3_target_constraint,
)

Z = A(1)


def test_pullback_2h():
    e = PullbackMap.from_rows(Z, Z, [[1]])
    assert pullback_condition(multiple_of_h(2), e, CohomologyElement(Z, (2,)))


def test_vanishing_target_forces_vanishing_source():
    e = PullbackMap.from_rows(Z, Z, [[1]])
    assert not pullback_condition(multiple_of_h(0), e, CohomologyElement(Z, (2,)))
    assert pullback_condition(multiple_of_h(0), e, CohomologyElement(Z, (0,)))


def test_torsion_target():
    M = A(1, (3,))
    e = PullbackMap.from_rows(Z, M, [[2], [1]])
    assert pullback_condition(multiple_of_h(2), e, CohomologyElement(M, (4, 5)))
    assert CohomologyElement(M, (4, 5)).coords == (4, 2)


def test_incompatible_groups():
    e = PullbackMap.from_rows(Z, Z, [[1]])
    with pytest.raises(IncompatibleGroupsError):
        pullback_condition(multiple_of_h(1), e, CohomologyElement(A(2), (0, 0)))
    with pytest.raises(IncompatibleGroupsError):
        e(CohomologyElement(A(0, (2,)), (1,)))
    with pytest.raises(IncompatibleGroupsError):
        PullbackMap.from_rows(Z, A(2), [[1]])
    with pytest.raises(IncompatibleGroupsError):
        multiple_of_h(1) + CohomologyElement(A(0, (2,)), (1,))


def test_ill_defined_map_rejected():
    # Z/2 -> Z/3 sending the generator to 1 is not a homomorphism
    with pytest.raises(ValueError):
        PullbackMap.from_rows(A(0, (2,)), A(0, (3,)), [[1]])
    # Z/2 -> Z/4 sending 1 to 2 is fine
    PullbackMap.from_rows(A(0, (2,)), A(0, (4,)), [[2]])


def test_target_constraint_examples():
    c = s2s3_target_constraint([2])
    assert c.admissible == {1, -1} and c.zero_excluded and not c.inconclusive
    assert s2s3_target_constraint([4]).admissible == {1, -1, 2, -2}
    z = s2s3_target_constraint([0])
    assert z.inconclusive and z.admissible is None
    assert z.admits(0) and z.admits(17)
    assert not c.admits(0) and not c.admits(2)
    assert str(c) == "k in {-1, 1}; k = 0 excluded"
    with pytest.raises(ValueError):
        s2s3_target_constraint([])


def test_difference_class_examples():
    assert difference_class(2, 0) == 1
    assert difference_class(-2, 0) == -1
    assert difference_class(0, 0) == 0
    with pytest.raises(OddDifferenceError):
        difference_class(3, 0)


def test_group_arithmetic():
    x = multiple_of_h(3)
    assert (x + x).coords == (6,)
    assert x.scale(-2).coords == (-6,)
    assert CohomologyElement.zero(H2_FIVE_MANIFOLD).is_zero()
    with pytest.raises(ValueError):
        CohomologyElement(Z, (1, 2))


groups = st.builds(A, st.integers(0, 2), st.sampled_from([(), (2,), (3,), (4,), (2, 4), (3, 6)]))


def _random_map(rng, src, tgt):
    """A well-defined map: a torsion generator of order d lands in elements killed by d."""
    cols = []
    for j in range(src.n_generators):
        d = src.torsion[j - src.free_rank] if j >= src.free_rank else 0
        col = []
        for i in range(tgt.n_generators):
            if i < tgt.free_rank:
                col.append(0 if d else rng.randint(-4, 4))
            else:
                e = tgt.torsion[i - tgt.free_rank]
                step = e // gcd(d, e) if d else 1
                col.append(step * rng.randint(0, e))
        cols.append(col)
    rows = [[cols[j][i] for j in range(src.n_generators)] for i in range(tgt.n_generators)]
    return PullbackMap.from_rows(src, tgt, rows)


@settings(max_examples=100, deadline=None)
@given(groups, groups, st.integers(0, 10_000))
def test_closure_and_zero(src, tgt, seed):
    if src.n_generators == 0 or tgt.n_generators == 0:
        return
    rng = random.Random(seed)
    e = _random_map(rng, src, tgt)
    assert pullback_condition(CohomologyElement.zero(src), e, CohomologyElement.zero(tgt))
    x = CohomologyElement(src, tuple(rng.randint(-5, 5) for _ in range(src.n_generators)))
    assert pullback_condition(x, e, e(x))


@given(st.lists(st.integers(-40, 40), min_size=1, max_size=4))
def test_constraint_never_admits_non_divisors(ws):
    c = s2s3_target_constraint(ws)
    if c.admissible is None:
        assert not any(ws)
        return
    for k in c.admissible:
        assert k != 0 and all(w % (2 * k) == 0 for w in ws)
    # and it is complete on the range that can matter
    bound = max(abs(w) for w in ws)
    for k in range(1, bound + 1):
        if all(w % (2 * k) == 0 for w in ws):
            assert k in c.admissible and -k in c.admissible
