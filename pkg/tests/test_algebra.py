import pytest
from hypothesis import given, settings, strategies as st

from spunbook.algebra import (
    AbelianGroupPresentation,
    IntMatrix,
    IntegerOverflowError,
    cokernel_presentation,
    determinant,
    invariant_factors,
    smith_normal_form,
    solve_affine_mod2,
    solve_divisibility,
)

from oracles import coker_by_enumeration_2x2, det, determinantal_invariants


def M(rows, cols=None):
    return IntMatrix.from_rows(rows, cols)


def is_diagonal(d):
    return all(d[i, j] == 0 for i in range(d.n_rows) for j in range(d.cols) if i != j)


def test_snf_diag_2_3():
    u, d, v = smith_normal_form(M([[2, 0], [0, 3]]))
    assert d == M([[1, 0], [0, 6]])
    assert u @ M([[2, 0], [0, 3]]) @ v == d
    assert determinantal_invariants([[2, 0], [0, 3]], 2) == [1, 6]


def test_snf_identity():
    for n in (1, 2, 4):
        u, d, v = smith_normal_form(IntMatrix.identity(n))
        assert d == IntMatrix.identity(n)
        assert u == IntMatrix.identity(n) and v == IntMatrix.identity(n)


def test_snf_zero():
    u, d, v = smith_normal_form(IntMatrix.zeros(2, 2))
    assert d == IntMatrix.zeros(2, 2)
    assert u == IntMatrix.identity(2) and v == IntMatrix.identity(2)


def test_cokernel_single_relation():
    assert cokernel_presentation(M([[3]])) == AbelianGroupPresentation(0, (3,))


def test_cokernel_no_relations():
    g = cokernel_presentation(IntMatrix.from_rows([[], []], 0))
    assert g.free_rank == 2 and g.torsion == ()


def test_cokernel_1234():
    rows = [[1, 2], [3, 4]]
    g = cokernel_presentation(M(rows))
    assert g == AbelianGroupPresentation(0, (2,))
    assert coker_by_enumeration_2x2(rows) == 2


@pytest.mark.parametrize(
    "group, c, n, expected",
    [
        (AbelianGroupPresentation(1), (2,), 2, True),
        (AbelianGroupPresentation(1), (3,), 2, False),
        (AbelianGroupPresentation(0, (4,)), (2,), 2, True),
        (AbelianGroupPresentation(0, (4,)), (1,), 2, False),
    ],
)
def test_solve_divisibility_examples(group, c, n, expected):
    assert solve_divisibility(group, c, n) is expected


def test_solve_divisibility_exhaustive_z4():
    g = AbelianGroupPresentation(0, (4,))
    for c in range(4):
        brute = any((2 * x - c) % 4 == 0 for x in range(4))
        assert solve_divisibility(g, (c,), 2) is brute


def test_solve_divisibility_errors():
    with pytest.raises(ValueError):
        solve_divisibility(AbelianGroupPresentation(1), (1, 2), 2)
    with pytest.raises(ValueError):
        solve_divisibility(AbelianGroupPresentation(1), (1,), 0)


def test_overflow_is_an_error():
    big = 1 << 100
    m = M([[big]])
    with pytest.raises(IntegerOverflowError):
        m @ m
    with pytest.raises(IntegerOverflowError):
        M([[1 << 127]])


def test_presentation_validation():
    with pytest.raises(ValueError):
        AbelianGroupPresentation(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianGroupPresentation(0, (1,))
    with pytest.raises(ValueError):
        AbelianGroupPresentation(-1)


def test_presentation_order_and_str():
    g = AbelianGroupPresentation(0, (2, 6))
    assert g.order == 12
    assert str(g) == "Z/2 + Z/6"
    assert AbelianGroupPresentation(2).order is None
    assert str(AbelianGroupPresentation(2)) == "Z^2"
    assert str(AbelianGroupPresentation(0)) == "0"
    assert AbelianGroupPresentation(0).is_trivial()
    assert len(list(g.elements())) == 12


def test_presentation_json_round_trip():
    g = AbelianGroupPresentation(1, (2, 4))
    assert AbelianGroupPresentation.from_json(g.to_json()) == g


def test_non_rectangular_rejected():
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])


def test_affine_mod2():
    # x0 + x1 = 1, x1 = 1
    assert solve_affine_mod2([[1, 1], [0, 1]], [1, 1], 2) == [(0, 1)]
    # inconsistent
    assert solve_affine_mod2([[1, 0], [1, 0]], [0, 1], 2) == []
    # underdetermined: sorted
    assert solve_affine_mod2([[1, 0, 0]], [1], 3) == [(1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1)]


small_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=300, deadline=None)
@given(small_matrices)
def test_snf_properties(rows):
    m = M(rows)
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    assert is_diagonal(d)
    diag = [d[i, i] for i in range(min(d.shape))]
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[: len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert invariant_factors(m) == determinantal_invariants(rows, len(rows[0]))


square = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=300, deadline=None)
@given(square)
def test_cokernel_order_is_abs_det(rows):
    d = det(rows)
    assert determinant(M(rows)) == d
    g = cokernel_presentation(M(rows))
    if d:
        assert g.order == abs(d)
    else:
        assert g.free_rank > 0


torsion_groups = st.lists(st.integers(2, 4), min_size=0, max_size=3).map(
    lambda ds: AbelianGroupPresentation(0, tuple(_chain(ds)))
)


def _chain(ds):
    out = []
    for d in ds:
        out.append(d * out[-1] if out else d)
    return [x for x in out if x <= 64][:3]


@settings(max_examples=60, deadline=None)
@given(torsion_groups, st.integers(1, 6))
def test_divisibility_closure(group, n):
    if group.order > 64:
        return
    for x in group.elements():
        assert solve_divisibility(group, tuple(n * xi for xi in x), n)
