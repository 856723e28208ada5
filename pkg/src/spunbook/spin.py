"""Quadratic refinements of the mod 2 intersection form (spin structures).

Forms satisfy ``q(x + y) = q(x) + q(y) + <x, y>`` and are stored by their
values on the basis ``(a1, b1, ..., ag, bg)``. With this relation a twist
about ``c`` fixes ``q`` exactly when ``q(c) = 1``.

The non-generation argument being made executable labels the preserved
form by ``q(gamma_i) = 0``; that is the complementary labelling. Certificates
here therefore only claim that some spin structure is fixed by every
generator, which holds under either labelling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .algebra import solve_affine_mod2
from .mcg import TwistLetter, TwistWord, symplectic_inverse, transvection_matrix, word_action
from .surface import CurveClass, mod2_class

MAX_ORBIT_GENUS = 5
STABILIZING_VALUE = 1

CONVENTION_NOTE = (
    "q(x+y) = q(x) + q(y) + <x,y> (mod 2); the twist about c fixes q iff q(c) = 1. "
    "The complementary labelling 'q(gamma_i) = 0' describes the same fixed spin structure."
)


@dataclass(frozen=True, order=True)
class QuadraticForm:
    genus: int
    basis_values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis_values", tuple(int(x) & 1 for x in self.basis_values))
        if len(self.basis_values) != 2 * self.genus:
            raise ValueError("basis_values must have length 2g")

    def __str__(self) -> str:
        return ",".join(map(str, self.basis_values))


def all_forms(g: int) -> list[QuadraticForm]:
    return [QuadraticForm(g, tuple((k >> (2 * g - 1 - i)) & 1 for i in range(2 * g))) for k in range(4**g)]


def _vector(x) -> tuple[int, ...]:
    return mod2_class(x)


def evaluate(q: QuadraticForm, x: CurveClass | Sequence[int]) -> int:
    v = _vector(x)
    if len(v) != len(q.basis_values):
        raise ValueError(f"length mismatch: form has {len(q.basis_values)} coordinates, class has {len(v)}")
    total = sum(a & b for a, b in zip(v, q.basis_values))
    # the only nonzero pairings between basis vectors are <a_i, b_i>
    total += sum(v[k] & v[k + 1] for k in range(0, len(v), 2))
    return total & 1


def arf(q: QuadraticForm) -> int:
    bv = q.basis_values
    return sum(bv[k] & bv[k + 1] for k in range(0, len(bv), 2)) & 1


def pushforward(q: QuadraticForm, w: TwistWord) -> QuadraticForm:
    """``q'(x) = q(Phi^-1 x)`` with ``Phi`` the action of ``w``."""
    if w.genus != q.genus:
        raise ValueError(f"genus mismatch: form genus {q.genus}, word genus {w.genus}")
    return _push_matrix(q, symplectic_inverse(word_action(w)))


def twist_pushforward(q: QuadraticForm, c: CurveClass | Sequence[int], sign: int = 1) -> QuadraticForm:
    """Pushforward by the single twist about ``c`` (no registry needed)."""
    v = c.vector if isinstance(c, CurveClass) else tuple(c)
    if len(v) != 2 * q.genus:
        raise ValueError("genus mismatch")
    return _push_matrix(q, transvection_matrix(v, -sign))


def _push_matrix(q: QuadraticForm, inverse) -> QuadraticForm:
    n = 2 * q.genus
    return QuadraticForm(q.genus, tuple(evaluate(q, inverse.column(j)) for j in range(n)))


def _common_genus(alphabet: Sequence[CurveClass]) -> int:
    if not alphabet:
        raise ValueError("alphabet must be nonempty")
    gs = {c.genus for c in alphabet}
    if len(gs) != 1:
        raise ValueError("alphabet curves live on different surfaces")
    return gs.pop()


def fixed_forms(alphabet: Sequence[CurveClass], stabilizing_value: int = STABILIZING_VALUE) -> list[QuadraticForm]:
    """All forms with ``q(c) = stabilizing_value`` on every alphabet class.

    ``q(c)`` is affine in the basis values: the linear part is ``c mod 2`` and
    the constant is the sum of ``c_{a_i} c_{b_i}``.
    """
    g = _common_genus(alphabet)
    rows, rhs = [], []
    for c in alphabet:
        v = mod2_class(c)
        const = sum(v[k] & v[k + 1] for k in range(0, len(v), 2)) & 1
        rows.append(v)
        rhs.append((stabilizing_value ^ const) & 1)
    return [QuadraticForm(g, s) for s in solve_affine_mod2(rows, rhs, 2 * g)]


def orbit(q: QuadraticForm, alphabet: Sequence[CurveClass]) -> frozenset[QuadraticForm]:
    """Closure of ``q`` under twists about the alphabet curves."""
    g = _common_genus(alphabet)
    if g != q.genus:
        raise ValueError("genus mismatch")
    if g > MAX_ORBIT_GENUS:
        raise ValueError(f"orbit enumeration is capped at genus {MAX_ORBIT_GENUS}")
    seen = {q}
    queue = deque([q])
    while queue:
        cur = queue.popleft()
        for c in alphabet:
            nxt = twist_pushforward(cur, c)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def orbit_partition(g: int, alphabet: Sequence[CurveClass]) -> list[frozenset[QuadraticForm]]:
    """Orbits of all ``4**g`` forms, ordered by their least element."""
    remaining = set(all_forms(g))
    orbits = []
    for q in all_forms(g):
        if q in remaining:
            o = orbit(q, alphabet)
            remaining -= o
            orbits.append(o)
    return orbits


def even_odd_counts(g: int) -> tuple[int, int]:
    return (2 ** (g - 1) * (2**g + 1), 2 ** (g - 1) * (2**g - 1))


@dataclass(frozen=True)
class NonGenerationCertificate:
    """A spin structure fixed by every twist of an alphabet.

    Its existence confines the generated subgroup to the stabilizer of a
    spin structure (the theta group), which the full mapping class group is
    not, since it moves every form with Arf invariant 0 or 1 around its
    whole orbit.
    """

    alphabet: tuple[CurveClass, ...]
    form: QuadraticForm
    checks: tuple[tuple[str, int, bool], ...]
    convention: str = CONVENTION_NOTE

    @property
    def sound(self) -> bool:
        return all(ok for _, _, ok in self.checks)

    def to_json(self) -> dict:
        return {
            "alphabet": [{"name": c.name, "vector": list(c.vector)} for c in self.alphabet],
            "form": list(self.form.basis_values),
            "genus": self.form.genus,
            "arf": arf(self.form),
            "checks": [{"curve": n, "q_value": v, "fixed": ok} for n, v, ok in self.checks],
            "convention": self.convention,
        }

    @classmethod
    def from_json(cls, data: dict) -> NonGenerationCertificate:
        alphabet = tuple(CurveClass(c["name"], tuple(c["vector"])) for c in data["alphabet"])
        form = QuadraticForm(int(data["genus"]), tuple(data["form"]))
        checks = tuple((c["curve"], int(c["q_value"]), bool(c["fixed"])) for c in data["checks"])
        return cls(alphabet, form, checks, data.get("convention", CONVENTION_NOTE))


def non_generation_certificate(alphabet: Sequence[CurveClass]) -> NonGenerationCertificate | None:
    forms = fixed_forms(alphabet)
    if not forms:
        return None
    q0 = forms[0]
    checks = tuple((c.name, evaluate(q0, c), twist_pushforward(q0, c) == q0) for c in alphabet)
    return NonGenerationCertificate(tuple(alphabet), q0, checks)


def replay_certificate(cert: NonGenerationCertificate) -> bool:
    """Recompute every per-generator check from scratch."""
    for c, (name, value, _) in zip(cert.alphabet, cert.checks):
        if c.name != name or evaluate(cert.form, c) != value:
            return False
        if twist_pushforward(cert.form, c) != cert.form:
            return False
        # the inverse twist must fix it too
        if pushforward(cert.form, _single_word(c, -1)) != cert.form:
            return False
    return len(cert.checks) == len(cert.alphabet)


def _single_word(c: CurveClass, sign: int) -> TwistWord:
    from .surface import CurveRegistry, SurfaceModel

    reg = CurveRegistry(SurfaceModel(c.genus), (c,))
    return TwistWord((TwistLetter(c, sign),), reg)
