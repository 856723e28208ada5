"""First Chern class bookkeeping for contact embeddings.

If ``(M, xi)`` embeds in ``(W, xi')`` with trivial normal bundle then
``c1(xi) = e^* c1(xi')``. For ``W = S^2 x S^3`` or the twisted bundle,
``H^2(W) = Z`` generated by ``h`` and ``c1(xi') = 2k h``, so every embedded
``c1(xi)`` evaluates to a multiple of ``2k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AbelianGroupPresentation, IntMatrix

H2_FIVE_MANIFOLD = AbelianGroupPresentation(1, ())


class IncompatibleGroupsError(ValueError):
    pass


class OddDifferenceError(ValueError):
    pass


@dataclass(frozen=True)
class CohomologyElement:
    """Coordinates in a presentation: free part first, then torsion (reduced)."""

    group: AbelianGroupPresentation
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(x) for x in self.coords)
        if len(coords) != self.group.n_generators:
            raise ValueError(f"{len(coords)} coordinates for a group with {self.group.n_generators} generators")
        object.__setattr__(self, "coords", self.group.reduce(coords))

    @classmethod
    def zero(cls, group: AbelianGroupPresentation) -> CohomologyElement:
        return cls(group, (0,) * group.n_generators)

    def __add__(self, other: CohomologyElement) -> CohomologyElement:
        if other.group != self.group:
            raise IncompatibleGroupsError("elements live in different groups")
        return CohomologyElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, n: int) -> CohomologyElement:
        return CohomologyElement(self.group, tuple(n * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return f"({', '.join(map(str, self.coords))}) in {self.group}"


def multiple_of_h(k: int) -> CohomologyElement:
    """``k h`` in ``H^2 = Z`` of the two 5-dimensional targets."""
    return CohomologyElement(H2_FIVE_MANIFOLD, (k,))


@dataclass(frozen=True)
class PullbackMap:
    """A homomorphism given by the images of the source generators (columns)."""

    source: AbelianGroupPresentation
    target: AbelianGroupPresentation
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.n_generators, self.source.n_generators):
            raise IncompatibleGroupsError(
                f"matrix shape {self.matrix.shape} does not match "
                f"{self.target.n_generators} x {self.source.n_generators}"
            )
        # a generator of order d must map to an element killed by d
        for j, d in enumerate(self.source.torsion, start=self.source.free_rank):
            image = tuple(d * x for x in self.matrix.column(j))
            if any(self.target.reduce(image)):
                raise ValueError(f"not well defined: generator {j} has order {d} but its image does not")

    @classmethod
    def from_rows(cls, source: AbelianGroupPresentation, target: AbelianGroupPresentation, rows) -> PullbackMap:
        return cls(source, target, IntMatrix.from_rows(rows, source.n_generators))

    def __call__(self, x: CohomologyElement) -> CohomologyElement:
        if x.group != self.source:
            raise IncompatibleGroupsError(f"map is defined on {self.source}, element lives in {x.group}")
        return CohomologyElement(self.target, self.matrix.apply(x.coords))


def pullback_condition(c1_W: CohomologyElement, e_star: PullbackMap, c1_M: CohomologyElement) -> bool:
    """Whether ``e^* c1(W) = c1(M)``, the necessary condition for a contact embedding."""
    if c1_M.group != e_star.target:
        raise IncompatibleGroupsError(f"c1(M) lives in {c1_M.group}, map lands in {e_star.target}")
    return e_star(c1_W) == c1_M


@dataclass(frozen=True)
class TargetConstraint:
    """Values of ``k`` in ``c1(xi') = 2k h`` compatible with the witnesses.

    ``admissible`` is ``None`` when every integer is allowed.
    """

    witnesses: tuple[int, ...]
    admissible: frozenset[int] | None
    zero_excluded: bool
    inconclusive: bool

    def admits(self, k: int) -> bool:
        if k == 0:
            return not self.zero_excluded
        return self.admissible is None or k in self.admissible

    def __str__(self) -> str:
        if self.admissible is None:
            return "every k admissible (inconclusive)"
        ks = ", ".join(map(str, sorted(self.admissible, key=lambda k: (abs(k), k)))) or "none"
        zero = "k = 0 excluded" if self.zero_excluded else "k = 0 allowed"
        return f"k in {{{ks}}}; {zero}"


def s2s3_target_constraint(witness_c1_values: Sequence[int]) -> TargetConstraint:
    """Nonzero ``k`` with ``2k`` dividing every witness.

    A nonzero witness also rules out ``k = 0``, since then every pulled-back
    class would vanish.
    """
    ws = tuple(int(w) for w in witness_c1_values)
    if not ws:
        raise ValueError("need at least one witness value")
    nonzero = [abs(w) for w in ws if w]
    if not nonzero:
        return TargetConstraint(ws, None, False, True)
    bound = min(nonzero) // 2
    ks = {s * k for k in range(1, bound + 1) if all(w % (2 * k) == 0 for w in nonzero) for s in (1, -1)}
    return TargetConstraint(ws, frozenset(ks), True, False)


def difference_class(c1_eta: int, c1_eta_prime: int) -> int:
    """``d`` with ``2d = c1(eta) - c1(eta')`` on the generator of ``H^2 = Z``."""
    diff = int(c1_eta) - int(c1_eta_prime)
    if diff % 2:
        raise OddDifferenceError(f"c1 difference {diff} is odd; both classes must be even")
    return diff // 2
