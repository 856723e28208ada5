"""Open books with page of genus g and connected binding."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AbelianGroupPresentation, IntMatrix, cokernel_presentation, solve_divisibility
from .mcg import TwistWord, word_action
from .surface import CurveClass, CurveRegistry, standard_registry


@dataclass(frozen=True)
class OpenBookDescriptor:
    genus: int
    word: TwistWord
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.word.genus != self.genus:
            raise ValueError(f"word lives on genus {self.word.genus}, page has genus {self.genus}")

    @property
    def registry(self) -> CurveRegistry:
        return self.word.registry

    @classmethod
    def from_pairs(
        cls,
        genus: int,
        pairs: Sequence[tuple[str, int]],
        label: str | None = None,
        extra_curves: Sequence[CurveClass] = (),
    ) -> OpenBookDescriptor:
        reg = standard_registry(genus)
        if extra_curves:
            reg = reg.with_curves(extra_curves)
        return cls(genus, TwistWord.from_pairs(reg, pairs), label)

    def to_json(self) -> dict:
        std = standard_registry(self.genus)
        used = {x.curve.name: x.curve for x in self.word.letters}
        extra = [c for n, c in used.items() if n not in std or std[n] != c]
        out = {
            "genus": self.genus,
            "letters": [[n, s] for n, s in self.word.pairs()],
            "label": self.label,
        }
        if extra:
            out["curves"] = [{"name": c.name, "vector": list(c.vector)} for c in extra]
        return out

    @classmethod
    def from_json(cls, data: dict) -> OpenBookDescriptor:
        extra = [CurveClass(c["name"], tuple(c["vector"])) for c in data.get("curves", [])]
        return cls.from_pairs(int(data["genus"]), [(n, int(s)) for n, s in data["letters"]], data.get("label"), extra)


def monodromy_minus_identity(ob: OpenBookDescriptor) -> IntMatrix:
    return word_action(ob.word) - IntMatrix.identity(2 * ob.genus)


def first_homology(ob: OpenBookDescriptor) -> AbelianGroupPresentation:
    """``H_1(M) = coker(Phi - I)`` for a page with one boundary component."""
    return cokernel_presentation(monodromy_minus_identity(ob))


def is_c1_even_candidate(h2: AbelianGroupPresentation, c: Sequence[int]) -> bool:
    return solve_divisibility(h2, c, 2)
