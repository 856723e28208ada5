"""Dehn twist words and their action on first homology.

A right-handed twist about ``c`` acts by ``x -> x + <x, c> c``. Words are
read left to right: the first letter acts first, so the action of
``(t1, t2, ..., tn)`` is the matrix product ``Tn ... T2 T1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import IntMatrix
from .surface import CurveClass, CurveRegistry, pairing


@dataclass(frozen=True)
class TwistLetter:
    curve: CurveClass
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"twist sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> TwistLetter:
        return TwistLetter(self.curve, -self.sign)

    def __str__(self) -> str:
        return f"{self.curve.name}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class TwistWord:
    letters: tuple[TwistLetter, ...]
    registry: CurveRegistry

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            if letter.curve.name not in self.registry or self.registry[letter.curve.name] != letter.curve:
                raise ValueError(f"letter {letter} does not reference the word's registry")

    @classmethod
    def from_pairs(cls, registry: CurveRegistry, pairs: Iterable[tuple[str, int]]) -> TwistWord:
        return cls(tuple(TwistLetter(registry[name], int(sign)) for name, sign in pairs), registry)

    @property
    def genus(self) -> int:
        return self.registry.genus

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: TwistWord) -> TwistWord:
        if other.registry != self.registry:
            raise ValueError("cannot concatenate words over different registries")
        return TwistWord(self.letters + other.letters, self.registry)

    def inverse(self) -> TwistWord:
        return TwistWord(tuple(x.inverse() for x in reversed(self.letters)), self.registry)

    def conjugate(self, by: TwistWord) -> TwistWord:
        """``by + self + by^-1``."""
        return by + self + by.inverse()

    def rotate(self, k: int) -> TwistWord:
        if not self.letters:
            return self
        k %= len(self.letters)
        return TwistWord(self.letters[k:] + self.letters[:k], self.registry)

    def curves(self) -> list[CurveClass]:
        seen = []
        for x in self.letters:
            if x.curve not in seen:
                seen.append(x.curve)
        return seen

    def pairs(self) -> list[tuple[str, int]]:
        return [(x.curve.name, x.sign) for x in self.letters]

    def __str__(self) -> str:
        return " ".join(map(str, self.letters)) or "(empty)"


def symplectic_form(g: int) -> IntMatrix:
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for k in range(0, n, 2):
        rows[k][k + 1] = 1
        rows[k + 1][k] = -1
    return IntMatrix.from_rows(rows, n)


def transvection_matrix(c: CurveClass | Sequence[int], sign: int = 1) -> IntMatrix:
    v = c.vector if isinstance(c, CurveClass) else tuple(c)
    n = len(v)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        p = sign * pairing(e, v)
        cols.append([x + p * y for x, y in zip(e, v)])
    return IntMatrix.from_rows(cols, n).transpose()


def word_action(w: TwistWord) -> IntMatrix:
    m = IntMatrix.identity(2 * w.genus)
    for letter in w.letters:
        m = transvection_matrix(letter.curve, letter.sign) @ m
    return m


def is_symplectic(m: IntMatrix) -> bool:
    if not m.is_square():
        raise ValueError("symplectic test needs a square matrix")
    if m.n_rows % 2:
        raise ValueError("symplectic test needs even dimension")
    j = symplectic_form(m.n_rows // 2)
    return m.transpose() @ j @ m == j


def symplectic_inverse(m: IntMatrix) -> IntMatrix:
    """``J^-1 m^T J`` which equals ``m^-1`` for symplectic ``m``."""
    j = symplectic_form(m.n_rows // 2)
    return -(j @ m.transpose() @ j)


def random_word(
    rng: random.Random, registry: CurveRegistry, length: int, alphabet: Sequence[str] | None = None
) -> TwistWord:
    names = list(alphabet) if alphabet is not None else registry.names()
    return TwistWord.from_pairs(
        registry, [(rng.choice(names), rng.choice((1, -1))) for _ in range(length)]
    )
