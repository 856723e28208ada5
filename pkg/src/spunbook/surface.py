"""The page surface of genus g with one boundary component.

Curves are modelled by their integral homology class in the interleaved
symplectic basis ``(a1, b1, ..., ag, bg)`` together with a name.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

Vector = tuple[int, ...]


@dataclass(frozen=True)
class SurfaceModel:
    genus: int
    boundary_components: int = 1

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")
        if self.boundary_components != 1:
            raise ValueError("only surfaces with one boundary component are supported")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    def a(self, i: int) -> Vector:
        """Class a_i (1-based)."""
        return _unit(self.rank, 2 * (i - 1))

    def b(self, i: int) -> Vector:
        """Class b_i (1-based)."""
        return _unit(self.rank, 2 * (i - 1) + 1)

    def basis(self) -> list[tuple[str, Vector]]:
        out = []
        for i in range(1, self.genus + 1):
            out.append((f"a{i}", self.a(i)))
            out.append((f"b{i}", self.b(i)))
        return out


def _unit(n: int, k: int) -> Vector:
    return tuple(int(j == k) for j in range(n))


@dataclass(frozen=True)
class CurveClass:
    name: str
    vector: Vector
    separating: bool = False
    role: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))
        if len(self.vector) % 2:
            raise ValueError(f"curve {self.name}: vector length must be even")
        if not any(self.vector) and not self.separating:
            raise ValueError(f"curve {self.name}: zero class is only allowed for separating curves")

    @property
    def genus(self) -> int:
        return len(self.vector) // 2

    def same_class(self, other: CurveClass) -> bool:
        """Equality as unoriented homology classes; twists ignore orientation."""
        return self.vector == other.vector or self.vector == tuple(-x for x in other.vector)


def pairing(x: CurveClass | Sequence[int], y: CurveClass | Sequence[int]) -> int:
    """Algebraic intersection number with <a_i, b_i> = 1."""
    u = x.vector if isinstance(x, CurveClass) else tuple(x)
    v = y.vector if isinstance(y, CurveClass) else tuple(y)
    if len(u) != len(v) or len(u) % 2:
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(u[k] * v[k + 1] - u[k + 1] * v[k] for k in range(0, len(u), 2))


def mod2_class(x: CurveClass | Sequence[int]) -> Vector:
    v = x.vector if isinstance(x, CurveClass) else tuple(x)
    return tuple(c & 1 for c in v)


@dataclass(frozen=True)
class CurveRegistry:
    surface: SurfaceModel
    curves: tuple[CurveClass, ...]
    warning: str | None = None
    calibration: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        names = [c.name for c in self.curves]
        if len(set(names)) != len(names):
            raise ValueError("curve names must be unique")
        for c in self.curves:
            if len(c.vector) != self.surface.rank:
                raise ValueError(f"curve {c.name} has the wrong dimension for genus {self.genus}")

    @property
    def genus(self) -> int:
        return self.surface.genus

    def __getitem__(self, name: str) -> CurveClass:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __len__(self) -> int:
        return len(self.curves)

    def names(self) -> list[str]:
        return [c.name for c in self.curves]

    def gamma(self, i: int) -> CurveClass:
        return self[gamma_name(i)]

    def chain(self) -> list[CurveClass]:
        return [self.gamma(i) for i in range(1, 2 * self.genus + 1)]

    def with_curves(self, extra: Iterable[CurveClass]) -> CurveRegistry:
        """Registry extended (or overridden by name) with ``extra``."""
        extra = list(extra)
        names = {c.name for c in extra}
        kept = tuple(c for c in self.curves if c.name not in names)
        return CurveRegistry(self.surface, kept + tuple(extra), self.warning, self.calibration)

    def without(self, *names: str) -> CurveRegistry:
        return CurveRegistry(
            self.surface, tuple(c for c in self.curves if c.name not in names), self.warning, self.calibration
        )

    def find_class(self, curve: CurveClass) -> CurveClass | None:
        """First registered curve with the same homology class."""
        return next((c for c in self.curves if c.same_class(curve)), None)

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "curves": [
                {"name": c.name, "vector": list(c.vector), "separating": c.separating, "role": c.role}
                for c in self.curves
            ],
            "warning": self.warning,
        }

    @classmethod
    def from_json(cls, data: dict) -> CurveRegistry:
        surface = SurfaceModel(int(data["genus"]))
        curves = tuple(
            CurveClass(c["name"], tuple(c["vector"]), bool(c.get("separating", False)), c.get("role"))
            for c in data["curves"]
        )
        return cls(surface, curves, data.get("warning"))


def gamma_name(i: int) -> str:
    return f"gamma{i}"


def chain_classes(g: int) -> list[Vector]:
    """[gamma_1] = a1, [gamma_2i] = b_i, [gamma_2i+1] = a_i + a_{i+1}."""
    s = SurfaceModel(g)
    out = [s.a(1)]
    for i in range(1, g + 1):
        out.append(s.b(i))
        if i < g:
            out.append(tuple(x + y for x, y in zip(s.a(i), s.a(i + 1))))
    return out


def _normalize_sign(v: Vector) -> Vector:
    lead = next((x for x in v if x), 0)
    return tuple(-x for x in v) if lead < 0 else v


def signed_sum_candidates(parts: Sequence[Vector]) -> list[Vector]:
    """Distinct classes sum(+-parts), up to overall sign, simplest first.

    Ordering is by L1 norm, then lexicographically; this is the search order
    used when calibrating the classes of gamma_{2g+1} and gamma_{2g+2}.
    """
    seen = set()
    for signs in itertools.product((1, -1), repeat=len(parts) - 1):
        v = list(parts[0])
        for s, p in zip(signs, parts[1:]):
            v = [x + s * y for x, y in zip(v, p)]
        if any(v):
            seen.add(_normalize_sign(tuple(v)))
    return sorted(seen, key=lambda v: (sum(map(abs, v)), tuple(-x for x in v)))


def chain_registry(g: int, warning: str | None = None) -> CurveRegistry:
    s = SurfaceModel(g)
    curves = tuple(CurveClass(gamma_name(i + 1), v, role="chain") for i, v in enumerate(chain_classes(g)))
    return CurveRegistry(s, curves, warning)


@lru_cache(maxsize=None)
def standard_registry(g: int) -> CurveRegistry:
    """Marked curves gamma_1, ..., gamma_{2g+2} with calibrated classes.

    For g < 3 the two extra curves are not both defined: g = 2 carries
    gamma_5 = gamma_{2g+1} uncalibrated, g = 1 only the chain. Either way the
    registry's ``warning`` is set.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    chain = chain_classes(g)
    if g == 1:
        return chain_registry(g, warning="genus 1: chain-only registry (gamma_3, gamma_4 undefined)")
    if g == 2:
        reg = chain_registry(g, warning="genus 2: gamma_6 undefined; gamma_5 uses the simplest candidate class")
        v = signed_sum_candidates([chain[0], chain[2]])[0]
        return reg.with_curves([CurveClass(gamma_name(2 * g + 1), v, role="extra")])
    from .lefschetz import calibrate_extra_curves

    v_odd, v_even, log = calibrate_extra_curves(g)
    reg = chain_registry(g).with_curves(
        [
            CurveClass(gamma_name(2 * g + 1), v_odd, role="extra"),
            CurveClass(gamma_name(2 * g + 2), v_even, role="extra"),
        ]
    )
    return CurveRegistry(reg.surface, reg.curves, None, tuple(log))
