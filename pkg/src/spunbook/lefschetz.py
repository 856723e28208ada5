"""Lefschetz fibrations over the disk, described by ordered vanishing cycles.

Also holds the calibration that fixes the integral classes of
gamma_{2g+1} and gamma_{2g+2}: among the finitely many signed sums allowed
by the curves they cobound, take the simplest whose preset fibrations have
boundary first homology Z/3 (Euler number -3 disk bundle), Z/4 (Euler
number -4) and 0 (the S^5 page, a punctured double S^2 x S^2).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AbelianGroupPresentation
from .mcg import TwistLetter, TwistWord
from .openbook import OpenBookDescriptor, first_homology
from .surface import (
    CurveClass,
    CurveRegistry,
    chain_classes,
    chain_registry,
    gamma_name,
    signed_sum_candidates,
    standard_registry,
)


class Chirality(enum.IntEnum):
    ORDINARY = 1
    ACHIRAL = -1

    def __str__(self) -> str:
        return self.name.lower()


class PresetError(ValueError):
    pass


class CalibrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class LefschetzDescriptor:
    fiber_genus: int
    cycles: tuple[tuple[CurveClass, Chirality], ...]
    registry: CurveRegistry = field(compare=False, repr=False)
    label: str = ""
    target_total_space: str = ""
    target_boundary: str = ""

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple((c, Chirality(ch)) for c, ch in self.cycles))
        for c, _ in self.cycles:
            if c.genus != self.fiber_genus:
                raise ValueError(f"cycle {c.name} does not live on genus {self.fiber_genus}")

    @property
    def n_achiral(self) -> int:
        return sum(1 for _, ch in self.cycles if ch is Chirality.ACHIRAL)

    def all_ordinary(self) -> bool:
        return self.n_achiral == 0

    def curve_set(self) -> list[CurveClass]:
        out = []
        for c, _ in self.cycles:
            if not any(c.same_class(d) for d in out):
                out.append(c)
        return out

    def to_json(self) -> dict:
        return {
            "fiber_genus": self.fiber_genus,
            "cycles": [[c.name, list(c.vector), str(ch)] for c, ch in self.cycles],
            "label": self.label,
            "target_total_space": self.target_total_space,
            "target_boundary": self.target_boundary,
        }


PRESET_NAMES = ("E_MINUS_3", "E_MINUS_4", "DISK", "S5_PAGE")

PRESET_METADATA = {
    "E_MINUS_3": ("D^2-bundle over S^2 with Euler number -3", "L(3,1)"),
    "E_MINUS_4": ("D^2-bundle over S^2 with Euler number -4", "L(4,1)"),
    "DISK": ("B^4", "S^3"),
    "S5_PAGE": ("S^2xS^2 # S^2xS^2 minus a ball (page of an open book of S^5)", "S^3"),
}

# expected boundary first homology of each preset
CALIBRATION_TARGETS = {
    "E_MINUS_3": AbelianGroupPresentation(0, (3,)),
    "E_MINUS_4": AbelianGroupPresentation(0, (4,)),
    "DISK": AbelianGroupPresentation(0, ()),
    "S5_PAGE": AbelianGroupPresentation(0, ()),
}


def parse_preset(spec: str) -> tuple[str, int | None]:
    """``"E_MINUS_3(4)"`` -> ``("E_MINUS_3", 4)``; bare names give ``None``."""
    m = re.fullmatch(r"\s*([A-Z0-9_]+)\s*(?:\(\s*(\d+)\s*\))?\s*", spec.upper())
    if not m or m.group(1) not in PRESET_NAMES:
        raise PresetError(f"unknown preset {spec!r}; choose from {', '.join(PRESET_NAMES)}")
    return m.group(1), int(m.group(2)) if m.group(2) else None


def _required_genus(name: str) -> int:
    return 1 if name == "DISK" else 3


def preset(name: str, g: int | None = None, registry: CurveRegistry | None = None) -> LefschetzDescriptor:
    base, parsed_g = parse_preset(name)
    g = g if g is not None else parsed_g
    if g is None:
        raise PresetError(f"preset {base} needs a genus")
    if g < _required_genus(base):
        raise PresetError(f"preset {base} needs genus >= {_required_genus(base)}, got {g}")
    reg = registry if registry is not None else standard_registry(g)
    O, A = Chirality.ORDINARY, Chirality.ACHIRAL
    chain = [(reg.gamma(i), O) for i in range(1, 2 * g + 1)]
    if base == "DISK":
        cycles = chain
    elif base == "E_MINUS_3":
        cycles = chain + [(reg.gamma(2 * g + 1), O)]
    elif base == "E_MINUS_4":
        cycles = chain + [(reg.gamma(2 * g + 2), O)]
    else:
        # gamma_3 achiral; extras after the chain, the two gamma_6 copies first
        cycles = list(chain)
        cycles[2] = (reg.gamma(3), A)
        cycles += [(reg.gamma(6), A), (reg.gamma(6), A), (reg.gamma(2 * g + 2), A), (reg.gamma(2 * g + 2), A)]
    total, boundary = PRESET_METADATA[base]
    return LefschetzDescriptor(g, tuple(cycles), reg, f"{base}({g})", total, boundary)


def euler_characteristic(L: LefschetzDescriptor) -> int:
    return (1 - 2 * L.fiber_genus) + len(L.cycles)


def relative_framings(L: LefschetzDescriptor) -> list[int]:
    """2-handle framing relative to the page framing: -1 ordinary, +1 achiral."""
    return [-int(ch) for _, ch in L.cycles]


def boundary_open_book(L: LefschetzDescriptor) -> OpenBookDescriptor:
    """Right-handed twist per ordinary cycle, left-handed per achiral one."""
    letters = tuple(TwistLetter(c, int(ch)) for c, ch in L.cycles)
    reg = L.registry
    missing = [c for c, _ in L.cycles if c.name not in reg or reg[c.name] != c]
    if missing:
        reg = reg.with_curves(missing)
    return OpenBookDescriptor(L.fiber_genus, TwistWord(letters, reg), f"boundary of {L.label}")


def boundary_homology(L: LefschetzDescriptor) -> AbelianGroupPresentation:
    return first_homology(boundary_open_book(L))


def calibration_report(g: int, registry: CurveRegistry | None = None) -> list[tuple[str, AbelianGroupPresentation, AbelianGroupPresentation, bool]]:
    """``(preset, expected, computed, ok)`` for every calibration target."""
    reg = registry if registry is not None else standard_registry(g)
    out = []
    for name in PRESET_NAMES:
        expected = CALIBRATION_TARGETS[name]
        try:
            got = boundary_homology(preset(name, g, reg))
        except (KeyError, ValueError):
            out.append((name, expected, None, False))
            continue
        out.append((name, expected, got, got == expected))
    return out


def calibrate_extra_curves(g: int) -> tuple[tuple[int, ...], tuple[int, ...], list[str]]:
    """Search the sign choices for [gamma_{2g+1}] and [gamma_{2g+2}]."""
    if g < 3:
        raise CalibrationError("calibration needs genus >= 3")
    chain = chain_classes(g)
    base = chain_registry(g)
    log = []
    odd_name, even_name = gamma_name(2 * g + 1), gamma_name(2 * g + 2)

    def h1(name, reg):
        return boundary_homology(preset(name, g, reg))

    disk = h1("DISK", base)
    log.append(f"DISK({g}): H1 = {disk}")
    if disk != CALIBRATION_TARGETS["DISK"]:
        raise CalibrationError(f"chain curves do not bound a ball at genus {g}: H1 = {disk}")

    odd = None
    for v in signed_sum_candidates([chain[0], chain[2]]):
        got = h1("E_MINUS_3", base.with_curves([CurveClass(odd_name, v)]))
        log.append(f"{odd_name} = {list(v)}: E_MINUS_3 H1 = {got}")
        if got == CALIBRATION_TARGETS["E_MINUS_3"]:
            odd = v
            break
    if odd is None:
        raise CalibrationError(f"no sign choice for {odd_name} gives H1 = Z/3")

    even = None
    for v in signed_sum_candidates([chain[0], chain[2], chain[4]]):
        reg = base.with_curves([CurveClass(even_name, v)])
        e4, s5 = h1("E_MINUS_4", reg), h1("S5_PAGE", reg)
        log.append(f"{even_name} = {list(v)}: E_MINUS_4 H1 = {e4}, S5_PAGE H1 = {s5}")
        if e4 == CALIBRATION_TARGETS["E_MINUS_4"] and s5 == CALIBRATION_TARGETS["S5_PAGE"]:
            even = v
            break
    if even is None:
        raise CalibrationError(f"no sign choice for {even_name} gives H1 = Z/4 and a homology-sphere S5 page")
    return odd, even, log


def random_descriptor(rng, g: int, n_cycles: int) -> LefschetzDescriptor:
    reg = standard_registry(g)
    cycles = tuple(
        (rng.choice(reg.curves), rng.choice((Chirality.ORDINARY, Chirality.ACHIRAL))) for _ in range(n_cycles)
    )
    return LefschetzDescriptor(g, cycles, reg, "random")


def cycles_from_names(reg: CurveRegistry, items: Sequence[tuple[str, str]]) -> tuple[tuple[CurveClass, Chirality], ...]:
    return tuple((reg[n], Chirality[ch.upper()]) for n, ch in items)
