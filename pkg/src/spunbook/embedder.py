"""Spun-embedding certificates.

Let ``X -> D^2`` be a Lefschetz fibration with fiber the page ``S`` of an
open book whose monodromy is a word in twists about the vanishing cycles.
That open book embeds, page into page, in the 5-manifold with open book
``(X, id)``, which is the boundary of ``X x D^2``. The embedding is driven by
a loop in the base disk: going once around a critical value along ``c``
produces the fibration's twist about that cycle, and the reversed loop
``c'`` produces its inverse.

A certificate records the loop sequence and everything needed to replay it.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field, replace

from .algebra import IntMatrix
from .contactcheck import BUNDLED_PROFILES, collar_min_k, grid_for_path, path_profile
from .lefschetz import (
    CALIBRATION_TARGETS,
    Chirality,
    LefschetzDescriptor,
    PresetError,
    boundary_homology,
    preset,
)
from .mcg import TwistLetter, TwistWord, transvection_matrix, word_action
from .openbook import OpenBookDescriptor
from .surface import CurveClass, standard_registry

LOOP_KINDS = ("c", "c'")
NORMAL_BUNDLE = "trivial"

STRUCTURAL_NOTES = (
    "pages embed into pages by a fiber-preserving lift of the base path; asserted, not recomputed",
    "binding extension near the boundary of the page is asserted, not recomputed",
    f"normal bundle: {NORMAL_BUNDLE}",
)


@dataclass(frozen=True)
class TargetSpec:
    tag: str
    manifold: str
    preset: str
    contact: bool
    theorem_tag: str
    description: str


TARGETS = {
    "S2xtS3": TargetSpec(
        "S2xtS3", "S2xtS3", "E_MINUS_3", True, "stein-twisted-s3-bundle",
        "Stein fillable contact structure on the twisted S^3-bundle over S^2",
    ),
    "S2xS3": TargetSpec(
        "S2xS3", "S2xS3", "E_MINUS_4", True, "stein-s2xs3",
        "Stein fillable contact structure on S^2 x S^3",
    ),
    "S5-contact": TargetSpec(
        "S5-contact", "S5", "DISK", True, "hyperelliptic-into-standard-s5",
        "standard contact S^5 (hyperelliptic monodromy)",
    ),
    "S5-smooth": TargetSpec(
        "S5-smooth", "S5", "S5_PAGE", False, "smooth-into-s5",
        "smooth S^5 via an achiral fibration on a punctured double S^2 x S^2",
    ),
}
TARGET_ALIASES = {"S5": "S5-contact"}
TARGET_ORDER = ("S2xtS3", "S2xS3", "S5-contact", "S5-smooth")


def resolve_target(tag: str) -> TargetSpec:
    key = TARGET_ALIASES.get(tag, tag)
    if key not in TARGETS:
        raise ValueError(f"unknown target {tag!r}; choose from {', '.join(TARGET_ORDER)}")
    return TARGETS[key]


class AlphabetError(ValueError):
    """The word uses curves that are not vanishing cycles of the target."""

    def __init__(self, target: str, offending: list[str], applicable: list[str], reason: str = ""):
        self.target = target
        self.offending = offending
        self.applicable = applicable
        msg = reason or f"curves {', '.join(offending)} are not vanishing cycles of the {target} fibration"
        msg += "; applicable targets: " + (", ".join(applicable) if applicable else "none")
        super().__init__(msg)


@dataclass(frozen=True)
class PathSpec:
    steps: tuple[tuple[int, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((int(i), str(k)) for i, k in self.steps))
        for i, k in self.steps:
            if k not in LOOP_KINDS:
                raise ValueError(f"loop kind must be 'c' or \"c'\", got {k!r}")
            if i < 1:
                raise ValueError("cycle indices start at 1")

    def check_against(self, L: LefschetzDescriptor) -> None:
        for i, _ in self.steps:
            if i > len(L.cycles):
                raise ValueError(f"cycle index {i} out of range for {len(L.cycles)} vanishing cycles")

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return " ".join(f"{k}{i}" for i, k in self.steps) or "(constant path)"


def _cycle_index(L: LefschetzDescriptor, c: CurveClass) -> int | None:
    for i, (d, _) in enumerate(L.cycles, start=1):
        if c.same_class(d):
            return i
    return None


def path_spec(L: LefschetzDescriptor, w: TwistWord) -> PathSpec:
    """One loop per letter, around the first vanishing cycle in its class.

    Going around an ordinary critical value along ``c`` gives a right-handed
    twist and along ``c'`` a left-handed one; an achiral point swaps them.
    """
    steps = []
    missing = []
    for letter in w.letters:
        i = _cycle_index(L, letter.curve)
        if i is None:
            missing.append(letter.curve.name)
            continue
        eps = int(L.cycles[i - 1][1])
        steps.append((i, "c" if letter.sign * eps == 1 else "c'"))
    if missing:
        raise AlphabetError(L.label, sorted(set(missing)), [])
    return PathSpec(tuple(steps))


def replay_letters(L: LefschetzDescriptor, path: PathSpec) -> list[tuple[CurveClass, int]]:
    """Translate loop steps back to signed twists."""
    path.check_against(L)
    out = []
    for i, kind in path.steps:
        c, eps = L.cycles[i - 1]
        out.append((c, int(eps) if kind == "c" else -int(eps)))
    return out


def _action(letters: list[tuple[CurveClass, int]], n: int) -> IntMatrix:
    m = IntMatrix.identity(n)
    for c, s in letters:
        m = transvection_matrix(c, s) @ m
    return m


@functools.lru_cache(maxsize=None)
def default_collar_note() -> dict:
    """Report for the bundled circle profile, shared by every contact certificate."""
    report = collar_min_k(BUNDLED_PROFILES["circle"]())
    return {"source": "default", **report.to_json()}


def path_collar_note(path: PathSpec, n_cycles: int) -> dict:
    report = collar_min_k(path_profile(path.steps, n_cycles), grid_for_path(len(path)))
    return {"source": "path", **report.to_json()}


@dataclass(frozen=True)
class EmbeddingCertificate:
    source: OpenBookDescriptor
    target_fibration: LefschetzDescriptor
    target: str
    path: PathSpec
    contact: bool
    theorem_tag: str
    collar_note: dict | None = None
    preset: str = ""
    normal_bundle: str = NORMAL_BUNDLE
    notes: tuple[str, ...] = field(default=STRUCTURAL_NOTES)

    @property
    def target_manifold(self) -> str:
        return resolve_target(self.target).manifold

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target,
            "target_manifold": self.target_manifold,
            "preset": self.preset,
            "target_fibration": self.target_fibration.to_json(),
            "path": [[i, k] for i, k in self.path.steps],
            "contact": self.contact,
            "theorem_tag": self.theorem_tag,
            "collar_note": self.collar_note,
            "normal_bundle": self.normal_bundle,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, data: dict) -> EmbeddingCertificate:
        source = OpenBookDescriptor.from_json(data["source"])
        fib = data["target_fibration"]
        g = int(fib["fiber_genus"])
        curves = [CurveClass(name, tuple(vec)) for name, vec, _ in fib["cycles"]]
        reg = standard_registry(g)
        extra = [c for c in curves if c.name not in reg or reg[c.name].vector != c.vector]
        if extra:
            reg = reg.with_curves({c.name: c for c in extra}.values())
        cycles = tuple((reg[name], Chirality[ch.upper()]) for name, _, ch in fib["cycles"])
        L = LefschetzDescriptor(
            g, cycles, reg, fib.get("label", ""), fib.get("target_total_space", ""), fib.get("target_boundary", "")
        )
        return cls(
            source,
            L,
            data["target"],
            PathSpec(tuple((int(i), k) for i, k in data["path"])),
            bool(data["contact"]),
            data["theorem_tag"],
            data.get("collar_note"),
            data.get("preset", ""),
            data.get("normal_bundle", NORMAL_BUNDLE),
            tuple(data.get("notes", STRUCTURAL_NOTES)),
        )


def _target_fibration(spec: TargetSpec, g: int) -> LefschetzDescriptor:
    return preset(spec.preset, g)


def _offending(ob: OpenBookDescriptor, L: LefschetzDescriptor) -> list[str]:
    return sorted({x.curve.name for x in ob.word.letters if _cycle_index(L, x.curve) is None})


def _match(ob: OpenBookDescriptor, spec: TargetSpec) -> tuple[bool, str]:
    try:
        L = _target_fibration(spec, ob.genus)
    except PresetError as exc:
        return False, str(exc)
    bad = _offending(ob, L)
    if bad:
        return False, f"{', '.join(bad)} not among the vanishing cycles of {L.label}"
    return True, f"every curve is a vanishing cycle of {L.label}"


@dataclass(frozen=True)
class TargetMatch:
    target: str
    applicable: bool
    reason: str
    theorem_tag: str
    contact: bool

    def __str__(self) -> str:
        flag = "contact" if self.contact else "smooth"
        mark = "yes" if self.applicable else "no"
        return f"{self.target:<11} {mark:<3} [{self.theorem_tag}, {flag}] {self.reason}"


def target_report(ob: OpenBookDescriptor) -> list[TargetMatch]:
    """Every target, applicable or not, with the reason."""
    out = []
    for tag in TARGET_ORDER:
        spec = TARGETS[tag]
        ok, reason = _match(ob, spec)
        out.append(TargetMatch(tag, ok, reason, spec.theorem_tag, spec.contact))
    return out


def applicable_targets(ob: OpenBookDescriptor) -> list[TargetMatch]:
    return [m for m in target_report(ob) if m.applicable]


def certify(ob: OpenBookDescriptor, target: str, collar: str = "default") -> EmbeddingCertificate:
    """Build a certificate for embedding ``ob`` in ``target``.

    ``collar`` selects the attached contact check: ``"default"`` shares one
    cached report for the bundled circle profile, ``"path"`` computes one for
    the loop path of this word, ``"none"`` attaches nothing.
    """
    spec = resolve_target(target)
    try:
        L = _target_fibration(spec, ob.genus)
    except PresetError as exc:
        raise AlphabetError(spec.tag, sorted({x.curve.name for x in ob.word.letters}), _applicable_tags(ob), str(exc)) from exc
    bad = _offending(ob, L)
    if bad:
        raise AlphabetError(spec.tag, bad, _applicable_tags(ob))
    path = path_spec(L, ob.word)
    note = None
    if spec.contact:
        if collar == "default":
            note = default_collar_note()
        elif collar == "path":
            note = path_collar_note(path, len(L.cycles))
        elif collar != "none":
            raise ValueError(f"unknown collar option {collar!r}")
    return EmbeddingCertificate(ob, L, spec.tag, path, spec.contact, spec.theorem_tag, note, spec.preset)


def _applicable_tags(ob: OpenBookDescriptor) -> list[str]:
    return [m.target for m in applicable_targets(ob)]


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failed(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]

    def lines(self) -> list[str]:
        return [f"{'pass' if ok else 'FAIL'}  {name}: {detail}" for name, ok, detail in self.checks]


def verify(cert: EmbeddingCertificate, recompute_collar: bool = False) -> VerificationReport:
    """Recompute every checkable claim of a certificate."""
    checks: list[tuple[str, bool, str]] = []
    L = cert.target_fibration
    src = cert.source

    try:
        spec = resolve_target(cert.target)
        expected = preset(spec.preset, L.fiber_genus)
        same = spec.preset == cert.preset and len(expected.cycles) == len(L.cycles) and all(
            a.same_class(b) and ea == eb for (a, ea), (b, eb) in zip(expected.cycles, L.cycles)
        )
        checks.append(("target-preset", same, f"fibration {'matches' if same else 'differs from'} {spec.preset}({L.fiber_genus})"))
        tag_ok = cert.theorem_tag == spec.theorem_tag
        checks.append(("theorem-tag", tag_ok, cert.theorem_tag))
    except (ValueError, PresetError) as exc:
        spec = None
        checks.append(("target-preset", False, str(exc)))

    bad = _offending(src, L) if src.genus == L.fiber_genus else ["(genus mismatch)"]
    checks.append(("alphabet", not bad, "all curves are vanishing cycles" if not bad else "offending: " + ", ".join(bad)))

    try:
        replayed = replay_letters(L, cert.path)
        source = [(x.curve, x.sign) for x in src.word.letters]
        mismatch = next(
            (k for k, ((a, sa), (b, sb)) in enumerate(zip(replayed, source)) if not (a.same_class(b) and sa == sb)),
            None,
        )
        if len(replayed) != len(source):
            checks.append(("path-replay", False, f"{len(replayed)} steps for {len(source)} letters"))
        elif mismatch is not None:
            checks.append(("path-replay", False, f"step {mismatch + 1} replays to the wrong twist"))
        else:
            checks.append(("path-replay", True, f"{len(source)} steps reproduce the source word"))
        if src.genus == L.fiber_genus:
            same = _action(replayed, 2 * L.fiber_genus) == word_action(src.word)
            checks.append(("homology-action", same, "replayed and source actions " + ("agree" if same else "differ")))
        else:
            checks.append(("homology-action", False, "genus mismatch"))
    except ValueError as exc:
        checks.append(("path-replay", False, str(exc)))
        checks.append(("homology-action", False, "not computed"))

    if cert.contact:
        n = L.n_achiral
        checks.append(("contact-consistency", n == 0, "all cycles ordinary" if n == 0 else f"{n} achiral cycles"))
        note = cert.collar_note
        if not note:
            checks.append(("collar", False, "contact certificate without a collar report"))
        else:
            ok = bool(note.get("agreement_ok")) and note.get("k_star", 0) >= note.get("margin", 1) > 0
            detail = f"k_star = {note.get('k_star')}, source {note.get('source')}"
            if recompute_collar and ok:
                fresh = default_collar_note() if note.get("source") == "default" else path_collar_note(cert.path, len(L.cycles))
                ok = fresh == note
                detail += ", recomputed " + ("identical" if ok else "different")
            checks.append(("collar", ok, detail))
    else:
        checks.append(("contact-consistency", True, "smooth certificate"))

    if spec is not None:
        try:
            got = boundary_homology(L)
            want = CALIBRATION_TARGETS[spec.preset]
            checks.append(("target-boundary", got == want, f"H1 = {got} (expected {want})"))
        except (KeyError, ValueError) as exc:
            checks.append(("target-boundary", False, str(exc)))
    checks.append(("normal-bundle", cert.normal_bundle == NORMAL_BUNDLE, cert.normal_bundle))
    return VerificationReport(tuple(checks))


def flip_step(cert: EmbeddingCertificate, k: int) -> EmbeddingCertificate:
    """Copy with the loop kind of step ``k`` reversed (for mutation checks)."""
    steps = list(cert.path.steps)
    i, kind = steps[k]
    steps[k] = (i, "c" if kind == "c'" else "c'")
    return replace(cert, path=PathSpec(tuple(steps)))


def target_alphabet(target: str, g: int) -> list[CurveClass]:
    return preset(resolve_target(target).preset, g).curve_set()


def random_open_book(rng, target: str, g: int, max_length: int = 30) -> OpenBookDescriptor:
    names = [c.name for c in target_alphabet(target, g)]
    reg = standard_registry(g)
    n = rng.randint(0, max_length)
    letters = tuple(TwistLetter(reg[rng.choice(names)], rng.choice((1, -1))) for _ in range(n))
    return OpenBookDescriptor(g, TwistWord(letters, reg), f"random over {target}")
