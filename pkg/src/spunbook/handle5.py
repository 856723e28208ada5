"""Handle ledgers for embedding a closed 3-manifold in S^5 and S^2 x S^3.

Start from a Heegaard-type decomposition ``h0, h1_j, h2_j, h3`` of ``M`` and
thicken to ``M x D^2``. Every 1-handle is cancelled by a new 2-handle, every
2-handle by a new 3-handle, and ``H3`` by a 4-handle after a 2/3 pair is
introduced. A final 5-handle closes up to ``S^5``. For ``S^2 x S^3`` one
extra 2-handle survives, the 3-handles that cancel ``H2_j`` also wrap
``k_j`` times over it, and a last 3-handle is added before the 5-handle.

The ledgers record the combinatorics only; isotopies are provenance notes.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

OBSTRUCTION_GROUP = "pi_2(SO(5)/U(2)) = Z"

EXPECTED = {
    # residue indices and Euler characteristic of the closed target
    "s5": ((0, 5), 0),
    "s2s3": ((0, 2, 3, 5), 0),
}


@dataclass(frozen=True)
class HandleRecord:
    id: str
    index: int
    step: str
    attaches_along: str
    framing: int | None = None
    k: int | None = None
    o: int | None = None

    def __post_init__(self):
        if not 0 <= self.index <= 5:
            raise ValueError(f"handle index {self.index} outside 0..5")


@dataclass(frozen=True)
class HandleLedger:
    kind: str
    genus: int
    entries: tuple[HandleRecord, ...]
    cancellations: tuple[tuple[str, str], ...]
    final_residue: tuple[str, ...]
    obstruction_group: str = field(default=OBSTRUCTION_GROUP)

    def by_id(self) -> dict[str, HandleRecord]:
        return {e.id: e for e in self.entries}

    def k_values(self) -> list[int]:
        return [e.k for e in self.entries if e.k is not None]

    def render(self) -> str:
        """Fixed-width table; identical input gives identical text."""
        head = f"{'id':<10} {'idx':>3}  {'step':<8} {'framing':>7} {'k':>5} {'o':>5}  attaches along"
        lines = [f"# {self.kind} ledger, genus {self.genus}; obstruction group {self.obstruction_group}", head]
        fmt = lambda v: "-" if v is None else str(v)
        for e in self.entries:
            lines.append(
                f"{e.id:<10} {e.index:>3}  {e.step:<8} {fmt(e.framing):>7} {fmt(e.k):>5} {fmt(e.o):>5}  {e.attaches_along}"
            )
        lines.append("cancellations: " + ", ".join(f"{a}/{b}" for a, b in self.cancellations))
        lines.append("residue: " + ", ".join(self.final_residue))
        return "\n".join(lines)


def _common_prefix(g: int) -> list[HandleRecord]:
    out = [HandleRecord("H0", 0, "I", "thickened 0-handle of M")]
    out += [HandleRecord(f"H1_{j}", 1, "I", f"h1_{j} x D^2") for j in range(1, g + 1)]
    out += [HandleRecord(f"H2_{j}", 2, "I", f"h2_{j} x D^2", framing=0) for j in range(1, g + 1)]
    out.append(HandleRecord("H3", 3, "I", "h3 x D^2"))
    out += [
        HandleRecord(f"C2_{j}", 2, "II", f"curve dual to h1_{j}, pushed to M x {{theta}}", framing=0)
        for j in range(1, g + 1)
    ]
    return out


def _step_iv() -> list[HandleRecord]:
    return [
        HandleRecord("IV-2", 2, "IV", "meridian of the belt sphere of H3", framing=0),
        HandleRecord("IV-3", 3, "IV", "sphere cancelling IV-2"),
        HandleRecord("H4", 4, "IV", "cancels H3 once its attaching sphere is unknotted (light bulb)"),
    ]


def _pairs(g: int) -> list[tuple[str, str]]:
    pairs = [(f"H1_{j}", f"C2_{j}") for j in range(1, g + 1)]
    pairs += [(f"H2_{j}", f"T3_{j}") for j in range(1, g + 1)]
    pairs += [("IV-2", "IV-3"), ("H3", "H4")]
    return pairs


def _residue(entries: Sequence[HandleRecord], pairs: Sequence[tuple[str, str]]) -> tuple[str, ...]:
    gone = {x for p in pairs for x in p}
    return tuple(e.id for e in entries if e.id not in gone)


def build_s5_ledger(g: int) -> HandleLedger:
    if g < 0:
        raise ValueError("genus must be non-negative")
    entries = _common_prefix(g)
    entries += [
        HandleRecord(f"T3_{j}", 3, "III", f"sphere S^2 x {{p}} dual to the belt of H2_{j}") for j in range(1, g + 1)
    ]
    entries += _step_iv()
    entries.append(HandleRecord("H5", 5, "IV", "closes up to S^5"))
    pairs = _pairs(g)
    return HandleLedger("s5", g, tuple(entries), tuple(pairs), _residue(entries, pairs))


def build_s2s3_ledger(g: int, o: Sequence[int]) -> HandleLedger:
    """``o[j]`` is the obstruction carried by the attaching sphere of ``T3_j``.

    Each ``T3_j`` wraps ``k_j = -o_j`` times over the extra 2-handle so the
    total over every attaching sphere vanishes.
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    if len(o) != g:
        raise ValueError(f"need {g} obstruction integers, got {len(o)}")
    extra = f"H2_{g + 1}"
    entries = _common_prefix(g)
    entries.append(HandleRecord(extra, 2, "III'", "circle in M x {theta'} inside a small ball", framing=0))
    entries += [
        HandleRecord(
            f"T3_{j}", 3, "III'", f"dual sphere of H2_{j} tubed to {abs(oj)} parallel spheres over {extra}",
            k=-int(oj), o=int(oj),
        )
        for j, oj in enumerate(o, start=1)
    ]
    entries += _step_iv()
    entries.append(HandleRecord("H3_f", 3, "IV'", f"boundary of the co-core of {extra}"))
    entries.append(HandleRecord("H5", 5, "IV'", "closes up to S^2 x S^3"))
    pairs = _pairs(g)
    return HandleLedger("s2s3", g, tuple(entries), tuple(pairs), _residue(entries, pairs))


@dataclass(frozen=True)
class LedgerReport:
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failed(self) -> list[str]:
        return [n for n, ok, _ in self.checks if not ok]

    def lines(self) -> list[str]:
        return [f"{'pass' if ok else 'FAIL'}  {n}: {d}" for n, ok, d in self.checks]


def signed_count(records: Sequence[HandleRecord]) -> int:
    return sum((-1) ** r.index for r in records)


def verify_ledger(ledger: HandleLedger) -> LedgerReport:
    checks = []
    ids = [e.id for e in ledger.entries]
    checks.append(("unique-ids", len(ids) == len(set(ids)), f"{len(ids)} entries"))
    table = ledger.by_id()

    problems = []
    used: set[str] = set()
    for a, b in ledger.cancellations:
        for x in (a, b):
            if x not in table:
                problems.append(f"unknown id {x}")
            elif x in used:
                problems.append(f"{x} cancelled twice")
            used.add(x)
        if a in table and b in table and abs(table[a].index - table[b].index) != 1:
            problems.append(f"{a}/{b} has indices {table[a].index}/{table[b].index}")
    checks.append(("pairing", not problems, "; ".join(problems) or f"{len(ledger.cancellations)} valid pairs"))

    residue = _residue(ledger.entries, ledger.cancellations)
    checks.append((
        "residue",
        residue == tuple(ledger.final_residue),
        f"entries minus cancelled = {{{', '.join(residue)}}}",
    ))

    want_idx, chi = EXPECTED.get(ledger.kind, (None, None))
    left = [table[x] for x in ledger.final_residue if x in table]
    got_idx = tuple(sorted(r.index for r in left))
    checks.append(("residue-shape", got_idx == want_idx, f"residue indices {got_idx}, expected {want_idx}"))

    total, rest = signed_count(ledger.entries), signed_count(left)
    checks.append((
        "signed-count",
        total == chi and rest == chi,
        f"full ledger {total}, residue {rest}, Euler characteristic {chi}",
    ))

    if ledger.kind == "s2s3":
        spheres = [e for e in ledger.entries if e.step == "III'" and e.index == 3]
        bad = [e.id for e in spheres if e.k is None or e.o is None or e.k + e.o != 0]
        ok = not bad and len(spheres) == ledger.genus
        detail = "o_j + k_j = 0 on every sphere" if ok else "nonzero total on " + (", ".join(bad) or "missing spheres")
        checks.append(("obstruction", ok, detail))
    return LedgerReport(tuple(checks))


def perturb_k(ledger: HandleLedger, j: int, delta: int = 1) -> HandleLedger:
    """Copy with ``k_j`` shifted (for mutation checks)."""
    entries = tuple(
        replace(e, k=e.k + delta) if e.id == f"T3_{j}" and e.k is not None else e for e in ledger.entries
    )
    return replace(ledger, entries=entries)
