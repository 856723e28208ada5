"""Replay of every acceptance check, with optional deliberate breakage.

``run()`` returns one result per criterion. The mutations exist to show the
suite notices a broken build:

- ``unset-odd-curve`` drops the calibrated ``gamma_{2g+1}`` from the registry;
- ``flip-spin`` tests the twist/form law against the wrong stabilizing value.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable

from .contactcheck import BUNDLED_PROFILES, binding_model, collar_min_k
from .embedder import TARGET_ORDER, certify, flip_step, random_open_book, verify
from .handle5 import build_s2s3_ledger, build_s5_ledger, signed_count, verify_ledger
from .lefschetz import boundary_homology, calibration_report, euler_characteristic, preset
from .mcg import is_symplectic, random_word, word_action
from .obstruct import (
    CohomologyElement,
    H2_FIVE_MANIFOLD,
    OddDifferenceError,
    PullbackMap,
    difference_class,
    pullback_condition,
    s2s3_target_constraint,
)
from .openbook import OpenBookDescriptor, first_homology
from .spin import (
    STABILIZING_VALUE,
    all_forms,
    arf,
    evaluate,
    fixed_forms,
    non_generation_certificate,
    orbit_partition,
    replay_certificate,
    twist_pushforward,
)
from .surface import CurveRegistry, gamma_name, standard_registry

MUTATIONS = ("unset-odd-curve", "flip-spin")
DEFAULT_SEED = 20240611


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: tuple[str, ...] = ()

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2}. {self.title}"


@dataclass
class Context:
    seed: int = DEFAULT_SEED
    mutations: tuple[str, ...] = ()
    registry_for: Callable[[int], CurveRegistry] = field(default=standard_registry)
    stabilizing_value: int = STABILIZING_VALUE

    @classmethod
    def build(cls, seed: int = DEFAULT_SEED, mutations=()) -> Context:
        unknown = set(mutations) - set(MUTATIONS)
        if unknown:
            raise ValueError(f"unknown mutation(s): {', '.join(sorted(unknown))}")
        ctx = cls(seed, tuple(mutations))
        if "unset-odd-curve" in mutations:
            ctx.registry_for = lambda g: standard_registry(g).without(gamma_name(2 * g + 1))
        if "flip-spin" in mutations:
            ctx.stabilizing_value = 1 - STABILIZING_VALUE
        return ctx

    def rng(self, salt: int) -> random.Random:
        return random.Random(self.seed * 1000 + salt)


def _calibration(ctx: Context) -> CriterionResult:
    want = {"E_MINUS_3": 3, "E_MINUS_4": 4, "DISK": 1}
    lines, ok = [], True
    seen: dict[str, set] = {n: set() for n in want}
    for g in (3, 4, 5):
        for name, expected, got, good in calibration_report(g, ctx.registry_for(g)):
            if name not in want:
                continue
            order = got.order if got is not None else None
            seen[name].add(order)
            good = good and order == want[name]
            ok &= good
            lines.append(f"{name}({g}): H1 = {got if got is not None else 'unavailable'} (want |H1| = {want[name]})" + ("" if good else "  <-- calibration failure"))
    ok &= all(len(v) == 1 for v in seen.values())
    return CriterionResult(1, "calibration: |H1| = 3, 4, 1 for E_MINUS_3, E_MINUS_4, DISK at g = 3, 4, 5", ok, tuple(lines))


def _s5_page(ctx: Context) -> CriterionResult:
    lines, ok = [], True
    for g in (3, 4):
        try:
            L = preset("S5_PAGE", g, ctx.registry_for(g))
            chi, h1 = euler_characteristic(L), boundary_homology(L)
            good = chi == 5 and h1.is_trivial()
        except (KeyError, ValueError) as exc:
            chi, h1, good = None, exc, False
        ok &= good
        lines.append(f"S5_PAGE({g}): chi = {chi}, boundary H1 = {h1}")
    return CriterionResult(2, "S5 page: chi = 5 and trivial boundary H1 at g = 3, 4", ok, tuple(lines))


def _spin_obstruction(ctx: Context) -> CriterionResult:
    lines, ok = [], True
    for g in (3, 4):
        reg = ctx.registry_for(g)
        chain = reg.chain()
        try:
            even = chain + [reg.gamma(2 * g + 2)]
            odd = chain + [reg.gamma(2 * g + 1)]
        except KeyError as exc:
            ok = False
            lines.append(f"g = {g}: missing curve {exc}")
            continue
        fe = fixed_forms(even, ctx.stabilizing_value)
        fo = fixed_forms(odd, ctx.stabilizing_value)
        cert = non_generation_certificate(even)
        good = len(fe) == 1 and not fo and cert is not None and replay_certificate(cert) and cert.form == fe[0]
        good &= non_generation_certificate(odd) is None
        ok &= good
        lines.append(f"g = {g}: fixed by chain+gamma{2*g+2}: {[str(q) for q in fe]}; by chain+gamma{2*g+1}: {[str(q) for q in fo]}")
    return CriterionResult(3, "spin obstruction: one fixed form for the even alphabet, none for the odd one", ok, tuple(lines))


def _orbits(ctx: Context) -> CriterionResult:
    lines, ok = [], True
    for g in (1, 2, 3):
        reg = ctx.registry_for(g)
        odd = gamma_name(2 * g + 1)
        alphabet = reg.chain() + ([reg[odd]] if odd in reg else [])
        parts = orbit_partition(g, alphabet)
        sizes = sorted(len(o) for o in parts)
        want = sorted([2 ** (g - 1) * (2**g + 1), 2 ** (g - 1) * (2**g - 1)])
        arfs = [sorted({arf(q) for q in o}) for o in parts]
        good = sizes == want and all(len(a) == 1 for a in arfs) and len(parts) == 2
        ok &= good
        lines.append(f"g = {g}: orbit sizes {sizes} (want {want}), Arf per orbit {arfs}")
    return CriterionResult(4, "orbits: exactly two, of sizes 2^(g-1)(2^g +- 1), split by Arf, g = 1, 2, 3", ok, tuple(lines))


def _fix_iff(ctx: Context) -> CriterionResult:
    lines, ok = [], True
    for g in (1, 2, 3):
        reg = ctx.registry_for(g)
        bad = 0
        total = 0
        for q in all_forms(g):
            for c in reg.curves:
                total += 1
                fixed = twist_pushforward(q, c) == q
                if fixed != (evaluate(q, c) == ctx.stabilizing_value):
                    bad += 1
        ok &= bad == 0
        lines.append(f"g = {g}: {total} (form, curve) pairs, {bad} violations")
    return CriterionResult(5, f"fix-iff: a twist fixes q exactly when q(c) = {ctx.stabilizing_value}", ok, tuple(lines))


def _symplectic(ctx: Context) -> CriterionResult:
    rng = ctx.rng(6)
    bad_sym = 0
    for _ in range(1000):
        g = rng.randint(1, 4)
        w = random_word(rng, ctx.registry_for(g), rng.randint(0, 20))
        bad_sym += not is_symplectic(word_action(w))
    bad_conj = 0
    for _ in range(200):
        g = rng.randint(1, 4)
        reg = ctx.registry_for(g)
        w = random_word(rng, reg, rng.randint(0, 12))
        u = random_word(rng, reg, rng.randint(0, 12))
        a = first_homology(OpenBookDescriptor(g, w))
        b = first_homology(OpenBookDescriptor(g, w.conjugate(u)))
        bad_conj += a != b
    lines = (f"1000 words: {bad_sym} non-symplectic actions", f"200 conjugations: {bad_conj} changed coker(Phi - I)")
    return CriterionResult(6, "symplectic actions and conjugation-invariant homology", bad_sym == 0 and bad_conj == 0, lines)


def _embedding(ctx: Context) -> CriterionResult:
    rng = ctx.rng(7)
    g = 3
    lines, ok = [], True
    for tag in TARGET_ORDER:
        fails = mutants_caught = mutants = 0
        for _ in range(500):
            ob = random_open_book(rng, tag, g)
            try:
                cert = certify(ob, tag)
            except ValueError:
                fails += 1
                continue
            if not verify(cert).passed:
                fails += 1
            if cert.path.steps:
                mutants += 1
                mutants_caught += "path-replay" in verify(flip_step(cert, rng.randrange(len(cert.path)))).failed()
        ok &= fails == 0 and mutants_caught == mutants
        lines.append(f"{tag}: 500 words, {fails} failures, {mutants_caught}/{mutants} flipped loops caught")
    smooth = certify(random_open_book(rng, "S5-smooth", g), "S5-smooth")
    caught = "contact-consistency" in verify(replace(smooth, contact=True)).failed()
    ok &= caught
    lines.append(f"contact flag forced on an achiral target: {'caught' if caught else 'missed'}")
    return CriterionResult(7, "embedding certificates round-trip; mutated certificates fail", ok, tuple(lines))


def _obstruction(ctx: Context) -> CriterionResult:
    Z = H2_FIVE_MANIFOLD
    e = PullbackMap.from_rows(Z, Z, [[1]])
    h = lambda k: CohomologyElement(Z, (k,))
    checks = [
        ("2h pulls back to 2u", pullback_condition(h(2), e, h(2))),
        ("c1(W) = 0 forces c1(M) = 0", not pullback_condition(h(0), e, h(2))),
        ("zero pulls back to zero", pullback_condition(h(0), e, h(0))),
        ("witness 2 gives k = +-1", s2s3_target_constraint([2]).admissible == frozenset({1, -1})),
        ("d(2, 0) = 1", difference_class(2, 0) == 1),
        ("d(-2, 0) = -1", difference_class(-2, 0) == -1),
    ]
    try:
        difference_class(3, 0)
        checks.append(("odd difference rejected", False))
    except OddDifferenceError:
        checks.append(("odd difference rejected", True))
    lines = tuple(f"{'ok' if v else 'FAIL'}: {n}" for n, v in checks)
    return CriterionResult(8, "Chern class obstruction arithmetic", all(v for _, v in checks), lines)


def _ledgers(ctx: Context) -> CriterionResult:
    rng = ctx.rng(9)
    ok = True
    for g in range(0, 11):
        a = build_s5_ledger(g)
        ok &= verify_ledger(a).passed and signed_count(a.entries) == 0
        ok &= [a.by_id()[x].index for x in a.final_residue] == [0, 5]
        b = build_s2s3_ledger(g, [0] * g)
        ok &= verify_ledger(b).passed and [b.by_id()[x].index for x in b.final_residue] == [0, 2, 3, 5]
    bad_k = 0
    for _ in range(100):
        g = rng.randint(0, 10)
        o = [rng.randint(-20, 20) for _ in range(g)]
        led = build_s2s3_ledger(g, o)
        bad_k += not (verify_ledger(led).passed and led.k_values() == [-x for x in o])
    ok &= bad_k == 0
    lines = ("s5 and s2s3 ledgers verified for g = 0..10", f"100 random obstruction vectors: {bad_k} with k != -o")
    return CriterionResult(9, "handle ledgers: residues, signed counts, k_j = -o_j", ok, lines)


REFINEMENT_TOLERANCE = 0.01


def _contact(ctx: Context) -> CriterionResult:
    lines, ok = [], True
    for name, make in BUNDLED_PROFILES.items():
        p = make()
        r = collar_min_k(p)
        r2 = collar_min_k(p, r.grid.refined())
        rel = abs(r2.k_star - r.k_star) / r.k_star
        good = r.agreement_ok and r2.agreement_ok and rel < REFINEMENT_TOLERANCE
        ok &= good
        lines.append(
            f"{name}: k_star {r.k_star:.6g} -> {r2.k_star:.6g} (change {rel:.3%}), "
            f"fd disagreement {r.max_disagreement:.2e} <= {r.tolerance:.2e}: {r.agreement_ok}"
        )
    std, rev = binding_model("standard"), binding_model("reversed")
    ok &= std.passed and not rev.passed
    lines.append(f"binding: h2 = r^2 model {'passes' if std.passed else 'fails'}, reversed model {'fails' if not rev.passed else 'passes'}")
    return CriterionResult(10, "contact condition: closed form vs finite differences, refinement, binding", ok, tuple(lines))


CRITERIA = (
    _calibration,
    _s5_page,
    _spin_obstruction,
    _orbits,
    _fix_iff,
    _symplectic,
    _embedding,
    _obstruction,
    _ledgers,
    _contact,
)


def run(seed: int = DEFAULT_SEED, mutations=(), only: set[int] | None = None) -> list[CriterionResult]:
    ctx = Context.build(seed, mutations)
    out = []
    for k, fn in enumerate(CRITERIA, start=1):
        if only and k not in only:
            continue
        out.append(fn(ctx))
    return out
