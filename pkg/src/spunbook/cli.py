"""Command-line front end.

Exit codes: 0 success or pass, 1 a check failed, 2 bad usage or manifest.
Manifests named on the command line are looked up as given, then in the
fixture directory (``$SPUNBOOK_FIXTURES`` or the bundled ``fixtures``).
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path
from typing import Sequence

from . import manifest as mf
from .algebra import AbelianGroupPresentation, IntMatrix, cokernel_presentation, invariant_factors, smith_normal_form
from .contactcheck import (
    BINDING_MODELS,
    BUNDLED_PROFILES,
    GridSpec,
    SampledCollarProfile,
    binding_model,
    circle_profile,
    collar_min_k,
    verify_form_positive,
)
from .embedder import (
    TARGET_ORDER,
    AlphabetError,
    EmbeddingCertificate,
    certify,
    target_report,
    verify,
)
from .handle5 import build_s2s3_ledger, build_s5_ledger, verify_ledger
from .lefschetz import PRESET_NAMES, boundary_open_book, parse_preset, preset
from .obstruct import (
    CohomologyElement,
    OddDifferenceError,
    PullbackMap,
    difference_class,
    pullback_condition,
    s2s3_target_constraint,
)
from .openbook import OpenBookDescriptor, first_homology
from .spin import (
    MAX_ORBIT_GENUS,
    NonGenerationCertificate,
    QuadraticForm,
    arf,
    fixed_forms,
    non_generation_certificate,
    orbit_partition,
    replay_certificate,
)
from .surface import CurveRegistry, gamma_name, standard_registry

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FIXTURE_ENV = "SPUNBOOK_FIXTURES"


class UsageError(Exception):
    pass


def fixture_dir() -> Path:
    return Path(os.environ.get(FIXTURE_ENV) or Path(__file__).with_name("fixtures"))


def resolve_manifest(name: str) -> Path:
    p = Path(name)
    if p.exists():
        return p
    for cand in (fixture_dir() / name, fixture_dir() / f"{name}.json"):
        if cand.exists():
            return cand
    raise UsageError(f"manifest {name!r} not found (also looked in {fixture_dir()})")


def load_manifest(name: str, *kinds: str) -> mf.Manifest:
    return mf.expect(mf.load(resolve_manifest(name)), *kinds)


def emit(line: str = "") -> None:
    print(line)


# --------------------------------------------------------------------------
# argument parsing helpers
# --------------------------------------------------------------------------

_LETTER = re.compile(r"^([A-Za-z_]\w*?)(\^-1|\^\+?1|:-1|:\+?1|[+-])?$")


def parse_word(text: str) -> list[tuple[str, int]]:
    """``"gamma1+ gamma2- gamma7"`` or ``"gamma1:1,gamma2^-1"``; bare names are right-handed."""
    pairs = []
    for tok in re.split(r"[,\s]+", text.strip()):
        if not tok:
            continue
        m = _LETTER.match(tok)
        if not m:
            raise UsageError(f"cannot parse twist {tok!r}; write e.g. gamma1+ or gamma2-")
        suffix = m.group(2) or "+"
        pairs.append((m.group(1), -1 if "-" in suffix else 1))
    return pairs


def parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in re.split(r"[,\s]+", text.strip()) if x]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def parse_matrix(text: str) -> IntMatrix:
    rows = [parse_ints(r) for r in text.split(";") if r.strip()]
    if rows and len({len(r) for r in rows}) != 1:
        raise UsageError("matrix rows have different lengths")
    return IntMatrix.from_rows(rows, len(rows[0]) if rows else 0)


def parse_alphabet(reg: CurveRegistry, text: str | None) -> list:
    g = reg.genus
    if text is None:
        odd = gamma_name(2 * g + 1)
        return reg.chain() + ([reg[odd]] if odd in reg else [])
    out = []
    for tok in re.split(r"[,\s]+", text.strip()):
        if not tok:
            continue
        if tok == "chain":
            out += reg.chain()
        elif tok == "odd":
            out.append(reg.gamma(2 * g + 1))
        elif tok == "even":
            out.append(reg.gamma(2 * g + 2))
        else:
            out.append(reg[tok])
    return out


def open_book_from_args(args) -> OpenBookDescriptor:
    if getattr(args, "manifest", None):
        m = load_manifest(args.manifest, "open_book")
        return OpenBookDescriptor.from_json(m.data)
    if args.genus is None or args.word is None:
        raise UsageError("give --manifest, or both --genus and --word")
    return OpenBookDescriptor.from_pairs(args.genus, parse_word(args.word), "command line")


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_snf(args) -> int:
    if args.manifest:
        data = load_manifest(args.manifest, "matrix").data
        m = IntMatrix.from_rows(data["rows"], data.get("cols"))
    elif args.matrix:
        m = parse_matrix(args.matrix)
    else:
        raise UsageError("give --matrix 'a,b;c,d' or --manifest")
    u, d, v = smith_normal_form(m)
    emit("D =")
    emit(str(d))
    if args.transforms:
        emit("U =")
        emit(str(u))
        emit("V =")
        emit(str(v))
    emit(f"invariant factors: {invariant_factors(m)}")
    emit(f"cokernel = {cokernel_presentation(m)}")
    return EXIT_OK


def cmd_h1_openbook(args) -> int:
    if args.preset:
        name, g = parse_preset(args.preset)
        g = args.genus if args.genus is not None else g
        ob = boundary_open_book(preset(name, g))
    else:
        ob = open_book_from_args(args)
    emit(f"H₁ = {first_homology(ob)}")
    return EXIT_OK


def cmd_arf(args) -> int:
    bits = parse_ints(args.form)
    if len(bits) % 2 or any(b not in (0, 1) for b in bits):
        raise UsageError("--form needs an even number of 0/1 values (q(a1), q(b1), ...)")
    emit(f"Arf = {arf(QuadraticForm(len(bits) // 2, tuple(bits)))}")
    return EXIT_OK


def cmd_orbit(args) -> int:
    if args.genus > MAX_ORBIT_GENUS:
        raise UsageError(f"orbit enumeration is capped at genus {MAX_ORBIT_GENUS}")
    reg = standard_registry(args.genus)
    alphabet = parse_alphabet(reg, args.alphabet)
    emit(f"alphabet: {', '.join(c.name for c in alphabet)}")
    parts = orbit_partition(args.genus, alphabet)
    for k, o in enumerate(parts, start=1):
        arfs = sorted({arf(q) for q in o})
        emit(f"orbit {k}: size {len(o)}, Arf {'/'.join(map(str, arfs))}, least form {min(o)}")
    emit(f"{len(parts)} orbits")
    return EXIT_OK


def cmd_fixed_forms(args) -> int:
    reg = standard_registry(args.genus)
    alphabet = parse_alphabet(reg, args.alphabet)
    forms = fixed_forms(alphabet)
    emit(f"alphabet: {', '.join(c.name for c in alphabet)}")
    for q in forms:
        emit(f"{q}  (Arf {arf(q)})")
    emit(f"{len(forms)} fixed forms")
    return EXIT_OK


def cmd_certify_nongeneration(args) -> int:
    reg = standard_registry(args.genus)
    alphabet = parse_alphabet(reg, args.alphabet)
    cert = non_generation_certificate(alphabet)
    if cert is None:
        emit("no spin structure is fixed by every generator; no certificate")
        return EXIT_FAIL
    emit(f"fixed form: {cert.form} (Arf {arf(cert.form)})")
    for name, value, fixed in cert.checks:
        emit(f"  {name}: q = {value}, fixed = {fixed}")
    emit(f"convention: {cert.convention}")
    ok = replay_certificate(cert)
    emit(f"replay: {'pass' if ok else 'FAIL'}")
    if args.out:
        mf.save(mf.Manifest("nongeneration", cert.to_json()), args.out)
        emit(f"written: {args.out}")
    return EXIT_OK if ok else EXIT_FAIL


def _print_cert(cert: EmbeddingCertificate) -> None:
    emit(f"target: {cert.target} ({cert.target_manifold}) via {cert.target_fibration.label}")
    emit(f"theorem tag: {cert.theorem_tag}")
    emit(f"contact: {str(cert.contact).lower()}")
    emit(f"path: {cert.path}")
    if cert.collar_note:
        emit(f"collar: k_star = {cert.collar_note['k_star']:.9g} ({cert.collar_note['source']} profile)")


def cmd_embed(args) -> int:
    ob = open_book_from_args(args)
    try:
        cert = certify(ob, args.target, collar=args.collar)
    except AlphabetError as exc:
        emit(f"cannot certify: {exc}")
        return EXIT_FAIL
    _print_cert(cert)
    report = verify(cert)
    for line in report.lines():
        emit(line)
    if args.out:
        mf.save(mf.Manifest("certificate", cert.to_json()), args.out)
        emit(f"written: {args.out}")
    emit("verdict: " + ("pass" if report.passed else "FAIL"))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify_cert(args) -> int:
    m = load_manifest(args.manifest, "certificate", "nongeneration")
    if m.kind == "nongeneration":
        cert = NonGenerationCertificate.from_json(m.data)
        ok = replay_certificate(cert)
        emit(f"non-generation certificate for {', '.join(c.name for c in cert.alphabet)}: {'pass' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_FAIL
    cert = EmbeddingCertificate.from_json(m.data)
    _print_cert(cert)
    report = verify(cert, recompute_collar=args.recompute_collar)
    for line in report.lines():
        emit(line)
    emit("verdict: " + ("pass" if report.passed else "FAIL"))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_targets(args) -> int:
    ob = open_book_from_args(args)
    report = target_report(ob)
    for m in report:
        emit(str(m))
    if not any(m.applicable for m in report):
        emit("no target fibration contains every curve of this word")
    return EXIT_OK


def cmd_obstruct_chern(args) -> int:
    if args.manifest:
        d = load_manifest(args.manifest, "obstruction").data
        src = AbelianGroupPresentation.from_json(d["source"])
        tgt = AbelianGroupPresentation.from_json(d["target"])
        e = PullbackMap.from_rows(src, tgt, d["matrix"])
        ok = pullback_condition(CohomologyElement(src, d["c1_source"]), e, CohomologyElement(tgt, d["c1_target"]))
        tag = d.get("theorem_tag", "chern-pullback")
        emit(f"[{tag}] e*(c1 of the ambient structure) {'=' if ok else '!='} c1 of the embedded one: {'pass' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_FAIL
    if args.witnesses:
        res = s2s3_target_constraint(parse_ints(args.witnesses))
        emit(f"[s2s3-divisibility] witnesses {list(res.witnesses)}: {res}")
        return EXIT_OK
    if args.difference:
        a, b = args.difference
        try:
            emit(f"[difference-class] d = {difference_class(a, b)}")
        except OddDifferenceError as exc:
            emit(f"[difference-class] {exc}")
            return EXIT_FAIL
        return EXIT_OK
    raise UsageError("give --manifest, --witnesses or --difference")


def _ledger_out(ledger) -> int:
    emit(ledger.render())
    report = verify_ledger(ledger)
    for line in report.lines():
        emit(line)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_ledger_s5(args) -> int:
    g = args.genus
    if args.manifest:
        d = load_manifest(args.manifest, "ledger_request").data
        g = int(d["genus"])
    if g is None:
        raise UsageError("give --genus or --manifest")
    return _ledger_out(build_s5_ledger(g))


def cmd_ledger_s2s3(args) -> int:
    g, o = args.genus, parse_ints(args.o) if args.o else None
    if args.manifest:
        d = load_manifest(args.manifest, "ledger_request").data
        g, o = int(d["genus"]), d.get("o")
    if g is None:
        raise UsageError("give --genus or --manifest")
    o = o if o is not None else [0] * g
    try:
        led = build_s2s3_ledger(g, o)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return _ledger_out(led)


def _profile_from_args(args):
    if args.manifest:
        d = load_manifest(args.manifest, "collar").data
        if "family" in d:
            if d["family"] not in BUNDLED_PROFILES and d["family"] != "circle":
                raise UsageError(f"unknown profile family {d['family']!r}")
            if "b" in d or "c" in d:
                return circle_profile(float(d.get("b", 0.0)), float(d.get("c", 1.0)))
            return BUNDLED_PROFILES[d["family"]]()
        return SampledCollarProfile.from_json(d)
    if args.profile not in BUNDLED_PROFILES:
        raise UsageError(f"unknown profile {args.profile!r}; choose from {', '.join(BUNDLED_PROFILES)}")
    return BUNDLED_PROFILES[args.profile]()


def cmd_contact_check(args) -> int:
    if args.binding:
        report = binding_model(args.binding)
        emit(f"binding model: {args.binding}")
        for line in report.lines():
            emit(line)
        return EXIT_OK if report.passed else EXIT_FAIL
    p = _profile_from_args(args)
    grid = None
    if args.grid:
        ns, nt = parse_ints(args.grid)
        grid = GridSpec(ns, nt)
    report = collar_min_k(p, grid, args.orientation)
    for line in report.lines():
        emit(line)
    ok = report.agreement_ok
    if args.refine:
        fine = collar_min_k(p, report.grid.refined(), args.orientation)
        rel = abs(fine.k_star - report.k_star) / report.k_star
        emit(f"refined grid {fine.grid.n_s} x {fine.grid.n_t}: k_star {fine.k_star:.9g}, relative change {rel:.3e}")
        ok &= fine.agreement_ok
    if args.k is not None:
        pos = verify_form_positive(args.k, p, report.grid, args.orientation)
        for line in pos.lines():
            emit(line)
        ok &= pos.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_paper_verify(args) -> int:
    from .paperverify import run

    emit(f"seed: {args.seed}")
    if args.mutate:
        emit(f"mutations: {', '.join(args.mutate)}")
    only = set(parse_ints(args.only)) if args.only else None
    results = run(args.seed, args.mutate or (), only)
    for r in results:
        emit(r.line())
        if args.verbose or not r.passed:
            for d in r.details:
                emit(f"      {d}")
    failed = sum(not r.passed for r in results)
    emit(f"{len(results) - failed}/{len(results)} criteria passed")
    return EXIT_OK if failed == 0 else EXIT_FAIL


# --------------------------------------------------------------------------


def _add_ob_args(p):
    p.add_argument("--manifest", help="open_book manifest")
    p.add_argument("--genus", type=int)
    p.add_argument("--word", help="twists, e.g. 'gamma1+ gamma2- gamma7+'")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spunbook", description="Open books, spun embeddings and their obstructions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("--matrix", help="rows separated by ';', entries by ','")
    p.add_argument("--manifest")
    p.add_argument("--transforms", action="store_true", help="also print U and V with U M V = D")
    p.set_defaults(fn=cmd_snf)

    p = sub.add_parser("h1-openbook", help="first homology of an open book")
    p.add_argument("--preset", help=f"boundary of a preset fibration ({', '.join(PRESET_NAMES)})")
    _add_ob_args(p)
    p.set_defaults(fn=cmd_h1_openbook)

    p = sub.add_parser("arf", help="Arf invariant of a quadratic form")
    p.add_argument("--form", required=True, help="values on a1,b1,...,ag,bg")
    p.set_defaults(fn=cmd_arf)

    for name, fn, hint in (
        ("orbit", cmd_orbit, "orbits of all forms under an alphabet"),
        ("fixed-forms", cmd_fixed_forms, "forms fixed by every twist of an alphabet"),
        ("certify-nongeneration", cmd_certify_nongeneration, "spin certificate that an alphabet is not generating"),
    ):
        p = sub.add_parser(name, help=hint)
        p.add_argument("--genus", type=int, required=True)
        p.add_argument("--alphabet", help="curve names, or the words chain/odd/even")
        if name == "certify-nongeneration":
            p.add_argument("--out")
        p.set_defaults(fn=fn)

    p = sub.add_parser("embed", help="certify a spun embedding")
    _add_ob_args(p)
    p.add_argument("--target", required=True, choices=list(TARGET_ORDER) + ["S5"])
    p.add_argument("--collar", default="default", choices=("default", "path", "none"))
    p.add_argument("--out", help="write the certificate manifest here")
    p.set_defaults(fn=cmd_embed)

    p = sub.add_parser("verify-cert", help="re-check a certificate manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--recompute-collar", action="store_true")
    p.set_defaults(fn=cmd_verify_cert)

    p = sub.add_parser("targets", help="targets whose fibration contains every curve of the word")
    _add_ob_args(p)
    p.set_defaults(fn=cmd_targets)

    p = sub.add_parser("obstruct-chern", help="Chern class obstruction arithmetic")
    p.add_argument("--manifest", help="obstruction manifest (pullback condition)")
    p.add_argument("--witnesses", help="c1 values that must embed, e.g. '2,4'")
    p.add_argument("--difference", nargs=2, type=int, metavar=("C1_ETA", "C1_ETA_PRIME"))
    p.set_defaults(fn=cmd_obstruct_chern)

    p = sub.add_parser("ledger-s5", help="handle ledger for M in S^5")
    p.add_argument("--genus", type=int)
    p.add_argument("--manifest")
    p.set_defaults(fn=cmd_ledger_s5)

    p = sub.add_parser("ledger-s2s3", help="handle ledger for M in S^2 x S^3")
    p.add_argument("--genus", type=int)
    p.add_argument("--o", help="obstruction integers, one per 2-handle")
    p.add_argument("--manifest")
    p.set_defaults(fn=cmd_ledger_s2s3)

    p = sub.add_parser("contact-check", help="collar and binding contact conditions")
    p.add_argument("--profile", default="circle", help=f"bundled profile ({', '.join(BUNDLED_PROFILES)})")
    p.add_argument("--manifest", help="collar manifest")
    p.add_argument("--grid", help="n_s,n_t")
    p.add_argument("--orientation", type=int, default=1, choices=(1, -1))
    p.add_argument("--k", type=float, help="also test positivity for this k")
    p.add_argument("--refine", action="store_true", help="repeat on the 2x refined grid")
    p.add_argument("--binding", choices=sorted(BINDING_MODELS), help="check a binding model instead")
    p.set_defaults(fn=cmd_contact_check)

    p = sub.add_parser("paper-verify", help="run every acceptance check")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--mutate", action="append", choices=("unset-odd-curve", "flip-spin"))
    p.add_argument("--only", help="criterion numbers, e.g. '1,3'")
    p.add_argument("--verbose", "-v", action="store_true")
    p.set_defaults(fn=cmd_paper_verify)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "seed", 0) is None:
        from .paperverify import DEFAULT_SEED

        args.seed = DEFAULT_SEED
    try:
        return args.fn(args)
    except (UsageError, mf.ManifestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
