"""Command line entry point.

Every command prints one JSON report to stdout.  Exit codes: 0 when the
checks pass, 1 when something was checked and failed, 2 for usage and
parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .category import CategoryError, ModeError, category_from_json, validate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _hash(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def load_input(args) -> tuple:
    """Return (category, input hash) from --fixture or a JSON file."""
    from .fixtures import fixture

    if getattr(args, "fixture", None):
        try:
            cat = fixture(args.fixture)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        return cat, _hash(args.fixture.encode())
    if not getattr(args, "file", None):
        raise UsageError("give a category file or --fixture")
    path = Path(args.file)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        return category_from_json(doc), _hash(raw)
    except CategoryError as exc:
        entries = getattr(exc, "entries", None)
        raise UsageError(f"{path}: {exc}" + (f" {entries}" if entries else "")) from exc


def emit(report: dict, code: int) -> int:
    print(json.dumps(report, sort_keys=True, indent=2, default=str))
    return code


def envelope(command: str, digest: str, **fields) -> dict:
    return {"tool": "lcsc", "version": __version__, "command": command, "input_sha256": digest, **fields}


def cmd_validate(args) -> int:
    cat, digest = load_input(args)
    report = validate(cat)
    return emit(envelope("validate", digest, **report.to_json()), EXIT_OK if report.ok else EXIT_FAIL)


def cmd_analyze(args) -> int:
    from .alignment import is_finitely_aligned
    from .groupoid import build_groupoid, is_hausdorff
    from .spectrum import boundary, spectrum_report

    cat, digest = load_input(args)
    out = envelope("analyze", digest, category=cat.name or None)
    ok = True
    try:
        vertices = [args.vertex] if args.vertex else list(cat.objects)
        if args.spectrum:
            out["spectrum"] = [spectrum_report(cat, v) for v in vertices]
        if args.boundary:
            pts = [x for x in boundary(cat) if x.vertex in vertices]
            by_vertex = {v: sum(1 for x in pts if x.vertex == v) for v in vertices}
            out["boundary"] = {"count": len(pts), "by_vertex": by_vertex, "points": [x.label() for x in pts]}
        if args.groupoid or args.hausdorff:
            g = build_groupoid(cat, args.groupoid or 2)
            out["groupoid"] = {"index": g.index, "germ_count": len(g), "unit_count": len(g.units)}
            if args.hausdorff:
                h = is_hausdorff(g)
                out["groupoid"]["hausdorff"] = h
                ok = ok and h
        if args.align:
            rep = is_finitely_aligned(cat)
            out["alignment"] = {
                "finitely_aligned": rep.aligned,
                "max_minimal_extensions": rep.max_count,
                "pairs": {f"{a} {b}": n for (a, b), n in sorted(rep.pair_counts.items())},
            }
    except ModeError as exc:
        raise UsageError(f"mode error: {exc}") from exc
    return emit(out, EXIT_OK if ok else EXIT_FAIL)


def _model_for(name: str | None):
    import re

    from .groupmodels import LatticeModel, fg_model

    if not name or name.upper().startswith("NSQ"):
        return LatticeModel(2)
    if name.upper().startswith("NAT"):
        return LatticeModel(1)
    m = re.fullmatch(r"FG\((\d+)(?:,\s*\d+)?\)", name.strip(), flags=re.I)
    if m:
        return fg_model(int(m.group(1)))
    raise UsageError(f"no Wiener-Hopf model for {name}")


def _parse_element(model, text: str):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    try:
        return model.decode(text.replace(" ", ""))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_numerics(args) -> int:
    from .operators import OperatorError, separation_test, shift_spectral_bound, wh_membership

    if args.shift_bound is None and args.separation is None and args.wh is None:
        raise UsageError("choose --shift-bound, --separation or --wh")
    request = {k: v for k, v in vars(args).items() if k != "func"}
    digest = _hash(json.dumps(request, sort_keys=True).encode())
    out = envelope("numerics", digest, tolerance=1e-9)
    ok = True
    try:
        if args.shift_bound is not None:
            import math

            value = shift_spectral_bound(args.shift_bound)
            expected = -math.cos(math.pi / args.shift_bound)
            passed = abs(value - expected) <= 1e-9
            out["shift_bound"] = {"p": args.shift_bound, "value": value, "expected": expected, "passed": passed}
            ok = ok and passed
        if args.separation is not None:
            p, m, trials, seed = args.separation
            rep = separation_test(p, m, trials, seed)
            out["separation"] = rep.to_json()
            ok = ok and rep.passed
        if args.wh is not None:
            model = _model_for(args.fixture)
            t = _parse_element(model, args.wh[0])
            bound = int(args.wh[1])
            basis_bound = bound if model.__class__.__name__ == "LatticeModel" else min(bound, 4)
            cert = wh_membership(model, t, bound, basis_bound)
            if cert is None:
                out["wh"] = {"t": model.encode(t), "certificate": None}
                ok = False
            else:
                out["wh"] = cert.to_json(model)
                ok = ok and cert.deviation <= 1e-9
    except OperatorError as exc:
        raise UsageError(str(exc)) from exc
    return emit(out, EXIT_OK if ok else EXIT_FAIL)


def cmd_relations(args) -> int:
    from .operators import boundary_family, check_relations, regular_rep

    cat, digest = load_input(args)
    try:
        family = boundary_family(cat, args.groupoid) if args.family == "boundary" else regular_rep(cat)
    except ModeError as exc:
        raise UsageError(f"mode error: {exc}") from exc
    names = args.relations.split(",") if args.relations else args.mode
    report = check_relations(family, names)
    out = envelope("relations", digest, family=args.family, dimension=family.basis.dim, relations=report.to_json())
    return emit(out, EXIT_OK if report.all_passed else EXIT_FAIL)


def cmd_fixture(args) -> int:
    from .fixtures import fixture

    try:
        cat = fixture(args.name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(json.dumps(cat.to_json(), sort_keys=True, indent=2))
    return EXIT_OK


def cmd_amalgam(args) -> int:
    from .amalgam import AmalgamError, amalgam_cap, amalgamate, brute_cap, is_right_cancellative
    from .fixtures import fixture

    path = Path(args.file)
    try:
        raw = path.read_bytes()
        doc = json.loads(raw)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        comps = []
        for c in doc["components"]:
            if isinstance(c, str) and not c.endswith(".json"):
                comps.append(fixture(c))
            elif isinstance(c, str):
                comps.append(category_from_json(json.loads((path.parent / c).read_text())))
            else:
                comps.append(category_from_json(c))
        cat = amalgamate(comps, doc.get("partition", []), int(doc.get("bound", 2)))
    except (KeyError, TypeError, ValueError, OSError) as exc:
        raise UsageError(f"{path}: {exc}") from exc
    report = validate(cat)
    mismatches = []
    if args.check_cap:
        try:
            for a in cat.morphisms:
                for b in cat.with_range(cat.dst[a]):
                    if amalgam_cap(cat, a, b) != brute_cap(cat, a, b):
                        mismatches.append([a, b])
        except AmalgamError as exc:
            raise UsageError(f"--check-cap: {exc}") from exc
    out = envelope(
        "amalgam",
        _hash(raw),
        objects=list(cat.objects),
        morphism_count=len(cat.morphisms),
        bound=cat.bound,
        validation=report.to_json(),
        right_cancellative=is_right_cancellative(cat),
        cap_mismatches=mismatches if args.check_cap else None,
    )
    ok = report.ok and not mismatches
    return emit(out, EXIT_OK if ok else EXIT_FAIL)


def cmd_fractions(args) -> int:
    from .ore import FractionError, fraction_groupoid, fraction_product, is_right_reversible

    cat, digest = load_input(args)
    verdict = is_right_reversible(cat)
    out = envelope("fractions", digest, right_reversible=verdict.to_json())
    if verdict.status != "counterexample":
        g = fraction_groupoid(cat)
        out["class_count"] = len(g)
        out["representatives"] = [list(g.representative(i)) for i in range(len(g))]
    if args.product:
        try:
            p = tuple(args.product[0].split(","))
            q = tuple(args.product[1].split(","))
            out["product"] = list(fraction_product(cat, p, q))
        except (FractionError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
    return emit(out, EXIT_FAIL if verdict.status == "counterexample" else EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcsc", description="Left cancellative small categories toolkit")
    parser.add_argument("--version", action="version", version=f"lcsc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("file", nargs="?", help="category JSON file")
        p.add_argument("--fixture", help="built-in fixture such as PAR or KG(2)")

    p = sub.add_parser("validate", help="check category axioms and left cancellation")
    with_input(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="spectrum, groupoids, boundary, alignment")
    with_input(p)
    p.add_argument("--spectrum", action="store_true")
    p.add_argument("--groupoid", type=int, choices=(1, 2))
    p.add_argument("--boundary", action="store_true")
    p.add_argument("--hausdorff", action="store_true")
    p.add_argument("--align", action="store_true")
    p.add_argument("--vertex")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("numerics", help="shift bound, separation test, Wiener-Hopf membership")
    p.add_argument("--fixture", help="model for --wh: NSQ (default), NAT or FG(n)")
    p.add_argument("--shift-bound", type=int, metavar="P")
    p.add_argument("--separation", type=int, nargs=4, metavar=("P", "M", "TRIALS", "SEED"))
    p.add_argument("--wh", nargs=2, metavar=("T", "BOUND"))
    p.set_defaults(func=cmd_numerics)

    p = sub.add_parser("relations", help="check operator relations on a finite family")
    with_input(p)
    p.add_argument("--family", choices=("regular", "boundary"), default="regular")
    p.add_argument("--groupoid", type=int, choices=(1, 2), default=2)
    p.add_argument("--mode", default="toeplitz2", choices=sorted(_modes()))
    p.add_argument("--relations", help="comma separated names, e.g. 1,2,3,5'")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("fixture", help="print a built-in fixture as JSON")
    p.add_argument("name")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("amalgam", help="build and check an amalgam from a JSON description")
    p.add_argument("file")
    p.add_argument("--check-cap", action="store_true")
    p.set_defaults(func=cmd_amalgam)

    p = sub.add_parser("fractions", help="right reversibility and fraction classes")
    with_input(p)
    p.add_argument("--product", nargs=2, metavar=("A,B", "C,D"))
    p.set_defaults(func=cmd_fractions)
    return parser


def _modes():
    from .operators import MODES

    return MODES


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lcsc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
