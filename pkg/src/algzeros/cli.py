"""Command-line interface.

Exit codes: 0 definite answer, 2 inconclusive, 1 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import worked_example
from .algebra import (
    AlgebraError, Subspace, classify, complex_matrix_as_real, hermitian_subspace, make_algebra, matrix_algebra,
)
from .certify import NondegenerateComplex, NondegenerateReal, NoRealZero, certify_no_real_zero, certify_nondegenerate
from .parser import ParseError, parse_map
from .polymap import decompose
from .scalarize import ContainmentError, ScalarizeError, scalarize
from .solve import HomotopyConfig, SolveConfig, find_common_zero, mapping_degree_estimate, theorem_verdicts

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class UsageError(Exception):
    pass


def load_algebra(spec: str):
    m = re.fullmatch(r"(c?)mat(\d+)(-real)?", spec)
    if m:
        size = int(m.group(2))
        if m.group(3):
            if not m.group(1):
                raise UsageError("-real suffix only applies to complex matrices (cmatN-real)")
            return complex_matrix_as_real(size)
        return matrix_algebra(size, "complex" if m.group(1) else "real")
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            return make_algebra(json.load(fh))
    return make_algebra(spec)


def load_text(arg: str) -> str:
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return fh.read()
    return arg


def load_subspace(alg, spec: str | None) -> Subspace:
    if spec is None or spec == "full":
        return Subspace.full(alg)
    if spec == "hermitian":
        m = re.fullmatch(r"cmat(\d+)-real", alg.name)
        if not m:
            raise UsageError("the hermitian subspace needs --algebra cmatN-real")
        return hermitian_subspace(int(m.group(1)))
    return Subspace.span(alg, [s.strip() for s in spec.split(",")])


def _maps(args):
    alg = load_algebra(args.algebra)
    text = load_text(args.map)
    chunks = [c for c in text.split(";") if c.strip()]
    maps = [parse_map(c, alg, args.nvars) for c in chunks]
    H = load_subspace(alg, args.subspace)
    return alg, maps, H


def _config(args) -> SolveConfig:
    tol = getattr(args, "tol", None)
    kw = {"seed": args.seed}
    if tol is not None:
        kw["tol_residual"] = tol
    return SolveConfig(homotopy=HomotopyConfig(), **kw)


def _emit(args, result: dict, lines: list[str], code: int) -> int:
    if args.json:
        print(json.dumps({**result, "exit_code": code}, indent=2, sort_keys=True, default=str))
    else:
        print("\n".join(lines))
    return code


def _echo(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func",)}


# commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    alg, maps, H = _maps(args)
    cfg = _config(args)
    lines, per_map = [], []
    for i, p in enumerate(maps):
        dec = decompose(p)
        comps = {str(d): str(c) for d, c in dec.components.items()}
        lead = dec.leading_form.merged()
        per_map.append({"degree": dec.semantic_degree, "components": comps, "leading_monomials": len(lead.terms)})
        lines.append(f"map {i + 1}: degree {dec.semantic_degree}")
        for d, c in dec.components.items():
            lines.append(f"  degree {d}: {c}")
        lines.append(f"  leading form: {len(lead.terms)} monomial(s)")
    if any(m["degree"] == "zero-map" for m in per_map):
        return _emit(args, {"command": _echo(args), "maps": per_map, "certificate": None},
                     lines + ["zero map: nothing to certify"], EXIT_INCONCLUSIVE)
    cert = certify_nondegenerate(maps, H, seed=cfg.seed)
    verdicts = theorem_verdicts(maps, H, H, cfg, certificate=cert)
    lines.append(f"leading forms: {cert.kind}")
    for k, v in cert.to_dict().items():
        if k != "kind":
            lines.append(f"  {k}: {v}")
    lines.append("existence results:")
    for k, v in verdicts.items():
        lines.append(f"  {k}: {'applies' if v['applies'] else 'no'} ({v['reason']})")
    code = EXIT_INCONCLUSIVE if cert.kind == "Inconclusive" else EXIT_OK
    return _emit(args, {"command": _echo(args), "maps": per_map, "certificate": cert.to_dict(), "verdicts": verdicts},
                 lines, code)


def cmd_solve(args) -> int:
    alg, maps, H = _maps(args)
    report = find_common_zero(maps, H, H, _config(args), method=args.method)
    lines = [f"method: {report.method}", f"path/start status: {report.status_counts()}"]
    if report.bezout_count is not None:
        lines.append(f"Bezout count: {report.bezout_count}")
    for z in report.zeros[: args.show]:
        tag = {True: ", isolated", False: ", on a family"}.get(z.isolated, "")
        lines.append("zero: " + ", ".join(str(e) for e in z.elements) + f"  (residual {z.residual:.3g}{tag})")
    if len(report.zeros) > args.show:
        lines.append(f"... {len(report.zeros) - args.show} more")
    if not report.zeros:
        lines.append("no zero found (this is not a proof of nonexistence)")
    lines.extend(f"note: {n}" for n in report.notes)
    for k, v in report.verdicts.items():
        lines.append(f"{k}: {'applies' if v['applies'] else 'no'} ({v['reason']})")
    code = EXIT_OK if report.zeros else EXIT_INCONCLUSIVE
    return _emit(args, {"command": _echo(args), "report": report.to_dict()}, lines, code)


def cmd_certify(args) -> int:
    alg, maps, H = _maps(args)
    if not all(p.is_exact() for p in maps):
        raise UsageError("certification needs exact coefficients")
    sys_ = scalarize(maps, H, H)
    names = sys_.atlas.names
    if args.real:
        cert = certify_no_real_zero(sys_)
        ok = isinstance(cert, NoRealZero)
    else:
        cert = certify_nondegenerate(maps, H, seed=args.seed)
        ok = isinstance(cert, (NondegenerateComplex, NondegenerateReal)) or cert.kind == "DegenerateWitness"
    d = cert.to_dict(names)
    lines = [cert.kind] + [f"  {k}: {v}" for k, v in d.items() if k != "kind"]
    return _emit(args, {"command": _echo(args), "certificate": d}, lines, EXIT_OK if ok else EXIT_INCONCLUSIVE)


def cmd_paper_example(args) -> int:
    checks = worked_example.run_all()
    lines = [f"({i}) {'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for i, c in enumerate(checks, 1)]
    result = {"command": _echo(args), "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks]}
    return _emit(args, result, lines, EXIT_OK if all(c.passed for c in checks) else EXIT_ERROR)


def cmd_degree(args) -> int:
    alg, maps, H = _maps(args)
    forms = [decompose(p).leading_form for p in maps]
    est = mapping_degree_estimate(forms, H, _config(args))
    lines = [f"degree estimate: {est.value}", f"real preimages: {est.preimages} signs {est.signs}"]
    lines.extend(f"note: {n}" for n in est.notes)
    low = any("low confidence" in n for n in est.notes)
    return _emit(args, {"command": _echo(args), "estimate": est.to_dict()}, lines, EXIT_INCONCLUSIVE if low else EXIT_OK)


def cmd_algebra_info(args) -> int:
    alg = load_algebra(args.name)
    cls = classify(alg)
    info = {
        "name": alg.name, "dim": alg.dim, "field": alg.field, "labels": list(alg.labels),
        "unit": alg.unit is not None, "involution": alg.involution is not None,
        "composition_norm": alg.has_composition_norm, **cls,
    }
    lines = [f"{k}: {v}" for k, v in info.items()]
    return _emit(args, {"command": _echo(args), "algebra": info}, lines, EXIT_OK)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="algzeros", description="Zeros of polynomial maps over finite-dimensional algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, solver=False):
        p.add_argument("--algebra", required=True, help="builtin name, matN, cmatN, cmatN-real, or a JSON file")
        p.add_argument("--map", required=True, help="map text, or @file; separate several maps with ';'")
        p.add_argument("--nvars", type=int, default=1)
        p.add_argument("--subspace", default=None, help="full, hermitian, or comma-separated basis labels")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", action="store_true")
        if solver:
            p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("check", help="degree, components, non-degeneracy and existence verdicts")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="search for a common zero numerically")
    common(p, solver=True)
    p.add_argument("--method", choices=["auto", "newton", "homotopy"], default="auto")
    p.add_argument("--show", type=int, default=5, help="number of zeros printed in text mode")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("certify", help="exact certificates")
    common(p)
    p.add_argument("--real", action="store_true", help="certify that no real zero exists")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("paper-example", help="reproduce the built-in worked examples")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_paper_example)

    p = sub.add_parser("degree-estimate", help="topological degree of the leading forms")
    common(p, solver=True)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("algebra", help="algebra utilities")
    asub = p.add_subparsers(dest="algebra_command", required=True)
    q = asub.add_parser("info")
    q.add_argument("name")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_algebra_info)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParseError, AlgebraError, ContainmentError, ScalarizeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
