"""Command line interface.

Exit codes: 0 success, 2 invalid input or parse error, 3 build failure,
4 a report with status CONTRADICTION.
"""

import argparse
import hashlib
import json
import os
import sys
from pathlib import Path

from . import sfex
from .congruence import CONTRADICTION, pipeline, report
from .errors import MissingCoefficient, ModSingularError, NonIntegralCoordinate
from .intlinalg import matmul
from .symmat import enumerate_classes
from .theta import (
    EvenLattice,
    catalog,
    catalog_names,
    harmonic_theta,
    scalar_theta,
)
from .weylrep import build_rep, parse_weight, rep_matrix, weight_grading

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUILD = 3
EXIT_CONTRADICTION = 4

CACHE_ENV = "MODSINGULAR_CACHE_DIR"
CACHE_VERSION = "1"


class BuildError(Exception):
    pass


def cache_dir():
    root = os.environ.get(CACHE_ENV)
    if root:
        return Path(root)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "modsingular"


def read_gram_file(path):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append(tuple(int(x) for x in line.replace(",", " ").split()))
    return tuple(rows)


def _lattice(args):
    if args.lattice and args.gram_file:
        raise ModSingularError("give either --lattice or --gram-file, not both")
    if args.lattice:
        return catalog(args.lattice)
    if args.gram_file:
        try:
            gram = read_gram_file(args.gram_file)
        except (OSError, ValueError) as exc:
            raise ModSingularError(f"cannot read Gram file: {exc}") from exc
        return EvenLattice(gram, Path(args.gram_file).stem)
    raise ModSingularError("one of --lattice or --gram-file is required")


def _cache_key(L, degree, bound, harmonic):
    payload = json.dumps({"v": CACHE_VERSION, "gram": L.gram, "degree": degree,
                          "bound": bound, "harmonic": harmonic}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:32]


def build_theta_text(L, degree, bound, harmonic=None, use_cache=True):
    path = None
    if use_cache:
        path = cache_dir() / f"{_cache_key(L, degree, bound, harmonic)}.sfex"
        if path.exists():
            return path.read_text(encoding="utf-8")
    try:
        if harmonic:
            F, _ = harmonic_theta(L, degree, harmonic, bound)
        else:
            F = scalar_theta(L, degree, bound)
    except (ModSingularError, ValueError, NonIntegralCoordinate) as exc:
        raise BuildError(str(exc)) from exc
    text = sfex.dumps(F)
    if path is not None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(text, encoding="utf-8")
            tmp.replace(path)
        except OSError:
            pass  # caching is best effort
    return text


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args):
    if not args.input:
        raise ModSingularError("--in is required")
    try:
        F = sfex.read(args.input)
    except OSError as exc:
        raise ModSingularError(f"cannot read {args.input}: {exc}") from exc
    if args.strict:
        missing = [T for T in enumerate_classes(F.n, F.trace_bound) if T not in F.coeffs]
        if missing:
            raise MissingCoefficient(f"{len(missing)} classes inside the bound are missing, e.g. {missing[0]}")
    return F


def _check_pm(args):
    p, m = args.p, args.m
    if p is None:
        raise ModSingularError("--p is required")
    if p < 3 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ModSingularError(f"--p must be an odd prime, got {p}")
    if m < 1:
        raise ModSingularError("--m must be at least 1")
    return p, m


def _report_out(rep, args):
    if args.json:
        text = json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n"
    else:
        text = rep.text()
    _emit(text, args.out)
    return EXIT_CONTRADICTION if rep.status == CONTRADICTION else EXIT_OK


def cmd_theta(args):
    if args.degree < 1:
        raise ModSingularError("--degree must be at least 1")
    if args.bound < 0:
        raise ModSingularError("--bound must be non-negative")
    L = _lattice(args)
    if L.m % 2:
        raise ModSingularError("lattice rank must be even")
    text = build_theta_text(L, args.degree, args.bound, args.harmonic_degree, not args.no_cache)
    _emit(text, args.out)
    records = sum(1 for line in text.splitlines() if line.startswith("T:"))
    nonzero = sum(1 for line in text.splitlines()
                  if line.startswith("T:") and any(int(x) for x in line.split("C:")[1].split()))
    print(f"{L.name or 'lattice'}: degree {args.degree}, bound {args.bound}: "
          f"{records} classes, {nonzero} nonzero coefficients", file=sys.stderr)
    return EXIT_OK


def cmd_report(args):
    F = _load(args)
    p, m = _check_pm(args)
    return _report_out(report(F, p, m), args)


def cmd_pipeline(args):
    F = _load(args)
    p, m = _check_pm(args)
    return _report_out(pipeline(F, p, m, t=args.t), args)


def cmd_rep(args):
    weight = parse_weight(args.weight)
    rep = build_rep(len(weight), weight)
    grading = [(piece.weight, piece.dim) for piece in weight_grading(rep)]
    # integrality and homomorphism on a few fixed unimodular pairs
    samples = [
        ((1, 1), (0, 1)),
        ((0, 1), (1, 0)),
        ((2, 1), (1, 1)),
    ]
    n = rep.n
    checks = []
    for a, b in zip(samples, samples[1:] + samples[:1]):
        U = _embed2(a, n)
        V = _embed2(b, n)
        checks.append(rep_matrix(rep, matmul(U, V)) == matmul(rep_matrix(rep, U), rep_matrix(rep, V)))
    info = {"weight": list(weight), "ell": rep.ell,
            "grading": [{"weight": w, "dim": d} for w, d in grading],
            "homomorphismChecks": checks}
    if args.json:
        text = json.dumps(info, indent=2, sort_keys=True) + "\n"
    else:
        text = (f"weight: {','.join(map(str, weight))}\nell: {rep.ell}\n"
                + "".join(f"grading {w}: {d}\n" for w, d in grading)
                + f"homomorphism checks: {' '.join('ok' if c else 'FAIL' for c in checks)}\n")
    _emit(text, args.out)
    return EXIT_OK if all(checks) else EXIT_BUILD


def _embed2(block, n):
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    if n >= 2:
        rows[0][0], rows[0][1] = block[0]
        rows[1][0], rows[1][1] = block[1]
    else:
        rows[0][0] = 1
    return tuple(tuple(r) for r in rows)


def cmd_catalog(args):
    out = {}
    for name in catalog_names():
        L = catalog(name)
        out[name] = {"rank": L.m, "det": L.det, "level": L.level(), "gram": [list(r) for r in L.gram]}
    if args.json:
        text = json.dumps(out, indent=2, sort_keys=True) + "\n"
    else:
        lines = []
        for name, info in out.items():
            lines.append(f"{name}: rank {info['rank']}, det {info['det']}, level {info['level']}")
            lines.extend("  " + " ".join(f"{x:2d}" for x in row) for row in info["gram"])
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INVALID)


def build_parser():
    parser = _Parser(prog="modsingular", description="Theta series and mod p singularity checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", help="output file (default: stdout)")
        sp.add_argument("--json", action="store_true", help="JSON output")

    sp = sub.add_parser("theta", help="build a theta series and write it as SFEX")
    sp.add_argument("--lattice", help="catalog name: " + ", ".join(catalog_names()))
    sp.add_argument("--gram-file", help="file with an even Gram matrix, one row per line")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True, help="trace bound")
    sp.add_argument("--harmonic-degree", type=int, default=None,
                    help="use an automorphism-invariant harmonic form of this degree")
    sp.add_argument("--no-cache", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_theta)

    for name, func, helptext in (("report", cmd_report, "singularity report"),
                                 ("pipeline", cmd_pipeline, "report plus proof-chain checks")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--in", dest="input", required=True)
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--m", type=int, default=1)
        sp.add_argument("--strict", action="store_true", help="missing classes are an error")
        if name == "pipeline":
            sp.add_argument("--t", type=int, default=None, help="override the twist exponent")
        common(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("rep", help="information on an integral GL(n) representation")
    sp.add_argument("--weight", required=True, help="highest weight, e.g. 2,1,0")
    common(sp)
    sp.set_defaults(func=cmd_rep)

    sp = sub.add_parser("catalog", help="list the built-in lattices")
    common(sp)
    sp.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BuildError as exc:
        print(f"error: build failed: {exc}", file=sys.stderr)
        return EXIT_BUILD
    except ModSingularError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
