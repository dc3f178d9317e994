"""SFEX: a line-oriented text format for truncated Fourier expansions.

    #degree: 2
    #weight: 4,4
    #level: 1,1,1,1
    #modulus: 0
    #traceBound: 2
    T: 0 0 0 C: 1
    T: 0 0 2 C: 240

``T`` lists the upper triangle of ``2T`` row by row, ``C`` the coefficient
vector. Records appear in (trace, row-major key) order.
"""

from .errors import SfexParseError
from .expansion import FourierExpansion, LevelSpec
from .symmat import HalfIntegralMatrix
from .weylrep import build_rep, parse_weight

REQUIRED = ("degree", "weight", "level", "modulus", "traceBound")


def dumps(F):
    lines = [
        f"#degree: {F.n}",
        "#weight: " + ",".join(str(x) for x in F.rep.weight),
        "#level: " + ",".join(str(x) for x in F.level.as_tuple()),
        f"#modulus: {F.modulus}",
        f"#traceBound: {F.trace_bound}",
    ]
    for T, vec in F.items():
        lines.append(f"T: {' '.join(str(x) for x in T.upper())} C: {' '.join(str(x) for x in vec)}")
    return "\n".join(lines) + "\n"


def loads(text):
    header = {}
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if not sep:
                raise SfexParseError(f"line {lineno}: malformed header {raw!r}")
            header[key.strip()] = value.strip()
            continue
        if not line.startswith("T:") or " C:" not in line:
            raise SfexParseError(f"line {lineno}: malformed record {raw!r}")
        tpart, _, cpart = line[2:].partition(" C:")
        try:
            records.append((lineno, [int(x) for x in tpart.split()], [int(x) for x in cpart.split()]))
        except ValueError as exc:
            raise SfexParseError(f"line {lineno}: non-integer entry") from exc

    missing = [k for k in REQUIRED if k not in header]
    if missing:
        raise SfexParseError(f"missing header keys: {', '.join(missing)}")
    try:
        n = int(header["degree"])
        weight = parse_weight(header["weight"])
        level = LevelSpec(*(int(x) for x in header["level"].split(",")))
        modulus = int(header["modulus"])
        bound = int(header["traceBound"])
        rep = build_rep(len(weight), weight)
    except (ValueError, TypeError) as exc:
        raise SfexParseError(f"bad header: {exc}") from exc

    coeffs = {}
    for lineno, tvals, cvals in records:
        try:
            T = HalfIntegralMatrix.from_upper(n, tvals)
        except ValueError as exc:
            raise SfexParseError(f"line {lineno}: {exc}") from exc
        if T in coeffs:
            raise SfexParseError(f"line {lineno}: duplicate class {T}")
        coeffs[T] = tuple(cvals)
    try:
        return FourierExpansion(n, rep, level, modulus, bound, coeffs)
    except ValueError as exc:
        raise SfexParseError(str(exc)) from exc


def write(F, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(F))


def read(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
