"""Command-line front end: text format parsing/emission and subcommands.

Algebra file grammar (line oriented, ``#`` starts a comment):

    dim N
    basis n1 n2 ... nN        (optional basis names)
    [i,j] = c1 * k1 + c2 * k2 ...

with rational coefficients written ``p/q`` and basis references either
1-based indices or declared names.  Bracket lines require i < j; each pair
may be defined at most once.

Exit codes: 0 success / property true, 1 property false, 2 usage or
syntax error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction as Q

from .liealg import (LieAlgebra, validate_jacobi, lower_central_series,
                     upper_central_series, center, nilpotency_class,
                     fingerprint, bch_product)


class FormatError(Exception):
    """Syntax or semantic error in an algebra file, with position info."""

    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


def _parse_rational(tok: str, lineno: int, col: int) -> Q:
    try:
        return Q(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"bad rational {tok!r}", lineno, col)


def parse(text: str) -> LieAlgebra:
    """Parse the algebra text format into a LieAlgebra."""
    dim = None
    names: list[str] | None = None
    table: dict[tuple[int, int], dict[int, Q]] = {}

    def ref(tok: str, lineno: int, col: int) -> int:
        if names is not None and tok in names:
            return names.index(tok) + 1
        if tok.lstrip("-").isdigit():
            k = int(tok)
            if 1 <= k <= dim:
                return k
            raise FormatError(f"basis index {k} out of range", lineno, col)
        raise FormatError(f"unknown basis name {tok!r}", lineno, col)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        if line.startswith("dim"):
            if dim is not None:
                raise FormatError("duplicate dim line", lineno, col)
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise FormatError("expected 'dim N'", lineno, col)
            dim = int(parts[1])
            continue
        if dim is None:
            raise FormatError("'dim N' must come first", lineno, col)
        if line.startswith("basis"):
            if names is not None:
                raise FormatError("duplicate basis line", lineno, col)
            names = line.split()[1:]
            if len(names) != dim or len(set(names)) != dim:
                raise FormatError(f"expected {dim} distinct basis names",
                                  lineno, col)
            continue
        if not line.startswith("["):
            raise FormatError(f"unrecognized line {line!r}", lineno, col)
        head, sep, rhs = line.partition("=")
        if not sep:
            raise FormatError("bracket line needs '='", lineno, col)
        head = head.strip()
        if not (head.startswith("[") and head.endswith("]")):
            raise FormatError("expected '[i,j] = ...'", lineno, col)
        pair = [t.strip() for t in head[1:-1].split(",")]
        if len(pair) != 2:
            raise FormatError("expected two bracket indices", lineno, col)
        i, j = (ref(t, lineno, col) for t in pair)
        if i >= j:
            raise FormatError(f"bracket [{i},{j}] needs i < j (antisymmetry)",
                              lineno, col)
        if (i, j) in table:
            raise FormatError(f"duplicate bracket definition [{i},{j}]",
                              lineno, col)
        entry: dict[int, Q] = {}
        for term in rhs.split("+"):
            term = term.strip()
            if not term:
                raise FormatError("empty term on right-hand side", lineno, col)
            c, star, k = term.partition("*")
            if not star:
                raise FormatError(f"term {term!r} needs 'coeff * basis'",
                                  lineno, col)
            kk = ref(k.strip(), lineno, col)
            cc = _parse_rational(c.strip(), lineno, col)
            entry[kk] = entry.get(kk, Q(0)) + cc
        table[(i, j)] = {k: v for k, v in entry.items() if v != 0}
    if dim is None:
        raise FormatError("missing 'dim N' line", 1)
    return LieAlgebra.from_table(dim, table)


def emit(l: LieAlgebra) -> str:
    """Serialize a LieAlgebra to the text format; parse(emit(l)) == l."""
    lines = [f"dim {l.dim}"]
    for (i, j) in sorted(l.table().keys()):
        entry = l.table()[(i, j)]
        terms = " + ".join(f"{c} * {k}" for k, c in sorted(entry.items())
                           if c != 0)
        if terms:
            lines.append(f"[{i},{j}] = {terms}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_algebra(path: str) -> LieAlgebra:
    return parse(_read_text(path))


def _default_seed() -> int:
    env = os.environ.get("HERMLOR_SEED")
    return int(env) if env else 0


def _parse_vec(s: str, n: int) -> list[Q]:
    parts = [p for p in s.replace(",", " ").split() if p]
    if len(parts) != n:
        raise SystemExit(f"error: expected {n} coordinates, got {len(parts)}")
    return [Q(p) for p in parts]


def _load_plane(args):
    from .grassmann import plane_P, PlanePoint
    if args.abc is not None:
        a, b, c = (Q(x) for x in args.abc)
        return plane_P(a, b, c)
    rows = []
    for raw in _read_text(args.file).splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(tuple(_parse_vec(line, 8)))
    if len(rows) != 2:
        raise SystemExit("error: plane file needs exactly two rows of "
                         "8 rationals")
    return PlanePoint((rows[0], rows[1]))


def _load_int_matrix(path: str) -> list[list[int]]:
    rows = []
    for raw in _read_text(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append([int(t) for t in line.replace(",", " ").split()])
    return rows


def _load_hldata(path: str):
    from .hlspace import HLData
    raw = json.loads(_read_text(path))

    def q_rows(rows):
        return [[Q(str(x)) for x in row] for row in rows]

    def q_row(row):
        return [Q(str(x)) for x in row]

    return HLData.make(
        int(raw["n"]),
        gamma2=q_rows(raw["gamma2"]) if "gamma2" in raw else None,
        gamma3=q_rows(raw["gamma3"]) if "gamma3" in raw else None,
        b2=q_row(raw["b2"]) if "b2" in raw else None,
        b3=q_row(raw["b3"]) if "b3" in raw else None,
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_verify_jacobi(args) -> int:
    l = _load_algebra(args.file)
    bad = validate_jacobi(l)
    for (i, j, k) in bad:
        print(f"violation at ({i},{j},{k})")
    print("ok" if not bad else f"{len(bad)} violations")
    return 0 if not bad else 1


def _cmd_series(args) -> int:
    l = _load_algebra(args.file)
    lcs = [s.dim for s in lower_central_series(l)]
    ucs = [s.dim for s in upper_central_series(l)]
    print("lower central series dims:", " ".join(map(str, lcs)))
    print("upper central series dims:", " ".join(map(str, ucs)))
    print("center dim:", center(l).dim)
    print("nilpotency class:", nilpotency_class(l))
    return 0


def _cmd_fingerprint(args) -> int:
    l = _load_algebra(args.file)
    fp = fingerprint(l, samples=args.samples, seed=args.seed)
    print(fp.as_tuple())
    return 0


def _cmd_identify(args) -> int:
    from .catalog import identify
    l = _load_algebra(args.file)
    res = identify(l, samples=args.samples, seed=args.seed)
    print("method:", res.method)
    for name, params in res.candidates:
        if params:
            print(f"candidate: {name}({', '.join(map(str, params))})")
        else:
            print(f"candidate: {name}")
    return 0 if res.candidates else 1


def _cmd_catalog_verify(args) -> int:
    from .catalog import verify_catalog
    lines = verify_catalog()
    for line in lines:
        print(line)
    bad = sum(1 for line in lines if line.startswith("not ok"))
    print(f"# {len(lines) - bad}/{len(lines)} ok")
    return 0 if bad == 0 else 1


def _cmd_plucker(args) -> int:
    from .grassmann import plucker_embed
    p = _load_plane(args)
    print(" ".join(str(x) for x in plucker_embed(p)))
    return 0


def _cmd_reduce_plane(args) -> int:
    from .grassmann import reduce_to_normal_form
    p = _load_plane(args)
    res = reduce_to_normal_form(p)
    if res.kind == "params":
        a, b, c = res.params
        print(f"a={a} b={b} c={c}")
        return 0
    if res.kind == "rank1":
        print(f"rank1 c={res.c}")
        return 0
    if res.kind == "central":
        print("central")
        return 0
    print(f"not in family: {res.reason}")
    return 1


def _cmd_extension_build(args) -> int:
    from .extensions import catalog_cocycle, central_extension
    b = catalog_cocycle(args.name, Q(args.eps))
    print(emit(central_extension(b.base, b)), end="")
    return 0


def _cmd_cubic_reduce(args) -> int:
    from .qforms import BinaryCubic, reduce_rational_root
    c = BinaryCubic.of(*(Q(x) for x in args.coeffs))
    red = reduce_rational_root(c)
    print("kind:", red.kind)
    if red.e is not None:
        print("e:", red.e)
    if red.g is not None:
        print("g:", red.g)
    if red.minpoly is not None:
        from .exactla import poly_str
        print("minpoly:", poly_str(list(red.minpoly), "y"))
    return 0


def _cmd_minpoly(args) -> int:
    from .exactla import poly_str
    from .qforms import CubicGen, minpoly_combo
    gen = CubicGen(args.form, Q(args.t))
    p = minpoly_combo(Q(args.m), Q(args.n), Q(args.r), gen)
    print(poly_str(p, "y"))
    return 0


def _cmd_gamma_iso(args) -> int:
    from .qforms import GammaAC, gamma_iso
    a1, a2 = _load_int_matrix(args.file1), _load_int_matrix(args.file2)
    g1 = GammaAC(len(a1), tuple(map(tuple, a1)))
    g2 = GammaAC(len(a2), tuple(map(tuple, a2)))
    res = gamma_iso(g1, g2, search_bound=args.bound)
    print({True: "isomorphic", False: "not isomorphic",
           None: "inconclusive"}[res])
    return 0 if res else 1


def _cmd_gamma_commensurable(args) -> int:
    from .qforms import GammaAC, gamma_commensurable
    a1, a2 = _load_int_matrix(args.file1), _load_int_matrix(args.file2)
    g1 = GammaAC(len(a1), tuple(map(tuple, a1)))
    g2 = GammaAC(len(a2), tuple(map(tuple, a2)))
    res = gamma_commensurable(g1, g2, rmax=args.rmax)
    print("commensurable" if res else "not commensurable (up to the "
          "searched powers)")
    return 0 if res else 1


def _cmd_hl_validate(args) -> int:
    from .hlspace import validate_hl
    d = _load_hldata(args.file)
    conds = validate_hl(d)
    for key, val in sorted(conds.items()):
        print(f"{key}: {'ok' if val else 'FAIL'}")
    return 0 if all(conds.values()) else 1


def _cmd_hl_build(args) -> int:
    from .hlspace import validate_hl, build_algebra
    d = _load_hldata(args.file)
    conds = validate_hl(d)
    if not all(conds.values()):
        bad = ", ".join(k for k, v in sorted(conds.items()) if not v)
        print(f"not admissible: {bad}", file=sys.stderr)
        return 1
    print(emit(build_algebra(d)), end="")
    return 0


def _cmd_bch(args) -> int:
    l = _load_algebra(args.file)
    x = _parse_vec(args.x, l.dim)
    y = _parse_vec(args.y, l.dim)
    print(" ".join(str(c) for c in bch_product(l, x, y)))
    return 0


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hermlor",
        description="Exact-arithmetic nilpotent Lie algebra toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(fn=fn)
        return p

    def sampling(p):
        p.add_argument("--seed", type=int, default=_default_seed())
        p.add_argument("--samples", type=int, default=64)

    p = add("verify-jacobi", _cmd_verify_jacobi,
            "check the Jacobi identity on an algebra file")
    p.add_argument("file")

    p = add("series", _cmd_series,
            "print central series dimensions and nilpotency class")
    p.add_argument("file")

    p = add("fingerprint", _cmd_fingerprint,
            "print the isomorphism-invariant fingerprint")
    p.add_argument("file")
    sampling(p)

    p = add("identify", _cmd_identify,
            "match an algebra against the named catalog")
    p.add_argument("file")
    sampling(p)

    add("catalog-verify", _cmd_catalog_verify,
        "run the full catalog self-verification report")

    for name, fn, help_text in (
            ("plucker", _cmd_plucker, "print Plucker coordinates of a plane"),
            ("reduce-plane", _cmd_reduce_plane,
             "reduce a plane in Gr(2, sl3) to its orbit normal form")):
        p = add(name, fn, help_text)
        p.add_argument("file", nargs="?", default="-")
        p.add_argument("--abc", nargs=3, metavar=("A", "B", "C"),
                       help="use the standard plane P(a,b,c)")

    p = add("extension-build", _cmd_extension_build,
            "build a catalog algebra as a central extension")
    p.add_argument("name")
    p.add_argument("--eps", default="1")

    p = add("cubic-reduce", _cmd_cubic_reduce,
            "reduce a binary cubic with a rational root")
    p.add_argument("coeffs", nargs=4, metavar=("E", "F", "G", "H"))

    p = add("minpoly", _cmd_minpoly,
            "minimal polynomial of m*theta^2 + n*theta + r")
    p.add_argument("--form", type=int, required=True, choices=(1, 2))
    p.add_argument("--t", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--r", default="0")

    p = add("gamma-iso", _cmd_gamma_iso,
            "test Gamma(2n+2, A) isomorphism from two matrix files")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--bound", type=int, default=2)

    p = add("gamma-commensurable", _cmd_gamma_commensurable,
            "test abstract commensurability of Gamma(2n+2, A) groups")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--rmax", type=int, default=6)

    p = add("hl-validate", _cmd_hl_validate,
            "check admissibility conditions of a JSON HL datum")
    p.add_argument("file")

    p = add("hl-build", _cmd_hl_build,
            "build the algebra of an admissible JSON HL datum")
    p.add_argument("file")

    p = add("bch", _cmd_bch, "Baker-Campbell-Hausdorff product of two vectors")
    p.add_argument("file")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except FormatError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
