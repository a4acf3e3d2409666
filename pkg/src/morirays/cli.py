"""Command-line front end.

Subcommands: `matrix` prints generator and composite matrices, `orbit` runs
shape-matrix orbits, `eigenray` computes limit rays with their spectral data,
`verify` sweeps good-ray certificates and De Fernex signs, `pair` intersects
a named ray with K, F, or itself.

Exit codes: 0 success, 1 verification failure, 2 usage error.  Identical
invocations produce byte-identical output; all decimals are renderings of
exact values and marked as display only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import families, verify
from .cremona import (
    CharMatrix,
    bertini_map,
    double_jonquieres_geiser,
    double_jonquieres_map,
    geiser_map,
    jonquieres_map,
    jonquieres_sturm,
    quadratic_map,
    sturm_map,
)
from .dynamics import SpectrumError, certify_convergence, eigen, iterate
from .quadfield import MixedRadicandError

# ray spec names accepted by `pair` and `eigenray`, mapped to family tags
RAY_ALIASES = {
    "W_odd": "odd",
    "W_even": "even",
    "Wplus_even": "even_plus",
    "Wplus_odd": "odd_plus",
    "Wplus_sq4": "sq4",
    "Wplus_sq2": "sq2",
}

# `verify` works on the good families; plus-tags name the same sweeps
GOOD_ALIASES = {"even_plus": "even", "odd_plus": "odd"}

# matrix family whose spectrum governs each derived limit ray
MATRIX_SOURCE = {"even_plus": "odd", "odd_plus": "even", "sq4": "even", "sq2": "even"}


class UsageError(Exception):
    pass


def _parse_range(text: str) -> tuple[int, int]:
    """'a..b' inclusive, or a single integer."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected N or A..B") from None
    if a > b:
        raise UsageError(f"empty range {text!r}")
    return a, b


def _resolve_out(path: str | None) -> str | None:
    if path is None or os.path.isabs(path):
        return path
    base = os.environ.get("MORIRAYS_OUTDIR")
    return os.path.join(base, path) if base else path


def _deliver(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- matrix -------------------------------------------------------------------------


def _build_matrix(kind: str, n: int | None) -> CharMatrix:
    fixed = {
        "Q": lambda: quadratic_map((1, 2, 3), 3),
        "S": lambda: sturm_map(tuple(range(1, 7)), 6),
        "G": lambda: geiser_map(tuple(range(1, 8)), 7),
        "B": lambda: bertini_map(tuple(range(1, 9)), 8),
    }
    if kind in fixed:
        if n is not None:
            raise UsageError(f"--n does not apply to kind {kind}")
        return fixed[kind]()
    if n is None:
        raise UsageError(f"kind {kind} needs --n")
    if n < 1:
        raise UsageError(f"--n must be >= 1, got {n}")
    if kind == "J":
        return jonquieres_map(n, tuple(range(1, 2 * n + 2)), 2 * n + 1)
    if kind == "C":
        return double_jonquieres_map(n, tuple(range(1, 2 * n + 3)), 2 * n + 2)
    if kind == "JS":
        return jonquieres_sturm(n)
    if kind == "CG":
        return double_jonquieres_geiser(n)
    raise UsageError(f"unknown matrix kind {kind!r}")


def cmd_matrix(args) -> int:
    m = _build_matrix(args.kind, args.n)
    if not m.is_valid():
        raise UsageError(f"matrix {args.kind} failed validation")
    net = m.homaloidal_net()
    expected = None
    if args.kind == "JS" and args.n is not None:
        expected = families.js_homaloidal(args.n).expand()
    elif args.kind == "CG" and args.n is not None:
        expected = families.cg_homaloidal(args.n).expand()
    homaloidal_ok = expected is None or net == expected

    if args.format == "json":
        payload = {"kind": args.kind, "n": args.n, "matrix": m.to_json()}
        if args.check_homaloidal:
            payload["homaloidal"] = net.to_json()
            payload["homaloidal_ok"] = homaloidal_ok
        text = _json_text(payload)
    elif args.format == "csv":
        text = _csv_text([f"c{j}" for j in range(m.s + 1)], [list(r) for r in m.rows])
    else:
        lines = [m.pretty()]
        if args.check_homaloidal:
            lines.append(f"homaloidal net: {net.pretty()}")
            if expected is not None:
                lines.append(f"matches closed form: {homaloidal_ok}")
        text = "\n".join(lines) + "\n"
    _deliver(text, _resolve_out(args.out))
    return 0 if (homaloidal_ok or not args.check_homaloidal) else 1


# -- orbit --------------------------------------------------------------------------


def cmd_orbit(args) -> int:
    if args.family not in ("odd", "even"):
        raise UsageError("orbit needs --family odd or even (the matrix families)")
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    if args.k < 0:
        raise UsageError(f"--k must be >= 0, got {args.k}")
    seed = families.PENCIL_SEED
    if args.seed:
        try:
            seed = tuple(int(x) for x in args.seed.split(","))
        except ValueError:
            raise UsageError(f"bad seed {args.seed!r}; expected comma-separated integers") from None
        if len(seed) != 4:
            raise UsageError("seed needs exactly 4 entries: d,a,b,c")
    orbit = iterate(families.shape_matrix(args.family, args.n), seed, args.k)

    if args.format == "json":
        text = _json_text({"family": args.family, "n": args.n, "orbit": orbit.to_json()})
    elif args.format == "csv":
        text = _csv_text(["k", "d", "a", "b", "c"], [[k, *t] for k, t in enumerate(orbit.terms)])
    else:
        width = max(len(str(x)) for t in orbit.terms for x in t)
        lines = [f"k={k}  " + "  ".join(str(x).rjust(width) for x in t) for k, t in enumerate(orbit.terms)]
        text = "\n".join(lines) + "\n"
    _deliver(text, _resolve_out(args.out))
    return 0


# -- eigenray -----------------------------------------------------------------------


def _family_tag(name: str) -> str:
    tag = RAY_ALIASES.get(name, name)
    if tag not in families.WONDERFUL_TAGS:
        raise UsageError(f"unknown ray family {name!r}; expected one of "
                         f"{', '.join(families.WONDERFUL_TAGS)} or {', '.join(RAY_ALIASES)}")
    return tag


def cmd_eigenray(args) -> int:
    tag = _family_tag(args.family)
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    display = families.wonderful_profile(tag, args.n)
    ray = families.wonderful_ray(tag, args.n)
    src = MATRIX_SOURCE.get(tag, tag)
    matrix = families.shape_matrix(src, args.n)
    dec = eigen(matrix)
    try:
        cert = certify_convergence(matrix, families.LINE_SEED).to_json()
    except SpectrumError as e:
        cert = {"error": str(e)}

    if args.format == "json":
        payload = {
            "family": tag,
            "n": args.n,
            "surface_points": display.s,
            "shape": list(matrix.counts),
            "matrix": matrix.to_json(),
            "char_poly": [[c.numerator, c.denominator] for c in dec.char_poly],
            "eigenvalues": [e.to_json() for e in dec.eigenvalues],
            "display": display.to_json(),
            "dominant_ray": ray.to_json(),
            "certificate": cert,
        }
        text = _json_text(payload)
    elif args.format == "csv":
        rows = [["degree", _exact_and_decimal(display.degree, args.digits)[0], ""]]
        for i, (v, count) in enumerate(display.blocks):
            exact, dec_str = _exact_and_decimal(v, args.digits)
            rows.append([f"block{i + 1}x{count}", exact, dec_str])
        text = _csv_text(["entry", "exact", "decimal (display only)"], rows)
    else:
        lines = [f"{tag} limit ray on {display.s} points", f"  display:   {display.pretty()}"]
        lines.append(f"  canonical: {ray}")
        lines.append(f"  rational:  {ray.is_rational}")
        for e in dec.eigenvalues:
            mark = " (dominant)" if dec.dominant_index is not None and dec.eigenvalues[dec.dominant_index] is e else ""
            exact, dec_str = _exact_and_decimal(e.value, args.digits)
            lines.append(f"  eigenvalue {exact} ~ {dec_str} (display only), mult {e.algebraic}{mark}")
        text = "\n".join(lines) + "\n"
    _deliver(text, _resolve_out(args.out))
    return 0


def _exact_and_decimal(v, digits: int) -> tuple[str, str]:
    return str(v), v.decimal(digits)


# -- verify -------------------------------------------------------------------------


def cmd_verify(args) -> int:
    name = GOOD_ALIASES.get(args.family, args.family)
    if name not in families.GOOD_TAGS:
        raise UsageError(f"unknown family {args.family!r}; expected one of "
                         f"{', '.join(families.GOOD_TAGS)} (or even_plus/odd_plus aliases)")
    n_lo, n_hi = _parse_range(args.n)
    k_lo, k_hi = _parse_range(args.k)
    if n_lo < 1:
        raise UsageError(f"--n must start at >= 1, got {n_lo}")
    if k_lo < 0:
        raise UsageError(f"--k must start at >= 0, got {k_lo}")
    if args.jobs < 1:
        raise UsageError(f"--jobs must be >= 1, got {args.jobs}")

    grid = [(n, k) for n in range(n_lo, n_hi + 1) for k in range(k_lo, k_hi + 1)]
    if args.jobs == 1:
        certs = [verify.verify_good(name, n, k) for n, k in grid]
    else:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            certs = list(pool.map(lambda nk: verify.verify_good(name, *nk), grid))
    table = verify.defernex_sweep(families.GOOD_LIMITS[name], n_lo, n_hi)
    ok = all(c.valid for c in certs) and table.valid
    failing = [(c.n, c.k) for c in certs if not c.valid]

    if args.format == "json":
        text = _json_text(
            {
                "family": name,
                "certificates": [c.to_json() for c in certs],
                "defernex": table.to_json(),
                "failing": [list(x) for x in failing],
                "valid": ok,
            }
        )
    elif args.format == "csv":
        rows = [[c.n, c.k, str(c.valid).lower(), "; ".join(f.name for f in c.failures)] for c in certs]
        text = _csv_text(["n", "k", "valid", "failures"], rows)
    else:
        lines = []
        for c in certs:
            if c.valid:
                lines.append(f"{name} n={c.n} k={c.k}: good ({c.emptiness.rule})")
            else:
                why = "; ".join(f.statement for f in c.failures)
                lines.append(f"{name} n={c.n} k={c.k}: REFUSED ({why})")
        lines.append(f"de Fernex signs for {families.GOOD_LIMITS[name]}:")
        for row in table.rows:
            lines.append(f"  n={row.n} sign={row.sign:+d} value ~ {row.value.decimal(args.digits)} (display only)")
        if table.bounds:
            bad = [c for c in table.bounds if not c.ok]
            lines.append(f"bound chain: {len(table.bounds)} checks, {'all hold' if not bad else f'{len(bad)} FAILED'}")
        lines.append("RESULT: " + ("all certificates valid" if ok else f"failures at {failing}"))
        text = "\n".join(lines) + "\n"
    _deliver(text, _resolve_out(args.out))
    return 0 if ok else 1


# -- pair ---------------------------------------------------------------------------


def cmd_pair(args) -> int:
    name, sep, idx = args.ray.partition(":")
    if not sep:
        raise UsageError(f"bad ray spec {args.ray!r}; expected NAME:n, e.g. Wplus_sq2:1")
    tag = _family_tag(name)
    try:
        n = int(idx)
    except ValueError:
        raise UsageError(f"bad ray index {idx!r}") from None
    if n < 1:
        raise UsageError(f"ray index must be >= 1, got {n}")
    display = families.wonderful_profile(tag, n)
    if args.with_ == "K":
        value = display.canonical_pairing()
    elif args.with_ == "self":
        value = display.self_intersection()
    else:
        value = display.defernex_value()
    try:
        sign = value.sign()
    except MixedRadicandError:
        raise UsageError("pairing value mixes incompatible radicals") from None

    if args.format == "json":
        text = _json_text(
            {
                "ray": f"{tag}:{n}",
                "with": args.with_,
                "value": value.to_json(),
                "sign": sign,
                "decimal": value.decimal(args.digits),
                "decimal_note": "display only",
            }
        )
    elif args.format == "csv":
        text = _csv_text(["ray", "with", "exact", "sign", "decimal (display only)"],
                         [[f"{tag}:{n}", args.with_, str(value), sign, value.decimal(args.digits)]])
    else:
        text = (f"{tag}:{n} . {args.with_} = {value}\n"
                f"  sign: {sign:+d}\n"
                f"  ~ {value.decimal(args.digits)} (display only)\n")
    _deliver(text, _resolve_out(args.out))
    return 0


# -- entry point ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="morirays",
        description="Exact divisor-class calculus on blowups of the plane.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, digits_default=10):
        sp.add_argument("--format", choices=("pretty", "json", "csv"), default="pretty")
        sp.add_argument("--out", help="write output to this path (MORIRAYS_OUTDIR prefixes relative paths)")
        sp.add_argument("--digits", type=int, default=digits_default, help="decimal display digits")

    sp = sub.add_parser("matrix", help="print a generator or composite matrix")
    sp.add_argument("--kind", required=True, choices=("Q", "S", "G", "B", "J", "C", "JS", "CG"))
    sp.add_argument("--n", type=int, help="family index for J, C, JS, CG")
    sp.add_argument("--check-homaloidal", action="store_true",
                    help="also print the homaloidal net and check it against the closed form")
    common(sp)
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("orbit", help="iterate a shape matrix on a seed")
    sp.add_argument("--family", required=True, help="odd or even")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True, help="largest k to print")
    sp.add_argument("--seed", help="comma-separated d,a,b,c (default 1,1,0,0)")
    common(sp)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("eigenray", help="limit ray of a family, with spectral data")
    sp.add_argument("--family", required=True,
                    help="odd, even, even_plus, odd_plus, sq4, sq2 (or W_odd, Wplus_sq2, ...)")
    sp.add_argument("--n", type=int, required=True)
    common(sp)
    sp.set_defaults(func=cmd_eigenray)

    sp = sub.add_parser("verify", help="good-ray certificates plus the De Fernex sign sweep")
    sp.add_argument("--family", required=True, help="even, odd, sq4, sq2 (even_plus/odd_plus alias the first two)")
    sp.add_argument("--n", required=True, help="range A..B or single N")
    sp.add_argument("--k", default="1..6", help="range A..B or single K (default 1..6)")
    sp.add_argument("--jobs", type=int, default=1, help="parallel certificate workers")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("pair", help="intersect a named ray with K, F, or itself")
    sp.add_argument("--ray", required=True, help="NAME:n, e.g. Wplus_sq2:1 or odd:2")
    sp.add_argument("--with", dest="with_", required=True, choices=("K", "F", "self"))
    common(sp)
    sp.set_defaults(func=cmd_pair)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, SpectrumError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
