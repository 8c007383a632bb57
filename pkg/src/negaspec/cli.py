"""Command-line front end with stable file formats and exit codes.

Exit codes: 0 success (or verdict true), 1 verdict false, 2 usage,
3 malformed input, 4 infeasible search space.

The function-file format is a JSON document with fields q, n, values
(q^n integers; arbitrary signed integers are normalized by lifting) and
an optional target field: "2q" (default) for tables valued in Z_2q, "q"
for q-valued tables.  Saving is canonical, so load followed by save is
byte-stable.
"""
from __future__ import annotations

import argparse
import cmath
import json
import sys

from .constructions import (
    bilinear_negabent,
    direct_sum,
    q4_conditions,
    quadratic_negabent,
)
from .core import GenFunction, QaryFunction, ZqPoint, lift, point_of
from .correlation import correlation_table, is_negabent_via_nac
from .cyclotomic import CycloElement
from .polyspec import poly_function
from .search import (
    InfeasibleSpaceError,
    SearchSpace,
    search_negabent,
    verify_examples,
)
from .transforms import (
    DEFAULT_TOL,
    full_spectrum,
    is_negabent,
    qary_spectrum,
)

__all__ = [
    "load_function_file",
    "save_function_file",
    "function_file_text",
    "main",
]

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_INFEASIBLE = 4


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _jnum(x: float) -> float:
    return float(f"{x:.12g}")


# --- function files ---


def load_function_file(path: str):
    """Read a function file; GenFunction or QaryFunction per target."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise ValueError(f"{path}: not valid JSON ({e})") from e
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: expected a JSON object")
    for key in ("q", "n", "values"):
        if key not in doc:
            raise ValueError(f"{path}: missing field {key!r}")
    q, n, values = doc["q"], doc["n"], doc["values"]
    target = doc.get("target", "2q")
    if target not in ("2q", "q"):
        raise ValueError(f"{path}: target must be '2q' or 'q', got {target!r}")
    if not isinstance(q, int) or not isinstance(n, int):
        raise ValueError(f"{path}: q and n must be integers")
    if not isinstance(values, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in values
    ):
        raise ValueError(f"{path}: values must be a list of integers")
    if q < 2 or n < 1:
        raise ValueError(f"{path}: need q >= 2 and n >= 1")
    if len(values) != q**n:
        raise ValueError(
            f"{path}: expected {q**n} values for q={q}, n={n}, "
            f"got {len(values)}"
        )
    if target == "q":
        return QaryFunction(q, n, tuple(lift(v, q) for v in values))
    return GenFunction(q, n, tuple(lift(v, 2 * q) for v in values))


def function_file_text(f) -> str:
    """Canonical serialized form of a function (byte-stable)."""
    target = "q" if isinstance(f, QaryFunction) else "2q"
    doc = {"q": f.q, "n": f.n, "target": target, "values": list(f.values)}
    return json.dumps(doc, indent=2) + "\n"


def save_function_file(f, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(function_file_text(f))


def _require_2q(f, path: str) -> GenFunction:
    if not isinstance(f, GenFunction):
        raise ValueError(f"{path}: this command needs a target='2q' file")
    return f


def _require_q(f, path: str) -> QaryFunction:
    if not isinstance(f, QaryFunction):
        raise ValueError(f"{path}: this command needs a target='q' file")
    return f


def _parse_u(text: str, q: int, n: int) -> ZqPoint:
    try:
        parts = [int(tok) for tok in text.split(",")]
    except ValueError as e:
        raise ValueError(f"--u must be comma-separated integers: {e}") from e
    if len(parts) != n:
        raise ValueError(f"--u needs {n} coordinates, got {len(parts)}")
    return ZqPoint.lifted(parts, q)


def _tsq_fields(t: CycloElement) -> tuple[int | None, list[int]]:
    """T conj(T) as a plain integer when it is one, plus raw coefficients."""
    p = t * t.conjugate()
    guess = round(p.to_complex().real)
    return (guess if p.equals_integer(guess) else None), list(p.coeffs)


# --- subcommands ---


def _cmd_nht(args) -> int:
    f = _require_2q(load_function_file(args.file), args.file)
    q, n = f.q, f.n
    spectrum = full_spectrum(f, backend=args.backend)
    if args.u is not None:
        indices = [
            sum(c * q ** (n - 1 - k) for k, c in
                enumerate(_parse_u(args.u, q, n).coords))
        ]
    else:
        indices = list(range(q**n))
    points = []
    for i in indices:
        u = point_of(i, q, n)
        entry: dict = {"u": list(u.coords)}
        if spectrum.floats is not None:
            val = complex(spectrum.floats[i])
        else:
            val = spectrum.exact[i].to_complex() / q ** (n / 2)
        entry["magnitude"] = _jnum(abs(val))
        entry["phase"] = _jnum(cmath.phase(val))
        if spectrum.exact is not None:
            tsq, coeffs = _tsq_fields(spectrum.exact[i])
            entry["tsq"] = tsq
            entry["tsq_coeffs"] = coeffs
        points.append(entry)
    if args.json:
        print(json.dumps({"q": q, "n": n, "points": points}))
    else:
        for entry in points:
            line = (
                f"u={tuple(entry['u'])} |N|={_fmt(entry['magnitude'])} "
                f"phase={_fmt(entry['phase'])}"
            )
            if "tsq" in entry:
                line += (
                    f" T*conj(T)={entry['tsq']}"
                    if entry["tsq"] is not None
                    else f" T*conj(T) coeffs={entry['tsq_coeffs']}"
                )
            print(line)
    return EXIT_OK


def _cmd_nac(args) -> int:
    f = _require_2q(load_function_file(args.file), args.file)
    g = f
    if args.cross is not None:
        g = _require_2q(load_function_file(args.cross), args.cross)
        if (g.q, g.n) != (f.q, f.n):
            raise ValueError("cross file has a different domain")
    table = correlation_table(f, g, backend="exact")
    q, n = f.q, f.n
    entries = []
    for i, t in enumerate(table.exact):
        u = point_of(i, q, n)
        val = t.to_complex()
        entries.append(
            {
                "u": list(u.coords),
                "zero": t.is_zero(),
                "re": _jnum(val.real),
                "im": _jnum(val.imag),
                "coeffs": list(t.coeffs),
            }
        )
    if args.json:
        print(json.dumps({"q": q, "n": n, "cross": args.cross is not None,
                          "entries": entries}))
    else:
        for e in entries:
            mark = "ZERO" if e["zero"] else ""
            print(
                f"u={tuple(e['u'])} C={_fmt(e['re'])}{e['im']:+.12g}j {mark}"
                .rstrip()
            )
    return EXIT_OK


def _cmd_check(args) -> int:
    f = _require_2q(load_function_file(args.file), args.file)
    flat = is_negabent(f, backend=args.backend, tol=args.tol)
    nacz = is_negabent_via_nac(f)
    verdict = flat.negabent and nacz.negabent
    witness = flat.witness or nacz.witness
    doc = {
        "q": f.q,
        "n": f.n,
        "negabent": verdict,
        "flat_spectrum": flat.negabent,
        "nac_zero": nacz.negabent,
        "witness": list(witness.coords) if witness else None,
    }
    if args.json:
        print(json.dumps(doc))
    else:
        if verdict:
            print(f"negabent (flat spectrum and zero autocorrelation, "
                  f"q={f.q}, n={f.n})")
        else:
            print(f"not negabent; witness u={tuple(witness.coords)}")
    return EXIT_OK if verdict else EXIT_FALSE


def _cmd_construct(args) -> int:
    chosen = [
        name
        for name, val in (
            ("--quadratic", args.quadratic),
            ("--bilinear", args.bilinear),
            ("--poly", args.poly is not None),
            ("--direct-sum", args.direct_sum is not None),
        )
        if val
    ]
    if len(chosen) != 1:
        raise ValueError(
            "choose exactly one of --quadratic, --bilinear, --poly, "
            "--direct-sum"
        )
    if args.quadratic:
        if args.q is None or args.n is None:
            raise ValueError("--quadratic needs --q and --n")
        f = quadratic_negabent(args.q, args.n)
    elif args.bilinear:
        if args.q is None:
            raise ValueError("--bilinear needs --q")
        f = bilinear_negabent(args.q)
    elif args.poly is not None:
        if args.q is None or args.n is None:
            raise ValueError("--poly needs --q and --n")
        f = poly_function(args.poly, args.q, args.n)
    else:
        f1 = _require_2q(load_function_file(args.direct_sum[0]),
                         args.direct_sum[0])
        f2 = _require_2q(load_function_file(args.direct_sum[1]),
                         args.direct_sum[1])
        f = direct_sum(f1, f2)
    text = function_file_text(f)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_qary_spectrum(args) -> int:
    g = _require_q(load_function_file(args.file), args.file)
    spec = qary_spectrum(g)
    q, n = g.q, g.n
    mags = [abs(complex(v)) for v in spec]
    lo, hi = min(mags), max(mags)
    ratio = hi / lo if lo > 0 else float("inf")
    entries = [
        {
            "u": list(point_of(i, q, n).coords),
            "magnitude": _jnum(mags[i]),
        }
        for i in range(q**n)
    ]
    doc = {
        "q": q,
        "n": n,
        "min_magnitude": _jnum(lo),
        "max_magnitude": _jnum(hi),
        "ratio": _jnum(ratio) if ratio != float("inf") else None,
        "entries": entries,
    }
    if args.json:
        print(json.dumps(doc))
    else:
        for e in entries:
            print(f"u={tuple(e['u'])} |N'|={_fmt(e['magnitude'])}")
        rtxt = _fmt(ratio) if ratio != float("inf") else "inf"
        print(f"min={_fmt(lo)} max={_fmt(hi)} max/min={rtxt}")
    return EXIT_OK


def _cmd_q4_report(args) -> int:
    h = _require_2q(load_function_file(args.file), args.file)
    report = q4_conditions(h)
    rows = []
    for r in report.records:
        rows.append(
            {
                "u": list(r.u.coords),
                "combined_magnitude": _jnum(r.combined_magnitude),
                "cond_i": r.cond_i,
                "phi_im": _jnum(r.phi.imag) if r.phi is not None else None,
                "psi_im": _jnum(r.psi.imag) if r.psi is not None else None,
                "cond_ii": r.cond_ii,
                "power_sum": _jnum(r.power_sum),
                "alternating_abs": _jnum(abs(r.alternating)),
                "cond_iii": r.cond_iii,
            }
        )
    doc = {
        "n": report.n,
        "cond_i_all": report.cond_i_all,
        "cond_ii_all": report.cond_ii_all,
        "cond_ii_indeterminate": report.cond_ii_indeterminate,
        "cond_iii_all": report.cond_iii_all,
        "records": rows,
    }
    if args.json:
        print(json.dumps(doc))
    else:
        for r in rows:
            cii = "indet" if r["cond_ii"] is None else str(r["cond_ii"])
            print(
                f"u={tuple(r['u'])} |sum|={_fmt(r['combined_magnitude'])} "
                f"(i)={r['cond_i']} (ii)={cii} "
                f"power={_fmt(r['power_sum'])} "
                f"alt={_fmt(r['alternating_abs'])} (iii)={r['cond_iii']}"
            )
        print(
            f"all: (i)={report.cond_i_all} (ii)={report.cond_ii_all} "
            f"[{report.cond_ii_indeterminate} indeterminate] "
            f"(iii)={report.cond_iii_all}"
        )
    return EXIT_OK


def _cmd_search(args) -> int:
    space = SearchSpace(
        args.q,
        args.n,
        shard_index=args.shard,
        shard_count=args.shards,
        max_candidates=args.max_candidates,
    )
    records = search_negabent(
        space, backend=args.backend, hits_only=args.hits_only
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for record in records:
                fh.write(record.to_json_line() + "\n")
    else:
        for record in records:
            print(record.to_json_line())
    return EXIT_OK


def _cmd_verify_examples(args) -> int:
    rows = verify_examples(max_points=args.max_points)
    if args.json:
        print(
            json.dumps(
                [
                    {
                        "label": r.label,
                        "q": r.q,
                        "n": r.n,
                        "points": r.points,
                        "passed": r.passed,
                        "seconds": _jnum(r.seconds),
                        "detail": r.detail,
                    }
                    for r in rows
                ]
            )
        )
    else:
        for r in rows:
            status = "PASS" if r.passed else "FAIL"
            print(
                f"{status} {r.label} (q={r.q}, n={r.n}, {r.points} points, "
                f"{r.seconds:.3f}s) {r.detail}"
            )
        failed = sum(1 for r in rows if not r.passed)
        print(f"{len(rows)} rows, {failed} failed")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FALSE


# --- parser ---


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negaspec",
        description="Flat-spectrum analysis of functions Z_q^n -> Z_2q "
        "under the twisted transform, with exact cyclotomic and float "
        "backends.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nht", help="transform values of a function file")
    p.add_argument("file")
    p.add_argument("--u", help="comma-separated point, e.g. 0,2,1")
    p.add_argument(
        "--backend", choices=("exact", "float", "both"), default="both"
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_nht)

    p = sub.add_parser("nac", help="autocorrelation (or crosscorrelation)")
    p.add_argument("file")
    p.add_argument("--cross", help="second function file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_nac)

    p = sub.add_parser("check", help="negabent verdict (exit 1 if not)")
    p.add_argument("file")
    p.add_argument(
        "--backend", choices=("exact", "float", "both"), default="exact"
    )
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("construct", help="write a function file")
    p.add_argument("--quadratic", action="store_true",
                   help="sum of x_i^2 - x_i (even q)")
    p.add_argument("--bilinear", action="store_true",
                   help="2 x1 x2 + x1 on two variables")
    p.add_argument("--poly", help="polynomial expression over x1..xn")
    p.add_argument("--direct-sum", nargs=2, metavar=("F1", "F2"),
                   help="two function files to join")
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser(
        "qary-spectrum", help="q-valued transform and flatness ratio"
    )
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_qary_spectrum)

    p = sub.add_parser(
        "q4-report", help="slice criteria for a q=4 function"
    )
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_q4_report)

    p = sub.add_parser("search", help="exhaustive catalog at (q, n)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--shard", type=int, default=0)
    p.add_argument("--hits-only", action="store_true")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--max-candidates", type=int, default=10**8)
    p.add_argument(
        "--backend", choices=("exact", "float", "both"), default="both"
    )
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser(
        "verify-examples", help="verify the reference catalog"
    )
    p.add_argument("--max-points", type=int, default=10**4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify_examples)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except InfeasibleSpaceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
