"""Command-line entry point.

Exit codes: 0 success, 2 invalid parameters, 3 LC methods disagree,
4 extension degree over the cap, 5 reference table mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .cyclotomy import generate_sequence
from .errors import DegreeTooLarge, ParamError
from .extfield import DEFAULT_M_CAP, DEFAULT_SEED, build_field_for, zero_census
from .lincomp import (
    METHODS, lc_all, reports_to_csv, scan, scan_verify, theorem_by_id,
)
from .modnum import placeholder_r, validate_params

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DISAGREE = 3
EXIT_DEGREE = 4
EXIT_TABLE = 5

SEED_ENV = "GCQUAT_SEED"

# Reference linear complexities (p, q, r, LC, condition label).  Rows with
# pq <= 20000 form the fast tier.
TABLE2 = (
    (41, 79, 5, 4079, "C1"),
    (113, 167, 7, 23659, "C1"),
    (89, 263, 11, 29347, "C1"),
    (79, 41, 5, 4079, "C2"),
    (167, 113, 7, 23659, "C2"),
    (263, 89, 11, 29347, "C2"),
    (311, 313, 13, 121835, "C2"),
    (79, 239, 5, 37604, "C3"),
    (167, 223, 7, 74288, "C3"),
    (103, 311, 13, 63860, "C3"),
)
FAST_TIER_MAX_PQ = 20000

# Reference (p, q) pairs for the (3, 3) pattern with r = 5 and
# r | 48q+1 or r | 8q+1; the guard T-B4.3 must find all of them.
EXAMPLE2_PAIRS = (
    (19, 83), (19, 443), (59, 43), (59, 83), (59, 163), (59, 283), (59, 443),
    (139, 83), (139, 443), (179, 43), (179, 83), (179, 163), (179, 283),
    (179, 443), (379, 83), (379, 443), (419, 43), (419, 83), (419, 163), (419, 283),
)


def table2_rows(slow: bool, table=TABLE2):
    return [row for row in table if slow or row[0] * row[1] <= FAST_TIER_MAX_PQ]


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        if text and not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text if text.endswith("\n") or not text else text + "\n")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw, 0) if raw else DEFAULT_SEED


def _methods(raw: str) -> tuple[str, ...]:
    if raw == "all":
        return METHODS
    out = tuple(m.strip() for m in raw.split(",") if m.strip())
    bad = [m for m in out if m not in METHODS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {METHODS} or 'all'")
    return out


def _range(raw: str) -> range:
    """'a:b' inclusive, or a single bound 'b' meaning 3..b."""
    if ":" in raw:
        lo, hi = raw.split(":", 1)
        return range(int(lo), int(hi) + 1)
    return range(3, int(raw) + 1)


def _int_list(raw: str) -> list[int]:
    return [int(v) for v in raw.split(",") if v.strip()]


def cmd_generate(args) -> int:
    params = validate_params(args.p, args.q, placeholder_r(args.p, args.q))
    seq = generate_sequence(params)
    if args.format == "json":
        text = seq.to_json()
    elif args.format == "csv":
        text = seq.to_csv()
    else:
        text = "".join(str(int(v)) for v in seq.values)
    _emit(text, args.out)
    return EXIT_OK


def cmd_lc(args) -> int:
    params = validate_params(args.p, args.q, args.r)
    rep = lc_all(params, args.methods)
    if args.format == "json":
        text = rep.to_json()
    elif args.format == "csv":
        text = reports_to_csv([rep])
    else:
        th = rep.theorem
        lines = [f"p={params.p} q={params.q} r={params.r} N={params.N}"]
        if rep.lc_gcd is not None:
            lines.append(f"lc_gcd     {rep.lc_gcd}")
        if rep.lc_bm is not None:
            lines.append(f"lc_bm      {rep.lc_bm}")
        if th is not None:
            lines.append(f"lc_theorem {th.predicted if th.predicted is not None else '-'} [{th.status}]")
            for (tid, val), cond in zip(th.matched, th.conditions):
                lines.append(f"  {tid} -> {val}: {cond}")
        lines.append("agree" if rep.agreement else "DISAGREE")
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_OK if rep.agreement else EXIT_DISAGREE


def cmd_census(args) -> int:
    params = validate_params(args.p, args.q, args.r)
    ctx = build_field_for(params, seed=args.seed, m_cap=args.m_cap)
    rep = zero_census(ctx, params, generate_sequence(params))
    if args.format == "json":
        text = rep.to_json()
    else:
        d = rep.to_dict()
        lines = [f"p={params.p} q={params.q} r={params.r} m={rep.m} seed={rep.seed} lemma={rep.lemma}"]
        sep = "," if args.format == "csv" else " "
        lines.append(sep.join(("cell", "size", "zeros", "predicted", "value")))
        if args.format == "csv":
            lines = lines[1:]
        for name, c in d["cells"].items():
            pred = "" if c["predicted"] is None else c["predicted"]
            val = "" if c["value"] is None else c["value"]
            lines.append(sep.join(str(v) for v in (name, c["size"], c["zeros"], pred, val)))
        if args.format == "text":
            lines.append(f"total zeros {rep.total_zeros}")
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_OK


def run_table2(rows, methods=METHODS, stream=None) -> int:
    stream = stream or sys.stdout
    status = EXIT_OK
    stream.write("p q r LC_gcd LC_bm LC_theorem expected condition result seconds\n")
    for p, q, r, expected, label in rows:
        t0 = time.perf_counter()
        rep = lc_all(validate_params(p, q, r), methods)
        dt = time.perf_counter() - t0
        got = [rep.lc_gcd, rep.lc_bm, rep.theorem.predicted if rep.theorem else None]
        ok = all(v == expected for v in got if v is not None) and any(v is not None for v in got)
        cells = ["-" if v is None else str(v) for v in got]
        stream.write(f"{p} {q} {r} {' '.join(cells)} {expected} {label} "
                     f"{'ok' if ok else 'MISMATCH'} {dt:.1f}\n")
        if not ok:
            sys.stderr.write(f"table mismatch at row ({p},{q},{r}): expected {expected}, got {cells}\n")
            status = EXIT_TABLE
    return status


def cmd_table2(args) -> int:
    return run_table2(table2_rows(args.slow), args.methods)


def cmd_scan(args) -> int:
    theorem_by_id(args.guard)  # fail early on a bad id
    triples = scan(_range(args.p_range), _range(args.q_range), args.r, args.guard)
    rows: list[dict] = []
    status = EXIT_OK
    if args.verify:
        for p, q, r, pred, lc in scan_verify(triples, args.guard):
            rows.append({"p": p, "q": q, "r": r, "predicted": pred, "lc_gcd": lc, "agree": pred == lc})
            if pred != lc:
                status = EXIT_DISAGREE
    else:
        rows = [{"p": p, "q": q, "r": r} for p, q, r in triples]
    if args.format == "json":
        text = json.dumps(rows)
    else:
        cols = list(rows[0]) if rows else ["p", "q", "r"]
        sep = "," if args.format == "csv" else " "
        lines = [sep.join(cols)] if args.format == "csv" else []
        lines += [sep.join(str(row[c]) for c in cols) for row in rows]
        text = "\n".join(lines)
    _emit(text, args.out)
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gcquat", description="Quaternary generalized cyclotomic sequences of period 2pq.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, need_r=True):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        if need_r:
            sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--out", default=None, help="output file (default stdout)")

    g = sub.add_parser("generate", help="emit one period of the sequence")
    common(g, need_r=False)
    g.set_defaults(func=cmd_generate)

    lc = sub.add_parser("lc", help="linear complexity by gcd, Berlekamp-Massey and closed form")
    common(lc)
    lc.add_argument("--methods", type=_methods, default=METHODS, help="comma list of gcd,bm,theorem or 'all'")
    lc.set_defaults(func=cmd_lc)

    c = sub.add_parser("census", help="zeros of the generating polynomial per residue cell")
    common(c)
    c.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                   help=f"field construction seed (default ${SEED_ENV} or {DEFAULT_SEED:#x})")
    c.add_argument("--m-cap", type=int, default=DEFAULT_M_CAP)
    c.set_defaults(func=cmd_census)

    t = sub.add_parser("table2", help="recompute the reference LC table")
    t.add_argument("--slow", action="store_true", help="include rows with pq > 20000")
    t.add_argument("--methods", type=_methods, default=METHODS)
    t.set_defaults(func=cmd_table2)

    s = sub.add_parser("scan", help="list triples satisfying a closed-form guard")
    s.add_argument("--p-range", required=True, help="'lo:hi' inclusive or 'hi'")
    s.add_argument("--q-range", required=True)
    s.add_argument("--r", type=_int_list, default=[5], help="comma list of r values")
    s.add_argument("--guard", required=True, help="e.g. T-B4.3 or T-B4-case-3")
    s.add_argument("--verify", action="store_true", help="recompute lc_gcd for each hit")
    s.add_argument("--format", choices=("text", "json", "csv"), default="text")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_scan)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", "unset") is None:
        args.seed = _default_seed()
    try:
        return args.func(args)
    except ParamError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_VALIDATION
    except DegreeTooLarge as exc:
        sys.stderr.write(f"DegreeTooLarge: m={exc.m} exceeds cap {exc.cap}\n")
        return EXIT_DEGREE
    except KeyError as exc:
        sys.stderr.write(f"{exc.args[0]}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
