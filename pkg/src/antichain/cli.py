"""Command line interface.

    antichain scan --n-max 30 [--jobs K] [--ratios] [--format csv|json] [--out PATH]
    antichain poset --lambda 8,2 [--format dot|json|covers] [--with-zero]
    antichain sample --n 5 --d 7 [--samples N] [--seed S] [--exhaustive]
    antichain sample --sweep [--cells 3x3,4x9 | --random-cells 67] [--seed S]
    antichain poincare --lambda 2,1,1 [--z-order 6] [--t-degree 12]
    antichain twopart --x 3 --a 3 --u 0 --v 2 [--check]

Exit codes: 0 success, 2 invalid input, 3 scale guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import families, hnf, poincare
from .core import Partition, ResidueTable, build_poset, enumerate_fpp, relates_theorem
from .errors import ScaleGuardError, ValidationError
from .partitions import TESTED_MAX_N, ratios, scan

FORMAT_VERSION = 1


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("ANTICHAIN_JOBS", "1")))
    except ValueError:
        return 1


def _record(command: str, parameters: dict, results, started: float, seed=None) -> dict:
    rec = {"format": FORMAT_VERSION, "command": command, "parameters": parameters}
    if seed is not None:
        rec["seed"] = seed
    rec["results"] = results
    rec["wall_time"] = round(time.perf_counter() - started, 6)
    return rec


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _dump(rec: dict) -> str:
    return json.dumps(rec, indent=2, ensure_ascii=False) + "\n"


# -- scan -------------------------------------------------------------------------------


def scan_rows(n_max: int, jobs: int):
    ns = range(1, n_max + 1)
    if jobs <= 1:
        return [scan(n) for n in ns]
    with ProcessPoolExecutor(jobs) as pool:
        return list(pool.map(scan, ns))


def render_scan_csv(rows, with_ratios: bool) -> str:
    header = "n,rpac,relprime,part" + (",ratio_rp,ratio_ac" if with_ratios else "")
    lines = [header]
    for row, (_, rp, ac) in zip(rows, ratios(rows)):
        line = f"{row.n},{row.rpac},{row.relprime},{row.part}"
        if with_ratios:
            line += f",{rp},{ac}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_scan(args) -> int:
    started = time.perf_counter()
    if args.n_max < 1:
        raise ValidationError("--n-max must be >= 1")
    if args.n_max > TESTED_MAX_N and not args.allow_large:
        raise ScaleGuardError(f"--n-max above {TESTED_MAX_N} needs --allow-large")
    rows = scan_rows(args.n_max, args.jobs)
    if args.format == "csv":
        _emit(render_scan_csv(rows, args.ratios), args.out)
        return 0
    results = []
    for row, (_, rp, ac) in zip(rows, ratios(rows)):
        item = {"n": row.n, "rpac": row.rpac, "relprime": row.relprime, "part": row.part}
        if args.ratios:
            item.update(ratio_rp=rp, ratio_ac=ac)
        results.append(item)
    _emit(_dump(_record("scan", {"n_max": args.n_max}, results, started)), args.out)
    return 0


# -- poset ------------------------------------------------------------------------------


def poset_payload(lam: Partition) -> dict:
    poset = build_poset(lam)
    return {
        "lambda": list(lam.parts),
        "n": lam.n,
        "elements": list(poset.elements),
        "relations": sorted(map(list, poset.relations)),
        "covers": sorted(map(list, poset.covers)),
        "minimal": poset.minimal(),
        "maximal": poset.maximal(),
        "is_antichain": poset.is_antichain,
    }


def render_dot(payload: dict, with_zero: bool) -> str:
    lines = ["digraph P {"]
    if with_zero:
        lines.append("  0;")
    lines += [f"  {e};" for e in payload["elements"]]
    if with_zero:
        lines += [f"  0 -> {e};" for e in payload["minimal"]]
    lines += [f"  {i} -> {j};" for i, j in payload["covers"]]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_poset(args) -> int:
    started = time.perf_counter()
    lam = Partition.parse(args.lam)
    payload = poset_payload(lam)
    if args.format == "dot":
        text = render_dot(payload, args.with_zero)
    elif args.format == "covers":
        covers = payload["covers"]
        if args.with_zero:
            covers = [[0, e] for e in payload["minimal"]] + covers
        text = "".join(f"{i} {j}\n" for i, j in covers)
    else:
        text = _dump(_record("poset", {"lambda": str(lam)}, payload, started))
    _emit(text, args.out)
    return 0


# -- sample -----------------------------------------------------------------------------


def _parse_cells(text: str) -> list[tuple[int, int]]:
    cells = []
    for token in text.split(","):
        try:
            n, d = token.lower().split("x")
            cells.append((int(n), int(d)))
        except ValueError:
            raise ValidationError(f"malformed cell {token!r}; expected NxD") from None
    return cells


def cmd_sample(args) -> int:
    started = time.perf_counter()
    if args.sweep:
        if args.cells:
            cells = _parse_cells(args.cells)
        else:
            cells = hnf.random_cells(args.random_cells, args.seed)
        results = hnf.sweep(cells, args.seed, args.samples, args.jobs)
        params = {"cells": [list(c) for c in cells], "samples": args.samples}
        _emit(_dump(_record("sample", params, results, started, seed=args.seed)), args.out)
        return 0
    if args.n is None or args.d is None:
        raise ValidationError("--n and --d are required unless --sweep is given")
    if args.exhaustive:
        total, count = hnf.exhaust_och(args.n, args.d)
        results = {"n": args.n, "d": args.d, "mode": "exhaustive", "total": total, "antichain": count,
                   "fraction": count / total if total else None,
                   "fraction_exact": f"{count}/{total}"}
        _emit(_dump(_record("sample", {"n": args.n, "d": args.d}, results, started)), args.out)
        return 0
    samples = args.samples if args.samples is not None else args.n**3
    frac, count = hnf.sample_och(args.n, args.d, samples, args.seed, args.jobs)
    results = {"n": args.n, "d": args.d, "mode": "sample", "samples": samples, "antichain": count,
               "fraction": float(frac), "fraction_exact": f"{frac.numerator}/{frac.denominator}"}
    params = {"n": args.n, "d": args.d, "samples": samples}
    _emit(_dump(_record("sample", params, results, started, seed=args.seed)), args.out)
    return 0


# -- poincare ---------------------------------------------------------------------------


def cmd_poincare(args) -> int:
    started = time.perf_counter()
    lam = Partition.parse(args.lam)
    pts = enumerate_fpp(lam)
    fpa = poincare.antichain_series(pts, args.z_order, args.t_degree)
    full = poincare.full_poincare(lam, args.z_order, args.t_degree)
    results = {
        "lambda": list(lam.parts),
        "heights": [p.height for p in pts if p.b],
        "fpa_series": [list(r) for r in fpa.coeffs],
        "full_series": [list(r) for r in full.coeffs],
    }
    params = {"lambda": str(lam), "z_order": args.z_order, "t_degree": args.t_degree}
    _emit(_dump(_record("poincare", params, results, started)), args.out)
    return 0


# -- twopart ----------------------------------------------------------------------------


def twopart_payload(cfg: families.TwoPartConfig, check: bool) -> dict:
    table = [
        {"i": i, "r": cfg.r[i], "p": cfg.p[i], "q": cfg.q[i], "f": cfg.f_values[i],
         "class": cfg.k_class[i], "s1": families.two_part_s1(cfg, i), "s2": families.two_part_s2(cfg, i)}
        for i in range(cfg.n - 1)
    ]
    out = {"lambda": list(cfg.partition().parts), "n": cfg.n, "coprime": cfg.coprime, "table": table}
    if not cfg.coprime:
        out["relations"] = None
        if check:
            out["equivalent"] = None
        return out
    poset = families.two_part_poset(cfg)
    out["relations"] = sorted(map(list, poset.relations))
    out["covers"] = sorted(map(list, poset.covers))
    if check:
        res = ResidueTable.build(cfg.partition())
        m = cfg.m
        out["equivalent"] = all(
            families.two_part_relates(cfg, i, j) == relates_theorem(res, i, j)
            for j in range(1, m) for i in range(1, m)
        )
    return out


def cmd_twopart(args) -> int:
    started = time.perf_counter()
    cfg = families.TwoPartConfig(args.x, args.a, args.u, args.v)
    payload = twopart_payload(cfg, args.check)
    params = {"x": args.x, "a": args.a, "u": args.u, "v": args.v, "check": args.check}
    _emit(_dump(_record("twopart", params, payload, started)), args.out)
    return 0


# -- entry point ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antichain", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="part/relprime/rpac table")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--ratios", action="store_true", help="append relprime/part and rpac/relprime")
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("poset", help="export P(lambda)")
    p.add_argument("--lambda", dest="lam", required=True, help='parts, e.g. "8,2"')
    p.add_argument("--format", choices=("dot", "json", "covers"), default="json")
    p.add_argument("--with-zero", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("sample", help="antichain fraction in OCH+(n, d)")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--samples", type=int, help="default n**3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--sweep", action="store_true", help="emit (n/d, f(n,d)) for several cells")
    p.add_argument("--cells", help='comma separated "NxD" list')
    p.add_argument("--random-cells", type=int, default=67)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("poincare", help="truncated Poincare series of an antichain simplex")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--z-order", type=int, default=6)
    p.add_argument("--t-degree", type=int, default=24)
    p.add_argument("--out")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("twopart", help="(x,...,x,ax,...,ax) decomposition and relations")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare with the residue criterion")
    p.add_argument("--out")
    p.set_defaults(func=cmd_twopart)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScaleGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
