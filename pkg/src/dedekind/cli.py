"""Command-line front end.

Subcommands parse a group spec such as "M(2,5)" or "C(3) x D(8)", run the
requested computation, and print either a human-readable table or, with
--json, a machine format with a fixed key order so identical invocations
produce byte-identical output.  Invariant reports are cached in a local JSON
file keyed by spec and engine version; verification failures, parameter
errors, and budget caps map to distinct exit codes.

Exit codes: 0 success, 2 spec parse error, 3 invalid parameter or structure,
4 order/budget/isomorphism cap exceeded, 5 verification failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import (
    BudgetExhausted,
    InvalidParameter,
    IsoCapExceeded,
    LatticeBudgetExceeded,
    NotAnAction,
    NotAnAutomorphism,
    NotNormal,
    OrderCapExceeded,
    ParseError,
)
from .formulas import (
    d_prime_dihedral_formula,
    d_prime_heisenberg_formula,
    d_prime_modular_formula,
    d_prime_schmidt_formula,
    d_prime_schmidt_section_formula,
    density_sequence,
    gaussian_binomial,
)
from .invariants import (
    DSTAR_ORDER_LIMIT,
    InvariantReport,
    compute_report,
    d_star,
    sections,
)
from .lattice import hasse_edges, subgroup_lattice
from .specs import parse_spec
from .verify import CorpusConfig, build_corpus, compute_corpus_stats, run_suites, SUITES

DEFAULT_CACHE_PATH = ".dedekind_cache.json"
DEFAULT_MAX_ORDER = 512


# ---------------------------------------------------------------------------
# cache

def _load_cache(path: str) -> dict:
    """The cache's entries dict; unreadable or foreign files read as empty."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return {}
    entries = data.get("entries") if isinstance(data, dict) else None
    return entries if isinstance(entries, dict) else {}


def _cache_get(entries: dict, spec: str) -> InvariantReport | None:
    hit = entries.get(spec)
    if not isinstance(hit, dict) or hit.get("engine") != __version__:
        return None
    try:
        return InvariantReport.from_json_dict(hit["report"])
    except (KeyError, TypeError, ValueError):
        return None


def _cache_write(path: str, entries: dict) -> bool:
    """Atomically rewrite the cache file; skip (False) if another writer holds it."""
    lock = path + ".lock"
    try:
        fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        return False
    except OSError:
        return False
    try:
        os.close(fd)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump({"engine": __version__, "entries": entries}, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
        return True
    finally:
        try:
            os.unlink(lock)
        except OSError:
            pass


def _cache_put(path: str, entries: dict, report: InvariantReport) -> None:
    entries[report.spec] = {
        "spec": report.spec,
        "engine": __version__,
        "saved_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "report": report.to_json_dict(),
    }
    _cache_write(path, entries)


# ---------------------------------------------------------------------------
# shared helpers

def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj) -> None:
    _emit(json.dumps(obj, indent=2))


def _spec_report(args, need_d_star: bool = False) -> InvariantReport:
    """Resolve a spec to its InvariantReport, via the cache when allowed.

    A cached report is reused unless it lacks d* that the current invocation
    would compute (larger allow-slow budget, or an explicit d* request).
    """
    spec = parse_spec(args.spec)
    canonical = str(spec)
    use_cache = not args.no_cache
    entries = _load_cache(args.cache_path) if use_cache else {}
    cached = _cache_get(entries, canonical) if use_cache else None
    if cached is not None:
        ds_reachable = cached.order <= DSTAR_ORDER_LIMIT or args.allow_slow
        ds_missing = cached.d_star is None and ds_reachable and (
            need_d_star or args.allow_slow
        )
        if not ds_missing:
            return cached
    group = spec.build(order_cap=args.max_order)
    if need_d_star and group.order > DSTAR_ORDER_LIMIT and not args.allow_slow:
        # surface the cap before doing any heavy enumeration
        d_star(group, allow_slow=False)
    report = compute_report(group, spec=canonical, allow_slow=args.allow_slow)
    if use_cache:
        _cache_put(args.cache_path, entries, report)
    return report


def _flag_line(flags: dict) -> str:
    return ", ".join(f"{k}={'yes' if v else 'no'}" for k, v in sorted(flags.items()))


# ---------------------------------------------------------------------------
# subcommands

def cmd_info(args) -> int:
    report = _spec_report(args)
    if args.json:
        _emit_json(report.to_json_dict())
        return 0
    ds = "-" if report.d_star is None else str(report.d_star)
    lines = [
        f"spec:     {report.spec}",
        f"order:    {report.order}",
        f"|L(G)|:   {report.lattice_size}",
        f"k'(G):    {report.k_prime}",
        f"|N(G)|:   {report.normal_count}",
        f"nu(G):    {report.nu}",
        f"d'(G):    {report.d_prime}",
        f"d*(G):    {ds}",
        f"flags:    {_flag_line(report.flags)}",
        f"time:     {report.ms} ms",
    ]
    _emit("\n".join(lines))
    return 0


def cmd_dprime(args) -> int:
    report = _spec_report(args)
    if args.json:
        _emit_json({"spec": report.spec, "d_prime": str(report.d_prime)})
    else:
        _emit(str(report.d_prime))
    return 0


def cmd_dstar(args) -> int:
    report = _spec_report(args, need_d_star=True)
    if args.json:
        _emit_json({"spec": report.spec, "d_star": str(report.d_star)})
    else:
        _emit(str(report.d_star))
    return 0


def _lattice_dot(spec: str, lat) -> str:
    reps = set(lat.class_representatives())
    lines = [
        "digraph subgroup_lattice {",
        "  rankdir=BT;",
        f'  label="{spec}";',
        "  node [shape=circle, fontsize=10];",
    ]
    for i, sub in enumerate(lat.subgroups):
        shape = "doublecircle" if lat.is_normal(i) else "circle"
        style = ", style=filled, fillcolor=lightgray" if i in reps else ""
        lines.append(f'  s{i} [label="{i}: {sub.order}", shape={shape}{style}];')
    for i, j in hasse_edges(lat):
        lines.append(f"  s{i} -> s{j};")
    lines.append("}")
    return "\n".join(lines)


def cmd_lattice(args) -> int:
    spec = parse_spec(args.spec)
    group = spec.build(order_cap=args.max_order)
    lat = subgroup_lattice(group)
    if args.dot:
        _emit(_lattice_dot(str(spec), lat))
        return 0
    if args.json:
        _emit_json(
            {
                "spec": str(spec),
                "order": group.order,
                "subgroups": [
                    {
                        "index": i,
                        "order": sub.order,
                        "normal": lat.is_normal(i),
                        "class": lat.class_of(i),
                    }
                    for i, sub in enumerate(lat.subgroups)
                ],
                "edges": [list(e) for e in hasse_edges(lat)],
            }
        )
        return 0
    edges = hasse_edges(lat)
    _emit(
        f"subgroup lattice of {spec}: {lat.size} subgroups in {lat.k_prime} classes, "
        f"{lat.normal_count} normal"
    )
    for i, sub in enumerate(lat.subgroups):
        marker = "normal" if lat.is_normal(i) else f"class {lat.class_of(i)}"
        _emit(f"  #{i:<3d} order {sub.order:<5d} {marker}")
    _emit(f"covering edges: {len(edges)}")
    return 0


def cmd_sections(args) -> int:
    spec = parse_spec(args.spec)
    group = spec.build(order_cap=args.max_order)
    shapes: dict[tuple[int, int], int] = {}
    total = 0
    for sec in sections(group):
        total += 1
        key = (sec.h.order, sec.quotient.order)
        shapes[key] = shapes.get(key, 0) + 1
    rows = [
        {"h_order": h, "quotient_order": q, "count": c}
        for (h, q), c in sorted(shapes.items())
    ]
    if args.json:
        _emit_json({"spec": str(spec), "total": total, "shapes": rows})
        return 0
    _emit(f"sections of {spec}: {total} pairs (H, K normal in H)")
    for row in rows:
        _emit(
            f"  |H| = {row['h_order']:<5d} |H/K| = {row['quotient_order']:<5d} "
            f"count {row['count']}"
        )
    return 0


def cmd_verify(args) -> int:
    names = args.suites if args.suites else ["all"]
    results = run_suites(names, config=CorpusConfig(), threads=args.threads)
    if args.json:
        _emit_json(
            {
                "engine": __version__,
                "ok": all(r.ok for r in results),
                "suites": [r.to_json_dict() for r in results],
            }
        )
    else:
        for r in results:
            status = "ok " if r.ok else "FAIL"
            _emit(
                f"[{status}] {r.suite}: {len(r.checks)} checks, "
                f"{r.passed} passed, {r.failed} failed"
            )
            ants = ", ".join(f"{k}={v}" for k, v in sorted(r.antecedents.items()))
            _emit(f"       antecedents: {ants}")
        failures = [(r.suite, c) for r in results for c in r.checks if not c.ok]
        if failures:
            _emit("failures:")
            for suite, c in failures:
                _emit(f"  [{suite}] {c.description}")
                if c.witness:
                    _emit(f"      witness: {c.witness}")
        total = sum(len(r.checks) for r in results)
        failed = sum(r.failed for r in results)
        _emit(
            f"{len(results)} suites, {total} checks, {failed} failed"
            if failed
            else f"{len(results)} suites, {total} checks, all passed"
        )
    return 0 if all(r.ok for r in results) else 5


def cmd_density(args) -> int:
    steps = density_sequence(args.a, args.b, args.epsilon, args.prime_budget)
    if args.json:
        _emit_json(
            {
                "target": f"{args.a}/{args.b}",
                "epsilon": str(Fraction(str(args.epsilon))),
                "steps": [
                    {
                        "index": st.index,
                        "primes": list(st.primes),
                        "value": str(st.value),
                        "gap": str(st.gap),
                    }
                    for st in steps
                ],
            }
        )
        return 0
    _emit(f"d' products approaching {args.a}/{args.b} (epsilon {args.epsilon}):")
    for st in steps:
        primes = ",".join(str(p) for p in st.primes)
        _emit(
            f"  step {st.index:<3d} primes ({primes}) value {st.value} "
            f"gap {st.gap} ~ {float(st.gap):.6f}"
        )
    _emit(f"reached gap {steps[-1].gap} < {args.epsilon} in {len(steps)} steps")
    return 0


_FORMULA_DISPATCH = {
    "modular": (d_prime_modular_formula, 2, "p n"),
    "schmidt": (d_prime_schmidt_formula, 2, "p n"),
    "dihedral": (d_prime_dihedral_formula, 1, "n"),
    "heisenberg": (d_prime_heisenberg_formula, 1, "p"),
    "schmidt-section": (d_prime_schmidt_section_formula, 3, "p q r"),
    "gaussian": (gaussian_binomial, 3, "r i p"),
}


def cmd_formula(args) -> int:
    if args.family not in _FORMULA_DISPATCH:
        raise InvalidParameter(
            f"unknown family {args.family!r}; choose from {', '.join(_FORMULA_DISPATCH)}"
        )
    fn, arity, names = _FORMULA_DISPATCH[args.family]
    if len(args.params) != arity:
        raise InvalidParameter(
            f"family {args.family!r} takes {arity} parameters ({names}), "
            f"got {len(args.params)}"
        )
    value = fn(*args.params)
    if args.json:
        _emit_json(
            {
                "family": args.family,
                "params": list(args.params),
                "value": str(value),
            }
        )
    else:
        _emit(str(value))
    return 0


def cmd_sweep(args) -> int:
    corpus = build_corpus(CorpusConfig())
    chosen = [
        e
        for e in corpus
        if e.group.order <= args.max_order
        and (args.family is None or e.tag == args.family)
    ]
    use_cache = not args.no_cache
    entries = _load_cache(args.cache_path) if use_cache else {}
    reports = []
    fresh = False
    for e in chosen:
        cached = _cache_get(entries, e.spec) if use_cache else None
        if cached is not None:
            reports.append(cached)
            continue
        report = compute_report(
            e.group,
            spec=e.spec,
            want_d_star=e.group.order <= corpus.config.dstar_order_limit,
        )
        reports.append(report)
        if use_cache:
            entries[e.spec] = {
                "spec": e.spec,
                "engine": __version__,
                "saved_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
                "report": report.to_json_dict(),
            }
            fresh = True
    if fresh:
        _cache_write(args.cache_path, entries)
    if args.json:
        _emit_json([r.to_json_dict() for r in reports])
        return 0
    _emit(f"{'spec':<24s} {'order':>5s} {'|L|':>6s} {'k_':>6s} {'nu':>4s} {'d_':>10s} {'d*':>10s}")
    for r in reports:
        ds = "-" if r.d_star is None else str(r.d_star)
        _emit(
            f"{r.spec:<24s} {r.order:>5d} {r.lattice_size:>6d} {r.k_prime:>6d} "
            f"{r.nu:>4d} {str(r.d_prime):>10s} {ds:>10s}"
        )
    _emit(f"{len(reports)} groups")
    return 0


# ---------------------------------------------------------------------------
# parser

def _add_spec_flags(sp, cache: bool = True) -> None:
    sp.add_argument("spec", help="group spec, e.g. 'M(2,5)' or 'C(3) x D(8)'")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.add_argument(
        "--max-order",
        type=int,
        default=DEFAULT_MAX_ORDER,
        help=f"construction order cap (default {DEFAULT_MAX_ORDER})",
    )
    sp.add_argument(
        "--allow-slow",
        action="store_true",
        help=f"compute d* above order {DSTAR_ORDER_LIMIT}",
    )
    if cache:
        sp.add_argument("--no-cache", action="store_true", help="bypass the report cache")
        sp.add_argument(
            "--cache-path",
            default=DEFAULT_CACHE_PATH,
            help=f"cache file (default {DEFAULT_CACHE_PATH})",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dedekind",
        description="Exact subgroup-lattice closeness ratios for finite groups.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("info", help="full invariant report for a group spec")
    _add_spec_flags(sp)
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("dprime", help="subgroup-class ratio d'")
    _add_spec_flags(sp)
    sp.set_defaults(func=cmd_dprime)

    sp = sub.add_parser("dstar", help="minimum of d' over all sections")
    _add_spec_flags(sp)
    sp.set_defaults(func=cmd_dstar)

    sp = sub.add_parser("lattice", help="subgroup lattice listing or DOT diagram")
    _add_spec_flags(sp, cache=False)
    sp.add_argument("--dot", action="store_true", help="emit a Graphviz digraph")
    sp.set_defaults(func=cmd_lattice)

    sp = sub.add_parser("sections", help="census of sections H/K")
    _add_spec_flags(sp, cache=False)
    sp.set_defaults(func=cmd_sections)

    sp = sub.add_parser("verify", help="run theorem verification suites")
    sp.add_argument(
        "suites",
        nargs="*",
        metavar="suite",
        help=f"suite names or 'all' (default); known: {', '.join(SUITES)}",
    )
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.add_argument("--threads", type=int, default=1, help="corpus-stat parallelism")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("density", help="d' products approaching a target ratio")
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)
    sp.add_argument("epsilon", help="stop once the gap drops below this, e.g. 0.01")
    sp.add_argument("--prime-budget", type=int, default=500)
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("formula", help="evaluate a closed-form family value")
    sp.add_argument("family", help=", ".join(_FORMULA_DISPATCH))
    sp.add_argument("params", type=int, nargs="*")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.set_defaults(func=cmd_formula)

    sp = sub.add_parser("sweep", help="invariant table over the standard corpus")
    sp.add_argument("--family", help="restrict to one family tag, e.g. M or D")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.add_argument(
        "--max-order", type=int, default=DEFAULT_MAX_ORDER, help="skip larger groups"
    )
    sp.add_argument("--no-cache", action="store_true", help="bypass the report cache")
    sp.add_argument("--cache-path", default=DEFAULT_CACHE_PATH)
    sp.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidParameter, NotNormal, NotAnAutomorphism, NotAnAction) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        OrderCapExceeded,
        LatticeBudgetExceeded,
        IsoCapExceeded,
        BudgetExhausted,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
