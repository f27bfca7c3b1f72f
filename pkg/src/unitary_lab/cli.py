"""Command-line front end.

Subcommands:
    groups list     catalog names, orders, |G{2}|
    compute         one result per (group, field)
    theta-table     theta across catalog 2-groups x fields
    verify          run a named verification suite

Exit codes: 0 success, 1 usage or refused computation, 2 internal
inconsistency (a proved identity failed). Identical configurations produce
byte-identical JSON; wall-clock timings only appear under --timings.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys
import time
from dataclasses import dataclass

from .errors import InternalInconsistency, SearchSpaceTooLarge, UnitaryLabError
from .finite_field import FieldSpec, parse_field_literal
from .group_algebra import canonical_star
from .group_catalog import build, catalog_entries
from .group_core import Group, validate_group
from .unitary import (
    DEFAULT_SEARCH_CAP,
    UnitaryResult,
    theta,
    theta_from_order,
    unitary_enumerate_oracle,
    unitary_order_char2,
    unitary_order_odd,
)
from .verify import SUITES, run_suite


class UsageError(Exception):
    def __init__(self, message):
        self.message = message
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """A validated invocation: what to compute, how, and under which caps."""

    command: str
    groups: tuple[str, ...] = ()
    group_files: tuple[str, ...] = ()
    fields: tuple[str, ...] = ()
    method: str = "auto"
    format: str = "json"
    max_order: int = 16
    p: int = 2
    max_witnesses: int = 8
    search_cap: int = DEFAULT_SEARCH_CAP
    seed: int = 0
    timings: bool = False

    def __post_init__(self):
        if self.search_cap <= 0 or self.max_witnesses < 0 or self.max_order <= 0:
            raise UsageError("caps must be positive")


def _config_from(args, command: str) -> RunConfig:
    return RunConfig(
        command=command,
        groups=tuple(getattr(args, "group", None) or ()),
        group_files=tuple(getattr(args, "group_file", None) or ()),
        fields=tuple(getattr(args, "field", None) or ()),
        method=getattr(args, "method", "auto"),
        format=getattr(args, "format", "json"),
        max_order=getattr(args, "max_order", 16),
        p=getattr(args, "p", 2),
        max_witnesses=getattr(args, "max_witnesses", 8),
        search_cap=getattr(args, "search_cap", DEFAULT_SEARCH_CAP),
        seed=getattr(args, "seed", 0),
        timings=getattr(args, "timings", False),
    )


@dataclass
class UnitaryReport:
    """One computed cell plus its cross-check and timing."""

    result: UnitaryResult
    cross_check: dict | None
    elapsed_s: float

    def to_dict(self, include_timings: bool = False) -> dict:
        out = self.result.to_dict()
        out["cross_check"] = self.cross_check
        if include_timings:
            out["elapsed_s"] = round(self.elapsed_s, 3)
        return out


def _worker_count() -> int:
    raw = os.environ.get("UNITARY_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_cells(fn, cells):
    workers = _worker_count()
    if workers == 1 or len(cells) <= 1:
        return [fn(cell) for cell in cells]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, cells))


def _resolve_groups(config: RunConfig) -> list[Group]:
    groups = []
    for name in config.groups:
        groups.append(build(name))
    for path in config.group_files:
        with open(path) as fh:
            payload = json.load(fh)
        group = validate_group(payload["table"], id=payload.get("id", path))
        if "n" in payload and payload["n"] != group.n:
            raise UsageError(f"{path}: declared n={payload['n']} but table has {group.n} rows")
        groups.append(group)
    if not groups:
        raise UsageError("no group given; use --group or --group-file")
    return groups


def _resolve_fields(config: RunConfig) -> list[FieldSpec]:
    if not config.fields:
        raise UsageError("no field given; use --field p^m (repeatable)")
    return [parse_field_literal(text) for text in config.fields]


def _compute_cell(group: Group, field: FieldSpec, method: str,
                  search_cap: int, max_witnesses: int) -> UnitaryReport:
    start = time.perf_counter()
    cross = None
    if method == "auto":
        method = "formula" if field.p != 2 else "recursive"
        if method == "recursive" and field.order ** (group.n - 1) <= search_cap:
            cross = "pending"
    if method == "formula":
        if field.p == 2:
            raise UsageError("--method formula applies to odd characteristic only")
        order = unitary_order_odd(group, canonical_star(group), field)
        result = UnitaryResult(group.id, field, "*", "formula", order,
                               theta_from_order(order, field, group))
    elif method == "recursive":
        if field.p != 2:
            raise UsageError("--method recursive applies to characteristic two only")
        result = unitary_order_char2(group, field, search_cap=search_cap)
    elif method == "oracle":
        result = unitary_enumerate_oracle(group, canonical_star(group), field,
                                          search_cap=search_cap,
                                          max_witnesses=max_witnesses)
    else:
        raise UsageError(f"unknown method {method!r}")
    if cross == "pending":
        oracle = unitary_enumerate_oracle(group, canonical_star(group), field,
                                          search_cap=search_cap, max_witnesses=0)
        consistent = oracle.order == result.order
        cross = {"oracle_order": str(oracle.order), "consistent": consistent}
        if not consistent:
            raise InternalInconsistency(
                f"recursive order {result.order} != oracle order {oracle.order} "
                f"for {group.id} over {field.literal()}")
    return UnitaryReport(result, cross, time.perf_counter() - start)


def _render_table(headers: list[str], rows: list[list[str]], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(headers)]
        lines += [",".join(row) for row in rows]
        return "\n".join(lines)
    if fmt == "markdown":
        lines = ["| " + " | ".join(headers) + " |",
                 "| " + " | ".join("---" for _ in headers) + " |"]
        lines += ["| " + " | ".join(row) + " |" for row in rows]
        return "\n".join(lines)
    raise UsageError(f"unknown format {fmt!r}")


def cmd_groups(config: RunConfig) -> int:
    entries = catalog_entries(config.max_order, config.p)
    rows = []
    for entry in entries:
        group = entry.build()
        rows.append({
            "name": entry.name,
            "order": group.n,
            "order_two": len(group.special_sets().order_two),
        })
    if config.format == "json":
        print(json.dumps(rows, sort_keys=True))
    else:
        table = [[r["name"], str(r["order"]), str(r["order_two"])] for r in rows]
        print(_render_table(["group", "order", "|G{2}|"], table, config.format))
    return 0


def cmd_compute(config: RunConfig) -> int:
    groups = _resolve_groups(config)
    fields = _resolve_fields(config)
    cells = [(g, f) for g in groups for f in fields]
    reports = _map_cells(
        lambda cell: _compute_cell(cell[0], cell[1], config.method,
                                   config.search_cap, config.max_witnesses),
        cells)
    reports.sort(key=lambda rep: (rep.result.group_id, rep.result.field.literal()))
    if config.format == "json":
        payload = [rep.to_dict(include_timings=config.timings) for rep in reports]
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        rows = []
        for rep in reports:
            cross = "-" if rep.cross_check is None else str(rep.cross_check["consistent"])
            rows.append([rep.result.group_id, rep.result.field.literal(),
                         rep.result.method, str(rep.result.order),
                         str(rep.result.theta), cross])
        print(_render_table(["group", "field", "method", "order", "theta", "cross_check"],
                            rows, config.format))
    return 0


def cmd_theta_table(config: RunConfig) -> int:
    if not config.fields:
        config = RunConfig(**{**config.__dict__, "fields": ("2^1", "2^2")})
    fields = _resolve_fields(config)
    for f in fields:
        if f.p != 2:
            raise UsageError(f"theta-table takes characteristic-two fields, got {f.literal()}")
    entries = catalog_entries(config.max_order, 2)

    def cell(pair):
        entry, f = pair
        group = built[entry.name]
        try:
            return str(theta(group, f, search_cap=config.search_cap))
        except SearchSpaceTooLarge as exc:
            return {"unavailable": str(exc)}

    built = {entry.name: entry.build() for entry in entries}
    cells = [(entry, f) for entry in entries for f in fields]
    values = _map_cells(cell, cells)
    table = {}
    for (entry, f), value in zip(cells, values):
        table.setdefault(entry.name, {})[f.literal()] = value

    rows = []
    for entry in entries:
        group = built[entry.name]
        commuting = any(
            group.is_pairwise_commuting(group.square_roots(c))
            for c in group.special_sets().central_order_two
        )
        cells_here = table[entry.name]
        known = [v for v in cells_here.values() if isinstance(v, str)]
        agrees = len(set(known)) == 1 if len(known) == len(fields) and known else None
        rows.append({
            "group": entry.name,
            "order": group.n,
            "cells": cells_here,
            "t_c_commutative": commuting,
            "theta_agrees": agrees,
        })
    if config.format == "json":
        print(json.dumps({"fields": [f.literal() for f in fields], "rows": rows},
                         sort_keys=True, indent=2))
    else:
        headers = ["group", "order"] + [f.literal() for f in fields] + \
                  ["T_c commutative", "theta agrees"]
        body = []
        for row in rows:
            cells_txt = [row["cells"][f.literal()] if isinstance(row["cells"][f.literal()], str)
                         else "—" for f in fields]
            body.append([row["group"], str(row["order"])] + cells_txt +
                        [str(row["t_c_commutative"]),
                         "—" if row["theta_agrees"] is None else str(row["theta_agrees"])])
        print(_render_table(headers, body, config.format))
    return 0


def cmd_verify(args, config: RunConfig) -> int:
    results = run_suite(args.suite, seed=config.seed, search_cap=config.search_cap)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"[{status}] {res.suite}/{res.name}: expected={res.expected} measured={res.measured}")
        failed += 0 if res.passed else 1
    print(f"{args.suite}: {len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 2


def _build_parser() -> _Parser:
    parser = _Parser(prog="unitary-lab",
                     description="orders of unitary subgroups of modular group algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    groups_p = sub.add_parser("groups", help="catalog browsing")
    groups_p.add_argument("action", choices=["list"])
    groups_p.add_argument("--max-order", type=int, default=16)
    groups_p.add_argument("--p", type=int, default=2)
    groups_p.add_argument("--format", choices=["json", "csv", "markdown"], default="markdown")

    compute_p = sub.add_parser("compute", help="compute |V(FG)| per (group, field)")
    compute_p.add_argument("--group", action="append", help="catalog name (repeatable)")
    compute_p.add_argument("--group-file", action="append",
                           help="JSON file {id, n, table} (repeatable)")
    compute_p.add_argument("--field", action="append", help="field literal p^m (repeatable)")
    compute_p.add_argument("--method", choices=["auto", "formula", "recursive", "oracle"],
                           default="auto")
    compute_p.add_argument("--format", choices=["json", "csv", "markdown"], default="json")
    compute_p.add_argument("--max-witnesses", type=int, default=8)
    compute_p.add_argument("--search-cap", type=int, default=DEFAULT_SEARCH_CAP)
    compute_p.add_argument("--seed", type=int, default=0)
    compute_p.add_argument("--timings", action="store_true")

    ttab_p = sub.add_parser("theta-table", help="theta across catalog 2-groups x fields")
    ttab_p.add_argument("--field", action="append", help="field literal 2^m (repeatable)")
    ttab_p.add_argument("--max-order", type=int, default=16)
    ttab_p.add_argument("--format", choices=["json", "csv", "markdown"], default="markdown")
    ttab_p.add_argument("--search-cap", type=int, default=DEFAULT_SEARCH_CAP)
    ttab_p.add_argument("--seed", type=int, default=0)

    verify_p = sub.add_parser("verify", help="run a named verification suite")
    verify_p.add_argument("--suite", required=True, choices=sorted(SUITES))
    verify_p.add_argument("--search-cap", type=int, default=DEFAULT_SEARCH_CAP)
    verify_p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from(args, args.command)
        if args.command == "groups":
            return cmd_groups(config)
        if args.command == "compute":
            return cmd_compute(config)
        if args.command == "theta-table":
            return cmd_theta_table(config)
        if args.command == "verify":
            return cmd_verify(args, config)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return 1
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2
    except (UnitaryLabError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
