"""Command-line front door.

One binary, subcommand style; numeric output is fixed at 12 significant
digits so identical inputs give byte-identical files.  Exit codes:
0 success, 1 domain refusal (for instance PST impossible or no coupler
cutoff in range), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

import numpy as np

from . import __version__
from .chains import chain_pst_verify, pst_chain, unmodulated_no_pst_scan
from .corona_lab import fidelity_vs_m, net_regularity
from .fileio import GraphFormatError, emit_csv, fmt, parse_graph_file
from .graphs import (MarkingScheme, SignedWeightedGraph, complete_graph,
                     cycle_graph, hypercube, is_balanced, path_graph)
from .qudit import (commuting_family, complete_family, cycle_family,
                    transfer_amplitude_qudit)
from .routing import HopPlan, build_network, execute_route, plan_route
from .spectral import check_pst_conditions, transfer_series
from .transmon import (coupling_report, find_cutoff, parse_coupler_config,
                       pst_time)

VERSION_COMMENT = f"pstnet {__version__}"

EXIT_OK = 0
EXIT_REFUSED = 1
EXIT_INPUT = 2


def _load_graph(spec: str) -> SignedWeightedGraph:
    """A file path, or a builtin name: kN, pN, qN, cN."""
    if os.path.exists(spec):
        return parse_graph_file(spec)
    m = re.fullmatch(r"([kpqc])(\d+)", spec.lower())
    if not m:
        raise GraphFormatError(1, f"no such file or builtin graph: {spec!r}")
    kind, num = m.group(1), int(m.group(2))
    if kind == "k":
        return complete_graph(num)
    if kind == "p":
        return path_graph(num)
    if kind == "q":
        return hypercube(num)
    return cycle_graph(num)


def _cmd_graph(args) -> int:
    g = _load_graph(args.graph)
    balanced, _ = is_balanced(g)
    info = {
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "balanced": balanced,
        "net_regularity": net_regularity(g),
        "has_labels": g.labels is not None,
        "has_markings": g.markings is not None,
    }
    if args.json:
        print(json.dumps(info, sort_keys=True))
    else:
        for key in sorted(info):
            print(f"{key}: {info[key]}")
    return EXIT_OK


def _cmd_pst(args) -> int:
    g = _load_graph(args.graph)
    rep = check_pst_conditions(g, args.src, args.dst, matrix_kind=args.matrix)
    payload = {
        "vector_condition": rep.vector_condition,
        "eigenvalue_condition": rep.eigenvalue_condition,
        "rationality": rep.rationality,
        "best_time": rep.best_time,
        "best_magnitude": rep.best_magnitude,
    }
    if args.csv:
        ts = [i * args.dt for i in range(int(args.tmax / args.dt) + 1)]
        rows = transfer_series(g, args.src, args.dst, ts, matrix_kind=args.matrix)
        emit_csv(rows, args.csv, ["t", "magnitude", "phase"], VERSION_COMMENT)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for key in sorted(payload):
            val = payload[key]
            print(f"{key}: {fmt(val) if isinstance(val, float) else val}")
    achieved = rep.eigenvalue_condition and rep.vector_condition
    if not achieved:
        print("PST impossible for this pair", file=sys.stderr)
        return EXIT_REFUSED
    return EXIT_OK


def _cmd_route(args) -> int:
    network, labeling = build_network(args.n)
    try:
        u = labeling.index_of(args.src)
        w = labeling.index_of(args.dst)
    except KeyError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    plan = plan_route(network, labeling, u, w)
    state = np.zeros(network.vertex_count, dtype=complex)
    state[u] = 1.0
    final, report = execute_route(network, plan, state)
    payload = {
        "hops": [
            {
                "source": labeling.labels[h.source],
                "target": labeling.labels[h.target],
                "duration": h.duration,
                "sub_dimension": h.plan.sub_dimension,
                "off_edges": len(h.plan.off_edges),
            }
            for h in plan.hops
        ],
        "total_time": plan.total_time,
        "magnitude": report.magnitude,
        "phase": report.phase,
    }
    if args.csv:
        # one block of rows per evolution step: initial state, then the
        # state after each hop
        rows = []
        for step in range(len(plan.hops) + 1):
            prefix = HopPlan(plan.hops[:step],
                             sum(h.duration for h in plan.hops[:step]),
                             plan.intermediate if step > 1 else None)
            snapshot = state if step == 0 else execute_route(network, prefix, state)[0]
            rows += [(step, labeling.labels[v], float(abs(snapshot[v])),
                      float(np.angle(snapshot[v])))
                     for v in range(network.vertex_count)]
        emit_csv(rows, args.csv, ["step", "vertex", "magnitude", "phase"],
                 VERSION_COMMENT)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for i, h in enumerate(payload["hops"], start=1):
            print(f"hop {i}: {h['source']} -> {h['target']} "
                  f"(Q_{h['sub_dimension']}, t={fmt(h['duration'])}, "
                  f"{h['off_edges']} edges off)")
        print(f"total_time: {fmt(payload['total_time'])}")
        print(f"magnitude: {fmt(payload['magnitude'])}")
    if report.magnitude < 1.0 - 1e-8:
        print("routing failed to reach unit fidelity", file=sys.stderr)
        return EXIT_REFUSED
    return EXIT_OK


def _cmd_chain(args) -> int:
    if args.unmodulated:
        t_star, f_star = unmodulated_no_pst_scan(args.n, args.tmax)
        rows = [(args.n, t_star, f_star)]
        header = ["n", "t_star", "f_star"]
    else:
        spec = pst_chain(args.n)
        report = chain_pst_verify(spec, math.pi / 2.0)
        rows = [(args.n, report.time, report.magnitude)]
        header = ["n", "t", "magnitude"]
    if args.csv:
        emit_csv(rows, args.csv, header, VERSION_COMMENT)
    for row in rows:
        print(",".join(fmt(x) for x in row))
    return EXIT_OK


def _cmd_corona(args) -> int:
    seed = parse_graph_file(args.seed)
    pairs = []
    for chunk in args.pairs.split(";"):
        u, v = (int(x) for x in chunk.split(","))
        pairs.append((u, v))
    scheme = MarkingScheme(args.scheme)
    rows = []
    for pair in pairs:
        table = fidelity_vs_m(seed, pair, args.m, matrix_kind=args.matrix,
                              scheme=scheme)
        for r in table.rows:
            rows.append((r.m, r.pair[0], r.pair[1], r.t_star, r.f_star,
                         r.provenance))
    header = ["m", "u", "v", "t_star", "f_star", "provenance"]
    if args.csv:
        emit_csv(rows, args.csv, header, VERSION_COMMENT)
    for row in rows:
        print(",".join(fmt(x) for x in row))
    return EXIT_OK


def _parse_family(spec: str):
    m = re.fullmatch(r"(cycle|complete):(\d+)(?::(.*))?", spec)
    if m:
        n = int(m.group(2))
        couplings = None
        if m.group(3):
            couplings = [float(x) for x in m.group(3).split(",")]
        return (cycle_family if m.group(1) == "cycle" else complete_family)(n, couplings)
    return _parse_family_file(spec)


def _parse_family_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        tokens = []
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                tokens.append(line.split())
    if not tokens or tokens[0][0] != "family":
        raise ValueError("family file must start with: family <n> <d>")
    n, d = int(tokens[0][1]), int(tokens[0][2])
    if tokens[1][0] != "couplings" or len(tokens[1]) != d + 2:
        raise ValueError("expected: couplings <J_0> ... <J_d>")
    couplings = [float(x) for x in tokens[1][1:]]
    mats = []
    i = 2
    for k in range(d + 1):
        if tokens[i][0] != "matrix" or int(tokens[i][1]) != k:
            raise ValueError(f"expected: matrix {k}")
        i += 1
        rows = []
        for _ in range(n):
            rows.append([float(x) for x in tokens[i]])
            i += 1
        mats.append(np.array(rows))
    return commuting_family(mats, couplings)


def _cmd_qudit(args) -> int:
    family = _parse_family(args.family)
    f = transfer_amplitude_qudit(family, args.target, args.t)
    condition = abs(abs(f) - 1.0) <= 1e-8
    payload = {
        "target": args.target,
        "t": args.t,
        "magnitude": abs(f),
        "phase": float(np.angle(f)),
        "pst_condition": condition,
    }
    if args.csv:
        ts = np.linspace(0.0, args.tmax, args.samples)
        rows = []
        for t in ts:
            total = sum(abs(transfer_amplitude_qudit(family, j, t)) ** 2
                        for j in range(family.site_count))
            rows.append((float(t), float(total)))
        emit_csv(rows, args.csv, ["t", "total_probability"], VERSION_COMMENT)
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for key in sorted(payload):
            val = payload[key]
            print(f"{key}: {fmt(val) if isinstance(val, float) else val}")
    return EXIT_OK


def _cmd_transmon(args) -> int:
    cfg = parse_coupler_config(args.config)
    if args.sweep:
        m = re.fullmatch(r"wc:([\d.]+):([\d.]+):([\d.]+)", args.sweep)
        if not m:
            raise ValueError("sweep must look like wc:4.5:9:0.01")
        lo, hi, step = (float(x) for x in m.groups())
        rows = []
        wc = lo
        import warnings
        while wc <= hi + 1e-12:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                rep = coupling_report(cfg.with_coupler_frequency(wc))
            t = pst_time(rep.g_brwa, hops=1) if rep.g_brwa else math.inf
            rows.append((wc, rep.delta_i, rep.g_rwa, rep.g_brwa, t))
            wc = round(wc + step, 12)
        if args.csv:
            emit_csv(rows, args.csv, ["omega_c", "delta_i", "g_rwa", "g_brwa",
                                      "t_pst_ns"], VERSION_COMMENT)
        print(f"swept {len(rows)} points "
              "(angular-GHz convention: g in rad/ns, t in ns)")
        return EXIT_OK
    try:
        cut = find_cutoff(cfg, (args.wc_min, args.wc_max))
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return EXIT_REFUSED
    payload = {
        "omega_c_off": cut.omega_c_off,
        "delta_i": cut.delta_i,
        "residual": cut.residual,
    }
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for key in sorted(payload):
            print(f"{key}: {fmt(payload[key])}")
        print("convention: angular frequencies in GHz (rad/ns)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pstnet")
    parser.add_argument("--version", action="version", version=VERSION_COMMENT)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graph", help="summarize a graph file or builtin")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("pst", help="PST conditions and transfer scan")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", dest="src", type=int, required=True)
    p.add_argument("--to", dest="dst", type=int, required=True)
    p.add_argument("--matrix", choices=["adjacency", "laplacian"],
                   default="adjacency")
    p.add_argument("--tmax", type=float, default=20.0)
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--csv")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_pst)

    p = sub.add_parser("route", help="two-hop routing on a built network")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--csv")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_route)

    p = sub.add_parser("chain", help="engineered or uniform chain transfer")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--unmodulated", action="store_true")
    p.add_argument("--tmax", type=float, default=200.0)
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("corona", help="fidelity vs corona order")
    p.add_argument("--seed", required=True)
    p.add_argument("--pairs", required=True,
                   help="semicolon-separated u,v pairs, e.g. 0,2;1,3")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--matrix", choices=["adjacency", "laplacian"],
                   default="adjacency")
    p.add_argument("--scheme", choices=["canonical", "plurality", "explicit"],
                   default="canonical")
    p.add_argument("--csv")
    p.set_defaults(func=_cmd_corona)

    p = sub.add_parser("qudit", help="qudit transfer on a commuting family")
    p.add_argument("--family", required=True,
                   help="family file, or cycle:<n>[:J0,..] / complete:<n>[:J0,..]")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--t", type=float, default=math.pi / 2.0)
    p.add_argument("--tmax", type=float, default=10.0)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--csv")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_qudit)

    p = sub.add_parser("transmon", help="tunable-coupler report and sweep")
    p.add_argument("--config", required=True)
    p.add_argument("--sweep", help="wc:<lo>:<hi>:<step>")
    p.add_argument("--wc-min", type=float, default=4.5)
    p.add_argument("--wc-max", type=float, default=9.0)
    p.add_argument("--csv")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_transmon)
    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GraphFormatError, FileNotFoundError, ValueError) as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))
