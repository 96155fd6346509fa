"""Command-line front end: build, decode, analyze, simulate.

Exit codes: 0 on success, 1 when a decode ends with a nonzero residual,
2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import alist
from .codes import CSSCode, load_code, parse_keyvalue
from .collab import QCCNRConfig, qccnr_decode
from .gf2 import SparseBinaryMatrix, support, syndrome
from .minsum import DecoderConfig, decode
from .noise import DecoderSpec, NoiseModel, run_memory_experiment, write_csv
from .tanner import (FIXTURES, TannerGraph, TrappingSetKind, build_ct, find_ims,
                     leaf_checks, limiting_checks, qubit_separation)

EXIT_OK = 0
EXIT_DECODE_FAILURE = 1
EXIT_USAGE = 2


class CliError(Exception):
    """Configuration or usage problem; maps to exit code 2."""


def _parse_df_schedule(text: str) -> tuple[tuple[int, int, int], ...]:
    """Parse '1-100:6,101-200:1' into ((1,100,6), (101,200,1))."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            rng, df = part.split(":")
            lo, hi = rng.split("-")
            out.append((int(lo), int(hi), int(df)))
        except ValueError as exc:
            raise CliError(f"bad df schedule segment {part!r} "
                           f"(expected 'LO-HI:DF')") from exc
    if not out:
        raise CliError("empty df schedule")
    return tuple(out)


def _read_syndrome(text: str, rows: int) -> np.ndarray:
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text().strip()
        except OSError as exc:
            raise CliError(f"cannot read syndrome file: {exc}") from exc
    text = text.replace(" ", "").replace(",", "")
    if not set(text) <= {"0", "1"}:
        raise CliError("syndrome must be a bit string")
    if len(text) != rows:
        raise CliError(f"syndrome has {len(text)} bits, matrix has {rows} rows")
    return np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")


def _side_matrix(code: CSSCode, side: str) -> SparseBinaryMatrix:
    if side == "z":
        return code.h_z
    if side == "x":
        return code.h_x
    raise CliError("side must be 'x' or 'z'")


def _resolve_code(args):
    source = getattr(args, "config", None) or getattr(args, "code", None)
    if not source:
        raise CliError("need --code or --config")
    return load_code(source)


def cmd_build(args) -> int:
    code = _resolve_code(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    alist.write_alist(code.h_x, out / "h_x.alist")
    alist.write_alist(code.h_z, out / "h_z.alist")
    meta = {
        "name": code.name,
        "n": code.n,
        "k": code.k,
        "rows_x": code.h_x.rows,
        "rows_z": code.h_z.rows,
        "css_valid": True,
        "logical_count": len(code.logical_x),
    }
    (out / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    print(f"{code.name}: n={code.n} k={code.k} "
          f"h_x {code.h_x.rows}x{code.h_x.cols}, h_z {code.h_z.rows}x{code.h_z.cols}")
    print(f"wrote {out / 'h_x.alist'}, {out / 'h_z.alist'}, {out / 'meta.json'}")
    return EXIT_OK


def cmd_decode(args) -> int:
    if args.matrix:
        H = alist.read_alist(args.matrix)
    elif args.code or args.config:
        H = _side_matrix(_resolve_code(args), args.side)
    else:
        raise CliError("decode needs --matrix, --code, or --config")
    s = _read_syndrome(args.syndrome, H.rows)
    report: dict = {"algorithm": args.algorithm}
    if args.algorithm == "bp":
        cfg = DecoderConfig(max_iterations=args.max_iter,
                            scaling_factor=args.alpha,
                            channel_error_prob=args.p)
        outcome = decode(H, s, cfg, trace=True)
        estimate = outcome.hard_decision
        resid = s ^ syndrome(H, estimate)
        report["main"] = {
            "iterations": outcome.iterations_used,
            "stalled": False,
            "unsat_per_iteration": [int((s ^ pred).sum())
                                    for pred in outcome.per_iteration_syndrome],
        }
        converged = outcome.converged
    else:
        cfg = QCCNRConfig(max_iter=args.max_iter, max_sub=args.max_sub,
                          fr=args.fr, tol=args.tol,
                          df_schedule=_parse_df_schedule(args.df_schedule),
                          scaling_factor=args.alpha, channel_error_prob=args.p,
                          rng_seed=args.seed)
        result = qccnr_decode(H, s, cfg)
        estimate = result.estimate
        resid = result.residual_syndrome
        main_trace = result.main_outcome.per_iteration_syndrome or []
        report["main"] = {
            "iterations": result.main_outcome.iterations_used,
            "stalled": result.stalled,
            "unsat_per_iteration": [int((s ^ pred).sum()) for pred in main_trace],
        }
        report["rounds"] = [
            {"round": r.round_index, "df": r.df, "removed_checks": r.removed_checks,
             "unsat_before": r.unsat_before, "unsat_after": r.unsat_after,
             "sub_iterations": r.sub_iterations, "main_iterations": r.main_iterations}
            for r in result.trace
        ]
        report["sub_rounds_used"] = result.sub_rounds_used
        report["iterations_total"] = result.iterations_total
        converged = result.converged
    report["converged"] = bool(converged)
    report["estimate_support"] = support(estimate)
    report["residual_support"] = support(resid)
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(report, indent=2) + "\n")
    print(f"estimate support: {report['estimate_support']}")
    print(f"converged: {report['converged']}")
    return EXIT_OK if converged else EXIT_DECODE_FAILURE


def _ts_report(g: TannerGraph, H: SparseBinaryMatrix, spec, error_support,
               ct_depth: int) -> dict:
    e = np.zeros(H.cols, dtype=np.uint8)
    e[list(error_support)] = 1
    s = syndrome(H, e)
    unsat = support(s)
    report: dict = {
        "error_support": sorted(int(q) for q in error_support),
        "syndrome_support": unsat,
    }
    if spec is not None:
        report["trapping_set"] = {
            "kind": spec.kind.value,
            "label": list(spec.label),
            "qubits": sorted(spec.qubits),
            "odd_checks": sorted(spec.odd_checks),
        }
        if spec.partition:
            report["trapping_set"]["partition"] = [sorted(h) for h in spec.partition]
        report["separations"] = {str(q): qubit_separation(g, q, spec, k_max=4)
                                 for q in sorted(spec.qubits)}
        if spec.kind is TrappingSetKind.QTS:
            report["limiting_checks"] = {str(q): sorted(limiting_checks(g, q, spec))
                                         for q in sorted(spec.qubits)}
        root = min(spec.qubits)
        tree = build_ct(g, "qubit", root, ct_depth)
        report["computation_tree"] = {
            "root": {"kind": "qubit", "index": root},
            "levels": [
                {"level": lv,
                 "checks": sorted({nd.index for nd in tree.level_nodes(lv, "check")}),
                 "qubits": sorted({nd.index for nd in tree.level_nodes(lv, "qubit")})}
                for lv in range(1, ct_depth + 1)
            ],
        }
    im_tables = {}
    qcnr_candidates = {}
    for root in unsat:
        leaves = leaf_checks(g, root)
        table = find_ims(g, unsat, leaves)
        im_tables[str(root)] = {str(c): v for c, v in sorted(table.check_values.items())}
        qcnr_candidates[str(root)] = table.max_checks()
    report["im_tables"] = im_tables
    report["qcnr_candidates"] = qcnr_candidates
    report["cnr_candidates"] = sorted({c for r in unsat for c in leaf_checks(g, r)})
    return report


def cmd_analyze(args) -> int:
    code = _resolve_code(args)
    H = _side_matrix(code, args.side)
    g = TannerGraph(H)
    spec = None
    if args.fixture:
        if args.fixture not in FIXTURES:
            raise CliError(f"unknown fixture {args.fixture!r} "
                           f"(available: {', '.join(sorted(FIXTURES))})")
        spec = FIXTURES[args.fixture]()
        error_support = sorted(spec.partition[0]) if spec.partition else sorted(spec.qubits)
    elif args.error:
        try:
            error_support = [int(t) for t in args.error.replace(",", " ").split()]
        except ValueError as exc:
            raise CliError("--error expects comma-separated qubit indices") from exc
    else:
        error_support = []
    report = {"code": code.name, "side": args.side}
    report.update(_ts_report(g, H, spec, error_support, args.ct_depth))
    text = json.dumps(report, indent=2)
    if args.out and args.out != "-":
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if args.dot:
        _write_dot(g, spec, error_support, Path(args.dot))
    return EXIT_OK


def _write_dot(g: TannerGraph, spec, error_support, path: Path) -> None:
    qubits = set(spec.qubits) if spec else set(error_support)
    checks: set[int] = set()
    for q in qubits:
        checks.update(int(c) for c in g.qubit_neighbors[q])
    lines = ["graph ts {", "  node [fontsize=10];"]
    for q in sorted(qubits):
        lines.append(f'  v{q} [shape=circle, label="v{q}"];')
    for c in sorted(checks):
        lines.append(f'  c{c} [shape=box, label="c{c}"];')
    for q in sorted(qubits):
        for c in g.qubit_neighbors[q]:
            lines.append(f"  v{q} -- c{int(c)};")
    lines.append("}")
    path.write_text("\n".join(lines) + "\n")


def _sim_config(path: str) -> dict:
    try:
        cfg = parse_keyvalue(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read simulation config: {exc}") from exc
    required = ["code", "decoder", "noise", "p", "shots", "seed", "out"]
    missing = [k for k in required if k not in cfg]
    if missing:
        raise CliError(f"simulation config missing keys: {', '.join(missing)}")
    return cfg


def cmd_simulate(args) -> int:
    cfg = _sim_config(args.config)
    try:
        shots = int(cfg["shots"])
        seed = args.seed if args.seed is not None else int(cfg["seed"])
        p_values = [float(t) for t in cfg["p"].split()]
        model = NoiseModel(kind=cfg["noise"], p=p_values[0] if p_values else 0.0)
        spec = DecoderSpec(
            name=cfg["decoder"],
            max_iter=int(cfg.get("max_iter", 100)),
            scaling_factor=float(cfg.get("scaling_factor", 0.625)),
            max_sub=int(cfg.get("max_sub", 100)),
            fr=int(cfg.get("fr", 200)),
            tol=int(cfg.get("tol", 11)),
            df_schedule=_parse_df_schedule(cfg.get("df_schedule", "1-100:6,101-200:1")),
        )
    except (ValueError, CliError) as exc:
        raise CliError(f"bad simulation config: {exc}") from exc
    if shots < 1:
        raise CliError("shots must be at least 1")
    if not p_values:
        raise CliError("empty p grid")
    code = load_code(cfg["code"])
    threads = args.threads if args.threads else int(cfg.get("threads", 1))
    keep = bool(cfg.get("trace_out"))
    summaries = run_memory_experiment(code, spec, model, p_values, shots, seed,
                                      threads=threads, keep_records=keep)
    out = args.out or cfg["out"]
    write_csv(summaries, out)
    if keep:
        traces = [{"p": s.p,
                   "shots": [{"shot": r.shot, "seed": r.seed,
                              "x_support": r.x_support, "z_support": r.z_support,
                              "x_class": r.x_class, "z_class": r.z_class}
                             for r in (s.records or [])]}
                  for s in summaries]
        Path(cfg["trace_out"]).write_text(json.dumps(traces, indent=2) + "\n")
    print(f"{'p':>8} {'shots':>7} {'failures':>9} {'ler':>12} {'stderr':>12} {'sec':>8}")
    for s in summaries:
        print(f"{s.p:>8.4g} {s.shots:>7d} {s.failures:>9d} "
              f"{s.ler:>12.4g} {s.stderr:>12.4g} {s.seconds:>8.2f}")
    print(f"wrote {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qldpc-cnr",
                                     description="Quantum LDPC decoding toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct a code and export alist files")
    p_build.add_argument("--code", help="built-in name (e.g. ghp-882-24) or config path")
    p_build.add_argument("--config", help="code definition file")
    p_build.add_argument("--out", required=True, help="output directory")
    p_build.set_defaults(func=cmd_build)

    p_dec = sub.add_parser("decode", help="decode one syndrome")
    p_dec.add_argument("--matrix", help="parity-check matrix in alist format")
    p_dec.add_argument("--code", help="built-in code name or config path")
    p_dec.add_argument("--config", help="code definition file")
    p_dec.add_argument("--side", default="z", choices=["x", "z"],
                       help="which check matrix of the code to use")
    p_dec.add_argument("--syndrome", required=True,
                       help="bit string, or @FILE to read one from a file")
    p_dec.add_argument("--algorithm", default="bp", choices=["bp", "qccnr"])
    p_dec.add_argument("--p", type=float, default=0.03, help="channel error probability")
    p_dec.add_argument("--alpha", "--scaling-factor", dest="alpha", type=float,
                       default=0.625, help="min-sum scaling factor")
    p_dec.add_argument("--max-iter", type=int, default=100)
    p_dec.add_argument("--max-sub", type=int, default=100)
    p_dec.add_argument("--fr", type=int, default=200, help="max sub-decoding rounds")
    p_dec.add_argument("--tol", type=int, default=11, help="stall tolerance")
    p_dec.add_argument("--df-schedule", default="1-100:6,101-200:1")
    p_dec.add_argument("--seed", type=int, default=0)
    p_dec.add_argument("--json-out", help="write a JSON result dump (with trace)")
    p_dec.set_defaults(func=cmd_decode)

    p_an = sub.add_parser("analyze", help="trapping-set and IM analysis report")
    p_an.add_argument("--code", default="ghp-882-24")
    p_an.add_argument("--config", help="code definition file")
    p_an.add_argument("--side", default="z", choices=["x", "z"])
    p_an.add_argument("--fixture", help="shipped trapping-set fixture "
                                        f"({', '.join(sorted(FIXTURES))})")
    p_an.add_argument("--error", help="comma-separated qubit indices to inject")
    p_an.add_argument("--ct-depth", type=int, default=3)
    p_an.add_argument("--out", default="-", help="JSON output path, '-' for stdout")
    p_an.add_argument("--dot", help="also write a DOT file of the subgraph")
    p_an.set_defaults(func=cmd_analyze)

    p_sim = sub.add_parser("simulate", help="run a memory experiment from a config")
    p_sim.add_argument("--config", required=True)
    p_sim.add_argument("--out", help="override the config's output CSV path")
    p_sim.add_argument("--threads", type=int, default=0,
                       help="shot-level parallelism (overrides config)")
    p_sim.add_argument("--seed", type=int, help="override the config's seed")
    p_sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
