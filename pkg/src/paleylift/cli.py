"""Command-line front-end.

Each builder command persists every artifact it produces plus a
manifest.json recording the command line, input/output content digests,
and per-stage timings.  Artifact bytes are deterministic for identical
inputs; the manifest's timing block is a run log, not an artifact.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 search budget exhaustion.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import css, embedding, fields, graphs, paley, voltage
from .gf2 import BinaryMatrix, multiply, rank
from .graphs import SearchBudgetExceeded

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _sha256(path: Path) -> str:
    return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(out_dir: Path, argv: list[str], inputs: list[Path],
                    outputs: list[Path], timings: dict[str, float]) -> None:
    manifest = {
        "command": argv,
        "inputs": {str(p): _sha256(p) for p in inputs},
        "outputs": {str(p): _sha256(p) for p in outputs},
        "timings": {k: round(v, 6) for k, v in timings.items()},
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )


def _matrix_to_alist(m: BinaryMatrix) -> str:
    """MacKay alist export (unpadded): columns first, 1-based indices."""
    cols = [[i + 1 for i in range(m.rows) if m.entry(i, j)] for j in range(m.cols)]
    rows = [[j + 1 for j in range(m.cols) if m.entry(i, j)] for i in range(m.rows)]
    lines = [
        f"{m.cols} {m.rows}",
        f"{max((len(c) for c in cols), default=0)} {max((len(r) for r in rows), default=0)}",
        " ".join(str(len(c)) for c in cols),
        " ".join(str(len(r)) for r in rows),
    ]
    lines += [" ".join(map(str, c)) for c in cols]
    lines += [" ".join(map(str, r)) for r in rows]
    return "\n".join(lines) + "\n"


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _parse_modulus(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(","))


def _load_graph(path: Path):
    try:
        return graphs.read_graph(path)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise _CliInputError(f"bad graph file {path}: {exc}") from exc


class _CliInputError(Exception):
    """Malformed user-supplied file or option combination."""


# -- commands -------------------------------------------------------------------


def cmd_lift(args: argparse.Namespace, argv: list[str]) -> int:
    if args.t < 3:
        return _usage_error(f"t must be at least 3, got {args.t}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    lifted = voltage.lift(voltage.build_voltage_graph(args.t))
    block = voltage.block_adjacency(args.t)
    timings["build"] = time.perf_counter() - t0
    if graphs.adjacency_matrix(lifted) != block:
        print("error: lift adjacency disagrees with the closed-form blocks",
              file=sys.stderr)
        return EXIT_VERIFICATION
    t0 = time.perf_counter()
    outputs = []
    gpath = out / "graph.json"
    graphs.write_graph(lifted, gpath)
    outputs.append(gpath)
    apath = out / "adjacency.txt"
    apath.write_text(block.to_text())
    outputs.append(apath)
    if args.fmt == "alist":
        al = out / "adjacency.alist"
        al.write_text(_matrix_to_alist(block))
        outputs.append(al)
    timings["write"] = time.perf_counter() - t0
    _write_manifest(out, argv, [], outputs, timings)
    print(f"lift t={args.t}: {lifted.vertex_count} vertices, "
          f"{lifted.edge_count} edges -> {out}")
    return EXIT_OK


def cmd_paley(args: argparse.Namespace, argv: list[str]) -> int:
    try:
        modulus = _parse_modulus(args.modulus) if args.modulus else None
        field = fields.make_field(args.p, args.r, modulus)
        built = paley.build_paley(field)
    except (ValueError, fields.FieldConstructionError) as exc:
        return _usage_error(str(exc))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    outputs = []
    gpath = out / "graph.json"
    graphs.write_graph(built.graph, gpath)
    outputs.append(gpath)
    adj = graphs.adjacency_matrix(built.graph)
    apath = out / "adjacency.txt"
    apath.write_text(adj.to_text())
    outputs.append(apath)
    if args.fmt == "alist":
        al = out / "adjacency.alist"
        al.write_text(_matrix_to_alist(adj))
        outputs.append(al)
    timings["write"] = time.perf_counter() - t0
    _write_manifest(out, argv, [], outputs, timings)
    print(f"paley {field.order}: {built.graph.vertex_count} vertices, "
          f"{built.graph.edge_count} edges -> {out}")
    return EXIT_OK


def cmd_code(args: argparse.Namespace, argv: list[str]) -> int:
    if (args.rotation is None) == (not args.algebraic):
        return _usage_error("exactly one of --rotation or --algebraic is required")
    if args.algebraic and args.target_k is None:
        return _usage_error("--algebraic requires --target-k")
    graph_path = Path(args.graph)
    if not graph_path.exists():
        return _usage_error(f"graph file {graph_path} not found")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    try:
        graph = _load_graph(graph_path)
        inputs = [graph_path]
        if args.rotation:
            rot_path = Path(args.rotation)
            if not rot_path.exists():
                return _usage_error(f"rotation file {rot_path} not found")
            try:
                rotation = embedding.read_rotation(rot_path, graph)
            except (ValueError, KeyError, json.JSONDecodeError) as exc:
                return _usage_error(f"bad rotation file {rot_path}: {exc}")
            inputs.append(rot_path)
            code = css.build_code_embedding(graph, rotation, family=args.family,
                                            kprime=args.kprime)
        else:
            code = css.build_code_algebraic(graph, args.target_k,
                                            family=args.family,
                                            kprime=args.kprime)
    except (_CliInputError, ValueError) as exc:
        return _usage_error(str(exc))
    timings["build"] = time.perf_counter() - t0
    out = Path(args.out)
    t0 = time.perf_counter()
    outputs = css.write_bundle(code, out)
    if args.fmt == "alist":
        for name, mat in (("hx", code.hx), ("hz", code.hz)):
            p = out / f"{name}.alist"
            p.write_text(_matrix_to_alist(mat))
            outputs.append(p)
    timings["write"] = time.perf_counter() - t0
    _write_manifest(out, argv, inputs, outputs, timings)
    print(f"code [[{code.n},{code.k},?]] mode={code.mode} -> {out}")
    return EXIT_OK


def cmd_distance(args: argparse.Namespace, argv: list[str]) -> int:
    bundle = Path(args.bundle)
    if not (bundle / "code.json").exists():
        return _usage_error(f"{bundle} is not a code bundle (code.json missing)")
    try:
        code = css.read_bundle(bundle)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        return _usage_error(f"bad bundle {bundle}: {exc}")
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    try:
        report = css.distance_search(code, args.max_weight,
                                     enumeration_budget=args.budget)
    except ValueError as exc:
        return _usage_error(str(exc))
    timings["search"] = time.perf_counter() - t0
    css.apply_distance_report(code, report)
    outputs = css.write_bundle(code, bundle)
    for side, witness in (("dz", report.dz_witness), ("dx", report.dx_witness)):
        if witness is not None:
            p = bundle / f"{side}_witness.json"
            p.write_text(json.dumps(
                {"side": side[1].upper(), "weight": len(witness),
                 "support": list(witness)},
                indent=2, sort_keys=True) + "\n")
            outputs.append(p)
    _write_manifest(bundle, argv, [], outputs, timings)
    print(f"distance: {report.conclusion} (searched weight <= {report.searched_weight})")
    return EXIT_OK


def cmd_table(args: argparse.Namespace, argv: list[str]) -> int:
    start = 1 if args.family == "voltage" else 0
    if args.kprime_max < start:
        return _usage_error(
            f"kprime-max must be at least {start} for family {args.family}"
        )
    rows = [css.family_parameters(args.family, kp)
            for kp in range(start, args.kprime_max + 1)]
    if args.csv:
        print("kprime,m,genus,n,k,rate")
        for r in rows:
            print(f"{r.kprime},{r.m},{r.genus},{r.n},{r.k},{r.rate:.6f}")
    else:
        print(f"{'kprime':>6} {'m':>6} {'genus':>8} {'n':>8} {'k':>8} {'rate':>8}")
        for r in rows:
            print(f"{r.kprime:>6} {r.m:>6} {r.genus:>8} {r.n:>8} {r.k:>8} "
                  f"{r.rate:>8.4f}")
    return EXIT_OK


def cmd_embed_search(args: argparse.Namespace, argv: list[str]) -> int:
    graph_path = Path(args.graph)
    if not graph_path.exists():
        return _usage_error(f"graph file {graph_path} not found")
    try:
        graph = _load_graph(graph_path)
    except _CliInputError as exc:
        return _usage_error(str(exc))
    out = Path(args.out)
    t0 = time.perf_counter()
    try:
        rotation = embedding.search_self_dual_embedding(
            graph, args.genus, budget=args.budget,
            vertex_transitive=args.vertex_transitive,
        )
    except SearchBudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    elapsed = time.perf_counter() - t0
    out.parent.mkdir(parents=True, exist_ok=True)
    if rotation is None:
        out.write_text(json.dumps(
            {"found": False, "target_genus": args.genus,
             "reason": "search space exhausted; no self-dual embedding"},
            indent=2, sort_keys=True) + "\n")
        print(f"no self-dual embedding of genus {args.genus} exists "
              f"({elapsed:.2f}s)")
        return EXIT_OK
    embedding.write_rotation(rotation, out)
    faces = embedding.trace_faces(rotation)
    print(f"found rotation system: genus {faces.genus}, "
          f"{len(faces.faces)} faces ({elapsed:.2f}s) -> {out}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, argv: list[str]) -> int:
    bundle = Path(args.bundle)
    if not (bundle / "code.json").exists():
        return _usage_error(f"{bundle} is not a code bundle (code.json missing)")
    try:
        code = css.read_bundle(bundle)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"bundle unreadable: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    failures = []

    def check(name: str, ok: bool) -> None:
        print(f"  {'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures.append(name)

    check("css condition hx hz^T = 0",
          multiply(code.hx, code.hz.transpose()).is_zero())
    check("column counts match n",
          code.hx.cols == code.n and code.hz.cols == code.n)
    check("k = n - rank(hx) - rank(hz)",
          code.k == code.n - rank(code.hx) - rank(code.hz))
    if code.genus is not None:
        check("k = 2 * genus", code.k == 2 * code.genus)
    if code.d_found is not None:
        check("d_lower <= d_found", code.d_lower <= code.d_found)
    for side in ("dz", "dx"):
        wpath = bundle / f"{side}_witness.json"
        if wpath.exists():
            payload = json.loads(wpath.read_text())
            support = tuple(payload["support"])
            ok = (len(support) == payload["weight"]
                  and css.verify_witness(code, payload["side"], support))
            check(f"{side} witness re-verifies", ok)
    if failures:
        print(f"verification failed: {', '.join(failures)}", file=sys.stderr)
        return EXIT_VERIFICATION
    print("bundle ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paleylift",
        description="Build and check CSS codes from voltage-graph lifts and "
                    "Paley graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lift", help="build the lift of the two-vertex voltage graph")
    p.add_argument("t", type=int, help="group parameter; the lift has 2^(t+1) vertices")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", dest="fmt", default="text",
                   choices=["text", "alist"],
                   help="alist additionally exports MacKay alist matrices")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("paley", help="build a Paley graph over GF(p^r)")
    p.add_argument("p", type=int, help="prime")
    p.add_argument("r", type=int, help="exponent")
    p.add_argument("--modulus", help="monic modulus, coefficients constant-first, "
                                     "e.g. 2,1,1 for x^2+x+2")
    p.add_argument("--out", required=True)
    p.add_argument("--format", dest="fmt", default="text",
                   choices=["text", "alist"])
    p.set_defaults(func=cmd_paley)

    p = sub.add_parser("code", help="assemble a CSS code bundle from a graph")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--rotation", help="rotation-system JSON (embedding mode)")
    p.add_argument("--algebraic", action="store_true",
                   help="use the deterministic cycle completion")
    p.add_argument("--target-k", type=int, dest="target_k",
                   help="logical count for algebraic mode")
    p.add_argument("--family", default="custom",
                   choices=["voltage", "paley", "custom"])
    p.add_argument("--kprime", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--format", dest="fmt", default="text",
                   choices=["text", "alist"])
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("distance", help="bounded minimum-distance search on a bundle")
    p.add_argument("bundle", help="code bundle directory")
    p.add_argument("--max-weight", type=int, required=True, dest="max_weight")
    p.add_argument("--budget", type=int, default=css.DEFAULT_ENUMERATION_BUDGET)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("table", help="closed-form family parameter table")
    p.add_argument("--family", required=True, choices=["voltage", "paley"])
    p.add_argument("--kprime-max", type=int, required=True, dest="kprime_max")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("embed-search",
                       help="search for a self-dual embedding of a target genus")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--budget", type=int, default=embedding.DEFAULT_SEARCH_BUDGET)
    p.add_argument("--vertex-transitive", action="store_true",
                   dest="vertex_transitive",
                   help="freeze the first vertex's rotation (symmetry heuristic)")
    p.add_argument("--out", required=True, help="rotation JSON output path")
    p.set_defaults(func=cmd_embed_search)

    p = sub.add_parser("verify", help="re-run every invariant on a code bundle")
    p.add_argument("bundle")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args, argv)


if __name__ == "__main__":
    sys.exit(main())
