"""Command-line entry point: ``qsubiso {gen,solve,verify,resources}``.

Outputs of ``solve`` (all under ``--out``):

* ``manifest.json``: the resolved experiment manifest;
* ``summary.csv``: one row in the summary schema of :mod:`qsubiso.io`;
* ``traces/run_NNN.csv``: per-step quantum loss and best sampled classical loss;
* ``solutions.json``: every distinct match found, over padded indices and original labels.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io as qio
from .ansatz import AnsatzTopology, circular_topology
from .graph import AdjacencyMatrix, Graph, PartialPermutation, erdos_renyi, pad_to_power_of_two, partial_loss
from .oracle import enumerate_matches, qubit_requirements
from .solver import SolverConfig, plant_instance, run_batch

_DEFAULTS = SolverConfig()


class CliError(Exception):
    pass


def _notice(msg: str) -> None:
    print(f"notice: {msg}", file=sys.stderr)


def load_topology(spec, k: int) -> AnsatzTopology:
    """``"circular"`` or a topology JSON object / file path."""
    if spec in (None, "circular"):
        return circular_topology(k)
    if isinstance(spec, dict):
        topo = AnsatzTopology.from_json(json.dumps(spec))
    else:
        path = Path(spec)
        if not path.exists():
            raise CliError(f"unknown topology {spec!r}")
        topo = AnsatzTopology.from_json(path.read_text())
    if topo.k != k:
        raise CliError(f"topology acts on {topo.k} qubits but the source needs {k}")
    return topo


def _padded(g: Graph, label: str) -> AdjacencyMatrix:
    a = pad_to_power_of_two(g)
    if a.order != g.num_vertices:
        _notice(f"{label} has {g.num_vertices} vertices; padded to {a.order} with isolated vertices")
    return a


# gen


def cmd_gen(args) -> int:
    if not 0.0 <= args.p <= 1.0:
        raise CliError(f"edge probability {args.p} outside [0, 1]")
    if args.plant:
        return _gen_plant(args)
    if args.n is None:
        raise CliError("gen needs --n (or --plant)")
    g = erdos_renyi(args.n, args.p, args.seed)
    a = _padded(g, "graph")
    out = Path(args.out or "graph.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    qio.write_graph(a.to_graph(), out)
    print(out)
    return 0


def _gen_plant(args) -> int:
    if args.na is None or args.nb is None:
        raise CliError("--plant needs --na and --nb")
    if args.nb > args.na:
        raise CliError("pattern larger than source")
    n_pad = 1 << (args.na - 1).bit_length()
    if n_pad != args.na:
        _notice(f"source has {args.na} vertices; padded to {n_pad} with isolated vertices")
    topo = load_topology(args.topology, n_pad.bit_length() - 1)
    source, pattern, g, perm = plant_instance(args.na, args.nb, topo, args.p, args.seed)
    out = Path(args.out or "planted")
    out.mkdir(parents=True, exist_ok=True)
    qio.write_graph(source.to_graph(), out / "source.json")
    qio.write_graph(pattern.to_graph(), out / "pattern.json")
    sidecar = {
        "seed": args.seed,
        "p": args.p,
        "g": [int(x) for x in g],
        "permutation": perm.mapping.tolist(),
        "topology": json.loads(topo.to_json()),
    }
    (out / "plant.json").write_text(json.dumps(sidecar, indent=1, sort_keys=True) + "\n")
    print(out)
    return 0


# solve


def _config_from_args(args) -> dict:
    return {
        "learning_rate": args.eta,
        "momentum": args.momentum,
        "fd_epsilon": args.epsilon,
        "max_steps": args.steps,
        "samples_per_step": args.samples,
        "shots": args.shots,
        "seed": args.seed,
    }


def load_manifest(path) -> dict:
    path = Path(path)
    manifest = json.loads(path.read_text())
    base = path.parent
    for key in ("source", "pattern"):
        if isinstance(manifest.get(key), str):
            manifest[key] = str((base / manifest[key]).resolve())
    return manifest


def manifest_from_args(args) -> dict:
    if args.source is None or args.pattern is None:
        raise CliError("solve needs --manifest or both --source and --pattern")
    return {
        "problem_id": args.problem_id,
        "source": str(Path(args.source).resolve()),
        "pattern": str(Path(args.pattern).resolve()),
        "topology": args.topology,
        "config": _config_from_args(args),
        "runs": args.runs,
        "mode": args.mode,
        "out": args.out,
    }


def _resolve_graph(entry, label: str) -> Graph:
    if isinstance(entry, str):
        if not Path(entry).exists():
            raise CliError(f"{label} file {entry!r} does not exist")
        return qio.read_graph(entry)
    if isinstance(entry, dict) and "n" in entry and "edges" in entry:
        return Graph.from_edges(entry["n"], entry["edges"])
    if isinstance(entry, dict) and "erdos_renyi" in entry:
        gen = entry["erdos_renyi"]
        return erdos_renyi(gen["n"], gen["p"], gen["seed"])
    raise CliError(f"cannot interpret {label} entry {entry!r}")


def resolve_problem(manifest: dict):
    """Graphs, topology and config described by a manifest."""
    config = manifest.get("config", {})
    if "seed" not in config:
        raise CliError("manifest must fix config.seed")
    cfg = SolverConfig(**config)
    if "plant" in manifest:
        pl = manifest["plant"]
        n_pad = 1 << (pl["na"] - 1).bit_length()
        topo = load_topology(manifest.get("topology"), n_pad.bit_length() - 1)
        source, pattern, _, _ = plant_instance(pl["na"], pl["nb"], topo, pl.get("p", 0.5), pl["seed"])
        return source, pattern, topo, cfg, pl["na"], pl["nb"]
    src_graph = _resolve_graph(manifest.get("source"), "source")
    pat_graph = _resolve_graph(manifest.get("pattern"), "pattern")
    source = _padded(src_graph, "source")
    pattern = _padded(pat_graph, "pattern")
    if pattern.order > source.order:
        raise CliError("pattern larger than source")
    topo = load_topology(manifest.get("topology"), source.k)
    return source, pattern, topo, cfg, src_graph.num_vertices, pat_graph.num_vertices


def cmd_solve(args) -> int:
    manifest = load_manifest(args.manifest) if args.manifest else manifest_from_args(args)
    if args.manifest and args.out:
        manifest["out"] = args.out
    source, pattern, topo, cfg, n_src, n_pat = resolve_problem(manifest)
    runs = int(manifest.get("runs", 100))
    mode = manifest.get("mode", "convergence")
    out = Path(manifest.get("out") or "results")
    problem_id = manifest.get("problem_id") or "problem"

    digest = qio.manifest_hash(
        {
            # graph contents stand in for file paths so the hash survives relocation
            "manifest": {k: v for k, v in manifest.items() if k not in ("out", "source", "pattern")},
            "source": qio.graph_to_json(source.to_graph()),
            "pattern": qio.graph_to_json(pattern.to_graph()),
        }
    )
    meta = {"manifest_sha256": digest, "seed": cfg.seed}

    stats = run_batch(source, pattern, topo, cfg, runs=runs, mode=mode)

    out.mkdir(parents=True, exist_ok=True)
    (out / "traces").mkdir(exist_ok=True)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")
    for i, res in enumerate(stats.results):
        (out / "traces" / f"run_{i:03d}.csv").write_text(qio.trace_csv(res, {**meta, "run": i}))
    (out / "summary.csv").write_text(qio.summary_csv([qio.summary_row(stats, problem_id)], meta))
    (out / "solutions.json").write_text(
        qio.solutions_to_json(stats.solutions, n_src, n_pat, meta) + "\n"
    )
    print(
        f"{problem_id}: {stats.convergent_runs}/{runs} runs converged, "
        f"{stats.unique_solutions_found} unique solutions; results in {out}"
    )
    return 0


# verify


def cmd_verify(args) -> int:
    source = _padded(qio.read_graph(args.source), "source")
    pattern = _padded(qio.read_graph(args.pattern), "pattern")
    try:
        entries = json.loads(Path(args.solutions).read_text())["solutions"]
    except (ValueError, KeyError, TypeError) as exc:
        print(f"FAIL malformed solutions file: {exc}")
        return 1
    claimed, bad = [], set()
    for idx, item in enumerate(entries):
        try:
            w = PartialPermutation(source.order, item["image"])
        except (ValueError, KeyError, TypeError) as exc:
            print(f"FAIL solution {idx} {item.get('image') if isinstance(item, dict) else item!r}: {exc}")
            bad.add(idx)
            claimed.append(None)
            continue
        claimed.append(w)
        if w.target_order != pattern.order:
            print(f"FAIL solution {idx}: maps {w.target_order} vertices, pattern has {pattern.order}")
            bad.add(idx)
            continue
        loss = partial_loss(source, pattern, w)
        if loss:
            print(f"FAIL solution {idx} image={list(w.image)}: {loss} mismatched adjacency entries")
            bad.add(idx)
    failures = len(bad)
    report = {"checked": len(claimed), "failed": failures}
    if not args.no_census:
        census = enumerate_matches(source, pattern)
        if census.refused:
            report["census"] = "refused: search space above the enumeration cap"
        else:
            report["census"] = census.to_json_dict()
            if census.matches is not None:
                known = set(census.matches)
                # a zero-loss claim missing from a complete census means a matcher bug
                outside = [i for i, w in enumerate(claimed) if w not in known and i not in bad]
                for i in outside:
                    print(f"FAIL solution {i}: absent from the exhaustive match set")
                report["outside_census"] = outside
                failures += len(outside)
    print(json.dumps(report, sort_keys=True))
    return 1 if failures else 0


# resources


def cmd_resources(args) -> int:
    text = qio.resources_csv([qubit_requirements(n) for n in args.n])
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsubiso", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random graph or a planted instance")
    gen.add_argument("--n", type=int, help="vertex count of a plain random graph")
    gen.add_argument("--p", type=float, default=0.5, help="edge probability")
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--plant", action="store_true", help="write source, pattern and plant sidecar")
    gen.add_argument("--na", type=int)
    gen.add_argument("--nb", type=int)
    gen.add_argument("--topology", default="circular")
    gen.add_argument("--out", help="graph file (plain) or directory (--plant)")
    gen.set_defaults(func=cmd_gen)

    solve = sub.add_parser("solve", help="run the variational solver")
    solve.add_argument("--manifest", help="experiment manifest JSON")
    solve.add_argument("--source")
    solve.add_argument("--pattern")
    solve.add_argument("--problem-id", default="problem")
    solve.add_argument("--seed", type=int, default=None)
    solve.add_argument("--shots", type=int, default=_DEFAULTS.shots, help="0 means exact probabilities")
    solve.add_argument("--steps", type=int, default=_DEFAULTS.max_steps)
    solve.add_argument("--samples", type=int, default=_DEFAULTS.samples_per_step)
    solve.add_argument("--eta", type=float, default=_DEFAULTS.learning_rate)
    solve.add_argument("--momentum", type=float, default=_DEFAULTS.momentum)
    solve.add_argument("--epsilon", type=float, default=_DEFAULTS.fd_epsilon)
    solve.add_argument("--mode", choices=("search", "convergence"), default="convergence")
    solve.add_argument("--runs", type=int, default=100)
    solve.add_argument("--topology", default="circular")
    solve.add_argument("--out")
    solve.set_defaults(func=cmd_solve)

    ver = sub.add_parser("verify", help="re-check a solutions file classically")
    ver.add_argument("--source", required=True)
    ver.add_argument("--pattern", required=True)
    ver.add_argument("--solutions", required=True)
    ver.add_argument("--no-census", action="store_true", help="skip the exhaustive cross-check")
    ver.set_defaults(func=cmd_verify)

    res = sub.add_parser("resources", help="qubit counts per vertex count")
    res.add_argument("n", type=int, nargs="+")
    res.add_argument("--out")
    res.set_defaults(func=cmd_resources)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "solve" and not args.manifest and args.seed is None:
        parser.error("solve needs --seed (or a manifest that fixes one)")
    try:
        return args.func(args)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
