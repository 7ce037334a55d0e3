"""Command line interface.

Subcommands: match, simulate-bitflip, simulate-clone, select-component, sgm.
Experiment options may also come from a declarative "key = value" config
file (--config); explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import sys

from .embedding import format_stress_report, save_embedding_csv
from .experiments import (
    run_bitflip_experiment,
    run_clone_experiment,
    save_aggregates_csv,
    save_replicates_csv,
)
from .graph import (
    CloneParams,
    induced_subgraph,
    load_edge_list,
    sample_connected_component,
    save_edge_list,
)
from .pipeline import PipelineConfig, jofc_match
from .seeding import load_seeding, save_matching
from .sgm import sgm


def _grid(text, cast):
    return [cast(v) for v in text.split(",") if v != ""]


def load_config_file(path):
    """Parse a declarative "key = value" experiment config file."""
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _add_pipeline_args(parser):
    parser.add_argument("--dissimilarity", choices=["shortest_path", "weighted_dice"],
                        default=None, help="within-graph dissimilarity (default shortest_path)")
    parser.add_argument("--w", type=float, default=None, help="fidelity weight (default 0.8)")
    parser.add_argument("--dim", type=int, default=None,
                        help="embedding dimension; omit for automatic selection")
    parser.add_argument("--alpha", type=float, default=None,
                        help="dimension selection threshold (default 0.05)")
    parser.add_argument("--matcher", choices=["hungarian", "gap"], default=None)
    parser.add_argument("--max-iters", type=int, default=None)
    parser.add_argument("--rel-stress-tol", type=float, default=None)
    parser.add_argument("--n-restarts", type=int, default=None)
    parser.add_argument("--rng-seed", type=int, default=None)


_PIPELINE_KEYS = {
    "dissimilarity": str, "w": float, "dim": int, "alpha": float, "matcher": str,
    "max_iters": int, "rel_stress_tol": float, "n_restarts": int, "rng_seed": int,
}


def build_pipeline_config(args, file_values=None):
    kwargs = {}
    file_values = file_values or {}
    for key, cast in _PIPELINE_KEYS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            kwargs[key] = flag
        elif key in file_values:
            raw = file_values[key]
            if key == "dim" and raw == "auto":
                continue
            kwargs[key] = cast(raw)
    return PipelineConfig(**kwargs)


def _experiment_value(args, file_values, key, cast, default):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in file_values:
        raw = file_values[key]
        if cast in (list, tuple):
            return raw
        return cast(raw)
    if default is None:
        raise SystemExit(f"missing required option --{key.replace('_', '-')}")
    return default


def cmd_match(args):
    g1 = load_edge_list(args.graph1, directed=args.directed, loopy=args.loopy)
    g2 = load_edge_list(args.graph2, directed=args.directed, loopy=args.loopy)
    seeding = load_seeding(args.seeds, g1.n, g2.n)
    cfg = build_pipeline_config(args)
    result = jofc_match(g1, g2, seeding, cfg)
    save_matching(result.matching, args.out_matching, args.graph1, args.graph2)
    if args.out_embedding:
        save_embedding_csv(result.embedding, args.out_embedding)
    report = result.embedding.stress_report
    if report is not None:
        text = format_stress_report(report)
        if args.out_stress:
            with open(args.out_stress, "w") as fh:
                fh.write(f"dim = {result.chosen_dim}\n" + text)
        else:
            sys.stdout.write(text)
    print(f"matched {len(result.matching)} unseeded pairs at dimension {result.chosen_dim}")
    return 0


def cmd_simulate_bitflip(args):
    file_values = load_config_file(args.config) if args.config else {}
    cfg = build_pipeline_config(args, file_values)
    n = _experiment_value(args, file_values, "n", int, None)
    p = _experiment_value(args, file_values, "p", float, None)
    m_grid = _grid(_experiment_value(args, file_values, "m_grid", str, None), int)
    rho_grid = _grid(_experiment_value(args, file_values, "rho_grid", str, None), float)
    replicates = _experiment_value(args, file_values, "replicates", int, 50)
    algorithms = _grid(_experiment_value(args, file_values, "algorithms", str, "jofc,sgm"), str)
    result = run_bitflip_experiment(
        n, p, m_grid, rho_grid, replicates, cfg, algorithms, n_workers=args.workers
    )
    save_aggregates_csv(result, args.out_aggregate)
    if args.out_replicates:
        save_replicates_csv(result, args.out_replicates)
    print(f"wrote {len(result.aggregates())} aggregate cells to {args.out_aggregate}")
    return 0


def cmd_simulate_clone(args):
    file_values = load_config_file(args.config) if args.config else {}
    cfg = build_pipeline_config(args, file_values)
    n = _experiment_value(args, file_values, "n", int, None)
    p = _experiment_value(args, file_values, "p", float, None)
    m_grid = _grid(_experiment_value(args, file_values, "m_grid", str, None), int)
    rho_grid = _grid(_experiment_value(args, file_values, "rho_grid", str, None), float)
    replicates = _experiment_value(args, file_values, "replicates", int, 50)
    clone_params = CloneParams(
        clone_success_prob=_experiment_value(args, file_values, "clone_success_prob", float, 0.2),
        max_clones=_experiment_value(args, file_values, "max_clones", int, 10),
    )
    result = run_clone_experiment(
        n, p, clone_params, m_grid, rho_grid, replicates, cfg, n_workers=args.workers
    )
    save_aggregates_csv(result, args.out_aggregate)
    if args.out_replicates:
        save_replicates_csv(result, args.out_replicates)
    print(f"wrote {len(result.aggregates())} aggregate cells to {args.out_aggregate}")
    return 0


def cmd_select_component(args):
    g = load_edge_list(args.graph, directed=args.directed, loopy=args.loopy)
    vertices = sample_connected_component(g, args.size, args.rng_seed or 0)
    save_edge_list(induced_subgraph(g, vertices), args.out)
    if args.out_vertices:
        with open(args.out_vertices, "w") as fh:
            for v in vertices:
                fh.write(f"{v + 1}\n")
    print(f"selected {len(vertices)} vertices into {args.out}")
    return 0


def cmd_sgm(args):
    g1 = load_edge_list(args.graph1, directed=args.directed, loopy=args.loopy)
    g2 = load_edge_list(args.graph2, directed=args.directed, loopy=args.loopy)
    if args.binarize:
        g1, g2 = g1.binarized(), g2.binarized()
    if args.drop_directions:
        g1, g2 = g1.undirected(), g2.undirected()
    seeding = load_seeding(args.seeds, g1.n, g2.n)
    result = sgm(g1, g2, seeding, max_iters=args.max_iters or 50)
    save_matching(result.matching, args.out_matching, args.graph1, args.graph2)
    print(
        f"sgm finished after {result.n_iters} iterations; "
        f"objective {result.objective:.6g}; "
        f"toggles: binarize={args.binarize} drop_directions={args.drop_directions}"
    )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="jofcmatch",
                                     description="Seeded graph matching via joint embedding")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("match", help="match two edge-list graphs given a seed file")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("seeds")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--loopy", action="store_true")
    p.add_argument("--out-matching", default="matching.txt")
    p.add_argument("--out-embedding", default=None)
    p.add_argument("--out-stress", default=None)
    _add_pipeline_args(p)
    p.set_defaults(func=cmd_match)

    for name, func in [("simulate-bitflip", cmd_simulate_bitflip),
                       ("simulate-clone", cmd_simulate_clone)]:
        p = sub.add_parser(name, help=f"run the {name.split('-')[1]} simulation experiment")
        p.add_argument("--config", default=None, help="key = value experiment config file")
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--p", type=float, default=None)
        p.add_argument("--m-grid", default=None, help="comma-separated seed counts")
        p.add_argument("--rho-grid", default=None, help="comma-separated flip probabilities")
        p.add_argument("--replicates", type=int, default=None)
        if name == "simulate-bitflip":
            p.add_argument("--algorithms", default=None, help="comma-separated: jofc,sgm")
        else:
            p.add_argument("--clone-success-prob", type=float, default=None)
            p.add_argument("--max-clones", type=int, default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--out-aggregate", default="aggregate.csv")
        p.add_argument("--out-replicates", default=None)
        _add_pipeline_args(p)
        p.set_defaults(func=func)

    p = sub.add_parser("select-component", help="sample a connected induced subgraph")
    p.add_argument("graph")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--loopy", action="store_true")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out", default="component.txt")
    p.add_argument("--out-vertices", default=None)
    p.set_defaults(func=cmd_select_component)

    p = sub.add_parser("sgm", help="Frank-Wolfe seeded graph matching baseline")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("seeds")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--loopy", action="store_true")
    p.add_argument("--binarize", action="store_true", help="drop edge weights")
    p.add_argument("--drop-directions", action="store_true", help="symmetrize before matching")
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--out-matching", default="matching.txt")
    p.set_defaults(func=cmd_sgm)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
