"""
Command line interface.

Exit codes: 0 success, 2 precondition violation, 3 verification failure,
4 resource bound hit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from typing import Optional, Sequence

from .cluster import explore, random_walk, seed_from_graph
from .errors import SeedError
from .oracle import (
    boundary_measurement,
    check_exchange_on_variety,
    check_plucker_relations,
    pluckers,
    positive_points,
    random_positive_weights,
    richardson_sample,
    schubert_points,
    schubert_sample,
)
from .plabic import (
    M1,
    PlabicGraph,
    apply_move,
    graph_from_shape,
    move_class,
    normalize,
    skew_graph,
    square_faces,
    square_move_mutates_quiver,
)
from .shapes import Shape, classify, classify_derived, partsw
from .weyl import Permutation

EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFY, EXIT_BOUND = 0, 2, 3, 4


# ----------------------------------------------------------------------
# argument helpers


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _label(I) -> str:
    return "".join(map(str, I)) if all(x < 10 for x in I) else ",".join(map(str, I))


class Problem:
    """What the flags describe: a Schubert shape, skew data, or a graph file."""

    def __init__(self, args):
        self.shape: Optional[Shape] = None
        self.v = self.x = None
        self.graph_file = getattr(args, "graph", None)
        if self.graph_file:
            with open(self.graph_file) as fh:
                self.graph = PlabicGraph.from_json(json.load(fh))
            return
        if args.v is not None or args.w is not None:
            if args.v is None or args.w is None or args.k is None:
                raise _usage("skew data needs --v, --w and --k")
            v, w = Permutation(args.v), Permutation(args.w)
            self.v, self.x, self.k = v, w * v.inverse(), args.k
            self.graph = skew_graph(self.v, self.x, self.k)
            return
        if args.shape is None or args.k is None or args.n is None:
            raise _usage("give --shape with --k and --n, or --v/--w/--k, or --graph")
        self.shape = Shape(args.shape, args.k, args.n)
        self.graph = graph_from_shape(self.shape)

    def samples(self, d: int, rng: random.Random):
        if self.shape is not None:
            return schubert_points(self.shape, d, rng)
        if self.v is not None:
            return [pluckers(richardson_sample(self.v, self.x, self.k, rng)) for _ in range(d)]
        return positive_points(self.graph, d, rng)


def _usage(msg: str) -> SeedError:
    from .errors import PreconditionError
    return PreconditionError(msg)


def _face_table(g: PlabicGraph) -> list[tuple[str, str, int]]:
    labels = g.target_labels
    rows = [(_label(lab), "frozen" if g.is_frozen_face(f) else "mutable", f)
            for f, lab in labels.items()]
    return sorted(rows)


# ----------------------------------------------------------------------
# commands


def cmd_seed(args, out) -> int:
    prob = Problem(args)
    g = prob.graph
    rng = random.Random(args.rng_seed)
    seed = seed_from_graph(g, prob.samples(args.samples, rng))
    if args.format == "json":
        doc = {
            "graph": g.to_json(),
            "trip_permutation": str(g.trip_permutation()),
            "faces": [{"face": f, "label": list(g.target_labels[f]),
                       "kind": "frozen" if g.is_frozen_face(f) else "mutable"}
                      for f in range(g.num_faces)],
            "seed": seed.to_json(),
        }
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "dot":
        out.write(g.to_dot())
        out.write(seed.quiver.to_dot())
    else:
        out.write(f"trip permutation: {g.trip_permutation()}\n")
        out.write(f"faces: {g.num_faces}\n")
        out.write(f"{'label':<12}{'kind':<9}face\n")
        for lab, kind, f in _face_table(g):
            out.write(f"{lab:<12}{kind:<9}{f}\n")
        q = seed.quiver
        out.write(f"quiver: {len(q.frozen)} frozen, {len(q.mutable)} mutable\n")
        for (a, b), m in sorted(q.arrows.items()):
            out.write(f"  {_label(a)} -> {_label(b)}" + (f" x{m}" if m > 1 else "") + "\n")
    return EXIT_OK


def cmd_explore(args, out, err) -> int:
    prob = Problem(args)
    rng = random.Random(args.rng_seed)
    seed = seed_from_graph(prob.graph, prob.samples(args.samples, rng))
    start = time.perf_counter()
    ex = explore(seed, args.max_seeds)
    elapsed = time.perf_counter() - start
    report = {"clusters": ex.num_clusters, "variables": ex.num_variables,
              "exhausted": ex.exhausted, "max_seeds": args.max_seeds}
    if args.format == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        for key in ("clusters", "variables", "exhausted", "max_seeds"):
            out.write(f"{key}: {report[key]}\n")
    # timing goes to stderr so stdout stays byte-identical between runs
    err.write(f"wall time: {elapsed:.2f}s\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    prob = Problem(args)
    rng = random.Random(args.rng_seed)
    points = prob.samples(args.samples, rng)
    mc = move_class(prob.graph, args.max_seeds)
    failures = []
    faces = 0
    for g in sorted(mc.graphs, key=lambda h: repr(h.canonical_key)):
        for f in square_faces(g):
            faces += 1
            rep = check_exchange_on_variety(g, f, points)
            if not rep.ok:
                failures.append(f"exchange {_label(rep.old_label)}*{_label(rep.new_label)}: "
                                f"residuals {[str(r) for r in rep.residuals]}")
            if not square_move_mutates_quiver(g, f):
                failures.append(f"quiver mismatch at face {_label(g.target_labels[f])}")
    out.write(f"graphs in move class: {len(mc.graphs)} (exhausted: {mc.exhausted})\n")
    out.write(f"square moves checked: {faces}\n")

    g0 = normalize(prob.graph)
    # relabeled graphs give signed coordinates; positivity is a statement about
    # a positive initial cluster, so walk on the same graph with identity labels
    plain = g0.relabel_boundary(range(1, g0.n + 1))
    seed = seed_from_graph(plain, positive_points(plain, args.samples, rng))
    bad = 0
    for _ in range(args.walks):
        for s in random_walk(seed, args.walk_length, rng):
            bad += sum(1 for vec in s.values.values() for x in vec if x <= 0)
    out.write(f"positivity: {args.walks} walks of length {args.walk_length}, "
              f"{bad} non-positive values\n")
    if bad:
        failures.append(f"positivity: {bad} non-positive values")

    if prob.shape is not None:
        mism = 0
        for _ in range(args.trials):
            bm = boundary_measurement(g0, random_positive_weights(g0, rng))
            sc = pluckers(schubert_sample(prob.shape, rng))
            if (bm.zero_set() != sc.zero_set() or not check_plucker_relations(sc)
                    or bm.lex_min_nonzero() != partsw(prob.shape)):
                mism += 1
        out.write(f"cross-oracle: {args.trials} trials, {mism} mismatches\n")
        if mism:
            failures.append(f"cross-oracle: {mism} mismatches")

    for line in failures:
        out.write(f"FAIL {line}\n")
    out.write("PASS\n" if not failures else "FAIL\n")
    if failures:
        return EXIT_VERIFY
    if not mc.exhausted:
        out.write("move class not exhausted within --max-seeds\n")
        return EXIT_BOUND
    return EXIT_OK


def cmd_classify(args, out) -> int:
    if args.derived is not None:
        family = classify_derived(args.derived)
        out.write(f"{family}\n")
        return EXIT_OK
    if args.shape is None or args.k is None or args.n is None:
        raise _usage("give --shape with --k and --n, or --derived")
    ctype = classify(Shape(args.shape, args.k, args.n))
    if args.format == "json":
        out.write(json.dumps({"family": ctype.family, "rank": ctype.rank}, sort_keys=True) + "\n")
    else:
        out.write(f"{ctype.family} (rank {ctype.rank})\n")
    return EXIT_OK


def cmd_moves(args, out) -> int:
    prob = Problem(args)
    g = normalize(prob.graph)
    if args.action == "list":
        quiver = g.labeled_quiver()
        for f in square_faces(g):
            lab = g.target_labels[f]
            new = apply_move(g, M1(f))
            fresh = sorted(set(new.target_labels.values()) - set(g.target_labels.values()))
            out.write(f"face {f}: {_label(lab)} -> {_label(fresh[0])} "
                      f"(out {len(quiver.out_arrows(lab))}, in {len(quiver.in_arrows(lab))})\n")
        return EXIT_OK
    if args.face is None:
        raise _usage("moves apply needs --face")
    moved = apply_move(g, M1(args.face))
    if args.format == "json":
        out.write(json.dumps(moved.to_json(), indent=2, sort_keys=True) + "\n")
    elif args.format == "dot":
        out.write(moved.to_dot())
    else:
        for lab, kind, f in _face_table(moved):
            out.write(f"{lab:<12}{kind:<9}{f}\n")
    return EXIT_OK


def cmd_measure(args, out) -> int:
    prob = Problem(args)
    g = normalize(prob.graph)
    rng = random.Random(args.rng_seed)
    weights = random_positive_weights(g, rng) if args.weights == "random" else None
    vec = boundary_measurement(g, weights)
    if args.format == "json":
        out.write(json.dumps(vec.to_json(), indent=2, sort_keys=True) + "\n")
    else:
        for I in sorted(vec.support()):
            out.write(f"{_label(I):<12}{vec[I]}\n")
    return EXIT_OK


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--shape", type=_int_list, help="partition rows, e.g. 4,3,2")
    common.add_argument("--k", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--v", type=_int_list, help="one-line notation of v")
    common.add_argument("--w", type=_int_list, help="one-line notation of w")
    common.add_argument("--graph", help="plabic graph JSON file")
    common.add_argument("--rng-seed", type=int, default=0)
    common.add_argument("--max-seeds", type=int, default=10_000)
    common.add_argument("--samples", type=int, default=5)
    common.add_argument("--format", choices=("json", "dot", "text"), default="text")

    parser = argparse.ArgumentParser(prog="schubert-seeds",
                                     description="Cluster seeds on Schubert and skew Schubert varieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("seed", parents=[common], help="build the seed of a shape or skew datum")
    sub.add_parser("explore", parents=[common], help="breadth-first mutation-class exploration")
    p = sub.add_parser("verify", parents=[common], help="exchange, quiver, positivity and oracle checks")
    p.add_argument("--walks", type=int, default=100)
    p.add_argument("--walk-length", type=int, default=20)
    p.add_argument("--trials", type=int, default=20)
    p = sub.add_parser("classify", parents=[common], help="finite-type classification")
    p.add_argument("--derived", type=_int_list, help="classify an already-derived diagram")
    p = sub.add_parser("moves", parents=[common], help="list or apply square moves")
    p.add_argument("action", choices=("list", "apply"))
    p.add_argument("--face", type=int)
    p = sub.add_parser("measure", parents=[common], help="boundary measurement")
    p.add_argument("--weights", choices=("unit", "random"), default="unit")
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "seed":
            return cmd_seed(args, out)
        if args.command == "explore":
            return cmd_explore(args, out, err)
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "classify":
            return cmd_classify(args, out)
        if args.command == "moves":
            return cmd_moves(args, out)
        return cmd_measure(args, out)
    except SeedError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return getattr(exc, "exit_code", EXIT_VERIFY)


if __name__ == "__main__":
    sys.exit(main())
