"""Command-line interface.

Every run prints a JSON object with a ``config`` header (the resolved run
configuration, for reproducibility) and a ``result`` payload.  Exact
rationals are emitted as "p/q" strings, never floats.  Exit codes:
0 success, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import suites
from .autsearch import automorphism_group
from .colourings import (
    Colouring,
    DEFAULT_COLOUR_CAP,
    distinguishing_probability_exact,
    distinguishing_probability_mc,
    find_tree_automorphism,
    is_distinguishing,
    random_colouring,
    russel_sundaram_bound,
)
from .conditions import (
    dsc_check,
    gamma_refinement_iterate,
    growth_bound,
    growth_classifier,
    layer_fixing_report,
    sphere_classes,
    sphere_equivalence,
    suborbit_classes,
    suborbit_equivalence,
)
from .errors import CapExceededError, GraphFormatError, SymbreakError
from .graphs import (
    FamilySpec,
    cartesian_product,
    generate_family,
    graph_from_json_dict,
    graph_to_json_dict,
    growth_sequence,
    load_graph,
)
from .groups import DEFAULT_ENUMERATION_CAP
from .perms import Perm
from .rng import SeededRng
from .topology import (
    ExhaustionSequence,
    agreement_level,
    ball_decomposition,
    expected_stabiliser_measure,
    ultrametric_distance,
)

SUBCOMMANDS = (
    "autgroup", "motion", "distinguish", "prob-exact", "prob-mc", "rs-bound",
    "metric", "balls", "haar", "dsc", "spheres", "gamma", "product", "layers",
    "growth", "treeauto", "batch",
)


def _env_int(name, default):
    value = os.environ.get(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise SymbreakError(f"environment variable {name} must be an integer")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="symbreak",
        description="Symmetry breaking by random colourings: groups, motion, "
        "distinguishing probabilities, coset-ball metrics, and structural checks.",
    )
    parser.add_argument("--config", help="JSON file with defaults for the flags below")
    parser.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    parser.add_argument("--trials", type=int, default=None, help="Monte Carlo trials")
    parser.add_argument("--enumeration-cap", type=int, default=None)
    parser.add_argument("--colour-cap", type=int, default=None)
    parser.add_argument("--format", choices=("json", "csv", "text"), default=None)
    parser.add_argument("--output", default=None, help="write the report here instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True, metavar="|".join(SUBCOMMANDS))

    def add_graph_flags(p):
        p.add_argument("--graph", help="graph file ('n m' text or .json)")
        p.add_argument("--family", help="family spec JSON (inline or @file)")

    p = sub.add_parser("autgroup", help="automorphism group (optionally colour-preserving)")
    add_graph_flags(p)
    p.add_argument("--colours", help="colour string like 0110")

    p = sub.add_parser("motion", help="minimal support of a non-identity automorphism")
    add_graph_flags(p)

    p = sub.add_parser("distinguish", help="is the colouring distinguishing?")
    add_graph_flags(p)
    p.add_argument("--colours", help="colour string; omitted = seeded random colouring")

    p = sub.add_parser("prob-exact", help="exact distinguishing probability")
    add_graph_flags(p)
    p.add_argument("--k", type=int, default=2, help="number of colours")

    p = sub.add_parser("prob-mc", help="Monte Carlo distinguishing probability")
    add_graph_flags(p)
    p.add_argument("--k", type=int, default=2)

    p = sub.add_parser("rs-bound", help="motion-based failure bound and witness search")
    add_graph_flags(p)

    p = sub.add_parser("metric", help="agreement level and ultrametric distance")
    add_graph_flags(p)
    p.add_argument("--perm-a", required=True, help="image array JSON")
    p.add_argument("--perm-b", required=True)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--sequence", choices=("balls", "prefixes"), default="balls")

    p = sub.add_parser("balls", help="coset-ball decomposition at a level")
    add_graph_flags(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--sequence", choices=("balls", "prefixes"), default="balls")

    p = sub.add_parser("haar", help="expected stabiliser measure, two ways")
    add_graph_flags(p)

    p = sub.add_parser("dsc", help="distinct-spheres check on a truncation")
    add_graph_flags(p)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--radius", type=int, default=None)

    p = sub.add_parser("spheres", help="sphere-equivalence classes (or one pair)")
    add_graph_flags(p)
    p.add_argument("--pair", type=int, nargs=2, metavar=("U", "V"))
    p.add_argument("--n0-max", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None)

    p = sub.add_parser("gamma", help="suborbit-equivalence classes, pair test, or iteration")
    add_graph_flags(p)
    p.add_argument("--budget", type=int, default=0)
    p.add_argument("--pair", type=int, nargs=2, metavar=("S", "T"))
    p.add_argument("--iterate", type=int, default=None, help="refinement levels")

    p = sub.add_parser("product", help="Cartesian product of two graphs")
    p.add_argument("--left", required=True, help="graph file or family JSON/@file")
    p.add_argument("--right", required=True)

    p = sub.add_parser("layers", help="layer fixing of a coloured product")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--colours", help="colour string for the product (default: seeded random)")

    p = sub.add_parser("growth", help="growth profile / classifier, or bound arithmetic")
    add_graph_flags(p)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--bound", nargs=4, metavar=("N", "J", "C", "EPS"), default=None)

    p = sub.add_parser("treeauto", help="root-fixing colour-preserving tree automorphism")
    add_graph_flags(p)
    p.add_argument("--root", type=int, default=0)
    p.add_argument("--colours", required=True)

    p = sub.add_parser("batch", help="run the named experiment suites, one CSV each")
    p.add_argument("--report-dir", required=True)
    p.add_argument("--suites", nargs="*", default=sorted(suites.ALL_SUITES))

    return parser


def _apply_config_file(args):
    if not args.config:
        return
    with open(args.config, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    for key in ("seed", "trials", "format", "output"):
        if getattr(args, key, None) is None and key in data:
            setattr(args, key, data[key])
    caps = data.get("caps", {})
    if args.enumeration_cap is None and "enumeration" in caps:
        args.enumeration_cap = caps["enumeration"]
    if args.colour_cap is None and "colour_exhaustion" in caps:
        args.colour_cap = caps["colour_exhaustion"]


def _resolve(args):
    _apply_config_file(args)
    if args.seed is None:
        args.seed = 0
    if args.trials is None:
        args.trials = 10_000
    if args.format is None:
        args.format = "json"
    if args.enumeration_cap is None:
        args.enumeration_cap = _env_int("SYMBREAK_ENUMERATION_CAP", DEFAULT_ENUMERATION_CAP)
    if args.colour_cap is None:
        args.colour_cap = _env_int("SYMBREAK_COLOUR_CAP", DEFAULT_COLOUR_CAP)


def _load_spec_or_graph(value):
    """A graph argument: a file path, inline family/graph JSON, or @file JSON."""
    text = value
    if value.startswith("@"):
        with open(value[1:], "r", encoding="utf-8") as fh:
            text = fh.read()
    stripped = text.strip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        if "kind" in data:
            return generate_family(FamilySpec.from_json_dict(data)), value
        return graph_from_json_dict(data), value
    return load_graph(value), value


def _graph_from_args(args):
    graph = getattr(args, "graph", None)
    family = getattr(args, "family", None)
    if graph and family:
        raise GraphFormatError("pass either --graph or --family, not both")
    if graph:
        return load_graph(graph), graph
    if family:
        g, source = _load_spec_or_graph(family)
        return g, source
    raise GraphFormatError("a graph is required (--graph or --family)")


def _sequence_from_args(args, g):
    if args.sequence == "balls":
        return ExhaustionSequence.balls(g, args.root)
    return ExhaustionSequence.prefixes(g.vertex_count)


def _parse_colours(text):
    """Colour string -> Colouring, with k inferred from the largest digit."""
    digits = [int(ch) for ch in text.strip()]
    return Colouring(tuple(digits), max(2, max(digits, default=0) + 1))


def _colouring_from_args(args, g, rng):
    if getattr(args, "colours", None):
        c = _parse_colours(args.colours)
        if len(c) != g.vertex_count:
            raise GraphFormatError("colour string length differs from vertex count")
        return c
    return random_colouring(g, 2, rng)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Perm):
        return list(obj.images)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _run(args):
    """Returns (result_payload, graph_source, options, csv_text_or_None, text_or_None)."""
    rng = SeededRng(args.seed)
    cmd = args.command
    options = {}

    if cmd == "batch":
        os.makedirs(args.report_dir, exist_ok=True)
        written = []
        for name in args.suites:
            if name not in suites.ALL_SUITES:
                raise GraphFormatError(f"unknown suite {name!r}")
            header, rows = suites.run_suite(name)
            path = os.path.join(args.report_dir, f"{name}.csv")
            with open(path, "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(header)
                writer.writerows(rows)
            written.append(path)
        options["suites"] = list(args.suites)
        return {"written": written}, None, options, None, None

    if cmd == "product":
        left, left_src = _load_spec_or_graph(args.left)
        right, right_src = _load_spec_or_graph(args.right)
        product = cartesian_product(left, right)
        options = {"left": left_src, "right": right_src}
        return graph_to_json_dict(product), None, options, None, None

    if cmd == "layers":
        left, left_src = _load_spec_or_graph(args.left)
        right, right_src = _load_spec_or_graph(args.right)
        product = cartesian_product(left, right)
        if args.colours:
            c = _parse_colours(args.colours)
            colour_source = args.colours
        else:
            c = random_colouring(product, 2, rng)
            colour_source = "random"
        report = layer_fixing_report(left, right, c, cap=args.enumeration_cap)
        options = {"left": left_src, "right": right_src, "colours": colour_source}
        return report.to_json_dict(), None, options, None, report.to_text()

    if cmd == "growth" and args.bound is not None:
        n, j, c, eps = args.bound
        report = growth_bound(int(n), int(j), float(c), float(eps))
        options = {"bound": [int(n), int(j), float(c), float(eps)]}
        return report.to_json_dict(), None, options, None, None

    g, source = _graph_from_args(args)

    if cmd == "autgroup":
        colours = _parse_colours(args.colours).colours if args.colours else None
        group = automorphism_group(g, vertex_colours=colours)
        options = {"colours": args.colours}
        return group.to_json_dict(), source, options, None, None

    if cmd == "motion":
        report = automorphism_group(g).motion(args.enumeration_cap)
        return report.to_json_dict(), source, options, None, None

    if cmd == "distinguish":
        c = _colouring_from_args(args, g, rng)
        report = is_distinguishing(g, c)
        options = {"colours": c.to_string()}
        return report.to_json_dict(), source, options, None, None

    if cmd == "prob-exact":
        p = distinguishing_probability_exact(
            g, args.k, colour_cap=args.colour_cap, enum_cap=args.enumeration_cap
        )
        options = {"k": args.k}
        return {"probability": str(p)}, source, options, None, None

    if cmd == "prob-mc":
        est = distinguishing_probability_mc(
            g, args.k, args.trials, rng, enum_cap=args.enumeration_cap
        )
        options = {"k": args.k}
        return est.to_json_dict(), source, options, None, None

    if cmd == "rs-bound":
        report = russel_sundaram_bound(g, rng, enum_cap=args.enumeration_cap)
        return report.to_json_dict(), source, options, None, None

    if cmd == "metric":
        seq = _sequence_from_args(args, g)
        a = Perm.from_json(args.perm_a)
        b = Perm.from_json(args.perm_b)
        level = agreement_level(a, b, seq)
        dist = ultrametric_distance(a, b, seq)
        options = {"root": args.root, "sequence": args.sequence}
        return (
            {"agreement_level": "equal" if level is None else level, "distance": str(dist)},
            source, options, None, None,
        )

    if cmd == "balls":
        seq = _sequence_from_args(args, g)
        group = automorphism_group(g)
        deco = ball_decomposition(group, seq, args.level, cap=args.enumeration_cap)
        options = {"level": args.level, "root": args.root, "sequence": args.sequence}
        return deco.to_json_dict(), source, options, None, deco.to_text()

    if cmd == "haar":
        report = expected_stabiliser_measure(g, enum_cap=args.enumeration_cap)
        return report.to_json_dict(), source, options, None, None

    if cmd == "dsc":
        report = dsc_check(g, args.root, args.radius)
        options = {"root": args.root, "radius": args.radius}
        return report.to_json_dict(), source, options, report.to_csv(), report.to_text()

    if cmd == "spheres":
        options = {"n0_max": args.n0_max, "horizon": args.horizon}
        if args.pair:
            u, v = args.pair
            res = sphere_equivalence(g, u, v, n0_max=args.n0_max, horizon=args.horizon)
            options["pair"] = [u, v]
            return res.to_json_dict(), source, options, None, None
        classes = sphere_classes(g, n0_max=args.n0_max, horizon=args.horizon)
        return classes.to_json_dict(), source, options, None, classes.to_text()

    if cmd == "gamma":
        options = {"budget": args.budget}
        if args.iterate is not None:
            report = gamma_refinement_iterate(
                g, args.budget, max_levels=args.iterate, cap=args.enumeration_cap
            )
            options["iterate"] = args.iterate
            return report.to_json_dict(), source, options, None, None
        if args.pair:
            s, t = args.pair
            ok = suborbit_equivalence(g, s, t, args.budget, cap=args.enumeration_cap)
            options["pair"] = [s, t]
            return {"equivalent": ok}, source, options, None, None
        classes = suborbit_classes(g, args.budget, cap=args.enumeration_cap)
        return classes.to_json_dict(), source, options, None, classes.to_text()

    if cmd == "growth":
        radius = args.radius
        if radius is None:
            radius = g.truncation.radius if g.truncation else g.eccentricity(args.root)
        profile = growth_sequence(g, args.root, radius)
        result = {"profile": profile.to_json_dict()}
        options = {"root": args.root, "radius": radius, "epsilon": args.epsilon}
        if args.epsilon is not None:
            result["classifier"] = growth_classifier(g, args.root, radius, args.epsilon).to_json_dict()
        return result, source, options, None, None

    if cmd == "treeauto":
        c = _parse_colours(args.colours)
        if len(c) != g.vertex_count:
            raise GraphFormatError("colour string length differs from vertex count")
        perm = find_tree_automorphism(g, args.root, c)
        options = {"root": args.root, "colours": args.colours}
        return (
            {"found": perm is not None, "automorphism": None if perm is None else list(perm.images)},
            source, options, None, None,
        )

    raise GraphFormatError(f"unknown subcommand {cmd!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        _resolve(args)
        result, source, options, csv_text, text = _run(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SymbreakError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    config = {
        "command": args.command,
        "graph_source": source,
        "seed": args.seed,
        "trials": args.trials,
        "caps": {"enumeration": args.enumeration_cap, "colour_exhaustion": args.colour_cap},
        "output": {"format": args.format, "path": args.output},
        "options": options,
    }

    if args.format == "json":
        payload = json.dumps({"config": config, "result": result}, indent=2, default=_json_default)
    elif args.format == "csv":
        if csv_text is None:
            print(f"error: csv output not supported for {args.command}", file=sys.stderr)
            return 2
        header = io.StringIO()
        header.write("# " + json.dumps(config, default=_json_default) + "\n")
        payload = header.getvalue() + csv_text.rstrip("\n")
    else:
        body = text if text is not None else json.dumps(result, indent=2, default=_json_default)
        payload = "# " + json.dumps(config, default=_json_default) + "\n" + body

    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
