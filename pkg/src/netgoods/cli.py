"""Command-line interface: ``netgoods {equilibria,analyze,verify,gen,export-dot}``.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .benefit import make_benefit, solve_k_for_sigma
from .equilibria import DEFAULT_N_MAX, SizeLimitError, check_equilibrium, enumerate_pieces, enumerate_specialized
from .exact import fraction_str, to_fraction
from .generators import KINDS, generate
from .graph import GraphError, degrees, format_edge_list, parse_edge_list, read_graph
from .harness import CHECKS, DEFAULT_SEED, run_all
from .indsets import degree_weights, load_weights, max_weight_independent_set, smallest_maximal_independent_set
from .indsets import unit_weights
from .metrics import CO_SPECIALIST, SPECIALIST, classify, welfare, welfare_gain
from .optimizer import analyze, limit_targets

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive_rational(text: str) -> Fraction:
    v = _rational(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from exc


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_graph(args):
    if not args.graph:
        raise InputError("--graph is required")
    try:
        return read_graph(args.graph)
    except OSError as exc:
        raise InputError(f"cannot read {args.graph}: {exc.strerror}") from exc


def _profile_json(x) -> list[str]:
    return [fraction_str(v) for v in x]


# -- equilibria ------------------------------------------------------------

def cmd_equilibria(args) -> int:
    g = _load_graph(args)
    es = enumerate_pieces(g, args.e_star, args.n_max)
    pieces = []
    counts = {"specialized": 0, "distributed": 0, "hybrid": 0}
    for p in es.pieces:
        cls = classify(g, p.centroid(), es.e_star)
        entry = p.to_json(g)
        entry["kind"] = cls.kind
        entry["interior_roles"] = list(cls.roles)
        entry["co_specialist_links"] = [list(e) for e in cls.co_specialist_links]
        pieces.append(entry)
        if cls.kind != "specialized":
            counts[cls.kind] += 1
    specialized = enumerate_specialized(g, es.e_star)
    counts["specialized"] = len(specialized)
    out = {
        "n": g.n,
        "labels": list(g.labels) if g.labels is not None else None,
        "e_star": fraction_str(es.e_star),
        "pieces": pieces,
        "specialized_equilibria": [_profile_json(x) for x in specialized],
        "counts": counts,
    }
    _emit(_dump(out), args.out)
    return EXIT_OK


# -- analyze ---------------------------------------------------------------

def _weights(args, g):
    src = args.weights
    if src == "degrees":
        return degree_weights(g)
    if src == "ones":
        return unit_weights(g)
    try:
        return load_weights(src, g)
    except OSError as exc:
        raise InputError(f"cannot read weight file {src}: {exc.strerror}") from exc


def _benefit_for(args, g, k=None, sigma=None):
    b0 = args.b0 if args.b0 is not None else args.cost * args.e_star
    if sigma is not None:
        if g.n < 2:
            raise InputError("--sigma-b needs at least two agents")
        k = solve_k_for_sigma(sigma, g.n, args.e_star)
    return make_benefit(b0, args.cost, args.e_star, k, n_ref=g.n if g.n >= 2 else None)


def cmd_analyze(args) -> int:
    g = _load_graph(args)
    es = enumerate_pieces(g, args.e_star, args.n_max)
    w = _weights(args, g)
    if args.sigma_sweep is not None:
        bfs = [(s, _benefit_for(args, g, sigma=s)) for s in args.sigma_sweep]
    elif args.sigma_b is not None:
        bfs = [(args.sigma_b, _benefit_for(args, g, sigma=args.sigma_b))]
    else:
        bfs = [(None, _benefit_for(args, g, k=args.k))]
    reports, table = [], []
    no_iso = g.n >= 2 and all(d > 0 for d in degrees(g))
    high_ref = low_ref = None
    if g.n:
        high_ref = _specialized_profile(g, max_weight_independent_set(g, degree_weights(g))[0], es.e_star)
        low_ref = _specialized_profile(g, smallest_maximal_independent_set(g), es.e_star)
    for sigma, bf in bfs:
        rep = analyze(es, bf, w)
        body = rep.to_json()
        body["sigma_b_requested"] = sigma
        reports.append(body)
        if g.n and no_iso:
            lim = limit_targets(g, bf)
            row = {
                "sigma_b": body["benefit"].get("sigma_b"),
                "k": bf.k,
                "W_U_star": rep.W_U_star.value,
                "W_U_max_degree_set": welfare(bf, g, high_ref),
                "gap_to_max_degree_set": abs(welfare_gain(bf, g, rep.W_U_star.witness, high_ref)),
                "gap_to_high_limit": abs(rep.W_U_star.value - float(lim.sigma_to_one)),
            }
            if lim.sigma_to_zero is not None:
                row["W_U_smallest_set"] = welfare(bf, g, low_ref)
                row["gap_to_low_limit"] = abs(rep.W_U_star.value - float(lim.sigma_to_zero))
            table.append(row)
    out = {"graph": {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}, "reports": reports}
    if args.sigma_sweep is not None:
        out["convergence"] = table
    _emit(_dump(out), args.out)
    return EXIT_OK


def _specialized_profile(g, members, e):
    s = set(members)
    return tuple(e if i in s else Fraction(0) for i in range(g.n))


# -- verify ----------------------------------------------------------------

def cmd_verify(args) -> int:
    g = _load_graph(args) if args.graph else None
    only = None
    if args.only:
        try:
            only = [int(t) for t in args.only.split(",")]
        except ValueError as exc:
            raise InputError("--only takes a comma-separated list of check numbers") from exc
        known = {c[0] for c in CHECKS}
        if any(o not in known for o in only):
            raise InputError(f"check numbers must be among {sorted(known)}")
    results = run_all(args.seed, g, args.inject_fault, only, args.n_max)
    for r in results:
        print(r.line())
    if args.out:
        rows = [{"check": r.number, "name": r.name, "status": r.status, "detail": r.detail} for r in results]
        _emit(_dump({"seed": args.seed, "rows": rows}), args.out)
    return EXIT_FAIL if any(r.status == "fail" for r in results) else EXIT_OK


# -- gen -------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.seed is None and args.kind not in ("regular-cycle", "cube"):
        raise InputError("--seed is required for random graph kinds")
    try:
        g = generate(args.kind, args.seed, n=args.n, m=args.m, p=args.p)
    except (ValueError, GraphError) as exc:
        raise InputError(str(exc)) from exc
    text = format_edge_list(g)
    assert parse_edge_list(text) == g
    _emit(text, args.out)
    return EXIT_OK


# -- export-dot ------------------------------------------------------------

def to_dot(g, x, e_star) -> str:
    """DOT source with specialists large and filled, free riders small, co-specialist links solid."""
    if g.n == 0:
        return ""
    cls = classify(g, x, e_star)
    labels = g.labels if g.labels is not None else tuple(str(i) for i in range(g.n))
    links = set(cls.co_specialist_links)
    lines = ["graph equilibrium {", "  node [shape=circle, style=filled];"]
    for i in range(g.n):
        role = cls.roles[i]
        if role == SPECIALIST:
            attrs = 'width=0.6, fillcolor=black, fontcolor=white'
        elif role == CO_SPECIALIST:
            attrs = 'width=0.45, fillcolor=gray40, fontcolor=white'
        elif role == "free_rider":
            attrs = 'width=0.25, fillcolor=white, fontsize=8'
        else:
            attrs = 'width=0.45, fillcolor=gray70'
        lines.append(f'  "{labels[i]}" [label="{labels[i]}\\n{fraction_str(x[i])}", {attrs}, role="{role}"];')
    for i, j in g.sorted_edges():
        style = "solid" if (i, j) in links else "dotted"
        lines.append(f'  "{labels[i]}" -- "{labels[j]}" [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args) -> int:
    g = _load_graph(args)
    e = args.e_star
    if g.n == 0:
        _emit("", args.out)
        return EXIT_OK
    if args.profile is not None:
        try:
            x = tuple(to_fraction(t) for t in args.profile.split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad profile {args.profile!r}") from exc
        if len(x) != g.n:
            raise InputError(f"profile has {len(x)} entries, graph has {g.n} agents")
    else:
        es = enumerate_pieces(g, e, args.n_max)
        if not 0 <= args.piece < len(es.pieces):
            raise InputError(f"piece index must be in 0..{len(es.pieces) - 1}")
        x = es.pieces[args.piece].centroid()
    chk = check_equilibrium(g, x, e)
    if not chk.ok:
        raise InputError(f"profile is not an equilibrium: {list(chk.violations)}")
    _emit(to_dot(g, x, e), args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="netgoods", description="Equilibria of public goods games on networks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, graph_required=True):
        p.add_argument("--graph", required=graph_required, metavar="PATH", help="edge-list file")
        p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX, help="largest graph to enumerate")
        p.add_argument("--e-star", type=_positive_rational, default=Fraction(1), metavar="RAT")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    p = sub.add_parser("equilibria", help="list the equilibrium pieces of a graph")
    common(p)
    p.set_defaults(func=cmd_equilibria)

    p = sub.add_parser("analyze", help="extremal equilibria and welfare report")
    common(p)
    p.add_argument("--cost", type=_positive_rational, default=Fraction(1), metavar="RAT")
    p.add_argument("--b0", type=_rational, default=None, metavar="RAT", help="b(e*); default c e*")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--k", type=float, help="benefit curvature")
    grp.add_argument("--sigma-b", type=float, help="target concavity in (0, 1)")
    grp.add_argument("--sigma-sweep", type=_float_list, metavar="LIST", help="comma-separated concavities")
    p.add_argument("--weights", default="degrees", help="ones, degrees, or a JSON weight file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run the verification suite")
    common(p, graph_required=False)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--only", metavar="LIST", help="comma-separated check numbers")
    p.add_argument("--inject-fault", action="store_true", help="perturb one equilibrium (negative control)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random graph")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, help="guardian count for well-covered-forest")
    p.add_argument("--p", type=float, help="edge or new-tree probability")
    p.add_argument("--seed", type=_seed)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-dot", help="render an equilibrium as DOT")
    common(p)
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--profile", help="comma-separated efforts")
    sel.add_argument("--piece", type=int, default=0, help="use the centroid of this piece")
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, GraphError, SizeLimitError, ValueError, json.JSONDecodeError) as exc:
        print(f"netgoods: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
