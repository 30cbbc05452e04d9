"""Command-line front end.

Exit codes: 0 ok/verified, 1 theorem violation, 2 usage or parse error,
3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness
from ._bits import members
from .errors import NotALatticeError, SizeLimitError, TheoremViolation, TreeParseError
from .lattice import (
    FinitePoset,
    height,
    is_distributive,
    is_join_semidistributive,
    is_lattice,
    is_meet_semidistributive,
    is_trim,
    join_irreducibles,
    meet_irreducibles,
    poset_to_dot,
    poset_to_json,
)
from .nestings import format_nesting, mn_poset, nesting_to_lists
from .oracles import theta_poset
from .sorting.permutations import format_permutation, parse_permutation
from .sorting.stack import PREIMAGE_CAP, delta_ideal, stack_preimages, stack_sort, w_circ
from .theta import MoveKind, ThetaPair, pair_to_json, theta_covers
from .trees import enumerate_trees, parse_tree, render_tree, tree_to_json

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
LATTICE_MAX_N = 8
TREE_ENUM_MAX_N = 12


def _theta_with_moves(tree) -> FinitePoset:
    P = theta_poset(tree)
    kind = {(P.index[m.lower], P.index[m.upper]): m.kind for p in P.elements for m in theta_covers(tree, p)}
    return FinitePoset(P.elements, P.covers, [kind[c] for c in P.covers], check=False)


def _build(args, tree) -> tuple[FinitePoset, callable, callable]:
    if tree.n > args.max_tree_n:
        raise SizeLimitError(f"tree has n={tree.n}; lattices are built only for n <= {args.max_tree_n}")
    if args.repr == "theta":
        def text(p: ThetaPair) -> str:
            rho = " ".join("{" + ",".join(map(str, members(p.rho[v]))) + "}" for v in range(1, p.n + 1))
            return f"{''.join(map(str, p.lam)) if p.n <= 9 else ','.join(map(str, p.lam))} | {rho}"
        return _theta_with_moves(tree), pair_to_json, text
    return mn_poset(tree), nesting_to_lists, format_nesting


def _emit(lines) -> None:
    for line in lines:
        print(line)


def cmd_tree_show(args) -> int:
    tree = parse_tree(args.tree)
    if args.format == "json":
        print(tree_to_json(tree))
        return EXIT_OK
    _emit([f"tree: {render_tree(tree)}", f"n: {tree.n}"])
    _emit(f"{v}: {' '.join(map(str, cs)) if cs else '-'}" for v, cs in enumerate(tree.children))
    return EXIT_OK


def cmd_tree_enumerate(args) -> int:
    if args.n > args.cap:
        raise SizeLimitError(f"n={args.n} exceeds the enumeration cap of {args.cap}")
    trees = enumerate_trees(args.n)
    _emit(render_tree(t) for t in trees)
    print(f"count: {len(trees)}")
    return EXIT_OK


def cmd_lattice_build(args) -> int:
    tree = parse_tree(args.tree)
    P, names, text = _build(args, tree)
    if args.out == "json":
        print(poset_to_json(P, names))
    else:
        print(poset_to_dot(P, text, name=render_tree(tree)), end="")
    return EXIT_OK


def cmd_lattice_props(args) -> int:
    tree = parse_tree(args.tree)
    P, _, _ = _build(args, tree)
    yes = {True: "yes", False: "no"}
    lines = [f"tree: {render_tree(tree)}", f"elements: {len(P)}", f"lattice: {yes[is_lattice(P)]}"]
    if is_lattice(P):
        meet_sd, join_sd = is_meet_semidistributive(P), is_join_semidistributive(P)
        moves = {MoveKind(lab).value for lab in P.cover_labels or ()}
        lines += [
            f"distributive: {yes[is_distributive(P)]}",
            f"meet-semidistributive: {yes[meet_sd]}",
            f"join-semidistributive: {yes[join_sd]}",
            f"semidistributive: {yes[meet_sd and join_sd]}",
            f"trim: {yes[is_trim(P)]}",
            f"height: {height(P)}",
            f"join-irreducibles: {len(join_irreducibles(P))}",
            f"meet-irreducibles: {len(meet_irreducibles(P))}",
            f"move kinds: {', '.join(sorted(moves)) or '-'}",
        ]
    _emit(lines)
    return EXIT_OK


def _finish(report: harness.VerificationReport, as_json: bool) -> int:
    if as_json:
        print(report.to_json())
    else:
        _emit(report.lines())
    print(f"wall time: {report.wall_time:.3f}s", file=sys.stderr)
    return EXIT_OK if report.status == "verified" else EXIT_VIOLATION


def cmd_verify(args) -> int:
    if args.theorem == "broom":
        if args.k is None or args.n is None:
            raise _Usage("verify broom needs --k and --n")
        if not 1 <= args.k <= args.n:
            raise _Usage("verify broom needs 1 <= k <= n")
        return _finish(harness.run_broom(args.k, args.n, cap=args.cap), args.json)
    if args.max_n is None:
        raise _Usage(f"verify {args.theorem} needs --max-n")
    report = harness.run_theorem(args.theorem, args.max_n, jobs=args.jobs, cap=args.cap)
    return _finish(report, args.json)


def cmd_sort(args) -> int:
    print(format_permutation(stack_sort(parse_permutation(args.perm))))
    return EXIT_OK


def cmd_preimages(args) -> int:
    if not 1 <= args.k <= args.n:
        raise _Usage("preimages needs 1 <= k <= n")
    found = sorted(stack_preimages(delta_ideal(args.k, args.n, cap=args.cap), args.n, cap=args.cap))
    _emit(format_permutation(w) for w in found)
    print(f"count: {len(found)}  (preimages of the ideal below {format_permutation(w_circ(args.k, args.n))})")
    return EXIT_OK


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="operahedra", description="Operahedron lattices of rooted plane trees.")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for verify (default 1)")
    parser.add_argument("--seed", type=int, default=None, help="reserved; all output is deterministic")
    sub = parser.add_subparsers(dest="command", required=True)

    tree = sub.add_parser("tree", help="parse, render and enumerate plane trees")
    tsub = tree.add_subparsers(dest="action", required=True)
    show = tsub.add_parser("show", help="print a tree and its preorder children lists")
    show.add_argument("tree", help='nested parentheses, e.g. "((()())())"')
    show.add_argument("--format", choices=["text", "json"], default="text")
    show.set_defaults(func=cmd_tree_show)
    enum = tsub.add_parser("enumerate", help="list every tree with n+1 vertices")
    enum.add_argument("n", type=int)
    enum.add_argument("--cap", type=int, default=TREE_ENUM_MAX_N)
    enum.set_defaults(func=cmd_tree_enumerate)

    lat = sub.add_parser("lattice", help="build and analyse operahedron lattices")
    lsub = lat.add_subparsers(dest="action", required=True)
    for name, func, helptext in (("build", cmd_lattice_build, "export the Hasse diagram"),
                                 ("props", cmd_lattice_props, "report lattice properties")):
        p = lsub.add_parser(name, help=helptext)
        p.add_argument("tree")
        p.add_argument("--repr", choices=["nesting", "theta"], default="nesting")
        p.add_argument("--max-tree-n", type=int, default=LATTICE_MAX_N)
        if name == "build":
            p.add_argument("--out", choices=["json", "dot"], default="json")
        p.set_defaults(func=func)

    ver = sub.add_parser("verify", help="exhaustive theorem checks")
    ver.add_argument("theorem", choices=[*harness.THEOREMS, "special", "broom"])
    ver.add_argument("--max-n", type=int)
    ver.add_argument("--k", type=int)
    ver.add_argument("--n", type=int)
    ver.add_argument("--cap", type=int, default=harness.DEFAULT_MAX_N)
    ver.add_argument("--json", action="store_true", help="print the report as one JSON object")
    ver.set_defaults(func=cmd_verify)

    srt = sub.add_parser("sort", help="apply the stack-sorting map")
    srt.add_argument("perm")
    srt.set_defaults(func=cmd_sort)

    pre = sub.add_parser("preimages", help="stack-sorting preimages of the ideal below k(k-1)...1(k+1)...n")
    pre.add_argument("--k", type=int, required=True)
    pre.add_argument("--n", type=int, required=True)
    pre.add_argument("--cap", type=int, default=PREIMAGE_CAP)
    pre.set_defaults(func=cmd_preimages)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (TreeParseError, _Usage, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (TheoremViolation, NotALatticeError) as exc:
        print(f"theorem violation: {exc}")
        if isinstance(exc, TheoremViolation):
            print("counterexample: " + json.dumps(exc.counterexample, sort_keys=True, default=str))
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
