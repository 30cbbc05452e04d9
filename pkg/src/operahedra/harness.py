"""Exhaustive theorem checks over all plane trees of bounded size.

Each check works on one tree and returns a list of failure records; the
driver fans trees out to a process pool when asked and merges results in
tree order, so reports are identical regardless of ``jobs``.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable

from ._bits import mask_of
from .errors import SizeLimitError, TheoremViolation
from .lattice import (
    FinitePoset,
    are_isomorphic,
    barnard_join_semidistributive,
    barnard_meet_semidistributive,
    height,
    interval,
    is_distributive,
    is_join_semidistributive,
    is_lattice,
    is_lattice_bez,
    is_meet_semidistributive,
    is_trim,
    join_irreducibles,
    meet_irreducibles,
    unique_maximal,
    unique_minimal,
)
from .nestings import enumerate_maximal_nestings_direct, mn_poset, nesting_to_lists
from .oracles import tamari_poset, theta_poset, weak_order_poset
from .sorting.broom import verify_broom_iso
from .theta import (
    forced_max_of_difference,
    forced_min_of_difference,
    pair_to_json,
    psi,
    theta_covers,
)
from .trees import (
    PlaneTree,
    chain,
    claw,
    contract_edge,
    enumerate_trees,
    has_trim_shape,
    has_unary_off_branch,
    parse_tree,
)

__all__ = ["VerificationReport", "THEOREMS", "DEFAULT_MAX_N", "run_theorem", "run_broom"]

DEFAULT_MAX_N = 6


@dataclass
class VerificationReport:
    theorem: str
    parameters: str
    instances: int = 0
    per_size: dict[int, int] = field(default_factory=dict)
    unit: str = "trees"
    failures: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def status(self) -> str:
        return "verified" if not self.failures else "violated"

    def to_json(self) -> str:
        data = asdict(self)
        data["status"] = self.status
        data.pop("wall_time")  # kept off stdout for byte-identical output
        return json.dumps(data, sort_keys=True)

    def lines(self) -> list[str]:
        out = [f"theorem: {self.theorem}", f"parameters: {self.parameters}"]
        out += [f"n={n}: {c} {self.unit} checked" for n, c in sorted(self.per_size.items())]
        out.append(f"instances: {self.instances}")
        out += ["counterexample: " + json.dumps(f, sort_keys=True) for f in self.failures]
        out.append(f"status: {self.status}")
        return out


def _failure(tree: PlaneTree, what: str, **data) -> dict:
    return {"tree": str(tree), "check": what, **data}


def check_lattice(tree: PlaneTree) -> list[dict]:
    M = mn_poset(tree)
    out = []
    if not is_lattice_bez(M):
        out.append(_failure(tree, "bounded poset whose upper covers lack joins"))
    if not is_lattice(M):
        out.append(_failure(tree, "missing meet or join"))
    if sorted(M.elements, key=sorted) != sorted(enumerate_maximal_nestings_direct(tree), key=sorted):
        out.append(_failure(tree, "nesting enumerations disagree"))
    # Psi must carry covers to covers with the same move kind, and nothing else
    th = theta_poset(tree)
    kinds = {(m.lower, m.upper): m.kind for p in th.elements for m in theta_covers(tree, p)}
    if set(kinds) != {(th.elements[a], th.elements[b]) for a, b in th.covers}:
        out.append(_failure(tree, "theta cover moves differ from the order's Hasse diagram"))
    images = [psi(tree, N) for N in M.elements]
    if sorted(images) != list(th.elements):
        out.append(_failure(tree, "Psi is not a bijection onto Theta"))
    mapped = {}
    for (a, b), kind in zip(M.covers, M.cover_labels):
        mapped[(images[a], images[b])] = kind
        if kinds.get((images[a], images[b])) is not kind:
            out.append(_failure(tree, "Psi does not preserve a cover or its move kind",
                                lower=nesting_to_lists(M.elements[a]), upper=nesting_to_lists(M.elements[b])))
            break
    if len(mapped) != len(kinds):
        out.append(_failure(tree, "cover counts differ between MN and Theta"))
    return out


def check_semidistributive(tree: PlaneTree) -> list[dict]:
    M = mn_poset(tree)
    expected = has_unary_off_branch(tree)
    values = {
        "meet_semidistributive": is_meet_semidistributive(M),
        "join_semidistributive": is_join_semidistributive(M),
        "barnard_meet": barnard_meet_semidistributive(M),
        "barnard_join": barnard_join_semidistributive(M),
    }
    if any(v != expected for v in values.values()):
        return [_failure(tree, "semidistributivity disagrees with the off-branch degree condition",
                         condition=expected, **values)]
    return []


def check_trim(tree: PlaneTree) -> list[dict]:
    M = mn_poset(tree)
    expected = has_trim_shape(tree)
    got = is_trim(M)
    if got != expected:
        return [_failure(tree, "trimness disagrees with the degree condition", condition=expected, trim=got)]
    if got:
        n = tree.n
        stats = (height(M), len(join_irreducibles(M)), len(meet_irreducibles(M)))
        if stats != (n * (n - 1) // 2,) * 3:
            return [_failure(tree, "trim lattice with unexpected height or irreducible counts",
                             height=stats[0], join_irreducibles=stats[1], meet_irreducibles=stats[2])]
    return []


def check_distributive(tree: PlaneTree) -> list[dict]:
    got = is_distributive(mn_poset(tree))
    if got != (tree.n <= 2):
        return [_failure(tree, "distributivity is not equivalent to n <= 2", distributive=got)]
    return []


def check_intervals(tree: PlaneTree) -> list[dict]:
    M = mn_poset(tree)
    out = []
    for v in range(1, tree.n + 1):
        edge = mask_of((tree.parent[v], v))
        keep = [i for i, N in enumerate(M.elements) if edge in N]
        R = M.leq_matrix
        lo = [i for i in keep if all(R[i, j] for j in keep)]
        hi = [i for i in keep if all(R[j, i] for j in keep)]
        if len(lo) != 1 or len(hi) != 1:
            out.append(_failure(tree, "nestings containing the edge tube are not bounded", vertex=v))
            continue
        part = interval(M, M.elements[lo[0]], M.elements[hi[0]])
        if len(part) != len(keep):
            out.append(_failure(tree, "nestings containing the edge tube are not an interval", vertex=v))
        elif not are_isomorphic(part, mn_poset(contract_edge(tree, v))):
            out.append(_failure(tree, "interval is not isomorphic to the contracted tree's lattice",
                                vertex=v, contracted=str(contract_edge(tree, v))))
    return out


def check_extrema(tree: PlaneTree) -> list[dict]:
    th = theta_poset(tree)
    unary = has_unary_off_branch(tree)
    out = []
    for p in th.elements:
        for m in theta_covers(tree, p):
            if m.kind.value == "permutohedron" and not unary:
                continue
            x, y = th.index[m.lower], th.index[m.upper]
            expect_max, expect_min = unique_maximal(th, x, y), unique_minimal(th, x, y)
            try:
                got_max, got_min = forced_max_of_difference(tree, m), forced_min_of_difference(tree, m)
            except TheoremViolation as exc:
                out.append(_failure(tree, str(exc), **exc.counterexample))
                continue
            for label, expect, got in (("max", expect_max, got_max), ("min", expect_min, got_min)):
                if expect is None or th.elements[expect] != got:
                    out.append(_failure(tree, f"forced {label} differs from brute force", kind=m.kind.value,
                                        lower=pair_to_json(m.lower), upper=pair_to_json(m.upper)))
    return out


def check_special(n: int) -> list[dict]:
    out = []
    if not are_isomorphic(mn_poset(chain(n)), tamari_poset(n)):
        out.append({"n": n, "check": "chain lattice is not Tamari"})
    if not are_isomorphic(mn_poset(claw(n)), weak_order_poset(n)):
        out.append({"n": n, "check": "claw lattice is not the weak order"})
    return out


THEOREMS: dict[str, Callable[[PlaneTree], list[dict]]] = {
    "lattice": check_lattice,
    "semidistributive": check_semidistributive,
    "trim": check_trim,
    "distributive": check_distributive,
    "intervals": check_intervals,
    "extrema": check_extrema,
}


def _run_one(args: tuple[str, str]) -> list[dict]:
    name, text = args
    return THEOREMS[name](parse_tree(text))


def run_theorem(name: str, max_n: int, jobs: int = 1, cap: int = DEFAULT_MAX_N, min_n: int = 1) -> VerificationReport:
    if max_n > cap:
        raise SizeLimitError(f"--max-n {max_n} exceeds the cap of {cap}")
    start = time.perf_counter()
    report = VerificationReport(name, f"{min_n} <= n <= {max_n}", unit="sizes" if name == "special" else "trees")
    if name == "special":
        for n in range(min_n, max_n + 1):
            report.failures += check_special(n)
            report.per_size[n] = 1
            report.instances += 1
    else:
        work = [(name, str(t)) for n in range(min_n, max_n + 1) for t in enumerate_trees(n)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_run_one, work, chunksize=4))
        else:
            results = [_run_one(w) for w in work]
        for (_, text), fails in zip(work, results):
            n = parse_tree(text).n
            report.per_size[n] = report.per_size.get(n, 0) + 1
            report.instances += 1
            report.failures += fails
    report.wall_time = time.perf_counter() - start
    return report


def run_broom(k: int, n: int, cap: int = DEFAULT_MAX_N) -> VerificationReport:
    if n > cap:
        raise SizeLimitError(f"--n {n} exceeds the cap of {cap}")
    start = time.perf_counter()
    report = VerificationReport("broom", f"k={k}, n={n}", unit="pairs")
    result = verify_broom_iso(k, n)
    report.instances = result.theta_size
    report.per_size[n] = result.theta_size
    if result.violation:
        report.failures.append(result.violation)
    report.wall_time = time.perf_counter() - start
    return report
