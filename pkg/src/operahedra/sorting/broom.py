"""The bijection between Theta over a broom and stack-sorting preimages."""

from __future__ import annotations

from dataclasses import dataclass, field

from .._bits import mask_of, members
from ..errors import TheoremViolation
from ..theta import ThetaPair, enumerate_theta, pair_to_json, theta_leq, theta_violation
from ..trees import PlaneTree, broom, broom_parameters
from .permutations import Permutation, format_permutation, inversions, is_permutation
from .stack import in_delta, stack_sort

__all__ = ["omega", "omega_inverse", "omega_inversion_rule", "BroomReport", "verify_broom_iso"]


def _broom_shape(tree: PlaneTree) -> tuple[int, int]:
    shape = broom_parameters(tree)
    if shape is None:
        raise ValueError(f"{tree} is not a broom")
    return shape


def omega(tree: PlaneTree, pair: ThetaPair) -> Permutation:
    """Read the ornaments of a broom pair off as a permutation of 1..n."""
    _, n = _broom_shape(tree)
    # A[u] = {j : u in rho(n+1-j)}
    A = [0] * (n + 1)
    for j in range(1, n + 1):
        for u in members(pair.rho[n + 1 - j]):
            A[u] |= 1 << j
    word: list[int] = []
    later = 0
    blocks = []
    for w in reversed(pair.lam):
        blocks.append(A[w] & ~later)
        later |= A[w]
    for b in blocks:
        word.extend(reversed(members(b)))
    return tuple(word)


def omega_inversion_rule(k: int, n: int, pair: ThetaPair) -> frozenset[tuple[int, int]]:
    """The inversion set that Omega must produce, predicted pair by pair."""
    pos = pair.position
    out = set()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if j <= k:
                hit = pos[n + 1 - i] < pos[n + 1 - j]  # (n+1-j, n+1-i) is an inversion of lam
            else:
                hit = bool(pair.rho[n + 1 - j] >> (n + 1 - i) & 1)
            if hit:
                out.add((i, j))
    return frozenset(out)


def omega_inverse(sigma: Permutation, k: int, n: int) -> ThetaPair:
    """Rebuild the broom pair whose image is ``sigma``.

    Raises TheoremViolation if the construction does not land in Theta or
    does not map back to ``sigma`` (as happens outside the preimage set).
    """
    sigma = tuple(sigma)
    if len(sigma) != n or not is_permutation(sigma):
        raise ValueError(f"{sigma} is not a permutation of 1..{n}")
    tree = broom(k, n)
    pos = {x: i for i, x in enumerate(sigma)}
    leaves = sorted(range(n - k + 1, n + 1), key=lambda v: pos[n + 1 - v], reverse=True)
    lam = tuple(range(1, n - k + 1)) + tuple(leaves)
    inv = inversions(sigma)
    rho = [0] * (n + 1)
    for j in range(1, n + 1):
        m = 1 << (n + 1 - j)
        if j > k:
            m |= mask_of(n + 1 - i for i in range(1, j) if (i, j) in inv)
        rho[n + 1 - j] = m
    pair = ThetaPair(lam, tuple(rho))
    problem = theta_violation(tree, pair)
    if problem is None and omega(tree, pair) != sigma:
        problem = "Omega does not map the rebuilt pair back to sigma"
    if problem:
        raise TheoremViolation(f"omega_inverse failed: {problem}",
                               {"k": k, "n": n, "sigma": format_permutation(sigma)})
    return pair


@dataclass
class BroomReport:
    k: int
    n: int
    theta_size: int = 0
    preimage_size: int = 0
    pairs_compared: int = 0
    violation: dict | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violation is None


def verify_broom_iso(k: int, n: int, preimages: frozenset[Permutation] | None = None) -> BroomReport:
    """Check that Omega is an order isomorphism onto ``s^-1(ideal below w_circ(k, n))``."""
    from .stack import delta_ideal, stack_preimages

    tree = broom(k, n)
    report = BroomReport(k, n)
    pairs = enumerate_theta(tree)
    if preimages is None:
        preimages = stack_preimages(delta_ideal(k, n), n)
    report.theta_size, report.preimage_size = len(pairs), len(preimages)

    def fail(what: str, **data):
        report.violation = {"check": what, "k": k, "n": n, **data}
        return report

    images = []
    for p in pairs:
        w = omega(tree, p)
        if inversions(w) != omega_inversion_rule(k, n, p):
            return fail("inversion rule", pair=pair_to_json(p), image=format_permutation(w))
        if not in_delta(stack_sort(w), k):
            return fail("sorted image outside the ideal", pair=pair_to_json(p), image=format_permutation(w))
        if omega_inverse(w, k, n) != p:
            return fail("round trip", pair=pair_to_json(p), image=format_permutation(w))
        images.append(w)
    if len(set(images)) != len(images):
        return fail("Omega is not injective")
    if set(images) != set(preimages):
        missing = sorted(set(preimages) - set(images))
        return fail("Omega is not onto the preimage set",
                    missing=[format_permutation(w) for w in missing[:5]])
    masks = [_inv_mask(w) for w in images]
    for a in range(len(pairs)):
        for b in range(len(pairs)):
            report.pairs_compared += 1
            if theta_leq(pairs[a], pairs[b]) != (not masks[a] & ~masks[b]):
                return fail("order", lower=pair_to_json(pairs[a]), upper=pair_to_json(pairs[b]),
                            images=[format_permutation(images[a]), format_permutation(images[b])])
    return report


def _inv_mask(w: Permutation) -> int:
    n1 = len(w) + 1
    return mask_of(i * n1 + j for i, j in inversions(w))
