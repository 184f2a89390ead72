"""Curve trees: chains of 1-strata connecting a fixed point to a divisor.

A tree is built by repeatedly crossing walls of the ambient fan.  Starting
at the fixed point of a maximal cone mu and aiming at the divisor D_d, the
walk expresses rho_d in the basis of the current cone and crosses the wall
opposite the smallest-index generator carrying a negative coordinate; the
negated coordinate is the multiplicity of that edge.  Each wall crossing
contributes a 1-stratum curve class, and under the stronger tiers the
accumulated class realizes the lattice distance, which the degree_verified
flag records.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fan as fan_mod, fano
from .errors import IndexOutOfRange, LocateFailure, NotACone, PreconditionFailed
from .fan import Cone, CurveClass, Fan


@dataclass(frozen=True)
class ToricTree:
    root: Cone
    target: int
    edges: tuple[tuple[Cone, int], ...]  # crossed wall and multiplicity, in order
    cls: CurveClass
    degree_verified: bool


def signed_distance(fan: Fan, mu: Cone, rho_index: int) -> int:
    """One minus the coordinate sum of a ray in the basis of a maximal cone.

    Zero exactly on the generators of the cone; at least one on every other
    ray once subvarieties are Fano.
    """
    _check_max_cone(fan, mu)
    _check_ray(fan, rho_index)
    coords = fan_mod.coords_in_basis(fan, mu, fan.rays[rho_index])
    return 1 - sum(coords)


def _check_max_cone(fan: Fan, mu: Cone) -> None:
    fan_mod.require_accepted(fan)
    if tuple(sorted(mu)) not in fan.max_cones:
        raise NotACone(f"{tuple(i + 1 for i in sorted(mu))} is not a maximal cone")


def _check_ray(fan: Fan, idx: int) -> None:
    if not 0 <= idx < fan.n_rays:
        raise IndexOutOfRange(f"ray index {idx} out of range")


def wall_curve_class(fan: Fan, wall: Cone) -> CurveClass:
    """The class of the 1-stratum of a wall (a codimension-1 cone).

    With rho and rho' the generators opposite the wall in its two maximal
    cones, rho + rho' = sum(a_j rho_j) over the wall, and the stratum pairs
    +1 with the opposite divisors and -a_j with the wall divisors.
    """
    fan_mod.require_accepted(fan)
    key = tuple(sorted(wall))
    if len(key) != fan.dim - 1 or not fan_mod.is_cone(fan, key):
        raise NotACone(f"{tuple(i + 1 for i in key)} is not a wall")
    owners = [c for c in fan.max_cones if set(key) <= set(c)]
    if len(owners) != 2:
        raise LocateFailure(f"wall {tuple(i + 1 for i in key)} has {len(owners)} sides")
    rho = next(iter(set(owners[0]) - set(key)))
    rho2 = next(iter(set(owners[1]) - set(key)))
    coords = fan_mod.coords_in_basis(fan, owners[1], fan.rays[rho])
    pairings = [0] * fan.n_rays
    pairings[rho] += 1
    pairings[rho2] += 1
    pos = {i: t for t, i in enumerate(owners[1])}
    assert coords[pos[rho2]] == -1, "wall crossing is not unimodular"
    for j in key:
        pairings[j] -= coords[pos[j]]
    return fan_mod.curve_class(fan, pairings)


def min_tree(fan: Fan, mu: Cone, d: int) -> ToricTree:
    """Greedy wall-crossing chain from the fixed point of mu to D_d."""
    root = tuple(sorted(mu))
    _check_max_cone(fan, root)
    _check_ray(fan, d)
    verified = fano.classify(fan).tier >= fano.Tier.SUBVARIETIES_FANO
    edges: list[tuple[Cone, int]] = []
    total = CurveClass((0,) * fan.n_rays)
    current = root
    steps = 0
    while d not in current:
        steps += 1
        if steps > 10_000:
            raise LocateFailure("wall-crossing walk failed to terminate")
        coords = fan_mod.coords_in_basis(fan, current, fan.rays[d])
        drop = None
        for t, i in enumerate(current):
            if coords[t] < 0:
                drop = (i, -coords[t])
                break
        if drop is None:
            raise LocateFailure(
                f"ray {d + 1} lies inside cone {tuple(i + 1 for i in current)}"
            )
        wall = tuple(i for i in current if i != drop[0])
        owners = [c for c in fan.max_cones if set(wall) <= set(c)]
        nxt = owners[0] if owners[0] != current else owners[1]
        edges.append((wall, drop[1]))
        total = total + wall_curve_class(fan, wall).scaled(drop[1])
        current = nxt
    return ToricTree(root, d, tuple(edges), total, verified)


def tree_for_class(fan: Fan, beta: CurveClass) -> tuple[tuple[ToricTree, int], ...]:
    """Tree realization of a curve class rooted where it pairs negatively.

    The divisors beta meets negatively must span a face of a maximal cone mu
    (the smallest such cone is used); each divisor met positively outside mu
    contributes its pairing many copies of the greedy chain from mu.
    """
    beta = fan_mod.curve_class(fan, beta.pairings)
    negatives = tuple(i for i, b in enumerate(beta.pairings) if b < 0)
    candidates = [c for c in fan.max_cones if set(negatives) <= set(c)]
    if not candidates:
        raise PreconditionFailed(
            "divisors with negative pairing do not lie in one maximal cone"
        )
    mu = candidates[0]
    out = []
    for d, b in enumerate(beta.pairings):
        if b > 0 and d not in mu:
            out.append((min_tree(fan, mu, d), b))
    return tuple(out)


def tree_total(trees: tuple[tuple[ToricTree, int], ...]) -> CurveClass:
    """Sum of the tree classes with multiplicity; empty input gives nothing
    to size the zero class by, so callers handle that case."""
    if not trees:
        raise PreconditionFailed("no trees to total")
    total = trees[0][0].cls.scaled(0)
    for tree, count in trees:
        total = total + tree.cls.scaled(count)
    return total
