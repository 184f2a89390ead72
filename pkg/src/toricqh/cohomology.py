"""Cohomology of the toric variety with a pinned stratum-class basis.

The basis comes from a line shelling of the maximal cones: a generic
lattice perturbation orders the cones, and each cone mu_i is cut down to
tau_i by intersecting with its later facet-neighbors.  The classes of the
strata X(tau_i) form a basis, one class of degree d per tau_i with
|tau_i| = d.  Normal forms are computed degree by degree with exact row
reduction over Q, pivoting away from the pinned square-free monomials
prod(D_rho, rho in tau_i) so every class is expressed in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Optional, Sequence

from . import fan as fan_mod
from . import fano, lattice
from .errors import IndexOutOfRange, NotACone, NotFano, PreconditionFailed
from .fan import Cone, Fan

Monomial = tuple[int, ...]  # sorted divisor indices with multiplicity


class CohomologyClass:
    """A class in the pinned basis: sparse map basis index -> rational."""

    __slots__ = ("coords",)

    def __init__(self, coords: Optional[Mapping[int, Fraction]] = None):
        clean = {}
        if coords:
            for i, c in coords.items():
                c = Fraction(c)
                if c != 0:
                    clean[int(i)] = c
        self.coords = clean

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other) -> bool:
        return isinstance(other, CohomologyClass) and self.coords == other.coords

    def __hash__(self):
        return hash(tuple(sorted(self.coords.items())))

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        out = dict(self.coords)
        for i, c in other.coords.items():
            out[i] = out.get(i, Fraction(0)) + c
        return CohomologyClass(out)

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + other.scaled(Fraction(-1))

    def scaled(self, c) -> "CohomologyClass":
        c = Fraction(c)
        return CohomologyClass({i: c * v for i, v in self.coords.items()})

    def __repr__(self):
        if not self.coords:
            return "CohomologyClass(0)"
        body = " + ".join(f"{c}*b{i}" for i, c in sorted(self.coords.items()))
        return f"CohomologyClass({body})"


@dataclass(frozen=True)
class Shelling:
    """Shelling order of the maximal cones with the cut-down cones tau."""

    perturbation: tuple[int, ...]
    order: tuple[Cone, ...]
    tau: tuple[Cone, ...]


def _cone_point_functional(fan: Fan, cone: Cone) -> tuple[int, ...]:
    # the functional equal to 1 on every generator of the cone: the sum of
    # the dual basis rows
    mat = lattice.mat_from_columns(fan_mod.cone_generators(fan, cone))
    inv = lattice.integer_inverse(mat)
    return tuple(sum(inv[r][j] for r in range(fan.dim)) for j in range(fan.dim))


def _norm_shell(n: int, radius: int):
    if radius == 0:
        yield (0,) * n
        return
    span = range(-radius, radius + 1)
    from itertools import product

    for v in sorted(product(span, repeat=n)):
        if max(abs(x) for x in v) == radius:
            yield v


def shelling(fan: Fan) -> Shelling:
    """Deterministic line shelling of an accepted Fano fan.

    Candidate perturbation vectors are scanned from the ray sum outward by
    increasing max-norm (lexicographic within a shell); the first making all
    cone pairings distinct wins, and the cones are sorted by decreasing
    pairing.
    """
    ring = _ring(fan)
    return ring.shelling


def _compute_shelling(fan: Fan) -> Shelling:
    fan_mod.require_accepted(fan)
    funcs = {cone: _cone_point_functional(fan, cone) for cone in fan.max_cones}
    base = (0,) * fan.dim
    for ray in fan.rays:
        base = lattice.vadd(base, ray)
    chosen = None
    radius = 0
    while chosen is None:
        for offset in _norm_shell(fan.dim, radius):
            cand = lattice.vadd(base, offset)
            values = [lattice.dot(funcs[c], cand) for c in fan.max_cones]
            if len(set(values)) == len(values):
                chosen = cand
                break
        radius += 1
        if radius > 10_000:
            raise PreconditionFailed("no generic perturbation found")

    order = sorted(fan.max_cones, key=lambda c: -lattice.dot(funcs[c], chosen))
    taus = []
    for i, mu in enumerate(order):
        gens = set(mu)
        for later in order[i + 1 :]:
            if len(set(mu) & set(later)) == fan.dim - 1:
                gens &= set(later)
        taus.append(tuple(sorted(gens)))
    return Shelling(chosen, tuple(order), tuple(taus))


class _DegreeReducer:
    """Row-reduced relations for one degree, with the pinned columns last."""

    def __init__(self, columns: list[Monomial], n_pinned: int, rows, pivots, col_of, basis_ids):
        self.columns = columns
        self.n_pinned = n_pinned
        self.rows = rows
        self.pivots = pivots
        self.col_of = col_of
        self.basis_ids = basis_ids  # column position (in pinned block) -> basis index

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        work = dict(vec)
        for row, pivot in zip(self.rows, self.pivots):
            coeff = work.get(pivot)
            if not coeff:
                continue
            for j, val in enumerate(row):
                if val:
                    work[j] = work.get(j, Fraction(0)) - coeff * val
            work.pop(pivot, None)
        out = {}
        for j, val in work.items():
            if val == 0:
                continue
            assert j >= len(self.columns) - self.n_pinned, "reduction escaped the pinned block"
            out[self.basis_ids[j]] = val
        return out


class _CohomologyRing:
    def __init__(self, fan: Fan):
        fan_mod.require_accepted(fan)
        if fano.classify(fan).tier < fano.Tier.FANO:
            raise NotFano("the stratum basis needs a Fano fan")
        self.fan = fan
        self.shelling = _compute_shelling(fan)
        self.basis_tau = self.shelling.tau
        self.by_degree: dict[int, list[int]] = {}
        for i, tau in enumerate(self.basis_tau):
            self.by_degree.setdefault(len(tau), []).append(i)
        tops = self.by_degree.get(fan.dim, [])
        zeros = self.by_degree.get(0, [])
        assert len(tops) == 1 and len(zeros) == 1, "shelling census lost uniqueness at the ends"
        self.top_index = tops[0]
        self.unit_index = zeros[0]
        self._reducers: dict[int, _DegreeReducer] = {}

    def census(self) -> dict[int, int]:
        return {d: len(ids) for d, ids in sorted(self.by_degree.items())}

    def reducer(self, degree: int) -> _DegreeReducer:
        red = self._reducers.get(degree)
        if red is not None:
            return red
        fan = self.fan
        m, n = fan.n_rays, fan.dim
        monos = sorted(combinations_with_replacement(range(m), degree))
        pinned = {}
        for i in self.by_degree.get(degree, []):
            mono = tuple(self.basis_tau[i])
            assert mono not in pinned, "duplicate tau monomial"
            pinned[mono] = i
        unpinned = [mo for mo in monos if mo not in pinned]
        columns = unpinned + [mo for mo in monos if mo in pinned]
        col_of = {mo: j for j, mo in enumerate(columns)}
        basis_ids = {j: pinned[mo] for j, mo in enumerate(columns) if mo in pinned}

        rows: list[list[Fraction]] = []
        if degree >= 1:
            lower = sorted(combinations_with_replacement(range(m), degree - 1))
            for t in range(n):
                coeffs = [fan.rays[i][t] for i in range(m)]
                for mono in lower:
                    row = [Fraction(0)] * len(columns)
                    for i in range(m):
                        if coeffs[i]:
                            row[col_of[tuple(sorted(mono + (i,)))]] += coeffs[i]
                    rows.append(row)
        for pset in fan_mod.primitive_sets(fan):
            if len(pset) > degree:
                continue
            for mono in combinations_with_replacement(range(m), degree - len(pset)):
                row = [Fraction(0)] * len(columns)
                row[col_of[tuple(sorted(pset + mono))]] += 1
                rows.append(row)

        reduced, pivots = lattice.rref(rows)
        n_pinned = len(pinned)
        assert all(p < len(columns) - n_pinned for p in pivots), "a pinned monomial pivoted"
        assert len(columns) - len(pivots) == n_pinned, (
            f"degree {degree}: quotient dimension {len(columns) - len(pivots)}"
            f" does not match the shelling census {n_pinned}"
        )
        red = _DegreeReducer(columns, n_pinned, reduced, pivots, col_of, basis_ids)
        self._reducers[degree] = red
        return red

    def quotient_dimension(self, degree: int) -> int:
        if degree < 0 or degree > self.fan.dim:
            return 0
        red = self.reducer(degree)
        return len(red.columns) - len(red.rows)

    def normal_form(self, poly: Mapping[Monomial, Fraction]) -> CohomologyClass:
        by_degree: dict[int, dict[int, Fraction]] = {}
        for mono, coeff in poly.items():
            key = tuple(sorted(int(i) for i in mono))
            if any(i < 0 or i >= self.fan.n_rays for i in key):
                raise IndexOutOfRange(f"monomial {key} has a divisor index out of range")
            coeff = Fraction(coeff)
            if coeff == 0 or len(key) > self.fan.dim:
                continue
            red = self.reducer(len(key))
            vec = by_degree.setdefault(len(key), {})
            col = red.col_of[key]
            vec[col] = vec.get(col, Fraction(0)) + coeff
        coords: dict[int, Fraction] = {}
        for degree, vec in by_degree.items():
            for i, c in self.reducer(degree).reduce(vec).items():
                coords[i] = coords.get(i, Fraction(0)) + c
        return CohomologyClass(coords)


_RINGS: dict[Fan, _CohomologyRing] = {}


def _ring(fan: Fan) -> _CohomologyRing:
    ring = _RINGS.get(fan)
    if ring is None:
        ring = _CohomologyRing(fan)
        _RINGS[fan] = ring
    return ring


def normal_form(fan: Fan, poly: Mapping[Monomial, Fraction]) -> CohomologyClass:
    """Reduce a formal polynomial in the divisor symbols to basis coords.

    Keys are monomials as sorted tuples of divisor indices with multiplicity
    (the empty tuple is the constant term); values are rationals.
    """
    return _ring(fan).normal_form(poly)


def basis_tau(fan: Fan) -> tuple[Cone, ...]:
    return _ring(fan).basis_tau


def basis_class(fan: Fan, index: int) -> CohomologyClass:
    ring = _ring(fan)
    if not 0 <= index < len(ring.basis_tau):
        raise IndexOutOfRange(f"basis index {index} out of range")
    return CohomologyClass({index: Fraction(1)})


def unit_class(fan: Fan) -> CohomologyClass:
    return CohomologyClass({_ring(fan).unit_index: Fraction(1)})


def point_class(fan: Fan) -> CohomologyClass:
    return CohomologyClass({_ring(fan).top_index: Fraction(1)})


def betti_census(fan: Fan) -> dict[int, int]:
    """Number of basis classes per degree (the even Betti numbers)."""
    return _ring(fan).census()


def degree_dimension(fan: Fan, degree: int) -> int:
    """Dimension of the degree-d quotient computed by row reduction alone.

    Counts monomials minus relation rank, independently of the pinned basis,
    so it can be compared against the shelling census.
    """
    return _ring(fan).quotient_dimension(degree)


def class_degrees(fan: Fan, cls: CohomologyClass) -> set[int]:
    ring = _ring(fan)
    return {len(ring.basis_tau[i]) for i in cls.coords}


def cup(fan: Fan, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    """Classical cup product in the pinned basis."""
    ring = _ring(fan)
    poly: dict[Monomial, Fraction] = {}
    for i, ca in a.coords.items():
        for j, cb in b.coords.items():
            mono = tuple(sorted(ring.basis_tau[i] + ring.basis_tau[j]))
            if len(mono) > fan.dim:
                continue
            poly[mono] = poly.get(mono, Fraction(0)) + ca * cb
    return ring.normal_form(poly)


def stratum_class(fan: Fan, sigma: Sequence[int]) -> CohomologyClass:
    """The class of the closed stratum X(sigma) for a cone sigma."""
    key = tuple(sorted(sigma))
    if not fan_mod.is_cone(fan, key):
        raise NotACone(f"{tuple(i + 1 for i in key)} does not span a cone")
    return _ring(fan).normal_form({key: Fraction(1)})


def integrate(fan: Fan, a: CohomologyClass) -> Fraction:
    """Evaluation against the fundamental class: the point-class coefficient."""
    ring = _ring(fan)
    return a.coords.get(ring.top_index, Fraction(0))
