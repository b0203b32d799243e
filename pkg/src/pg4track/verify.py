"""Exhaustive certification of the track property and of completeness.

The 4-subset scan works triple by triple: the ten 3x3 minors of a triple
give five linear forms whose common zeros are exactly the points of the plane
it spans, so one matrix product tests every later point at once.
Completeness marks every point of every plane spanned by three set points in
a boolean array over the enumeration order of P^4; unmarked points are the
ones that can be added.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

from .projgeom import (
    PointSet,
    Point,
    incidence,
    inverse_table,
    normalize,
    p4_size,
    plane_coefficients,
    plucker,
    point_from_index,
    point_index_rows,
    rank,
    span_points,
)


P_INF_ARRAY = np.array([0, 0, 0, 0, 1], dtype=np.int64)


class VerificationError(ValueError):
    pass


class Restrict(str, Enum):
    """Which spanning triples count as covers.

    ``VVN``: two points on x0 = 0 and one affine point.  ``VV``: the same but
    the two points at infinity must differ from (0,0,0,0,1), i.e. both come
    from V when the set is the track.
    """

    ANY = "ANY"
    VVN = "VVN"
    VV = "VV"


@dataclass
class TrackReport:
    is_track: bool
    violation: tuple[int, int, int, int] | None
    checked_subsets: int

    def to_dict(self) -> dict:
        return {
            "is_track": self.is_track,
            "violation": list(self.violation) if self.violation else None,
            "checked_subsets": self.checked_subsets,
        }


@dataclass
class CompletenessReport:
    is_complete: bool
    addable: list[Point] = field(default_factory=list)
    covered_count: int = 0
    p4_size: int = 0

    def to_dict(self) -> dict:
        return {
            "is_complete": self.is_complete,
            "addable": [list(p) for p in self.addable],
            "covered": self.covered_count,
            "p4_size": self.p4_size,
        }


def _triples(n: int) -> np.ndarray:
    return np.array(list(combinations(range(n), 3)), dtype=np.int64).reshape(-1, 3)


def _chunks(total: int, size: int) -> list[slice]:
    return [slice(i, min(i + size, total)) for i in range(0, total, size)]


def _run(fn: Callable, items: Sequence, threads: int) -> Iterable:
    if threads <= 1 or len(items) <= 1:
        return map(fn, items)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def lex_rank(combo: Sequence[int], n: int) -> int:
    """Number of k-subsets of ``range(n)`` lexicographically before ``combo``."""
    k = len(combo)
    r, prev = 0, -1
    for pos, c in enumerate(combo):
        for x in range(prev + 1, c):
            r += comb(n - 1 - x, k - 1 - pos)
        prev = c
    return r


def is_track(S: PointSet, threads: int = 1, chunk: int = 4096) -> TrackReport:
    """Check that every 4 points of ``S`` span P^3.

    The reported violation is the lexicographically first dependent 4-subset
    of indices; ``checked_subsets`` counts subsets up to and including it.
    """
    n = len(S)
    if n < 4:
        raise VerificationError("a track check needs at least 4 points")
    q = S.q
    pts = S.array()
    tri = _triples(n)
    # only triples that leave room for a larger fourth index
    tri = tri[tri[:, 2] < n - 1]
    cols = np.arange(n)

    def scan(sl: slice):
        t = tri[sl]
        hit = incidence(plucker(pts[t], q), pts, q)
        hit &= cols[None, :] > t[:, 2:3]
        rows, ls = np.nonzero(hit)
        if rows.size == 0:
            return None
        r = rows[0]
        return tuple(int(x) for x in t[r]) + (int(ls[0]),)

    slices = _chunks(len(tri), chunk)
    if threads <= 1:
        found = None
        for sl in slices:
            found = scan(sl)
            if found:
                break
    else:
        found = next((v for v in _run(scan, slices, threads) if v), None)
    if found is None:
        return TrackReport(True, None, comb(n, 4))
    return TrackReport(False, found, lex_rank(found, n) + 1)


def is_track_reference(S: PointSet) -> TrackReport:
    """Unvectorized 4-subset scan by Gaussian elimination (test oracle)."""
    n = len(S)
    if n < 4:
        raise VerificationError("a track check needs at least 4 points")
    count = 0
    for quad in combinations(range(n), 4):
        count += 1
        if rank([S[i] for i in quad], S.q) < 4:
            return TrackReport(False, quad, count)
    return TrackReport(True, None, count)


def no_three_collinear(S: PointSet) -> bool:
    q = S.q
    pts = S.array()
    tri = _triples(len(S))
    for sl in _chunks(len(tri), 1 << 16):
        if not np.all(plucker(pts[tri[sl]], q).any(axis=1)):
            return False
    return True


def mark_planes(bases: np.ndarray, q: int, marks: np.ndarray | None = None,
                threads: int = 1, chunk: int = 256) -> np.ndarray:
    """Set ``marks[i]`` for every point ``i`` on a plane spanned by a basis.

    ``bases`` has shape ``(T, 3, 5)``; each basis must have rank 3.
    """
    if marks is None:
        marks = np.zeros(p4_size(q), dtype=bool)
    coeffs = plane_coefficients(q)
    inv = inverse_table(q)

    def work(sl: slice) -> np.ndarray:
        pts = span_points(bases[sl], q, coeffs, inv)
        return point_index_rows(pts.reshape(-1, 5), q)

    for idx in _run(work, _chunks(len(bases), chunk), threads):
        marks[idx] = True
    return marks


def addable_points(S: PointSet, threads: int = 1, check: bool = True) -> CompletenessReport:
    """Points of P^4 that can be added to the track ``S``."""
    if check:
        if not no_three_collinear(S):
            raise VerificationError("three points of the set are collinear")
        if not is_track(S, threads).is_track:
            raise VerificationError("the set is not a track")
    q = S.q
    pts = S.array()
    marks = mark_planes(pts[_triples(len(S))], q, threads=threads)
    free = np.flatnonzero(~marks)
    addable = [point_from_index(int(i), q) for i in free]
    return CompletenessReport(
        is_complete=not addable,
        addable=addable,
        covered_count=int(marks.sum()),
        p4_size=len(marks),
    )


def addable_points_direct(S: PointSet) -> list[Point]:
    """Every P outside ``S`` with ``S u {P}`` still a track (test oracle)."""
    from .projgeom import enumerate_p4

    out = []
    for P in enumerate_p4(S.q):
        if P in S:
            continue
        if is_track(S.union([P])).is_track:
            out.append(P)
    return out


def _infinity_indices(pts: np.ndarray, restrict: Restrict) -> np.ndarray:
    at_inf = pts[:, 0] == 0
    if restrict is Restrict.VV:
        at_inf &= ~np.all(pts == P_INF_ARRAY, axis=1)
    return at_inf


def _restrict_mask(tri: np.ndarray, pts: np.ndarray, restrict: Restrict) -> np.ndarray:
    if restrict is Restrict.ANY:
        return np.ones(len(tri), dtype=bool)
    at_inf = _infinity_indices(pts, restrict)
    affine = pts[:, 0] != 0
    return (at_inf[tri].sum(axis=1) == 2) & (affine[tri].sum(axis=1) == 1)


class TripleTable:
    """All index triples of a point set with their minors, built once."""

    def __init__(self, S: PointSet):
        self.q = S.q
        self.pts = S.array()
        self.triples = _triples(len(S))
        self.plucker = plucker(self.pts[self.triples], self.q)
        self.independent = self.plucker.any(axis=1)
        self._masks = {}

    def mask(self, restrict: Restrict) -> np.ndarray:
        restrict = Restrict(restrict)
        if restrict not in self._masks:
            self._masks[restrict] = self.independent & _restrict_mask(self.triples, self.pts, restrict)
        return self._masks[restrict]

    def covering(self, P: Sequence[int], restrict: Restrict = Restrict.ANY) -> np.ndarray:
        sel = self.mask(restrict)
        hit = incidence(self.plucker[sel], np.array([P], dtype=np.int64), self.q)[:, 0]
        return self.triples[sel][hit]


def brute_cover_search(P: Sequence[int], S: PointSet, restrict: Restrict | str = Restrict.ANY,
                       table: TripleTable | None = None) -> list[tuple[int, int, int]]:
    """Index triples of ``S`` spanning a plane through ``P``, lexicographic.

    ``restrict`` narrows the admissible triples, see :class:`Restrict`.
    """
    P = normalize(P, S.q)
    if P in S:
        raise VerificationError(f"{P} already belongs to the set")
    if table is None:
        table = TripleTable(S)
    return [tuple(int(x) for x in row) for row in table.covering(P, restrict)]


def uncovered_affine(S: PointSet, restrict: Restrict | str = Restrict.VV,
                     threads: int = 1) -> list[Point]:
    """Affine points outside ``S`` on no plane of an admissible triple.

    Only ``VVN`` and ``VV`` make sense here; the planes are marked exhaustively.
    """
    restrict = Restrict(restrict)
    if restrict is Restrict.ANY:
        raise VerificationError("use addable_points for unrestricted covers")
    q = S.q
    pts = S.array()
    inf = np.flatnonzero(_infinity_indices(pts, restrict))
    aff = np.flatnonzero(pts[:, 0] != 0)
    bases = np.array(
        [[pts[i], pts[j], pts[k]] for i, j in combinations(inf, 2) for k in aff],
        dtype=np.int64,
    ).reshape(-1, 3, 5)
    bases = bases[plucker(bases, q).any(axis=1)]
    marks = mark_planes(bases, q, threads=threads)
    first_affine = p4_size(q) - q**4
    out = []
    for i in np.flatnonzero(~marks[first_affine:]) + first_affine:
        P = point_from_index(int(i), q)
        if P not in S:
            out.append(P)
    return out
