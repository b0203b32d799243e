"""Parameters of the linear code whose parity-check columns are a track.

A point set of P^4 with no four points on a plane is the column set of a
parity-check matrix of an ``[n, n-5, d]`` code with ``d >= 5``.  The dual code
is spanned by the rows of that matrix, so its weights are ``n`` minus the
number of columns on a hyperplane.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import isqrt

import numpy as np

from .gfield import check_modulus
from .projgeom import PointSet, p4_array, p4_size, rank
from .verify import is_track, no_three_collinear

MAX_SUBSET = 6


class CodeError(ValueError):
    pass


@dataclass
class LinearCodeSpec:
    q: int
    H: list[list[int]]
    d: int | None = None
    dual_d: int | None = None

    @property
    def n(self) -> int:
        return len(self.H[0])

    @property
    def k(self) -> int:
        return self.n - len(self.H)

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(row[j] for row in self.H) for j in range(self.n)]

    @property
    def amds(self) -> bool:
        return self.d == self.n - self.k

    @property
    def nmds(self) -> bool:
        # the dual is an [n, n-k] code
        return self.amds and self.dual_d == self.n - (self.n - self.k)


def parity_check_from_track(S: PointSet, check: bool = True) -> LinearCodeSpec:
    if check and not is_track(S).is_track:
        raise CodeError("columns do not form a track")
    return LinearCodeSpec(q=S.q, H=[[p[i] for p in S] for i in range(5)])


def min_distance_exhaustive(spec: LinearCodeSpec) -> int:
    """Smallest number of linearly dependent columns (searched up to 6)."""
    cols = spec.columns()
    for w in range(1, MAX_SUBSET + 1):
        for sub in combinations(cols, w):
            if rank(list(sub), spec.q) < w:
                return w
    raise CodeError(f"no {MAX_SUBSET} dependent columns; not a track code")


def min_distance(spec: LinearCodeSpec) -> int:
    """Like :func:`min_distance_exhaustive`, using the bulk scans for ``w <= 4``."""
    cols = spec.columns()
    q = spec.q
    if any(not any(c) for c in cols):
        return 1
    S = PointSet(q)
    for c in cols:
        S.add(c)
    if len(S) < len(cols):
        return 2
    if len(S) < 4:
        return min_distance_exhaustive(spec)
    if not no_three_collinear(S):
        return 3
    if not is_track(S).is_track:
        return 4
    for w in (5, MAX_SUBSET):
        for sub in combinations(cols, w):
            if rank(list(sub), q) < w:
                return w
    raise CodeError(f"no {MAX_SUBSET} dependent columns; not a track code")


def hyperplane_counts(spec: LinearCodeSpec, chunk: int = 1 << 16) -> np.ndarray:
    """``|S n H|`` for every hyperplane ``H`` in enumeration order."""
    q = spec.q
    cols = np.array(spec.H, dtype=np.int64)
    hyper = p4_array(q)
    out = np.empty(len(hyper), dtype=np.int64)
    for i in range(0, len(hyper), chunk):
        out[i:i + chunk] = ((hyper[i:i + chunk] @ cols) % q == 0).sum(axis=1)
    return out


def dual_min_distance(spec: LinearCodeSpec) -> int:
    return spec.n - int(hyperplane_counts(spec).max())


def code_parameters(S: PointSet, dual: bool = True) -> LinearCodeSpec:
    spec = parity_check_from_track(S)
    spec.d = min_distance(spec)
    if dual:
        spec.dual_d = dual_min_distance(spec)
    return spec


def track_upper_bound(q: int) -> int:
    """Largest n with ``(q-1) n(n-1)/2 <= |P^4| - n``."""
    check_modulus(q)
    total = p4_size(q)
    n = 0
    while (q - 1) * (n + 1) * n // 2 <= total - (n + 1):
        n += 1
    return n


def elliptic_track_size(q: int, p: int | None = None, m: int = 1) -> int:
    """Length of the elliptic-curve NMDS codes over F_q, ``q = p^m``."""
    if p is None:
        p = q
    if p**m != q:
        raise CodeError(f"{q} != {p}^{m}")
    r = isqrt(4 * q)
    if r % p == 0 and m >= 3 and m % 2 == 1:
        return q + r
    return q + r + 1


def dodunekov_bound(k: int, q: int) -> int:
    """Maximum length of an NMDS code of dimension ``k``."""
    if k < 1:
        raise CodeError("dimension must be positive")
    return 2 * q + k


def code_report(S: PointSet) -> dict:
    spec = code_parameters(S)
    q = S.q
    return {
        "q": q,
        "n": spec.n,
        "k": spec.k,
        "d": spec.d,
        "dual_d": spec.dual_d,
        "amds": spec.amds,
        "nmds": spec.nmds,
        "upper_bound": track_upper_bound(q),
        "elliptic_size": elliptic_track_size(q),
        "dodunekov": dodunekov_bound(5, q),
    }
