"""Points of P^4 over F_q: normalization, rank, enumeration, planes.

Points are plain 5-tuples of ints, normalized so the first nonzero coordinate
is 1.  Bulk work (plane marking, coplanarity scans) goes through numpy int64
arrays; :func:`point_index` maps normalized rows to their position in the
lexicographic enumeration of P^4, which is what the coverage bitsets index.
"""

from __future__ import annotations

import json
from itertools import combinations, product
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .gfield import check_modulus

DIM = 4
NCOORD = DIM + 1

# column triples for the ten 3x3 minors of a 3x5 matrix, lexicographic
MINOR_COLS = tuple(combinations(range(NCOORD), 3))
_MINOR_POS = {cols: i for i, cols in enumerate(MINOR_COLS)}

# vectorized paths keep every intermediate product below 2**63
MAX_VECTOR_Q = 1 << 20

Point = tuple[int, int, int, int, int]
Hyperplane = Point


class GeometryError(ValueError):
    pass


def p4_size(q: int) -> int:
    return q**4 + q**3 + q**2 + q + 1


def normalize(raw: Sequence[int], q: int) -> Point:
    """Scale ``raw`` so its first nonzero coordinate is 1."""
    v = [int(x) % q for x in raw]
    if len(v) != NCOORD:
        raise GeometryError(f"expected {NCOORD} coordinates, got {len(v)}")
    for x in v:
        if x:
            s = pow(x, -1, q)
            return tuple(y * s % q for y in v)
    raise GeometryError("the zero vector is not a projective point")


def rank(points: Sequence[Sequence[int]], q: int) -> int:
    """Rank over F_q of the matrix whose rows are ``points``."""
    if not points:
        raise GeometryError("rank of an empty list of points")
    rows = [[int(x) % q for x in p] for p in points]
    r = 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], -1, q)
        prow = [x * inv % q for x in rows[r]]
        rows[r] = prow
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            if f:
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], prow)]
        r += 1
        if r == len(rows):
            break
    return r


def enumerate_p4(q: int) -> Iterator[Point]:
    """All points of P^4 in lexicographic order of their normalized tuples."""
    check_modulus(q)
    field = range(q)
    for lead in range(DIM, -1, -1):
        head = (0,) * lead + (1,)
        for tail in product(field, repeat=DIM - lead):
            yield head + tail


def enumerate_hyperplanes(q: int) -> Iterator[Hyperplane]:
    """Normalized coefficient vectors ``[a0..a4]`` of all hyperplanes."""
    # point-hyperplane duality: same index set as the points
    return enumerate_p4(q)


def on_hyperplane(h: Sequence[int], p: Sequence[int], q: int) -> bool:
    return sum(x * y for x, y in zip(h, p)) % q == 0


def _lead_offsets(q: int) -> np.ndarray:
    # number of points whose leading 1 sits strictly right of position p
    return np.array([(q ** (DIM - p) - 1) // (q - 1) for p in range(NCOORD)], dtype=np.int64)


def point_index(p: Sequence[int], q: int) -> int:
    """Position of a normalized point in :func:`enumerate_p4` order."""
    lead = next(i for i, x in enumerate(p) if x)
    rest = 0
    for x in p[lead + 1:]:
        rest = rest * q + x
    return (q ** (DIM - lead) - 1) // (q - 1) + rest


def point_from_index(idx: int, q: int) -> Point:
    for lead in range(DIM, -1, -1):
        block = q ** (DIM - lead)
        if idx < block:
            tail = []
            for _ in range(DIM - lead):
                idx, r = divmod(idx, q)
                tail.append(r)
            return (0,) * lead + (1,) + tuple(reversed(tail))
        idx -= block
    raise GeometryError("index beyond P^4")


def _check_vector_q(q: int) -> None:
    if q > MAX_VECTOR_Q:
        raise GeometryError(f"bulk geometry routines need q <= {MAX_VECTOR_Q}")


def inverse_table(q: int) -> np.ndarray:
    inv = np.zeros(q, dtype=np.int64)
    inv[1:] = [pow(x, -1, q) for x in range(1, q)]
    return inv


def normalize_rows(arr: np.ndarray, q: int, inv: np.ndarray | None = None) -> np.ndarray:
    """Normalize the nonzero rows of ``arr`` (shape ``(..., 5)``), in place."""
    if inv is None:
        inv = inverse_table(q)
    lead = np.argmax(arr != 0, axis=-1)
    lead_val = np.take_along_axis(arr, lead[..., None], axis=-1)
    arr *= inv[lead_val]
    arr %= q
    return arr


def point_index_rows(arr: np.ndarray, q: int) -> np.ndarray:
    """Vectorized :func:`point_index` over normalized rows."""
    lead = np.argmax(arr != 0, axis=-1)
    weights = q ** np.arange(DIM, -1, -1, dtype=np.int64)
    value = arr @ weights
    return _lead_offsets(q)[lead] + value - weights[lead]


def p4_array(q: int) -> np.ndarray:
    """All points of P^4 as an ``(N, 5)`` array in enumeration order."""
    _check_vector_q(q)
    blocks = []
    for lead in range(DIM, -1, -1):
        k = DIM - lead
        n = q**k
        blk = np.zeros((n, NCOORD), dtype=np.int64)
        blk[:, lead] = 1
        idx = np.arange(n, dtype=np.int64)
        for col in range(NCOORD - 1, lead, -1):
            idx, blk[:, col] = np.divmod(idx, q)
        blocks.append(blk)
    return np.concatenate(blocks)


def plane_coefficients(q: int) -> np.ndarray:
    """Representatives (1,b,c), (0,1,c), (0,0,1) of the points of P^2."""
    r = np.arange(q, dtype=np.int64)
    b, c = np.meshgrid(r, r, indexing="ij")
    fam1 = np.stack([np.ones(q * q, dtype=np.int64), b.ravel(), c.ravel()], axis=1)
    fam2 = np.stack([np.zeros(q, dtype=np.int64), np.ones(q, dtype=np.int64), r], axis=1)
    fam3 = np.array([[0, 0, 1]], dtype=np.int64)
    return np.concatenate([fam1, fam2, fam3])


def span_points(bases: np.ndarray, q: int, coeffs: np.ndarray | None = None,
                inv: np.ndarray | None = None) -> np.ndarray:
    """Normalized points of the planes spanned by ``bases`` (shape ``(T, 3, 5)``).

    Returns shape ``(T, q^2+q+1, 5)``.  Bases must have rank 3.
    """
    if coeffs is None:
        coeffs = plane_coefficients(q)
    pts = np.matmul(coeffs, bases) % q
    return normalize_rows(pts, q, inv)


def plane_points(p1: Sequence[int], p2: Sequence[int], p3: Sequence[int], q: int) -> list[Point]:
    """The ``q^2+q+1`` points of the plane spanned by three points."""
    if rank([p1, p2, p3], q) < 3:
        raise GeometryError("points do not span a plane")
    basis = np.array([[p1, p2, p3]], dtype=np.int64) % q
    return [tuple(int(x) for x in row) for row in span_points(basis, q)[0]]


def plucker(bases: np.ndarray, q: int) -> np.ndarray:
    """The ten 3x3 minors (mod q) of each 3x5 matrix in ``bases``.

    Columns follow :data:`MINOR_COLS`.  A row of zeros means the three points
    are dependent.
    """
    bases = np.asarray(bases, dtype=np.int64)
    out = np.empty(bases.shape[:-2] + (len(MINOR_COLS),), dtype=np.int64)
    r0, r1, r2 = bases[..., 0, :], bases[..., 1, :], bases[..., 2, :]
    for k, (i, j, l) in enumerate(MINOR_COLS):
        m = (r1[..., j] * r2[..., l] - r1[..., l] * r2[..., j]) % q * r0[..., i]
        m -= (r1[..., i] * r2[..., l] - r1[..., l] * r2[..., i]) % q * r0[..., j]
        m += (r1[..., i] * r2[..., j] - r1[..., j] * r2[..., i]) % q * r0[..., l]
        out[..., k] = m % q
    return out


def _quad_forms() -> list[tuple[tuple[int, ...], list[tuple[int, int, int]]]]:
    # Laplace expansion of a 4x4 minor along the appended row: for each
    # 4-column subset C, terms (column, sign, index of the 3x3 minor on C - {c})
    forms = []
    for cols in combinations(range(NCOORD), 4):
        terms = []
        for k, c in enumerate(cols):
            rest = tuple(x for x in cols if x != c)
            terms.append((c, 1 if (3 + k) % 2 == 0 else -1, _MINOR_POS[rest]))
        forms.append((cols, terms))
    return forms


_QUAD_FORMS = _quad_forms()


def incidence(pl: np.ndarray, points: np.ndarray, q: int) -> np.ndarray:
    """Boolean ``(T, n)``: does point ``n`` lie in the span of triple ``T``?

    ``pl`` holds the minors from :func:`plucker`.  For dependent triples every
    entry is True, since any four rows including them have rank at most 3.
    """
    _check_vector_q(q)
    points = np.asarray(points, dtype=np.int64)
    hit = np.ones((pl.shape[0], points.shape[0]), dtype=bool)
    for cols, terms in _QUAD_FORMS:
        coef = np.empty((pl.shape[0], NCOORD), dtype=np.int64)
        coef[:] = 0
        for c, sign, m in terms:
            coef[:, c] = sign * pl[:, m] % q
        hit &= (coef @ points.T) % q == 0
    return hit


class PointSet:
    """Ordered, duplicate-free collection of normalized points of P^4."""

    def __init__(self, q: int, points: Iterable[Sequence[int]] = ()):
        self.q = check_modulus(q)
        self.points: list[Point] = []
        self._index: dict[Point, int] = {}
        for p in points:
            self.add(p)

    def add(self, p: Sequence[int]) -> int:
        """Insert ``p`` (normalized first); returns its index."""
        p = normalize(p, self.q)
        if p in self._index:
            return self._index[p]
        self._index[p] = len(self.points)
        self.points.append(p)
        return len(self.points) - 1

    def index(self, p: Sequence[int]) -> int:
        return self._index[normalize(p, self.q)]

    def __contains__(self, p) -> bool:
        try:
            return normalize(p, self.q) in self._index
        except GeometryError:
            return False

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __repr__(self) -> str:
        return f"PointSet(q={self.q}, {len(self)} points)"

    def union(self, other: Iterable[Sequence[int]]) -> "PointSet":
        out = PointSet(self.q, self.points)
        for p in other:
            out.add(p)
        return out

    def without(self, drop: Iterable[Sequence[int]]) -> "PointSet":
        gone = {normalize(p, self.q) for p in drop}
        return PointSet(self.q, (p for p in self.points if p not in gone))

    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=np.int64).reshape(-1, NCOORD)

    def to_dict(self, family: str | None = None) -> dict:
        d = {"q": self.q, "points": [list(p) for p in self.points]}
        if family is not None:
            d["family"] = family
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "PointSet":
        try:
            q = data["q"]
            pts = data["points"]
        except (KeyError, TypeError) as exc:
            raise GeometryError("point set JSON needs 'q' and 'points'") from exc
        out = cls(q)
        for p in pts:
            if len(p) != NCOORD or not all(isinstance(x, int) and 0 <= x < q for x in p):
                raise GeometryError(f"bad point {p!r}")
            out.add(p)
        return out

    def save(self, path: str | Path, family: str | None = None) -> None:
        Path(path).write_text(json.dumps(self.to_dict(family)) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "PointSet":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
