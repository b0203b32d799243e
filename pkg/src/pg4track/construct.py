"""The normal rational curve N, its derivative curve V, and the track N u V.

Also exposes the two closed-form identities behind the track property: the
degeneracy conditions for planes through (0,0,0,0,1) and one V point, and the
quadratic ``h`` whose discriminant is ``3(s-t)^2`` for planes through two V
points.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gfield import GF, FieldError
from .projgeom import PointSet, Point

P_INF: Point = (0, 0, 0, 0, 1)


class HypothesisError(ValueError):
    """3 is a square in F_q, so the construction is not guaranteed."""


def nrc_point(t: int, q: int) -> Point:
    return (1, t % q, t * t % q, pow(t, 3, q), pow(t, 4, q))


def derivative_point(t: int, q: int) -> Point:
    return (0, 1, 2 * t % q, 3 * t * t % q, 4 * pow(t, 3, q) % q)


def build_N(q: int) -> PointSet:
    """``{(1,t,t^2,t^3,t^4)} u {(0,0,0,0,1)}``, ascending ``t`` then the point at infinity."""
    GF(q)
    S = PointSet(q, (nrc_point(t, q) for t in range(q)))
    S.add(P_INF)
    return S


def build_V(q: int) -> PointSet:
    """``{(0,1,2t,3t^2,4t^3)}``, ascending ``t``."""
    GF(q)
    return PointSet(q, (derivative_point(t, q) for t in range(q)))


@dataclass(frozen=True)
class TrackFamily:
    q: int
    N: PointSet
    V: PointSet
    full: PointSet
    three_nonsquare: bool

    def family_of(self, i: int) -> str:
        """'N' or 'V' for the point at index ``i`` of :attr:`full`."""
        return "N" if i < len(self.N) else "V"


def build_track(q: int, force: bool = False) -> TrackFamily:
    """Assemble ``N u V`` (2q+1 points).

    Raises :class:`HypothesisError` when 3 is a square mod ``q`` unless
    ``force`` is set.
    """
    F = GF(q)
    nonsquare = F.chi(3) == -1
    if not nonsquare and not force:
        raise HypothesisError(
            f"3 is a square in F_{q}; the set N u V need not be a track (pass force=True to build anyway)"
        )
    N = build_N(q)
    V = build_V(q)
    full = N.union(V)
    assert len(full) == 2 * q + 1
    return TrackFamily(q=q, N=N, V=V, full=full, three_nonsquare=nonsquare)


def prop21_infty_conditions(s: int, t: int, u: int, q: int) -> tuple[int, int]:
    """Both vanish iff (0,0,0,0,1), V(t), N(s), N(u) span only a plane."""
    d = (u - s) % q
    return (
        d * (u + s - 2 * t) % q,
        d * (u * u + u * s + s * s - 3 * t * t) % q,
    )


def prop22_h_and_discriminant(s: int, t: int, q: int) -> tuple[int, int, int]:
    """Coefficients of ``h = x^2 + a x + b`` and its discriminant.

    ``h`` would vanish at the two N-parameters of a plane through V(s) and
    V(t) meeting N twice.  The discriminant always equals ``3(s-t)^2``.
    """
    F = GF(q)
    s %= q
    t %= q
    if s == t:
        raise FieldError("need two distinct parameters")
    a = -(s + t) % q
    b = (s * t - (s - t) ** 2 * F.half) % q
    return a, b, (a * a - 4 * b) % q
