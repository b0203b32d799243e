"""Tracks (4-general sets) in PG(4,q): the set N u V of size 2q+1.

N is the normal rational curve {(1,t,t^2,t^3,t^4)} u {(0,0,0,0,1)} and V the
derivative curve {(0,1,2t,3t^2,4t^3)}.  When 3 is a non-square mod q the union
has no four points on a plane.
"""

from .construct import TrackFamily, build_N, build_V, build_track
from .gfield import GF, FieldElement, Poly, PrimeField
from .projgeom import PointSet, normalize, rank
from .verify import addable_points, brute_cover_search, is_track

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FieldElement",
    "Poly",
    "PointSet",
    "PrimeField",
    "TrackFamily",
    "addable_points",
    "brute_cover_search",
    "build_N",
    "build_V",
    "build_track",
    "is_track",
    "normalize",
    "rank",
]
