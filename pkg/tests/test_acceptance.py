"""Exit criteria, one test per criterion (per q where a criterion lists several).

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import random
import time
from math import sqrt

import pytest

from pg4track.codes import code_parameters, min_distance_exhaustive, parity_check_from_track, track_upper_bound
from pg4track.construct import build_track, prop22_h_and_discriminant
from pg4track.coverproof import (
    AffineTarget,
    big_F,
    cover_witness,
    curve_point_count,
    denom_quartic,
    discriminant,
    matrix_a_witness,
)
from pg4track.gfield import is_prime, poly_square_root
from pg4track.verify import (
    Restrict,
    TripleTable,
    addable_points,
    addable_points_direct,
    is_track,
    uncovered_affine,
)

pytestmark = pytest.mark.acceptance

TRACK_QS = [5, 7, 17, 19, 29, 31, 41, 43]
GAP_QS = [5, 7, 17, 31]


def test_c01_construction_size(record):
    t0 = time.perf_counter()
    sizes = {q: len(build_track(q).full) for q in TRACK_QS}
    dt = time.perf_counter() - t0
    ok = all(n == 2 * q + 1 for q, n in sizes.items()) and dt < 1.0
    record("C1 construction size 2q+1", ok, f"{sizes} in {dt:.2f}s")
    assert ok


@pytest.mark.parametrize("q", TRACK_QS)
def test_c02_track_property(record, tracks, q):
    t0 = time.perf_counter()
    rep = is_track(tracks(q).full)
    dt = time.perf_counter() - t0
    ok = rep.is_track and dt < 60
    record(f"C2 track property q={q}", ok, f"{rep.checked_subsets} 4-subsets in {dt:.2f}s")
    assert ok


@pytest.mark.parametrize("q", [5, 7, 17, 31, 19, 29, 41, 43])
def test_c03_completeness(record, tracks, q):
    t0 = time.perf_counter()
    rep = addable_points(tracks(q).full, check=False)
    dt = time.perf_counter() - t0
    ok = rep.is_complete and dt < 300
    detail = f"{len(rep.addable)} addable points in {dt:.1f}s"
    if rep.addable:
        detail += f", e.g. {rep.addable[0]}"
    record(f"C3 completeness q={q}", ok, detail)
    assert rep.is_complete, f"track over F_{q} extends by {rep.addable[:3]}"
    assert dt < 300


@pytest.mark.parametrize("q", GAP_QS)
def test_c04_cover_gap(record, tracks, q):
    t0 = time.perf_counter()
    S = tracks(q).full
    gaps = uncovered_affine(S, Restrict.VV)
    table = TripleTable(S)
    unwitnessed = [P for P in gaps if not len(table.covering(P, Restrict.ANY))]
    dt = time.perf_counter() - t0
    ok = len(gaps) >= 1 and not unwitnessed and dt < 120
    record(f"C4 cover gap q={q}", ok, f"{len(gaps)} affine points off V-V-N planes, all ANY-covered: "
           f"{not unwitnessed}, {dt:.1f}s")
    assert ok


def test_c05_covering_at_q89(record):
    q = 89
    rng = random.Random(42)
    t0 = time.perf_counter()
    failures, routes = [], {}
    for _ in range(100_000):
        T = AffineTarget(*(rng.randrange(q) for _ in range(4)))
        w = cover_witness(T, q)
        if w is None:
            failures.append(T)
        else:
            routes[w.route.value] = routes.get(w.route.value, 0) + 1
    dt = time.perf_counter() - t0
    ok = not failures and dt < 300
    record("C5 q=89 constructive cover (1e5 seeded targets)", ok, f"routes {routes}, {len(failures)} failures, {dt:.1f}s")
    assert ok


def test_c06_core_identity(record):
    t0 = time.perf_counter()
    checked = bad = 0
    for q in (5, 7, 17, 31, 89):
        rng = random.Random(600 + q)
        for _ in range(20):
            T = AffineTarget(*(rng.randrange(q) for _ in range(4)))
            den, F = denom_quartic(T, q), big_F(T, q)
            for u in range(q):
                if den(u) == 0:
                    continue
                checked += 1
                if 9 * discriminant(T, u, q) * den(u) ** 2 % q != 3 * F(u) % q:
                    bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and checked > 0 and dt < 10
    record("C6 9*D*den^2 = 3F", ok, f"{checked} points, {bad} mismatches, {dt:.2f}s")
    assert ok


def test_c07_discriminant_identity(record):
    t0 = time.perf_counter()
    qs = [q for q in range(5, 44) if is_prime(q)]
    bad = 0
    for q in qs:
        for s in range(q):
            for t in range(q):
                if s != t and prop22_h_and_discriminant(s, t, q)[2] != 3 * (s - t) ** 2 % q:
                    bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 5
    record("C7 a^2-4b = 3(s-t)^2", ok, f"primes {qs[0]}..{qs[-1]}, {bad} mismatches, {dt:.2f}s")
    assert ok


def test_c08_hasse_weil(record):
    t0 = time.perf_counter()
    worst = {}
    violations = 0
    for q in (17, 31, 43):
        rng = random.Random(800 + q)
        n = 0
        worst[q] = 0
        while n < 50:
            T = AffineTarget(*(rng.randrange(q) for _ in range(4)))
            if poly_square_root(big_F(T, q)) is not None:
                continue
            n += 1
            dev = abs(curve_point_count(T, q) - (q + 1))
            worst[q] = max(worst[q], dev)
            violations += dev > 8 * sqrt(q) + 2
    dt = time.perf_counter() - t0
    ok = violations == 0 and dt < 10
    record("C8 Hasse-Weil band", ok, f"max |N-(q+1)| {worst}, {violations} violations, {dt:.2f}s")
    assert ok


def test_c09_code_parameters(record, tracks):
    t0 = time.perf_counter()
    rows = {}
    ok = True
    for q in (5, 7):
        S = tracks(q).full
        spec = parity_check_from_track(S)
        d = min_distance_exhaustive(spec)
        full = code_parameters(S)
        rows[q] = (spec.n, spec.k, d, full.dual_d)
        ok &= (spec.n, spec.k, d) == (2 * q + 1, 2 * q - 4, 5)
        ok &= full.dual_d <= q and full.amds and not full.nmds
    dt = time.perf_counter() - t0
    ok &= dt < 30
    record("C9 code [2q+1, 2q-4, 5], AMDS not NMDS", ok, f"(n,k,d,dual_d) {rows}, {dt:.2f}s")
    assert ok


def test_c10_upper_bound(record):
    t0 = time.perf_counter()
    ratios = {q: track_upper_bound(q) / q**1.5 for q in (101, 113, 127)}
    dt = time.perf_counter() - t0
    ok = track_upper_bound(5) == 20 and all(abs(r / sqrt(2) - 1) <= 0.05 for r in ratios.values()) and dt < 1
    record("C10 counting bound", ok, f"bound(5)={track_upper_bound(5)}, bound/q^1.5 "
           + ", ".join(f"{q}:{r:.4f}" for q, r in ratios.items()))
    assert ok


def test_c11_negative_control(record):
    t0 = time.perf_counter()
    fam = build_track(13, force=True)
    rep = is_track(fam.full)
    dt = time.perf_counter() - t0
    kinds = sorted(fam.family_of(i) for i in rep.violation) if rep.violation else []
    ok = not rep.is_track and kinds == ["N", "N", "V", "V"] and dt < 10
    record("C11 q=13 forced build fails", ok, f"violation {rep.violation} kinds {kinds}, {dt:.2f}s")
    assert ok


def test_c12_oracle_equivalence(record, tracks):
    t0 = time.perf_counter()
    ok = True
    details = []
    for q in (5, 7):
        S = tracks(q).full
        marked = addable_points(S).addable
        direct = addable_points_direct(S)
        ok &= marked == direct
        table = TripleTable(S)
        mism = 0
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    for d in range(q):
                        T = AffineTarget(a, b, c, d)
                        P = T.point()
                        if P in S:
                            continue
                        mism += (cover_witness(T, q) is not None) != bool(len(table.covering(P, Restrict.VVN)))
                        mism += (matrix_a_witness(T, q, require_rootless=False, poles=True) is not None) != bool(
                            len(table.covering(P, Restrict.VV)))
        ok &= mism == 0
        details.append(f"q={q}: addable {len(marked)}=={len(direct)}, route mismatches {mism}")
    dt = time.perf_counter() - t0
    ok &= dt < 120
    record("C12 oracle equivalence", ok, "; ".join(details) + f", {dt:.1f}s")
    assert ok
