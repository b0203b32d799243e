import json
import random
from math import sqrt
from pathlib import Path

import pytest

from oracles import big_F_from_rational_formulas
from pg4track.coverproof import (
    AffineTarget,
    CoverProofError,
    CoverWitness,
    Route,
    b_equations,
    big_F,
    big_F_coefficients,
    cover_summary,
    cover_witness,
    curve_point_count,
    denom_quartic,
    discriminant,
    f_value,
    g_value,
    hasse_weil_slack,
    j_closed_form,
    j_value,
    lambda_coefficients,
    lambda_residuals,
    matrix_a_witness,
    matrix_b_witness,
    perfect_square_exclusion,
    square_obstruction,
    sum_and_product,
)
from pg4track.gfield import GF, Poly, poly_roots, poly_square_root
from pg4track.projgeom import rank
from pg4track.verify import Restrict, TripleTable

GOLDEN = json.loads((Path(__file__).parent / "data" / "big_F_golden.json").read_text())


def rand_target(rng, q):
    return AffineTarget(*(rng.randrange(q) for _ in range(4)))


def test_denom_quartic_examples():
    assert denom_quartic(AffineTarget(0, 0, 0, 0), 7) == Poly([0, 0, 0, 0, 1], 7)
    assert denom_quartic(AffineTarget(1, 0, 0, 0), 5) == Poly([0, 0, 0, 1, 1], 5)
    q = 11
    for a in range(q):
        for c in range(q):
            assert denom_quartic(AffineTarget(a, a * a % q, c, 0), q)(a) == 0


@pytest.mark.parametrize("entry", GOLDEN["targets"], ids=lambda e: str(e["abcd"]))
def test_big_F_golden(entry):
    assert big_F_coefficients(*entry["abcd"]) == entry["coeffs"]


def test_big_F_matches_rational_formulas_on_random_integers():
    rng = random.Random(0)
    for _ in range(25):
        t = [rng.randint(-50, 50) for _ in range(4)]
        assert big_F_coefficients(*t) == big_F_from_rational_formulas(*t)


def test_big_F_simple_cases():
    assert big_F(AffineTarget(0, 0, 0, 0), 7) == Poly.monomial(10, GF(7))
    q = 5
    rng = random.Random(1)
    for _ in range(20):
        assert big_F(rand_target(rng, q), q).lead == 1
    assert GF(q).chi(3) == -1


@pytest.mark.parametrize("q", [5, 7, 17, 31, 89])
def test_discriminant_identity(q):
    rng = random.Random(q)
    for _ in range(20):
        T = rand_target(rng, q)
        den, F = denom_quartic(T, q), big_F(T, q)
        for u in range(q):
            D = discriminant(T, u, q)
            if den(u) == 0:
                assert D is None
            else:
                assert 9 * D * den(u) ** 2 % q == 3 * F(u) % q


@pytest.mark.parametrize("q", [7, 13, 31])
def test_g_and_f_match_echelon_entries(q):
    # eliminate the route-A matrix directly and compare its last row
    rng = random.Random(q)
    for _ in range(40):
        T = rand_target(rng, q)
        s, t, u = rng.randrange(q), rng.randrange(q), rng.randrange(q)
        if s == t:
            continue
        rows = CoverWitness(Route.MATRIX_A, u=u, t=t, s=s).rows(T, q)
        inv = lambda x: pow(x, -1, q)
        r2 = rows[1]
        r3 = [(x - y) % q for x, y in zip(rows[2], rows[1])]
        r4 = [(x - y) % q for x, y in zip(rows[3], rows[0])]
        r4 = [(x - r4[1] * y) % q for x, y in zip(r4, r2)]
        f3 = r4[2] * inv(r3[2]) % q
        r4 = [(x - f3 * y) % q for x, y in zip(r4, r3)]
        assert r4[3] == g_value(T, s, t, u, q)
        assert r4[4] == f_value(T, s, t, u, q)
        assert j_value(T, s, t, u, q) == j_closed_form(T, s, t, u, q)


def test_sum_and_product_satisfy_g_and_f():
    q = 31
    rng = random.Random(4)
    F = GF(q)
    for _ in range(30):
        T = rand_target(rng, q)
        for u in range(q):
            sp = sum_and_product(T, u, q)
            if sp is None:
                continue
            sigma, pi = sp
            r = F.sqrt(sigma * sigma - 4 * pi)
            if r is None:
                continue
            s, t = (sigma + r) * F.half % q, (sigma - r) * F.half % q
            assert g_value(T, s, t, u, q) == 0
            assert f_value(T, s, t, u, q) == 0


def test_matrix_b_examples():
    q = 5
    w = matrix_b_witness(AffineTarget(2, 4, 3, 1), q)
    assert w.route is Route.ON_TRACK and w.u == 2
    assert w.check(AffineTarget(2, 4, 3, 1), q)
    T = AffineTarget(3, 9 % 7, 27 % 7, 0)
    w = matrix_b_witness(T, 7)
    assert w.route is Route.MATRIX_B and w.u == 3
    assert rank(w.rows(T, 7), 7) == 3
    rootless = [T for T in (AffineTarget(a, b, c, 0) for a in range(q) for b in range(q) for c in range(q))
                if not poly_roots(denom_quartic(T, q))]
    assert rootless
    assert all(matrix_b_witness(T, q) is None for T in rootless)


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_matrix_b_witnesses_are_sound(q):
    rng = random.Random(q)
    for _ in range(200):
        T = rand_target(rng, q)
        w = matrix_b_witness(T, q)
        if w is not None and w.route is Route.MATRIX_B:
            assert rank(w.rows(T, q), q) == 3
            if w.u != T.a:
                assert b_equations(T, w.t, w.u, q) == (0, 0)


def test_matrix_a_precondition():
    with pytest.raises(CoverProofError):
        matrix_a_witness(AffineTarget(0, 0, 0, 0), 7)


@pytest.mark.parametrize("q", [5, 7, 17, 31])
def test_matrix_a_witnesses(q):
    rng = random.Random(q)
    found = 0
    for _ in range(100):
        T = rand_target(rng, q)
        w = matrix_a_witness(T, q, require_rootless=False)
        if w is None:
            continue
        found += 1
        assert w.s != w.t
        assert rank(w.rows(T, q), q) == 3
        assert j_value(T, w.s, w.t, w.u, q) == 0
    assert found


@pytest.mark.parametrize("q", [5, 7])
def test_routes_match_brute_force(tracks, q):
    S = tracks(q).full
    table = TripleTable(S)
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    T = AffineTarget(a, b, c, d)
                    P = T.point()
                    if P in S:
                        continue
                    both = cover_witness(T, q)
                    assert (both is not None) == bool(len(table.covering(P, Restrict.VVN)))
                    a_only = matrix_a_witness(T, q, require_rootless=False, poles=True)
                    assert (a_only is not None) == bool(len(table.covering(P, Restrict.VV)))


def test_curve_point_count_double_count():
    q = 5
    for a in range(q):
        for b in range(q):
            T = AffineTarget(a, b, (a + 2 * b) % q, (3 * a + b + 1) % q)
            P = big_F(T, q)
            by_v = sum(1 for u in range(q) for v in range(q) if v * v % q == 3 * P(u) % q)
            assert curve_point_count(T, q) == by_v
            for u0 in poly_roots(P) if not P.is_zero() else []:
                assert 3 * P(u0) % q == 0


@pytest.mark.parametrize("q", [17, 31, 43])
def test_hasse_weil_band(q):
    rng = random.Random(q)
    slack = hasse_weil_slack(q)
    assert slack == int(8 * sqrt(q))
    n = 0
    while n < 50:
        T = rand_target(rng, q)
        if poly_square_root(big_F(T, q)) is not None:
            continue
        n += 1
        assert abs(curve_point_count(T, q) - (q + 1)) <= 8 * sqrt(q) + 2


def test_lambda_system_top_coefficients():
    rng = random.Random(6)
    for q in (7, 31, 89):
        for _ in range(20):
            T = rand_target(rng, q)
            assert lambda_residuals(T, q)[5:] == [0] * 6
            l4, l3, l2, _, _ = lambda_coefficients(T.a, T.b, T.c, q)
            assert (l4, l3, l2) == (-5 * T.a % q, (T.a**2 + 9 * T.b) % q, (5 * T.a**3 - 9 * T.a * T.b - 6 * T.c) % q)


@pytest.mark.parametrize("q", [7, 17, 31, 89])
def test_square_obstruction_branches(q):
    rng = random.Random(q)
    for _ in range(20):
        a, b = rng.randrange(q), rng.randrange(q)
        if b == a * a % q:
            continue
        for c, got, expected in square_obstruction(a, b, q):
            assert got == expected != 0


def test_obstruction_constant_vanishes_mod_163():
    assert 11247 % 163 == 0 and GF(163).chi(3) == -1


def test_perfect_square_exclusion():
    q = 7
    rng = random.Random(8)
    tried = 0
    while tried < 30:
        T = rand_target(rng, q)
        if T.b == T.a * T.a % q or poly_roots(denom_quartic(T, q)):
            continue
        tried += 1
        assert perfect_square_exclusion(T, q)
    with pytest.raises(CoverProofError):
        perfect_square_exclusion(AffineTarget(1, 1, 0, 0), q)
    G = Poly([3, 1, 4, 1, 5, 1], q)
    assert poly_square_root(G * G) in (G, -G)


def test_cover_summary_fields():
    out = cover_summary(AffineTarget(1, 2, 3, 4), 7)
    assert set(out) == {"target", "route", "u", "s", "t", "curve_points", "F_is_square"}
    assert out["route"] in ("A", "B", "on_track", "none")
