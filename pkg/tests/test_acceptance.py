"""Acceptance gate: one test per criterion, run with -v for the scoreboard.

Each criterion is a single test function so `pytest -v` prints exactly one
pass/fail line per criterion.  Tolerances are pinned here and must not be
loosened; shared samples are module-scoped fixtures so the gate stays
within a few minutes end to end.
"""

import random
import time

import numpy as np
import pytest
from mpmath import mp, mpf

from lengthpoly import (
    INFINITY,
    MarkoffTriple,
    Slope,
    assemble,
    axis_intercept,
    classify,
    dlength,
    edge_global,
    expansion_residuals,
    gap_proportion,
    half_trace_coords,
    interior_point,
    interleaving_threshold,
    jet_at,
    membership,
    octant_tangency_certificate,
    one_pinch_edge,
    parabola_certificates,
    pinch_side_share,
    quadrilateral,
    shrink_family,
    side_slope,
    slope_interleaving_ok,
    suggest_assembly_bits,
    value_at,
)
from lengthpoly.degenerate import (
    euclidean_cone_equivalence,
    hausdorff_to_disk,
    lightlike_vector,
    pinch_alignment,
)
from lengthpoly.farey import anchor_pair, arc_child, enumerate_slopes, \
    neighbor_sequence
from lengthpoly.markoff import basis_change, commutator_trace, \
    k_constancy_check
from lengthpoly.polygon import Chart, edge_closed_form, \
    family_edge_to_global, proj_distance

from conftest import sample_coords, sample_geometric_triples


@pytest.fixture(scope="module")
def triples100():
    return sample_geometric_triples(100, seed=2026)


@pytest.fixture(scope="module")
def coord_sets(cusp_triple, funnel_triple, asym_triple):
    pinned = [half_trace_coords(t)
              for t in (cusp_triple, funnel_triple, asym_triple)]
    return pinned + sample_coords(5, seed=411)


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _corners(poly, bits):
    """Vertices of the assembled polygon as positive-sum 3-vectors.

    corner[i] is the intersection of the side lines of edges i and i+1
    (circularly), i.e. the corner the depth-(d+1) child of that slope pair
    is expected to cut.
    """
    with mp.workprec(bits):
        normals = [_cross3(e.P_minus.vec, e.P_plus.vec) for e in poly.edges]
        corners = []
        for i in range(len(normals)):
            w = _cross3(normals[i], normals[(i + 1) % len(normals)])
            if w[0] + w[1] + w[2] < 0:
                w = tuple(-x for x in w)
            corners.append(w)
        return corners


def _norm3(v):
    return mp.sqrt(v[0] ** 2 + v[1] ** 2 + v[2] ** 2)


def test_criterion_01_closed_form_vs_solver(triples100):
    tol = mpf("1e-20")
    start = time.perf_counter()
    worst = mpf(0)
    for t in triples100:
        assert t.bits == 256
        c = half_trace_coords(t)
        bc = basis_change(c)
        with mp.workprec(256):
            for n in range(-8, 9):
                fe = edge_closed_form(c, n)
                approx = family_edge_to_global(c, fe, bc)
                exact = edge_global(t, Slope(n, 1))
                worst = max(worst,
                            proj_distance(approx.P_minus.vec,
                                          exact.P_minus.vec),
                            proj_distance(approx.P_plus.vec,
                                          exact.P_plus.vec))
    elapsed = time.perf_counter() - start
    assert worst <= tol, f"worst relative distance {worst}"
    assert elapsed <= 30, f"took {elapsed:.1f}s, budget 30s"


def test_criterion_02_geometric_progression_at_endpoints(
        cusp_triple, funnel_triple, triples100):
    tol = mpf("1e-20")
    worst = mpf(0)

    def endpoint_products(t, r, points):
        nonlocal worst
        anchor, _ = anchor_pair(r)
        jets = [jet_at(t, neighbor_sequence(r, anchor, k))
                for k in range(-2, 3)]
        for v in points:
            vals = [j.apply(v) for j in jets]
            for i in range(1, len(vals) - 1):
                prod = vals[i - 1] * vals[i + 1] / vals[i] ** 2
                worst = max(worst, abs(prod - 1))

    for t in (cusp_triple, funnel_triple):
        poly = assemble(t, 3)
        with mp.workprec(t.bits):
            for e in poly.edges:
                endpoint_products(t, e.slope,
                                  (e.P_minus.normalized().vec,
                                   e.P_plus.normalized().vec))
    # the far family members (anchor +- 2r at |n| = 8) have gradient norms
    # around e^(16 l), which amplifies endpoint rounding past 1e-20 at 256
    # bits; the criterion pins no bit count here, so certify at 512
    for t in triples100[:10]:
        t2 = MarkoffTriple(*t.as_tuple(), bits=512)
        c = half_trace_coords(t2)
        bc = basis_change(c)
        with mp.workprec(t2.bits):
            for n in range(-8, 9):
                fe = family_edge_to_global(c, edge_closed_form(c, n), bc)
                endpoint_products(t2, fe.slope,
                                  (fe.P_minus.vec, fe.P_plus.vec))
    assert worst <= tol, f"worst |product - 1| = {worst}"


def test_criterion_03_axis_intercept_identity(coord_sets):
    tol = mpf("1e-25")
    worst = mpf(0)
    for c in coord_sets:
        for n in range(-20, 21):
            worst = max(worst, abs(axis_intercept(c, n) - n))
    assert worst <= tol, f"worst |intercept - n| = {worst}"


def test_criterion_04_side_slope_exactness_and_interleaving(coord_sets):
    tol = mpf("1e-25")
    worst = mpf(0)
    for c in coord_sets:
        with mp.workprec(c.bits):
            for n in range(-10, 16):
                expected = c.y * mp.tanh(c.xi(n))
                worst = max(worst, abs(side_slope(c, n) - expected))
        n0 = interleaving_threshold(c)
        assert slope_interleaving_ok(c, n0, n0 + 20), \
            f"interleaving broken past threshold {n0}"
    assert worst <= tol, f"worst slope deviation {worst}"


def test_criterion_05_asymptotic_residuals_bounded():
    bound = mpf(10)
    worst = mpf(0)
    for c in sample_coords(10, seed=5150):
        for n in range(5, 21):
            for key, v in expansion_residuals(c, n).items():
                assert abs(v) <= bound, (key, n, v)
                worst = max(worst, abs(v))
    assert worst <= bound


def test_criterion_06_gap_proportion_monotone_and_saturating(coord_sets):
    for c in coord_sets:
        values = [gap_proportion(c, N) for N in (2, 4, 8, 16)]
        assert all(0 < v < 1 for v in values)
        assert all(a < b for a, b in zip(values, values[1:])), values
        with mp.workprec(c.bits):
            # smallest N with y^2 Xi_N^2 >= 400
            target = mp.log(400 / c.y ** 2) / 2
            N = max(1, int(mp.ceil((target + c.x) / c.l)))
            while (c.y * mp.e ** c.xi(N)) ** 2 < 400:
                N += 1
        assert gap_proportion(c, N) > mpf("0.99")


def test_criterion_07_convexity_and_nesting():
    for a, b, cc in ((3, 3, 3), (3, 3, 4)):
        polys = {}
        for depth in range(2, 11):
            bits = suggest_assembly_bits(float(a), float(b), float(cc), depth)
            t = MarkoffTriple(a, b, cc, bits=bits)
            polys[depth] = (t, assemble(t, depth))

        # every vertex of every depth lies in the circumscribed
        # quadrilateral; corners adjacent to the four base sides sit exactly
        # on its boundary, so allow their rounding (corners carry the
        # assembly precision, roughly 2^-190 after cancellation)
        t10, _ = polys[10]
        quad = quadrilateral(t10)
        for depth, (t, poly) in polys.items():
            for corner in _corners(poly, t.bits):
                assert quad.contains(corner, tol=mpf("1e-40")), \
                    (a, b, cc, depth)

        # depth d+1 only cuts corners: the child of each consecutive slope
        # pair separates exactly their shared corner, not the adjacent ones
        for depth in range(2, 10):
            t, poly = polys[depth]
            corners = _corners(poly, t.bits)
            slopes = [e.slope for e in poly.edges]
            m = len(slopes)
            with mp.workprec(t.bits):
                for i in range(m):
                    child = arc_child(slopes[i], slopes[(i + 1) % m])
                    j = jet_at(t, child)
                    assert j.apply(corners[i]) < 0, \
                        f"depth {depth}: child {child} does not cut"
                    assert j.apply(corners[i - 1]) > 0, \
                        f"depth {depth}: child {child} cuts beyond one side"
                    assert j.apply(corners[(i + 1) % m]) > 0, \
                        f"depth {depth}: child {child} cuts beyond one side"

        # exhaustive low-depth containment: depth-3 polygon inside depth-2
        t2, poly2 = polys[2]
        t3, poly3 = polys[3]
        with mp.workprec(t3.bits):
            jets = {s: jet_at(t3, s) for s in enumerate_slopes(2)}
            for corner in _corners(poly3, t3.bits):
                scale = _norm3(corner)
                for s, j in jets.items():
                    margin = j.apply(corner) / (_norm3(j.grad) * scale)
                    assert margin >= mpf("-1e-25"), (s, margin)


def test_criterion_08_membership_oracle(triples100, funnel_triple):
    for t in triples100:
        inner = interior_point(t)
        res = membership(t, inner, 12)
        assert res.kind == "inside", (t.as_tuple(), res)
        mirrored = (-inner[0], inner[1], inner[2])
        res = membership(t, mirrored, 12)
        assert res.kind == "outside" and res.witness == INFINITY, \
            (t.as_tuple(), res)

    tol = mpf("1e-20")
    for t in (funnel_triple, *triples100[:2]):
        with mp.workprec(t.bits):
            inner = interior_point(t)
            for s in enumerate_slopes(6):
                j = jet_at(t, s)
                gn = _norm3(j.grad)
                e = edge_global(t, s)
                for pt in (e.P_minus, e.P_plus):
                    v = pt.normalized().vec
                    margin = abs(j.apply(v)) / (gn * _norm3(v))
                    assert margin <= tol, (s, margin)
                assert dlength(t, s, inner) > 0, s


def test_criterion_09_k_constancy_and_y_exceeds_one(
        triples100, cusp_triple, funnel_triple):
    tol = mpf("1e-25")
    for t in (cusp_triple, funnel_triple, *triples100[:10]):
        assert k_constancy_check(t, 8) <= tol

    for t in triples100:
        c = half_trace_coords(t)
        assert c.y > 1, t.as_tuple()
        with mp.workprec(t.bits):
            k_model = 2 + 4 * (1 - c.y ** 2) * mp.sinh(c.l) ** 2
            k_direct = commutator_trace(t)
            assert abs(k_direct - k_model) <= tol * max(1, abs(k_direct))

    c = half_trace_coords(cusp_triple)
    with mp.workprec(cusp_triple.bits):
        assert abs(c.y - mp.coth(c.l)) <= tol


def test_criterion_10_one_pinch_parabolas_and_gap_fraction():
    tol = mpf("1e-25")
    with mp.workprec(256):
        for y in (mpf("1.1"), mp.sqrt(2), mpf(3)):
            certs = parabola_certificates(y, range(-20, 21))
            assert certs["endpoint_on_parabola"] <= tol
            assert certs["tangency_discriminant"] <= tol
            share = pinch_side_share(y, 50)
            target = mp.sqrt(y * y - 1) / y
            assert abs(share - target) / target <= mpf("0.01")


def test_criterion_11_continuity_into_one_pinch():
    errors = []
    for eps_str in ("1e-4", "1e-6"):
        with mp.workprec(320):
            eps = mpf(eps_str)
            t = MarkoffTriple(2 + eps, 3, 3, bits=320)
            c = half_trace_coords(t)
            align = pinch_alignment(c)
            worst = mpf(0)
            for n in range(-4, 5):
                fe = edge_closed_form(c, n)
                pe = one_pinch_edge(mpf(3) / 2, n)
                for got, want in ((fe.minus, pe.minus), (fe.plus, pe.plus)):
                    gx, gy = align.apply(*got)
                    worst = max(worst, abs(gx - want[0]), abs(gy - want[1]))
            errors.append((mp.sqrt(eps), worst))
    # observed error is O(sqrt(eps)): bounded by a fixed multiple of
    # sqrt(eps) at both scales, and decreasing with eps
    for root, err in errors:
        assert err <= 10 * root, (root, err)
    assert errors[1][1] < errors[0][1]


def test_criterion_12_euclidean_limit():
    # lightlike and equal-pairing identities, exactly, over enumerate(8)
    slopes = enumerate_slopes(8)
    vecs = np.array([lightlike_vector(s).v for s in slopes], dtype=np.int64)
    pq = np.array([(s.p, s.q) for s in slopes], dtype=np.int64)
    eta = np.diag(np.array([1, -1, -1], dtype=np.int64))
    pairings = vecs @ eta @ vecs.T
    assert (np.diag(pairings) == 0).all()
    crossm = pq[:, 0][:, None] * pq[:, 1][None, :] \
        - pq[:, 1][:, None] * pq[:, 0][None, :]
    assert (pairings == 2 * crossm * crossm).all()

    # sign test agrees with brute positivity for 1000 random flat structures
    rnd = random.Random(1234)
    for _ in range(1000):
        a = rnd.uniform(0.05, 10.0)
        b = rnd.uniform(0.05, 10.0)
        c = rnd.uniform(0.05, 10.0)
        rep = euclidean_cone_equivalence(a, b, c)
        assert rep.agrees, (a, b, c, rep)

    # shrinking family: Hausdorff distance to the round disk decreases
    dists = []
    for k in range(4):
        trip = shrink_family(1, 1, 1, mpf(1) / 2 ** k, bits=320)
        poly = assemble(trip, 6, Chart("octant"))
        dists.append(hausdorff_to_disk(poly))
    assert all(b < a for a, b in zip(dists, dists[1:])), dists

    # limiting conic touches all three octant faces with double roots
    cert = octant_tangency_certificate()
    assert len(cert) == 3
    for face in cert.values():
        assert face["tangent"] and face["discriminant"] == 0
