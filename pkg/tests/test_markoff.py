import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

from lengthpoly import (
    INFINITY,
    ONE,
    ZERO,
    MarkoffTriple,
    NotGeometricError,
    Slope,
    classify,
    half_trace_coords,
    jet_at,
    k_constancy_check,
    triple_from_coords,
    value_at,
)
from lengthpoly.farey import FareyTriangle, NotNeighborsError
from lengthpoly.markoff import (
    basis_change,
    commutator_trace,
    sweep_values,
    triangle_trace,
)

from conftest import GEOMETRIC_KINDS, sample_geometric_triples

TIGHT = mpf("1e-70")


class TestValueAt:
    def test_base_traces(self, cusp_triple):
        assert value_at(cusp_triple, INFINITY) == 3
        assert value_at(cusp_triple, ZERO) == 3
        assert value_at(cusp_triple, ONE) == 3

    def test_recursion_frozen_values(self, cusp_triple):
        assert value_at(cusp_triple, Slope(2, 1)) == 6
        assert value_at(cusp_triple, Slope(1, 2)) == 6
        assert value_at(cusp_triple, Slope(-1, 1)) == 6
        assert value_at(cusp_triple, Slope(3, 1)) == 15
        assert value_at(cusp_triple, Slope(3, 2)) == 15

    def test_exchange_relation_on_every_expansion(self, funnel_triple):
        from lengthpoly.farey import expansions

        with mp.workprec(funnel_triple.bits):
            for e in expansions(5):
                lhs = (value_at(funnel_triple, e.new)
                       + value_at(funnel_triple, e.old))
                rhs = (value_at(funnel_triple, e.u)
                       * value_at(funnel_triple, e.v))
                assert abs(lhs - rhs) <= TIGHT * abs(rhs)

    def test_symmetry_of_symmetric_triple(self, cusp_triple):
        # (A, A, A) is invariant under slope inversion p/q -> q/p
        for s in (Slope(2, 5), Slope(3, 1), Slope(4, 7)):
            flipped = Slope(s.q, s.p)
            assert (value_at(cusp_triple, s)
                    == value_at(cusp_triple, flipped))

    def test_sweep_values_matches_value_at(self, funnel_triple):
        for s, v in sweep_values(funnel_triple, 4):
            assert v == value_at(funnel_triple, s)


class TestInvariant:
    def test_commutator_trace_examples(self):
        assert commutator_trace(MarkoffTriple(3, 3, 3)) == -2
        assert commutator_trace(MarkoffTriple(3, 3, 4)) == -4

    def test_triangle_trace_agrees_everywhere(self, asym_triple):
        from lengthpoly.farey import triangle_at, TreeAddress

        k0 = commutator_trace(asym_triple)
        with mp.workprec(asym_triple.bits):
            for word in ((), (0,), (1,), (0, 1), (1, 1, 0)):
                tri = triangle_at(TreeAddress(word))
                assert abs(triangle_trace(asym_triple, tri) - k0) <= TIGHT

    def test_k_constancy_small(self, asym_triple):
        assert k_constancy_check(asym_triple, 6) <= TIGHT

    @given(st.floats(2.06, 19.9), st.floats(2.06, 19.9),
           st.floats(2.06, 19.9))
    @settings(max_examples=25, deadline=None)
    def test_k_constancy_random(self, a, b, c):
        t = MarkoffTriple(a, b, c, bits=192, mode="raw")
        assert k_constancy_check(t, 4) <= mpf("1e-40")


class TestClassify:
    def test_cusp(self):
        c = classify(MarkoffTriple(3, 3, 3))
        assert c.kind == "cusp" and c.K == -2
        assert c.cone_angle is None and c.boundary_length is None

    def test_funnel(self):
        c = classify(MarkoffTriple(3, 3, 4))
        assert c.kind == "funnel" and c.K == -4
        with mp.workprec(256):
            assert abs(c.boundary_length - 2 * mp.acosh(2)) <= TIGHT

    def test_cone(self):
        c = classify(MarkoffTriple("2.1", "2.1", "2.1", mode="raw"))
        assert c.kind == "cone"
        with mp.workprec(256):
            assert abs(c.cone_angle - 2 * mp.acos(-c.K / 2)) <= TIGHT

    def test_one_pinch(self):
        c = classify(MarkoffTriple(3, 2, 3, mode="one_pinch"))
        assert c.kind == "one_pinch"

    def test_euclidean(self):
        c = classify(MarkoffTriple(2, 2, 2, mode="euclidean"))
        assert c.kind == "euclidean"

    @pytest.mark.parametrize("triple", [(1, 1, 1), (2, 2, 3), (2, 3, 4),
                                        (5, 2, 2), (3, 3, 100)])
    def test_invalid(self, triple):
        c = classify(MarkoffTriple(*triple, mode="raw"))
        assert c.kind == "invalid"

    def test_geometric_mode_rejects_bad_input(self):
        with pytest.raises(NotGeometricError):
            MarkoffTriple(3, 3, 100)
        with pytest.raises(NotGeometricError):
            MarkoffTriple(1, 3, 3)


class TestHalfTraceCoords:
    def test_symmetric_cusp_closed_form(self, cusp_triple):
        # for the all-equal triple: x = l/2 and y = coth(l)
        c = half_trace_coords(cusp_triple)
        with mp.workprec(256):
            l = mp.acosh(mpf(3) / 2)
            assert abs(c.l - l) <= TIGHT
            assert abs(c.x - l / 2) <= TIGHT
            assert abs(c.y - mp.coth(l)) <= TIGHT

    def test_reconstructs_the_neighbor_traces(self, asym_triple):
        c = half_trace_coords(asym_triple)
        with mp.workprec(asym_triple.bits):
            for n in range(-6, 7):
                expected = value_at(asym_triple, Slope(n, 1))
                assert abs(c.neighbor_value(n) - expected) <= (
                    TIGHT * abs(expected))

    def test_y_exceeds_one_for_geometric(self):
        for t in sample_geometric_triples(12, seed=901):
            assert half_trace_coords(t).y > 1

    def test_non_geometric_is_refused(self):
        t = MarkoffTriple(1, 1, 1, mode="raw")
        with pytest.raises(NotGeometricError):
            half_trace_coords(t)

    def test_index0_must_neighbor_region(self, cusp_triple):
        with pytest.raises(NotNeighborsError):
            half_trace_coords(cusp_triple, INFINITY, Slope(1, 2))

    def test_roundtrip_through_coords(self):
        for t in sample_geometric_triples(8, seed=902):
            c = half_trace_coords(t)
            back = triple_from_coords(c.l, c.x, c.y, bits=t.bits)
            with mp.workprec(t.bits):
                for a, b in zip(t.as_tuple(), back.as_tuple()):
                    assert abs(a - b) <= mpf("1e-65") * abs(a)

    def test_roundtrip_off_base_region(self, funnel_triple):
        region, index0 = Slope(1, 2), Slope(0, 1)
        c = half_trace_coords(funnel_triple, region, index0)
        back = triple_from_coords(c.l, c.x, c.y, bits=funnel_triple.bits,
                                  region=region, index0=index0)
        with mp.workprec(funnel_triple.bits):
            for a, b in zip(funnel_triple.as_tuple(), back.as_tuple()):
                assert abs(a - b) <= mpf("1e-65") * abs(a)


class TestJets:
    def test_base_gradients_are_unit_vectors(self, funnel_triple):
        assert jet_at(funnel_triple, INFINITY).grad == (1, 0, 0)
        assert jet_at(funnel_triple, ZERO).grad == (0, 1, 0)
        assert jet_at(funnel_triple, ONE).grad == (0, 0, 1)

    def test_first_expansion_gradient(self, funnel_triple):
        # trace(2/1) = trace(1/1) trace(1/0) - trace(0/1)
        j = jet_at(funnel_triple, Slope(2, 1))
        A, B, C = funnel_triple.as_tuple()
        assert j.grad == (C, -1, A)
        assert j.value == A * C - B

    def test_gradient_matches_finite_difference(self, asym_triple):
        s = Slope(3, 5)
        bits = asym_triple.bits
        with mp.workprec(bits):
            h = mpf(2) ** -80
            j = jet_at(asym_triple, s)
            A, B, C = asym_triple.as_tuple()
            for i, d in enumerate(((h, 0, 0), (0, h, 0), (0, 0, h))):
                bumped = MarkoffTriple(A + d[0], B + d[1], C + d[2],
                                       bits=bits, mode="raw")
                fd = (value_at(bumped, s) - j.value) / h
                assert abs(fd - j.grad[i]) <= mpf("1e-20") * (
                    1 + abs(j.grad[i]))

    def test_jet_apply_is_linear(self, funnel_triple):
        j = jet_at(funnel_triple, Slope(2, 3))
        with mp.workprec(funnel_triple.bits):
            a = j.apply((1, 2, 3))
            b = j.apply((4, -1, 0))
            ab = j.apply((5, 1, 3))
            assert abs(ab - a - b) <= TIGHT * (1 + abs(ab))


class TestBasisChange:
    def test_roundtrip(self, asym_triple):
        c = half_trace_coords(asym_triple)
        bc = basis_change(c)
        with mp.workprec(asym_triple.bits):
            v = (mpf("0.37"), mpf("-1.2"), mpf("2.9"))
            w = bc.to_chart(bc.to_global(v))
            for a, b in zip(v, w):
                assert abs(a - b) <= TIGHT

    def test_chart_coordinates_mean_what_they_say(self, asym_triple):
        # direction with chart coords (L, Y, X) must perturb the region
        # trace by 2 L sinh(l) and the n-th neighbor trace by
        # 2 Y cosh(n l - x) + 2 y (n L - X) sinh(n l - x)
        c = half_trace_coords(asym_triple)
        bc = basis_change(c)
        with mp.workprec(asym_triple.bits):
            L, Y, X = mpf("0.21"), mpf("-0.53"), mpf("1.7")
            direction = bc.to_global((L, Y, X))
            j_inf = jet_at(asym_triple, INFINITY)
            assert abs(j_inf.apply(direction)
                       - 2 * L * mp.sinh(c.l)) <= TIGHT
            for n in (-2, 0, 1, 3):
                xi = c.xi(n)
                expected = (2 * Y * mp.cosh(xi)
                            + 2 * c.y * (n * L - X) * mp.sinh(xi))
                got = jet_at(asym_triple, Slope(n, 1)).apply(direction)
                assert abs(got - expected) <= TIGHT * (1 + abs(expected))
