"""Trace coordinates of a once-holed torus as a map on rational slopes.

A triple (A, B, C) of traces at the slopes 1/0, 0/1, 1/1 extends to every
slope by the exchange relation

    value(new) = value(u) * value(v) - value(old)

over the triangle tree, where (u, v) is the parent edge of the new slope
and old sits opposite that edge.  The module also propagates first-order
jets (gradients with respect to A, B, C), evaluates the boundary invariant
K = A^2 + B^2 + C^2 - A B C - 2, classifies the underlying structure, and
converts to the half-trace normal form along one family of neighbors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

from mpmath import mp, mpf

from . import farey
from ._mp import PrecisionError, check_bits, default_bits, ensure_finite, to_real
from .farey import BASE_SLOPES, INFINITY, ONE, ZERO, FareyTriangle, Slope

Mode = Literal["geometric", "one_pinch", "euclidean", "raw"]


class NotGeometricError(ValueError):
    """Triple fails the constraints of its declared mode."""


@dataclass(frozen=True)
class Jet:
    """Value of the trace map at one slope plus its gradient in (A, B, C)."""

    value: mpf
    grad: tuple[mpf, mpf, mpf]

    def apply(self, direction) -> mpf:
        """Pair the gradient with a tangent direction (A', B', C')."""
        g = self.grad
        return g[0] * direction[0] + g[1] * direction[1] + g[2] * direction[2]


@dataclass(frozen=True)
class Classification:
    kind: Literal["cone", "cusp", "funnel", "one_pinch", "euclidean", "invalid"]
    K: mpf
    cone_angle: mpf | None = None
    boundary_length: mpf | None = None


class MarkoffTriple:
    """Trace triple with a working precision and a validation mode.

    mode "geometric" requires A, B, C > 2 and K < 2 (complete structure
    with one boundary end), "one_pinch" exactly one base value equal to 2
    with the other two equal, "euclidean" all three equal to 2, and "raw"
    skips validation (used for classification sweeps and rejected inputs).
    """

    def __init__(self, A, B, C, bits: int | None = None,
                 mode: Mode = "geometric") -> None:
        self.bits = check_bits(bits if bits is not None else default_bits())
        self.A = to_real(A, self.bits)
        self.B = to_real(B, self.bits)
        self.C = to_real(C, self.bits)
        self.mode = mode
        self._values: dict[Slope, mpf] = {
            INFINITY: self.A, ZERO: self.B, ONE: self.C}
        self._jets: dict[Slope, Jet] = {}
        self._validate()

    def _validate(self) -> None:
        A, B, C = self.A, self.B, self.C
        if self.mode == "geometric":
            if not (A > 2 and B > 2 and C > 2):
                raise NotGeometricError("geometric mode needs A, B, C > 2")
            with mp.workprec(self.bits):
                if not commutator_trace(self) < 2:
                    raise NotGeometricError("geometric mode needs K < 2")
        elif self.mode == "one_pinch":
            pinched = [v for v in (A, B, C) if v == 2]
            others = [v for v in (A, B, C) if v != 2]
            if len(pinched) != 1 or others[0] != others[1] or not others[0] > 2:
                raise NotGeometricError(
                    "one_pinch mode needs exactly one value 2, the others "
                    "equal and > 2")
        elif self.mode == "euclidean":
            if not (A == 2 and B == 2 and C == 2):
                raise NotGeometricError("euclidean mode needs A = B = C = 2")
        elif self.mode != "raw":
            raise ValueError(f"unknown mode {self.mode!r}")

    def as_tuple(self) -> tuple[mpf, mpf, mpf]:
        return (self.A, self.B, self.C)

    def __repr__(self) -> str:
        return (f"MarkoffTriple({self.A!s}, {self.B!s}, {self.C!s}, "
                f"bits={self.bits}, mode={self.mode!r})")


_BASE_GRADS = {
    INFINITY: (1, 0, 0),
    ZERO: (0, 1, 0),
    ONE: (0, 0, 1),
}


def value_at(t: MarkoffTriple, s: Slope) -> mpf:
    """Trace of the slope s under the map determined by the triple."""
    cached = t._values.get(s)
    if cached is not None:
        return cached
    with mp.workprec(t.bits):
        # resolve the parent chain iteratively; chains are short but this
        # keeps deep continued-fraction slopes off the Python stack
        stack = [s]
        while stack:
            top = stack[-1]
            if top in t._values:
                stack.pop()
                continue
            u, v, w = farey.parents_full(top)
            missing = [x for x in (u, v, w) if x not in t._values]
            if missing:
                stack.extend(missing)
                continue
            val = ensure_finite(t._values[u] * t._values[v] - t._values[w])
            t._values[top] = val
            stack.pop()
    return t._values[s]


def jet_at(t: MarkoffTriple, s: Slope) -> Jet:
    """Value and (A, B, C)-gradient of the trace map at slope s.

    The value component reuses the cache behind value_at, so the two
    entry points agree exactly, not merely to rounding.
    """
    cached = t._jets.get(s)
    if cached is not None:
        return cached
    with mp.workprec(t.bits):
        if not t._jets:
            for b, g in _BASE_GRADS.items():
                t._jets[b] = Jet(value_at(t, b), tuple(mpf(x) for x in g))
        stack = [s]
        while stack:
            top = stack[-1]
            if top in t._jets:
                stack.pop()
                continue
            u, v, w = farey.parents_full(top)
            missing = [x for x in (u, v, w) if x not in t._jets]
            if missing:
                stack.extend(missing)
                continue
            ju, jv, jw = t._jets[u], t._jets[v], t._jets[w]
            val = value_at(t, top)
            grad = tuple(
                ensure_finite(ju.value * gv + jv.value * gu - gw)
                for gu, gv, gw in zip(ju.grad, jv.grad, jw.grad))
            t._jets[top] = Jet(val, grad)
            stack.pop()
    return t._jets[s]


def commutator_trace(t: MarkoffTriple) -> mpf:
    """Boundary invariant K = A^2 + B^2 + C^2 - A B C - 2."""
    with mp.workprec(t.bits):
        A, B, C = t.A, t.B, t.C
        return ensure_finite(A * A + B * B + C * C - A * B * C - 2)


def triangle_trace(t: MarkoffTriple, tri: FareyTriangle) -> mpf:
    """K evaluated from the three trace values on an arbitrary triangle."""
    with mp.workprec(t.bits):
        a, b, c = (value_at(t, s) for s in tri.slopes())
        return ensure_finite(a * a + b * b + c * c - a * b * c - 2)


def sweep_values(t: MarkoffTriple, depth: int) -> Iterator[tuple[Slope, mpf]]:
    """Stream (slope, value) over enumerate(depth), cheap bulk evaluation."""
    for s in BASE_SLOPES:
        yield s, value_at(t, s)
    with mp.workprec(t.bits):
        for exp in farey.expansions(depth):
            vals = t._values
            if exp.new not in vals:
                vals[exp.new] = ensure_finite(
                    vals[exp.u] * vals[exp.v] - vals[exp.old])
            yield exp.new, vals[exp.new]


def k_constancy_check(t: MarkoffTriple, depth: int) -> mpf:
    """Largest normalized deviation of K over all triangles within depth.

    Each triangle's K is compared against commutator_trace(t); the
    deviation is divided by max(1, |abc|) for that triangle, since the
    defining expression cancels catastrophically on large values and only
    the scaled residual is meaningful at a fixed precision.
    """
    with mp.workprec(t.bits):
        k0 = commutator_trace(t)
        one = mpf(1)
        worst = mpf(0)
        vals = t._values
        for s in BASE_SLOPES:
            value_at(t, s)

        def dev(a, b, c):
            k = a * a + b * b + c * c - a * b * c - 2
            scale = abs(a * b * c)
            return abs(k - k0) / (scale if scale > 1 else one)

        worst = dev(*(vals[s] for s in BASE_SLOPES))
        for exp in farey.expansions(depth):
            if exp.new not in vals:
                vals[exp.new] = ensure_finite(
                    vals[exp.u] * vals[exp.v] - vals[exp.old])
            d = dev(vals[exp.u], vals[exp.v], vals[exp.new])
            if d > worst:
                worst = d
        return worst


def classify(t: MarkoffTriple) -> Classification:
    """Sort a triple into cone, cusp, funnel, one_pinch, euclidean, invalid.

    Equality with 2 is exact; the cusp boundary K = -2 is decided within
    the relative tolerance 2**(-bits/2).
    """
    from ._mp import boundary_tol

    with mp.workprec(t.bits):
        K = commutator_trace(t)
        A, B, C = t.as_tuple()
        twos = sum(1 for v in (A, B, C) if v == 2)
        if twos == 3:
            return Classification("euclidean", K)
        if twos == 1:
            others = [v for v in (A, B, C) if v != 2]
            if others[0] == others[1] and others[0] > 2:
                return Classification("one_pinch", K)
            return Classification("invalid", K)
        if twos == 2:
            return Classification("invalid", K)
        if not (A > 2 and B > 2 and C > 2):
            return Classification("invalid", K)
        tol = boundary_tol(t.bits)
        if abs(K + 2) <= tol * 2:
            return Classification("cusp", K)
        if K < -2:
            lam = 2 * mp.acosh(-K / 2)
            return Classification("funnel", K, boundary_length=ensure_finite(lam))
        if K < 2:
            theta = 2 * mp.acos(-K / 2)
            return Classification("cone", K, cone_angle=ensure_finite(theta))
        return Classification("invalid", K)


@dataclass(frozen=True)
class HalfTraceCoords:
    """Normal form 2 y cosh(n l - x) of the traces along one neighbor family.

    l is the half translation length of the chosen region (its trace is
    2 cosh l), and the neighbors R_n = neighbor_sequence(region, index0, n)
    carry traces 2 y cosh(n l - x).  y > 1 exactly when the triple is
    geometric.
    """

    l: mpf
    x: mpf
    y: mpf
    region: Slope
    index0: Slope
    bits: int

    def xi(self, n: int) -> mpf:
        """Phase n*l - x of the n-th neighbor."""
        with mp.workprec(self.bits):
            return n * self.l - self.x

    def neighbor_value(self, n: int) -> mpf:
        """Reconstructed trace 2 y cosh(n l - x)."""
        with mp.workprec(self.bits):
            return ensure_finite(2 * self.y * mp.cosh(self.xi(n)))


def half_trace_coords(t: MarkoffTriple, region: Slope = INFINITY,
                      index0: Slope = ZERO) -> HalfTraceCoords:
    """Solve the half-trace normal form along the neighbors of a region."""
    if not farey.is_neighbor(region, index0):
        raise farey.NotNeighborsError(f"{index0} is not a neighbor of {region}")
    with mp.workprec(t.bits):
        phi_r = value_at(t, region)
        if not phi_r > 2:
            raise NotGeometricError(
                f"half-trace form needs trace({region}) > 2, got {phi_r!s}")
        l = mp.acosh(phi_r / 2)
        r1 = farey.neighbor_sequence(region, index0, 1)
        phi0 = value_at(t, index0)
        phi1 = value_at(t, r1)
        tanh_x = (phi0 * mp.cosh(l) - phi1) / (phi0 * mp.sinh(l))
        if not abs(tanh_x) < 1:
            raise NotGeometricError(
                "trace data is not consistent with a real phase along the "
                "chosen family; the triple is too degenerate at this precision")
        x = mp.atanh(tanh_x)
        y = phi0 / (2 * mp.cosh(x))
        return HalfTraceCoords(ensure_finite(l), ensure_finite(x),
                               ensure_finite(y), region, index0, t.bits)


def triple_from_coords(l, x, y, bits: int | None = None,
                       region: Slope = INFINITY, index0: Slope = ZERO,
                       mode: Mode = "geometric") -> MarkoffTriple:
    """Rebuild the base trace triple from half-trace coordinates.

    Traces are first placed on the triangle (region, R_0, R_1) and then
    transported to the base triangle by crossing one tessellation edge at
    a time with the exchange relation.
    """
    bits = check_bits(bits if bits is not None else default_bits())
    with mp.workprec(bits):
        l, x, y = (to_real(v, bits) for v in (l, x, y))
        r1 = farey.neighbor_sequence(region, index0, 1)
        values = {
            region: 2 * mp.cosh(l),
            index0: 2 * y * mp.cosh(x),
            r1: 2 * y * mp.cosh(l - x),
        }
        tri = {region, index0, r1}
        while tri != set(BASE_SLOPES):
            depths = {s: farey.tree_depth(s) for s in tri}
            deepest = max(tri, key=lambda s: depths[s])
            others = [s for s in tri if s != deepest]
            u, v = others
            new = farey._other_common_neighbor(u, v, deepest)
            values[new] = ensure_finite(values[u] * values[v] - values[deepest])
            tri = {u, v, new}
        A = values[INFINITY]
        B = values[ZERO]
        C = values[ONE]
    return MarkoffTriple(A, B, C, bits=bits, mode=mode)


@dataclass(frozen=True)
class BasisChange:
    """Linear map between deformation coordinates (L, Y, X) and (A', B', C').

    Rows of `matrix` express the derivatives of the traces at the region,
    at R_0 and at R_1 in terms of (L, Y, X) = d/dt (l, y, x).
    """

    coords: HalfTraceCoords
    matrix: tuple[tuple[mpf, ...], ...]
    inverse: tuple[tuple[mpf, ...], ...]

    def to_global(self, lyx) -> tuple[mpf, mpf, mpf]:
        return _mat_vec(self.matrix, lyx)

    def to_chart(self, abc) -> tuple[mpf, mpf, mpf]:
        return _mat_vec(self.inverse, abc)


def _mat_vec(m, v):
    return tuple(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2]
                 for i in range(3))


def _mat3_inverse(m):
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        raise PrecisionError("basis change matrix is singular")
    adj = (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )
    return tuple(tuple(x / det for x in row) for row in adj)


def basis_change(c: HalfTraceCoords) -> BasisChange:
    """Matrix taking (L, Y, X) to the trace derivatives (A', B', C').

    Derivative of 2 y cosh(n l - x) in the deformation direction is
    2 Y cosh(n l - x) + 2 y (n L - X) sinh(n l - x); rows are that
    expression at the region (2 L sinh l), at n = 0 and at n = 1.
    """
    with mp.workprec(c.bits):
        sl, cl = mp.sinh(c.l), mp.cosh(c.l)
        sx, cx = mp.sinh(c.x), mp.cosh(c.x)
        slx, clx = mp.sinh(c.l - c.x), mp.cosh(c.l - c.x)
        y = c.y
        matrix = (
            (2 * sl, mpf(0), mpf(0)),
            (mpf(0), 2 * cx, 2 * y * sx),
            (2 * y * slx, 2 * clx, -2 * y * slx),
        )
        inverse = _mat3_inverse(matrix)
        return BasisChange(c, matrix, inverse)
