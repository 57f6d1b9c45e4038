"""Sides and assembly of the polygon of length-increasing deformations.

Deformation directions live in the tangent space (A', B', C') of the trace
triple.  Each slope r cuts out one side of the convex region where every
trace increases: the side lies on the hyperplane f_r = 0, where f_r pairs
the gradient of the trace at r with the direction, and its two endpoints
are the points where the traces of the neighbors of r form a geometric
progression with ratio a or 1/a, a + 1/a = trace(r), a > 1.

Closed forms for the sides along one neighbor family, the interior sample
point, the bounding quadrilateral and the membership sweep live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Literal

from mpmath import mp, mpf

from . import farey
from ._mp import PrecisionError, boundary_tol, ensure_finite
from .farey import INFINITY, ONE, ZERO, Slope
from .markoff import (BasisChange, HalfTraceCoords, Jet, MarkoffTriple,
                      basis_change, half_trace_coords, jet_at, value_at)


class ConvexityError(RuntimeError):
    """Assembled boundary failed a strict convexity certificate."""


@dataclass(frozen=True)
class ProjectivePoint:
    """Point of P^2(R) held as a triple of reals, equal up to scaling."""

    vec: tuple[mpf, mpf, mpf]

    def normalized(self) -> "ProjectivePoint":
        """Scale so the largest-magnitude coordinate becomes +-1."""
        m = max(abs(x) for x in self.vec)
        if m == 0:
            raise ValueError("zero vector is not a projective point")
        return ProjectivePoint(tuple(x / m for x in self.vec))

    def __iter__(self):
        return iter(self.vec)


def proj_distance(u, v) -> mpf:
    """Distance between projective points: min over sign of unit-vector gap."""
    uv = tuple(u) if not isinstance(u, ProjectivePoint) else u.vec
    vv = tuple(v) if not isinstance(v, ProjectivePoint) else v.vec
    nu = mp.sqrt(sum(x * x for x in uv))
    nv = mp.sqrt(sum(x * x for x in vv))
    if nu == 0 or nv == 0:
        raise ValueError("zero vector is not a projective point")
    a = [x / nu for x in uv]
    b = [x / nv for x in vv]
    d1 = mp.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))
    d2 = mp.sqrt(sum((x + y) ** 2 for x, y in zip(a, b)))
    return min(d1, d2)


def trace_ratio(t: MarkoffTriple, r: Slope) -> mpf:
    """Larger root a of a + 1/a = trace(r); equals 1 exactly on a pinch."""
    with mp.workprec(t.bits):
        phi = value_at(t, r)
        if phi < 2:
            raise ValueError(f"trace({r}) < 2; no real progression ratio")
        return ensure_finite((phi + mp.sqrt(phi * phi - 4)) / 2)


@dataclass(frozen=True)
class Edge:
    """One side of the polygon: slope, endpoints, progression ratio.

    P_minus and P_plus are cut out by requiring the derivative sequence
    over the neighbors of the slope to be geometric; at P_plus the values
    decay by 1/ratio per step of the family indexed away from the
    counterclockwise anchor (this pins each label uniquely).
    """

    slope: Slope
    P_minus: ProjectivePoint
    P_plus: ProjectivePoint
    ratio: mpf


def _solve3(rows, rhs):
    """Gaussian elimination with partial pivoting on a 3x3 system."""
    m = [[rows[i][0], rows[i][1], rows[i][2], rhs[i]] for i in range(3)]
    for col in range(3):
        piv = max(range(col, 3), key=lambda r: abs(m[r][col]))
        if m[piv][col] == 0:
            raise PrecisionError("singular system while cutting a side")
        m[col], m[piv] = m[piv], m[col]
        for r in range(3):
            if r == col:
                continue
            f = m[r][col] / m[col][col]
            if f == 0:
                continue
            for k in range(col, 4):
                m[r][k] -= f * m[col][k]
    return tuple(m[i][3] / m[i][i] for i in range(3))


def edge_global(t: MarkoffTriple, r: Slope) -> Edge:
    """Side of slope r in global (A', B', C') coordinates.

    Solves f_r = 0 with the anchor pair values set to (1, a) and (a, 1);
    the solution with value 1 on the counterclockwise anchor is P_plus.
    """
    with mp.workprec(t.bits):
        a = trace_ratio(t, r)
        anchor, prev = farey.anchor_pair(r)
        rows = (jet_at(t, r).grad, jet_at(t, anchor).grad,
                jet_at(t, prev).grad)
        zero, one = mpf(0), mpf(1)
        plus = _solve3(rows, (zero, one, a))
        minus = _solve3(rows, (zero, a, one))
        return Edge(r, ProjectivePoint(minus).normalized(),
                    ProjectivePoint(plus).normalized(), a)


def edge_local(t: MarkoffTriple, r: Slope) -> Edge:
    """Side of slope r in its own frame (f_r, f_anchor, f_previous).

    Endpoints are [0 : 1 : a] (P_plus) and [0 : a : 1] (P_minus) by the
    progression normalization; this is exact by construction.
    """
    with mp.workprec(t.bits):
        a = trace_ratio(t, r)
        zero, one = mpf(0), mpf(1)
        return Edge(r, ProjectivePoint((zero, a, one)),
                    ProjectivePoint((zero, one, a)), a)


@dataclass(frozen=True)
class FamilyEdge:
    """Closed-form side of the n-th neighbor of the chart region.

    Coordinates are (L, Y, X) = d/dt (l, y, x) normalized to L = 1, so a
    point is the affine pair (X, Y); `minus`/`plus` are those pairs.
    """

    n: int
    slope: Slope
    minus: tuple[mpf, mpf]
    plus: tuple[mpf, mpf]

    def lyx(self, sign: int) -> tuple[mpf, mpf, mpf]:
        x, y = self.plus if sign > 0 else self.minus
        return (mpf(1), y, x)


def edge_closed_form(c: HalfTraceCoords, n: int) -> FamilyEdge:
    """Side endpoints of the n-th neighbor in closed form.

    With xi = n l - x and W = sqrt(cosh(xi)^2 - y^-2):

        Y = y sinh(xi)^2 / tanh(l) +- y sinh(xi) W
        X = sinh(xi) cosh(xi) / tanh(l) +- cosh(xi) W + n

    The +n on X keeps the side at its own station along the family.
    """
    with mp.workprec(c.bits):
        xi = c.xi(n)
        sh, ch = mp.sinh(xi), mp.cosh(xi)
        th = mp.tanh(c.l)
        w2 = ch * ch - 1 / (c.y * c.y)
        if w2 < 0:
            raise PrecisionError(
                "side endpoints are complex; the coordinates are not "
                "geometric (y < 1?)")
        W = mp.sqrt(w2)
        y_plus = c.y * sh * sh / th + c.y * sh * W
        y_minus = c.y * sh * sh / th - c.y * sh * W
        x_plus = sh * ch / th + ch * W + n
        x_minus = sh * ch / th - ch * W + n
        return FamilyEdge(n, farey.neighbor_sequence(c.region, c.index0, n),
                          (ensure_finite(x_minus), ensure_finite(y_minus)),
                          (ensure_finite(x_plus), ensure_finite(y_plus)))


def family_edge_to_global(c: HalfTraceCoords, fe: FamilyEdge,
                          bc: BasisChange | None = None) -> Edge:
    """Map a closed-form side into global (A', B', C') coordinates."""
    if bc is None:
        bc = basis_change(c)
    with mp.workprec(c.bits):
        minus = bc.to_global(fe.lyx(-1))
        plus = bc.to_global(fe.lyx(+1))
        phi = 2 * c.y * mp.cosh(c.xi(fe.n))
        a = (phi + mp.sqrt(phi * phi - 4)) / 2
        return Edge(fe.slope, ProjectivePoint(minus).normalized(),
                    ProjectivePoint(plus).normalized(), a)


def main_edge(c: HalfTraceCoords) -> tuple[tuple[mpf, mpf, mpf],
                                           tuple[mpf, mpf, mpf]]:
    """Endpoints [0 : y : -1], [0 : y : +1] of the chart region's own side.

    This side is the one at infinity of the L = 1 chart; the two returned
    triples are (L, Y, X) representatives of (P_minus, P_plus).
    """
    with mp.workprec(c.bits):
        return ((mpf(0), c.y, mpf(-1)), (mpf(0), c.y, mpf(1)))


def closed_form_quadratic_residual(c: HalfTraceCoords, n: int, Y) -> mpf:
    """Residual of Z = Y/y in the defining quadratic of the side endpoints.

    Z^2 sinh(l)^2 / sinh(xi)^2 - 2 Z sinh(l) cosh(l)
        + sinh(xi)^2 - (1 - y^-2) sinh(l)^2
    """
    with mp.workprec(c.bits):
        xi = c.xi(n)
        sl, cl = mp.sinh(c.l), mp.cosh(c.l)
        sx = mp.sinh(xi)
        if sx == 0:
            raise ValueError("phase xi = 0: quadratic degenerates")
        z = Y / c.y
        return (z * z * sl * sl / (sx * sx) - 2 * z * sl * cl
                + sx * sx - (1 - 1 / (c.y * c.y)) * sl * sl)


def endpoint_limits(c: HalfTraceCoords, n: int) -> dict:
    """Projective gaps between the n-th side's endpoints and [0 : y : +-1]."""
    with mp.workprec(c.bits):
        fe = edge_closed_form(c, n)
        p_plus = (mpf(0), c.y, mpf(1))
        p_minus = (mpf(0), c.y, mpf(-1))
        target = p_plus if n >= 0 else p_minus
        return {
            "n": n,
            "to_plus_limit": proj_distance(fe.lyx(+1), target),
            "to_minus_limit": proj_distance(fe.lyx(-1), target),
        }


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class Chart:
    """Affine chart used to draw and certify the assembled boundary.

    kind "L1" is the plane where the chart region's trace derivative is
    scaled to 1, with axes (X, Y); its own side sits at infinity.  kind
    "octant" rescales (A', B', C') to sum 1 and draws the standard
    2-simplex, which keeps every side finite.
    """

    kind: Literal["L1", "octant"]
    region: Slope = INFINITY
    index0: Slope = ZERO


_SQRT3_2_CACHE: dict[int, mpf] = {}


def _octant_xy(vec, bits: int) -> tuple[mpf, mpf]:
    s = vec[0] + vec[1] + vec[2]
    if s <= 0:
        raise PrecisionError("point is outside the positive octant chart")
    r = _SQRT3_2_CACHE.get(bits)
    if r is None:
        with mp.workprec(bits):
            r = mp.sqrt(3) / 2
        _SQRT3_2_CACHE[bits] = r
    b = vec[1] / s
    c = vec[2] / s
    return (b + c / 2, c * r)


def chart_mapper(t: MarkoffTriple, chart: Chart) -> Callable:
    """Function (A', B', C') -> (x, y) for the requested chart."""
    if chart.kind == "octant":
        bits = t.bits

        def to_xy(vec):
            with mp.workprec(bits):
                return _octant_xy(vec, bits)

        return to_xy
    if chart.kind == "L1":
        c = half_trace_coords(t, chart.region, chart.index0)
        bc = basis_change(c)
        bits = t.bits

        def to_xy(vec):
            with mp.workprec(bits):
                L, Y, X = bc.to_chart(vec)
                if L == 0:
                    raise PrecisionError(
                        "point lies on the side at infinity of the L1 chart")
                return (X / L, Y / L)

        return to_xy
    raise ValueError(f"unknown chart kind {chart.kind!r}")


# ---------------------------------------------------------------------------
# assembly


@dataclass
class PolygonApprox:
    """Finite-depth outer boundary: sides in circular slope order.

    `edges` follows the circular order of slopes (infinity last); in an L1
    chart the chart region's own side is kept in `edges` but contributes no
    chart vertices (it lies at infinity), so `vertices` is an open convex
    chain there and a closed convex cycle in the octant chart.
    """

    triple: MarkoffTriple
    depth: int
    chart: Chart
    edges: list[Edge]
    vertices: list[tuple[mpf, mpf]]
    vertex_edges: list[tuple[Slope, int]]
    orientation: int
    interior: tuple[mpf, mpf, mpf]


def suggest_assembly_bits(A: float, B: float, C: float, depth: int) -> int:
    """Working precision able to certify convexity at the given depth.

    Gap sizes shrink like the inverse square of the largest trace, and a
    turn cross product like its cube, so certifying signs needs roughly
    four times log2(largest trace) plus guard bits.  The trace growth is
    estimated with a cheap float sweep in the log domain.
    """
    from math import log2

    logs = {farey.INFINITY: log2(A), farey.ZERO: log2(B),
            farey.ONE: log2(C)}
    top = max(logs.values())
    for exp in farey.expansions(depth):
        if exp.new not in logs:
            lu, lv = logs[exp.u], logs[exp.v]
            # log2(Phi_u Phi_v - Phi_old) <= lu + lv; the lower clamp
            # keeps small base traces from driving the estimate negative
            logs[exp.new] = max(lu + lv, 1.1)
        if logs[exp.new] > top:
            top = logs[exp.new]
    bits = 96 + 4 * int(top + 1)
    return max(256, ((bits + 63) // 64) * 64)


def interior_point(t: MarkoffTriple) -> tuple[mpf, mpf, mpf]:
    """Average of the six base-side endpoints, each scaled to sum 1."""
    with mp.workprec(t.bits):
        acc = [mpf(0)] * 3
        for r in farey.BASE_SLOPES:
            e = edge_global(t, r)
            for p in (e.P_minus, e.P_plus):
                s = sum(p.vec)
                for i, x in enumerate(p.vec):
                    acc[i] += x / s
        return tuple(x / 6 for x in acc)


def _orient_value(f_w: Jet, vec, bits: int) -> mpf:
    with mp.workprec(bits):
        s = vec[0] + vec[1] + vec[2]
        return f_w.apply(vec) / s


def assemble(t: MarkoffTriple, depth: int, chart: Chart | None = None,
             workers: int = 1) -> PolygonApprox:
    """Sides for every slope within the given depth, in circular order.

    The two endpoints of each side are ordered along the boundary using
    the gap witness between consecutive slopes (the mediant): the endpoint
    with the smaller witness value is the one facing that gap.  The
    resulting chain of chart vertices is certified strictly convex; a
    certificate that cannot be resolved at the working precision raises
    PrecisionError rather than passing silently.
    """
    if chart is None:
        chart = Chart("L1", INFINITY, ZERO)
    slopes = farey.enumerate_slopes(depth)
    edges = _edges_for(t, slopes, workers)
    to_xy = chart_mapper(t, chart)
    n = len(slopes)
    at_infinity: Slope | None = chart.region if chart.kind == "L1" else None

    with mp.workprec(t.bits):
        # witness jets of the first slope inside each consecutive gap
        gap_jets = []
        for i in range(n):
            r, s = slopes[i], slopes[(i + 1) % n]
            gap_jets.append(jet_at(t, farey.arc_child(r, s)))

        vertices: list[tuple[mpf, mpf]] = []
        vertex_edges: list[tuple[Slope, int]] = []
        for i, e in enumerate(edges):
            if e.slope == at_infinity:
                continue
            w_prev = gap_jets[(i - 1) % n]
            w_next = gap_jets[i]
            vm, vp = e.P_minus.vec, e.P_plus.vec
            start, end = _orient_edge(e, w_prev, w_next, t.bits)
            vertices.append(to_xy(start))
            vertex_edges.append((e.slope, -1 if start is vm else +1))
            vertices.append(to_xy(end))
            vertex_edges.append((e.slope, -1 if end is vm else +1))

        closed = at_infinity is None
        try:
            orientation = _verify_convex(vertices, closed, t.bits)
        except (ConvexityError, PrecisionError) as err:
            idx = getattr(err, "index", None)
            if idx is not None and idx < len(vertex_edges):
                err.slope = vertex_edges[idx][0]
            raise

    return PolygonApprox(t, depth, chart, edges, vertices, vertex_edges,
                         orientation, interior_point(t))


def _orient_edge(e: Edge, w_prev: Jet, w_next: Jet, bits: int):
    vm, vp = e.P_minus.vec, e.P_plus.vec
    guard = mpf(2) ** (32 - bits)
    fp_m = _orient_value(w_prev, vm, bits)
    fp_p = _orient_value(w_prev, vp, bits)
    fn_m = _orient_value(w_next, vm, bits)
    fn_p = _orient_value(w_next, vp, bits)
    if (abs(fp_m - fp_p) <= guard * (abs(fp_m) + abs(fp_p))
            or abs(fn_m - fn_p) <= guard * (abs(fn_m) + abs(fn_p))):
        err = PrecisionError(
            f"cannot orient the side of {e.slope}: gap witness values "
            "coincide at this precision; raise the bit count")
        err.slope = e.slope
        raise err
    start = vm if fp_m < fp_p else vp
    end = vm if fn_m < fn_p else vp
    if start is end:
        err = PrecisionError(
            f"cannot orient the side of {e.slope}: both gap witnesses "
            "prefer the same endpoint at this precision")
        err.slope = e.slope
        raise err
    return start, end


def _verify_convex(vertices, closed: bool, bits: int) -> int:
    """Certify strict convexity of the vertex chain; returns turn sign.

    Each turn's cross product is compared against an error floor built
    from the absolute rounding error of the vertex coordinates (2^-bits
    times the coordinate scale, times the lengths of the two segments).
    A cross product under the floor is indistinguishable from zero, so
    the certificate refuses rather than guessing a sign.
    """
    n = len(vertices)
    if n < 3:
        raise ConvexityError("not enough vertices to certify convexity")
    with mp.workprec(bits):
        eps = mpf(2) ** (32 - bits)
        sign = 0
        m = n if closed else n - 2
        for i in range(m):
            a = vertices[i % n]
            b = vertices[(i + 1) % n]
            c = vertices[(i + 2) % n]
            ux, uy = b[0] - a[0], b[1] - a[1]
            vx, vy = c[0] - b[0], c[1] - b[1]
            cr = ux * vy - uy * vx
            scale = max(abs(a[0]), abs(a[1]), abs(b[0]), abs(b[1]),
                        abs(c[0]), abs(c[1]), mpf(1))
            nu = mp.sqrt(ux * ux + uy * uy)
            nv = mp.sqrt(vx * vx + vy * vy)
            floor = eps * scale * (nu + nv)
            if abs(cr) <= floor:
                err = PrecisionError(
                    "convexity certificate unresolved at this precision; "
                    "raise the bit count for this depth")
                err.index = (i + 1) % n
                raise err
            s = 1 if cr > 0 else -1
            if sign == 0:
                sign = s
            elif s != sign:
                err = ConvexityError(
                    f"turn at vertex {i + 1} breaks strict convexity")
                err.index = (i + 1) % n
                raise err
    return sign


def _edges_for(t: MarkoffTriple, slopes: list[Slope], workers: int):
    if workers <= 1:
        return [edge_global(t, r) for r in slopes]
    from concurrent.futures import ProcessPoolExecutor

    chunks = [slopes[i::workers] for i in range(workers)]
    payload = [(str(t.A), str(t.B), str(t.C), t.bits, t.mode,
                [(r.p, r.q) for r in chunk]) for chunk in chunks if chunk]
    out: dict[Slope, Edge] = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_edge_worker, payload):
            for e in part:
                out[e.slope] = e
    return [out[r] for r in slopes]


def _edge_worker(args):
    sa, sb, sc, bits, mode, pairs = args
    t = MarkoffTriple(sa, sb, sc, bits=bits, mode=mode)
    return [edge_global(t, Slope(p, q)) for p, q in pairs]


# ---------------------------------------------------------------------------
# membership and the bounding quadrilateral


@dataclass(frozen=True)
class MembershipResult:
    kind: Literal["inside", "boundary", "outside"]
    witness: Slope | None
    margin: mpf


def membership(t: MarkoffTriple, v, depth: int,
               tol: mpf | None = None) -> MembershipResult:
    """Sign sweep of every side functional over enumerate(depth).

    Margins are f_s(v) / (|grad f_s| |v|), the signed relative distance of
    v to the hyperplane of the side at s.  The verdict is outside when
    some margin is below -tol, boundary when the smallest margin lands
    within [-tol, tol], and inside otherwise.  The witness is the slope
    of the smallest margin (None for inside).

    Values and gradients are propagated as scalar streams over the tree
    expansion, so the sweep costs a handful of multiplications per slope.
    """
    vec = tuple(v)
    with mp.workprec(t.bits):
        if tol is None:
            tol = boundary_tol(t.bits)
        norm = mp.sqrt(sum(x * x for x in vec))
        if norm == 0:
            raise ValueError("zero vector has no membership")
        worst: mpf | None = None
        witness: Slope | None = None

        values = dict(zip(farey.BASE_SLOPES, t.as_tuple()))
        grads: dict[Slope, tuple] = {
            farey.INFINITY: (mpf(1), mpf(0), mpf(0)),
            farey.ZERO: (mpf(0), mpf(1), mpf(0)),
            farey.ONE: (mpf(0), mpf(0), mpf(1)),
        }

        def margin_of(g) -> mpf:
            f = g[0] * vec[0] + g[1] * vec[1] + g[2] * vec[2]
            gn = mp.sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2])
            return f / (gn * norm)

        for s in farey.BASE_SLOPES:
            mgn = margin_of(grads[s])
            if worst is None or mgn < worst:
                worst, witness = mgn, s
        for exp in farey.expansions(depth):
            if exp.new not in values:
                pu, pv = values[exp.u], values[exp.v]
                values[exp.new] = ensure_finite(pu * pv - values[exp.old])
                gu, gv, go = grads[exp.u], grads[exp.v], grads[exp.old]
                grads[exp.new] = (pu * gv[0] + pv * gu[0] - go[0],
                                  pu * gv[1] + pv * gu[1] - go[1],
                                  pu * gv[2] + pv * gu[2] - go[2])
            mgn = margin_of(grads[exp.new])
            if mgn < worst:
                worst, witness = mgn, exp.new
        if worst < -tol:
            return MembershipResult("outside", witness, worst)
        if abs(worst) <= tol:
            return MembershipResult("boundary", witness, worst)
        return MembershipResult("inside", None, worst)


def dlength(t: MarkoffTriple, s: Slope, v) -> mpf:
    """Derivative of the curve length at slope s in direction v.

    The trace is 2 cosh(length/2), so dlength = 2 f_s(v) / sqrt(trace^2-4).
    Requires trace(s) > 2.
    """
    with mp.workprec(t.bits):
        phi = value_at(t, s)
        if not phi > 2:
            raise ValueError(f"length of {s} is not differentiable: trace <= 2")
        f = jet_at(t, s).apply(tuple(v))
        return ensure_finite(2 * f / mp.sqrt(phi * phi - 4))


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


@dataclass(frozen=True)
class Quadrilateral:
    """Bounding quadrilateral from the sides at 1/0, 0/1, 1/1 and 2/1.

    Corners are consecutive intersections of the four side lines in the
    circular slope order 0/1, 1/1, 2/1, 1/0.  Every vertex of the polygon
    lies inside it.
    """

    corners: tuple[ProjectivePoint, ...]
    lines: tuple[tuple[mpf, mpf, mpf], ...]
    slopes: tuple[Slope, ...]
    interior: tuple[mpf, mpf, mpf]
    bits: int

    def contains(self, v, tol: mpf | None = None) -> bool:
        with mp.workprec(self.bits):
            if tol is None:
                tol = boundary_tol(self.bits)
            vec = tuple(v)
            nv = mp.sqrt(sum(x * x for x in vec))
            lo, hi = mpf(0), mpf(0)
            vals = []
            for line in self.lines:
                ref = sum(a * b for a, b in zip(line, self.interior))
                val = sum(a * b for a, b in zip(line, vec))
                nl = mp.sqrt(sum(a * a for a in line))
                vals.append((val / (nl * nv)) * (1 if ref > 0 else -1))
            return all(x >= -tol for x in vals) or all(x <= tol for x in vals)


def quadrilateral(t: MarkoffTriple) -> Quadrilateral:
    """Build the bounding quadrilateral of the polygon."""
    order = (ZERO, ONE, Slope(2, 1), INFINITY)
    with mp.workprec(t.bits):
        lines = []
        for r in order:
            e = edge_global(t, r)
            lines.append(_cross3(e.P_minus.vec, e.P_plus.vec))
        corners = []
        for i in range(4):
            pt = _cross3(lines[i], lines[(i + 1) % 4])
            corners.append(ProjectivePoint(pt).normalized())
        return Quadrilateral(tuple(corners), tuple(lines), order,
                             interior_point(t), t.bits)
