"""The two limit regimes of the lengthening polygon.

One pinched curve: the pinched region's trace sits at 2 and its side
collapses to a point; the neighbor family's sides become tangent to a
parabola, with endpoints on a second parabola below it, and the sides no
longer fill up the boundary (their share tends to sqrt(y^2-1)/y).

All curves pinched: the trace map is constant 2 and deformations become
a linear form on the light cone of Minkowski 3-space via exact integer
lightlike lifts of slopes; lengthening directions form a round cone cut
out by a quadratic discriminant, projectively a disk inscribed in the
positive octant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from mpmath import mp, mpf

from . import farey
from ._mp import boundary_tol, default_bits, ensure_finite, to_real
from .farey import Slope
from .markoff import MarkoffTriple, classify
from .polygon import PolygonApprox


# ---------------------------------------------------------------------------
# one pinched curve


@dataclass(frozen=True)
class OnePinchModel:
    """Torus with one loop collapsed; neighbors of the pinched region
    share the trace value 2y.

    The surface is a circle of length 2 arccosh(y); y > 1 strictly or
    every loop is pinched and the Euclidean ops apply instead.
    """

    y: mpf
    region: Slope
    bits: int

    def circle_length(self) -> mpf:
        with mp.workprec(self.bits):
            return 2 * mp.acosh(self.y)


def one_pinch_model(t: MarkoffTriple) -> OnePinchModel:
    """Extract the pinch data from a triple classified as one_pinch."""
    c = classify(t)
    if c.kind != "one_pinch":
        raise ValueError(f"triple classifies as {c.kind}, not one_pinch")
    for r, v in zip(farey.BASE_SLOPES, t.as_tuple()):
        if v == 2:
            others = [w for w in t.as_tuple() if w != 2]
            return OnePinchModel(others[0] / 2, r, t.bits)
    raise AssertionError("unreachable: one_pinch with no value 2")


@dataclass(frozen=True)
class PinchEdge:
    """Side of the n-th neighbor of the pinched region, in its (X, Y)
    chart (deformations normalized so the pinched region's derivative
    is 1, with the n-th neighbor's derivative equal to y n^2 - X n + Y).
    """

    n: int
    minus: tuple[mpf, mpf]
    plus: tuple[mpf, mpf]


def one_pinch_edge(y, n: int, bits: int | None = None) -> PinchEdge:
    """Closed-form side endpoints in the pinched chart.

    X_n^{+-} = 2ny +- sqrt(y^2-1), Y_n^{+-} = y n^2 +- n sqrt(y^2-1).
    """
    bits = bits or default_bits()
    with mp.workprec(bits):
        yv = to_real(y, bits)
        if not yv > 1:
            raise ValueError("pinched chart needs y > 1; at y = 1 all "
                             "curves collapse (use the euclidean ops)")
        s = mp.sqrt(yv * yv - 1)
        return PinchEdge(n,
                         (2 * n * yv - s, yv * n * n - n * s),
                         (2 * n * yv + s, yv * n * n + n * s))


def parabola_certificates(y, n_range: Iterable[int],
                          bits: int | None = None) -> dict:
    """Exact-identity residuals for the two-parabola picture.

    For each n in n_range, with f(X) = X^2 / (4y):
      endpoint_on_parabola  endpoints satisfy Y = f(X) - (y - 1/y)/4
      tangency_discriminant f(X) - (line through the side) has a double
                            root: discriminant residual
      tangency_point        the double root sits at X = 2 y n
      tangency_slope        the side's slope equals n (= f'(2yn))
      endpoint_symmetry     endpoint X's are symmetric about 2 y n

    Returns the maximum absolute residual per certificate.
    """
    bits = bits or default_bits()
    out = {k: mpf(0) for k in ("endpoint_on_parabola",
                               "tangency_discriminant",
                               "tangency_point",
                               "tangency_slope",
                               "endpoint_symmetry")}
    with mp.workprec(bits):
        yv = to_real(y, bits)
        if not yv > 1:
            raise ValueError("parabola certificates need y > 1")
        drop = (yv - 1 / yv) / 4
        for n in n_range:
            e = one_pinch_edge(yv, n, bits)
            for X, Y in (e.minus, e.plus):
                res = Y - (X * X / (4 * yv) - drop)
                out["endpoint_on_parabola"] = max(
                    out["endpoint_on_parabola"], abs(res))
            # line through the side: Y = m X + b
            dx = e.plus[0] - e.minus[0]
            m = (e.plus[1] - e.minus[1]) / dx
            b = e.minus[1] - m * e.minus[0]
            # f(X) - (mX + b) = X^2/(4y) - mX - b: double root iff
            # m^2 + b/y = 0; its root is X = 2 y m
            out["tangency_discriminant"] = max(
                out["tangency_discriminant"], abs(m * m + b / yv))
            out["tangency_point"] = max(
                out["tangency_point"], abs(2 * yv * m - 2 * yv * n))
            out["tangency_slope"] = max(out["tangency_slope"], abs(m - n))
            mid = (e.plus[0] + e.minus[0]) / 2
            out["endpoint_symmetry"] = max(
                out["endpoint_symmetry"], abs(mid - 2 * yv * n))
    return out


def pinch_side_share(y, N: int, bits: int | None = None) -> mpf:
    """Endpoint gap fraction over stations [-N, N] in the pinched chart.

    Fraction of the horizontal span between the extreme endpoints that
    the sides cover, the gaps being the spans between one side's plus
    endpoint and the next side's minus endpoint.  The limit for large N
    is sqrt(y^2 - 1)/y, strictly under 1: unlike the generic case the
    sides here do not fill up the boundary.
    """
    bits = bits or default_bits()
    with mp.workprec(bits):
        yv = to_real(y, bits)
        sides = mpf(0)
        gaps = mpf(0)
        prev = None
        for n in range(-N, N + 1):
            e = one_pinch_edge(yv, n, bits)
            if prev is not None:
                gaps += e.minus[0] - prev
            sides += e.plus[0] - e.minus[0]
            prev = e.plus[0]
        return ensure_finite(sides / (sides + gaps))


def pinch_alignment(c) -> "PinchAlignment":
    """Chart map taking generic (X, Y) side coordinates to pinched ones.

    For a geometric triple whose chart region's trace is 2 + eps with
    equal neighbor traces, the generic chart coordinates converge, after
    this affine change, to the pinched-chart coordinates as eps -> 0:

        X_pinch = y (X + 1/2)
        Y_pinch = Y / l + y X / 2

    The map is exact only in the limit; at small eps the mismatch decays
    like eps.
    """
    return PinchAlignment(c.l, c.y, c.bits)


@dataclass(frozen=True)
class PinchAlignment:
    l: mpf
    y: mpf
    bits: int

    def apply(self, X, Y) -> tuple[mpf, mpf]:
        with mp.workprec(self.bits):
            return (self.y * (X + mpf(1) / 2),
                    Y / self.l + self.y * X / 2)


# ---------------------------------------------------------------------------
# all curves pinched: lightlike lifts and the round cone


@dataclass(frozen=True)
class LightlikeVector:
    """Integer lift (p^2+q^2, p^2-q^2, 2pq) of a slope to the light cone
    of the form <u|v> = u0 v0 - u1 v1 - u2 v2.
    """

    slope: Slope
    v: tuple[int, int, int]


def lightlike_vector(s: Slope) -> LightlikeVector:
    p, q = s.p, s.q
    return LightlikeVector(s, (p * p + q * q, p * p - q * q, 2 * p * q))


def minkowski(u: tuple, v: tuple):
    """Pairing u0 v0 - u1 v1 - u2 v2 (exact on integer inputs)."""
    return u[0] * v[0] - u[1] * v[1] - u[2] * v[2]


@dataclass(frozen=True)
class FlatTorusForm:
    """Squared-length form of a flat torus: l(p/q) = E p^2 + 2F pq + G q^2.

    Positive definiteness (E > 0 and EG - F^2 > 0) says the three base
    lengths come from an actual Euclidean metric.
    """

    E: mpf
    F: mpf
    G: mpf

    def is_definite(self) -> bool:
        return self.E > 0 and self.E * self.G - self.F * self.F > 0


def eta_form(l_inf, l_0, l_1, bits: int | None = None) -> FlatTorusForm:
    """Squared-length form from the three base lengths.

    The linear form on Minkowski space with the given values on the
    lifts of infinity, 0 and 1 evaluates on every lift to exactly
    l_inf p^2 + l_0 q^2 + (l_1 - l_inf - l_0) pq.
    """
    bits = bits or default_bits()
    with mp.workprec(bits):
        e = to_real(l_inf, bits)
        g = to_real(l_0, bits)
        f = (to_real(l_1, bits) - e - g) / 2
        return FlatTorusForm(e, f, g)


def flat_length(form: FlatTorusForm, s: Slope):
    """Squared length of the loop of slope s; positive for definite forms."""
    p, q = s.p, s.q
    return form.E * p * p + 2 * form.F * p * q + form.G * q * q


def euclidean_extension(l_inf, l_0, l_1, depth: int,
                        bits: int | None = None) -> dict[Slope, mpf]:
    """Extend base deformation values over the tree by the flat recursion.

    Deformations of the constant-2 trace map satisfy, on each adjacent
    quadruple with far pair (new, old), new + old = 2(u + v); this walks
    the recursion over every tree expansion.  The result agrees with
    flat_length of eta_form on every slope (tested, exact in spirit).
    """
    bits = bits or default_bits()
    with mp.workprec(bits):
        vals: dict[Slope, mpf] = {
            farey.INFINITY: to_real(l_inf, bits),
            farey.ZERO: to_real(l_0, bits),
            farey.ONE: to_real(l_1, bits),
        }
        for exp in farey.expansions(depth):
            if exp.new not in vals:
                vals[exp.new] = 2 * (vals[exp.u] + vals[exp.v]) - vals[exp.old]
        return vals


@dataclass(frozen=True)
class RoundConeResult:
    kind: Literal["inside", "boundary", "outside"]
    discriminant: mpf


def cone_discriminant(l_inf, l_0, l_1, bits: int | None = None) -> mpf:
    bits = bits or default_bits()
    with mp.workprec(bits):
        a = to_real(l_inf, bits)
        b = to_real(l_0, bits)
        c = to_real(l_1, bits)
        return (a * a + b * b + c * c - 2 * (a * b + b * c + c * a))


def round_cone_test(l_inf, l_0, l_1, tol=None,
                    bits: int | None = None) -> RoundConeResult:
    """Are the three squared lengths realizable by a Euclidean torus?

    Inside means sqrt(l_inf), sqrt(l_0), sqrt(l_1) satisfy the strict
    triangle inequality, equivalently the discriminant
    l_0^2 + l_1^2 + l_inf^2 - 2(l_0 l_1 + l_1 l_inf + l_inf l_0) is
    negative; zero is the boundary (degenerate flat torus).
    """
    bits = bits or default_bits()
    with mp.workprec(bits):
        a = to_real(l_inf, bits)
        b = to_real(l_0, bits)
        c = to_real(l_1, bits)
        if not (a > 0 and b > 0 and c > 0):
            raise ValueError("round cone test needs positive inputs")
        disc = a * a + b * b + c * c - 2 * (a * b + b * c + c * a)
        if tol is None:
            tol = boundary_tol(bits)
        scale = (a + b + c) ** 2
        if abs(disc) <= tol * scale:
            return RoundConeResult("boundary", disc)
        return RoundConeResult("inside" if disc < 0 else "outside", disc)


@dataclass(frozen=True)
class ConeEquivalenceReport:
    verdict: str
    discriminant: mpf
    min_eta: float
    min_slope: Slope | None
    in_band: bool
    agrees: bool


def euclidean_cone_equivalence(l_inf, l_0, l_1, bound: int = 50,
                               band: float = 1e-6) -> ConeEquivalenceReport:
    """Check the discriminant verdict against a brute positivity sweep.

    Evaluates the squared-length form on every integer direction (p, q)
    with |p|, |q| <= bound (excluding the origin) in float arithmetic,
    and compares all-positivity with the round-cone verdict.  Inputs
    within the band |disc| < band * (l_inf+l_0+l_1)^2 are labeled as
    in-band and exempt from agreement (the sweep cannot resolve the
    boundary at finite bound).
    """
    import numpy as np

    a, b, c = float(l_inf), float(l_0), float(l_1)
    rc = round_cone_test(a, b, c)
    disc = float(rc.discriminant)
    scale = (a + b + c) ** 2
    in_band = abs(disc) < band * scale

    rng = np.arange(-bound, bound + 1)
    p, q = np.meshgrid(rng, rng, indexing="ij")
    eta = a * p * p + b * q * q + (c - a - b) * p * q
    mask = (p != 0) | (q != 0)
    vals = eta[mask]
    idx = int(np.argmin(vals))
    min_eta = float(vals[idx])
    pm = p[mask][idx]
    qm = q[mask][idx]
    min_slope = Slope(int(pm), int(qm)) if (pm, qm) != (0, 0) else None

    all_positive = min_eta > 0
    agrees = in_band or (all_positive == (rc.kind == "inside"))
    return ConeEquivalenceReport(rc.kind, rc.discriminant, min_eta,
                                 min_slope, in_band, agrees)


def shrink_family(lam, mu, nu, t, bits: int | None = None,
                  mode: str = "geometric") -> MarkoffTriple:
    """Triple with traces 2cosh(t sqrt(lam)), ..., shrinking as t -> 0.

    For squared lengths (lam, mu, nu) inside the round cone the family is
    geometric for small t and its rescaled polygon converges to the round
    disk; outside, the triple stops being geometric as t -> 0.
    """
    bits = bits or default_bits()
    with mp.workprec(bits):
        tv = to_real(t, bits)
        if not tv > 0:
            raise ValueError("family parameter t must be positive")
        vals = []
        for s in (lam, mu, nu):
            sv = to_real(s, bits)
            if not sv > 0:
                raise ValueError("squared lengths must be positive")
            vals.append(2 * mp.cosh(tv * mp.sqrt(sv)))
        return MarkoffTriple(vals[0], vals[1], vals[2], bits=bits, mode=mode)


def octant_tangency_certificate() -> dict[str, dict]:
    """Exact double-root certificates: the cone boundary touches each face.

    Restricting the discriminant to a face (one length zero) leaves a
    perfect square in the other two: u^2 - 2uv + v^2.  The quadratic
    (1, -2, 1) has discriminant (-2)^2 - 4*1*1 = 0, an exact integer
    zero, so the boundary conic is tangent to all three faces of the
    projectivized positive octant.
    """
    faces = {}
    for face in ("l_inf=0", "l_0=0", "l_1=0"):
        coeffs = (1, -2, 1)
        disc = coeffs[1] ** 2 - 4 * coeffs[0] * coeffs[2]
        root_num, root_den = -coeffs[1], 2 * coeffs[0]
        faces[face] = {
            "quadratic": coeffs,
            "discriminant": disc,
            "double_root_ratio": (root_num, root_den),
            "tangent": disc == 0,
        }
    return faces


def disk_center_radius(bits: int | None = None):
    """Center and radius of the limit disk in the octant chart embedding.

    On the simplex the boundary conic is the circle of squared radius
    1/6 about the centroid; the chart embedding scales lengths by
    1/sqrt(2), so the image is the incircle of the chart triangle:
    center (1/2, sqrt(3)/6), radius sqrt(3)/6.
    """
    bits = bits or default_bits()
    with mp.workprec(bits):
        r = mp.sqrt(3) / 6
        return (mpf(1) / 2, r), r


def hausdorff_to_disk(poly: PolygonApprox, samples: int = 1440) -> float:
    """Hausdorff distance between the polygon's vertex set and the limit
    circle, in the octant chart.

    Computed in float arithmetic (the distances compared are far above
    float rounding): max over vertices of their distance to the circle,
    against max over circle samples of their distance to the vertex set.
    """
    import numpy as np

    if poly.chart.kind != "octant":
        raise ValueError("Hausdorff comparison expects the octant chart")
    (cx, cy), r = disk_center_radius(poly.triple.bits)
    cxf, cyf, rf = float(cx), float(cy), float(r)
    vx = np.array([float(v[0]) for v in poly.vertices])
    vy = np.array([float(v[1]) for v in poly.vertices])
    rad = np.sqrt((vx - cxf) ** 2 + (vy - cyf) ** 2)
    d1 = float(np.max(np.abs(rad - rf)))
    ang = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    px = cxf + rf * np.cos(ang)
    py = cyf + rf * np.sin(ang)
    d2 = 0.0
    for x, y in zip(px, py):
        d2 = max(d2, float(np.min(np.hypot(vx - x, vy - y))))
    return max(d1, d2)
