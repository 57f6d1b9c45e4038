"""Shape of the polygon far along one neighbor family.

All functions work in the affine chart (X, Y) of a chart region with
half-trace coordinates (l, x, y), where the n-th neighbor's side has the
closed-form endpoints of `polygon.edge_closed_form`.  The controlling
scale is Xi_n = e^(n l - x): sides grow like Xi_n^2 while the chords
between consecutive sides stay bounded, so the sides fill up the
boundary.  Truncated expansions in powers of Xi_n^-1 are provided with
their residuals scaled by the first omitted order, which keeps the
"O(...)" claims falsifiable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from mpmath import mp, mpf

from ._mp import ensure_finite
from .markoff import HalfTraceCoords
from .polygon import edge_closed_form


@dataclass(frozen=True)
class NeighborScale:
    """Geometric scale Xi_n = e^(xi_n) of the n-th neighbor.

    Consecutive scales have the exact ratio e^l.
    """

    n: int
    value: mpf


def neighbor_scale(c: HalfTraceCoords, n: int) -> NeighborScale:
    with mp.workprec(c.bits):
        return NeighborScale(n, ensure_finite(mp.e ** c.xi(n)))


def _bits_for(c: HalfTraceCoords, n_max: int, power: int) -> int:
    """Working precision keeping Xi^-power residuals above rounding.

    Endpoint coordinates grow like Xi^2 and the checked residuals decay
    like Xi^-power, so the relative precision must cover Xi^(2+power).
    """
    with mp.workprec(c.bits):
        xi_top = abs(c.xi(n_max)) + abs(c.l)
        need = int((2 + power) * xi_top * mpf(mp.log(2) ** -1)) + 128
    return max(c.bits, need)


def _escalate(c: HalfTraceCoords, n_max: int, power: int) -> HalfTraceCoords:
    """Copy of the coordinate set carrying the escalated precision.

    The closed forms compute under the coordinate set's own bit count, so
    raising the ambient precision alone would not reach them; the stored
    l, x, y values are exact binary numbers and transfer unchanged.
    """
    return replace(c, bits=_bits_for(c, n_max, power))


@dataclass(frozen=True)
class SideChord:
    """Side vector P_n^- -> P_n^+, chord vector P_n^+ -> P_{n+1}^-.

    proximity_ratio = |side| / |chord| says how much closer P_n^+ is to
    the next side than to its own partner; it grows like y^2 Xi_n^2 / 2.
    """

    n: int
    side: tuple[mpf, mpf]
    chord: tuple[mpf, mpf]
    proximity_ratio: mpf


def side_and_chord(c: HalfTraceCoords, n: int) -> SideChord:
    """Exact side and chord vectors at station n, plus proximity ratio."""
    c = _escalate(c, abs(n) + 1, 2)
    with mp.workprec(c.bits):
        here = edge_closed_form(c, n)
        after = edge_closed_form(c, n + 1)
        side = (here.plus[0] - here.minus[0], here.plus[1] - here.minus[1])
        chord = (after.minus[0] - here.plus[0], after.minus[1] - here.plus[1])
        ls = mp.sqrt(side[0] ** 2 + side[1] ** 2)
        lc = mp.sqrt(chord[0] ** 2 + chord[1] ** 2)
        if lc == 0:
            raise ZeroDivisionError("degenerate chord between consecutive "
                                    "sides")
        return SideChord(n, side, chord, ensure_finite(ls / lc))


def side_slope(c: HalfTraceCoords, n: int) -> mpf:
    """Slope of the n-th side from its endpoint differences.

    Equal to y tanh(xi_n) identically; computing it from the endpoints
    keeps this an end-to-end check rather than a restatement.
    """
    sc = side_and_chord(c, n)
    if sc.side[0] == 0:
        raise ZeroDivisionError("vertical side has no finite slope")
    return sc.side[1] / sc.side[0]


def chord_slope(c: HalfTraceCoords, n: int) -> mpf:
    """Slope of the chord from side n to side n+1."""
    sc = side_and_chord(c, n)
    if sc.chord[0] == 0:
        raise ZeroDivisionError("vertical chord has no finite slope")
    return sc.chord[1] / sc.chord[0]


def axis_intercept(c: HalfTraceCoords, n: int) -> mpf:
    """X-coordinate where the extended n-th side meets the horizontal axis.

    (Y+ X- - Y- X+) / (Y+ - Y-) collapses to exactly n, every term of the
    closed forms cancelling; any drift flags an endpoint bug, so this
    doubles as a global regression probe.
    """
    c = _escalate(c, abs(n) + 1, 2)
    with mp.workprec(c.bits):
        fe = edge_closed_form(c, n)
        (xm, ym), (xp, yp) = fe.minus, fe.plus
        den = yp - ym
        if den == 0:
            raise ZeroDivisionError("side is horizontal; no axis crossing")
        return ensure_finite((yp * xm - ym * xp) / den)


def gap_proportion(c: HalfTraceCoords, N: int) -> mpf:
    """Share of the boundary length taken by sides over stations [N, 2N].

    Sum of side lengths divided by the total (sides plus chords) walking
    from P_N^- to P_{2N}^+.  Approaches 1 as N grows.
    """
    if N < 1:
        raise ValueError("window start must be at least 1")
    c = _escalate(c, 2 * N + 1, 2)
    with mp.workprec(c.bits):
        sides = mpf(0)
        chords = mpf(0)
        prev_plus = None
        for n in range(N, 2 * N + 1):
            fe = edge_closed_form(c, n)
            if prev_plus is not None:
                chords += mp.sqrt((fe.minus[0] - prev_plus[0]) ** 2
                                  + (fe.minus[1] - prev_plus[1]) ** 2)
            sides += mp.sqrt((fe.plus[0] - fe.minus[0]) ** 2
                             + (fe.plus[1] - fe.minus[1]) ** 2)
            prev_plus = fe.plus
        return ensure_finite(sides / (sides + chords))


def expansion_residuals(c: HalfTraceCoords, n: int) -> dict[str, mpf]:
    """Residuals of every truncated expansion, scaled by the omitted order.

    Each entry is (exact value - truncation) * Xi_n^k with k the first
    omitted power, so a correct expansion gives an O(1) number however
    large n is.  Keys name the expanded quantity:

      sqrt_w          sqrt(cosh(xi)^2 - y^-2)       (k = 5)
      endpoint_Y+/-   (4/y) Y_n^+-                  (k = 4)
      endpoint_X+/-   4 X_n^+-                      (k = 4)
      side_Y, side_X  side vector components        (k = 2)
      chord_Y, chord_X chord vector components      (k = 4)
      slope_side      y (1 - 2 Xi^-2)               (k = 4)
      slope_chord     y (1 - (1+e^-2l) Xi^-2)       (k = 4)

    Precision is escalated internally so rounding stays far below the
    truncation error being measured.
    """
    c = _escalate(c, abs(n) + 1, 5)
    with mp.workprec(c.bits):
        l, y = c.l, c.y
        xi = c.xi(n)
        Xi = mp.e ** xi
        iy2 = 1 / (y * y)
        sl, tl = mp.sinh(l), mp.tanh(l)
        el, eml = mp.e ** l, mp.e ** -l
        em2l = mp.e ** (-2 * l)

        fe = edge_closed_form(c, n)
        fe2 = edge_closed_form(c, n + 1)
        (xm, ym), (xp, yp) = fe.minus, fe.plus

        out: dict[str, mpf] = {}

        w = mp.sqrt(mp.cosh(xi) ** 2 - iy2)
        w_trunc = (Xi / 2 + (1 - 2 * iy2) / (2 * Xi)
                   + (2 * iy2 - 2 * iy2 * iy2) / (2 * Xi ** 3))
        out["sqrt_w"] = (w - w_trunc) * Xi ** 5

        yp_trunc = (el / sl * Xi ** 2 - (2 / tl + 2 * iy2)
                    + (eml / sl + 4 * iy2 - 2 * iy2 * iy2) / Xi ** 2)
        out["endpoint_Y+"] = (4 / y * yp - yp_trunc) * Xi ** 4
        ym_trunc = (eml / sl * Xi ** 2 - (2 / tl - 2 * iy2)
                    + (el / sl - 4 * iy2 + 2 * iy2 * iy2) / Xi ** 2)
        out["endpoint_Y-"] = (4 / y * ym - ym_trunc) * Xi ** 4
        xp_trunc = (el / sl * Xi ** 2 + (2 - 2 * iy2)
                    + (-eml / sl - 2 * iy2 * iy2) / Xi ** 2 + 4 * n)
        out["endpoint_X+"] = (4 * xp - xp_trunc) * Xi ** 4
        xm_trunc = (eml / sl * Xi ** 2 - (2 - 2 * iy2)
                    + (-el / sl + 2 * iy2 * iy2) / Xi ** 2 + 4 * n)
        out["endpoint_X-"] = (4 * xm - xm_trunc) * Xi ** 4

        out["side_Y"] = (4 / y * (yp - ym) - (2 * Xi ** 2 - 4 * iy2)) * Xi ** 2
        out["side_X"] = (4 * (xp - xm) - (2 * Xi ** 2 + 4 - 4 * iy2)) * Xi ** 2

        chord_y_trunc = 4 * iy2 - (4 * iy2 - 2 * iy2 * iy2) * (1 + em2l) / Xi ** 2
        out["chord_Y"] = (4 / y * (fe2.minus[1] - yp) - chord_y_trunc) * Xi ** 4
        chord_x_trunc = 4 * iy2 + 2 * iy2 * iy2 * (1 + em2l) / Xi ** 2
        out["chord_X"] = (4 * (fe2.minus[0] - xp) - chord_x_trunc) * Xi ** 4

        sigma = (yp - ym) / (xp - xm)
        out["slope_side"] = (sigma - y * (1 - 2 / Xi ** 2)) * Xi ** 4
        sigma_p = (fe2.minus[1] - yp) / (fe2.minus[0] - xp)
        out["slope_chord"] = (sigma_p - y * (1 - (1 + em2l) / Xi ** 2)) * Xi ** 4

        for k, v in out.items():
            out[k] = ensure_finite(v)
        return out


def slope_interleaving_ok(c: HalfTraceCoords, n_start: int,
                          n_stop: int) -> bool:
    """Check sigma_n < sigma'_n < sigma_{n+1} over [n_start, n_stop).

    This is the convexity-forced monotonicity of the interleaved slope
    sequence; it is guaranteed once Xi_n^2 >= 10 max(1, y^2), so callers
    should pick n_start at or above that threshold.
    """
    with mp.workprec(c.bits):
        for n in range(n_start, n_stop):
            s0 = side_slope(c, n)
            sp = chord_slope(c, n)
            s1 = side_slope(c, n + 1)
            if not (s0 < sp < s1):
                return False
        return True


def interleaving_threshold(c: HalfTraceCoords) -> int:
    """Smallest n with Xi_n^2 >= 10 max(1, y^2)."""
    with mp.workprec(c.bits):
        target = mp.log(10 * max(mpf(1), c.y * c.y)) / 2
        # xi(n) = n l - x >= target
        n = int(mp.ceil((target + c.x) / c.l))
        while c.xi(n) * 2 < 2 * target:
            n += 1
        return n
