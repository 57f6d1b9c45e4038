import random

import pytest
from mpmath import mp

from lengthpoly import MarkoffTriple, classify

GEOMETRIC_KINDS = ("cone", "cusp", "funnel")


def sample_geometric_triples(count: int, seed: int, lo: float = 2.05,
                             hi: float = 20.0, bits: int = 256):
    """Uniform draws from (lo, hi)^3 kept only when they are geometric."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a, b, c = (rng.uniform(lo, hi) for _ in range(3))
        t = MarkoffTriple(a, b, c, bits=bits, mode="raw")
        if classify(t).kind in GEOMETRIC_KINDS:
            out.append(t)
    return out


def sample_coords(count: int, seed: int, bits: int = 256):
    """Random half-trace coordinate sets (l, x, y) with x in (0, l), y > 1."""
    from lengthpoly import INFINITY, ZERO, HalfTraceCoords

    rng = random.Random(seed)
    out = []
    with mp.workprec(bits):
        for _ in range(count):
            l = mp.mpf(rng.uniform(0.5, 2.5))
            x = l * mp.mpf(rng.uniform(0.05, 0.95))
            y = mp.mpf(rng.uniform(1.05, 4.0))
            out.append(HalfTraceCoords(l, x, y, INFINITY, ZERO, bits))
    return out


@pytest.fixture(scope="session")
def cusp_triple():
    return MarkoffTriple(3, 3, 3, bits=256)


@pytest.fixture(scope="session")
def funnel_triple():
    return MarkoffTriple(3, 3, 4, bits=256)


@pytest.fixture(scope="session")
def asym_triple():
    return MarkoffTriple("3.1", "4.7", "2.6", bits=256, mode="raw")
