"""Univariate interpolation and coefficient extraction from a blackbox.

All restrictions of a homogeneous degree-``d`` oracle to a line ``t -> t e_i + w``
are univariate of degree at most ``d``, so they are recovered from the
``d + 1`` samples at ``t = 0, 1, ..., d``.  The Lagrange basis for those nodes
is computed once per ``d`` and cached.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .oracle import Oracle
from .scalarpoly import UniPoly, to_rational


def interpolate(points: Sequence, values: Sequence) -> UniPoly:
    """Unique polynomial of degree ``< len(points)`` through the given pairs (Lagrange form)."""
    if len(points) != len(values):
        raise ValueError("points and values differ in length")
    xs = [to_rational(x) for x in points]
    ys = [to_rational(y) for y in values]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must be distinct")
    total = UniPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = UniPoly([1])
        scale = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UniPoly([-xj, 1])
                scale *= xi - xj
        total = total + basis * (yi / scale)
    return total


@lru_cache(maxsize=None)
def _node_weights(d: int) -> tuple[tuple[Fraction, ...], ...]:
    """``W[m][i]``: contribution of the sample at node ``i`` to the coefficient of ``t**m``."""
    nodes = list(range(d + 1))
    cols = []
    for i in range(d + 1):
        unit = [0] * (d + 1)
        unit[i] = 1
        p = interpolate(nodes, unit)
        cols.append([p.coefficient(m) for m in range(d + 1)])
    return tuple(tuple(cols[i][m] for i in range(d + 1)) for m in range(d + 1))


def line_samples(o: Oracle, i: int, offset: Sequence) -> list:
    """Values of ``o(t e_i + offset)`` at ``t = 0..d`` (``offset[i]`` is ignored)."""
    base = list(offset)
    out = []
    for t in range(o.d + 1):
        base[i] = t
        out.append(o(list(base)))
    return out


def coefficients_from_samples(samples: Sequence, degrees: Sequence[int]) -> list[Fraction]:
    """Selected coefficients of the polynomial interpolating ``samples`` at nodes ``0..d``."""
    w = _node_weights(len(samples) - 1)
    return [sum((c * s for c, s in zip(w[m], samples) if c), Fraction(0)) for m in degrees]


def _unit(n: int, *idx: int) -> list[int]:
    v = [0] * n
    for k in idx:
        v[k] += 1
    return v


class LineCache:
    """Memoized line restrictions of one oracle, keyed by the direction and support.

    Coefficient extraction for many ``(i, j, k)`` triples reuses the same lines;
    the cache keeps the blackbox budget at ``O(n**2 d)`` for a full slice triple.
    """

    def __init__(self, o: Oracle):
        self.o = o
        self._lines: dict[tuple, list] = {}
        self._points: dict[int, object] = {}

    def point(self, i: int):
        if i not in self._points:
            self._points[i] = self.o(_unit(self.o.n, i))
        return self._points[i]

    def line(self, i: int, support: tuple[int, ...]) -> list:
        key = (i, support)
        if key not in self._lines:
            self._lines[key] = line_samples(self.o, i, _unit(self.o.n, *support))
        return self._lines[key]


def coeff_xi_pow(o: Oracle, i: int, j: int, k: int, cache: LineCache | None = None) -> Fraction:
    """Coefficient of ``x_i**(d-2) * x_j * x_k`` (0-based indices) read from the blackbox.

    Three cases: ``j == k == i`` is one evaluation at ``e_i``; a single
    index equal to ``i`` or ``j == k`` reads the line ``t e_i + e_m``; two
    distinct indices other than ``i`` read ``t e_i + e_j + e_k`` and subtract
    the two square contributions.  At most ``3 (d + 1)`` calls.
    """
    d = o.d
    if d < 3:
        raise ValueError(f"coefficient extraction needs degree >= 3, got {d}")
    for idx in (i, j, k):
        if not 0 <= idx < o.n:
            raise IndexError(f"variable index {idx} out of range for n={o.n}")
    cache = cache or LineCache(o)
    if j == i and k == i:
        return Fraction(cache.point(i))
    if j == i or k == i:
        m = k if j == i else j
        return coefficients_from_samples(cache.line(i, (m,)), [d - 1])[0]
    if j == k:
        return coefficients_from_samples(cache.line(i, (j,)), [d - 2])[0]
    j, k = min(j, k), max(j, k)
    mixed = coefficients_from_samples(cache.line(i, (j, k)), [d - 2])[0]
    sq_j = coefficients_from_samples(cache.line(i, (j,)), [d - 2])[0]
    sq_k = coefficients_from_samples(cache.line(i, (k,)), [d - 2])[0]
    return mixed - sq_j - sq_k


def partial_eval(o: Oracle, i: int, point: Sequence) -> Fraction:
    """Exact ``d o / d x_i`` at ``point``: interpolate along coordinate ``i``, differentiate, evaluate."""
    if len(point) != o.n:
        raise ValueError(f"point has length {len(point)}, expected {o.n}")
    samples = line_samples(o, i, list(point))
    coeffs = coefficients_from_samples(samples, range(1, o.d + 1))
    a = to_rational(point[i])
    acc = Fraction(0)
    for m in range(o.d, 0, -1):
        acc = acc * a + m * coeffs[m - 1]
    return acc
