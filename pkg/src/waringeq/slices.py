"""Slice matrices of symmetric tensors attached to homogeneous polynomials.

For ``f = sum T[i_1..i_d] x_{i_1} ... x_{i_d}`` with ``T`` symmetric, the slice
indexed by a ``(d-2)``-multiset ``I`` is the ``n x n`` matrix ``T[I, j, k]``.
Entries are stored as exact tensor entries (coefficient divided by the number
of orderings of the index multiset).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb

from .exactla import Matrix, as_matrix
from .interp import LineCache, coeff_xi_pow
from .oracle import Oracle
from .scalarpoly import Poly, multinomial


def _index_multiplicity(indices) -> int:
    counts: dict[int, int] = {}
    for x in indices:
        counts[x] = counts.get(x, 0) + 1
    return multinomial(counts.values())


@dataclass(frozen=True)
class SliceTriple:
    t1: Matrix
    t2: Matrix
    t3: Matrix

    def __iter__(self):
        return iter((self.t1, self.t2, self.t3))


@dataclass(frozen=True)
class SliceFamily:
    """All distinct slices of a degree-``d`` form, keyed by nondecreasing index tuples."""

    n: int
    d: int
    slices: dict

    def __getitem__(self, key) -> Matrix:
        return self.slices[tuple(sorted(key))]

    def __iter__(self):
        return iter(self.slices.items())

    def __len__(self):
        return len(self.slices)

    def ordered_weight(self, key) -> int:
        """Number of ordered ``(d-2)``-tuples collapsing onto ``key``."""
        return _index_multiplicity(key)


def slice_entry(o: Oracle, i: int, j: int, k: int, cache: LineCache | None = None) -> Fraction:
    """Tensor entry ``T[i, ..., i, j, k]`` (``i`` repeated ``d - 2`` times), 0-based."""
    coeff = coeff_xi_pow(o, i, j, k, cache)
    return coeff / _index_multiplicity([i] * (o.d - 2) + [j, k])


def slice_triple(o: Oracle, block: int | None = None) -> SliceTriple:
    """The three slices ``T[i..i]`` for ``i = 0, 1, 2`` of the blackbox.

    With ``block`` only the leading ``block x block`` part of each slice is
    read; this is how a 2-variable problem gets its third slice from a
    3-variable lift.  Without it, ``n == 2`` repeats the first slice as the
    third and ``n == 1`` repeats it twice.
    """
    if o.d < 3:
        raise ValueError(f"slices need degree >= 3, got {o.d}")
    size = o.n if block is None else block
    if size > o.n:
        raise ValueError("block larger than the variable count")
    count = min(3, o.n)
    cache = LineCache(o)
    mats = []
    for i in range(count):
        entries = [[Fraction(0)] * size for _ in range(size)]
        for j in range(size):
            for k in range(j, size):
                v = slice_entry(o, i, j, k, cache)
                entries[j][k] = entries[k][j] = v
        mats.append(Matrix(entries))
    while len(mats) < 3:
        mats.append(mats[0] if len(mats) == 2 else mats[-1])
    return SliceTriple(*mats)


def slice_count(n: int, d: int) -> int:
    return comb(n + d - 3, d - 2)


def all_slices(p: Poly, max_n: int = 4, max_d: int = 6) -> SliceFamily:
    """Every distinct slice of a dense homogeneous ``p`` (size-guarded)."""
    d = p.homogeneous_degree()
    if d is None:
        raise ValueError("all_slices needs a nonzero homogeneous polynomial; pass Poly with terms")
    return _all_slices(p, d, max_n, max_d)


def all_slices_of_degree(p: Poly, d: int, max_n: int = 4, max_d: int = 6) -> SliceFamily:
    """Like :func:`all_slices` but with the degree given (so ``p`` may be zero)."""
    if not p.is_homogeneous(d):
        raise ValueError(f"polynomial is not homogeneous of degree {d}")
    return _all_slices(p, d, max_n, max_d)


def _all_slices(p: Poly, d: int, max_n: int, max_d: int) -> SliceFamily:
    n = p.n
    if d < 2:
        raise ValueError("slices need degree >= 2")
    if n > max_n or d > max_d:
        raise ValueError(f"size guard: n={n}, d={d} exceeds n<={max_n}, d<={max_d}")
    out = {}
    for key in combinations_with_replacement(range(n), d - 2):
        entries = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            for k in range(j, n):
                idx = list(key) + [j, k]
                exps = [0] * n
                for x in idx:
                    exps[x] += 1
                c = p.coefficient(exps)
                if c:
                    v = c / _index_multiplicity(idx)
                    entries[j][k] = entries[k][j] = v
        out[key] = Matrix(entries)
    return SliceFamily(n, d, out)


def transform_slices(family: SliceFamily, a) -> SliceFamily:
    """Slices of ``p(A x)`` from the slices of ``p``: ``T_I = A^T D_I A``.

    ``D_I`` sums ``prod_m A[j_m, i_m] * S_J`` over all ordered tuples ``J``.
    """
    a = as_matrix(a)
    n, d = family.n, family.d
    if a.shape != (n, n):
        raise ValueError(f"matrix must be {n}x{n}")
    at = a.T
    out = {}
    for key in family.slices:
        acc = Matrix.zeros(n)
        for jt in product(range(n), repeat=d - 2):
            w = Fraction(1)
            for jm, im in zip(jt, key):
                w *= a[jm, im]
                if not w:
                    break
            if w:
                s = family[jt]
                if not s.is_zero():
                    acc = acc + s * w
        out[key] = at @ acc @ a
    return SliceFamily(n, d, out)
