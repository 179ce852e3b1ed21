"""Exact rational linear algebra.

A :class:`Matrix` is stored as integer entries over one shared positive
denominator, reduced so the representation is canonical.  Products, inverses
and characteristic polynomials then run as integer loops in
:mod:`waringeq.kernels`; entries are handed out as Fractions.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .instrument import active as _probe_active
from .scalarpoly import UniPoly, to_rational, unigcd


class SingularError(ArithmeticError):
    """Raised when a square matrix has determinant zero."""


class FieldMode(str, enum.Enum):
    COMPLEX = "complex"
    REAL = "real"


def _lcm_den(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        if v.denominator != 1:
            den = math.lcm(den, v.denominator)
    return den


class Matrix:
    """Immutable rectangular matrix of rationals.

    Build from nested sequences of ints, Fractions or ``"a/b"`` strings::

        >>> Matrix([[1, 2], ["1/2", 0]])[1, 0]
        Fraction(1, 2)
    """

    __slots__ = ("rows", "cols", "_num", "_den", "_hash")

    def __init__(self, entries: Sequence[Sequence]):
        data = [[to_rational(x) for x in row] for row in entries]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise ValueError("matrix rows have unequal lengths")
        den = _lcm_den(x for r in data for x in r)
        num = [[x.numerator * (den // x.denominator) for x in r] for r in data]
        self._set(num, den, rows, cols)

    @classmethod
    def _raw(cls, num: list[list[int]], den: int, rows: int | None = None, cols: int | None = None):
        obj = cls.__new__(cls)
        if rows is None:
            rows = len(num)
        if cols is None:
            cols = len(num[0]) if num else 0
        if den < 0:
            num = [[-x for x in r] for r in num]
            den = -den
        g = den
        for r in num:
            for x in r:
                if x:
                    g = math.gcd(g, x)
                    if g == 1:
                        break
            if g == 1:
                break
        if g > 1:
            num = [[x // g for x in r] for r in num]
            den //= g
        obj._set(num, den, rows, cols)
        return obj

    def _set(self, num, den, rows, cols):
        self._num = num
        self._den = den
        self.rows = rows
        self.cols = cols
        self._hash = None
        probe = _probe_active()
        if probe is not None:
            top = max((abs(x).bit_length() for r in num for x in r), default=0)
            probe.update(top + den.bit_length())

    # constructors ---------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw([[int(i == j) for j in range(n)] for i in range(n)], 1, n, n)

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw([[0] * cols for _ in range(rows)], 1, rows, cols)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        if not columns:
            raise ValueError("need at least one column")
        return cls([list(r) for r in zip(*columns)])

    @classmethod
    def from_int_rows(cls, num: list[list[int]], den: int = 1) -> "Matrix":
        return cls._raw([list(r) for r in num], den)

    # access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def denominator(self) -> int:
        return self._den

    def int_rows(self) -> list[list[int]]:
        """Integer numerators over :attr:`denominator` (a fresh copy)."""
        return [r[:] for r in self._num]

    def __getitem__(self, idx) -> Fraction:
        i, j = idx
        return Fraction(self._num[i][j], self._den)

    def row(self, i: int) -> list[Fraction]:
        return [Fraction(x, self._den) for x in self._num[i]]

    def column(self, j: int) -> list[Fraction]:
        return [Fraction(r[j], self._den) for r in self._num]

    def tolist(self) -> list[list[Fraction]]:
        return [[Fraction(x, self._den) for x in r] for r in self._num]

    def to_numpy(self, dtype=complex):
        import numpy as np

        d = self._den
        return np.array([[x / d for x in r] for r in self._num], dtype=dtype).reshape(self.rows, self.cols)

    def max_bits(self) -> int:
        top = max((abs(x).bit_length() for r in self._num for x in r), default=0)
        return top + self._den.bit_length()

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._num for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._num[i][j] == self._num[j][i] for i in range(self.rows) for j in range(i)
        )

    def trace(self) -> Fraction:
        self._need_square()
        return Fraction(sum(self._num[i][i] for i in range(self.rows)), self._den)

    def _need_square(self):
        if not self.is_square():
            raise ValueError(f"expected a square matrix, got {self.rows}x{self.cols}")

    # arithmetic -----------------------------------------------------------

    @property
    def T(self) -> "Matrix":
        return Matrix._raw([list(c) for c in zip(*self._num)] if self.rows else [], self._den, self.cols, self.rows)

    def _aligned(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        den = math.lcm(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        return den, fa, fb

    def __add__(self, other: "Matrix") -> "Matrix":
        den, fa, fb = self._aligned(other)
        num = [[x * fa + y * fb for x, y in zip(ra, rb)] for ra, rb in zip(self._num, other._num)]
        return Matrix._raw(num, den, self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        den, fa, fb = self._aligned(other)
        num = [[x * fa - y * fb for x, y in zip(ra, rb)] for ra, rb in zip(self._num, other._num)]
        return Matrix._raw(num, den, self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-x for x in r] for r in self._num], self._den, self.rows, self.cols)

    def __mul__(self, scalar) -> "Matrix":
        c = to_rational(scalar)
        num = [[x * c.numerator for x in r] for r in self._num]
        return Matrix._raw(num, self._den * c.denominator, self.rows, self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            if self.cols == 0:
                return Matrix.zeros(self.rows, other.cols)
            num = kernels.matmul(self._num, other._num)
            return Matrix._raw(num, self._den * other._den, self.rows, other.cols)
        return self.apply(other)

    def apply(self, vec: Sequence) -> list:
        """``self @ vec`` for a vector; ints stay ints when the matrix is integral."""
        if len(vec) != self.cols:
            raise ValueError(f"vector has length {len(vec)}, expected {self.cols}")
        if all(type(x) is int for x in vec):
            out = kernels.matvec(self._num, list(vec))
            if self._den == 1:
                return out
            return [Fraction(x, self._den) for x in out]
        if all(isinstance(x, (int, Fraction)) for x in vec):
            vd = _lcm_den(to_rational(x) for x in vec)
            iv = [int(x * vd) for x in vec]
            out = kernels.matvec(self._num, iv)
            return [Fraction(x, self._den * vd) for x in out]
        d = self._den
        return [sum((x / d) * v for x, v in zip(r, vec)) for r in self._num]

    def __pow__(self, k: int) -> "Matrix":
        self._need_square()
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            k >>= 1
            if k:
                base = base @ base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Matrix):
            return self.shape == other.shape and self._den == other._den and self._num == other._num
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._den, tuple(map(tuple, self._num))))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.tolist())
        return f"Matrix([{body}])"

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw([[self._num[i][j] for j in cols] for i in rows], self._den, len(rows), len(cols))


def as_matrix(m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m)


# ---------------------------------------------------------------------------
# determinant and inverse


def det(m) -> Fraction:
    """Determinant via fraction-free elimination on the integer numerators."""
    m = as_matrix(m)
    m._need_square()
    n = m.rows
    if n == 0:
        return Fraction(1)
    d, _ = kernels.gauss_jordan(m._num, n)
    return Fraction(d, m._den**n)


def invert(m) -> Matrix:
    """Exact inverse; :class:`SingularError` when ``det(m) == 0``."""
    m = as_matrix(m)
    m._need_square()
    n = m.rows
    if n == 0:
        return m
    aug = [r + [int(i == j) for j in range(n)] for i, r in enumerate(m._num)]
    d, rows = kernels.gauss_jordan(aug, n)
    if d == 0:
        raise SingularError("matrix is singular")
    # rows = [d*I | d*N^{-1}] with N the numerator matrix, so M^{-1} = den * N^{-1}
    return Matrix._raw([r[n:] for r in rows], d, n, n) * m._den


# ---------------------------------------------------------------------------
# polynomials of matrices


def charpoly(m) -> UniPoly:
    """Monic characteristic polynomial ``det(t I - M)`` by Faddeev-LeVerrier.

    Runs on the integer numerator ``N = den * M``: with ``chi_N`` computed
    exactly, ``chi_M(t) = den**-n * chi_N(den * t)``.
    """
    m = as_matrix(m)
    m._need_square()
    n = m.rows
    c = kernels.charpoly(m._num)
    den = m._den
    return UniPoly(Fraction(c[k], den ** (n - k)) for k in range(n + 1))


def polyval_matrix(p: UniPoly, m) -> Matrix:
    """``p(M)`` by Horner's rule."""
    m = as_matrix(m)
    m._need_square()
    n = m.rows
    if p.is_zero():
        return Matrix.zeros(n)
    eye = Matrix.identity(n)
    acc = eye * p.lc
    for c in reversed(p.coeffs[:-1]):
        acc = acc @ m
        if c:
            acc = acc + eye * c
    return acc


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic ``p / gcd(p, p')``."""
    if p.is_zero():
        raise ValueError("square-free part of the zero polynomial is undefined")
    if p.degree == 0:
        return UniPoly([1])
    g = unigcd(p, p.derivative())
    return (p // g).monic()


def _primitive_positive(p: UniPoly) -> UniPoly:
    """Scale by a positive rational so the coefficients are coprime integers."""
    if p.is_zero():
        return p
    den = _lcm_den(p.coeffs)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return UniPoly(Fraction(x, g) for x in ints)


def sturm_chain(p: UniPoly) -> list[UniPoly]:
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial is undefined")
    chain = [_primitive_positive(p), _primitive_positive(p.derivative())]
    while not chain[-1].is_zero():
        r = chain[-2] % chain[-1]
        chain.append(_primitive_positive(-r))
    chain.pop()
    return chain


def _variations(signs: Iterable[int]) -> int:
    out = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            out += 1
        last = s
    return out


def sturm_count(p: UniPoly) -> int:
    """Number of distinct real roots of ``p`` (sign changes at -inf minus +inf)."""
    chain = sturm_chain(p)
    at_pos = [1 if q.lc > 0 else -1 for q in chain]
    at_neg = [s if q.degree % 2 == 0 else -s for q, s in zip(chain, at_pos)]
    return _variations(at_neg) - _variations(at_pos)


def sturm_count_interval(p: UniPoly, a, b) -> int:
    """Distinct real roots in the half-open interval ``(a, b]``."""
    chain = sturm_chain(p)

    def sign(x):
        return (x > 0) - (x < 0)

    va = _variations(sign(q(to_rational(a))) for q in chain)
    vb = _variations(sign(q(to_rational(b))) for q in chain)
    return va - vb


def is_diagonalizable(m, mode: FieldMode = FieldMode.COMPLEX) -> bool:
    """Diagonalizability over C (or over R in ``REAL`` mode), decided exactly.

    Over C the square-free part of the characteristic polynomial must
    annihilate ``M``; over R its roots must additionally all be real, which is
    checked with a Sturm count.
    """
    m = as_matrix(m)
    m._need_square()
    if m.rows == 0:
        return True
    sf = squarefree_part(charpoly(m))
    if not polyval_matrix(sf, m).is_zero():
        return False
    if FieldMode(mode) is FieldMode.REAL:
        return sturm_count(sf) == sf.degree
    return True


def commutes(a, b) -> bool:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape or not a.is_square():
        raise ValueError("commutes needs two square matrices of equal size")
    return a @ b == b @ a


# ---------------------------------------------------------------------------
# kernels and bases


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with leftmost pivots; returns (rows, pivot columns)."""
    a = [list(r) for r in as_matrix(m).tolist()]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m) -> int:
    m = as_matrix(m)
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column (empty if injective)."""
    m = as_matrix(m)
    cols = m.cols
    if m.rows == 0:
        return [[Fraction(int(i == j)) for i in range(cols)] for j in range(cols)]
    a, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][f]
        basis.append(v)
    return basis


def complete_basis(vs: Sequence[Sequence], n: int) -> Matrix:
    """Invertible ``n x n`` matrix whose last ``len(vs)`` columns are ``vs``.

    The leading columns are standard basis vectors chosen greedily in index
    order.  Raises ``ValueError`` if ``vs`` is linearly dependent.
    """
    vs = [[to_rational(x) for x in v] for v in vs]
    if any(len(v) != n for v in vs):
        raise ValueError(f"vectors must have length {n}")
    if vs and rank(Matrix.from_columns(vs)) < len(vs):
        raise ValueError("vectors are linearly dependent")
    chosen: list[list[Fraction]] = []
    need = n - len(vs)
    current = list(vs)
    for i in range(n):
        if len(chosen) == need:
            break
        e = [Fraction(int(j == i)) for j in range(n)]
        trial = current + [e]
        if rank(Matrix.from_columns(trial)) == len(trial):
            chosen.append(e)
            current = trial
    if n == 0:
        return Matrix.zeros(0)
    return Matrix.from_columns(chosen + vs)
