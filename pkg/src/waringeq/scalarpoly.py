"""Exact scalars, sparse multivariate polynomials and dense univariate polynomials.

Scalars are :class:`fractions.Fraction` throughout (always reduced, positive
denominator).  :class:`Poly` is a sparse map from exponent tuples to nonzero
rationals; :class:`UniPoly` is a dense coefficient vector, lowest degree first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

from .instrument import active as _probe_active

Rational = Fraction


def to_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to a Fraction; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def bits(q) -> int:
    q = to_rational(q)
    return abs(q.numerator).bit_length() + q.denominator.bit_length()


def multinomial(exps: Iterable[int]) -> int:
    exps = list(exps)
    out = math.factorial(sum(exps))
    for e in exps:
        out //= math.factorial(e)
    return out


# ---------------------------------------------------------------------------
# univariate


class UniPoly:
    """Dense univariate polynomial over the rationals; ``coeffs[k]`` multiplies ``t**k``.

    The zero polynomial has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        probe = _probe_active()
        if probe is not None and cs:
            probe.update(max(bits(c) for c in cs))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UniPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "UniPoly":
        lc = self.lc
        return UniPoly(c / lc for c in self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = to_rational(other)
            return UniPoly(c * x for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quo = [Fraction(0)] * (dq + 1)
        lc = other.lc
        m = len(other.coeffs) - 1
        for k in range(dq, -1, -1):
            q = rem[k + m] / lc
            quo[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return UniPoly(quo), UniPoly(rem[:m])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "UniPoly(0)"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                parts.append(f"{c}*t^{k}" if k > 1 else (f"{c}*t" if k == 1 else f"{c}"))
        return "UniPoly(" + " + ".join(parts) + ")"


def unigcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            b = b.monic()
    return a.monic() if not a.is_zero() else a


# ---------------------------------------------------------------------------
# multivariate


def _glex_key(exps):
    return (sum(exps), exps)


class Poly:
    """Sparse polynomial in ``n`` variables with rational coefficients.

    ``terms`` maps exponent tuples of length ``n`` to nonzero Fractions.  When
    ``degree`` is given the constructor checks that every term has that total
    degree (the zero polynomial passes for any degree).
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping | Iterable = (), degree: int | None = None):
        if n < 0:
            raise ValueError("variable count must be nonnegative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple, Fraction] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not have length {n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = to_rational(c)
            if c:
                s = acc.get(exps, 0) + c
                if s:
                    acc[exps] = s
                else:
                    acc.pop(exps, None)
        self.n = n
        self._terms = acc
        self._hash = None
        if degree is not None and any(sum(e) != degree for e in acc):
            raise ValueError(f"polynomial is not homogeneous of degree {degree}")

    @classmethod
    def variable(cls, i: int, n: int) -> "Poly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def constant(cls, c, n: int) -> "Poly":
        return cls(n, {(0,) * n: c})

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda kv: _glex_key(kv[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """The common total degree of all terms, or None (also None for zero)."""
        degs = {sum(e) for e in self._terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, degree: int | None = None) -> bool:
        if not self._terms:
            return True
        d = self.homogeneous_degree()
        return d is not None and (degree is None or d == degree)

    # arithmetic -----------------------------------------------------------

    def _check_n(self, other: "Poly"):
        if other.n != self.n:
            raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.n)
        self._check_n(other)
        return Poly(self.n, list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.n)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = to_rational(other)
            return Poly(self.n, {e: c * v for e, v in self._terms.items()})
        self._check_n(other)
        acc: dict[tuple, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return Poly(self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = Poly.constant(1, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.n == other.n and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        from .parsing import serialize

        return f"Poly({serialize(self)!r}, n={self.n})"

    # evaluation and calculus ----------------------------------------------

    def eval(self, point: Sequence):
        """Value at ``point``; exact for rational input, generic otherwise."""
        if len(point) != self.n:
            raise ValueError(f"point has length {len(point)}, expected {self.n}")
        if all(isinstance(x, (int, Fraction)) for x in point):
            point = [to_rational(x) for x in point]
        total = 0
        for exps, c in self._terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = v * x**e
            total = total + v
        return total

    __call__ = eval

    def diff(self, i: int) -> "Poly":
        acc = {}
        for exps, c in self._terms.items():
            e = exps[i]
            if e:
                new = list(exps)
                new[i] = e - 1
                acc[tuple(new)] = c * e
        return Poly(self.n, acc)

    def substitute_linear(self, a) -> "Poly":
        """Expand ``p(A x)``; ``A`` has ``n`` rows and any number of columns."""
        rows = [[to_rational(x) for x in row] for row in _rows_of(a)]
        if len(rows) != self.n:
            raise ValueError(f"matrix has {len(rows)} rows, expected {self.n}")
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("matrix rows have unequal lengths")
        cache: dict[tuple[int, int], dict] = {}

        def linear_power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = _power_of_form(rows[i], e)
            return cache[key]

        acc: dict[tuple, Fraction] = {}
        for exps, c in self._terms.items():
            part = {(0,) * m: c}
            for i, e in enumerate(exps):
                if e:
                    lp = linear_power(i, e)
                    nxt: dict[tuple, Fraction] = {}
                    for e1, c1 in part.items():
                        for e2, c2 in lp.items():
                            k = tuple(x + y for x, y in zip(e1, e2))
                            nxt[k] = nxt.get(k, 0) + c1 * c2
                    part = nxt
            for k, v in part.items():
                acc[k] = acc.get(k, 0) + v
        return Poly(m, acc)


def _rows_of(a):
    if hasattr(a, "tolist"):
        return a.tolist()
    return [list(r) for r in a]


def _power_of_form(form: Sequence[Fraction], d: int) -> dict:
    """Multinomial expansion of ``(sum_j form[j] x_j) ** d`` as an exponent map."""
    m = len(form)
    support = [j for j in range(m) if form[j]]
    out: dict[tuple, Fraction] = {}
    for combo in combinations_with_replacement(support, d):
        exps = [0] * m
        for j in combo:
            exps[j] += 1
        c = Fraction(multinomial(exps[j] for j in support))
        for j in support:
            if exps[j]:
                c *= form[j] ** exps[j]
        out[tuple(exps)] = c
    if d == 0:
        out = {(0,) * m: Fraction(1)}
    return out


def power_sum(alphas: Sequence, forms: Sequence[Sequence], d: int) -> Poly:
    """Dense expansion of ``sum_i alphas[i] * <forms[i], x> ** d``."""
    if len(alphas) != len(forms):
        raise ValueError("need one coefficient per linear form")
    if not forms:
        raise ValueError("need at least one form to fix the variable count")
    n = len(forms[0])
    acc: dict[tuple, Fraction] = {}
    for a, form in zip(alphas, forms):
        a = to_rational(a)
        for e, c in _power_of_form([to_rational(x) for x in form], d).items():
            acc[e] = acc.get(e, 0) + a * c
    return Poly(n, acc, degree=d)


def sum_of_powers(n: int, d: int) -> Poly:
    """``x_1**d + ... + x_n**d``."""
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = d
        terms[tuple(e)] = 1
    return Poly(n, terms, degree=d)
