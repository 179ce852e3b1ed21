"""Evaluation blackboxes with call accounting."""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Sequence

from . import kernels
from .exactla import Matrix, as_matrix
from .scalarpoly import Poly, to_rational


class _Counter:
    __slots__ = ("_lock", "_value")

    def __init__(self):
        self._lock = threading.Lock()
        self._value = 0

    def bump(self):
        with self._lock:
            self._value += 1

    @property
    def value(self):
        with self._lock:
            return self._value


class Oracle:
    """A homogeneous degree-``d`` polynomial in ``n`` variables seen only through evaluation.

    ``evaluator`` maps a length-``n`` sequence to a value and must be pure.
    Every call through :meth:`__call__` increments :attr:`calls` by exactly
    one, thread-safely.
    """

    def __init__(self, n: int, d: int, evaluator: Callable[[Sequence], object], name: str = ""):
        if n < 0 or d < 0:
            raise ValueError("variable count and degree must be nonnegative")
        self.n = n
        self.d = d
        self._evaluator = evaluator
        self._counter = _Counter()
        self.name = name

    @property
    def calls(self) -> int:
        return self._counter.value

    def __call__(self, point: Sequence):
        if len(point) != self.n:
            raise ValueError(f"point has length {len(point)}, expected {self.n}")
        self._counter.bump()
        return self._evaluator(point)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Oracle{label} n={self.n} d={self.d} calls={self.calls}>"


def _integer_terms(p: Poly):
    den = 1
    for c in p.terms.values():
        if c.denominator != 1:
            den = math.lcm(den, c.denominator)
    terms = []
    for exps, c in p.sorted_terms():
        mono = tuple((j, e) for j, e in enumerate(exps) if e)
        terms.append((int(c * den), mono))
    return terms, den


def from_poly(p: Poly, degree: int | None = None) -> Oracle:
    """Oracle evaluating the homogeneous polynomial ``p`` exactly.

    ``degree`` is needed only for the zero polynomial; otherwise it must agree
    with ``p``.  Rational points are cleared to a common denominator so the
    inner loop runs on integers.
    """
    d = p.homogeneous_degree()
    if p.is_zero():
        if degree is None:
            raise ValueError("the zero polynomial needs an explicit degree")
        d = degree
    elif d is None:
        raise ValueError("polynomial is not homogeneous")
    elif degree is not None and degree != d:
        raise ValueError(f"polynomial has degree {d}, not {degree}")
    terms, den = _integer_terms(p)

    def evaluate(point):
        if all(type(x) is int for x in point):
            return Fraction(kernels.hom_eval(terms, list(point), d), den)
        if all(isinstance(x, (int, Fraction)) for x in point):
            q = 1
            for x in point:
                if type(x) is not int and x.denominator != 1:
                    q = math.lcm(q, x.denominator)
            ip = [int(x * q) for x in point]
            return Fraction(kernels.hom_eval(terms, ip, d), den * q**d)
        # floating or complex input: generic arithmetic
        total = 0
        for c, mono in terms:
            v = c
            for j, e in mono:
                v = v * point[j] ** e
            total = total + v
        return total / den

    return Oracle(p.n, d, evaluate, name="poly")


def from_function(n: int, d: int, fn: Callable[[Sequence], object], name: str = "function") -> Oracle:
    return Oracle(n, d, fn, name=name)


def from_power_sum(alphas: Sequence, forms: Sequence[Sequence], d: int) -> Oracle:
    """Straight-line blackbox for ``sum_i alphas[i] * <forms[i], x> ** d``.

    Nothing is expanded, so evaluation costs ``O(r n)`` operations.
    """
    alphas = [to_rational(a) for a in alphas]
    forms_m = as_matrix(forms)
    if len(alphas) != forms_m.rows:
        raise ValueError("need one coefficient per linear form")

    def evaluate(point):
        vals = forms_m.apply(list(point))
        return sum((a * v**d for a, v in zip(alphas, vals)), Fraction(0))

    return Oracle(forms_m.cols, d, evaluate, name="power_sum")


def compose_linear(o: Oracle, r) -> Oracle:
    """``h(v) = o(R v)``, evaluated lazily point by point.

    ``R`` has ``o.n`` rows; its column count becomes ``h.n`` (square in the
    usual case, rectangular for restrictions).  Each call of ``h`` makes one
    call of ``o``, so ``o.calls`` keeps counting.
    """
    r = as_matrix(r)
    if r.rows != o.n:
        raise ValueError(f"matrix has {r.rows} rows, oracle has {o.n} variables")

    def evaluate(point):
        return o(r.apply(list(point)))

    return Oracle(r.cols, o.d, evaluate, name="composed")


def restrict_leading(o: Oracle, a: Matrix, t: int) -> Oracle:
    """``v -> o(A (v_1..v_t, 0, ..., 0))`` on ``t`` variables."""
    a = as_matrix(a)
    cols = list(range(t))
    return compose_linear(o, a.submatrix(list(range(a.rows)), cols))
