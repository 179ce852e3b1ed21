"""Pure-Python integer kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same results; ``waringeq.kernels`` picks one at import time.  All
inputs and outputs are Python ints (arbitrary precision) held in plain lists.
"""


def hom_eval(terms, point, degree):
    """Evaluate ``sum(c * prod(point[j] ** e for j, e in mono))`` over ``terms``.

    ``terms`` is a sequence of ``(coeff, ((var, exp), ...))`` pairs with only
    nonzero exponents listed, and ``degree`` bounds every exponent.
    """
    powers = []
    for x in point:
        row = [1]
        acc = 1
        for _ in range(degree):
            acc *= x
            row.append(acc)
        powers.append(row)
    total = 0
    for coeff, mono in terms:
        v = coeff
        for j, e in mono:
            v *= powers[j][e]
        total += v
    return total


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def gauss_jordan(m, n):
    """Fraction-free Gauss-Jordan elimination on the left ``n x n`` block.

    Returns ``(pivot, rows)`` where the left block of ``rows`` equals
    ``pivot * I`` and the same row operations have been applied to the
    remaining columns; ``pivot`` is ``det`` of the left block up to the sign
    of the row permutation, which is folded in so that ``pivot == det``.
    Returns ``(0, None)`` if the left block is singular.
    """
    a = [list(row) for row in m]
    width = len(a[0]) if a else 0
    prev = 1
    sign = 1
    for k in range(n):
        piv = k
        while piv < n and a[piv][k] == 0:
            piv += 1
        if piv == n:
            return 0, None
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        rk = a[k]
        p = rk[k]
        for i in range(n):
            if i == k:
                continue
            ri = a[i]
            f = ri[k]
            if f == 0:
                if p != prev:
                    for j in range(width):
                        ri[j] = ri[j] * p // prev
                continue
            for j in range(width):
                ri[j] = (p * ri[j] - f * rk[j]) // prev
        prev = p
    if sign < 0:
        a = [[-x for x in row] for row in a]
        prev = -prev
    return prev, a


def charpoly(a):
    """Characteristic polynomial of an integer matrix by Faddeev-LeVerrier.

    Returns integer coefficients, lowest degree first, monic of degree n.
    """
    n = len(a)
    c = [0] * (n + 1)
    c[n] = 1
    am = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        m = [row[:] for row in am]
        ck = c[n - k + 1]
        for i in range(n):
            m[i][i] += ck
        am = matmul(a, m)
        tr = 0
        for i in range(n):
            tr += am[i][i]
        c[n - k] = -tr // k
    return c
