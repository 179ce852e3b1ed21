# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of ``_pykernels``; same signatures, same results."""


def hom_eval(terms, point, Py_ssize_t degree):
    cdef Py_ssize_t j, e, npt = len(point)
    cdef list powers = []
    cdef list row
    cdef object acc, x, total, v, coeff
    cdef tuple mono, pair
    for j in range(npt):
        x = point[j]
        row = [1]
        acc = 1
        for e in range(degree):
            acc = acc * x
            row.append(acc)
        powers.append(row)
    total = 0
    for coeff, mono in terms:
        v = coeff
        for pair in mono:
            v = v * (<list>powers[<Py_ssize_t>pair[0]])[<Py_ssize_t>pair[1]]
        total = total + v
    return total


def matmul(a, b):
    cdef Py_ssize_t n = len(a), m = len(b), p = len(b[0]) if len(b) else 0
    cdef Py_ssize_t i, j, k
    cdef list out = [], ra, orow, bl = [list(r) for r in b]
    cdef object s, x
    for i in range(n):
        ra = list(a[i])
        orow = []
        for j in range(p):
            s = 0
            for k in range(m):
                x = ra[k]
                if x:
                    s = s + x * (<list>bl[k])[j]
            orow.append(s)
        out.append(orow)
    return out


def matvec(a, v):
    cdef Py_ssize_t n = len(a), m = len(v), i, k
    cdef list out = [], ra, vl = list(v)
    cdef object s
    for i in range(n):
        ra = list(a[i])
        s = 0
        for k in range(m):
            s = s + ra[k] * vl[k]
        out.append(s)
    return out


def gauss_jordan(m, Py_ssize_t n):
    cdef list a = [list(row) for row in m]
    cdef Py_ssize_t width = len(a[0]) if a else 0
    cdef Py_ssize_t k, i, j, piv
    cdef int sign = 1
    cdef object prev = 1, p, f
    cdef list rk, ri
    for k in range(n):
        piv = k
        while piv < n and (<list>a[piv])[k] == 0:
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
    cdef Py_ssize_t n = len(a), k, i
    cdef list c = [0] * (n + 1)
    cdef list am = [[0] * n for _ in range(n)]
    cdef list mm
    cdef object tr, ck
    c[n] = 1
    for k in range(1, n + 1):
        mm = [list(row) for row in am]
        ck = c[n - k + 1]
        for i in range(n):
            (<list>mm[i])[i] = (<list>mm[i])[i] + ck
        am = matmul(a, mm)
        tr = 0
        for i in range(n):
            tr = tr + (<list>am[i])[i]
        c[n - k] = -tr // k
    return c
