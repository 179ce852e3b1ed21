"""End-to-end acceptance checks, one test per criterion.

Each test prints a PASS/FAIL line; the lines are repeated in the terminal
summary.  Thresholds are the stated ones and are not relaxed.
"""

import itertools
import math
import random
import time
from fractions import Fraction

import numpy as np

from waringeq.decide import Stage, decide_equiv, decide_full_slices, error_bounds, run_trial
from waringeq.exactla import (
    FieldMode,
    Matrix,
    charpoly,
    det,
    invert,
    is_diagonalizable,
    polyval_matrix,
    rank,
    squarefree_part,
    sturm_count,
)
from waringeq.minvars import decide_waring
from waringeq.oracle import from_poly, from_power_sum
from waringeq.parsing import parse
from waringeq.randcheck import SampleConfig, exact_family_commutes, family_commutes_randomized
from waringeq.reconstruct import Decomposition, reconstruct
from waringeq.scalarpoly import Poly, UniPoly, power_sum, unigcd
from conftest import random_invertible

C, R = FieldMode.COMPLEX, FieldMode.REAL


def _random_form(rng, n, d, density=0.7, lo=-5, hi=5):
    terms = {}
    for e in itertools.product(range(d + 1), repeat=n):
        if sum(e) == d and rng.random() < density:
            c = rng.randint(lo, hi)
            if c:
                terms[e] = c
    return Poly(n, terms)


# 1 --------------------------------------------------------------------------


def test_criterion_1_two_cubes_example(criterion):
    start = time.perf_counter()
    p = parse("2*x1^3 + 12*x1*x2^2")
    verdicts = {m.value: decide_equiv(p, m).verdict for m in (R, C)}
    rec = reconstruct(p, R)
    elapsed = time.perf_counter() - start
    ok = verdicts == {"real": "accept", "complex": "accept"} and isinstance(rec, Decomposition)
    if ok:
        s2 = math.sqrt(2)
        ratios = sorted(float((f[1] / f[0]).real) for _, f in rec.terms)
        ok = (
            rec.residual < 1e-9
            and np.allclose(ratios, [-s2, s2], atol=1e-9)
            and all(abs(f[0]) > 0 for _, f in rec.terms)
            and elapsed < 1.0
        )
        detail = f"verdicts {verdicts}, ratios {ratios}, residual {rec.residual:.2e}, {elapsed:.3f}s"
    else:
        detail = f"verdicts {verdicts}"
    criterion(1, ok, detail)


# 2 --------------------------------------------------------------------------


def test_criterion_2_positive_rate(criterion):
    rng = random.Random(2024)
    start = time.perf_counter()
    accepted = 0
    total = 500
    for k in range(total):
        n, d = rng.randint(2, 6), rng.randint(3, 6)
        a = random_invertible(rng, n)
        o = from_power_sum([1] * n, a, d)
        mode = R if k % 2 else C
        accepted += decide_equiv(o, mode, SampleConfig(set_size=2**31, seed=k)).accepted
    elapsed = time.perf_counter() - start
    rate = accepted / total
    criterion(2, rate >= 0.999 and elapsed < 60, f"accept rate {rate:.4f} over {total}, {elapsed:.1f}s")


# 3 --------------------------------------------------------------------------


def _negative_corpus(rng):
    out = []
    # non-diagonalizable: a form times a (d-1)-th power plus independent powers
    while len(out) < 30:
        n, d = rng.randint(2, 4), rng.randint(3, 5)
        x = [Poly.variable(i, n) for i in range(n)]
        p = x[0] ** (d - 1) * x[1]
        for i in range(2, n):
            p = p + x[i] ** d * rng.choice([-2, -1, 1, 3])
        out.append(("nondiagonalizable", p.substitute_linear(random_invertible(rng, n, -2, 2))))
    # weakly singular: fewer essential variables than the ambient count
    while len(out) < 60:
        n, d = rng.randint(2, 4), rng.randint(3, 5)
        t = rng.randint(1, n - 1)
        p = _random_form(rng, t, d) if rng.random() < 0.5 else power_sum([rng.choice([1, -3]) for _ in range(t)], Matrix.identity(t).tolist(), d)
        if p.is_zero():
            continue
        padded = Poly(n, {e + (0,) * (n - t): c for e, c in p.items()})
        out.append(("weakly singular", padded.substitute_linear(random_invertible(rng, n, -2, 2))))
    # generic forms: slices fail to commute.  Binary cubics are skipped since a
    # generic one is a sum of two cubes over C.
    while len(out) < 100:
        n, d = rng.randint(2, 4), rng.randint(3, 5)
        if (n, d) in ((2, 3), (4, 5)):
            continue
        p = _random_form(rng, n, d)
        if not p.is_zero():
            out.append(("generic", p))
    return out


def test_criterion_3_negative_rate(criterion):
    rng = random.Random(303)
    corpus = _negative_corpus(rng)
    start = time.perf_counter()
    confirmed = all(not decide_full_slices(p, C).accepted for _, p in corpus)
    trials = rejected = 0
    by_stage = {}
    for k, (label, p) in enumerate(corpus):
        o = from_poly(p)
        for seed in range(10):
            rep = decide_equiv(o, C, SampleConfig(seed=1000 * k + seed))
            trials += 1
            rejected += not rep.accepted
            by_stage[rep.stage.value] = by_stage.get(rep.stage.value, 0) + 1
    elapsed = time.perf_counter() - start
    rate = rejected / trials
    criterion(
        3,
        confirmed and rate >= 0.999 and elapsed < 60,
        f"reference confirms all {len(corpus)} negatives: {confirmed}; reject rate {rate:.4f} "
        f"over {trials} trials {by_stage}, {elapsed:.1f}s",
    )


# 4 --------------------------------------------------------------------------


def _agreement_corpus(rng):
    out = []
    for k in range(200):
        n, d = rng.randint(1, 3), rng.randint(3, 5)
        if k % 2 == 0:
            p = power_sum([rng.choice([-2, -1, 1, 2]) for _ in range(n)], random_invertible(rng, n, -3, 3), d)
        else:
            p = Poly(n)
            while p.is_zero():
                p = _random_form(rng, n, d, density=rng.choice([0.3, 0.7]))
        out.append(p)
    return out


def test_criterion_4_agreement_with_full_slices(criterion):
    rng = random.Random(404)
    corpus = _agreement_corpus(rng)
    agree = 0
    bad_side = []
    over_budget = []
    for k, p in enumerate(corpus):
        mode = R if k % 3 == 0 else C
        d = p.homogeneous_degree()
        o = from_poly(p)
        cfg = SampleConfig(seed=k)
        before = o.calls
        run_trial(o, mode, cfg, 0)
        if o.calls - before > 10 * p.n**2 * d:
            over_budget.append(k)
        got = decide_equiv(o, mode, cfg)
        want = decide_full_slices(p, mode)
        if got.accepted == want.accepted:
            agree += 1
            continue
        pos, neg = error_bounds(p.n, d, cfg.set_size)
        # a false reject needs a positive-side bound, a false accept a negative-side one
        if (want.accepted and pos <= 0) or (not want.accepted and neg <= 0):
            bad_side.append(k)
    rate = agree / len(corpus)
    criterion(
        4,
        rate >= 0.99 and not bad_side and not over_budget,
        f"agreement {rate:.3f}, wrong-side disagreements {bad_side}, over call budget {over_budget}",
    )


# 5 --------------------------------------------------------------------------


def _non_commuting_families(rng):
    out = []
    while len(out) < 20:
        size, n = 2 + len(out) % 9, rng.randint(2, 6)
        fam = [Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]) for _ in range(size)]
        if not exact_family_commutes(fam):
            out.append(fam)
    # one family differing from commuting only in one rank-one direction
    out[0] = [Matrix.diag([1, 2]), Matrix([[0, 1], [0, 0]])]
    return out


def _commuting_families(rng):
    out = []
    for k in range(20):
        n = rng.randint(2, 6)
        base = Matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        size = 2 + k % 9
        out.append([polyval_matrix(UniPoly([rng.randint(-2, 2) for _ in range(rng.randint(1, n))]), base) for _ in range(size)])
    return out


def test_criterion_5_commutativity_test(criterion):
    rng = random.Random(505)
    cfg = SampleConfig(set_size=100, seed=5)
    trials = 10_000
    p = 2 / 100
    limit = p + 3 * math.sqrt(p * (1 - p) / trials)
    worst = 0.0
    for idx, fam in enumerate(_non_commuting_families(rng)):
        stream = cfg.stream(2, idx)
        accepts = sum(family_commutes_randomized(fam, cfg, stream) for _ in range(trials))
        worst = max(worst, accepts / trials)
    false_rejects = 0
    for idx, fam in enumerate(_commuting_families(rng)):
        assert exact_family_commutes(fam)
        stream = cfg.stream(2, 100 + idx)
        false_rejects += sum(not family_commutes_randomized(fam, cfg, stream) for _ in range(500))
    criterion(
        5,
        worst <= limit and false_rejects == 0,
        f"worst false-accept rate {worst:.4f} (limit {limit:.4f}), false rejects on commuting families {false_rejects}",
    )


# 6 --------------------------------------------------------------------------


def test_criterion_6_variable_minimization(criterion):
    rng = random.Random(606)
    start = time.perf_counter()
    good = 0
    total = 100
    for k in range(total):
        r, d = rng.randint(1, 4), rng.randint(3, 5)
        n = r + 3
        while True:
            forms = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(r)]
            if rank(Matrix(forms)) == r:
                break
        alphas = [rng.choice([-3, -1, 1, 2, 7]) for _ in range(r)]
        rep = decide_waring(from_power_sum(alphas, forms, d), R if k % 2 else C, SampleConfig(seed=k))
        good += rep.essential_count == r and rep.accepted
    elapsed = time.perf_counter() - start
    rate = good / total
    criterion(6, rate >= 0.99 and elapsed < 60, f"t = r and accepted in {rate:.2f} of runs, {elapsed:.1f}s")


# 7 --------------------------------------------------------------------------


def test_criterion_7_exact_linear_algebra(criterion):
    from test_exactla import _bisection_count, _labeled_corpus, from_roots

    rng = random.Random(707)
    failures = []
    for _ in range(200):
        n = rng.randint(1, 6)
        m = Matrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)])
        if not polyval_matrix(charpoly(m), m).is_zero():
            failures.append("cayley-hamilton")
        if det(m) != 0 and invert(m) @ m != Matrix.identity(n):
            failures.append("inverse")
        sf = squarefree_part(charpoly(m))
        if unigcd(sf, sf.derivative()) != UniPoly([1]):
            failures.append("squarefree")
    corpus = _labeled_corpus()
    for m, over_c, over_r, label in corpus:
        if is_diagonalizable(m, C) is not over_c or is_diagonalizable(m, R) is not over_r:
            failures.append(f"diagonalizable {label}")
    for _ in range(30):
        roots = sorted(set(Fraction(rng.randint(-20, 20), rng.choice([1, 2, 3])) for _ in range(rng.randint(1, 5))))
        p = from_roots(*roots) * UniPoly([rng.randint(1, 9), 0, 1])
        if not sturm_count(p) == len(roots) == _bisection_count(p, Fraction(-21) - Fraction(1, 7), Fraction(21), Fraction(1, 12)):
            failures.append("sturm")
    criterion(7, not failures and len(corpus) >= 30, f"{len(corpus)} labeled matrices, failures {failures}")


# 8 --------------------------------------------------------------------------


def test_criterion_8_bit_growth(criterion):
    rng = random.Random(808)
    n, d = 6, 8
    worst_bits, worst_time, verdicts = 0, 0.0, []
    for k in range(5):
        forms = [[rng.getrandbits(16) - (1 << 15) for _ in range(n)] for _ in range(n)]
        if det(Matrix(forms)) == 0:
            continue
        alphas = [rng.getrandbits(16) | 1 for _ in range(n)]
        start = time.perf_counter()
        rep = decide_equiv(from_power_sum(alphas, forms, d), R, SampleConfig(seed=k))
        worst_time = max(worst_time, time.perf_counter() - start)
        worst_bits = max(worst_bits, rep.max_bits)
        verdicts.append(rep.verdict)
    ok = worst_time < 10 and worst_bits < 10**6 and set(verdicts) == {"accept"}
    criterion(8, ok, f"largest intermediate {worst_bits} bits, slowest run {worst_time:.2f}s, verdicts {verdicts}")
