"""Randomized equivalence test to a linear combination of d-th powers.

Pipeline for one trial on a blackbox ``f`` with ``n`` variables and degree
``d >= 3``:

1. draw ``R`` with entries from ``S`` and set ``h(x) = f(R x)``;
2. read the slices ``T1, T2, T3`` of ``h`` (all fixed indices equal);
3. reject if ``T1`` is singular;
4. reject unless ``T1^-1 T2`` and ``T1^-1 T3`` commute;
5. reject unless ``T1^-1 T2`` is diagonalizable (over C, or over R);
6. accept.

For ``n == 2`` the third slice is taken from a three-variable lift
``h(x) = f(R x_{1,2} + c x_3)`` with a random column ``c``; reusing ``T1`` as
``T3`` there would make step 4 vacuous and accept generic binary forms of
degree >= 4.  For ``n == 1`` both matrix checks are vacuous.

:func:`decide_full_slices` is the deterministic reference built on the full
slice family of a dense polynomial.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional

from .exactla import FieldMode, Matrix, SingularError, commutes, invert, is_diagonalizable
from .instrument import bit_probe
from .oracle import Oracle, compose_linear, from_poly
from .randcheck import (
    CHANGE_OF_VARIABLES,
    LIFT_COLUMN,
    ZERO_PROBE,
    SampleConfig,
    random_matrix,
)
from .scalarpoly import Poly
from .slices import SliceTriple, all_slices_of_degree, slice_triple


class Stage(str, enum.Enum):
    SINGULAR_T1 = "singular_t1"
    NONCOMMUTING = "noncommuting"
    NONDIAGONALIZABLE = "nondiagonalizable"
    ACCEPTED = "accepted"


_STAGE_ORDER = [Stage.SINGULAR_T1, Stage.NONCOMMUTING, Stage.NONDIAGONALIZABLE, Stage.ACCEPTED]
ZERO_NOTE = "input vanished at every probe point; treated as the zero polynomial"


@dataclass
class DecisionReport:
    verdict: str
    stage: Stage
    mode: FieldMode
    n: int
    d: int
    seed: Optional[int] = None
    set_size: Optional[int] = None
    trials: int = 1
    error_bound_positive: float = 0.0
    error_bound_negative: float = 0.0
    oracle_calls: int = 0
    trial_stages: list = field(default_factory=list)
    max_bits: int = 0
    note: str = ""

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["stage"] = self.stage.value
        out["mode"] = self.mode.value
        out["trial_stages"] = [Stage(s).value for s in self.trial_stages]
        return out


def error_bounds(n: int, d: int, set_size: int) -> tuple[float, float]:
    """Single-trial bounds ``(n(d-1)/|S|, 2(d-2)/|S|)``, clipped to ``[0, 1]``."""
    pos = min(1.0, n * (d - 1) / set_size)
    neg = min(1.0, 2 * (d - 2) / set_size)
    return pos, neg


@dataclass
class TrialState:
    """Everything one trial computed; reconstruction reuses ``r`` and ``m``."""

    stage: Stage
    r: Matrix
    triple: SliceTriple
    m: Optional[Matrix] = None


def _as_oracle(o) -> Oracle:
    return from_poly(o) if isinstance(o, Poly) else o


def run_trial(o: Oracle, mode: FieldMode, cfg: SampleConfig, trial: int = 0) -> TrialState:
    n = o.n
    r = random_matrix(n, cfg, cfg.stream(CHANGE_OF_VARIABLES, trial))
    if n == 2:
        lift = cfg.draw(cfg.stream(LIFT_COLUMN, trial), 2)
        b = Matrix.from_columns([r.column(0), r.column(1), lift])
        triple = slice_triple(compose_linear(o, b), block=2)
    else:
        triple = slice_triple(compose_linear(o, r))
    try:
        t1inv = invert(triple.t1)
    except SingularError:
        return TrialState(Stage.SINGULAR_T1, r, triple)
    m = t1inv @ triple.t2
    if not commutes(m, t1inv @ triple.t3):
        return TrialState(Stage.NONCOMMUTING, r, triple, m)
    if not is_diagonalizable(m, mode):
        return TrialState(Stage.NONDIAGONALIZABLE, r, triple, m)
    return TrialState(Stage.ACCEPTED, r, triple, m)


def _majority(stages: list[Stage]) -> Stage:
    accepted = sum(s is Stage.ACCEPTED for s in stages)
    if 2 * accepted > len(stages):
        return Stage.ACCEPTED
    rejects = [s for s in stages if s is not Stage.ACCEPTED]
    # most frequent rejecting stage, earlier pipeline stage on ties
    return max(_STAGE_ORDER[:3], key=lambda s: (rejects.count(s), -_STAGE_ORDER.index(s)))


def probe_zero(o: Oracle, cfg: SampleConfig, points: int = 3) -> bool:
    """True when ``o`` vanishes at ``points`` random points of ``S^n``."""
    rng = cfg.stream(ZERO_PROBE, 0)
    return all(o(cfg.draw(rng, o.n)) == 0 for _ in range(points))


def decide_equiv(o, mode: FieldMode | str = FieldMode.COMPLEX, cfg: SampleConfig | None = None) -> DecisionReport:
    """Randomized test that ``o`` is ``sum alpha_i l_i^d`` with ``n`` independent forms.

    Accepts a :class:`Poly` as a convenience.  With ``cfg.trials > 1`` the
    trials use independent streams and the majority verdict is returned; the
    error bounds in the report are always the single-trial ones.
    """
    o = _as_oracle(o)
    mode = FieldMode(mode)
    cfg = cfg or SampleConfig()
    if o.d < 3:
        raise ValueError(f"equivalence test needs degree >= 3, got {o.d}")
    if o.n < 1:
        raise ValueError("equivalence test needs at least one variable")
    start = o.calls
    stages = []
    with bit_probe() as probe:
        for k in range(cfg.trials):
            stages.append(run_trial(o, mode, cfg, k).stage)
    stage = _majority(stages)
    note = ""
    if stage is Stage.SINGULAR_T1 and probe_zero(o, cfg):
        note = ZERO_NOTE
    pos, neg = error_bounds(o.n, o.d, cfg.set_size)
    return DecisionReport(
        verdict="accept" if stage is Stage.ACCEPTED else "reject",
        stage=stage,
        mode=mode,
        n=o.n,
        d=o.d,
        seed=cfg.seed,
        set_size=cfg.set_size,
        trials=cfg.trials,
        error_bound_positive=pos,
        error_bound_negative=neg,
        oracle_calls=o.calls - start,
        trial_stages=stages,
        max_bits=probe.max_bits,
        note=note,
    )


# ---------------------------------------------------------------------------
# deterministic reference on the full slice family


def _symbolic_det(mat: list[list[Poly]], n: int, nvars: int) -> Poly:
    """Cofactor expansion along rows, memoized on the remaining column set."""

    @lru_cache(maxsize=None)
    def minor(row: int, cols: tuple[int, ...]) -> Poly:
        if row == n:
            return Poly.constant(1, nvars)
        acc = Poly(nvars)
        for pos, c in enumerate(cols):
            entry = mat[row][c]
            if entry.is_zero():
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        return acc

    return minor(0, tuple(range(n)))


def generic_slice_matrix(family) -> list[list[Poly]]:
    """``sum over ordered tuples J of prod(lambda_j) S_J`` as a matrix of polynomials in lambda."""
    n = family.n
    out = [[Poly(n) for _ in range(n)] for _ in range(n)]
    for key, s in family:
        if s.is_zero():
            continue
        exps = [0] * n
        for j in key:
            exps[j] += 1
        mono = Poly(n, {tuple(exps): family.ordered_weight(key)})
        for a in range(n):
            for b in range(n):
                v = s[a, b]
                if v:
                    out[a][b] = out[a][b] + mono * v
    return out


def weak_singularity_witness(family) -> Optional[tuple[Fraction, ...]]:
    """A point ``lambda`` with nonzero generic determinant, or None if it vanishes identically."""
    n = family.n
    det_poly = _symbolic_det(generic_slice_matrix(family), n, n)
    if det_poly.is_zero():
        return None
    # a nonzero polynomial of degree D cannot vanish on all of {0..D}^n
    bound = max(det_poly.total_degree(), 0)
    for pt in sorted(product(range(bound + 1), repeat=n), key=lambda p: (sum(p), p)):
        if det_poly.eval(list(pt)) != 0:
            return tuple(Fraction(x) for x in pt)
    raise AssertionError("nonzero determinant vanished on a full grid")


def evaluate_generic(family, lam) -> Matrix:
    n = family.n
    acc = Matrix.zeros(n)
    for key, s in family:
        w = Fraction(family.ordered_weight(key))
        for j in key:
            w *= lam[j]
        if w:
            acc = acc + s * w
    return acc


def decide_full_slices(p: Poly, mode: FieldMode | str = FieldMode.COMPLEX, degree: int | None = None,
                       max_n: int = 4, max_d: int = 6) -> DecisionReport:
    """Deterministic decision from all slices of a dense polynomial.

    Accepts iff the slice span is not weakly singular, ``A^-1 S`` commute
    pairwise for an invertible ``A`` in the span, and every ``A^-1 S`` is
    diagonalizable in ``mode``.
    """
    mode = FieldMode(mode)
    d = degree if degree is not None else p.homogeneous_degree()
    if d is None:
        raise ValueError("polynomial is not homogeneous (pass degree for the zero polynomial)")
    if d < 3:
        raise ValueError(f"equivalence test needs degree >= 3, got {d}")
    family = all_slices_of_degree(p, d, max_n=max_n, max_d=max_d)

    def report(stage: Stage) -> DecisionReport:
        return DecisionReport(
            verdict="accept" if stage is Stage.ACCEPTED else "reject",
            stage=stage, mode=mode, n=p.n, d=d, trial_stages=[stage],
            note="" if not p.is_zero() else ZERO_NOTE,
        )

    lam = weak_singularity_witness(family)
    if lam is None:
        return report(Stage.SINGULAR_T1)
    ainv = invert(evaluate_generic(family, lam))
    mats = [ainv @ s for _, s in family]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if not commutes(mats[i], mats[j]):
                return report(Stage.NONCOMMUTING)
    if not all(is_diagonalizable(m, mode) for m in mats):
        return report(Stage.NONDIAGONALIZABLE)
    return report(Stage.ACCEPTED)
