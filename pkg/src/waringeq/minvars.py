"""Essential-variable count and the decomposition test on the reduced form.

The number of essential variables of ``f`` is ``n - dim`` of the space of
directions along which ``f`` is constant.  That space is the kernel of the
matrix of first partials evaluated at ``n`` random points (exact with high
probability).  Completing a kernel basis to an invertible ``A`` with the
kernel vectors last makes ``f(A x)`` depend on ``x_1..x_t`` only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .decide import DecisionReport, Stage, _as_oracle, decide_equiv
from .exactla import FieldMode, Matrix, complete_basis, kernel_basis
from .interp import partial_eval
from .oracle import Oracle, restrict_leading
from .randcheck import DERIVATIVE_POINTS, SampleConfig


def derivative_matrix(o: Oracle, alphas: Sequence[Sequence]) -> Matrix:
    """``M[i][j] = d o / d x_j`` at ``alphas[i]``."""
    if len(alphas) != o.n:
        raise ValueError(f"need {o.n} points, got {len(alphas)}")
    return Matrix([[partial_eval(o, j, list(a)) for j in range(o.n)] for a in alphas])


def essential_count_and_basis(o: Oracle, cfg: SampleConfig | None = None, trial: int = 0) -> tuple[int, Matrix]:
    """``(t, A)`` with ``o(A x)`` depending only on the first ``t`` coordinates (w.h.p.)."""
    o = _as_oracle(o)
    cfg = cfg or SampleConfig()
    rng = cfg.stream(DERIVATIVE_POINTS, trial)
    alphas = [cfg.draw(rng, o.n) for _ in range(o.n)]
    kernel = kernel_basis(derivative_matrix(o, alphas))
    return o.n - len(kernel), complete_basis(kernel, o.n)


@dataclass
class MinvarsReport:
    essential_count: int
    change_matrix: Matrix
    inner: DecisionReport
    error_bound_rank: float

    @property
    def verdict(self) -> str:
        return self.inner.verdict

    @property
    def accepted(self) -> bool:
        return self.inner.accepted

    def to_dict(self) -> dict:
        return {
            "essential_count": self.essential_count,
            "change_matrix": [[str(x) for x in row] for row in self.change_matrix.tolist()],
            "error_bound_rank": self.error_bound_rank,
            "inner": self.inner.to_dict(),
        }


def decide_waring(o, mode: FieldMode | str = FieldMode.COMPLEX, cfg: SampleConfig | None = None) -> MinvarsReport:
    """Is ``o`` a combination of at most ``n`` d-th powers of independent linear forms?

    Reduces to the essential variables and runs :func:`decide_equiv` there.
    ``t == 0`` is the zero polynomial and is accepted as the empty sum.
    """
    o = _as_oracle(o)
    mode = FieldMode(mode)
    cfg = cfg or SampleConfig()
    if o.d < 3:
        raise ValueError(f"decomposition test needs degree >= 3, got {o.d}")
    start = o.calls
    t, a = essential_count_and_basis(o, cfg)
    bound = min(1.0, t * (o.d - 1) / cfg.set_size)
    if t == 0:
        inner = DecisionReport(
            verdict="accept", stage=Stage.ACCEPTED, mode=mode, n=0, d=o.d,
            seed=cfg.seed, set_size=cfg.set_size, trials=cfg.trials,
            oracle_calls=o.calls - start, trial_stages=[Stage.ACCEPTED],
            note="no essential variables: empty decomposition",
        )
        return MinvarsReport(0, a, inner, bound)
    inner = decide_equiv(restrict_leading(o, a, t), mode, cfg)
    return MinvarsReport(t, a, inner, bound)
