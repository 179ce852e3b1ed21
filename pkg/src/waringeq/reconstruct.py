"""Numeric recovery of the linear forms after an exact accept.

With ``h(x) = f(R x)`` and ``f = sum alpha_i <l_i, x>^d``, the accepted matrix
``M = T1^-1 T2`` equals ``(L R)^-1 D (L R)`` for ``L`` the matrix of forms and
``D`` diagonal.  Diagonalizing ``M = P D P^-1`` numerically gives
``L = P^-1 R^-1`` up to row scaling and order, and each coefficient is ``f``
at the matching column of ``R P``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .decide import DecisionReport, Stage, _as_oracle, decide_equiv, run_trial
from .exactla import FieldMode, Matrix, invert
from .oracle import Oracle
from .randcheck import VERIFICATION, SampleConfig

GAP_TOL = 1e-8
RES_TOL = 1e-6
RETRY_MAX = 3
REAL_TOL = 1e-8
# coordinates below this fraction of the largest are treated as zero when normalizing
ZERO_TOL = 1e-8
VERIFY_POINTS = 20


class DegenerateSpectrum(ArithmeticError):
    """Two eigenvalues are closer than the relative gap tolerance."""


class ReconstructionFailed(RuntimeError):
    pass


def eigendecompose(m, gap_tol: float = GAP_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvectors (columns of ``P``) and eigenvalues of ``m``.

    Raises :class:`DegenerateSpectrum` when the smallest pairwise eigenvalue
    gap is below ``gap_tol`` times the spectral scale, and
    ``LinAlgError`` if the entries are not finite or the solver fails.
    """
    a = m.to_numpy(float) if isinstance(m, Matrix) else np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("eigendecompose needs a square matrix")
    if not np.all(np.isfinite(a)):
        raise np.linalg.LinAlgError("matrix has non-finite entries")
    w, p = np.linalg.eig(a)
    if not (np.all(np.isfinite(w)) and np.all(np.isfinite(p))):
        raise np.linalg.LinAlgError("eigensolver did not converge")
    k = len(w)
    if k > 1:
        scale = max(1.0, float(np.max(np.abs(w))))
        gaps = np.abs(w[:, None] - w[None, :])
        np.fill_diagonal(gaps, np.inf)
        if float(gaps.min()) < gap_tol * scale:
            raise DegenerateSpectrum(f"eigenvalue gap {float(gaps.min()):.3g} below tolerance")
    return p, w


def _normalize(alpha: complex, form: np.ndarray, d: int) -> tuple[complex, np.ndarray]:
    """Scale so the first non-negligible coordinate is 1; ``alpha`` absorbs ``c**d``."""
    mags = np.abs(form)
    j = int(np.argmax(mags > ZERO_TOL * mags.max()))
    c = form[j]
    return complex(alpha * c**d), form / c


def _sort_key(term):
    form = term[1]
    return tuple(x for z in form for x in (round(z.real, 8), round(z.imag, 8)))


@dataclass
class Decomposition:
    terms: list
    residual: float
    d: int
    mode: FieldMode
    real: bool
    seed: int
    set_size: int
    attempts: int
    decision: DecisionReport = field(repr=False)

    @property
    def verdict(self) -> str:
        return "accept"

    @property
    def accepted(self) -> bool:
        return True

    def evaluate(self, point) -> complex:
        v = np.asarray(point, dtype=complex)
        return complex(sum(a * complex(np.dot(f, v)) ** self.d for a, f in self.terms))

    def to_dict(self) -> dict:
        return {
            "terms": [
                {
                    "alpha": [float(complex(a).real), float(complex(a).imag)],
                    "form": [[float(z.real), float(z.imag)] for z in f],
                }
                for a, f in self.terms
            ],
            "residual": self.residual,
            "real": self.real,
            "mode": self.mode.value,
            "seed": self.seed,
            "set_size": self.set_size,
            "attempts": self.attempts,
            "decision": self.decision.to_dict(),
        }


def verification_points(n: int, cfg: SampleConfig, attempt: int, count: int = VERIFY_POINTS) -> list[list[Fraction]]:
    """Random rationals in ``[-1, 1]`` built from draws of ``S``."""
    rng = cfg.stream(VERIFICATION, attempt)
    s = cfg.set_size
    return [[Fraction(2 * k - s - 1, s) for k in cfg.draw(rng, n)] for _ in range(count)]


def residual(o: Oracle, terms, d: int, points) -> float:
    """``max |f - g| / max(|f|, sum |alpha| |<l, v>|^d)`` over ``points``."""
    num = 0.0
    den = 0.0
    for pt in points:
        exact = complex(float(o(pt)))
        v = np.array([float(x) for x in pt])
        vals = [(a, complex(np.dot(f, v))) for a, f in terms]
        approx = sum(a * lv**d for a, lv in vals)
        num = max(num, abs(exact - approx))
        den = max(den, abs(exact), sum(abs(a) * abs(lv) ** d for a, lv in vals))
    return num / den if den else num


def _terms_from_trial(o: Oracle, r: Matrix, m: Matrix, mode: FieldMode):
    p, _ = eigendecompose(m)
    n, d = o.n, o.d
    r_f = r.to_numpy(float)
    rinv_f = invert(r).to_numpy(float)
    forms = np.linalg.solve(p, rinv_f) if n else np.zeros((0, 0))
    rp = r_f @ p
    terms = []
    for i in range(n):
        col = [complex(z) for z in rp[:, i]]
        alpha = complex(o(col))
        terms.append(_normalize(alpha, np.asarray(forms[i], dtype=complex), d))
    terms.sort(key=_sort_key)
    is_real = all(
        abs(a.imag) <= REAL_TOL * max(1.0, abs(a)) and np.all(np.abs(f.imag) <= REAL_TOL)
        for a, f in terms
    )
    if is_real and mode is FieldMode.REAL:
        terms = [(complex(a.real), f.real.astype(complex)) for a, f in terms]
    return terms, is_real


def reconstruct(o, mode: FieldMode | str = FieldMode.COMPLEX, cfg: SampleConfig | None = None,
                retry_max: int = RETRY_MAX, res_tol: float = RES_TOL):
    """Decomposition of an accepted blackbox, or the reject report.

    Each attempt draws a fresh ``R``.  A degenerate spectrum or a residual
    above ``res_tol`` triggers a retry; after ``retry_max`` retries
    :class:`ReconstructionFailed` is raised.
    """
    o = _as_oracle(o)
    mode = FieldMode(mode)
    cfg = cfg or SampleConfig()
    if o.d < 3:
        raise ValueError(f"reconstruction needs degree >= 3, got {o.d}")
    decision = decide_equiv(o, mode, cfg)
    if not decision.accepted:
        return decision
    last_error: Optional[str] = None
    # attempt 0 replays the first decision trial; retries use trial indices
    # past the decision's own, so each draws a fresh and reproducible R
    for attempt in range(retry_max + 1):
        state = run_trial(o, mode, cfg, 0 if attempt == 0 else cfg.trials + attempt - 1)
        if state.stage is not Stage.ACCEPTED:
            last_error = f"attempt {attempt}: decision stage {state.stage.value}"
            continue
        try:
            terms, is_real = _terms_from_trial(o, state.r, state.m, mode)
        except (DegenerateSpectrum, np.linalg.LinAlgError) as exc:
            last_error = f"attempt {attempt}: {exc}"
            continue
        res = residual(o, terms, o.d, verification_points(o.n, cfg, attempt))
        if res <= res_tol:
            return Decomposition(terms, res, o.d, mode, is_real, cfg.seed, cfg.set_size, attempt + 1, decision)
        last_error = f"attempt {attempt}: residual {res:.3g} above {res_tol:g}"
    raise ReconstructionFailed(last_error or "no attempt succeeded")
