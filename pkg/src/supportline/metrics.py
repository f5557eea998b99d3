"""Per-replicate loss and error metrics.

Everything here consumes a :class:`LabeledOutcome`: the true hypothesis
labels, the p-values, the rejection produced by some procedure, and
optionally the generating model (needed for lfdr-aware metrics).  V always
counts nulls inside the realized rejection set, never an estimate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .models import TwoGroupsSpec, oracle_threshold, true_lfdr
from .procedures import RejectionResult, fixed_threshold_reject
from .sample_core import PValueSample

__all__ = [
    "LabeledOutcome",
    "weighted_loss",
    "fdp",
    "last_rejection_null",
    "realized_max_lfdr",
    "regret_vs_oracle",
]


@dataclass(frozen=True)
class LabeledOutcome:
    """Ground truth plus a rejection decision for one replicate.

    ``hypotheses[i]`` is 0 for a true null and 1 otherwise, aligned with
    ``pvalues.values``.  ``model`` enables the lfdr-aware metrics.
    """

    hypotheses: np.ndarray
    pvalues: PValueSample
    rejection: RejectionResult
    model: TwoGroupsSpec | None = None

    def __post_init__(self):
        hyp = np.asarray(self.hypotheses, dtype=np.int8)
        if hyp.shape != (self.pvalues.m,):
            raise ValueError("hypotheses must align with the p-value sample")
        if np.any((hyp != 0) & (hyp != 1)):
            raise ValueError("hypotheses must be binary")
        hyp.flags.writeable = False
        object.__setattr__(self, "hypotheses", hyp)

    def rejected_mask(self) -> np.ndarray:
        mask = np.zeros(self.pvalues.m, dtype=bool)
        if self.rejection.rejected_indices:
            idx = np.fromiter(self.rejection.rejected_indices, dtype=int) - 1
            mask[idx] = True
        return mask

    def counts(self) -> tuple[int, int]:
        """(R, V): realized rejections and false rejections, set-based."""
        mask = self.rejected_mask()
        r = int(mask.sum())
        v = int(np.count_nonzero(mask & (self.hypotheses == 0)))
        return r, v


def weighted_loss(outcome: LabeledOutcome, lam: float) -> float:
    """Weighted classification loss ((1 + lambda) V - R) / m.

    Normalized so rejecting nothing scores 0 and each true discovery is
    worth 1/m; each false discovery costs lambda/m.
    """
    if lam <= 0.0:
        raise ValueError("lambda must be positive")
    r, v = outcome.counts()
    return ((1.0 + lam) * v - r) / outcome.pvalues.m


def fdp(outcome: LabeledOutcome) -> float:
    """False discovery proportion V / R, defined as 0 when nothing is rejected."""
    r, v = outcome.counts()
    return v / r if r > 0 else 0.0


def last_rejection_null(outcome: LabeledOutcome) -> int:
    """1 if the last (largest-p) rejection is a true null, else 0.

    Exact ties at the threshold are resolved deterministically: among tied
    rejected p-values the one with the highest original index counts as last.
    """
    mask = outcome.rejected_mask()
    if not mask.any():
        return 0
    idx = np.nonzero(mask)[0]
    p = outcome.pvalues.values[idx]
    # lexicographic (p, original index): argmax picks the last tied index
    best = idx[np.lexsort((idx, p))][-1]
    return int(outcome.hypotheses[best] == 0)


def realized_max_lfdr(outcome: LabeledOutcome) -> float:
    """Largest true lfdr among the rejected p-values; 0 with no rejections."""
    if outcome.model is None:
        raise ValueError("realized_max_lfdr requires the generating model")
    mask = outcome.rejected_mask()
    if not mask.any():
        return 0.0
    return float(np.max(true_lfdr(outcome.model, outcome.pvalues.values[mask])))


def regret_vs_oracle(outcome: LabeledOutcome, lam: float) -> float:
    """Loss excess over the oracle fixed-threshold rule on the same data."""
    if outcome.model is None:
        raise ValueError("regret_vs_oracle requires the generating model")
    alpha = 1.0 / (1.0 + lam)
    tau_star = oracle_threshold(outcome.model, alpha)
    oracle_rejection = fixed_threshold_reject(outcome.pvalues, tau_star)
    oracle_outcome = LabeledOutcome(
        hypotheses=outcome.hypotheses,
        pvalues=outcome.pvalues,
        rejection=oracle_rejection,
        model=outcome.model,
    )
    return weighted_loss(outcome, lam) - weighted_loss(oracle_outcome, lam)
