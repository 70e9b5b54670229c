"""Validation reports carrying the first counterexample found."""

from dataclasses import dataclass, field

import numpy as np

from .exact_linalg import first_nonzero, scalar


@dataclass
class ValidationReport:
    check: str
    ok: bool
    witness: dict | None = None
    detail: str = ""
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def as_dict(self):
        out = {"check": self.check, "ok": self.ok}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        if self.extra:
            out.update(self.extra)
        return out


def passed(check, **extra):
    return ValidationReport(check, True, extra=extra)


def from_residual(check, residual, labels, detail=""):
    """Turn a residual array that should vanish into a report.

    `labels` names the leading axes of `residual`; the smallest nonzero
    index becomes the witness.
    """
    residual = np.asarray(residual, dtype=object)
    idx = first_nonzero(residual)
    if idx is None:
        return ValidationReport(check, True)
    witness = {name: int(i) for name, i in zip(labels, idx)}
    witness["residual"] = str(scalar(residual[idx]))
    return ValidationReport(check, False, witness, detail)


def combine(check, reports):
    """First failing report wins; otherwise a pass."""
    for r in reports:
        if not r.ok:
            return ValidationReport(check, False, r.witness, r.detail or r.check)
    return ValidationReport(check, True)
