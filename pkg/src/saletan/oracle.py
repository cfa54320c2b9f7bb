"""Floating-point limit oracle for contractions.

Independent of the exact engine: it just evaluates the conjugated structure
U(lam)^-1 o mu o U(lam)^(x)n (or U^(x)n o Delta o U^-1 for coproducts) at a
ladder of small lam and watches the distance to a claimed limit.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .algebra import PRODUCT, StructureTensor
from .errors import Diverging, SingularAtLambda

PROBE_COUNT_ENV = "SALETAN_PROBE_COUNT"
CONDITION_GUARD = 1e12
ZERO_FLOOR = 1e-13


def default_lambdas(count: int | None = None) -> tuple[float, ...]:
    """Decades 1e-1, 1e-2, ...; the count comes from SALETAN_PROBE_COUNT (default 6)."""
    if count is None:
        count = int(os.environ.get(PROBE_COUNT_ENV, "6"))
    if count < 1:
        raise ValueError(f"{PROBE_COUNT_ENV} must be positive")
    return tuple(10.0 ** -(k + 1) for k in range(count))


@dataclass(frozen=True)
class LimitProbeConfig:
    lambdas: Sequence[float] = field(default_factory=default_lambdas)
    f_scale: Callable[[float], float] | None = None
    p: int = 0

    def __post_init__(self):
        lams = list(self.lambdas)
        if not lams or any(x <= 0 for x in lams):
            raise ValueError("probe lambdas must be positive")
        if any(b >= a for a, b in zip(lams, lams[1:])):
            raise ValueError("probe lambdas must be strictly decreasing")
        if self.p < 0:
            raise ValueError("p must be non-negative")


@dataclass(frozen=True)
class ProbeReport:
    lambdas: tuple[float, ...]
    errors: tuple[float, ...]
    conditions: tuple[float, ...]
    used: tuple[bool, ...]
    order: float | None
    constant: float

    @property
    def exact(self) -> bool:
        """Deviation below the float floor at every surviving probe."""
        return all(e <= ZERO_FLOOR for e, u in zip(self.errors, self.used) if u)

    @property
    def converged(self) -> bool:
        return self.exact or (self.order is not None and self.order >= 0.9)

    @property
    def diverging(self) -> bool:
        if self.exact or self.order is None:
            return False
        errs = [e for e, u in zip(self.errors, self.used) if u]
        return self.order < 0 and errs[-1] > errs[0]

    def as_dict(self) -> dict:
        return {
            "lambdas": list(self.lambdas),
            "errors": list(self.errors),
            "condition_numbers": list(self.conditions),
            "used_in_fit": list(self.used),
            "order": self.order,
            "constant": self.constant,
            "converged": self.converged,
            "diverging": self.diverging,
        }


def family_matrix(n: np.ndarray, lam: float, cfg: LimitProbeConfig, a: np.ndarray | None = None) -> np.ndarray:
    """lam^p (lam A + f(lam) N), with A = I and f = 1 by default."""
    m = n.shape[0]
    a = np.eye(m) if a is None else a
    f = 1.0 if cfg.f_scale is None else float(cfg.f_scale(lam))
    return lam ** cfg.p * (lam * a + f * n)


def conjugate(c: np.ndarray, kind: str, arity: int, u: np.ndarray) -> np.ndarray:
    """Float structure transported by U: U^-1 mu U^(x)n, or U^(x)n Delta U^-1."""
    u_inv = np.linalg.solve(u, np.eye(u.shape[0]))
    if kind == PRODUCT:
        pre, post, ins, outs = u, u_inv, range(arity), [arity]
    else:
        pre, post, ins, outs = u_inv, u, [0], range(1, arity + 1)
    out = c
    for axis in ins:
        out = np.moveaxis(np.tensordot(pre, out, axes=([0], [axis])), 0, axis)
    for axis in outs:
        out = np.moveaxis(np.tensordot(post, out, axes=([1], [axis])), 0, axis)
    return out


def limit_probe(
    mu: StructureTensor,
    n,
    cfg: LimitProbeConfig | None = None,
    expected: StructureTensor | None = None,
    a=None,
    strict: bool = False,
) -> ProbeReport:
    """Max-norm distance of the lam-transported structure from ``expected``.

    The convergence order is the least-squares slope of log(error) against
    log(lam) over probes whose U(lam) condition number is below 1e12 and
    whose error is above the float floor; at least three such probes are
    needed for a slope.  ``strict`` turns a diverging report into an error.
    """
    cfg = cfg or LimitProbeConfig()
    n_f = linalg.to_float(n) if np.asarray(n).dtype == object else np.asarray(n, dtype=float)
    a_f = None if a is None else (linalg.to_float(a) if np.asarray(a).dtype == object else np.asarray(a, float))
    c = mu.to_float()
    target = np.zeros_like(c) if expected is None else expected.to_float()

    errors, conds, used = [], [], []
    for lam in cfg.lambdas:
        u = family_matrix(n_f, lam, cfg, a_f)
        cond = float(np.linalg.cond(u))
        if not math.isfinite(cond):
            raise SingularAtLambda(f"U({lam:g}) is singular", lam=lam)
        try:
            moved = conjugate(c, mu.kind, mu.arity, u)
        except np.linalg.LinAlgError:
            raise SingularAtLambda(f"U({lam:g}) is singular", lam=lam) from None
        err = float(np.max(np.abs(moved - target))) if c.size else 0.0
        errors.append(err)
        conds.append(cond)
        used.append(cond <= CONDITION_GUARD)

    lams = np.array(cfg.lambdas, dtype=float)
    errs = np.array(errors)
    mask = np.array(used) & (errs > ZERO_FLOOR)
    order = None
    if mask.sum() >= 3:
        order = float(np.polyfit(np.log(lams[mask]), np.log(errs[mask]), 1)[0])
    constant = float(np.max(errs[np.array(used)] / lams[np.array(used)])) if any(used) else math.inf

    report = ProbeReport(tuple(cfg.lambdas), tuple(errors), tuple(conds), tuple(used), order, constant)
    if strict and report.diverging:
        raise Diverging(f"deviation grows as lam shrinks (fitted order {order:.3g})")
    return report
