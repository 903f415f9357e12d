"""Calming functions: bounded 1-Lipschitz truncations of the advecting velocity.

Three concrete choices are provided, all mapping R^2 -> R^2 and converging
pointwise to the identity as the calming parameter epsilon -> 0:

* type1:  x / (1 + eps |x|)            sup 1/eps,      |eta(x)-x| <= eps   |x|^2
* type2:  x / (1 + eps^2 |x|^2)        sup 1/(2 eps),  |eta(x)-x| <= eps^2 |x|^3
* type3:  arctan(eps x) / eps          sup pi/(2 eps), |eta(x)-x| <= eps^2 |x|^3

|x| is the Euclidean magnitude for types 1 and 2; type 3 acts componentwise.
The identity variant leaves the velocity untouched (the uncalmed equation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

VARIANTS = ("identity", "type1", "type2", "type3")


@dataclass(frozen=True)
class CalmingKind:
    """Which truncation to apply and how strongly (epsilon is ignored for identity)."""

    variant: str
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown calming variant {self.variant!r}; expected one of {VARIANTS}")
        if self.variant != "identity" and not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be > 0 for {self.variant}, got {self.epsilon}")

    @property
    def is_identity(self) -> bool:
        return self.variant == "identity"

    def with_epsilon(self, epsilon: float) -> "CalmingKind":
        return CalmingKind(self.variant, epsilon)


IDENTITY = CalmingKind("identity")


@dataclass(frozen=True)
class DefectBound:
    """Constants of the pointwise estimate |eta(x) - x| <= c * eps^alpha * |x|^beta."""

    alpha: float
    beta: float
    c: float


def apply_calming(kind: CalmingKind, v: np.ndarray) -> np.ndarray:
    """Evaluate the calming function pointwise on a 2-vector array.

    ``v`` has the two components along its leading axis (shape (2,) or
    (2, ...)); the result has the same shape.  Denominators are >= 1, so no
    guards are needed anywhere.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.shape[0] != 2:
        raise ValueError(f"expected leading axis of size 2, got shape {v.shape}")
    if kind.variant == "identity":
        return v
    eps = kind.epsilon
    if kind.variant == "type3":
        return np.arctan(eps * v) / eps
    mag = np.sqrt(v[0] ** 2 + v[1] ** 2)
    if kind.variant == "type1":
        return v / (1.0 + eps * mag)
    return v / (1.0 + (eps * mag) ** 2)


def calming_sup_norm(kind: CalmingKind) -> float:
    """Exact supremum of |eta| over R^2 (inf for the identity)."""
    if kind.variant == "identity":
        return math.inf
    eps = kind.epsilon
    if kind.variant == "type1":
        return 1.0 / eps
    if kind.variant == "type2":
        return 1.0 / (2.0 * eps)
    return math.pi / (2.0 * eps)


def defect_bound(kind: CalmingKind) -> DefectBound:
    """The (alpha, beta, c) triple of the pointwise identity-defect estimate."""
    if kind.variant == "identity":
        raise ValueError("the identity has no defect bound")
    if kind.variant == "type1":
        return DefectBound(alpha=1.0, beta=2.0, c=1.0)
    return DefectBound(alpha=2.0, beta=3.0, c=1.0)
