"""Arithmetic primitives of the two-parameter (p,q)-deformation of the integers.

Everything here is a pure function over an immutable :class:`PQPair` and runs
in ordinary double precision.  With 0 < q < p <= 1 all quantities stay in a
benign range ([k]_{p,q} <= k), so no log-space path is needed at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PQPair:
    """Parameter pair with 0 < q < p <= 1 (strictly p - q > 0)."""

    p: float
    q: float

    def __post_init__(self) -> None:
        p, q = self.p, self.q
        if not (math.isfinite(p) and math.isfinite(q)):
            raise ValueError(f"p, q must be finite numbers, got p={p!r}, q={q!r}")
        if not 0.0 < q < p <= 1.0:
            raise ValueError(f"require 0 < q < p <= 1, got p={p!r}, q={q!r}")


def pq_integer(n: int, pq: PQPair) -> float:
    """[n]_{p,q} = sum_{i=0}^{n-1} p^(n-1-i) q^i, with [0] = 0.

    The summation form equals (p^n - q^n)/(p - q) algebraically but does not
    cancel catastrophically as p -> q.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    p, q = pq.p, pq.q
    return math.fsum(p ** (n - 1 - i) * q**i for i in range(n))


def pq_factorial(n: int, pq: PQPair) -> float:
    """[n]_{p,q}! = prod_{k=1}^{n} [k]_{p,q}, with [0]! = 1."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    out = 1.0
    for k in range(1, n + 1):
        out *= pq_integer(k, pq)
    return out


def pq_binomial(n: int, k: int, pq: PQPair) -> float:
    """[n k]_{p,q} = [n]!/([k]! [n-k]!); k outside [0, n] gives 0."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if k < 0 or k > n:
        return 0.0
    return pq_factorial(n, pq) / (pq_factorial(k, pq) * pq_factorial(n - k, pq))


def pq_power_falling(x: float, m: int, pq: PQPair) -> float:
    """(1-x)^m_{p,q} = prod_{s=0}^{m-1} (p^s - q^s x); empty product for m = 0."""
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    p, q = pq.p, pq.q
    out = 1.0
    for s in range(m):
        out *= p**s - q**s * x
    return out


def pq_rising_two_term(a: float, b: float, x: float, y: float, m: int, pq: PQPair) -> float:
    """(ax + by)^m_{p,q} = prod_{s=0}^{m-1} (p^s a x + q^s b y).

    This is the only product form defined for two-term bases; the closed-form
    moment module maps expressions like (px + 1 - x)^m onto it with a = p,
    b = 1, y = 1 - x.
    """
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    p, q = pq.p, pq.q
    out = 1.0
    for s in range(m):
        out *= p**s * a * x + q**s * b * y
    return out
