"""Independently coded q-parameter Kantorovich-Schurer evaluator.

Cross-check oracle for the p = 1 reduction of the main operator.  Kept
deliberately separate: q-integers via the ratio form, q-binomials via the
Pascal-style recurrence, the Jackson integral with its own truncation loop,
plain Python floats throughout.  Do not refactor this to share code with
operator_eval; its value is exactly that it shares nothing.
"""

from __future__ import annotations

from typing import Callable


def q_integer(n: int, q: float) -> float:
    """[n]_q = (1 - q^n)/(1 - q), with the n limit at q = 1."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if q == 1.0:
        return float(n)
    return (1.0 - q**n) / (1.0 - q)


def q_binomial_row(n: int, q: float) -> list[float]:
    """Row n of the Gaussian binomial triangle via [n k] = [n-1 k-1] + q^k [n-1 k]."""
    row = [1.0]
    for m in range(1, n + 1):
        nxt = [1.0]
        for k in range(1, m):
            nxt.append(row[k - 1] + q**k * row[k])
        nxt.append(1.0)
        row = nxt
    return row


def jackson_integral(g: Callable[[float], float], q: float, tol: float = 1e-12) -> float:
    """int_0^1 g d_q t = (1-q) sum_{j>=0} q^j g(q^j), truncated once q^(J+1) <= tol."""
    if not 0.0 < q < 1.0:
        raise ValueError(f"Jackson integral needs 0 < q < 1, got {q}")
    total = 0.0
    qj = 1.0
    while True:
        total += qj * g(qj)
        qj *= q
        if qj <= tol:
            break
    return (1.0 - q) * total


def q_kantorovich_schurer(
    n: int,
    ell: int,
    q: float,
    f: Callable[[float], float],
    x: float,
    tol: float = 1e-12,
) -> float:
    """The q-Bernstein-Schurer operator of Kantorovich type at a point.

    Basis weight [n+ell k]_q x^k prod_{s<n+ell-k} (1 - q^s x), Kantorovich
    argument [k]_q/[n+1]_q + (1 + (q-1)[k]_q)/[n+1]_q * t under the Jackson
    integral over t in [0, 1].
    """
    big_n = n + ell
    row = q_binomial_row(big_n, q)
    denom = q_integer(n + 1, q)
    total = 0.0
    for k in range(big_n + 1):
        b = row[k] * x**k
        for s in range(big_n - k):
            b *= 1.0 - q**s * x
        if b == 0.0:
            continue
        shift = q_integer(k, q) / denom
        slope = (1.0 + (q - 1.0) * q_integer(k, q)) / denom
        total += b * jackson_integral(lambda t: f(shift + slope * t), q, tol)
    return total
