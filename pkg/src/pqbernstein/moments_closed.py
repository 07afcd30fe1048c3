"""Closed-form moment expressions and their comparison against the operator.

The closed forms below are transcribed verbatim under one declared reading of
the two-term power (c x + 1 - x)^m, namely the rising product
prod_{s=0}^{m-1} (p^s c x + q^s (1 - x)) with c = p or p^2.  They are
*hypotheses under test*: the direct operator evaluation is ground truth, the
report records absolute differences and raises a machine-readable flag when
they exceed 100x the quadrature tolerance, and nothing asserts them equal.
Known internal tensions preserved as transcribed: the first central moment
uses (p^2 x + 1 - x)^N where linearity applied to the raw first moment gives
(p x + 1 - x)^N and drops a factor [N]; the second central moment carries an
extra q on its x^2 bracket.  Measured behaviour: the raw-moment forms are
exact for N = n + ell = 1 and drift for larger N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .functions import make_function
from .operator_eval import (
    BasisVariant,
    SchurerConfig,
    apply_central_moment,
    apply_on_grid,
    required_domain,
)
from .pq_core import PQPair, pq_integer, pq_rising_two_term
from .reportio import fmt_float, json_text, write_text

INTERPRETATION_TAG = (
    "(c*x + 1 - x)^m_{p,q} read as prod_{s<m} (p^s * c * x + q^s * (1 - x))"
)

SCHEMA_VERSION = "1"

CSV_COLUMNS = (
    "x",
    "oracle_m0",
    "oracle_m1",
    "closed_m1",
    "diff_m1",
    "oracle_m2",
    "closed_m2",
    "diff_m2",
    "oracle_c1",
    "closed_c1",
    "diff_c1",
    "oracle_c2",
    "closed_c2",
    "diff_c2",
)


def closed_first_moment(config: SchurerConfig, pq: PQPair, x: float) -> float:
    """(px+1-x)^N / ([2][n+1]) + (p+2q-1) [N] x / ([2][n+1]), N = n + ell."""
    p, q = pq.p, pq.q
    big_n = config.degree
    denom = pq_integer(2, pq) * pq_integer(config.n + 1, pq)
    head = pq_rising_two_term(p, 1.0, x, 1.0 - x, big_n, pq)
    return head / denom + (p + 2.0 * q - 1.0) * pq_integer(big_n, pq) * x / denom


def closed_second_moment(config: SchurerConfig, pq: PQPair, x: float) -> float:
    """Second raw moment as transcribed, leading term (p^2 x + 1 - x)^N / ([3][n+1]^2)."""
    p, q = pq.p, pq.q
    big_n = config.degree
    two, three = pq_integer(2, pq), pq_integer(3, pq)
    np1 = pq_integer(config.n + 1, pq)
    head = pq_rising_two_term(p * p, 1.0, x, 1.0 - x, big_n, pq) / (three * np1**2)
    mid_coef = 1.0 + 2.0 * q / two + (q * q - 1.0) / three
    mid = (
        mid_coef
        * pq_integer(big_n, pq)
        / np1**2
        * pq_rising_two_term(p, 1.0, x, 1.0 - x, big_n - 1, pq)
        * x
    )
    tail_coef = 1.0 + 2.0 * (q - 1.0) / two + (q - 1.0) ** 2 / three
    tail = tail_coef * pq_integer(big_n, pq) * pq_integer(big_n - 1, pq) / np1**2 * x * x
    return head + mid + tail


def closed_central_moments(config: SchurerConfig, pq: PQPair, x: float) -> tuple[float, float]:
    """First and second central moments as transcribed (discrepancies preserved)."""
    p, q = pq.p, pq.q
    big_n = config.degree
    two, three = pq_integer(2, pq), pq_integer(3, pq)
    np1 = pq_integer(config.n + 1, pq)

    c1 = pq_rising_two_term(p * p, 1.0, x, 1.0 - x, big_n, pq) / (two * np1) + (
        (p + 2.0 * q - 1.0) / (two * np1) - 1.0
    ) * x

    head = pq_rising_two_term(p * p, 1.0, x, 1.0 - x, big_n, pq) / (three * np1**2)
    mid_coef = 1.0 + 2.0 * q / two + (q * q - 1.0) / three
    mid = (
        mid_coef
        * pq_integer(big_n, pq)
        * pq_rising_two_term(p, 1.0, x, 1.0 - x, big_n - 1, pq)
        / np1**2
        - 2.0 * pq_rising_two_term(p, 1.0, x, 1.0 - x, big_n, pq) / (two * np1)
    ) * x
    tail_coef = 1.0 + 2.0 * (q - 1.0) / two + (q - 1.0) ** 2 / three
    tail = (
        q * tail_coef * pq_integer(big_n, pq) * pq_integer(big_n - 1, pq) / np1**2
        - 2.0 * (p + 2.0 * q - 1.0) * pq_integer(big_n, pq) / (two * np1)
        + 1.0
    ) * x * x
    return c1, head + mid + tail


@dataclass(frozen=True)
class MomentRow:
    x: float
    oracle_m0: float
    oracle_m1: float
    oracle_m2: float
    oracle_c1: float
    oracle_c2: float
    closed_m1: float
    closed_m2: float
    closed_c1: float
    closed_c2: float

    @property
    def diffs(self) -> dict[str, float]:
        return {
            "m1": abs(self.closed_m1 - self.oracle_m1),
            "m2": abs(self.closed_m2 - self.oracle_m2),
            "c1": abs(self.closed_c1 - self.oracle_c1),
            "c2": abs(self.closed_c2 - self.oracle_c2),
        }


@dataclass(frozen=True, eq=False)
class MomentReport:
    config: SchurerConfig
    pq: PQPair
    rows: tuple[MomentRow, ...]
    max_abs_diff: dict[str, float]
    flagged: bool
    # worst deviations of the oracle's own consistency identities
    max_m0_dev: float
    max_c1_consistency: float
    max_c2_consistency: float

    @property
    def max_abs_diff_overall(self) -> float:
        return max(self.max_abs_diff.values())

    def to_csv_text(self) -> str:
        lines = [",".join(CSV_COLUMNS)]
        for r in self.rows:
            d = r.diffs
            lines.append(
                ",".join(
                    fmt_float(v)
                    for v in (
                        r.x,
                        r.oracle_m0,
                        r.oracle_m1,
                        r.closed_m1,
                        d["m1"],
                        r.oracle_m2,
                        r.closed_m2,
                        d["m2"],
                        r.oracle_c1,
                        r.closed_c1,
                        d["c1"],
                        r.oracle_c2,
                        r.closed_c2,
                        d["c2"],
                    )
                )
            )
        return "\n".join(lines) + "\n"

    def to_json_text(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "kind": "moment_report",
            "config": {
                "n": self.config.n,
                "ell": self.config.ell,
                "basis_variant": self.config.basis_variant.value,
                "quad_tol": self.config.quad_tol,
            },
            "pq": {"p": self.pq.p, "q": self.pq.q},
            "interpretation": INTERPRETATION_TAG,
            "max_abs_diff": self.max_abs_diff,
            "closed_form_discrepancy_flag": self.flagged,
            "oracle_consistency": {
                "max_m0_dev": self.max_m0_dev,
                "max_c1_dev": self.max_c1_consistency,
                "max_c2_dev": self.max_c2_consistency,
            },
            "rows": [
                {
                    "x": r.x,
                    "oracle": {
                        "m0": r.oracle_m0,
                        "m1": r.oracle_m1,
                        "m2": r.oracle_m2,
                        "c1": r.oracle_c1,
                        "c2": r.oracle_c2,
                    },
                    "closed": {
                        "m1": r.closed_m1,
                        "m2": r.closed_m2,
                        "c1": r.closed_c1,
                        "c2": r.closed_c2,
                    },
                }
                for r in self.rows
            ],
        }
        return json_text(doc)

    def write(self, base_path: str) -> tuple[str, str]:
        csv_path = base_path + ".csv"
        json_path = base_path + ".json"
        write_text(csv_path, self.to_csv_text())
        write_text(json_path, self.to_json_text())
        return csv_path, json_path


def build_moment_report(config: SchurerConfig, pq: PQPair, grid) -> MomentReport:
    """Oracle moments vs closed forms over an x-grid in [0, 1]."""
    xs = np.asarray(grid, dtype=float)
    if xs.size == 0:
        raise ValueError("empty x grid")
    if xs.min() < 0.0 or xs.max() > 1.0:
        raise ValueError("moment grid must lie inside [0, 1]")

    lo, hi = required_domain(config, pq)
    oracle = {
        name: apply_on_grid(config, pq, make_function(name, lo, hi), xs)
        for name in ("e0", "e1", "e2")
    }
    rows = []
    for i, x in enumerate(float(v) for v in xs):
        c1, c2 = closed_central_moments(config, pq, x)
        rows.append(
            MomentRow(
                x=x,
                oracle_m0=float(oracle["e0"][i]),
                oracle_m1=float(oracle["e1"][i]),
                oracle_m2=float(oracle["e2"][i]),
                oracle_c1=apply_central_moment(config, pq, x, 1),
                oracle_c2=apply_central_moment(config, pq, x, 2),
                closed_m1=closed_first_moment(config, pq, x),
                closed_m2=closed_second_moment(config, pq, x),
                closed_c1=c1,
                closed_c2=c2,
            )
        )

    max_abs_diff = {
        key: max(r.diffs[key] for r in rows) for key in ("m1", "m2", "c1", "c2")
    }
    flagged = max(max_abs_diff.values()) > 100.0 * config.quad_tol
    m0_target = 1.0 if config.basis_variant is BasisVariant.NORMALIZED else None
    max_m0_dev = (
        max(abs(r.oracle_m0 - m0_target) for r in rows) if m0_target is not None else 0.0
    )
    return MomentReport(
        config=config,
        pq=pq,
        rows=tuple(rows),
        max_abs_diff=max_abs_diff,
        flagged=flagged,
        max_m0_dev=max_m0_dev,
        max_c1_consistency=max(
            abs(r.oracle_c1 - (r.oracle_m1 - r.x)) for r in rows
        ),
        max_c2_consistency=max(
            abs(r.oracle_c2 - (r.oracle_m2 - 2.0 * r.x * r.oracle_m1 + r.x**2))
            for r in rows
        ),
    )
