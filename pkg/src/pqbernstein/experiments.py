"""Experiment drivers behind the command-line interface.

Korovkin convergence runs, figure-data emission, moment and bound reports,
and the quadrature/basis selftest matrix.  All outputs are deterministic:
identical inputs give byte-identical CSV/JSON (no timestamps in data files).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import qreference
from .error_bounds import BoundReport, check_t32, check_t33, check_t34
from .functions import LIPSCHITZ_DATA, RealFunction, make_function
from .moments_closed import MomentReport, build_moment_report
from .operator_eval import (
    BasisVariant,
    SchurerConfig,
    apply,
    apply_on_grid,
    basis,
    required_domain,
)
from .pq_core import PQPair, pq_integer
from .pq_quadrature import build_rule, integrate
from .reportio import fmt_float, json_text

SCHEMA_VERSION = "1"

KOROVKIN_FUNCTIONS = ("e0", "e1", "e2", "f_fig")
CONVERGENCE_FLAGGED = ("e1", "e2", "f_fig")

# Artifact defaults for the figure emitter, chosen to display the convergence
# trend; the source figures state no parameter values.
FIGURE_DEFAULT_PARAMS = ((0.95, 0.90, 10), (0.98, 0.95, 30), (0.999, 0.99, 100))

DEFAULT_SCHEDULE_GUARD = 0.01


class ConfigError(ValueError):
    """A run configuration violates its invariants."""


@dataclass(frozen=True, eq=False)
class KorovkinSchedule:
    """Rule (p_n, q_n) per degree, with q_n < p_n <= 1 and both tending to 1."""

    name: str
    pair_fn: Callable[[int], tuple[float, float]]

    def pair(self, n: int) -> PQPair:
        p, q = self.pair_fn(n)
        try:
            return PQPair(p, q)
        except ValueError as exc:
            raise ConfigError(f"schedule {self.name!r} invalid at n={n}: {exc}") from exc

    def validate(self, n_list: Sequence[int], guard: float = DEFAULT_SCHEDULE_GUARD) -> None:
        for n in n_list:
            self.pair(n)
        top = self.pair(max(n_list))
        if 1.0 - top.p >= guard or 1.0 - top.q >= guard:
            raise ConfigError(
                f"schedule {self.name!r} not close enough to 1 at n={max(n_list)}: "
                f"p={top.p:.6g}, q={top.q:.6g} (guard {guard:g})"
            )


def schedule(name: str) -> KorovkinSchedule:
    """Built-in schedules by name: "classic" or "q-only".

    classic: q_n = 1 - 1/(n+1) and p_n = 1 - 1/(n+1)^2.  p must approach 1 a
    full order faster than q because the basis reproduces degree-one data only
    up to factors p^(N-k); schedules with n(1 - p_n) bounded away from 0 leave
    the sup error stalled.
    """
    if name == "classic":
        return KorovkinSchedule(
            "classic", lambda n: (1.0 - 1.0 / (n + 1) ** 2, 1.0 - 1.0 / (n + 1))
        )
    if name == "q-only":
        return KorovkinSchedule("q-only", lambda n: (1.0, 1.0 - 1.0 / (n + 1)))
    raise ConfigError(f"unknown schedule {name!r}; built-ins are 'classic' and 'q-only'")


def custom_schedule(
    n_list: Sequence[int], p_list: Sequence[float], q_list: Sequence[float]
) -> KorovkinSchedule:
    if not (len(n_list) == len(p_list) == len(q_list)):
        raise ConfigError(
            f"custom schedule lists must align: {len(n_list)} n's, "
            f"{len(p_list)} p's, {len(q_list)} q's"
        )
    table = {int(n): (float(p), float(q)) for n, p, q in zip(n_list, p_list, q_list)}

    def pair_fn(n: int) -> tuple[float, float]:
        if n not in table:
            raise ConfigError(f"custom schedule has no entry for n={n}")
        return table[n]

    return KorovkinSchedule("custom", pair_fn)


def _validate_run_grid(grid_size: int) -> np.ndarray:
    if grid_size < 2:
        raise ConfigError(f"grid size must be >= 2, got {grid_size}")
    return np.linspace(0.0, 1.0, grid_size)


def _validate_n_list(n_list: Sequence[int]) -> list[int]:
    ns = [int(n) for n in n_list]
    if not ns or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ConfigError(f"n list must be non-empty and strictly increasing, got {ns}")
    return ns


def _hull_function(name: str, config: SchurerConfig, pq: PQPair) -> RealFunction:
    # bound and convergence checks compare K(f;x) to f(x) on [0,1], so the
    # function must cover the operator's argument range and the unit interval
    lo, hi = required_domain(config, pq)
    return make_function(name, min(lo, 0.0), max(hi, 1.0))


@dataclass(frozen=True)
class KorovkinRow:
    n: int
    p: float
    q: float
    sup_errors: dict[str, float]
    decreasing: dict[str, bool | None]


@dataclass(frozen=True, eq=False)
class KorovkinResult:
    schedule_name: str
    ell: int
    grid_size: int
    quad_tol: float
    basis_variant: BasisVariant
    rows: tuple[KorovkinRow, ...]
    converged: bool
    e0_within_budget: bool

    @property
    def all_passed(self) -> bool:
        return self.converged and self.e0_within_budget

    def to_csv_text(self) -> str:
        header = ["n", "p", "q"]
        header += [f"sup_err_{name}" for name in KOROVKIN_FUNCTIONS]
        header += [f"decreasing_{name}" for name in CONVERGENCE_FLAGGED]
        lines = [",".join(header)]
        for r in self.rows:
            cells = [str(r.n), fmt_float(r.p), fmt_float(r.q)]
            cells += [fmt_float(r.sup_errors[name]) for name in KOROVKIN_FUNCTIONS]
            cells += [fmt_float(r.decreasing[name]) for name in CONVERGENCE_FLAGGED]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json_text(self) -> str:
        return json_text(
            {
                "schema_version": SCHEMA_VERSION,
                "kind": "korovkin_run",
                "schedule": self.schedule_name,
                "ell": self.ell,
                "grid_size": self.grid_size,
                "quad_tol": self.quad_tol,
                "basis_variant": self.basis_variant.value,
                "converged": self.converged,
                "e0_within_budget": self.e0_within_budget,
                "rows": [
                    {
                        "n": r.n,
                        "p": r.p,
                        "q": r.q,
                        "sup_errors": r.sup_errors,
                        "decreasing": r.decreasing,
                    }
                    for r in self.rows
                ],
            }
        )


def run_korovkin(
    sched: KorovkinSchedule,
    n_list: Sequence[int],
    ell: int = 0,
    grid_size: int = 101,
    quad_tol: float = 1e-10,
    basis_variant: BasisVariant = BasisVariant.NORMALIZED,
    guard: float = DEFAULT_SCHEDULE_GUARD,
) -> KorovkinResult:
    """Sup-norm errors of K(f) - f over the grid, per n and per test function."""
    ns = _validate_n_list(n_list)
    sched.validate(ns, guard=guard)
    xs = _validate_run_grid(grid_size)
    rows: list[KorovkinRow] = []
    prev: dict[str, float] | None = None
    e0_ok = True
    for n in ns:
        pq = sched.pair(n)
        config = SchurerConfig(n=n, ell=ell, basis_variant=basis_variant, quad_tol=quad_tol)
        errors = {}
        for name in KOROVKIN_FUNCTIONS:
            f = _hull_function(name, config, pq)
            errors[name] = float(np.abs(apply_on_grid(config, pq, f, xs) - f(xs)).max())
        flags = {
            name: (None if prev is None else bool(errors[name] < prev[name]))
            for name in CONVERGENCE_FLAGGED
        }
        # partition of unity keeps e0 at the truncation floor
        if errors["e0"] > 10.0 * (config.degree + 1) * quad_tol:
            e0_ok = False
        rows.append(KorovkinRow(n=n, p=pq.p, q=pq.q, sup_errors=errors, decreasing=flags))
        prev = errors
    converged = all(
        row.decreasing[name]
        for row in rows[1:]
        for name in CONVERGENCE_FLAGGED
    )
    return KorovkinResult(
        schedule_name=sched.name,
        ell=ell,
        grid_size=grid_size,
        quad_tol=quad_tol,
        basis_variant=basis_variant,
        rows=tuple(rows),
        converged=converged,
        e0_within_budget=e0_ok,
    )


@dataclass(frozen=True, eq=False)
class FigureTable:
    ell: int
    grid_size: int
    quad_tol: float
    basis_variant: BasisVariant
    params: tuple[tuple[float, float, int], ...]
    xs: np.ndarray
    f_values: np.ndarray
    columns: tuple[tuple[str, np.ndarray], ...]

    def to_csv_text(self) -> str:
        header = ["x", "f"] + [label for label, _ in self.columns]
        lines = [",".join(header)]
        for i in range(len(self.xs)):
            cells = [fmt_float(float(self.xs[i])), fmt_float(float(self.f_values[i]))]
            cells += [fmt_float(float(col[i])) for _, col in self.columns]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json_text(self) -> str:
        return json_text(
            {
                "schema_version": SCHEMA_VERSION,
                "kind": "figure_data",
                "function": "f_fig",
                "ell": self.ell,
                "grid_size": self.grid_size,
                "quad_tol": self.quad_tol,
                "basis_variant": self.basis_variant.value,
                "params": [list(t) for t in self.params],
                "x": [float(v) for v in self.xs],
                "f": [float(v) for v in self.f_values],
                "columns": {label: [float(v) for v in col] for label, col in self.columns},
            }
        )


def _figure_label(p: float, q: float, n: int) -> str:
    return f"K_p{p:g}_q{q:g}_n{n}"


def run_figure(
    params: Sequence[tuple[float, float, int]] = FIGURE_DEFAULT_PARAMS,
    ell: int = 0,
    grid_size: int = 101,
    quad_tol: float = 1e-10,
    basis_variant: BasisVariant = BasisVariant.NORMALIZED,
) -> FigureTable:
    """Columns of K(f_fig) for each (p, q, n) triple next to f_fig itself."""
    if not params:
        raise ConfigError("figure needs at least one (p, q, n) triple")
    xs = _validate_run_grid(grid_size)
    columns = []
    f_vals = None
    for p, q, n in params:
        pq = PQPair(float(p), float(q))
        config = SchurerConfig(
            n=int(n), ell=ell, basis_variant=basis_variant, quad_tol=quad_tol
        )
        f = _hull_function("f_fig", config, pq)
        if f_vals is None:
            f_vals = f(xs)
        columns.append((_figure_label(p, q, n), apply_on_grid(config, pq, f, xs)))
    return FigureTable(
        ell=ell,
        grid_size=grid_size,
        quad_tol=quad_tol,
        basis_variant=basis_variant,
        params=tuple((float(p), float(q), int(n)) for p, q, n in params),
        xs=xs,
        f_values=f_vals,
        columns=tuple(columns),
    )


def run_moments(
    config: SchurerConfig, pq: PQPair, grid_size: int = 101
) -> MomentReport:
    xs = _validate_run_grid(grid_size)
    return build_moment_report(config, pq, xs)


def run_bounds(
    theorem: str,
    config: SchurerConfig,
    pq: PQPair,
    function_name: str = "f_fig",
    grid_size: int = 101,
    ratio_cap: float = 50.0,
    lipschitz: tuple[float, float] | None = None,
) -> BoundReport:
    xs = _validate_run_grid(grid_size)
    f = _hull_function(function_name, config, pq)
    if theorem == "t32":
        return check_t32(config, pq, f, xs)
    if theorem == "t33":
        if lipschitz is None:
            lipschitz = LIPSCHITZ_DATA.get(function_name)
        if lipschitz is None:
            raise ConfigError(
                f"{function_name!r} has no built-in Lipschitz data; pass M and alpha"
            )
        m_const, alpha = lipschitz
        return check_t33(config, pq, f, m_const, alpha, xs)
    if theorem == "t34":
        return check_t34(config, pq, f, xs, ratio_cap=ratio_cap)
    raise ConfigError(f"unknown theorem {theorem!r}; choose t32, t33 or t34")


@dataclass(frozen=True)
class SelftestCheck:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True, eq=False)
class SelftestResult:
    checks: tuple[SelftestCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def matrix_text(self) -> str:
        lines = []
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
        n_fail = sum(not c.passed for c in self.checks)
        lines.append(f"selftest: {len(self.checks)} checks, {n_fail} failures")
        return "\n".join(lines) + "\n"


def run_selftest(
    basis_variant: BasisVariant = BasisVariant.NORMALIZED,
) -> SelftestResult:
    """Quadrature identities, partition of unity, constant reproduction, p=1 reduction.

    With the printed basis and p < 1 the partition and constant checks fail by
    design; that is the documented witness, not a bug.
    """
    checks: list[SelftestCheck] = []
    pairs = [PQPair(1.0, 0.5), PQPair(0.9, 0.8), PQPair(0.99, 0.98)]

    worst = 0.0
    for pq in pairs:
        rule = build_rule(pq, a=1.0, tol=1e-12)
        for m in range(7):
            f = RealFunction(lambda t, m=m: t**m, 0.0, rule.top_node, name=f"t^{m}")
            worst = max(worst, abs(integrate(rule, f) - 1.0 / pq_integer(m + 1, pq)))
    checks.append(
        SelftestCheck("quadrature-monomials", worst <= 1e-11, f"max_err={worst:.3e}")
    )

    worst = 0.0
    for pq in pairs:
        rule = build_rule(pq, a=1.0, tol=1e-12)
        worst = max(worst, abs(rule.weights.sum() + rule.tail_bound - 1.0))
    checks.append(
        SelftestCheck("quadrature-weight-sum", worst <= 1e-13, f"max_err={worst:.3e}")
    )

    worst = 0.0
    xs = np.linspace(0.0, 1.0, 101)
    for pq in pairs:
        for big_n in (1, 2, 4, 8, 16, 32, 64):
            config = SchurerConfig(n=big_n, ell=0, basis_variant=basis_variant)
            for x in xs:
                total = sum(
                    basis(config, pq, k, float(x)) for k in range(big_n + 1)
                )
                worst = max(worst, abs(total - 1.0))
    checks.append(
        SelftestCheck(
            f"partition-of-unity[{basis_variant.value}]",
            worst <= 1e-12,
            f"max|sum-1|={worst:.3e}",
        )
    )

    worst = 0.0  # deviation over the per-config truncation budget (degree+1)*tol
    for pq, (n, ell) in zip(pairs, ((5, 0), (10, 2), (20, 1))):
        config = SchurerConfig(n=n, ell=ell, basis_variant=basis_variant)
        f = _hull_function("e0", config, pq)
        budget = (config.degree + 1) * config.quad_tol
        for x in (0.0, 0.25, 0.5, 0.75, 1.0):
            worst = max(worst, abs(apply(config, pq, f, x) - 1.0) / budget)
    checks.append(
        SelftestCheck(
            f"constant-reproduction[{basis_variant.value}]",
            worst <= 1.0,
            f"max|K(1;x)-1| at {worst:.3g}x the truncation budget",
        )
    )

    rng = np.random.default_rng(20240704)
    worst = 0.0
    for _ in range(5):
        n = int(rng.integers(2, 20))
        ell = int(rng.integers(0, 3))
        q = float(rng.uniform(0.5, 0.95))
        x = float(rng.uniform(0.0, 1.0))
        coefs = rng.uniform(-1.0, 1.0, size=3)
        config = SchurerConfig(n=n, ell=ell, basis_variant=basis_variant, quad_tol=1e-12)
        pq = PQPair(1.0, q)
        lo, hi = required_domain(config, pq)

        def poly(t, c=coefs):
            return c[0] + c[1] * t + c[2] * t**2

        ours = apply(config, pq, RealFunction(poly, lo, hi, name="poly"), x)
        ref = qreference.q_kantorovich_schurer(n, ell, q, poly, x, tol=1e-12)
        worst = max(worst, abs(ours - ref))
    checks.append(
        SelftestCheck("p1-reduction-vs-reference", worst <= 1e-9, f"max_err={worst:.3e}")
    )

    return SelftestResult(tuple(checks))
