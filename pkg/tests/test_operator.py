import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pqbernstein.functions import DomainError, RealFunction, make_function
from pqbernstein.operator_eval import (
    BasisVariant,
    SchurerConfig,
    apply,
    apply_central_moment,
    apply_on_grid,
    argument,
    basis,
    basis_row,
    required_domain,
)
from pqbernstein.pq_core import (
    PQPair,
    pq_binomial,
    pq_integer,
    pq_power_falling,
)
from pqbernstein.pq_quadrature import build_rule
from pqbernstein.qreference import q_kantorovich_schurer

PQ = PQPair(0.9, 0.8)


def brute_force_apply(config, pq, fn, x):
    """Slow reference: the defining sum assembled from the scalar primitives."""
    big_n = config.degree
    rule = build_rule(pq, a=1.0, tol=config.quad_tol)
    total = 0.0
    for k in range(big_n + 1):
        b = pq_binomial(big_n, k, pq) * x**k * pq_power_falling(x, big_n - k, pq)
        if config.basis_variant is BasisVariant.NORMALIZED:
            b *= pq.p ** ((k * (k - 1) - big_n * (big_n - 1)) / 2.0)
        integral = sum(
            w * fn(argument(k, float(t), config, pq))
            for t, w in zip(rule.nodes, rule.weights)
        )
        total += b * integral
    return total


class TestBasis:
    def test_printed_sum_witness_degree_two(self):
        # sum over k of the printed basis at N=2 is p + (1-p) x^2, not 1
        config = SchurerConfig(n=2, ell=0, basis_variant=BasisVariant.AS_PRINTED)
        for x in np.linspace(0.0, 1.0, 101):
            total = sum(basis(config, PQ, k, float(x)) for k in range(3))
            assert abs(total - (0.9 + 0.1 * x**2)) <= 1e-13

    @given(
        st.integers(min_value=1, max_value=8),
        st.integers(min_value=0, max_value=3),
        st.floats(min_value=0.0, max_value=1.0),
    )
    def test_normalized_partition_of_unity(self, n, ell, x):
        config = SchurerConfig(n=n, ell=ell)
        total = sum(basis(config, PQ, k, x) for k in range(config.degree + 1))
        assert abs(total - 1.0) <= 1e-12

    def test_nonnegative_on_unit_interval(self):
        for variant in BasisVariant:
            config = SchurerConfig(n=6, ell=1, basis_variant=variant)
            for x in np.linspace(0.0, 1.0, 21):
                assert (basis_row(config, PQ, float(x)) >= 0.0).all()

    def test_at_zero_only_first_survives(self):
        config = SchurerConfig(n=5, ell=2)
        row = basis_row(config, PQ, 0.0)
        assert row[0] == pytest.approx(1.0, rel=1e-14)
        assert row[1:] == pytest.approx(np.zeros(config.degree), abs=0.0)

    def test_out_of_range_k_is_zero(self):
        config = SchurerConfig(n=3)
        assert basis(config, PQ, -1, 0.5) == 0.0
        assert basis(config, PQ, 4, 0.5) == 0.0


class TestArgument:
    def test_k_zero_is_scaled_t(self):
        config = SchurerConfig(n=7, ell=1)
        for t in (0.0, 0.3, 1.1):
            assert argument(0, t, config, PQ) == pytest.approx(
                t / pq_integer(8, PQ), rel=1e-14
            )

    def test_t_zero_is_shift_only(self):
        config = SchurerConfig(n=7, ell=1)
        for k in range(9):
            assert argument(k, 0.0, config, PQ) == pytest.approx(
                pq_integer(k, PQ) / pq_integer(8, PQ), rel=1e-14
            )

    def test_p1_slope_coefficient_is_qk(self):
        # at p=1 the step [k+1]-[k] collapses to q^k, the coefficient form of
        # the q-parameter operator
        q = 0.77
        pq = PQPair(1.0, q)
        config = SchurerConfig(n=40, ell=0)
        denom = pq_integer(41, pq)
        for k in range(33):
            slope = argument(k, 1.0, config, pq) - argument(k, 0.0, config, pq)
            assert slope == pytest.approx(q**k / denom, rel=1e-12)

    def test_slope_can_be_negative_for_small_p(self):
        # [k]_{p,q} decays for large k when p < 1, so the argument need not be
        # increasing in t
        config = SchurerConfig(n=12, ell=0)
        slope = argument(12, 1.0, config, PQ) - argument(12, 0.0, config, PQ)
        assert slope < 0.0


class TestRequiredDomain:
    def test_p1_no_shift_stays_inside_unit(self):
        pq = PQPair(1.0, 0.8)
        lo, hi = required_domain(SchurerConfig(n=6, ell=0), pq)
        assert lo == 0.0
        assert hi <= 1.0 + 1e-12

    def test_p1_with_shift_enumeration(self):
        pq = PQPair(1.0, 0.8)
        config = SchurerConfig(n=6, ell=2)
        lo, hi = required_domain(config, pq)
        # top argument is [n+ell+1]/[n+1] at the top node t=1
        expected = pq_integer(9, pq) / pq_integer(7, pq)
        assert hi == pytest.approx(expected, rel=1e-13)
        assert hi > 1.0

    def test_small_p_inflates_top(self):
        hi_p1 = required_domain(SchurerConfig(n=6, ell=0), PQPair(1.0, 0.8))[1]
        hi_small = required_domain(SchurerConfig(n=6, ell=0), PQ)[1]
        assert hi_small != hi_p1  # top quadrature node moves to 1/p


class TestApply:
    def test_constant_reproduction(self):
        for (n, ell, p, q) in [(5, 0, 0.9, 0.8), (10, 2, 0.95, 0.9), (20, 1, 0.99, 0.98)]:
            config = SchurerConfig(n=n, ell=ell)
            pq = PQPair(p, q)
            f = make_function("e0", *required_domain(config, pq))
            for x in (0.0, 0.3, 1.0):
                budget = (config.degree + 1) * config.quad_tol
                assert abs(apply(config, pq, f, x) - 1.0) <= budget

    def test_first_moment_at_zero(self):
        config = SchurerConfig(n=9, ell=1, quad_tol=1e-12)
        f = make_function("e1", *required_domain(config, PQ))
        expected = 1.0 / (pq_integer(2, PQ) * pq_integer(10, PQ))
        assert apply(config, PQ, f, 0.0) == pytest.approx(expected, abs=1e-11)

    def test_single_term_collapse_at_zero(self):
        # apply(f; 0) equals the plain quadrature of f(t/[n+1])
        config = SchurerConfig(n=6, ell=0, quad_tol=1e-12)
        denom = pq_integer(7, PQ)
        f = make_function("f_fig", *required_domain(config, PQ))
        rule = build_rule(PQ, a=1.0, tol=1e-12)
        scaled = RealFunction(lambda t: f.fn(t / denom), 0.0, rule.top_node)
        from pqbernstein.pq_quadrature import integrate

        assert apply(config, PQ, f, 0.0) == pytest.approx(
            integrate(rule, scaled), abs=1e-12
        )

    def test_matches_brute_force_reference(self):
        config = SchurerConfig(n=3, ell=1, quad_tol=1e-10)
        f = make_function("f_fig", *required_domain(config, PQ))
        for x in (0.0, 0.37, 0.9, 1.0):
            assert apply(config, PQ, f, x) == pytest.approx(
                brute_force_apply(config, PQ, f.fn, x), rel=1e-12
            )

    def test_matches_brute_force_printed_variant(self):
        config = SchurerConfig(
            n=4, ell=0, basis_variant=BasisVariant.AS_PRINTED, quad_tol=1e-10
        )
        f = make_function("e2", *required_domain(config, PQ))
        assert apply(config, PQ, f, 0.62) == pytest.approx(
            brute_force_apply(config, PQ, f.fn, 0.62), rel=1e-12
        )

    def test_p1_matches_independent_reference(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            n = int(rng.integers(2, 25))
            ell = int(rng.integers(0, 4))
            q = float(rng.uniform(0.5, 0.95))
            x = float(rng.uniform(0.0, 1.0))
            coefs = rng.uniform(-1.0, 1.0, size=4)
            pq = PQPair(1.0, q)
            config = SchurerConfig(n=n, ell=ell, quad_tol=1e-12)

            def poly(t, c=coefs):
                return c[0] + c[1] * t + c[2] * t**2 + c[3] * t**3

            ours = apply(config, pq, RealFunction(poly, *required_domain(config, pq)), x)
            ref = q_kantorovich_schurer(n, ell, q, poly, x, tol=1e-12)
            assert ours == pytest.approx(ref, abs=1e-9)

    @given(
        st.floats(min_value=-2.0, max_value=2.0),
        st.floats(min_value=-2.0, max_value=2.0),
        st.floats(min_value=0.0, max_value=1.0),
    )
    def test_linearity(self, a, b, x):
        config = SchurerConfig(n=4, ell=1)
        lo, hi = required_domain(config, PQ)
        f = make_function("e1", lo, hi)
        g = make_function("f_fig", lo, hi)
        combo = RealFunction(lambda t: a * t + b * (1.0 + np.cos(5.0 * t**2)), lo, hi)
        lhs = apply(config, PQ, combo, x)
        rhs = a * apply(config, PQ, f, x) + b * apply(config, PQ, g, x)
        assert lhs == pytest.approx(rhs, abs=1e-10)

    @given(
        st.lists(st.floats(min_value=-1.0, max_value=1.0), min_size=2, max_size=2),
        st.floats(min_value=0.0, max_value=1.0),
    )
    def test_positivity(self, roots, x):
        config = SchurerConfig(n=5, ell=0)
        lo, hi = required_domain(config, PQ)
        f = RealFunction(lambda t: (t - roots[0]) ** 2 * (t - roots[1]) ** 2, lo, hi)
        budget = (config.degree + 1) * config.quad_tol
        assert apply(config, PQ, f, x) >= -budget

    def test_monotonicity_in_f(self):
        config = SchurerConfig(n=6, ell=1)
        lo, hi = required_domain(config, PQ)
        f = make_function("e1", lo, hi)
        g = RealFunction(lambda t: t + 0.05 * (1.0 + np.sin(3.0 * t)), lo, hi)  # g >= f
        budget = 2 * (config.degree + 1) * config.quad_tol
        for x in np.linspace(0.0, 1.0, 11):
            assert apply(config, PQ, f, float(x)) <= apply(config, PQ, g, float(x)) + budget

    def test_grid_evaluation_matches_pointwise(self):
        config = SchurerConfig(n=7, ell=1)
        f = make_function("f_fig", *required_domain(config, PQ))
        xs = np.linspace(0.0, 1.0, 9)
        grid_vals = apply_on_grid(config, PQ, f, xs)
        for x, v in zip(xs, grid_vals):
            assert v == pytest.approx(apply(config, PQ, f, float(x)), rel=1e-14)

    def test_domain_violation_raises(self):
        config = SchurerConfig(n=5, ell=2)
        f = make_function("e1", 0.0, 1.0)  # required domain goes beyond 1
        with pytest.raises(DomainError):
            apply(config, PQ, f, 0.5)

    def test_x_outside_unit_interval_rejected(self):
        config = SchurerConfig(n=5, ell=0)
        f = make_function("e1", *required_domain(config, PQ))
        with pytest.raises(ValueError):
            apply(config, PQ, f, 1.5)


class TestCentralMoments:
    def test_second_nonnegative_up_to_truncation(self):
        for x in np.linspace(0.0, 1.0, 11):
            value = apply_central_moment(SchurerConfig(n=8, ell=1), PQ, float(x), 2)
            assert value >= -1e-9

    def test_first_at_zero_is_raw_first_moment(self):
        config = SchurerConfig(n=9, ell=1)
        f = make_function("e1", *required_domain(config, PQ))
        assert apply_central_moment(config, PQ, 0.0, 1) == pytest.approx(
            apply(config, PQ, f, 0.0), rel=1e-12
        )

    def test_classical_kantorovich_limit(self):
        # p=1, q ~ 1 surrogate against the classical Bernstein-Kantorovich
        # second central moment, computed by brute force
        n, x = 50, 0.3
        pq = PQPair(1.0, 0.9999)
        value = apply_central_moment(SchurerConfig(n=n, ell=0), pq, x, 2)

        classical = 0.0
        h = 1.0 / (n + 1)
        for k in range(n + 1):
            a = k * h - x
            piece = a * a + a * h + h * h / 3.0  # int_0^1 ((k+t)h - x)^2 dt
            classical += math.comb(n, k) * x**k * (1 - x) ** (n - k) * piece
        assert value > 0.0
        assert value == pytest.approx(classical, rel=0.05)

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            apply_central_moment(SchurerConfig(n=4), PQ, 0.5, 3)
