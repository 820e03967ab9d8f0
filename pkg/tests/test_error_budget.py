import math

import numpy as np
import pytest

from vcausal import (
    DomainError,
    OpticalBudget,
    coherence_length,
    combine_quadrature,
    effective_rho,
    rho,
)

from oracles import coherence_oracle, quadrature_oracle


def rel_err(value, target):
    return abs(value - target) / abs(target)


EGO_BUDGET = OpticalBudget(
    delta_d=215e-6,
    distance=1175.0,
    lambda_d=813e-9,
    dlambda_d=70e-9,
    dlambda_F=40e-9,
)


class TestRho:
    def test_tunnel_ratio(self):
        value = rho(215e-6, 1175.0)
        assert rel_err(value, 1.8297872340425532e-7) < 1e-12
        assert rel_err(value, 1.83e-7) < 2e-4

    def test_micron_over_meter(self):
        assert rel_err(rho(1e-6, 1.0), 1e-6) < 1e-12

    def test_equal_lengths_rejected(self):
        with pytest.raises(DomainError):
            rho(1.0, 1.0)
        with pytest.raises(DomainError):
            rho(2.0, 1.0)
        with pytest.raises(DomainError):
            rho(0.0, 1.0)


class TestCoherenceLength:
    def test_filtered_down_conversion(self):
        value = coherence_length(813e-9, 40e-9)
        assert rel_err(value, coherence_oracle(813e-9, 40e-9)) < 1e-12
        assert rel_err(value, 7.2916645998648986e-6) < 1e-9
        assert rel_err(value, 7.3e-6) < 0.01

    def test_unfiltered_width(self):
        assert rel_err(coherence_length(813e-9, 70e-9), 4.1666654856370849e-6) < 1e-9

    def test_scale_free_ratio(self):
        lam = 5e-7
        assert rel_err(coherence_length(lam, lam), 2.0 * math.log(2.0) / math.pi * lam) < 1e-12

    def test_quadratic_in_wavelength_and_inverse_in_bandwidth(self):
        base = coherence_length(813e-9, 40e-9)
        assert rel_err(coherence_length(2 * 813e-9, 40e-9), 4.0 * base) < 1e-12
        assert rel_err(coherence_length(813e-9, 2 * 40e-9), base / 2.0) < 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            coherence_length(0.0, 40e-9)
        with pytest.raises(DomainError):
            coherence_length(813e-9, 0.0)


class TestCombineQuadrature:
    def test_budget_combination_in_microns(self):
        value = combine_quadrature([215.0, 7.3])
        assert rel_err(value, quadrature_oracle([215.0, 7.3])) < 1e-12
        assert round(value, 2) == 215.12

    def test_single_term_passthrough(self):
        assert combine_quadrature([0.37]) == 0.37

    def test_three_four_five(self):
        assert combine_quadrature([3.0, 4.0]) == 5.0

    def test_permutation_invariance_and_bounds(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            terms = list(rng.uniform(0.0, 10.0, rng.integers(1, 6)))
            value = combine_quadrature(terms)
            shuffled = list(terms)
            rng.shuffle(shuffled)
            assert combine_quadrature(shuffled) == pytest.approx(value, rel=1e-12)
            assert max(terms) <= value <= sum(terms) + 1e-12

    def test_monotone_in_each_term(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            terms = list(rng.uniform(0.0, 10.0, 4))
            value = combine_quadrature(terms)
            bumped = list(terms)
            bumped[int(rng.integers(0, 4))] += rng.uniform(0.1, 2.0)
            assert combine_quadrature(bumped) > value

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            combine_quadrature([1.0, -0.5])


class TestEffectiveRho:
    def test_tunnel_preset_value(self):
        assert rel_err(effective_rho(EGO_BUDGET), 1.8308392497327866e-7) < 1e-9

    def test_without_coherence_term_reduces_to_bare_ratio(self):
        bare = OpticalBudget(
            delta_d=215e-6,
            distance=1175.0,
            lambda_d=813e-9,
            dlambda_d=70e-9,
            dlambda_F=40e-9,
            include_coherence=False,
        )
        assert effective_rho(bare) == rho(215e-6, 1175.0)

    def test_dominant_extra_term(self):
        budget = OpticalBudget(
            delta_d=215e-6,
            distance=1175.0,
            lambda_d=813e-9,
            dlambda_d=70e-9,
            dlambda_F=40e-9,
            extra_terms=(("vibration", 2150e-6),),
        )
        dominant = 2150e-6 / 1175.0
        assert abs(effective_rho(budget) - dominant) / dominant < 0.005

    def test_never_below_bare_ratio(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            delta_d = rng.uniform(1e-6, 1e-3)
            extra = tuple(("x", v) for v in rng.uniform(0.0, 1e-3, rng.integers(0, 3)))
            budget = OpticalBudget(
                delta_d=delta_d,
                distance=1175.0,
                lambda_d=813e-9,
                dlambda_d=70e-9,
                dlambda_F=40e-9,
                extra_terms=extra,
            )
            assert effective_rho(budget) >= rho(delta_d, 1175.0)

    def test_filter_limited_flag(self):
        assert EGO_BUDGET.filter_limited
        wide = OpticalBudget(
            delta_d=215e-6,
            distance=1175.0,
            lambda_d=813e-9,
            dlambda_d=70e-9,
            dlambda_F=90e-9,
        )
        assert not wide.filter_limited


class TestSerialization:
    def test_round_trip_exact(self):
        budget = OpticalBudget(
            delta_d=215e-6,
            distance=1175.0,
            lambda_d=813e-9,
            dlambda_d=70e-9,
            dlambda_F=40e-9,
            extra_terms=(("vibration", 1e-5),),
            include_coherence=False,
        )
        assert OpticalBudget.from_dict(budget.to_dict()) == budget

    def test_unit_suffixed_input(self):
        budget = OpticalBudget.from_dict(
            {
                "delta_d": "215um",
                "distance": "1.175km",
                "lambda_d": "813nm",
                "dlambda_d": "70nm",
                "dlambda_F": "40nm",
            }
        )
        assert budget.delta_d == pytest.approx(215e-6, rel=1e-12)
        assert budget.distance == pytest.approx(1175.0, rel=1e-12)
