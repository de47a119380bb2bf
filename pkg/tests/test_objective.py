"""
Tests for crossfam.objective
============================

Test Organization
-----------------
- TestClosedForms: covering_value, lambdas and m_formula
- TestFNonmixed: the non-mixed objective and its gains and losses
- TestGMixed: the objective on F(2,3)
- TestFGeneral: the general first-ID objective
- TestDispatch: objective and objective_range
"""

from itertools import pairwise

import pytest

from crossfam.errors import InvalidInputError
from crossfam.families import f23_iter
from crossfam.lexset import KSet, iter_ksets
from crossfam.models import ConstructionMatch, Params, Regime
from crossfam.objective import (
    alpha_beta,
    alpha_consecutive,
    beta_consecutive,
    check_s,
    covering_value,
    f_general,
    f_nonmixed,
    f_range,
    g_mixed,
    gamma_delta,
    lambdas,
    m_formula,
    objective,
    objective_range,
    s_prime,
)
from crossfam.partner import parity_of
from tests.conftest import kset


# =============================================================================
# Closed Form Tests
# =============================================================================


class TestClosedForms:
    """Tests for the closed-form maximum."""

    def test_mixed(self, mixed: Params) -> None:
        """(6, (4,3,2)): λ₁ = 25, λ₂ = 31, the covering system wins."""
        found = m_formula(mixed)
        assert found.regime is Regime.MIXED
        assert (found.lambda1, found.lambda2, found.m_formula) == (25, 31, 31)
        assert found.argmax == (ConstructionMatch.C2,)
        assert lambdas(mixed) == (25, 31)

    def test_nonmixed(self, nonmixed: Params) -> None:
        """(5, (2,2,2)): the star (12) beats the covering value (9)."""
        found = m_formula(nonmixed)
        assert found.regime is Regime.NONMIXED
        assert (found.lambda1, found.lambda2, found.m_formula) == (12, 9, 12)
        assert found.argmax == (ConstructionMatch.C1,)
        assert covering_value(nonmixed) == 9

    def test_tie_names_both(self) -> None:
        """With k_t = 1 both constructions give the same value."""
        found = m_formula(Params(n=5, ks=(3, 3, 1)))
        assert found.lambda1 == found.lambda2
        assert found.argmax == (ConstructionMatch.C1, ConstructionMatch.C2)

    def test_free_rejected(self) -> None:
        """The free regime has no closed formula."""
        with pytest.raises(InvalidInputError, match="free"):
            m_formula(Params(n=4, ks=(3, 2, 2)))

    def test_lambdas_need_mixed(self, nonmixed: Params) -> None:
        """λ₁ and λ₂ are the mixed-regime constructions."""
        with pytest.raises(InvalidInputError):
            lambdas(nonmixed)


# =============================================================================
# Non-mixed Objective Tests
# =============================================================================


class TestFNonmixed:
    """Tests for f_nonmixed, alpha_beta and beta_consecutive."""

    @pytest.mark.parametrize(
        ("r", "value"),
        [((1, 5), 12), ((2, 3), 9), ((2, 4), 8), ((2, 5), 9)],
    )
    def test_values(self, nonmixed: Params, r: tuple[int, ...], value: int) -> None:
        """f over the first range of (5, (2,2,2))."""
        assert f_nonmixed(nonmixed, kset(5, *r)) == value

    def test_truncated_input(self, nonmixed: Params) -> None:
        """A truncated ID is restored before evaluation."""
        assert f_nonmixed(nonmixed, KSet(4, (1,))) == 12

    def test_before_star_rejected(self, nonmixed: Params) -> None:
        """IDs before the star ID are outside the domain."""
        with pytest.raises(InvalidInputError, match="star"):
            f_nonmixed(nonmixed, kset(5, 1, 4))

    def test_regime_checked(self, mixed: Params) -> None:
        """f_nonmixed refuses mixed instances."""
        with pytest.raises(InvalidInputError):
            f_nonmixed(mixed, kset(6, 1, 4, 5, 6))

    def test_alpha_beta(self, nonmixed: Params) -> None:
        """From {1,5} to {2,3}: one set gained, four lost."""
        pair = alpha_beta(nonmixed, kset(5, 1, 5), kset(5, 2, 3))
        assert (pair.gain, pair.loss, pair.delta) == (1, 4, -3)

    def test_alpha_beta_order(self, nonmixed: Params) -> None:
        """The arguments must be in lex order."""
        with pytest.raises(InvalidInputError):
            alpha_beta(nonmixed, kset(5, 2, 3), kset(5, 1, 5))

    @pytest.mark.parametrize(("g", "beta"), [((2, 3), 4), ((2, 4), 2), ((2, 5), 0)])
    def test_beta_consecutive(self, nonmixed: Params, g: tuple[int, ...], beta: int) -> None:
        """The closed form of β between consecutive IDs."""
        assert beta_consecutive(nonmixed, kset(5, *g)) == beta

    def test_beta_matches_alpha_beta(self, nonmixed: Params) -> None:
        """The closed form agrees with the computed loss along the range."""
        ids = list(iter_ksets(5, 2, kset(5, 1, 5), kset(5, 2, 5)))
        for a, b in pairwise(ids):
            assert alpha_beta(nonmixed, a, b).loss == beta_consecutive(nonmixed, b)


# =============================================================================
# Mixed Objective Tests
# =============================================================================


class TestGMixed:
    """Tests for g_mixed."""

    @pytest.mark.parametrize(
        ("g", "value"),
        [((1, 5, 6), 25), ((2, 3, 4), 26), ((2, 3, 6), 28), ((2, 5, 6), 31)],
    )
    def test_values(self, mixed: Params, g: tuple[int, ...], value: int) -> None:
        """g over F(2,3) of (6, (4,3,2))."""
        assert g_mixed(mixed, kset(6, *g)) == value

    def test_maximum_is_m(self, mixed: Params) -> None:
        """The largest g equals the closed-form maximum."""
        assert max(g_mixed(mixed, g) for g in f23_iter(mixed)) == 31

    def test_truncated_input(self, mixed: Params) -> None:
        """{2,5} over [5] stands for {2,5,6}."""
        assert g_mixed(mixed, KSet(5, (2, 5))) == 31

    def test_non_member_rejected(self, mixed: Params) -> None:
        """g is defined on F(2,3) only."""
        with pytest.raises(InvalidInputError, match="F\\(2,3\\)"):
            g_mixed(mixed, kset(6, 2, 3, 5))


# =============================================================================
# General Objective Tests
# =============================================================================


class TestFGeneral:
    """Tests for f_general, gamma_delta and alpha_consecutive."""

    @pytest.mark.parametrize(
        ("r1", "value"),
        [
            ((1, 4, 5, 6), 25),
            ((2, 3, 4, 5), 25),
            ((2, 3, 4, 6), 26),
            ((2, 3, 5, 6), 28),
            ((2, 4, 5, 6), 31),
        ],
    )
    def test_values(self, mixed: Params, r1: tuple[int, ...], value: int) -> None:
        """f with s = 2 over the first range of (6, (4,3,2))."""
        assert f_general(mixed, 2, kset(6, *r1)) == value

    def test_agrees_with_g_on_parities(self, mixed: Params) -> None:
        """f at the k₁-parity of G equals g(G)."""
        for g in f23_iter(mixed):
            g1 = parity_of(6, g, 4)
            assert g1 is not None
            assert f_general(mixed, 2, g1) == g_mixed(mixed, g)

    def test_outside_range(self, mixed: Params) -> None:
        """IDs outside the first range are rejected."""
        with pytest.raises(InvalidInputError, match="outside"):
            f_general(mixed, 2, kset(6, 1, 2, 3, 4))

    def test_gamma_delta_telescopes(self, mixed: Params) -> None:
        """gamma - delta is the change of f."""
        lo, hi = f_range(mixed, 2)
        ids = list(iter_ksets(6, 4, lo, hi))
        for a, b in pairwise(ids):
            gd = gamma_delta(mixed, 2, a, b)
            assert gd.change == f_general(mixed, 2, b) - f_general(mixed, 2, a)
            assert gd.gamma == sum(gd.alphas)

    def test_alpha_consecutive(self, mixed: Params) -> None:
        """From {1,4,5,6} to {2,3,4,5} only the first family grows."""
        gd = gamma_delta(mixed, 2, kset(6, 1, 4, 5, 6), kset(6, 2, 3, 4, 5))
        assert gd.alphas == (1, 0)
        closed = tuple(alpha_consecutive(mixed, kset(6, 2, 3, 4, 5), k) for k in (4, 3))
        assert closed == gd.alphas

    def test_s_prime(self, mixed: Params) -> None:
        """Only the first family has size k₁."""
        assert s_prime(mixed, 2) == 1
        assert s_prime(Params(n=5, ks=(4, 4, 3, 1)), 3) == 2

    @pytest.mark.parametrize("s", [0, 1, 3])
    def test_check_s(self, mixed: Params, s: int) -> None:
        """Only s = 2 is valid for (6, (4,3,2))."""
        with pytest.raises(InvalidInputError):
            check_s(mixed, s)


# =============================================================================
# Dispatch Tests
# =============================================================================


class TestDispatch:
    """Tests for objective and objective_range."""

    def test_nonmixed_uses_f_nonmixed(self, nonmixed: Params) -> None:
        """Without s the non-mixed regime evaluates f_nonmixed."""
        assert objective(nonmixed, kset(5, 2, 4)) == 8
        assert objective_range(nonmixed) == (kset(5, 1, 5), kset(5, 2, 5))

    def test_mixed_uses_f_general(self, mixed: Params) -> None:
        """The mixed regime evaluates f_general with s = 2."""
        assert objective(mixed, kset(6, 2, 4, 5, 6)) == 31
        assert objective_range(mixed) == (kset(6, 1, 4, 5, 6), kset(6, 2, 4, 5, 6))

    def test_free_rejected(self) -> None:
        """The free regime has no first-ID objective."""
        with pytest.raises(InvalidInputError):
            objective_range(Params(n=4, ks=(3, 2, 2)))
