import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icg_energy.energy import pair_sum
from icg_energy.relaxation import (
    chain_minimizer,
    chain_objective,
    ratio_estimates,
    relax,
    relaxed_energy_bound,
    solve_nu,
)

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23]
WIDE_GRID = [(p, s, r) for p in PRIMES for s in range(3, 31) for r in range(3, s + 1)]


def residual(p, span, r, nu):
    """Relative residual of the root equation, in 50-digit arithmetic."""
    mpmath.mp.dps = 50
    x = mpmath.mpf(nu)
    lhs = mpmath.mpf(p) ** span * x ** (r - 1)
    rhs = (1 - x) ** 2
    return float(abs(lhs - rhs) / rhs)


def test_solve_nu_examples():
    # p^4 x^2 = (1-x)^2 -> 9x = 1 - x
    assert solve_nu(3, 4, 3) == pytest.approx(0.1, rel=1e-14)
    for p, span in [(2, 1.0), (3, 2.5), (7, 10.0)]:
        nu = solve_nu(p, span, 2)
        mu = nu / (1 - nu)
        assert (1 + mu) * mu == pytest.approx(p**-span, rel=1e-13)
    nu = solve_nu(2, 10, 4)
    assert abs(2**10 * nu**3 - (1 - nu) ** 2) < 1e-12


@pytest.mark.parametrize("p, span, r", [(2, 1.5, 3), (3, 0.5, 2), (2, 0.0, 2), (4, 5, 3), (3, 5, 1)])
def test_solve_nu_rejects(p, span, r):
    with pytest.raises(ValueError):
        solve_nu(p, span, r)


def test_threshold_span_accepted():
    # span exactly (r-1) log 2 / log p puts the uniform ratio at 1/2
    nu = solve_nu(2, 3.0, 4)
    assert 0 < nu < 0.5


def test_relax_examples():
    sol = relax(3, 4, 3)
    assert sol.positions == pytest.approx((0, 2, 4), abs=1e-12)
    assert sol.minimum == pytest.approx(2 / 9 + 1 / 81, rel=1e-13)
    sol = relax(5, 3, 2)
    assert sol.positions == (0.0, 3.0)
    assert sol.minimum == pytest.approx(1 / 125, rel=1e-13)
    sol = relax(3, 16, 8)
    assert sol.positions[0] == 0 and sol.positions[-1] == 16
    assert sol.positions[1] == pytest.approx(2.2320075742, abs=1e-8)
    assert pair_sum(3, sol.positions) == pytest.approx(sol.minimum, rel=1e-10)


def test_relax_gap_structure():
    sol = relax(3, 16, 8)
    logp = math.log(3)
    gaps = [b - a for a, b in zip(sol.positions, sol.positions[1:])]
    assert gaps[0] == pytest.approx(math.log(1 / sol.outer_ratio) / logp, rel=1e-12)
    assert gaps[-1] == pytest.approx(gaps[0], rel=1e-12)
    for g in gaps[1:-1]:
        assert g == pytest.approx(math.log(1 / sol.inner_ratio) / logp, rel=1e-12)
    assert sol.outer_ratio == pytest.approx(sol.inner_ratio / (1 - sol.inner_ratio), rel=1e-15)


def test_chain_objective_examples():
    rho = 1 / 64
    assert chain_objective([rho]) == rho
    assert chain_objective([math.sqrt(rho)] * 2) == pytest.approx(rho + 2 * math.sqrt(rho))
    value, (mu, nu, mu2) = chain_minimizer(rho, 3)
    assert mu == mu2 and mu * nu * mu == pytest.approx(rho, rel=1e-13)
    assert chain_objective([mu, nu, mu]) == pytest.approx((3 + mu) * mu, rel=1e-13)
    assert value == pytest.approx((3 + mu) * mu)
    value2, xs2 = chain_minimizer(rho, 2)
    assert xs2 == pytest.approx((0.125, 0.125), rel=1e-13)
    assert value2 == pytest.approx(rho + 2 * math.sqrt(rho))


def test_chain_objective_domain():
    with pytest.raises(ValueError):
        chain_objective([0.5, 1.5])
    with pytest.raises(ValueError):
        chain_minimizer(0.2, 3)


def test_relaxed_energy_bound_examples():
    assert relaxed_energy_bound(3, 5, 2, normalized=True) == pytest.approx(2 - 2 / 81, rel=1e-15)
    assert relaxed_energy_bound(3, 5, 3, normalized=True) == pytest.approx(3 - 2 * 19 / 81, rel=1e-13)
    assert relaxed_energy_bound(2, 3, 2, normalized=True) == pytest.approx(1.75, rel=1e-15)
    assert relaxed_energy_bound(2, 3, 2) == pytest.approx(2 * 1 * 4 * 1.75)
    with pytest.raises(ValueError):
        relaxed_energy_bound(3, 3, 4)


@pytest.mark.parametrize("p, s, r", [(3, 17, 8), (2, 11, 3)])
def test_ratio_estimates_examples(p, s, r):
    est = ratio_estimates(relax(p, s - 1, r), s)
    assert est.all_hold
    assert set(est.items) == {"i", "ii", "iii", "iv", "v"}


def test_ratio_estimates_equidistant_case():
    sol = relax(3, 4, 3)
    est = ratio_estimates(sol, 5)
    assert abs(sol.positions[1] - 2) < 1e-12
    assert est.margins["v"] == pytest.approx(3 / (3 * math.log(3)), abs=1e-12)


def test_ratio_estimates_rejects_mismatched_span():
    with pytest.raises(ValueError):
        ratio_estimates(relax(3, 5, 3), 5)


def test_root_residual_wide_grid():
    for p, s, r in WIDE_GRID:
        nu = relax(p, s - 1, r).inner_ratio
        assert residual(p, s - 1, r, nu) < 1e-12, (p, s, r)


def test_ratio_estimates_wide_grid():
    for p, s, r in WIDE_GRID:
        est = ratio_estimates(relax(p, s - 1, r), s)
        assert est.all_hold, (p, s, r, est.margins)


def test_minimum_matches_pair_sum_wide_grid():
    for p, s, r in WIDE_GRID:
        sol = relax(p, s - 1, r)
        assert pair_sum(p, sol.positions) == pytest.approx(sol.minimum, rel=1e-10)


def perturb(xs, rng):
    xs = list(xs)
    while True:
        i, j = rng.sample(range(len(xs)), 2)
        t = rng.uniform(0.9, 1.1)
        if xs[i] * t <= 1 and xs[j] / t <= 1:
            xs[i] *= t
            xs[j] /= t
            return xs


@pytest.mark.parametrize("p, s, r", [(3, 17, 8), (2, 11, 3), (5, 12, 5), (23, 30, 12), (2, 20, 19)])
def test_minimizer_beats_perturbations(p, s, r):
    sol = relax(p, s - 1, r)
    xs = [p ** -(b - a) for a, b in zip(sol.positions, sol.positions[1:])]
    best = chain_objective(xs)
    rng = random.Random(2024 + r)
    for _ in range(200):
        assert chain_objective(perturb(xs, rng)) - best >= -1e-12


@settings(max_examples=200)
@given(
    st.integers(1, 9),
    st.floats(0.0, 1.0),
    st.lists(st.floats(0.5, 1.5), min_size=9, max_size=9),
)
def test_chain_minimizer_against_feasible_points(r, frac, weights):
    """Any feasible point with the same product costs at least the minimum."""
    rho = 2.0**-r * 10 ** (-3 * frac)
    value, xs = chain_minimizer(rho, r)
    assert math.prod(xs) == pytest.approx(rho, rel=1e-12)
    w = weights[:r]
    total = sum(w)
    cand = [rho ** (wi / total) for wi in w]
    assert chain_objective(cand) >= value - 1e-12
