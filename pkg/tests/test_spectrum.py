import cmath
import math
import random

import numpy as np
import pytest

from icg_energy.spectrum import (
    GraphSpec,
    classical_bounds,
    dft_eigenvalues,
    divisors,
    factorize,
    mobius,
    ramanujan_sum,
    spectrum_energy,
    totient,
    unitary_energy,
)


def ramanujan_direct(q, j):
    """Root-of-unity summation over the units mod q."""
    z = sum(cmath.exp(2j * math.pi * a * j / q) for a in range(1, q + 1) if math.gcd(a, q) == 1)
    return round(z.real)


def test_arithmetic_helpers():
    assert factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert [totient(n) for n in (1, 2, 9, 12, 97)] == [1, 1, 6, 4, 96]
    assert [mobius(n) for n in (1, 2, 4, 6, 30)] == [1, -1, 0, 1, -1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_ramanujan_examples():
    assert ramanujan_sum(1, 0) == 1
    assert ramanujan_sum(4, 0) == 2
    assert ramanujan_sum(6, 1) == 1
    assert ramanujan_direct(6, 1) == 1


@pytest.mark.parametrize("q", range(1, 41))
def test_ramanujan_matches_direct_sum(q):
    for j in range(-3, 2 * q):
        assert ramanujan_sum(q, j) == ramanujan_direct(q, j)


def test_ramanujan_rejects_nonpositive():
    with pytest.raises(ValueError):
        ramanujan_sum(0, 1)


def test_spectrum_examples():
    assert spectrum_energy(GraphSpec(6, (1,))).energy == 8
    res = spectrum_energy(GraphSpec(5, (1,)))
    assert res.energy == 8
    assert res.sorted_eigenvalues() == [4, -1, -1, -1, -1]
    assert spectrum_energy(GraphSpec(27, (1, 9))).energy == 64


@pytest.mark.parametrize("n, divs", [(6, (6,)), (6, (4,)), (1, (1,)), (6, ())])
def test_graphspec_rejects(n, divs):
    with pytest.raises(ValueError):
        GraphSpec(n, divs)


def test_graphspec_cap():
    with pytest.raises(ValueError):
        GraphSpec(2 * 10**6, (1,))
    assert GraphSpec(2 * 10**6, (1,), allow_large=True).n == 2 * 10**6


def random_specs(seed=1234, count=400, nmax=200):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, nmax)
        proper = divisors(n)[:-1]
        k = rng.randint(1, len(proper))
        yield GraphSpec(n, tuple(rng.sample(proper, k)))


def test_ramanujan_route_matches_dft():
    for g in random_specs():
        assert list(dft_eigenvalues(g)) == list(spectrum_energy(g).eigenvalues)


def adjacency(g):
    x = np.arange(g.n)
    diff = (x[:, None] - x[None, :]) % g.n
    return np.isin(np.gcd(diff, g.n), g.divisors).astype(float)


def test_matches_dense_eigensolver():
    for g in random_specs(seed=7, count=60, nmax=60):
        dense = np.sort(np.linalg.eigvalsh(adjacency(g)))
        exact = np.sort(np.array(spectrum_energy(g).eigenvalues, dtype=float))
        assert np.allclose(dense, exact, atol=1e-8)


def test_trace_degree_and_bounds():
    for g in random_specs(seed=99):
        res = spectrum_energy(g)
        assert len(res.eigenvalues) == g.n
        assert sum(res.eigenvalues) == 0
        assert res.degree == sum(totient(g.n // d) for d in g.divisors)
        assert res.energy % 2 == 0
        km, bal = classical_bounds(res, g.n)
        assert res.energy <= km + 1e-9
        assert res.energy <= bal + 1e-9


def test_classical_bounds_examples():
    km, _ = classical_bounds(spectrum_energy(GraphSpec(5, (1,))), 5)
    assert km == pytest.approx(2.5 * (math.sqrt(5) + 1))
    assert km >= 8
    _, bal = classical_bounds(spectrum_energy(GraphSpec(4, (1, 2))), 4)
    assert bal == pytest.approx(6.0)
    res = spectrum_energy(GraphSpec(27, (1, 9)))
    assert res.degree == 20
    _, bal = classical_bounds(res, 27)
    assert bal == pytest.approx(20 + math.sqrt(20 * 26 * 7))
    assert bal >= 64


def test_unitary_energy_examples():
    assert unitary_energy(6) == 8
    for p in (2, 3, 5, 7, 11, 13):
        assert unitary_energy(p) == 2 * (p - 1)
    assert unitary_energy(12) == 16 == spectrum_energy(GraphSpec(12, (1,))).energy


@pytest.mark.parametrize("n", range(2, 301))
def test_unitary_energy_matches_spectrum(n):
    assert spectrum_energy(GraphSpec(n, (1,))).energy == unitary_energy(n)


def test_ilic_identities():
    checked = 0
    for n in range(2, 301):
        fs = factorize(n)
        k = len(fs)
        for q, e in fs:
            if e == 1 and q < n:
                expect = 2 ** (k - 1) * q * totient(n // q)
                assert spectrum_energy(GraphSpec(n, (1, q))).energy == expect
                checked += 1
        if all(e == 1 for _, e in fs) and k >= 2:
            primes = [q for q, _ in fs]
            for i in range(k):
                for j in range(i + 1, k):
                    g = GraphSpec(n, (primes[i], primes[j]))
                    assert spectrum_energy(g).energy == 2**k * totient(n)
                    checked += 1
    assert checked > 200
