"""Exact adjacency spectrum of gcd graphs ``Icg(D, n)`` for arbitrary n.

The eigenvalue at index j is ``sum_{d in D} c_{n/d}(j)`` where ``c_q`` is the
Ramanujan sum.  It only depends on ``gcd(j, n)``, so each value is computed
once per divisor of n and then spread over the indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

ORACLE_MAX_N = 10**6


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def totient(n: int) -> int:
    result = n
    for q, _ in factorize(n):
        result -= result // q
    return result


def mobius(n: int) -> int:
    fs = factorize(n)
    if any(k > 1 for _, k in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, k in factorize(n):
        divs = [d * q**e for d in divs for e in range(k + 1)]
    return sorted(divs)


def ramanujan_sum(q: int, j: int) -> int:
    """``c_q(j)``, the sum of the j-th powers of the primitive q-th roots of unity."""
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    g = math.gcd(j, q)
    m = q // g
    mu = mobius(m)
    if mu == 0:
        return 0
    return mu * totient(q) // totient(m)


@dataclass(frozen=True)
class GraphSpec:
    n: int
    divisors: tuple[int, ...]
    allow_large: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        divs = tuple(sorted(set(int(d) for d in self.divisors)))
        if not divs:
            raise ValueError("divisor set must be nonempty")
        for d in divs:
            if d < 1 or d >= self.n or self.n % d:
                raise ValueError(f"{d} is not a proper divisor of {self.n}")
        if self.n > ORACLE_MAX_N and not self.allow_large:
            raise ValueError(f"n={self.n} exceeds oracle cap {ORACLE_MAX_N}")
        object.__setattr__(self, "divisors", divs)


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: tuple[int, ...]
    energy: int
    degree: int

    def sorted_eigenvalues(self):
        return sorted(self.eigenvalues, reverse=True)


def eigenvalue_classes(g: GraphSpec) -> dict[int, int]:
    """Map each divisor e of n to the eigenvalue shared by all j with gcd(j, n) = e."""
    return {e: sum(ramanujan_sum(g.n // d, e) for d in g.divisors) for e in divisors(g.n)}


def spectrum_energy(g: GraphSpec) -> SpectrumResult:
    n = g.n
    classes = eigenvalue_classes(g)
    eig = tuple(classes[math.gcd(j, n)] for j in range(n))
    # phi(n/e) indices share gcd e
    energy = sum(totient(n // e) * abs(lam) for e, lam in classes.items())
    return SpectrumResult(eigenvalues=eig, energy=energy, degree=classes[n])


def dft_eigenvalues(g: GraphSpec) -> np.ndarray:
    """Eigenvalues from the FFT of the connection-set indicator, rounded to integers."""
    n = g.n
    x = np.arange(n)
    indicator = np.isin(np.gcd(x, n), g.divisors).astype(float)
    lam = np.fft.fft(indicator)
    if np.max(np.abs(lam.imag)) > 1e-6 or np.max(np.abs(lam.real - np.rint(lam.real))) > 1e-6:
        raise ArithmeticError("DFT eigenvalues are not integral within 1e-6")
    return np.rint(lam.real).astype(np.int64)


def classical_bounds(result: SpectrumResult, n: int) -> tuple[float, float]:
    """Return the Koolen-Moulton and Balakrishnan upper bounds on the energy."""
    k = result.degree
    koolen_moulton = n / 2 * (math.sqrt(n) + 1)
    balakrishnan = k + math.sqrt(k * (n - 1) * (n - k))
    return koolen_moulton, balakrishnan


def unitary_energy(n: int) -> int:
    """Energy ``2**k * phi(n)`` of the unitary Cayley graph on n vertices."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return 2 ** len(factorize(n)) * totient(n)
