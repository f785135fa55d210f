"""Closed-form energies of gcd graphs of prime power order.

A divisor set of ``p**s`` is written through its exponents: the tuple
``(a1, ..., ar)`` stands for ``{p**a1, ..., p**ar}`` with
``0 <= a1 < ... < ar <= s - 1``.  All integer-exponent quantities are exact
(``int`` or ``fractions.Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Iterable, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


@dataclass(frozen=True)
class PrimePowerOrder:
    """The order ``n = p**s`` of a gcd graph."""

    p: int
    s: int

    def __post_init__(self):
        if not isinstance(self.p, Integral) or not is_prime(int(self.p)):
            raise ValueError(f"p must be prime, got {self.p!r}")
        if not isinstance(self.s, Integral) or self.s < 1:
            raise ValueError(f"s must be a positive integer, got {self.s!r}")

    @property
    def n(self) -> int:
        return self.p ** self.s

    @property
    def scale(self) -> int:
        """``2(p-1)p**(s-1)``, the minimal energy and the normalizing factor."""
        return 2 * (self.p - 1) * self.p ** (self.s - 1)


@dataclass(frozen=True)
class ExponentSet:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        if not exps:
            raise ValueError("exponent set must be nonempty")
        for a in exps:
            if not isinstance(a, Integral) or isinstance(a, bool):
                raise ValueError(f"exponents must be integers, got {a!r}")
        if exps[0] < 0:
            raise ValueError(f"exponents must be >= 0, got {exps[0]}")
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError(f"exponents must be strictly increasing: {exps}")
        object.__setattr__(self, "exponents", tuple(int(a) for a in exps))

    @property
    def r(self) -> int:
        return len(self.exponents)

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self):
        return len(self.exponents)

    def check_order(self, order: PrimePowerOrder) -> None:
        if self.exponents[-1] > order.s - 1:
            raise ValueError(
                f"exponent {self.exponents[-1]} out of range [0, {order.s - 1}] "
                f"for order {order.p}^{order.s}"
            )

    def divisors(self, p: int) -> tuple[int, ...]:
        return tuple(p**a for a in self.exponents)

    def __str__(self):
        return ",".join(map(str, self.exponents))


def as_exponent_set(D) -> ExponentSet:
    return D if isinstance(D, ExponentSet) else ExponentSet(tuple(D))


@dataclass(frozen=True)
class EnergyReport:
    energy: int
    normalized: Fraction
    degree: int
    hyperenergetic: bool


def pair_sum(p: int, xs: Sequence):
    """Return ``sum_{k<i} p**-(x_i - x_k)`` for a nondecreasing tuple.

    Integer (or rational-valued integral) inputs give an exact ``Fraction``;
    anything else is evaluated in floating point.
    """
    xs = list(xs)
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise ValueError(f"arguments must be nondecreasing: {xs}")
    if all(isinstance(x, Integral) for x in xs):
        top = xs[-1] if xs else 0
        # scale by p**(top - x_k) * p**(x_i - top) to keep one exact integer sum
        total = 0
        acc = 0  # sum_{k<i} p**(x_k - x_0)
        for i, x in enumerate(xs):
            if i:
                total += acc * p ** (top - x)
            acc += p ** (x - xs[0])
        return Fraction(total, p ** (top - xs[0])) if xs else Fraction(0)
    if all(isinstance(x, Rational) for x in xs) and all(
        Fraction(x).denominator == 1 for x in xs
    ):
        return pair_sum(p, [int(x) for x in xs])
    fx = [float(x) for x in xs]
    return sum(
        float(p) ** -(fx[i] - fx[k]) for k in range(len(fx)) for i in range(k + 1, len(fx))
    )


def closed_form_energy(order: PrimePowerOrder, D) -> int:
    D = as_exponent_set(D)
    D.check_order(order)
    p, s = order.p, order.s
    a = D.exponents
    inner = sum(p ** (s - a[i] + a[k] - 1) for k in range(len(a)) for i in range(k + 1, len(a)))
    return 2 * (p - 1) * (p ** (s - 1) * len(a) - (p - 1) * inner)


def normalized_energy(order: PrimePowerOrder, D) -> Fraction:
    return Fraction(closed_form_energy(order, D), order.scale)


def min_energy(order: PrimePowerOrder) -> int:
    return order.scale


def hyper_threshold(p: int, s: int, r: int) -> Fraction:
    """Bound on the pair sum below which an r-element set is hyperenergetic."""
    if r < 1 or s < 1:
        raise ValueError("r and s must be positive")
    return Fraction(1, p - 1) * (r - Fraction(p**s - 1, p ** (s - 1) * (p - 1)))


def is_hyperenergetic(order: PrimePowerOrder, D) -> bool:
    D = as_exponent_set(D)
    D.check_order(order)
    return pair_sum(order.p, D.exponents) < hyper_threshold(order.p, order.s, D.r)


def totient_prime_power(p: int, k: int) -> int:
    return 1 if k == 0 else (p - 1) * p ** (k - 1)


def degree(order: PrimePowerOrder, D) -> int:
    """Vertex degree: each divisor p**a contributes phi(p**(s-a)) neighbours."""
    D = as_exponent_set(D)
    return sum(totient_prime_power(order.p, order.s - a) for a in D)


def energy_report(order: PrimePowerOrder, D) -> EnergyReport:
    D = as_exponent_set(D)
    e = closed_form_energy(order, D)
    return EnergyReport(
        energy=e,
        normalized=Fraction(e, order.scale),
        degree=degree(order, D),
        hyperenergetic=is_hyperenergetic(order, D),
    )


def all_exponent_sets(s: int, r: int | None = None) -> Iterable[ExponentSet]:
    """Every nonempty exponent set in ``[0, s-1]`` (optionally of size r), lexicographic by size."""
    from itertools import combinations

    sizes = range(1, s + 1) if r is None else (r,)
    for k in sizes:
        for c in combinations(range(s), k):
            yield ExponentSet(c)
