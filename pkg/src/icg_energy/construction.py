"""Near-maximal divisor sets built by rounding the relaxed minimizer, and the
two-sided bracket for the normalized maximal energy."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .energy import ExponentSet, PrimePowerOrder, closed_form_energy, pair_sum
from .relaxation import relax
from .search import DEFAULT_CAP, min_pair_sums

UPPER_CONSTANT_P2 = 0.328
LOWER_CONSTANT_P2 = 0.118
LOWER_CONSTANTS_LARGE_S = {3: 0.030, 5: 0.233, 7: 0.337, 11: 0.442, 13: 0.473}
SIZE_DIVISOR_P2 = Fraction("4.09184")


def loglog_ratio(p: int) -> float:
    return math.log(math.log(p)) / math.log(p)


@dataclass(frozen=True)
class BoundsReport:
    p: int
    s: int
    L_p: float
    D_of_p: float
    C_upper: float
    C_lower: float
    lower: float
    upper: float
    guarantee: bool


def guaranteed(p: int, s: int) -> bool:
    return (p == 2 and s >= 11) or (p >= 3 and s >= 7)


def size_divisor(p: int):
    """Divisor D(p) fixing the constructed set's size; exact Fraction for p = 2."""
    if p == 2:
        return SIZE_DIVISOR_P2
    return 2.0 * (1.0 + loglog_ratio(p))


def energy_bracket(p: int, s: int) -> BoundsReport:
    """Lower and upper bounds on ``Emax(p**s) / (2(p-1)p**(s-1))``."""
    PrimePowerOrder(p, s)
    if p == 2:
        c_up, c_low = UPPER_CONSTANT_P2, LOWER_CONSTANT_P2
    elif p >= 17 or s <= 6:
        c_up, c_low = 1.0, 0.5
    else:
        c_up, c_low = 1.0, LOWER_CONSTANTS_LARGE_S[p]
    factor = (s - 1) * (1.0 - loglog_ratio(p))
    return BoundsReport(
        p=p,
        s=s,
        L_p=1.0 + loglog_ratio(p),
        D_of_p=float(size_divisor(p)),
        C_upper=c_up,
        C_lower=c_low,
        lower=c_low * factor,
        upper=c_up * factor + 1.0,
        guarantee=guaranteed(p, s),
    )


def construction_size(p: int, s: int) -> int:
    """The integer r0 with ``(s-1)/D(p) <= r0 < (s-1)/D(p) + 1``."""
    if s < 2:
        raise ValueError(f"need s >= 2, got {s}")
    return math.ceil((s - 1) / size_divisor(p))


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def _round_positions(p: int, s: int, positions) -> tuple[tuple[int, ...], bool]:
    r = len(positions)
    if r == 1:
        return (0,), False
    if r == 2:
        return (0, s - 1), False
    a = [round_half_up(x) for x in positions]
    a[0], a[-1] = 0, s - 1
    if all(y > x for x, y in zip(a, a[1:])):
        return tuple(a), False
    # collision: pin the second and second-to-last exponents, then pick each
    # interior exponent from its two neighbouring integers left to right
    if r > s:
        raise ValueError(f"cannot place {r} distinct exponents in [0, {s - 1}]")
    a = [0] * r
    a[-1] = s - 1
    a[1] = 1
    if r >= 4:
        a[-2] = s - 2
    for j in range(2, r - 2):
        lo = a[j - 1] + 1
        hi = (s - 2) - (r - 2 - j)
        x = positions[j]
        near = round_half_up(x)
        other = math.floor(x) if near > x else math.ceil(x)
        if other == near:
            other = near + 1
        for cand in (near, other):
            if lo <= cand <= hi:
                a[j] = cand
                break
        else:
            a[j] = min(max(near, lo), hi)
    if not all(y > x for x, y in zip(a, a[1:])):
        raise ValueError(f"rounding fallback failed for positions {positions}")
    return tuple(a), True


def round_positions(p: int, s: int, positions) -> ExponentSet:
    """Nearest-integer exponents for relaxed positions in ``[0, s-1]`` (ties round up)."""
    return ExponentSet(_round_positions(p, s, list(positions))[0])


@dataclass(frozen=True)
class ConstructionResult:
    p: int
    s: int
    r0: int
    positions: tuple[float, ...]
    exponents: ExponentSet
    energy: int
    normalized: Fraction
    bounds: BoundsReport
    used_fallback: bool

    @property
    def guarantee(self) -> bool:
        return self.bounds.guarantee


def construct_divisor_set(p: int, s: int) -> ConstructionResult:
    order = PrimePowerOrder(p, s)
    r0 = construction_size(p, s)
    positions = (0.0,) if r0 == 1 else relax(p, s - 1, r0).positions
    exps, fallback = _round_positions(p, s, list(positions))
    D = ExponentSet(exps)
    energy = closed_form_energy(order, D)
    return ConstructionResult(
        p=p,
        s=s,
        r0=r0,
        positions=tuple(positions),
        exponents=D,
        energy=energy,
        normalized=Fraction(energy, order.scale),
        bounds=energy_bracket(p, s),
        used_fallback=fallback,
    )


def rounding_loss(p: int, s: int, r: int) -> float:
    """Ratio of the pair sum at the rounded minimizer to the relaxed minimum."""
    if not 3 <= r <= s:
        raise ValueError(f"need 3 <= r <= s, got r={r}, s={s}")
    sol = relax(p, s - 1, r)
    D = round_positions(p, s, sol.positions)
    return float(pair_sum(p, D.exponents)) / sol.minimum


@dataclass(frozen=True)
class RefinedBracket:
    gamma: float
    lower: float
    upper: float
    per_r: dict


def refined_bracket(p: int, s: int, cap: int = DEFAULT_CAP, workers=None) -> RefinedBracket:
    """Bracket driven by the observed gap ``m_p <= p**gamma * relaxed minimum``.

    gamma is the largest ``log(m_p(s-1, r) / relaxed(s-1, r)) / log p`` over
    ``2 <= r <= s``, with the exact integral minima found by exhaustive search.
    """
    PrimePowerOrder(p, s)
    if s < 2:
        raise ValueError(f"need s >= 2, got {s}")
    exact = min_pair_sums(p, s - 1, cap=cap, workers=workers)
    per_r = {}
    for r in range(2, s + 1):
        relaxed = float(p) ** -(s - 1) if r == 2 else relax(p, s - 1, r).minimum
        per_r[r] = max(0.0, math.log(float(exact[r]) / relaxed) / math.log(p))
    gamma = max(per_r.values())
    factor = (s + 1) * (1.0 - loglog_ratio(p))
    return RefinedBracket(gamma=gamma, lower=factor / (1.0 + gamma), upper=factor + 1.0, per_r=per_r)
