"""Exhaustive search over exponent sets with exact integer arithmetic.

Sets are visited depth-first in lexicographic order.  Along a path the
running quantities are ``W = sum p**a_k`` and the scaled pair sum
``P = sum_{k<i} p**(top - a_i + a_k)``; appending a new largest exponent a
adds ``p**(top - a) * W`` to P, so every node costs O(1) big-integer work.
The pair sum itself is ``P / p**top``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .energy import ExponentSet, PrimePowerOrder, hyper_threshold

DEFAULT_CAP = 24


class EnumerationCapError(RuntimeError):
    """Raised when a request exceeds the exhaustive enumeration cap."""


def _check_cap(width: int, cap: int):
    if width > cap:
        raise EnumerationCapError(f"exponent range {width} exceeds enumeration cap {cap}")


def _scan_first(p: int, top: int, r_lo: int, r_hi: int, first: int):
    """Scan all sets in [0, top] starting at ``first`` with sizes in [r_lo, r_hi].

    Returns ``{r: (min_scaled_pairs, [tuples], count)}``.
    """
    pw = [p**k for k in range(top + 1)]
    best = {}

    def rec(last, W, P, depth, tup):
        if depth + top - last < r_lo:
            return
        if depth >= r_lo:
            cur = best.get(depth)
            if cur is None or P < cur[0]:
                best[depth] = [P, [tup], 1 if cur is None else cur[2] + 1]
            else:
                cur[2] += 1
                if P == cur[0]:
                    cur[1].append(tup)
        if depth == r_hi:
            return
        for a in range(last + 1, top + 1):
            rec(a, W + pw[a], P + pw[top - a] * W, depth + 1, tup + (a,))

    rec(first, pw[first], 0, 1, (first,))
    return {r: tuple(v) for r, v in best.items()}


def _scan(p: int, top: int, r_lo: int, r_hi: int, workers: int | None = None):
    firsts = range(0, top + 1)
    if workers and workers > 1 and top >= 12:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(
                ex.map(_scan_first, *zip(*[(p, top, r_lo, r_hi, f) for f in firsts]))
            )
    else:
        parts = [_scan_first(p, top, r_lo, r_hi, f) for f in firsts]
    merged = {}
    for part in parts:
        for r, (P, tups, count) in part.items():
            cur = merged.get(r)
            if cur is None or P < cur[0]:
                merged[r] = [P, list(tups), count + (cur[2] if cur else 0)]
            else:
                cur[2] += count
                if P == cur[0]:
                    cur[1].extend(tups)
    for v in merged.values():
        v[1].sort()
    return merged


@dataclass(frozen=True)
class MinimizerResult:
    value: Fraction
    minimizers: list
    evaluated_count: int


@dataclass(frozen=True)
class MaxEnergyResult:
    energy: int
    normalized: Fraction
    maximal_sets: list
    per_r: dict = field(repr=False)


def min_pair_sum(p: int, top: int, r: int, cap: int = DEFAULT_CAP, workers=None) -> MinimizerResult:
    """Minimum of the pair sum over r-element sets in ``[0, top]``, with every minimizer."""
    PrimePowerOrder(p, 1)
    if not 1 <= r <= top + 1:
        raise ValueError(f"need 1 <= r <= {top + 1}, got r={r}")
    _check_cap(top + 1, cap)
    P, tups, count = _scan(p, top, r, r, workers)[r]
    return MinimizerResult(
        value=Fraction(P, p**top),
        minimizers=[ExponentSet(t) for t in tups],
        evaluated_count=count,
    )


def _energy(order: PrimePowerOrder, r: int, P: int) -> int:
    p, s = order.p, order.s
    return 2 * (p - 1) * (p ** (s - 1) * r - (p - 1) * P)


def max_energy_of_size(order: PrimePowerOrder, r: int, cap: int = DEFAULT_CAP, workers=None):
    """Maximal energy among r-element divisor sets and all sets attaining it."""
    if not 1 <= r <= order.s:
        raise ValueError(f"need 1 <= r <= {order.s}, got r={r}")
    _check_cap(order.s, cap)
    P, tups, _ = _scan(order.p, order.s - 1, r, r, workers)[r]
    return _energy(order, r, P), [ExponentSet(t) for t in tups]


def max_energy(order: PrimePowerOrder, cap: int = DEFAULT_CAP, workers=None) -> MaxEnergyResult:
    _check_cap(order.s, cap)
    scan = _scan(order.p, order.s - 1, 1, order.s, workers)
    per_r = {
        r: (_energy(order, r, P), [ExponentSet(t) for t in tups])
        for r, (P, tups, _) in sorted(scan.items())
    }
    top = max(e for e, _ in per_r.values())
    sets = sorted(
        (S for e, sets in per_r.values() if e == top for S in sets),
        key=lambda S: S.exponents,
    )
    return MaxEnergyResult(
        energy=top,
        normalized=Fraction(top, order.scale),
        maximal_sets=sets,
        per_r=per_r,
    )


def min_pair_sums(p: int, top: int, cap: int = DEFAULT_CAP, workers=None) -> dict:
    """``{r: minimum pair sum}`` over every size ``1..top+1`` in one scan."""
    _check_cap(top + 1, cap)
    return {r: Fraction(v[0], p**top) for r, v in sorted(_scan(p, top, 1, top + 1, workers).items())}


def enumerate_hyperenergetic(order: PrimePowerOrder, r: int, cap: int = DEFAULT_CAP) -> list:
    """All r-element exponent sets whose gcd graph is hyperenergetic, in lexicographic order."""
    if not 1 <= r <= order.s:
        raise ValueError(f"need 1 <= r <= {order.s}, got r={r}")
    _check_cap(order.s, cap)
    p, top = order.p, order.s - 1
    bound = hyper_threshold(p, order.s, r) * p**top
    pw = [p**k for k in range(top + 1)]
    out = []

    def rec(last, W, P, depth, tup):
        if depth == r:
            if P < bound:
                out.append(ExponentSet(tup))
            return
        for a in range(last + 1, top + 1):
            rec(a, W + pw[a], P + pw[top - a] * W, depth + 1, tup + (a,))

    rec(-1, 0, 0, 0, ())
    return out
