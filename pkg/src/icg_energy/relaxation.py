"""Real-valued minimization of the pair sum over ``[0, span]``.

Allowing real exponents, the minimum of ``pair_sum(p, x)`` over r points in
``[0, span]`` is reached at ``x_1 = 0``, ``x_r = span`` with two equal outer
gaps and ``r - 3`` equal inner gaps.  Writing ``nu = p**-inner_gap`` and
``mu = p**-outer_gap``, nu is the unique root in (0, 1) of

    p**span * x**(r-1) == (1 - x)**2

and ``mu = nu / (1 - nu)``; the minimum is ``(r - 1 + mu) * mu``.

Everything here is float64.  The root is solved for the log-deviation
``u = log(1/nu) - span*log(p)/(r-1) >= 0`` instead of nu itself so that the
small differences from the equidistant configuration keep full relative
precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .energy import is_prime

MAX_BISECTIONS = 200
NEWTON_STEPS = 4


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")


def _solve_log_gap(log_delta: float, k: int) -> float:
    """Root u >= 0 of ``k*u + 2*log1p(-delta*exp(-u)) == 0``.

    The left side is strictly increasing in u, negative at 0 and nonnegative
    at ``-2*log1p(-delta)/k`` (where ``nu <= delta``), so bisection on that
    bracket always converges.
    """
    delta = math.exp(log_delta)

    def F(u):
        return k * u + 2.0 * math.log1p(-delta * math.exp(-u))

    lo, hi = 0.0, -2.0 * math.log1p(-delta) / k
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if F(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    u = 0.5 * (lo + hi)
    for _ in range(NEWTON_STEPS):
        nu = delta * math.exp(-u)
        dF = k + 2.0 * nu / (1.0 - nu)
        step = F(u) / dF
        cand = u - step
        if not (0.0 < cand <= -2.0 * math.log1p(-delta) / k) or cand == u:
            break
        u = cand
    return u


def _validate(p, span, r):
    _check_prime(p)
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    if span <= 0:
        raise ValueError(f"span must be positive, got {span}")
    # nu <= delta <= 1/2 needs span >= (r-1) log 2 / log p
    if span * math.log(p) < (r - 1) * math.log(2.0) * (1.0 - 1e-12):
        raise ValueError(
            f"span {span} below (r-1)*log(2)/log(p) = {(r - 1) * math.log(2) / math.log(p):.6g}"
        )
    log_delta = -span * math.log(p) / (r - 1)
    if math.exp(log_delta) == 0.0:
        raise ValueError(f"span {span} too large for double precision at r={r}")
    return log_delta


def solve_nu(p: int, span: float, r: int) -> float:
    """Inner ratio nu in (0, 1) with ``p**span * nu**(r-1) == (1 - nu)**2``."""
    log_delta = _validate(p, span, r)
    u = _solve_log_gap(log_delta, r - 1)
    return math.exp(log_delta - u)


@dataclass(frozen=True)
class RelaxationSolution:
    p: int
    span: float
    r: int
    product: float  # p**-span, the product of the gap ratios
    inner_ratio: float  # nu
    outer_ratio: float  # mu = nu / (1 - nu)
    uniform_ratio: float  # p**(-span/(r-1))
    minimum: float  # (r - 1 + mu) * mu
    positions: tuple[float, ...]
    log_gap: float = field(repr=False)  # log(1/nu) - span*log(p)/(r-1)


def relax(p: int, span: float, r: int) -> RelaxationSolution:
    log_delta = _validate(p, span, r)
    u = _solve_log_gap(log_delta, r - 1)
    delta = math.exp(log_delta)
    nu = math.exp(log_delta - u)
    mu = nu / (1.0 - nu)
    logp = math.log(p)
    outer_gap = (-log_delta + u + math.log1p(-nu)) / logp
    inner_gap = (-log_delta + u) / logp
    if r == 2:
        positions = (0.0, float(span))
    else:
        positions = (0.0,) + tuple(outer_gap + j * inner_gap for j in range(r - 2)) + (float(span),)
    return RelaxationSolution(
        p=p,
        span=span,
        r=r,
        product=math.exp(-span * logp),
        inner_ratio=nu,
        outer_ratio=mu,
        uniform_ratio=delta,
        minimum=(r - 1 + mu) * mu,
        positions=positions,
        log_gap=u,
    )


def chain_objective(xs: Sequence[float]) -> float:
    """``sum_{k<=i} prod_{j=k..i} x_j`` on ``[0, 1]**r``."""
    xs = [float(x) for x in xs]
    if any(not 0.0 <= x <= 1.0 for x in xs):
        raise ValueError(f"all arguments must lie in [0, 1]: {xs}")
    total = 0.0
    for k in range(len(xs)):
        prod = 1.0
        for x in xs[k:]:
            prod *= x
            total += prod
    return total


def chain_minimizer(rho: float, r: int) -> tuple[float, tuple[float, ...]]:
    """Minimum and minimizer of :func:`chain_objective` on ``x_1*...*x_r == rho``.

    Requires ``0 < rho <= 2**-r``.
    """
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if not 0.0 < rho <= 2.0**-r * (1 + 1e-12):
        raise ValueError(f"rho must lie in (0, 2**-r], got {rho}")
    if r == 1:
        return rho, (rho,)
    log_delta = math.log(rho) / r
    u = _solve_log_gap(log_delta, r)
    nu = math.exp(log_delta - u)
    mu = nu / (1.0 - nu)
    xs = (mu,) + (nu,) * (r - 2) + (mu,)
    return (r + mu) * mu, xs


def relaxed_energy_bound(p: int, s: int, r: int, normalized: bool = False) -> float:
    """Upper bound on the maximal energy over r-element divisor sets of ``p**s``."""
    if not 2 <= r <= s:
        raise ValueError(f"need 2 <= r <= s, got r={r}, s={s}")
    if r == 2:
        m = float(p) ** -(s - 1)
    else:
        m = relax(p, s - 1, r).minimum
    value = r - (p - 1) * m
    if normalized:
        return value
    return 2.0 * (p - 1) * float(p) ** (s - 1) * value


@dataclass(frozen=True)
class RatioEstimates:
    """Margins of the closeness estimates; a check holds when its margin is positive
    (strict) or nonnegative up to ``slack`` (non-strict)."""

    margins: dict
    strict: dict
    slack: float

    def holds(self, name: str) -> bool:
        m = self.margins[name]
        return m > 0 if self.strict[name] else m >= -self.slack

    @property
    def items(self) -> dict:
        groups = {}
        for name in self.margins:
            key = name.split(".")[0]
            groups[key] = groups.get(key, True) and self.holds(name)
        return groups

    @property
    def all_hold(self) -> bool:
        return all(self.holds(n) for n in self.margins)


def ratio_estimates(sol: RelaxationSolution, s: int, slack: float = 1e-12) -> RatioEstimates:
    """How far the relaxed ratios and positions stay from the equidistant ones.

    Items:
      i   delta <= mu < delta + delta**2/(1-delta)
      ii  delta - delta**2/(1+delta) <= nu < delta <= 1/p
      iii 0 < log(1/nu) - (s-1)/(r-1) log p < 3/((r-1)p)
      iv  -3/(2p) < log(1/mu) - (s-1)/(r-1) log p <= 0
      v   |alpha_j - (j-1)(s-1)/(r-1)| < 3/(p log p)
    Differences are formed from the log-deviation so they keep relative accuracy.
    """
    if sol.r < 3:
        raise ValueError("estimates need r >= 3")
    if abs(sol.span - (s - 1)) > 1e-12:
        raise ValueError(f"solution span {sol.span} does not match s-1={s - 1}")
    p, r, d = sol.p, sol.r, sol.uniform_ratio
    nu, u = sol.inner_ratio, sol.log_gap
    em = math.expm1(-u)  # nu/delta - 1
    rel_mu = (em + nu) / (1.0 - nu)  # mu/delta - 1
    outer_dev = u + math.log1p(-nu)
    step = (s - 1) / (r - 1)
    worst = max(abs(a - j * step) for j, a in enumerate(sol.positions))
    margins = {
        "i.lower": rel_mu,
        "i.upper": d / (1.0 - d) - rel_mu,
        "ii.lower": (em + d / (1.0 + d)),
        "ii.upper": -em,
        "ii.cap": (1.0 / p - d) * p,
        "iii.lower": u,
        "iii.upper": 3.0 / ((r - 1) * p) - u,
        "iv.lower": outer_dev + 3.0 / (2 * p),
        "iv.upper": -outer_dev / max(u, 1e-300),
        "v": 3.0 / (p * math.log(p)) - worst,
    }
    strict = {
        "i.lower": False,
        "i.upper": True,
        "ii.lower": False,
        "ii.upper": True,
        "ii.cap": False,
        "iii.lower": True,
        "iii.upper": True,
        "iv.lower": True,
        "iv.upper": False,
        "v": True,
    }
    return RatioEstimates(margins=margins, strict=strict, slack=slack)
