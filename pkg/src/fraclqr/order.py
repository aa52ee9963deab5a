"""Rational fractional orders and their odd/odd approximation.

The synthesis theory requires the derivative order ``alpha = p/q`` to be a
ratio of two odd naturals with ``0 < alpha < 2`` and ``alpha != 1``.  Orders
with an even numerator or denominator are admissible inputs but must be
replaced by a nearby odd/odd fraction before synthesis; ``odd_approximate``
performs that replacement with a deterministic search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import ConfigurationError

__all__ = ["RationalOrder", "OddRationalOrder", "make_order", "odd_approximate"]


@dataclass(frozen=True)
class RationalOrder:
    """A reduced fraction p/q with 0 < p/q < 2 and p/q != 1."""

    p: int
    q: int

    def __post_init__(self):
        if self.p <= 0 or self.q <= 0:
            raise ConfigurationError("order requires positive numerator and denominator")
        if math.gcd(self.p, self.q) != 1:
            raise ConfigurationError(f"order {self.p}/{self.q} is not in lowest terms")
        if self.p == self.q:
            raise ConfigurationError("order 1 is excluded (classical damping)")
        if self.p >= 2 * self.q:
            raise ConfigurationError(
                f"order {self.p}/{self.q} = {self.p / self.q:g} is outside (0, 2)"
            )

    @property
    def value(self) -> float:
        return self.p / self.q

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def is_odd_odd(self) -> bool:
        return self.p % 2 == 1 and self.q % 2 == 1

    def __str__(self):
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class OddRationalOrder(RationalOrder):
    """A RationalOrder whose numerator and denominator are both odd."""

    def __post_init__(self):
        super().__post_init__()
        if self.p % 2 == 0 or self.q % 2 == 0:
            raise ConfigurationError(
                f"order {self.p}/{self.q} is not a ratio of odd integers"
            )


def make_order(num: int, den: int) -> RationalOrder:
    """Build a validated, reduced rational order from ``num/den``.

    Returns an ``OddRationalOrder`` when the reduced fraction has odd
    numerator and denominator, else a plain ``RationalOrder``.
    """
    if not (isinstance(num, int) and isinstance(den, int)):
        raise ConfigurationError("order numerator and denominator must be integers")
    if num <= 0 or den <= 0:
        raise ConfigurationError("order numerator and denominator must be positive")
    g = math.gcd(num, den)
    p, q = num // g, den // g
    if p % 2 == 1 and q % 2 == 1:
        return OddRationalOrder(p, q)
    return RationalOrder(p, q)


def _candidate_numerator(target: Fraction, q: int) -> int | None:
    """Nearest odd numerator to q*target; ties resolved to the smaller one."""
    t = target * q
    lo = 2 * (t.numerator // (2 * t.denominator)) + 1  # largest odd <= t, or t+1
    if lo > t:
        lo -= 2
    hi = lo + 2
    if lo < 1:
        return hi
    # exact tie comparison in rational arithmetic; smaller numerator wins ties
    return lo if t - lo <= hi - t else hi


def odd_approximate(order: RationalOrder, tol: float) -> OddRationalOrder:
    """Approximate ``order`` by an odd/odd fraction within ``tol``.

    Odd denominators are scanned in increasing size; for each, the odd
    numerator nearest to the target value is tried.  The first admissible
    pair within ``tol`` is returned (in lowest terms).  An already odd/odd
    order is returned unchanged.  Shrinking ``tol`` never increases the
    approximation error, since the candidate sequence is fixed.
    """
    if tol <= 0:
        raise ConfigurationError(f"tol must be > 0, got {tol!r}")
    if order.is_odd_odd:
        if isinstance(order, OddRationalOrder):
            return order
        return OddRationalOrder(order.p, order.q)

    target = order.fraction
    tol_frac = Fraction(tol).limit_denominator(10**15)
    # error of the nearest valid odd numerator is at most 3/q, so the scan
    # below is guaranteed to terminate
    q_max = int(3 / tol) + 2 * order.q + 3
    q = 1
    while q <= q_max:
        p = _candidate_numerator(target, q)
        if p is not None and p != q and p < 2 * q:
            err = abs(Fraction(p, q) - target)
            if err <= tol_frac:
                g = math.gcd(p, q)
                return OddRationalOrder(p // g, q // g)
        q += 2
    raise ConfigurationError(
        f"no odd/odd approximation of {order} within {tol} below denominator {q_max}"
    )
