"""Hasse-Weil maximality predicates and genus arithmetic for F_{q^2}-curves.

Covers the attained-bound count q^2 + 1 + 2qg, the three-tier genus spectrum
(top = q(q-1)/2, second = floor((q-1)^2/4), everything else at or below
floor((q^2-q+4)/6)), the wild-cover genus formula g = a1(p-1)/2 + a2*p, a
Riemann-Hurwitz evaluator over orbit data, and the 84(g-1) automorphism gate.

All quantities are exact integers; any division must be exact or the
operation raises, since non-integrality is a mathematical signal rather than
a rounding issue.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kummer
from ._numbers import is_prime


def hw_max_count(q: int, g: int) -> int:
    """Point count of an F_{q^2}-maximal curve of genus g."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return q * q + 1 + 2 * q * g


@dataclass(frozen=True)
class GenusSpectrum:
    q: int

    @property
    def g0(self) -> int:
        return self.q * (self.q - 1) // 2

    @property
    def g1(self) -> int:
        return (self.q - 1) ** 2 // 4

    @property
    def g2(self) -> int:
        return (self.q * self.q - self.q + 4) // 6

    def __post_init__(self):
        if self.q >= 3 and not (self.g2 <= self.g1 <= self.g0):
            raise AssertionError("genus spectrum ordering violated")


def spectrum_classify(q: int, g: int) -> str:
    """One of 'top', 'second', 'below_g2', 'forbidden'."""
    s = GenusSpectrum(q)
    if g == s.g0:
        return "top"
    if g == s.g1:
        return "second"
    if g <= s.g2:
        return "below_g2"
    return "forbidden"


def eq1_genus(a1: int, a2: int, p: int) -> int:
    """g = a1(p-1)/2 + a2*p for an order-p quotient datum."""
    if a1 < 0 or a2 < 0:
        raise ValueError("a1, a2 must be nonnegative")
    if not is_prime(p):
        raise ValueError("p must be prime")
    if (a1 * (p - 1)) % 2 != 0:
        raise ArithmeticError("a1(p-1) is odd; genus would not be integral")
    return a1 * (p - 1) // 2 + a2 * p


def rh_orbit_eval(group_order: int, quotient_genus: int, orbits) -> int:
    """Riemann-Hurwitz right-hand side 2g - 2 from short-orbit data.

    Each orbit is (orbit_size, tame_stab_order, wild_jump_sum): it contributes
    size*(stab - 1) tame part plus size*wild_jump_sum.
    """
    total = group_order * (2 * quotient_genus - 2)
    for size, stab, wild in orbits:
        if size <= 0 or group_order % size != 0:
            raise ValueError(f"orbit size {size} does not divide |G| = {group_order}")
        total += size * (stab - 1) + size * wild
    return total


def hurwitz_gate(aut_order: int, g: int) -> bool:
    """True iff aut_order exceeds the classical 84(g-1) bound."""
    return aut_order > 84 * (g - 1)


def is_maximal(entry) -> bool:
    """Maximality of a catalog entry: place count equals hw_max_count.

    Kummer entries are counted through the smooth model; elliptic entries
    through the extension count.  Plane entries have no countable smooth
    model here and raise.
    """
    kind = entry.kind
    if kind == "kummer":
        curve = entry.curve
        g = kummer.kummer_genus(curve)
        n = kummer.kummer_place_count(curve)
        q2 = curve.base.size
        q = _exact_sqrt(q2)
        return n == hw_max_count(q, g)
    if kind == "elliptic":
        e = entry.curve
        return kummer.elliptic_count_ext(e) == hw_max_count(e.p, 1)
    raise ValueError(f"entries of kind {kind!r} have no countable smooth model")


def _exact_sqrt(n: int) -> int:
    from math import isqrt

    r = isqrt(n)
    if r * r != n:
        raise ValueError(f"{n} is not a perfect square; base field must be F_{{q^2}}")
    return r
