"""Truncated power series over a FieldCtx, for branch expansions at curve
points.  A series is a list of coefficients for tau^0 .. tau^(prec-1).

Only what the local different computation needs: ring operations, inversion
of units, the char-p q-th power (q = p here, so it is one Frobenius map),
and Newton-Hensel solving of the sparse local curve equation.
"""

from __future__ import annotations

from .gf import FieldCtx, FieldElement


class PrecisionExhausted(ArithmeticError):
    """A valuation did not resolve within the available precision."""


def zero(ctx: FieldCtx, prec: int):
    return [ctx.zero()] * prec


def const(c: FieldElement, ctx: FieldCtx, prec: int):
    out = zero(ctx, prec)
    out[0] = c
    return out


def monomial(c: FieldElement, e: int, ctx: FieldCtx, prec: int):
    out = zero(ctx, prec)
    if e < prec:
        out[e] = c
    return out


def add(a, b):
    return [x + y for x, y in zip(a, b)]


def sub(a, b):
    return [x - y for x, y in zip(a, b)]


def mul(a, b, prec: int | None = None):
    prec = prec if prec is not None else min(len(a), len(b))
    ctx_zero = a[0].ctx.zero()
    out = [ctx_zero] * prec
    for i, ai in enumerate(a[:prec]):
        if ai.is_zero():
            continue
        jmax = prec - i
        for j, bj in enumerate(b[:jmax]):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def scale(a, c: FieldElement):
    return [x * c for x in a]


def shift(a, e: int, prec: int | None = None):
    """Multiply by tau^e."""
    prec = prec if prec is not None else len(a)
    ctx_zero = a[0].ctx.zero()
    return ([ctx_zero] * e + a)[:prec]


def inverse(a, prec: int | None = None):
    prec = prec if prec is not None else len(a)
    if a[0].is_zero():
        raise ZeroDivisionError("series has positive valuation; not a unit")
    inv0 = a[0].inverse()
    out = [inv0] + [a[0].ctx.zero()] * (prec - 1)
    for i in range(1, prec):
        acc = a[0].ctx.zero()
        for j in range(1, min(i, len(a) - 1) + 1):
            acc = acc + a[j] * out[i - j]
        out[i] = -acc * inv0
    return out


def frobenius_pow(a, prec: int | None = None):
    """a(tau)^p = sum a_i^p tau^(i p) in characteristic p."""
    prec = prec if prec is not None else len(a)
    ctx = a[0].ctx
    p = ctx.p
    out = [ctx.zero()] * prec
    for i, c in enumerate(a):
        if i * p >= prec:
            break
        if not c.is_zero():
            out[i * p] = c.frobenius(1)
    return out


def order(a) -> int | None:
    for i, c in enumerate(a):
        if not c.is_zero():
            return i
    return None


def truncate(a, prec: int):
    if len(a) >= prec:
        return a[:prec]
    return a + [a[0].ctx.zero()] * (prec - len(a))


def hensel_solve_local(coeffs: dict, ctx: FieldCtx, prec: int):
    """Solve G(tau, v) = 0 for v in tau*F[[tau]].

    G(u, v) = l1 u + l2 v + k1 u^q + k2 v^q
              + h11 u^(q+1) + h12 u^q v + h21 u v^q + h22 v^(q+1)
    with q = ctx.p and l2 a unit (coeffs keys: l1,l2,k1,k2,h11,h12,h21,h22).
    Newton iteration with precision doubling.
    """
    q = ctx.p
    l2 = coeffs["l2"]
    if l2.is_zero():
        raise ZeroDivisionError("dependent coordinate is not transverse")
    v = [ctx.zero()]
    cur = 1
    while cur < prec:
        cur = min(2 * cur, prec)
        v = truncate(v, cur)
        u = monomial(ctx.one(), 1, ctx, cur)
        uq = monomial(ctx.one(), q, ctx, cur)
        vq = frobenius_pow(v, cur)
        g = scale(u, coeffs["l1"])
        g = add(g, scale(v, l2))
        g = add(g, scale(uq, coeffs["k1"]))
        g = add(g, scale(vq, coeffs["k2"]))
        g = add(g, monomial(coeffs["h11"], q + 1, ctx, cur))
        g = add(g, scale(shift(v, q, cur), coeffs["h12"]))
        g = add(g, scale(shift(vq, 1, cur), coeffs["h21"]))
        g = add(g, scale(mul(vq, v, cur), coeffs["h22"]))
        # dG/dv = l2 + h12 u^q + h22 v^q
        dg = const(l2, ctx, cur)
        dg = add(dg, monomial(coeffs["h12"], q, ctx, cur))
        dg = add(dg, scale(vq, coeffs["h22"]))
        v = sub(v, mul(g, inverse(dg, cur), cur))
    return truncate(v, prec)
