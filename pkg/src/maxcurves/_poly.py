"""Univariate polynomials over a FieldCtx (dense lists, low degree first).

Used for curve coefficient work: root finding, squarefree and
distinct-degree factorization, characteristic polynomials.  Root extraction
is deterministic: small fields are scanned exhaustively, large ones use
equal-degree splitting with a fixed sequence of shifts.
"""

from __future__ import annotations

from .gf import FieldCtx, FieldElement

SCAN_LIMIT = 6000  # fields up to this size find roots by exhaustive scan


def trim(f: list[FieldElement]) -> list[FieldElement]:
    while f and f[-1].is_zero():
        f.pop()
    return f


def degree(f: list[FieldElement]) -> int:
    return len(f) - 1


def from_ints(coeffs, ctx: FieldCtx) -> list[FieldElement]:
    return trim([ctx.elem(c) for c in coeffs])


def add(f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else None
        b = g[i] if i < len(g) else None
        if a is None:
            out.append(b)
        elif b is None:
            out.append(a)
        else:
            out.append(a + b)
    return trim(out)


def neg(f):
    return [-c for c in f]

def sub(f, g):
    return add(f, neg(g))


def mul(f, g):
    if not f or not g:
        return []
    out = [f[0].ctx.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a.is_zero():
            continue
        for j, b in enumerate(g):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return trim(out)


def scale(f, c: FieldElement):
    return trim([a * c for a in f])


def divmod_(f, g):
    f = f[:]
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    inv = g[-1].inverse()
    q = [g[-1].ctx.zero()] * max(0, len(f) - dg)
    while len(f) > dg:
        c = f[-1] * inv
        off = len(f) - 1 - dg
        if not c.is_zero():
            q[off] = c
            for j in range(dg):
                f[off + j] = f[off + j] - c * g[j]
        f.pop()
        trim(f)
        if not f:
            break
    return trim(q), trim(f)


def mod(f, g):
    return divmod_(f, g)[1]


def monic(f):
    if not f:
        return f
    return scale(f, f[-1].inverse())


def gcd_(f, g):
    f, g = trim(f[:]), trim(g[:])
    while g:
        f, g = g, mod(f, g)
    return monic(f)


def powmod(base, e: int, f, ctx: FieldCtx):
    """base^e mod f."""
    result = [ctx.one()]
    base = mod(base, f)
    while e:
        if e & 1:
            result = mod(mul(result, base), f)
        base = mod(mul(base, base), f)
        e >>= 1
    return result


def x_power_mod(e: int, f, ctx: FieldCtx):
    return powmod([ctx.zero(), ctx.one()], e, f, ctx)


def evaluate(f, a: FieldElement) -> FieldElement:
    acc = a.ctx.zero()
    for c in reversed(f):
        acc = acc * a + c
    return acc


def derivative(f):
    out = []
    for i in range(1, len(f)):
        out.append(f[i] * i)
    return trim(out)


def pth_root_poly(f, ctx: FieldCtx):
    """For f with f' = 0 (so f = g(x^p) = h(x)^p with h as returned here)."""
    p = ctx.p
    out = []
    for i in range(0, len(f), p):
        # p-th root of the coefficient: c -> c^(p^(k-1))
        out.append(f[i].frobenius(ctx.k - 1))
    return trim(out)


def squarefree_decomposition(f, ctx: FieldCtx) -> list[tuple[list, int]]:
    """Return [(g_i, m_i)] with f = lc * prod g_i^{m_i}, g_i monic squarefree
    and pairwise coprime, m_i strictly increasing.  Handles char-p collapse.
    """
    f = monic(f)
    out: dict[int, list] = {}

    def rec(f, mult):
        if degree(f) < 1:
            return
        df = derivative(f)
        if not df:
            rec(pth_root_poly(f, ctx), mult * ctx.p)
            return
        c = gcd_(f, df)
        w = divmod_(f, c)[0]
        i = 1
        while degree(w) > 0:
            y = gcd_(w, c)
            fac = divmod_(w, y)[0]
            if degree(fac) > 0:
                g = out.setdefault(mult * i, [])
                g.append(fac)
            c = divmod_(c, y)[0]
            w = y
            i += 1
        if degree(c) > 0:
            rec(pth_root_poly(c, ctx), mult * ctx.p)

    rec(f, 1)
    result = []
    for m in sorted(out):
        prod = [ctx.one()]
        for fac in out[m]:
            prod = mul(prod, fac)
        result.append((monic(prod), m))
    return result


def distinct_degree_factorization(f, ctx: FieldCtx) -> list[tuple[list, int]]:
    """For monic squarefree f: [(product of irreducible factors of degree d, d)]."""
    out = []
    f = monic(f[:])
    h = [ctx.zero(), ctx.one()]  # x
    d = 0
    while degree(f) >= 1:
        d += 1
        if degree(f) < 2 * d:
            out.append((f, degree(f)))
            break
        h = powmod(h, ctx.size, f, ctx)
        diff = sub(h, [ctx.zero(), ctx.one()])
        g = gcd_(f, diff)
        if degree(g) > 0:
            out.append((g, d))
            f = divmod_(f, g)[0]
            h = mod(h, f)
    return out


def roots(f, ctx: FieldCtx) -> list[FieldElement]:
    """Distinct roots of f in ctx, sorted by coefficient tuple (deterministic)."""
    f = trim(f[:])
    if not f:
        raise ValueError("zero polynomial has every root")
    if degree(f) == 0:
        return []
    n_terms = sum(1 for c in f if not c.is_zero())
    deg = degree(f)
    # scan cost ~ size * n_terms; gcd-path cost ~ 64 * deg^2 (squarings of
    # degree-deg remainders); pick the cheaper, but even characteristic above
    # the scan limit has no splitting routine, so it must scan.
    use_scan = ctx.size <= SCAN_LIMIT and (
        ctx.p == 2 or ctx.size * n_terms <= 64 * deg * deg
    )
    if ctx.p == 2 and ctx.size > SCAN_LIMIT:
        if ctx.size > 70000:
            raise NotImplementedError("large even-characteristic root finding unused")
        use_scan = True
    if use_scan:
        ctx._ensure_dlog()  # makes a**e O(1) in the scan below
        terms = [(e, c) for e, c in enumerate(f) if not c.is_zero()]
        found = []
        for a in ctx.elements():
            if a.is_zero():
                val = f[0]
            else:
                val = ctx.zero()
                for e, c in terms:
                    val = val + (c * (a**e) if e else c)
            if val.is_zero():
                found.append(a)
        return sorted(found, key=lambda a: a.coeffs)
    # strip to the product of distinct rational linear factors
    x = [ctx.zero(), ctx.one()]
    xq = powmod(x, ctx.size, f, ctx)
    g = gcd_(sub(xq, x), f)
    out: list[FieldElement] = []
    _split_linear(g, ctx, out)
    return sorted(out, key=lambda a: a.coeffs)


def _split_linear(g, ctx: FieldCtx, out: list) -> None:
    """Split a product of distinct linear factors into roots.

    Deterministic equal-degree splitting: gcd with (x + delta)^((q-1)/2) - 1
    for delta walking the canonical element order.  Requires odd
    characteristic, which holds for every field above SCAN_LIMIT used here.
    """
    g = monic(g)
    if degree(g) <= 0:
        return
    if degree(g) == 1:
        out.append(-g[0])
        return
    if ctx.p == 2:
        raise NotImplementedError("large even-characteristic root splitting unused")
    half = (ctx.size - 1) // 2
    n = 0
    while True:
        delta = ctx.from_index(n)
        n += 1
        shifted = [g[0].ctx.elem(delta.coeffs), ctx.one()]
        pw = powmod(shifted, half, g, ctx)
        pw = sub(pw, [ctx.one()])
        h = gcd_(pw, g)
        if 0 < degree(h) < degree(g):
            _split_linear(h, ctx, out)
            _split_linear(divmod_(g, h)[0], ctx, out)
            return


def roots_with_multiplicity(f, ctx: FieldCtx) -> list[tuple[FieldElement, int]]:
    out = []
    for g, m in squarefree_decomposition(f, ctx):
        for a in roots(g, ctx):
            out.append((a, m))
    return sorted(out, key=lambda t: t[0].coeffs)


def irreducible_factor_profile(f, ctx: FieldCtx):
    """Factor f over ctx far enough for ramification bookkeeping.

    Returns (lc, rational, bundles):
      rational = [(root, multiplicity)]
      bundles  = [(degree d >= 2, number of irreducible factors, multiplicity)]
    """
    f = trim(f[:])
    if not f:
        raise ValueError("zero polynomial")
    lc = f[-1]
    rational: list[tuple[FieldElement, int]] = []
    bundles: list[tuple[int, int, int]] = []
    for g, m in squarefree_decomposition(f, ctx):
        rs = roots(g, ctx)
        rational.extend((a, m) for a in rs)
        rest = g[:]
        for a in rs:
            rest = divmod_(rest, [-a, ctx.one()])[0]
        if degree(rest) >= 1:
            for part, d in distinct_degree_factorization(rest, ctx):
                if degree(part) % d != 0:
                    raise AssertionError("distinct-degree split inconsistent")
                bundles.append((d, degree(part) // d, m))
    rational.sort(key=lambda t: t[0].coeffs)
    bundles.sort()
    return lc, rational, bundles
