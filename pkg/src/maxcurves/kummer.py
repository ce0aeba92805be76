"""Curves y^m = f(x) over F_{q^2}: degree-one place counts and genus.

The genus comes from the ramification of the degree-m cyclic cover of the
x-line.  Rational-place counting over a critical x-value uses a closed-form
branch rule; the rule's normalization is pinned by an independent blow-up
oracle (`blowup_branch_count`), and `calibrate_branch_rule` re-runs the
comparison over the whole curve catalog.

Also here: raw affine counting for general plane models, and elliptic-curve
counting over F_p with the quadratic extension count derived from the trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import _poly
from .gf import FieldCtx, FieldElement, count_mth_roots, field_make

# ----------------------------------------------------------------------
# Kummer models
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class KummerCurve:
    """y^m = f(x) over the field carried by ``base`` (an F_{q^2} context)."""

    m: int
    f: tuple  # FieldElement coefficients, low degree first
    base: FieldCtx

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("exponent m must be at least 2")
        if self.base.p % self.m == 0 or self.m % self.base.p == 0:
            if self.m % self.base.p == 0:
                raise ValueError("p | m covers are out of scope")
        f = _poly.trim(list(self.f))
        if not f:
            raise ValueError("f must be nonzero")
        object.__setattr__(self, "f", tuple(f))
        lc, rational, bundles = _poly.irreducible_factor_profile(list(f), self.base)
        prof = MultiplicityProfile(lc, tuple(rational), tuple(bundles))
        object.__setattr__(self, "_profile", prof)
        # Geometric irreducibility: over the closure every constant is a
        # power, so f = c * g^{m'} happens exactly when m' divides every
        # root multiplicity.
        for mp in _proper_divisors_of(self.m):
            if all(r % mp == 0 for _, r in prof.rational) and all(
                r % mp == 0 for _, _, r in prof.bundles
            ):
                raise ValueError(
                    f"f is an {mp}-th power up to constants; the model is reducible"
                )

    @property
    def q2(self) -> int:
        return self.base.size

    def degree_f(self) -> int:
        return len(self.f) - 1


def _proper_divisors_of(m: int):
    return [d for d in range(2, m + 1) if m % d == 0]


def kummer_from_ints(m: int, coeffs, p: int, k: int = 2) -> KummerCurve:
    base = field_make(p, k)
    return KummerCurve(m, tuple(base.elem(c) for c in coeffs), base)


@dataclass(frozen=True)
class MultiplicityProfile:
    lc: FieldElement
    rational: tuple  # ((root, multiplicity), ...)
    bundles: tuple  # ((factor degree, factor count, multiplicity), ...)

    def total_degree(self) -> int:
        return sum(r for _, r in self.rational) + sum(
            d * n * r for d, n, r in self.bundles
        )


def multiplicity_profile(curve_or_f, base: FieldCtx | None = None) -> MultiplicityProfile:
    """Factorization shape of f over the base field.

    Roots outside the base field are reported as irreducible-factor bundles
    (degree, count, multiplicity); they carry genus but no rational places.
    """
    if isinstance(curve_or_f, KummerCurve):
        return curve_or_f._profile
    f = list(curve_or_f)
    if base is None:
        raise ValueError("base context required when passing raw coefficients")
    lc, rational, bundles = _poly.irreducible_factor_profile(f, base)
    return MultiplicityProfile(lc, tuple(rational), tuple(bundles))


# ----------------------------------------------------------------------
# genus
# ----------------------------------------------------------------------


def kummer_genus(curve: KummerCurve) -> int:
    """Genus of the nonsingular model of y^m = f(x)."""
    m = curve.m
    prof = multiplicity_profile(curve)
    two_g_minus_2 = -2 * m
    for _, r in prof.rational:
        two_g_minus_2 += m - gcd(m, r)
    for d, n, r in prof.bundles:
        two_g_minus_2 += d * n * (m - gcd(m, r))
    two_g_minus_2 += m - gcd(m, curve.degree_f())
    if two_g_minus_2 % 2 != 0:
        raise ArithmeticError("ramification sum is odd; model invariants violated")
    g = (two_g_minus_2 + 2) // 2
    if g < 0:
        raise ArithmeticError("negative genus; model invariants violated")
    return g


# ----------------------------------------------------------------------
# branch rule and blow-up oracle
# ----------------------------------------------------------------------

# Candidate normalizations for the branch rule.  The shipped convention is
# fixed by calibration against the blow-up oracle (see calibrate_branch_rule);
# "identity" is the one that survives.
BRANCH_CONVENTIONS = ("identity", "cofactor_power", "residual_power")
_ACTIVE_CONVENTION = "identity"


def _twist(c: FieldElement, m: int, r: int, convention: str) -> FieldElement:
    d = gcd(m, r)
    if convention == "identity":
        return c
    if convention == "cofactor_power":
        return c ** (m // d)
    if convention == "residual_power":
        return c ** (max(r // d, 1))
    raise ValueError(f"unknown branch convention {convention!r}")


def branch_count_rule(
    m: int, r: int, unit_value: FieldElement, convention: str | None = None
) -> int:
    """Rational places above a critical x-value.

    For a zero a of multiplicity r, unit_value = (f/(x-a)^r)(a); at infinity,
    r = deg f and unit_value = leading coefficient.
    """
    convention = convention or _ACTIVE_CONVENTION
    d = gcd(m, r)
    return count_mth_roots(_twist(unit_value, m, r, convention), d)


# sparse bivariate polynomials over a ctx: {(i_s, i_w): FieldElement}


def _biv_subst_w_times_s(u: dict) -> dict:
    return {(i + j, j): c for (i, j), c in u.items()}


def _biv_subst_s_times_w(u: dict) -> dict:
    return {(i, i + j): c for (i, j), c in u.items()}


def blowup_branch_count(m: int, r: int, unit_poly: dict, ctx: FieldCtx) -> int:
    """Independent oracle: rational branches of w^m = s^r * u(s, w) at s=0.

    unit_poly is sparse bivariate with u(0,0) != 0.  Iterated chart
    substitutions (w -> s*w when r >= m, s -> w*s otherwise) perform a
    subtractive Euclid on (m, r); at r = 0 the strict transform is smooth
    transversally and rational branches are exactly the rational solutions of
    w^m = u(0, w).
    """
    M, R, u = m, r, dict(unit_poly)
    zero = ctx.zero()
    if not u or all(c.is_zero() for c in u.values()):
        raise ValueError("unit polynomial is zero")
    c00 = u.get((0, 0), zero)
    if c00.is_zero():
        raise ValueError("unit polynomial vanishes at the center")
    while R > 0:
        if R >= M:
            u = _biv_subst_s_times_w(u)
            R -= M
        else:
            u = _biv_subst_w_times_s(u)
            M, R = M - R, R
    # terminal: w^M = u(0, w)
    gw: dict[int, FieldElement] = {}
    for (i, j), c in u.items():
        if i == 0 and not c.is_zero():
            gw[j] = gw.get(j, zero) + c
    poly = [zero] * (max(max(gw, default=0), M) + 1)
    for j, c in gw.items():
        poly[j] = poly[j] - c
    poly[M] = poly[M] + ctx.one()
    roots = _poly.roots(poly, ctx)
    return len(roots)


def _blowup_at_zero(curve: KummerCurve, a: FieldElement, r: int) -> int:
    # strict-transform unit: h(a + s) where f = (x-a)^r h
    f = list(curve.f)
    h = f
    for _ in range(r):
        h = _poly.divmod_(h, [-a, curve.base.one()])[0]
    shifted = _shift_poly(h, a)
    u = {(i, 0): c for i, c in enumerate(shifted) if not c.is_zero()}
    return blowup_branch_count(curve.m, r, u, curve.base)


def _blowup_at_infinity(curve: KummerCurve) -> int:
    d = curve.degree_f()
    m = curve.m
    htilde = list(reversed(curve.f))  # u^D f(1/u)
    dprime = -(-d // m)  # ceil
    r0 = m * dprime - d
    u = {(i, 0): c for i, c in enumerate(htilde) if not c.is_zero()}
    return blowup_branch_count(m, r0, u, curve.base)


def _shift_poly(f, a: FieldElement):
    """f(x + a) by Horner."""
    out = []
    for c in reversed(f):
        # out = out * (x + a) + c
        new = [a.ctx.zero()] * (len(out) + 1)
        for i, ci in enumerate(out):
            new[i + 1] = new[i + 1] + ci
            new[i] = new[i] + ci * a
        new[0] = new[0] + c
        out = new
    return _poly.trim(out)


def rational_places_at_critical(curve: KummerCurve, use_oracle: bool = False):
    """Per-critical-point rational place counts: list of (label, count)."""
    prof = multiplicity_profile(curve)
    out = []
    f = list(curve.f)
    for a, r in prof.rational:
        if use_oracle:
            n = _blowup_at_zero(curve, a, r)
        else:
            h = f
            for _ in range(r):
                h = _poly.divmod_(h, [-a, curve.base.one()])[0]
            n = branch_count_rule(curve.m, r, _poly.evaluate(h, a))
        out.append((str(a), n))
    if use_oracle:
        out.append(("inf", _blowup_at_infinity(curve)))
    else:
        out.append(("inf", branch_count_rule(curve.m, curve.degree_f(), prof.lc)))
    return out


def kummer_place_count(curve: KummerCurve) -> int:
    """Number of degree-one places of the smooth model of y^m = f(x)."""
    base = curve.base
    m = curve.m
    terms = [(i, c) for i, c in enumerate(curve.f) if not c.is_zero()]
    total = 0
    for a in base.elements():
        if a.is_zero():
            val = curve.f[0]
        else:
            val = base.zero()
            for e, c in terms:
                val = val + c * (a**e) if e else val + c
        if not val.is_zero():
            total += count_mth_roots(val, m)
    for _, n in rational_places_at_critical(curve):
        total += n
    return total


def calibrate_branch_rule(curves) -> list[str]:
    """Conventions that agree with the blow-up oracle on every curve given.

    Raises if the shipped convention is not among them.
    """
    surviving = list(BRANCH_CONVENTIONS)
    for curve in curves:
        prof = multiplicity_profile(curve)
        f = list(curve.f)
        for a, r in prof.rational:
            h = f
            for _ in range(r):
                h = _poly.divmod_(h, [-a, curve.base.one()])[0]
            ha = _poly.evaluate(h, a)
            oracle = _blowup_at_zero(curve, a, r)
            surviving = [
                c
                for c in surviving
                if branch_count_rule(curve.m, r, ha, convention=c) == oracle
            ]
        oracle_inf = _blowup_at_infinity(curve)
        surviving = [
            c
            for c in surviving
            if branch_count_rule(curve.m, curve.degree_f(), prof.lc, convention=c)
            == oracle_inf
        ]
        if _ACTIVE_CONVENTION not in surviving:
            raise AssertionError(
                "shipped branch-rule convention disagrees with the blow-up oracle"
            )
    return surviving


# ----------------------------------------------------------------------
# plane models (raw affine counts only)
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneModel:
    """Sparse bivariate polynomial over the base field: {(i, j): coeff}."""

    terms: tuple  # (((i, j), FieldElement), ...)
    base: FieldCtx

    def __post_init__(self):
        terms = tuple(
            ((i, j), c) for (i, j), c in self.terms if not c.is_zero()
        )
        if not terms:
            raise ValueError("plane model polynomial is zero")
        object.__setattr__(self, "terms", terms)


def plane_from_ints(terms: dict, p: int, k: int = 2) -> PlaneModel:
    base = field_make(p, k)
    return PlaneModel(tuple(((i, j), base.elem(c)) for (i, j), c in terms.items()), base)


def affine_plane_count(model: PlaneModel, ctx: FieldCtx | None = None) -> int:
    """#{(x, y) in F^2 : M(x, y) = 0} by exhaustive scan over x with a
    root count of the resulting univariate polynomial in y per fiber."""
    ctx = ctx or model.base
    by_j: dict[int, list[tuple[int, FieldElement]]] = {}
    max_j = 0
    for (i, j), c in model.terms:
        by_j.setdefault(j, []).append((i, c))
        max_j = max(max_j, j)
    total = 0
    zero = ctx.zero()
    elements = list(ctx.elements())
    for x in elements:
        coeffs = [zero] * (max_j + 1)
        for j, terms in by_j.items():
            acc = zero
            for i, c in terms:
                acc = acc + c * (x**i) if i else acc + c
            coeffs[j] = acc
        g = _poly.trim(coeffs[:])
        if not g:
            total += len(elements)  # identically zero fiber
            continue
        if len(g) == 1:
            continue
        total += len(_poly.roots(g, ctx))
    return total


def plane_symmetry_swap(model: PlaneModel) -> PlaneModel:
    return PlaneModel(tuple(((j, i), c) for (i, j), c in model.terms), model.base)


# ----------------------------------------------------------------------
# elliptic curves over F_p
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = x^3 + c2 x^2 + c1 x + c0 over F_p (odd p)."""

    p: int
    c2: int
    c1: int
    c0: int

    def __post_init__(self):
        if self.p == 2:
            raise ValueError("even characteristic not supported")
        object.__setattr__(self, "c2", self.c2 % self.p)
        object.__setattr__(self, "c1", self.c1 % self.p)
        object.__setattr__(self, "c0", self.c0 % self.p)
        if self._has_repeated_root():
            raise ValueError(f"singular reduction at p = {self.p}")

    def _has_repeated_root(self) -> bool:
        base = field_make(self.p, 1)
        g = _poly.from_ints([self.c0, self.c1, self.c2, 1], base)
        d = _poly.derivative(g)
        return _poly.degree(_poly.gcd_(g, d)) > 0

    def rhs(self, x: int) -> int:
        return (x * x * x + self.c2 * x * x + self.c1 * x + self.c0) % self.p


def elliptic_count(e: EllipticCurve) -> tuple[int, int]:
    """(N_p, t) by exhaustive scan: affine points plus one at infinity."""
    p = e.p
    n = 1
    half = (p - 1) // 2
    for x in range(p):
        c = e.rhs(x)
        if c == 0:
            n += 1
        elif pow(c, half, p) == 1:
            n += 2
    return n, p + 1 - n


def elliptic_count_ext(e: EllipticCurve) -> int:
    """N_{p^2} = p^2 + 1 - (t^2 - 2p), from the trace of the p-power map."""
    _, t = elliptic_count(e)
    return e.p**2 + 1 - (t * t - 2 * e.p)


def elliptic_ext_identity(n_p: int, p: int) -> int:
    """N_{p^2} expressed through N_p alone: N_p (2p + 2 - N_p)."""
    return n_p * (2 * p + 2 - n_p)
