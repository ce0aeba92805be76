"""The projective unitary group PGU(3, q) acting on the Hermitian curve.

Elements are 3x3 matrices over F_{q^2} preserving a Hermitian form up to a
scalar, stored in a canonical projective normalization (first nonzero entry
scaled to 1), so the scalar subgroup is quotiented away structurally.

Each nonidentity element gets a geometric type (homology, tame triangle with
0 or 2 curve vertices, conjugate-triangle Singer element, elation,
non-elation unipotent, or mixed order) and a contribution i(sigma) to the
different of any quotient containing it.  The contribution is available two
ways on purpose: a classification table, and an independent local-valuation
computation that Hensel-lifts the curve branch at each fixed point and reads
off v_P(sigma(t) - t).  Test suites require the two to agree everywhere.

All fixed points of an element are rational over F_{q^6} (eigenvalues of a
3x3 matrix over F_{q^2} lie in an extension of degree at most 3), which is
why field contexts stop at degree 6 here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from math import gcd

from . import _poly, _series
from ._numbers import factorint, is_prime
from .gf import FieldCtx, FieldElement, count_mth_roots, embedding, field_make


# ----------------------------------------------------------------------
# 3x3 matrix helpers (row-major 9-tuples of FieldElements)
# ----------------------------------------------------------------------


def _mat_mul(a, b):
    return tuple(
        a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j]
        for i in range(3)
        for j in range(3)
    )


def _mat_det(m):
    return (
        m[0] * (m[4] * m[8] - m[5] * m[7])
        - m[1] * (m[3] * m[8] - m[5] * m[6])
        + m[2] * (m[3] * m[7] - m[4] * m[6])
    )


def _mat_adjugate(m):
    return (
        m[4] * m[8] - m[5] * m[7],
        m[2] * m[7] - m[1] * m[8],
        m[1] * m[5] - m[2] * m[4],
        m[5] * m[6] - m[3] * m[8],
        m[0] * m[8] - m[2] * m[6],
        m[2] * m[3] - m[0] * m[5],
        m[3] * m[7] - m[4] * m[6],
        m[1] * m[6] - m[0] * m[7],
        m[0] * m[4] - m[1] * m[3],
    )


def _mat_conj_transpose(m, q_power: int = 1):
    return tuple(m[3 * j + i].frobenius(q_power) for i in range(3) for j in range(3))


def _mat_normalize(m):
    for c in m:
        if not c.is_zero():
            inv = c.inverse()
            return tuple(x * inv for x in m)
    raise ValueError("zero matrix has no projective class")


def _mat_apply(m, v):
    return tuple(
        m[3 * i] * v[0] + m[3 * i + 1] * v[1] + m[3 * i + 2] * v[2] for i in range(3)
    )


def _mat_is_scalar(m):
    if not (m[1].is_zero() and m[2].is_zero() and m[3].is_zero()
            and m[5].is_zero() and m[6].is_zero() and m[7].is_zero()):
        return False
    return m[0] == m[4] == m[8]


def _point_normalize(v):
    for c in v:
        if not c.is_zero():
            inv = c.inverse()
            return tuple(x * inv for x in v)
    raise ValueError("zero vector is not a projective point")


def _kernel_basis(m, ctx: FieldCtx):
    """Basis of ker(m) for a 3x3 matrix over ctx (list of 3-vectors)."""
    rows = [list(m[0:3]), list(m[3:6]), list(m[6:9])]
    n = 3
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [ctx.zero()] * n
        v[fc] = ctx.one()
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


# ----------------------------------------------------------------------
# geometry
# ----------------------------------------------------------------------

_FORMS = {
    # isotropic points of "fermat" satisfy x^(q+1) + y^(q+1) + z^(q+1) = 0
    "fermat": ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    # isotropic points of "chart" satisfy x^q z + x z^q = y^(q+1)
    "chart": ((0, 0, 1), (0, -1, 0), (1, 0, 0)),
}


class HermitianGeometry:
    """The Hermitian curve of degree q+1 with its unitary polarity."""

    def __init__(self, q: int, model: str = "fermat"):
        if not is_prime(q):
            raise ValueError("q must be prime (fixed-point fields stop at F_{q^6})")
        if model not in _FORMS:
            raise ValueError(f"unknown model {model!r}")
        self.q = q
        self.model = model
        self.ctx2 = field_make(q, 2)
        self.ctx6 = field_make(q, 6)
        self.embed = embedding(self.ctx2, self.ctx6)
        self.H = tuple(self.ctx2.elem(c) for row in _FORMS[model] for c in row)
        self.H6 = tuple(self.embed(c) for c in self.H)
        if _mat_conj_transpose(self.H) != self.H:
            raise AssertionError("form matrix is not Hermitian")
        if _mat_det(self.H).is_zero():
            raise AssertionError("form matrix is degenerate")
        n = self.isotropic_count()
        if n != q**3 + 1:
            raise AssertionError(f"isotropic count {n} != q^3+1; form invalid")
        self._cache: dict = {}

    def curve_value(self, point) -> FieldElement:
        """The Hermitian polynomial sum_ij H_ij x_i^q x_j at the point."""
        ctx = point[0].ctx
        h = self.H if ctx is self.ctx2 else self.H6
        conj = [c.frobenius(1) for c in point]
        acc = ctx.zero()
        for i in range(3):
            if conj[i].is_zero():
                continue
            row = ctx.zero()
            for j in range(3):
                if not h[3 * i + j].is_zero():
                    row = row + h[3 * i + j] * point[j]
            acc = acc + conj[i] * row
        return acc

    def on_curve(self, point) -> bool:
        return self.curve_value(point).is_zero()

    def tangent_coeffs(self, point):
        """Coefficients of the tangent line at a curve point: P^{*T} H."""
        ctx = point[0].ctx
        h = self.H if ctx is self.ctx2 else self.H6
        conj = [c.frobenius(1) for c in point]
        return tuple(
            conj[0] * h[j] + conj[1] * h[3 + j] + conj[2] * h[6 + j] for j in range(3)
        )

    def polar_coeffs_column(self, point):
        """(H P)_i, the q-th-power-side gradient data at the point."""
        ctx = point[0].ctx
        h = self.H if ctx is self.ctx2 else self.H6
        return tuple(
            h[3 * i] * point[0] + h[3 * i + 1] * point[1] + h[3 * i + 2] * point[2]
            for i in range(3)
        )

    def isotropic_count(self) -> int:
        """Number of F_{q^2}-rational curve points (fibered count)."""
        q = self.q
        ctx = self.ctx2
        total = 0
        if self.model == "chart":
            for x in ctx.elements():
                c = x.frobenius(1) + x
                total += count_mth_roots(c, q + 1)
            total += 1  # (1:0:0)
        else:
            minus_one = -ctx.one()
            for x in ctx.elements():
                c = minus_one - x ** (q + 1)
                total += count_mth_roots(c, q + 1)
            total += count_mth_roots(minus_one, q + 1)  # line at infinity
        return total

    def rational_curve_points(self):
        """All F_{q^2}-points of the curve (materialized; use for small q)."""
        ctx = self.ctx2
        pts = []
        one = ctx.one()
        for x in ctx.elements():
            for y in ctx.elements():
                p = (x, y, one)
                if self.on_curve(p):
                    pts.append(p)
        zero = ctx.zero()
        for y in list(ctx.elements()):
            p = (one, y, zero)
            if self.on_curve(p):
                pts.append(p)
        if self.on_curve((zero, one, zero)):
            pts.append((zero, one, zero))
        return pts

    def line_curve_points(self, a, b):
        """Rational curve points on the line spanned by points a, b."""
        ctx = a[0].ctx
        out = []
        for mu in ctx.elements():
            p = tuple(x + mu * y for x, y in zip(a, b))
            if any(not c.is_zero() for c in p) and self.on_curve(p):
                out.append(_point_normalize(p))
        if self.on_curve(b):
            out.append(_point_normalize(b))
        seen = set()
        uniq = []
        for p in out:
            k = tuple(c.coeffs for c in p)
            if k not in seen:
                seen.add(k)
                uniq.append(p)
        return uniq

    def __repr__(self):
        return f"HermitianGeometry(q={self.q}, model={self.model!r})"


def pgu_order(q: int) -> tuple[int, dict[int, int]]:
    """|PGU(3, q)| = q^3 (q^3 + 1)(q^2 - 1), with its prime factorization."""
    n = q**3 * (q**3 + 1) * (q**2 - 1)
    return n, factorint(n)


# ----------------------------------------------------------------------
# elements
# ----------------------------------------------------------------------


class ElementType(Enum):
    IDENTITY = "Identity"
    HOMOLOGY = "Homology"
    TAME_TRIANGLE_B1 = "TameTriangleB1"
    TAME_TRIANGLE_B2 = "TameTriangleB2"
    SINGER_B3 = "SingerB3"
    ELATION = "Elation"
    NON_ELATION_UNIPOTENT = "NonElationUnipotent"
    MIXED_PD = "MixedPd"


class UnitaryElement:
    """Projective class of a unitary 3x3 matrix over F_{q^2}."""

    __slots__ = ("geom", "mat", "_order", "_etype")

    def __init__(self, geom: HermitianGeometry, mat, check: bool = True):
        mat = _mat_normalize(tuple(mat))
        if check:
            if _mat_det(mat).is_zero():
                raise ValueError("singular matrix")
            if not _is_unitary_mat(mat, geom.H):
                raise ValueError("matrix does not preserve the Hermitian form")
        self.geom = geom
        self.mat = mat
        self._order = None
        self._etype = None

    @property
    def key(self):
        return tuple(c.coeffs for c in self.mat)

    def __mul__(self, other):
        if other.geom is not self.geom:
            raise ValueError("geometry mismatch")
        return UnitaryElement(self.geom, _mat_mul(self.mat, other.mat), check=False)

    def inverse(self):
        return UnitaryElement(self.geom, _mat_adjugate(self.mat), check=False)

    def is_identity(self) -> bool:
        return _mat_is_scalar(self.mat)

    def element_order(self) -> int:
        if self._order is None:
            self._order = projective_order(self)
        return self._order

    def apply(self, point):
        """Image of a projective point; embeds the matrix if needed."""
        ctx = point[0].ctx
        if ctx is self.geom.ctx2:
            m = self.mat
        else:
            m = tuple(self.geom.embed(c) for c in self.mat)
        return _point_normalize(_mat_apply(m, point))

    def __eq__(self, other):
        return isinstance(other, UnitaryElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"UnitaryElement({[str(c) for c in self.mat]})"


def _is_unitary_mat(mat, h) -> bool:
    a = _mat_mul(_mat_mul(_mat_conj_transpose(mat), h), mat)
    lam = None
    for x, y in zip(a, h):
        if y.is_zero():
            if not x.is_zero():
                return False
        else:
            ratio = x / y
            if lam is None:
                lam = ratio
            elif ratio != lam:
                return False
    return lam is not None and not lam.is_zero()


def is_unitary(mat_or_element, geom: HermitianGeometry) -> bool:
    if isinstance(mat_or_element, UnitaryElement):
        mat = mat_or_element.mat
    else:
        mat = tuple(mat_or_element)
    if _mat_det(mat).is_zero():
        raise ValueError("singular matrix")
    return _is_unitary_mat(mat, geom.H)


def identity_element(geom: HermitianGeometry) -> UnitaryElement:
    cached = geom._cache.get("identity")
    if cached is None:
        one, zero = geom.ctx2.one(), geom.ctx2.zero()
        cached = UnitaryElement(
            geom, (one, zero, zero, zero, one, zero, zero, zero, one)
        )
        geom._cache["identity"] = cached
    return cached


def element_from_strings(geom: HermitianGeometry, rows) -> UnitaryElement:
    if len(rows) != 9:
        raise ValueError("expected 9 field-element strings, row-major")
    return UnitaryElement(geom, tuple(geom.ctx2.parse(s) for s in rows))


def element_to_strings(e: UnitaryElement) -> list[str]:
    return [str(c) for c in e.mat]


from functools import lru_cache


@lru_cache(maxsize=None)
def _order_bound(q: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    bound = 1
    for part in (q * q - 1, q**4 - 1, q**6 - 1):
        bound = bound * part // gcd(bound, part)
    bound *= q if q > 2 else 4
    return bound, tuple(factorint(bound).items())


def projective_order(e: UnitaryElement) -> int:
    """Least n with M^n scalar; on normalized classes, the element order."""
    bound, factors = _order_bound(e.geom.q)
    ident = identity_element(e.geom)
    n = bound
    for prime, exp in factors:
        for _ in range(exp):
            m = n // prime
            if _el_pow(e, m) == ident:
                n = m
            else:
                break
    return n


def _el_pow(e: UnitaryElement, n: int) -> UnitaryElement:
    result = identity_element(e.geom)
    base = e
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def element_power(e: UnitaryElement, n: int) -> UnitaryElement:
    if n < 0:
        return _el_pow(e.inverse(), -n)
    return _el_pow(e, n)


# ----------------------------------------------------------------------
# fixed points
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FixedPoint:
    coords: tuple  # normalized, over ctx2 or ctx6
    on_curve: bool
    rational: bool


@dataclass(frozen=True)
class FixedPointReport:
    points: tuple  # isolated fixed points (FixedPoint)
    line: tuple | None  # (a, b) spanning a pointwise-fixed line, or None
    line_curve_points: tuple  # rational curve points on that line

    def curve_points(self):
        out = [p for p in self.points if p.on_curve]
        out.extend(
            FixedPoint(c, True, True) for c in self.line_curve_points
        )
        return out

    def curve_point_count(self) -> int:
        return len(self.curve_points())


def _char_poly(mat, ctx: FieldCtx):
    """det(x I - M) as [c0, c1, c2, 1]."""
    tr = mat[0] + mat[4] + mat[8]
    m2 = (
        mat[0] * mat[4] - mat[1] * mat[3]
        + mat[0] * mat[8] - mat[2] * mat[6]
        + mat[4] * mat[8] - mat[5] * mat[7]
    )
    det = _mat_det(mat)
    return [-det, m2, -tr, ctx.one()]


def _fixed_point_data(e: UnitaryElement):
    """(eigenvalue, eigenvectors) pairs over ctx2 plus conjugate-triple info."""
    geom = e.geom
    ctx2, ctx6 = geom.ctx2, geom.ctx6
    chi = _char_poly(e.mat, ctx2)
    rational_roots = _poly.roots_with_multiplicity(chi, ctx2)
    out = []
    for lam, mult in rational_roots:
        shifted = tuple(
            c - (lam if i in (0, 4, 8) else ctx2.zero()) for i, c in enumerate(e.mat)
        )
        kernel = _kernel_basis(shifted, ctx2)
        out.append((lam, mult, kernel))
    total_mult = sum(m for _, m in rational_roots)
    conj_triple = []
    if total_mult == 0:
        # irreducible cubic: three conjugate eigenvalues over F_{q^6}; find
        # one root, the others are its F_{q^2}-Frobenius conjugates.
        chi6 = [geom.embed(c) for c in chi]
        lam0 = _one_root_of_split_cubic(chi6, ctx6)
        roots6 = [lam0, lam0.frobenius(2), lam0.frobenius(4)]
        mat6 = tuple(geom.embed(c) for c in e.mat)
        for lam in roots6:
            shifted = tuple(
                c - (lam if i in (0, 4, 8) else ctx6.zero())
                for i, c in enumerate(mat6)
            )
            kernel = _kernel_basis(shifted, ctx6)
            if len(kernel) != 1:
                raise AssertionError("conjugate eigenvalue with bad eigenspace")
            conj_triple.append((lam, kernel[0]))
    elif total_mult == 1:
        raise AssertionError(
            "one rational eigenvalue with an irreducible quadratic factor: "
            "impossible for a unitary matrix; classification bug"
        )
    return out, conj_triple


def _one_root_of_split_cubic(g, ctx: FieldCtx):
    """One root of a cubic known to split into distinct linear factors."""
    if ctx.size <= _poly.SCAN_LIMIT:
        rs = _poly.roots(g, ctx)
        if not rs:
            raise AssertionError("cubic did not split in the extension")
        return rs[0]
    half = (ctx.size - 1) // 2
    g = _poly.monic(g[:])
    n = 0
    while True:
        delta = ctx.from_index(n)
        n += 1
        shifted = [delta, ctx.one()]
        pw = _poly.powmod(shifted, half, g, ctx)
        pw = _poly.sub(pw, [ctx.one()])
        h = _poly.gcd_(pw, g)
        if _poly.degree(h) == 1:
            return -h[0]
        if _poly.degree(h) == 2:
            cof = _poly.divmod_(g, h)[0]
            return -cof[0] / cof[1]


def _is_rational_point(p, geom: HermitianGeometry) -> bool:
    if p[0].ctx is geom.ctx2:
        return True
    return all(c.frobenius(2) == c for c in p)


def fixed_points(e: UnitaryElement, geom: HermitianGeometry | None = None) -> FixedPointReport:
    """Eigenspace analysis: isolated fixed points and any pointwise-fixed line."""
    geom = geom or e.geom
    if e.is_identity():
        raise ValueError("the identity fixes everything")
    rational, conj_triple = _fixed_point_data(e)
    points = []
    line = None
    line_pts: tuple = ()
    for lam, mult, kernel in rational:
        if len(kernel) == 2:
            line = (
                _point_normalize(kernel[0]),
                _point_normalize(kernel[1]),
            )
            line_pts = tuple(geom.line_curve_points(*line))
        elif len(kernel) == 1:
            p = _point_normalize(kernel[0])
            points.append(FixedPoint(p, geom.on_curve(p), True))
        elif len(kernel) == 3:
            raise ValueError("the identity fixes everything")
    for lam, vec in conj_triple:
        p = _point_normalize(vec)
        points.append(
            FixedPoint(p, geom.on_curve(p), _is_rational_point(p, geom))
        )
    return FixedPointReport(tuple(points), line, line_pts)


# ----------------------------------------------------------------------
# classification
# ----------------------------------------------------------------------


def classify(e: UnitaryElement, geom: HermitianGeometry | None = None) -> ElementType:
    geom = geom or e.geom
    if e._etype is not None:
        return e._etype
    etype = _classify_uncached(e, geom)
    e._etype = etype
    return etype


def _classify_uncached(e, geom):
    n = e.element_order()
    if n == 1:
        return ElementType.IDENTITY
    p = geom.q
    ctx2 = geom.ctx2
    if n % p == 0:
        if n != p:
            return ElementType.MIXED_PD
        chi = _char_poly(e.mat, ctx2)
        lams = _poly.roots(chi, ctx2)
        if len(lams) != 1:
            raise AssertionError("order-p element without a triple eigenvalue")
        lam = lams[0]
        shifted = tuple(
            c - (lam if i in (0, 4, 8) else ctx2.zero()) for i, c in enumerate(e.mat)
        )
        kernel_dim = len(_kernel_basis(shifted, ctx2))
        if kernel_dim == 2:
            return ElementType.ELATION
        if kernel_dim == 1:
            return ElementType.NON_ELATION_UNIPOTENT
        raise AssertionError("unipotent with full kernel is the identity")
    # tame
    rational, conj_triple = _fixed_point_data(e)
    if conj_triple:
        if (p * p - p + 1) % n != 0:
            raise AssertionError(
                f"conjugate-triangle element of order {n} not dividing q^2-q+1"
            )
        return ElementType.SINGER_B3
    mults = sorted(m for _, m, _ in rational)
    if mults == [1, 2]:
        for lam, mult, kernel in rational:
            if mult == 2 and len(kernel) != 2:
                raise AssertionError("tame element is not semisimple")
        return ElementType.HOMOLOGY
    if mults == [1, 1, 1]:
        on_curve = 0
        for _, _, kernel in rational:
            pnt = _point_normalize(kernel[0])
            if geom.on_curve(pnt):
                on_curve += 1
        if on_curve == 0:
            return ElementType.TAME_TRIANGLE_B1
        if on_curve == 2:
            return ElementType.TAME_TRIANGLE_B2
        raise AssertionError(
            f"tame triangle with {on_curve} curve vertices: impossible for unitary"
        )
    raise AssertionError(f"unclassifiable eigenvalue multiplicities {mults}")


def contribution_table(e: UnitaryElement, geom: HermitianGeometry | None = None) -> int:
    """i(sigma) from the classification table."""
    geom = geom or e.geom
    q = geom.q
    etype = classify(e, geom)
    table = {
        ElementType.HOMOLOGY: q + 1,
        ElementType.TAME_TRIANGLE_B1: 0,
        ElementType.TAME_TRIANGLE_B2: 2,
        ElementType.SINGER_B3: 3,
        ElementType.ELATION: q + 2,
        ElementType.NON_ELATION_UNIPOTENT: 2,
        ElementType.MIXED_PD: 1,
    }
    if etype is ElementType.IDENTITY:
        raise ValueError("i(sigma) is defined for nonidentity elements")
    return table[etype]


# ----------------------------------------------------------------------
# valuation oracle
# ----------------------------------------------------------------------


def _branch_setup(geom: HermitianGeometry, point):
    """Chart and sparse local-equation data at a smooth curve point.

    Returns (j0, jp, jd, coeffs) where j0 is the chart index (coordinate 1),
    jp indexes the local parameter coordinate, jd the dependent one, and
    coeffs feeds _series.hensel_solve_local.
    """
    ctx = point[0].ctx
    h = geom.H if ctx is geom.ctx2 else geom.H6
    j0 = next(i for i in range(3) if not point[i].is_zero())
    point = tuple(c / point[j0] for c in point)
    others = [i for i in range(3) if i != j0]
    tangent = geom.tangent_coeffs(point)
    column = geom.polar_coeffs_column(point)
    # dependent coordinate must be transverse to the tangent line
    if not tangent[others[1]].is_zero():
        jp, jd = others
    elif not tangent[others[0]].is_zero():
        jd, jp = others
    else:
        raise AssertionError("tangent line degenerate in this chart; chart bug")
    coeffs = {
        "l1": tangent[jp],
        "l2": tangent[jd],
        "k1": column[jp],
        "k2": column[jd],
        "h11": h[3 * jp + jp],
        "h12": h[3 * jp + jd],
        "h21": h[3 * jd + jp],
        "h22": h[3 * jd + jd],
    }
    return j0, jp, jd, point, coeffs


def _action_valuation_at(e: UnitaryElement, point, prec: int) -> int | None:
    """ord_tau(sigma(t) - t) at a fixed curve point, or None if >= prec."""
    geom = e.geom
    ctx = point[0].ctx
    j0, jp, jd, point, coeffs = _branch_setup(geom, point)
    v = _series.hensel_solve_local(coeffs, ctx, prec)
    # branch in projective coordinates
    branch = [None, None, None]
    branch[j0] = _series.const(ctx.one(), ctx, prec)
    branch[jp] = _series.add(
        _series.const(point[jp], ctx, prec), _series.monomial(ctx.one(), 1, ctx, prec)
    )
    branch[jd] = _series.add(_series.const(point[jd], ctx, prec), v)
    mat = e.mat if ctx is geom.ctx2 else tuple(geom.embed(c) for c in e.mat)
    image = []
    for i in range(3):
        acc = _series.zero(ctx, prec)
        for jcol in range(3):
            c = mat[3 * i + jcol]
            if not c.is_zero():
                acc = _series.add(acc, _series.scale(branch[jcol], c))
        image.append(acc)
    w_inv = _series.inverse(image[j0], prec)
    u_image = _series.mul(image[jp], w_inv, prec)
    diff = _series.sub(
        u_image,
        _series.add(
            _series.const(point[jp], ctx, prec),
            _series.monomial(ctx.one(), 1, ctx, prec),
        ),
    )
    return _series.order(diff)


def action_valuation(e: UnitaryElement, point) -> int:
    """v_P(sigma(t_P) - t_P) at a fixed curve point P, adaptively precise."""
    geom = e.geom
    for prec in (8, geom.q + 6):
        val = _action_valuation_at(e, point, prec)
        if val is not None and val < prec - 1:
            return val
    raise _series.PrecisionExhausted(
        f"valuation at the fixed point did not resolve below precision {geom.q + 6}"
    )


def contribution_valuation(e: UnitaryElement, geom: HermitianGeometry | None = None) -> int:
    """i(sigma) as a sum of local valuations over fixed curve points."""
    geom = geom or e.geom
    if e.is_identity():
        raise ValueError("i(sigma) is defined for nonidentity elements")
    rep = fixed_points(e, geom)
    total = 0
    for fp in rep.curve_points():
        total += action_valuation(e, fp.coords)
    return total


@dataclass(frozen=True)
class ContributionReport:
    element: UnitaryElement
    i_table: int
    i_valuation: int

    @property
    def agree(self) -> bool:
        return self.i_table == self.i_valuation


def contribution_report(e: UnitaryElement) -> ContributionReport:
    return ContributionReport(e, contribution_table(e), contribution_valuation(e))


# ----------------------------------------------------------------------
# canned subgroups and random elements
# ----------------------------------------------------------------------


def translation(geom: HermitianGeometry, a, b) -> UnitaryElement:
    """(x, y) -> (x + b^q y + a, y + b) on the chart model; a^q + a = b^(q+1)."""
    if geom.model != "chart":
        raise ValueError("translations live on the chart model")
    ctx = geom.ctx2
    a, b = ctx.elem(a), ctx.elem(b)
    if a.frobenius(1) + a != b ** (geom.q + 1):
        raise ValueError("translation parameters violate a^q + a = b^(q+1)")
    one, zero = ctx.one(), ctx.zero()
    return UnitaryElement(
        geom, (one, b.frobenius(1), a, zero, one, b, zero, zero, one)
    )


def trace_zero_elements(geom: HermitianGeometry):
    """Solutions of a^q + a = 0 in F_{q^2} (the elation parameters)."""
    cached = geom._cache.get("trace_zero")
    if cached is None:
        cached = [a for a in geom.ctx2.elements() if (a.frobenius(1) + a).is_zero()]
        geom._cache["trace_zero"] = cached
    return list(cached)


def solve_translation_a(geom: HermitianGeometry, b) -> FieldElement:
    """Some a with a^q + a = b^(q+1) (deterministic: least index)."""
    target = geom.ctx2.elem(b) ** (geom.q + 1)
    for a in geom.ctx2.elements():
        if a.frobenius(1) + a == target:
            return a
    raise AssertionError("trace-type equation must be solvable; internal bug")


def elation_generators(geom: HermitianGeometry):
    zero = geom.ctx2.zero()
    gens = []
    for a in trace_zero_elements(geom):
        if not a.is_zero():
            gens.append(translation(geom, a, zero))
    return gens


def elation_rep(geom: HermitianGeometry) -> UnitaryElement:
    return elation_generators(geom)[0]


def nonelation_rep(geom: HermitianGeometry) -> UnitaryElement:
    b = geom.ctx2.one()
    return translation(geom, solve_translation_a(geom, b), b)


def diagonal_element(geom: HermitianGeometry, entries) -> UnitaryElement:
    ctx = geom.ctx2
    zero = ctx.zero()
    d = [ctx.elem(x) for x in entries]
    return UnitaryElement(
        geom, (d[0], zero, zero, zero, d[1], zero, zero, zero, d[2])
    )


def homology_rep(geom: HermitianGeometry, d: int | None = None) -> UnitaryElement:
    """diag(1, lambda, 1) with o(lambda) = d | q+1 (default q+1), chart model."""
    q = geom.q
    d = d or (q + 1)
    if (q + 1) % d != 0 or d < 2:
        raise ValueError("homology order must divide q+1 and exceed 1")
    xi = geom.ctx2.multiplicative_generator()
    lam = xi ** ((q * q - 1) // d)
    return diagonal_element(geom, (geom.ctx2.one(), lam, geom.ctx2.one()))


def torus_generator(geom: HermitianGeometry) -> UnitaryElement:
    """diag(xi^(q+1), xi, 1) of projective order q^2 - 1 (chart model)."""
    xi = geom.ctx2.multiplicative_generator()
    return diagonal_element(geom, (xi ** (geom.q + 1), xi, geom.ctx2.one()))


def weyl_element(geom: HermitianGeometry) -> UnitaryElement:
    ctx = geom.ctx2
    one, zero = ctx.one(), ctx.zero()
    if geom.model == "chart":
        return UnitaryElement(geom, (zero, zero, one, zero, -one, zero, one, zero, zero))
    # coordinate 3-cycle on the diagonal model
    return UnitaryElement(geom, (zero, zero, one, one, zero, zero, zero, one, zero))


def mixed_rep(geom: HermitianGeometry, d: int | None = None) -> UnitaryElement:
    """Commuting elation * homology product of order p*d (chart model)."""
    return elation_rep(geom) * homology_rep(geom, d)


def standard_generators(geom: HermitianGeometry):
    """Generators of the full PGU(3, q) on the chart model."""
    cached = geom._cache.get("standard_generators")
    if cached is None:
        cached = [torus_generator(geom), weyl_element(geom), nonelation_rep(geom)]
        cached.extend(elation_generators(geom)[:2])
        geom._cache["standard_generators"] = cached
    return list(cached)


def random_element(geom: HermitianGeometry, rng: random.Random, length: int = 12):
    gens = standard_generators(geom)
    e = identity_element(geom)
    for _ in range(length):
        e = e * rng.choice(gens)
    return e


def singer_generator(geom: HermitianGeometry, seed: int = 0) -> UnitaryElement:
    """Element of projective order q^2 - q + 1, by seeded random word search."""
    target = geom.q**2 - geom.q + 1
    rng = random.Random(seed)
    for _ in range(10000):
        e = random_element(geom, rng)
        if e.element_order() == target:
            return e
    raise AssertionError("no conjugate-triangle generator found; search bug")


# ----------------------------------------------------------------------
# subgroup different and quotient genus
# ----------------------------------------------------------------------


def hermitian_genus(q: int) -> int:
    return q * (q - 1) // 2


def subgroup_different(table, geom: HermitianGeometry) -> tuple[int, int]:
    """(deg Delta, quotient genus) for a closed unitary subgroup table.

    deg Delta = sum of i(sigma) over nonidentity sigma; the quotient genus is
    recovered exactly from 2g - 2 = |G|(2g' - 2) + deg Delta, with any
    non-integrality raised as an error (it signals inconsistent
    contributions, not a rounding problem).
    """
    for g in table.generators:
        if g.geom is not geom:
            raise ValueError("group table does not live on this geometry")
    deg_delta = 0
    for e in table.elements:
        if not e.is_identity():
            deg_delta += contribution_table(e, geom)
    two_g_minus_2 = 2 * hermitian_genus(geom.q) - 2
    num = two_g_minus_2 - deg_delta
    order = len(table)
    if num % order != 0:
        raise ArithmeticError(
            f"2g-2 - deg(Delta) = {num} is not divisible by |G| = {order}"
        )
    two_gq_minus_2 = num // order
    if two_gq_minus_2 % 2 != 0:
        raise ArithmeticError("quotient 2g'-2 is odd; contributions inconsistent")
    gq = (two_gq_minus_2 + 2) // 2
    if gq < 0:
        raise ArithmeticError(f"negative quotient genus {gq}")
    return deg_delta, gq
