"""Exact arithmetic in F_p and F_{p^k}.

A field is a :class:`FieldCtx` holding the prime p, the degree k and a
deterministically chosen monic irreducible modulus, so serialized elements
mean the same thing on every machine.  Elements are coefficient vectors in
the power basis of ``t`` (the class of x in F_p[x]/(modulus)).

For fields of at most ``DLOG_LIMIT`` elements a discrete-log table over a
fixed generator is built once; element order and m-th-root counting are then
O(1) lookups.  Larger fields fall back to generic exponentiation.
"""

from __future__ import annotations

import threading
from math import gcd

from ._numbers import factorint, is_prime

DLOG_LIMIT = 10**7

# ----------------------------------------------------------------------
# int-coefficient polynomial arithmetic mod p (dense lists, low degree first)
# ----------------------------------------------------------------------


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """a*b reduced by the monic polynomial mod, coefficients mod p."""
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    k = len(mod) - 1
    for i in range(len(res) - 1, k - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(k):
                res[i - k + j] = (res[i - k + j] - c * mod[j]) % p
    del res[k:]
    return res


def _ppowmod(a: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = a[:]
    while e:
        if e & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _ptrim(a[:]), _ptrim(b[:])
    while b:
        # a mod b with b made monic
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]
        while len(a) >= len(b):
            c = a[-1]
            if c:
                off = len(a) - len(b)
                for j in range(len(b)):
                    a[off + j] = (a[off + j] - c * b[j]) % p
            a.pop()
            _ptrim(a)
            if not a:
                break
        a, b = b, a
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _is_irreducible(mod: list[int], p: int) -> bool:
    """Monic mod of degree k: x^{p^k} == x and gcd(x^{p^i} - x, mod) = 1, i<k."""
    k = len(mod) - 1
    if k == 1:
        return True
    x = [0, 1]
    xp = x[:]
    for i in range(1, k):
        xp = _ppowmod(xp, p, mod, p)
        diff = xp[:]
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(diff, mod[:], p)
        if len(g) != 1:
            return False
    xp = _ppowmod(xp, p, mod, p)
    diff = xp[:]
    while len(diff) < 2:
        diff.append(0)
    diff[1] = (diff[1] - 1) % p
    return not _ptrim(diff)


def _least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k over F_p.

    Candidates are ordered by the coefficient vector (c_{k-1}, ..., c_0) read
    as a base-p counter, so sparse high-degree-free moduli win (e.g. t^2+1
    for F_{71^2}, t^2+2 for F_25).
    """
    if k == 1:
        return (0, 1)
    for n in range(p**k):
        # n encodes (c_{k-1}, ..., c_0) base p with c_{k-1} most significant,
        # so high-degree coefficients are minimized first.
        coeffs = []
        m = n
        for _ in range(k):
            coeffs.append(m % p)
            m //= p
        mod = coeffs + [1]
        if mod[0] == 0:
            continue
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found; internal bug")


# ----------------------------------------------------------------------
# field context
# ----------------------------------------------------------------------

_CTX_CACHE: dict[tuple[int, int], "FieldCtx"] = {}
_CTX_LOCK = threading.Lock()


def field_make(p: int, k: int = 1) -> "FieldCtx":
    """Field context for F_{p^k} with the canonical modulus (memoized)."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if not 1 <= k <= 8:
        raise ValueError(f"extension degree k = {k} out of supported range 1..8")
    key = (p, k)
    with _CTX_LOCK:
        ctx = _CTX_CACHE.get(key)
        if ctx is None:
            ctx = FieldCtx(p, k, _least_irreducible(p, k))
            _CTX_CACHE[key] = ctx
    return ctx


class FieldCtx:
    """Immutable context for F_{p^k}; shareable across threads."""

    __slots__ = (
        "p",
        "k",
        "modulus",
        "size",
        "_dlog_lock",
        "_exp",
        "_log",
        "_gen",
        "_frob_rows",
        "_unit_factors",
    )

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.size = p**k
        self._dlog_lock = threading.Lock()
        self._exp = None
        self._log = None
        self._gen = None
        self._frob_rows = None
        self._unit_factors = None

    # -- construction of elements ------------------------------------

    def elem(self, value) -> "FieldElement":
        """Element from an int (prime-subfield value), coefficient list, or
        a string like ``"3+2*t"``."""
        if isinstance(value, FieldElement):
            if value.ctx is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, int):
            coeffs = [value % self.p] + [0] * (self.k - 1)
            return FieldElement(self, tuple(coeffs))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise ValueError("coefficient vector longer than the degree")
        coeffs += [0] * (self.k - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    def one(self) -> "FieldElement":
        return self.elem(1)

    def gen(self) -> "FieldElement":
        """The power-basis generator t (for k = 1 this is just 1)."""
        if self.k == 1:
            return self.one()
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def elements(self):
        """All field elements, in index order (lexicographic from c_0 up)."""
        for n in range(self.size):
            yield self.from_index(n)

    def from_index(self, n: int) -> "FieldElement":
        coeffs = []
        for _ in range(self.k):
            coeffs.append(n % self.p)
            n //= self.p
        return FieldElement(self, tuple(coeffs))

    def index(self, a: "FieldElement") -> int:
        n = 0
        for c in reversed(a.coeffs):
            n = n * self.p + c
        return n

    def parse(self, s: str) -> "FieldElement":
        """Parse ``"c0+c1*t+c2*t^2"`` (spaces allowed, missing terms zero)."""
        coeffs = [0] * self.k
        s = s.replace(" ", "").replace("-", "+-")
        for term in s.split("+"):
            if not term:
                continue
            if "t" in term:
                head, _, tail = term.partition("t")
                c = head.rstrip("*")
                coeff = int(c) if c not in ("", "-") else (-1 if c == "-" else 1)
                power = int(tail[1:]) if tail.startswith("^") else 1
            else:
                coeff, power = int(term), 0
            if power >= self.k:
                raise ValueError(f"term exponent {power} too large for degree {self.k}")
            coeffs[power] = (coeffs[power] + coeff) % self.p
        return FieldElement(self, tuple(coeffs))

    # -- discrete-log machinery ---------------------------------------

    def _ensure_dlog(self) -> bool:
        if self.size > DLOG_LIMIT:
            return False
        if self._exp is not None:
            return True
        with self._dlog_lock:
            if self._exp is not None:
                return True
            gen = self._find_generator()
            size = self.size
            exp = [0] * (size - 1)
            log = [-1] * size
            cur = self.one()
            for i in range(size - 1):
                idx = self.index(cur)
                exp[i] = idx
                log[idx] = i
                cur = cur * gen
            self._gen = gen
            self._exp = exp
            self._log = log
        return True

    def _find_generator(self) -> "FieldElement":
        n = self.size - 1
        prime_divs = list(factorint(n))
        for idx in range(1, self.size):
            a = self.from_index(idx)
            if a.is_zero():
                continue
            if all((a ** (n // q)) != self.one() for q in prime_divs):
                return a
        raise AssertionError("no multiplicative generator found; internal bug")

    def multiplicative_generator(self) -> "FieldElement":
        if self._ensure_dlog():
            return self._gen
        return self._find_generator()

    def dlog(self, a: "FieldElement") -> int:
        if not self._ensure_dlog():
            raise ValueError("field too large for discrete-log table")
        i = self._log[self.index(a)]
        if i < 0:
            raise ZeroDivisionError("dlog of zero")
        return i

    def _frobenius_rows(self):
        # row i = coefficient vector of t^(i*p) mod modulus
        if self._frob_rows is None:
            tp = _ppowmod([0, 1], self.p, list(self.modulus), self.p)
            rows = []
            cur = [1]
            for _ in range(self.k):
                row = cur + [0] * (self.k - len(cur))
                rows.append(tuple(row))
                cur = _pmulmod(cur, tp, list(self.modulus), self.p)
            self._frob_rows = tuple(rows)
        return self._frob_rows

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k}, modulus={list(self.modulus)})"


class FieldElement:
    """Element of a FieldCtx; immutable, hashable, comparable by coeffs."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            if isinstance(other, int):
                return self.ctx.elem(other)
            raise TypeError(f"cannot combine FieldElement with {type(other)!r}")
        if other.ctx is not self.ctx:
            raise ValueError("field context mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        p = self.ctx.p
        return FieldElement(
            self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        return self.ctx.elem(other) - self

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        ctx = self.ctx
        p = ctx.p
        a, b = self.coeffs, other.coeffs
        if ctx.k == 1:
            return FieldElement(ctx, ((a[0] * b[0]) % p,))
        if ctx.k == 2:
            m0, m1 = ctx.modulus[0], ctx.modulus[1]
            hi = a[1] * b[1]
            c0 = (a[0] * b[0] - hi * m0) % p
            c1 = (a[0] * b[1] + a[1] * b[0] - hi * m1) % p
            return FieldElement(ctx, (c0, c1))
        res = _pmulmod(list(a), list(b), list(ctx.modulus), p)
        res += [0] * (ctx.k - len(res))
        return FieldElement(ctx, tuple(res))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        ctx = self.ctx
        if ctx.k == 1:
            return FieldElement(ctx, (pow(self.coeffs[0], ctx.p - 2, ctx.p),))
        # extended Euclid in F_p[x] against the modulus
        p = ctx.p
        r0, r1 = list(ctx.modulus), _ptrim(list(self.coeffs))
        s0, s1 = [], [1]
        while r1:
            inv = pow(r1[-1], p - 2, p)
            q: list[int] = [0] * (len(r0) - len(r1) + 1) if len(r0) >= len(r1) else []
            r = r0[:]
            while len(r) >= len(r1) and r:
                c = (r[-1] * inv) % p
                off = len(r) - len(r1)
                if c:
                    q[off] = c
                    for j in range(len(r1)):
                        r[off + j] = (r[off + j] - c * r1[j]) % p
                r.pop()
                _ptrim(r)
            # s = s0 - q*s1
            qs1 = [0] * (len(q) + len(s1) - 1) if q and s1 else []
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        qs1[i + j] = (qs1[i + j] + qi * sj) % p
            s = [0] * max(len(s0), len(qs1))
            for i, c in enumerate(s0):
                s[i] = c
            for i, c in enumerate(qs1):
                s[i] = (s[i] - c) % p
            r0, r1 = _ptrim(r1[:]), _ptrim(r)
            s0, s1 = s1, _ptrim(s)
        # r0 is a nonzero constant gcd
        c_inv = pow(r0[0], p - 2, p)
        out = [(c * c_inv) % p for c in s0]
        out += [0] * (ctx.k - len(out))
        return FieldElement(ctx, tuple(out[: ctx.k]))

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.ctx.elem(other) / self

    def __pow__(self, e: int) -> "FieldElement":
        ctx = self.ctx
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return ctx.one()
        if self.is_zero():
            return ctx.zero()
        n = ctx.size - 1
        e %= n
        if e == 0:
            return ctx.one()
        if ctx._exp is not None:
            return ctx.from_index(ctx._exp[(ctx._log[ctx.index(self)] * e) % n])
        result = ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self, times: int = 1) -> "FieldElement":
        """x -> x^(p^times)."""
        ctx = self.ctx
        times %= ctx.k
        out = self
        rows = ctx._frobenius_rows()
        p = ctx.p
        for _ in range(times):
            acc = [0] * ctx.k
            for i, c in enumerate(out.coeffs):
                if c:
                    row = rows[i]
                    for j in range(ctx.k):
                        acc[j] = (acc[j] + c * row[j]) % p
            out = FieldElement(ctx, tuple(acc))
        return out

    def as_int(self) -> int:
        """Prime-subfield value; raises if the element is not in F_p."""
        if any(self.coeffs[1:]):
            raise ValueError("element not in the prime subfield")
        return self.coeffs[0]

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t" if c != 1 else "t")
            else:
                terms.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"<{self} in F_{self.ctx.p}^{self.ctx.k}>"


# ----------------------------------------------------------------------
# module operations
# ----------------------------------------------------------------------


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Named dispatch for the four field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def element_order(a: FieldElement) -> int:
    """Least n >= 1 with a^n = 1; divides p^k - 1."""
    if a.is_zero():
        raise ZeroDivisionError("order of zero is undefined")
    ctx = a.ctx
    n = ctx.size - 1
    if ctx._ensure_dlog():
        return n // gcd(n, ctx.dlog(a))
    order = n
    for q, e in factorint(n).items():
        for _ in range(e):
            if a ** (order // q) == ctx.one():
                order //= q
            else:
                break
    return order


def count_mth_roots(c: FieldElement, m: int) -> int:
    """#{y in the field : y^m = c}."""
    if m <= 0:
        raise ValueError("m must be positive")
    ctx = c.ctx
    if c.is_zero():
        return 1
    n = ctx.size - 1
    d = gcd(m, n)
    if ctx._ensure_dlog():
        return d if ctx.dlog(c) % d == 0 else 0
    return d if c ** (n // d) == ctx.one() else 0


def norm_to(a: FieldElement, d: int) -> FieldElement:
    """Norm from F_{p^k} down to F_{p^d} (d | k); result lies in the subfield."""
    k = a.ctx.k
    if k % d != 0:
        raise ValueError(f"{d} does not divide the extension degree {k}")
    out = a.ctx.one()
    for i in range(k // d):
        out = out * a.frobenius(d * i)
    return out


def trace_to(a: FieldElement, d: int) -> FieldElement:
    """Trace from F_{p^k} down to F_{p^d} (d | k)."""
    k = a.ctx.k
    if k % d != 0:
        raise ValueError(f"{d} does not divide the extension degree {k}")
    out = a.ctx.zero()
    for i in range(k // d):
        out = out + a.frobenius(d * i)
    return out


def in_subfield(a: FieldElement, d: int) -> bool:
    """True iff a lies in the subfield F_{p^d} (d | k)."""
    if a.ctx.k % d != 0:
        raise ValueError(f"{d} does not divide the extension degree {a.ctx.k}")
    return a.frobenius(d) == a


_EMBED_CACHE: dict[tuple[int, int], object] = {}


def embedding(small: FieldCtx, big: FieldCtx):
    """Deterministic embedding F_{p^j} -> F_{p^k} for j | k.

    The image of the small generator is the lexicographically least root of
    the small modulus inside the big field, so the embedding is reproducible.
    """
    if small.p != big.p or big.k % small.k != 0:
        raise ValueError("no embedding between these fields")
    if small is big:
        return lambda a: a
    key = (id(small), id(big))
    powers = _EMBED_CACHE.get(key)
    if powers is None:
        from . import _poly

        mod_poly = [big.elem(c) for c in small.modulus]
        roots = _poly.roots(mod_poly, big)
        if not roots:
            raise AssertionError("modulus has no root in the big field; internal bug")
        rho = min(roots, key=lambda r: r.coeffs)
        powers = [big.one()]
        for _ in range(small.k - 1):
            powers.append(powers[-1] * rho)
        _EMBED_CACHE[key] = powers

    def embed(a: FieldElement) -> FieldElement:
        if a.ctx is not small:
            raise ValueError("element not in the source field")
        out = big.zero()
        for c, tp in zip(a.coeffs, powers):
            if c:
                out = out + tp * c
        return out

    return embed


def retract(a: FieldElement, small: FieldCtx) -> FieldElement:
    """Inverse of :func:`embedding` on elements that lie in the subfield."""
    big = a.ctx
    emb = embedding(small, big)
    # solve a = sum c_i rho^i by linear algebra over F_p
    powers = [emb(small.from_index(0))]  # placeholder to please linters
    basis = []
    for i in range(small.k):
        e = small.zero().coeffs[:i] + (1,) + small.zero().coeffs[i + 1 :]
        basis.append(emb(FieldElement(small, e)))
    # Gaussian elimination on the k x small.k system over F_p
    p = big.p
    rows = [[b.coeffs[r] for b in basis] for r in range(big.k)]
    rhs = list(a.coeffs)
    sol = [0] * small.k
    pivot_rows = []
    col = 0
    for col in range(small.k):
        piv = None
        for r in range(big.k):
            if r in pivot_rows:
                continue
            if rows[r][col] % p != 0:
                piv = r
                break
        if piv is None:
            raise AssertionError("embedding basis degenerate; internal bug")
        pivot_rows.append(piv)
        inv = pow(rows[piv][col], p - 2, p)
        rows[piv] = [(c * inv) % p for c in rows[piv]]
        rhs[piv] = (rhs[piv] * inv) % p
        for r in range(big.k):
            if r != piv and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(c - f * d) % p for c, d in zip(rows[r], rows[piv])]
                rhs[r] = (rhs[r] - f * rhs[piv]) % p
    for i, r in enumerate(pivot_rows):
        sol[i] = rhs[r]
    # consistency: rows not used as pivots must have zero rhs
    for r in range(big.k):
        if r not in pivot_rows:
            if any(rows[r]) or rhs[r]:
                if rhs[r] != 0:
                    raise ValueError("element does not lie in the subfield")
    out = small.elem(sol)
    if emb(out) != a:
        raise ValueError("element does not lie in the subfield")
    return out


__all__ = [
    "DLOG_LIMIT",
    "FieldCtx",
    "FieldElement",
    "field_make",
    "arith",
    "element_order",
    "count_mth_roots",
    "norm_to",
    "trace_to",
    "in_subfield",
    "embedding",
    "retract",
]
