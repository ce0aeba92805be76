"""Generic finite-group engine over matrix or permutation generators.

A GroupTable materializes a finite group by breadth-first closure of its
generators and caches the statistics the case analyses consume: the order
spectrum, conjugacy classes, and the center.  Elements only need a small
protocol: a hashable canonical ``key``, ``__mul__``, ``inverse()``,
``element_order()`` and ``is_identity()``.

Group identity is by construction or import only; there is no isomorphism
testing or database lookup.
"""

from __future__ import annotations

import json
import threading
from math import lcm

DEFAULT_CAP = 2_000_000


class PermElement:
    """Permutation of {0..n-1} as a tuple of images."""

    __slots__ = ("img",)

    def __init__(self, img):
        self.img = tuple(img)
        if sorted(self.img) != list(range(len(self.img))):
            raise ValueError("not a permutation")

    @property
    def key(self):
        return self.img

    def __mul__(self, other):
        if len(self.img) != len(other.img):
            raise ValueError("degree mismatch")
        return PermElement(tuple(self.img[j] for j in other.img))

    def inverse(self):
        inv = [0] * len(self.img)
        for i, j in enumerate(self.img):
            inv[j] = i
        return PermElement(tuple(inv))

    def element_order(self) -> int:
        order = 1
        seen = [False] * len(self.img)
        for start in range(len(self.img)):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.img[i]
                length += 1
            order = lcm(order, length)
        return order

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.img))

    def __eq__(self, other):
        return isinstance(other, PermElement) and self.img == other.img

    def __hash__(self):
        return hash(self.img)

    def __repr__(self):
        return f"PermElement{self.img}"


def identity_perm(degree: int) -> PermElement:
    return PermElement(tuple(range(degree)))


class ClosureCapExceeded(RuntimeError):
    pass


class GroupTable:
    """Materialized finite group; immutable after closure."""

    def __init__(self, elements, generators):
        self._by_key = {e.key: e for e in elements}
        self.elements = sorted(self._by_key.values(), key=lambda e: e.key)
        self.generators = list(generators)
        self._index = {e.key: i for i, e in enumerate(self.elements)}
        self._lock = threading.Lock()
        self._spectrum = None
        self._classes = None
        self._orders = None

    # -- construction ---------------------------------------------------

    @classmethod
    def closure(cls, generators, cap: int = DEFAULT_CAP) -> "GroupTable":
        if cap < 1:
            raise ValueError("cap must be at least 1")
        gens = list(generators)
        if not gens:
            raise ValueError("need at least one element (use the identity)")
        for g in gens:
            g.inverse()  # raises on non-invertible input
        identity = gens[0] * gens[0].inverse()
        seen = {identity.key: identity}
        frontier = [identity]
        while frontier:
            new = []
            for g in gens:
                for h in frontier:
                    prod = g * h
                    if prod.key not in seen:
                        seen[prod.key] = prod
                        new.append(prod)
                        if len(seen) > cap:
                            raise ClosureCapExceeded(
                                f"closure exceeded cap = {cap} elements"
                            )
            frontier = new
        return cls(seen.values(), gens)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e.key in self._by_key

    def index(self, e) -> int:
        return self._index[e.key]

    def identity(self):
        g = self.generators[0]
        return g * g.inverse()

    # -- cached statistics (once-only initialization) --------------------

    def element_orders(self) -> list[int]:
        if self._orders is None:
            with self._lock:
                if self._orders is None:
                    self._orders = [e.element_order() for e in self.elements]
        return self._orders

    def order_spectrum(self) -> dict[int, int]:
        if self._spectrum is None:
            spec: dict[int, int] = {}
            for o in self.element_orders():
                spec[o] = spec.get(o, 0) + 1
            with self._lock:
                if self._spectrum is None:
                    self._spectrum = dict(sorted(spec.items()))
        return dict(self._spectrum)

    def conjugacy_classes(self) -> list[tuple[int, ...]]:
        """Classes as sorted index tuples, ordered by (size, least index)."""
        if self._classes is None:
            gen_pairs = [(g, g.inverse()) for g in self.generators]
            assigned = [False] * len(self.elements)
            classes = []
            for i, e in enumerate(self.elements):
                if assigned[i]:
                    continue
                orbit = {i}
                frontier = [e]
                assigned[i] = True
                while frontier:
                    x = frontier.pop()
                    for g, ginv in gen_pairs:
                        y = g * x * ginv
                        j = self._index.get(y.key)
                        if j is None:
                            raise AssertionError(
                                "conjugation left the table; closure unsound"
                            )
                        if not assigned[j]:
                            assigned[j] = True
                            orbit.add(j)
                            frontier.append(self.elements[j])
                classes.append(tuple(sorted(orbit)))
            classes.sort(key=lambda c: (len(c), c[0]))
            with self._lock:
                if self._classes is None:
                    self._classes = classes
        return list(self._classes)

    def center(self) -> list:
        """Elements whose conjugacy class is a singleton."""
        out = []
        for cls_idx in self.conjugacy_classes():
            if len(cls_idx) == 1:
                out.append(self.elements[cls_idx[0]])
        return out

    def is_abelian(self) -> bool:
        return len(self.center()) == len(self)

    def class_sizes(self) -> list[int]:
        return sorted(len(c) for c in self.conjugacy_classes())

    def classes_with_order(self, order: int) -> list[tuple[int, ...]]:
        orders = self.element_orders()
        return [c for c in self.conjugacy_classes() if orders[c[0]] == order]


def conjugacy_classes(table: GroupTable):
    return table.conjugacy_classes()


def center(table: GroupTable):
    return table.center()


def order_spectrum(table: GroupTable):
    return table.order_spectrum()


def closure(generators, cap: int = DEFAULT_CAP) -> GroupTable:
    return GroupTable.closure(generators, cap)


# ----------------------------------------------------------------------
# subset-sum over class sizes
# ----------------------------------------------------------------------


def class_sum_reachable(class_sizes, target: int):
    """Whether a sub-multiset of class_sizes sums to target.

    Returns (reachable, witness) where witness is a list of the sizes used.
    """
    if target < 0:
        return False, None
    sizes = sorted(class_sizes, reverse=True)
    # reachable[s] = index of the size used to first reach s (for witness)
    reachable: dict[int, tuple[int, int] | None] = {0: None}
    for idx, s in enumerate(sizes):
        current = list(reachable.items())
        for total, _ in current:
            t = total + s
            if t <= target and t not in reachable:
                reachable[t] = (idx, total)
    if target not in reachable:
        return False, None
    witness = []
    at = target
    while reachable[at] is not None:
        idx, prev = reachable[at]
        witness.append(sizes[idx])
        at = prev
    return True, sorted(witness)


# ----------------------------------------------------------------------
# import / export
# ----------------------------------------------------------------------


def import_group(source, cap: int = DEFAULT_CAP) -> GroupTable:
    """Load a group file: {"kind": "perm"|"unitary", ...} and close it.

    Permutations are 0-based image arrays; unitary generators are lists of 9
    field-element strings (row-major) over F_{q^2} for the given q.
    """
    if isinstance(source, (str, bytes)):
        with open(source, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = source
    kind = data.get("kind")
    gens_data = data.get("generators", [])
    if kind == "perm":
        degree = data.get("degree")
        if degree is None:
            if not gens_data:
                raise ValueError("perm group without degree or generators")
            degree = len(gens_data[0])
        gens = [PermElement(tuple(img)) for img in gens_data]
        for g in gens:
            if len(g.img) != degree:
                raise ValueError("generator degree mismatch")
        if not gens:
            gens = [identity_perm(degree)]
    elif kind == "unitary":
        from . import pgu  # deferred to avoid an import cycle

        geom = pgu.HermitianGeometry(data["q"], model=data.get("model", "chart"))
        gens = [pgu.element_from_strings(geom, rows) for rows in gens_data]
        if not gens:
            gens = [pgu.identity_element(geom)]
    else:
        raise ValueError(f"unknown group file kind {kind!r}")
    return GroupTable.closure(gens, cap)


def export_group(table: GroupTable) -> dict:
    gens = table.generators
    if isinstance(gens[0], PermElement):
        return {
            "kind": "perm",
            "degree": len(gens[0].img),
            "generators": [list(g.img) for g in gens],
        }
    from . import pgu

    return {
        "kind": "unitary",
        "q": gens[0].geom.q,
        "model": gens[0].geom.model,
        "generators": [pgu.element_to_strings(g) for g in gens],
    }
