"""Curve catalog: loading and verification.

The shipped catalog (data/catalog.json) lists every curve the toolkit
certifies; `verify` recomputes genus and counts for each entry and compares
against the stored expectations.  The path can be overridden with the
MAXCURVE_CATALOG environment variable or an explicit argument.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources

from . import kummer, maximality

ENV_VAR = "MAXCURVE_CATALOG"


@dataclass
class CatalogEntry:
    name: str
    kind: str  # kummer | plane | elliptic
    p: int
    k: int
    curve: object
    expected_genus: int | None = None
    expected_count: int | None = None
    maximal: bool | None = None
    slow: bool = False
    citation: str = ""
    notes: str = ""
    raw: dict = field(default_factory=dict)

    @property
    def field_order(self) -> int:
        return self.p**self.k


def _entry_from_dict(d: dict) -> CatalogEntry:
    kind = d["kind"]
    p, k = d["p"], d.get("k", 2)
    if kind == "kummer":
        if "f_sparse" in d:
            deg = d["degree"]
            coeffs = [0] * (deg + 1)
            for e, c in d["f_sparse"].items():
                coeffs[int(e)] = c
        else:
            coeffs = d["f"]
        curve = kummer.kummer_from_ints(d["m"], coeffs, p, k)
    elif kind == "plane":
        terms = {(i, j): c for i, j, c in d["terms"]}
        curve = kummer.plane_from_ints(terms, p, k)
    elif kind == "elliptic":
        curve = kummer.EllipticCurve(p, d["c2"], d["c1"], d["c0"])
        k = 1
    else:
        raise ValueError(f"unknown catalog kind {kind!r}")
    return CatalogEntry(
        name=d["name"],
        kind=kind,
        p=p,
        k=k,
        curve=curve,
        expected_genus=d.get("expected_genus"),
        expected_count=d.get("expected_count"),
        maximal=d.get("maximal"),
        slow=d.get("slow", False),
        citation=d.get("citation", ""),
        notes=d.get("notes", ""),
        raw=d,
    )


def catalog_path() -> str | None:
    return os.environ.get(ENV_VAR)


def load(path: str | None = None) -> list[CatalogEntry]:
    path = path or catalog_path()
    if path:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = json.loads(
            resources.files("maxcurves.data").joinpath("catalog.json").read_text()
        )
    return [_entry_from_dict(d) for d in data["entries"]]


def verify_entry(entry: CatalogEntry) -> dict:
    """Recompute the entry's invariants; returns an assertion report row."""
    checks = []
    if entry.kind == "kummer":
        g = kummer.kummer_genus(entry.curve)
        n = kummer.kummer_place_count(entry.curve)
        if entry.expected_genus is not None:
            checks.append(("genus", g, entry.expected_genus))
        if entry.expected_count is not None:
            checks.append(("place_count", n, entry.expected_count))
        if entry.maximal is not None:
            checks.append(("maximal", maximality.is_maximal(entry), entry.maximal))
    elif entry.kind == "plane":
        n = kummer.affine_plane_count(entry.curve)
        if entry.expected_count is not None:
            checks.append(("affine_count", n, entry.expected_count))
    elif entry.kind == "elliptic":
        n2 = kummer.elliptic_count_ext(entry.curve)
        if entry.expected_count is not None:
            checks.append(("ext_count", n2, entry.expected_count))
        if entry.maximal is not None:
            checks.append(("maximal", maximality.is_maximal(entry), entry.maximal))
    assertions = [
        {"name": f"{entry.name}:{what}", "computed": got, "expected": want,
         "passed": got == want, "citation": entry.citation}
        for what, got, want in checks
    ]
    return {
        "name": entry.name,
        "kind": entry.kind,
        "field_order": entry.field_order,
        "assertions": assertions,
        "passed": all(a["passed"] for a in assertions),
    }


def verify(
    path: str | None = None,
    field_order: int | None = None,
    include_slow: bool = False,
) -> dict:
    entries = load(path)
    rows = []
    for e in entries:
        if field_order is not None and e.field_order != field_order:
            continue
        if e.slow and not include_slow:
            rows.append({"name": e.name, "kind": e.kind,
                         "field_order": e.field_order, "skipped": "slow"})
            continue
        rows.append(verify_entry(e))
    passed = all(r.get("passed", True) for r in rows)
    return {"entries": rows, "passed": passed}


def calibration_curves(path: str | None = None):
    """Kummer curves of the catalog, used to pin the branch-rule convention."""
    return [e.curve for e in load(path) if e.kind == "kummer"]
