"""Line-oriented algebra catalog files; the grammar is documented in data/catalog.txt."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra import (
    ELEMENT_CAP,
    StructureAlgebra,
    make_direct_sum,
    make_field_algebra,
    make_group_algebra_struct,
    make_matrix_algebra,
    make_power,
    make_triangular,
)
from .errors import CatalogError, NormlabError
from .ffield import finite_field, prime_field
from .group_algebra import parse_group

CONSTRUCTORS = ("matrix", "power", "field", "triangular", "group", "sum")
EXPECT_KEYS = ("cube", "square", "simple")


@dataclass
class CatalogEntry:
    name: str
    constructor: str
    params: dict
    expect: dict = field(default_factory=dict)
    line: int = 0


def parse_catalog(text: str) -> list[CatalogEntry]:
    entries = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) < 2:
            raise CatalogError(f"line {lineno}: expected NAME CONSTRUCTOR [key=value ...]")
        name, ctor = tok[0], tok[1]
        if ctor not in CONSTRUCTORS:
            raise CatalogError(f"line {lineno}: unknown constructor {ctor!r}")
        if name in seen:
            raise CatalogError(f"line {lineno}: duplicate name {name!r}")
        seen.add(name)
        params, expect = {}, {}
        for kv in tok[2:]:
            if "=" not in kv:
                raise CatalogError(f"line {lineno}: malformed field {kv!r}")
            k, v = kv.split("=", 1)
            if k in EXPECT_KEYS:
                if v not in ("0", "1"):
                    raise CatalogError(f"line {lineno}: {k} must be 0 or 1")
                expect[k] = v == "1"
            else:
                params[k] = v
        entries.append(CatalogEntry(name, ctor, params, expect, lineno))
    return entries


def _int(entry: CatalogEntry, key: str, default=None) -> int:
    if key not in entry.params:
        if default is None:
            raise CatalogError(f"line {entry.line}: {entry.name} needs {key}=")
        return default
    try:
        return int(entry.params[key])
    except ValueError:
        raise CatalogError(f"line {entry.line}: {key} must be an integer") from None


def build_entry(entry: CatalogEntry, built: dict, cap: int = ELEMENT_CAP) -> StructureAlgebra:
    c = entry.constructor
    try:
        if c == "sum":
            names = [s for s in entry.params.get("parts", "").split(",") if s]
            if not names:
                raise CatalogError(f"line {entry.line}: sum needs parts=")
            missing = [n for n in names if n not in built]
            if missing:
                raise CatalogError(f"line {entry.line}: unknown parts {missing}")
            A = make_direct_sum([built[n] for n in names], cap)
        elif c == "field":
            F = prime_field(_int(entry, "p"))
            A = make_field_algebra(F, finite_field(F.p, _int(entry, "k")), cap)
        else:
            F = finite_field(_int(entry, "p"), _int(entry, "k", 1))
            if c == "matrix":
                A = make_matrix_algebra(F, _int(entry, "n"), cap)
            elif c == "power":
                A = make_power(F, _int(entry, "j"), cap)
            elif c == "triangular":
                A = make_triangular(F, _int(entry, "n"), cap)
            else:
                if "g" not in entry.params:
                    raise CatalogError(f"line {entry.line}: group needs g=")
                A = make_group_algebra_struct(F, parse_group(entry.params["g"]), cap)
    except CatalogError:
        raise
    except NormlabError as exc:
        raise CatalogError(f"line {entry.line}: {exc}") from exc
    A.name = entry.name
    return A


def expectation_mismatches(entry: CatalogEntry, A: StructureAlgebra) -> dict:
    actual = {"cube": A.has_F2_cube_factor, "square": A.has_F2_square_factor, "simple": A.simple}
    return {k: {"expected": v, "constructed": actual[k]} for k, v in entry.expect.items() if actual[k] != v}


def load_catalog(path: str | Path | None = None, cap: int = ELEMENT_CAP) -> list[tuple[CatalogEntry, StructureAlgebra]]:
    if path is None:
        text = resources.files("normlab").joinpath("data/catalog.txt").read_text()
    else:
        text = Path(path).read_text()
    built: dict[str, StructureAlgebra] = {}
    out = []
    for e in parse_catalog(text):
        A = build_entry(e, built, cap)
        built[e.name] = A
        out.append((e, A))
    return out
