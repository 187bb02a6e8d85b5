"""File formats (UTF-8 JSON) for bialgebras, monoids, representations, Lie
algebras and matrices, plus the byte-level canonicalizer used for
round-trip testing.

Scalar strings follow the exact serialization rules: rationals as "a/b"
with positive reduced denominator ("a" for integers), prime-field elements
as decimals in [0, p).
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .bialgebra import FinBialgebra
from .exact import FieldSpec, Matrix
from .lie import LieAlgebra
from .monoids import FiniteAbelianGroup, FiniteMonoid
from .reps import Representation


class FileFormatError(ValueError):
    """Malformed input file; the message carries the position when known."""


def _fail(path, msg):
    raise FileFormatError(f"{path}: {msg}")


def field_to_json(field: FieldSpec) -> dict:
    if field.p is None:
        return {"kind": "Rationals"}
    return {"kind": "PrimeField", "p": field.p}


def field_from_json(obj, path="<field>") -> FieldSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        _fail(path, "field must be an object with a 'kind'")
    try:
        if obj["kind"] == "Rationals":
            return FieldSpec.rationals()
        if obj["kind"] == "PrimeField":
            return FieldSpec.prime(int(obj["p"]))
    except (KeyError, TypeError, ValueError) as exc:
        _fail(path, f"bad field spec: {exc}")
    _fail(path, f"unknown field kind {obj['kind']!r}")


def _load_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def dump_canonical(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=1) + "\n"


# -- bialgebra files -------------------------------------------------------------

def bialgebra_to_json(A: FinBialgebra) -> dict:
    f = A.field
    out = {"field": field_to_json(f), "dim": A.dim, "basis": list(A.basis)}
    if A.has_algebra:
        out["mult"] = [[i, j, k, f.format(c)]
                       for (i, j, k), c in sorted(A.mult.items())]
        out["unit"] = [f.format(c) for c in A.unit]
    if A.has_coalgebra:
        out["comult"] = [[k, i, j, f.format(c)]
                         for (k, i, j), c in sorted(A.comult.items())]
        out["counit"] = [f.format(c) for c in A.counit]
    if A.has_antipode:
        out["antipode"] = [[f.format(c) for c in row]
                           for row in A.antipode.entries]
    return out


def _parse_tensor(field, rows, dim, path, label):
    out = {}
    if not isinstance(rows, list):
        _fail(path, f"{label} must be a list of [i, j, k, coeff] entries")
    for pos, entry in enumerate(rows):
        if not (isinstance(entry, list) and len(entry) == 4):
            _fail(path, f"{label}[{pos}]: expected [i, j, k, coeff]")
        i, j, k, c = entry
        try:
            i, j, k = int(i), int(j), int(k)
            value = field.parse(str(c))
        except ValueError as exc:
            _fail(path, f"{label}[{pos}]: {exc}")
        if not all(0 <= t < dim for t in (i, j, k)):
            _fail(path, f"{label}[{pos}]: index out of range for dim {dim}")
        key = (i, j, k)
        out[key] = field.add(out.get(key, field.zero), value)
    return out


def _parse_vector(field, data, dim, path, label):
    if not (isinstance(data, list) and len(data) == dim):
        _fail(path, f"{label} must be a list of {dim} scalars")
    try:
        return tuple(field.parse(str(c)) for c in data)
    except ValueError as exc:
        _fail(path, f"{label}: {exc}")


def bialgebra_from_json(obj, path="<bialgebra>") -> FinBialgebra:
    if not isinstance(obj, dict):
        _fail(path, "top level must be an object")
    for key in ("field", "dim"):
        if key not in obj:
            _fail(path, f"missing {key!r}")
    field = field_from_json(obj["field"], path)
    try:
        dim = int(obj["dim"])
    except (TypeError, ValueError):
        _fail(path, "dim must be an integer")
    basis = obj.get("basis") or [f"e{i}" for i in range(dim)]
    if len(basis) != dim:
        _fail(path, f"basis has {len(basis)} names for dim {dim}")
    mult = unit = comult = counit = antipode = None
    if "mult" in obj or "unit" in obj:
        if "mult" not in obj or "unit" not in obj:
            _fail(path, "mult and unit must appear together")
        mult = _parse_tensor(field, obj["mult"], dim, path, "mult")
        unit = _parse_vector(field, obj["unit"], dim, path, "unit")
    if "comult" in obj or "counit" in obj:
        if "comult" not in obj or "counit" not in obj:
            _fail(path, "comult and counit must appear together")
        raw = _parse_tensor(field, obj["comult"], dim, path, "comult")
        comult = raw
        counit = _parse_vector(field, obj["counit"], dim, path, "counit")
    if "antipode" in obj:
        rows = obj["antipode"]
        if not (isinstance(rows, list) and len(rows) == dim):
            _fail(path, f"antipode must be a {dim}x{dim} matrix")
        try:
            antipode = Matrix(field, [[field.parse(str(c)) for c in row]
                                      for row in rows])
        except ValueError as exc:
            _fail(path, f"antipode: {exc}")
        if antipode.cols != dim:
            _fail(path, f"antipode must be a {dim}x{dim} matrix")
    try:
        return FinBialgebra(field, dim, basis, mult, unit, comult, counit,
                            antipode)
    except ValueError as exc:
        _fail(path, str(exc))


def load_bialgebra(path) -> FinBialgebra:
    return bialgebra_from_json(_load_json(path), str(path))


def save_bialgebra(A: FinBialgebra, path) -> None:
    Path(path).write_text(dump_canonical(bialgebra_to_json(A)),
                          encoding="utf-8")


# -- monoid files ----------------------------------------------------------------

def monoid_to_json(G: FiniteMonoid) -> dict:
    return {"elements": list(G.names), "table": [list(r) for r in G.table],
            "unit": G.unit}


def monoid_from_json(obj, path="<monoid>") -> FiniteMonoid:
    if not isinstance(obj, dict):
        _fail(path, "top level must be an object")
    if "invariant_factors" in obj:
        try:
            group = FiniteAbelianGroup(tuple(int(d)
                                             for d in obj["invariant_factors"]))
        except (TypeError, ValueError) as exc:
            _fail(path, f"invariant_factors: {exc}")
        return group.to_monoid()
    for key in ("elements", "table", "unit"):
        if key not in obj:
            _fail(path, f"missing {key!r}")
    try:
        return FiniteMonoid(obj["elements"], obj["table"], int(obj["unit"]))
    except (TypeError, ValueError) as exc:
        _fail(path, str(exc))


def load_monoid(path) -> FiniteMonoid:
    return monoid_from_json(_load_json(path), str(path))


def save_monoid(G: FiniteMonoid, path) -> None:
    Path(path).write_text(dump_canonical(monoid_to_json(G)), encoding="utf-8")


# -- representation files --------------------------------------------------------

def representation_to_json(rho: Representation) -> dict:
    f = rho.field
    return {
        "field": field_to_json(f),
        "monoid": monoid_to_json(rho.monoid),
        "dim": rho.dim,
        "matrices": {rho.monoid.names[g]:
                     [[f.format(c) for c in row]
                      for row in rho.action(g).entries]
                     for g in range(rho.monoid.size)},
    }


def representation_from_json(obj, path="<representation>",
                             base_dir=None) -> Representation:
    if not isinstance(obj, dict):
        _fail(path, "top level must be an object")
    for key in ("monoid", "dim", "matrices"):
        if key not in obj:
            _fail(path, f"missing {key!r}")
    field = field_from_json(obj.get("field", {"kind": "Rationals"}), path)
    monoid_spec = obj["monoid"]
    if isinstance(monoid_spec, str):
        monoid = load_monoid(resolve_reference(monoid_spec, base_dir))
    else:
        monoid = monoid_from_json(monoid_spec, path)
    try:
        dim = int(obj["dim"])
    except (TypeError, ValueError):
        _fail(path, "dim must be an integer")
    mats = obj["matrices"]
    if not isinstance(mats, dict):
        _fail(path, "matrices must map element names to matrices")
    matrices = []
    for name in monoid.names:
        if name not in mats:
            _fail(path, f"missing action matrix for element {name!r}")
        rows = mats[name]
        if not (isinstance(rows, list) and len(rows) == dim):
            _fail(path, f"matrix for {name!r} must be {dim}x{dim}")
        try:
            m = Matrix(field, [[field.parse(str(c)) for c in row]
                               for row in rows])
        except ValueError as exc:
            _fail(path, f"matrix for {name!r}: {exc}")
        if m.cols != dim:
            _fail(path, f"matrix for {name!r} must be {dim}x{dim}")
        matrices.append(m)
    try:
        return Representation(monoid, field, matrices)
    except ValueError as exc:
        _fail(path, str(exc))


def load_representation(path) -> Representation:
    return representation_from_json(_load_json(path), str(path),
                                    base_dir=Path(path).parent)


def save_representation(rho: Representation, path) -> None:
    Path(path).write_text(dump_canonical(representation_to_json(rho)),
                          encoding="utf-8")


# -- Lie algebra files -----------------------------------------------------------

def lie_to_json(L: LieAlgebra) -> dict:
    f = L.field
    brackets = []
    for (i, j), entry in sorted(L.brackets.items()):
        brackets.append([i, j, [[k, f.format(c)]
                                for k, c in sorted(entry.items())]])
    return {"field": field_to_json(f), "dim": L.dim,
            "basis": list(L.names), "brackets": brackets}


def lie_from_json(obj, path="<lie>") -> LieAlgebra:
    if not isinstance(obj, dict):
        _fail(path, "top level must be an object")
    for key in ("dim", "basis", "brackets"):
        if key not in obj:
            _fail(path, f"missing {key!r}")
    field = field_from_json(obj.get("field", {"kind": "Rationals"}), path)
    try:
        dim = int(obj["dim"])
    except (TypeError, ValueError):
        _fail(path, "dim must be an integer")
    names = obj["basis"]
    if len(names) != dim:
        _fail(path, "basis size disagrees with dim")
    brackets = {}
    for pos, entry in enumerate(obj["brackets"]):
        if not (isinstance(entry, list) and len(entry) == 3):
            _fail(path, f"brackets[{pos}]: expected [i, j, [[k, coeff]..]]")
        i, j, values = entry
        try:
            pairs = {int(k): field.parse(str(c)) for k, c in values}
        except (TypeError, ValueError) as exc:
            _fail(path, f"brackets[{pos}]: {exc}")
        brackets[(int(i), int(j))] = pairs
    try:
        return LieAlgebra(field, names, brackets)
    except ValueError as exc:
        _fail(path, str(exc))


def load_lie(path) -> LieAlgebra:
    return lie_from_json(_load_json(path), str(path))


def save_lie(L: LieAlgebra, path) -> None:
    Path(path).write_text(dump_canonical(lie_to_json(L)), encoding="utf-8")


# -- matrix files ----------------------------------------------------------------

def load_matrix(path) -> Matrix:
    obj = _load_json(path)
    if not isinstance(obj, dict) or "matrix" not in obj:
        _fail(str(path), "expected an object with a 'matrix'")
    field = field_from_json(obj.get("field", {"kind": "Rationals"}),
                            str(path))
    rows = obj["matrix"]
    try:
        return Matrix(field, [[field.parse(str(c)) for c in row]
                              for row in rows])
    except ValueError as exc:
        _fail(str(path), str(exc))


# -- submonoid spec --------------------------------------------------------------

def load_submonoid_spec(path) -> dict:
    obj = _load_json(path)
    if not isinstance(obj, dict):
        _fail(str(path), "top level must be an object")
    for key in ("ambient_rank", "generators", "degree_bound"):
        if key not in obj:
            _fail(str(path), f"missing {key!r}")
    rank = int(obj["ambient_rank"])
    gens = [tuple(int(x) for x in g) for g in obj["generators"]]
    if any(len(g) != rank for g in gens):
        _fail(str(path), "generator rank disagrees with ambient_rank")
    out = {"generators": gens, "degree_bound": int(obj["degree_bound"]),
           "grading": None}
    if obj.get("grading") is not None:
        grading = tuple(int(x) for x in obj["grading"])
        if len(grading) != rank:
            _fail(str(path), "grading rank disagrees with ambient_rank")
        out["grading"] = grading
    return out


# -- canonicalization and corpus -------------------------------------------------

_LOADERS = {
    "bialgebra": (bialgebra_from_json, bialgebra_to_json),
}


def classify_file(obj) -> str:
    """Best-effort tag of a JSON document by its top-level keys."""
    if not isinstance(obj, dict):
        return "unknown"
    if "mult" in obj or "comult" in obj:
        return "bialgebra"
    if "table" in obj or "invariant_factors" in obj:
        return "monoid"
    if "matrices" in obj:
        return "representation"
    if "brackets" in obj:
        return "lie"
    if "matrix" in obj:
        return "matrix"
    if "generators" in obj:
        return "submonoid"
    if "subspace" in obj:
        return "quotient"
    return "unknown"


def canonicalize(path) -> str:
    """Parse a definition file and re-serialize it canonically: tensor
    entries sorted lexicographically, scalar strings normalized, keys
    sorted. Idempotent."""
    obj = _load_json(path)
    kind = classify_file(obj)
    if kind == "bialgebra":
        return dump_canonical(bialgebra_to_json(
            bialgebra_from_json(obj, str(path))))
    if kind == "monoid":
        return dump_canonical(monoid_to_json(monoid_from_json(obj, str(path))))
    if kind == "representation":
        doc = representation_to_json(representation_from_json(
            obj, str(path), base_dir=Path(path).parent))
        if isinstance(obj.get("monoid"), str):
            doc["monoid"] = obj["monoid"]  # keep references by name
        return dump_canonical(doc)
    if kind == "lie":
        return dump_canonical(lie_to_json(lie_from_json(obj, str(path))))
    if kind in ("matrix", "submonoid", "quotient"):
        return dump_canonical(obj)
    raise FileFormatError(f"{path}: unrecognized definition file")


def corpus_dir() -> Path:
    env = os.environ.get("HOPFDUAL_CORPUS")
    if env:
        return Path(env)
    return Path(__file__).parent / "corpus"


def corpus_path(name: str) -> Path:
    p = corpus_dir() / name
    if not p.suffix:
        p = p.with_suffix(".json")
    return p


def resolve_reference(ref: str, base_dir=None) -> Path:
    """A monoid reference is a path (tried relative to the referring file)
    or the name of a corpus file."""
    cand = Path(ref)
    if cand.is_file():
        return cand
    if base_dir is not None:
        rel = Path(base_dir) / ref
        if rel.is_file():
            return rel
    corp = corpus_path(ref)
    if corp.is_file():
        return corp
    raise FileFormatError(f"cannot resolve monoid reference {ref!r}")
