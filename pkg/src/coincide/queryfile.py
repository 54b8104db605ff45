"""Query-file ingestion: JSON schema walking with path-accurate diagnostics.

A query file looks like::

    {
      "version": "1",
      "options": {"trace": true, "format": "text"},
      "queries": [
        {
          "manifold": {"kind": "real_projective", "n": 6},
          "m": 11,
          "kind": "self",
          "quantifier": "given",
          "f1": {"rep": "hopf", "h": 2}
        }
      ]
    }

Manifold kinds: sphere {n}, real_projective {n}, grassmann {r, k},
oriented_grassmann {r, k}, stiefel {r, k}, surface {genus, orientable},
product {factors: [...]}, generic {dim, pi1?, orientable?, closed?,
compact?, euler?, fibration_with_section?, free_finite_action?,
punctured_onto?}.  Unknown generic fields are simply omitted; "pi1" accepts
an integer or the string "infinite".

Class representations: {"rep": "zero" | "opaque"}, {"rep": "degree", "d": 3},
{"rep": "hopf", "h": 2}, {"rep": "boundary", "coords": [1]},
{"rep": "collapse", "coords": [0]}; optional "j_boundary_zero": bool and a
secondary representation under "also".

Validation is all-or-nothing: any diagnostic rejects the whole file.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from . import manifolds
from .engine import KINDS, QUANTIFIERS, PairQuery
from .invariants import MapClass, MapClassError
from .manifolds import INF, DescriptorError, ManifoldDescriptor
from .trilogic import Tri

__all__ = ["QueryFile", "Diagnostic", "QueryFileError", "parse_query_file"]


@dataclass(frozen=True)
class Diagnostic:
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


class QueryFileError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__(
            "invalid query file:\n"
            + "\n".join(f"  {d}" for d in self.diagnostics)
        )


@dataclass
class QueryFile:
    version: str
    queries: list[PairQuery]
    trace: bool = False
    format: str = "text"


class _Walker:
    def __init__(self):
        self.diagnostics: list[Diagnostic] = []

    def error(self, path: str, message: str):
        self.diagnostics.append(Diagnostic(path, message))

    def expect_int(self, obj, path, minimum=None) -> int | None:
        if not isinstance(obj, int) or isinstance(obj, bool):
            self.error(path, f"expected an integer, got {obj!r}")
            return None
        if minimum is not None and obj < minimum:
            self.error(path, f"must be >= {minimum}, got {obj}")
            return None
        return obj

    def expect_bool(self, obj, path) -> bool | None:
        if not isinstance(obj, bool):
            self.error(path, f"expected a boolean, got {obj!r}")
            return None
        return obj

    def reject_extras(self, obj, path, allowed):
        for key in obj:
            if key not in allowed:
                self.error(f"{path}.{key}", "unknown field")


def _parse_class(walker: _Walker, obj, path) -> MapClass | None:
    if not isinstance(obj, dict):
        walker.error(path, f"expected an object, got {obj!r}")
        return None
    walker.reject_extras(
        obj, path, {"rep", "d", "h", "coords", "j_boundary_zero", "also"}
    )
    rep = obj.get("rep")
    if rep not in ("zero", "degree", "hopf", "boundary", "collapse", "opaque"):
        walker.error(f"{path}.rep", f"unknown representation {rep!r}")
        return None
    kwargs = {"rep": rep}
    if rep == "degree":
        kwargs["d"] = walker.expect_int(obj.get("d"), f"{path}.d")
        if kwargs["d"] is None:
            return None
    if rep == "hopf":
        kwargs["h"] = walker.expect_int(obj.get("h"), f"{path}.h")
        if kwargs["h"] is None:
            return None
    if rep in ("boundary", "collapse"):
        coords = obj.get("coords")
        if not isinstance(coords, list) or not all(
            isinstance(c, int) and not isinstance(c, bool) for c in coords
        ):
            walker.error(f"{path}.coords", "expected a list of integers")
            return None
        kwargs["coords"] = tuple(coords)
    if "j_boundary_zero" in obj:
        flag = walker.expect_bool(obj["j_boundary_zero"], f"{path}.j_boundary_zero")
        if flag is None:
            return None
        kwargs["j_boundary_zero"] = Tri.of(flag)
    if "also" in obj:
        also = _parse_class(walker, obj["also"], f"{path}.also")
        if also is None:
            return None
        kwargs["also"] = also
    try:
        return MapClass(**kwargs)
    except MapClassError as exc:
        walker.error(path, str(exc))
        return None


def _parse_pi1(walker: _Walker, obj, path):
    if obj is None:
        return None
    if obj == "infinite":
        return INF
    value = walker.expect_int(obj, path, minimum=1)
    return value


def _parse_manifold(walker: _Walker, obj, path) -> ManifoldDescriptor | None:
    if not isinstance(obj, dict):
        walker.error(path, f"expected an object, got {obj!r}")
        return None
    kind = obj.get("kind")
    try:
        if kind == "sphere":
            walker.reject_extras(obj, path, {"kind", "n"})
            n = walker.expect_int(obj.get("n"), f"{path}.n", minimum=1)
            return manifolds.sphere(n) if n is not None else None
        if kind == "real_projective":
            walker.reject_extras(obj, path, {"kind", "n"})
            n = walker.expect_int(obj.get("n"), f"{path}.n", minimum=2)
            return manifolds.real_projective(n) if n is not None else None
        if kind in ("grassmann", "oriented_grassmann", "stiefel"):
            walker.reject_extras(obj, path, {"kind", "r", "k"})
            r = walker.expect_int(obj.get("r"), f"{path}.r", minimum=1)
            k = walker.expect_int(obj.get("k"), f"{path}.k", minimum=1)
            if r is None or k is None:
                return None
            builder = getattr(manifolds, kind)
            return builder(r, k)
        if kind == "surface":
            walker.reject_extras(obj, path, {"kind", "genus", "orientable"})
            genus = walker.expect_int(obj.get("genus"), f"{path}.genus", minimum=0)
            orientable = walker.expect_bool(
                obj.get("orientable"), f"{path}.orientable"
            )
            if genus is None or orientable is None:
                return None
            return manifolds.surface(genus, orientable)
        if kind == "product":
            walker.reject_extras(obj, path, {"kind", "factors"})
            factors_obj = obj.get("factors")
            if not isinstance(factors_obj, list) or len(factors_obj) < 2:
                walker.error(f"{path}.factors", "expected a list of >= 2 factors")
                return None
            factors = []
            for i, sub in enumerate(factors_obj):
                parsed = _parse_manifold(walker, sub, f"{path}.factors[{i}]")
                if parsed is None:
                    return None
                factors.append(parsed)
            return manifolds.product(factors)
        if kind == "generic":
            allowed = {
                "kind",
                "dim",
                "pi1",
                "orientable",
                "closed",
                "compact",
                "euler",
                "fibration_with_section",
                "free_finite_action",
                "punctured_onto",
                "label",
            }
            walker.reject_extras(obj, path, allowed)
            dim = walker.expect_int(obj.get("dim"), f"{path}.dim", minimum=1)
            if dim is None:
                return None
            kwargs = {"dim": dim}
            kwargs["pi1"] = _parse_pi1(walker, obj.get("pi1"), f"{path}.pi1")
            for name in ("orientable", "closed", "compact", "fibration_with_section",
                         "free_finite_action"):
                if name in obj:
                    value = walker.expect_bool(obj[name], f"{path}.{name}")
                    if value is None:
                        return None
                    kwargs[name] = value
            if "euler" in obj:
                kwargs["euler"] = walker.expect_int(obj["euler"], f"{path}.euler")
            if "label" in obj:
                if not isinstance(obj["label"], str):
                    walker.error(f"{path}.label", "expected a string")
                    return None
                kwargs["label"] = obj["label"]
            if "punctured_onto" in obj:
                raw = obj["punctured_onto"]
                if not isinstance(raw, dict):
                    walker.error(f"{path}.punctured_onto", "expected an object")
                    return None
                flags = {}
                for key, value in raw.items():
                    if not key.isdigit() or not isinstance(value, bool):
                        walker.error(
                            f"{path}.punctured_onto.{key}",
                            "expected integer keys and boolean values",
                        )
                        return None
                    flags[int(key)] = value
                kwargs["punctured_onto"] = flags
            return manifolds.generic(**kwargs)
    except DescriptorError as exc:
        walker.error(path, str(exc))
        return None
    walker.error(f"{path}.kind", f"unknown manifold kind {kind!r}")
    return None


def _parse_query(walker: _Walker, obj, path) -> PairQuery | None:
    if not isinstance(obj, dict):
        walker.error(path, f"expected an object, got {obj!r}")
        return None
    walker.reject_extras(
        obj, path, {"manifold", "m", "kind", "quantifier", "f1", "f2"}
    )
    manifold = _parse_manifold(walker, obj.get("manifold"), f"{path}.manifold")
    m = walker.expect_int(obj.get("m"), f"{path}.m")
    if m is not None and m < 2:
        walker.error(
            f"{path}.m",
            f"m = {m}: maps are taken from spheres of dimension m >= 2 "
            "(the engine assumes m, n >= 2; lower cases are classical)",
        )
        m = None
    kind = obj.get("kind")
    if kind not in KINDS:
        walker.error(f"{path}.kind", f"expected one of {KINDS}, got {kind!r}")
        kind = None
    quantifier = obj.get("quantifier", "given")
    if quantifier not in QUANTIFIERS:
        walker.error(
            f"{path}.quantifier", f"expected one of {QUANTIFIERS}, got {quantifier!r}"
        )
        quantifier = None
    f1 = f2 = None
    if "f1" in obj:
        f1 = _parse_class(walker, obj["f1"], f"{path}.f1")
        if f1 is None:
            return None
    if "f2" in obj:
        f2 = _parse_class(walker, obj["f2"], f"{path}.f2")
        if f2 is None:
            return None
    if manifold is None or m is None or kind is None or quantifier is None:
        return None
    if manifold.dim < 2:
        walker.error(
            f"{path}.manifold",
            f"dim N = {manifold.dim}: targets need dimension n >= 2 (the "
            "engine assumes m, n >= 2); 1-dimensional descriptors may only "
            "appear as product factors",
        )
        return None
    # dimension-dependent representation checks
    for name, f in (("f1", f1), ("f2", f2)):
        if f is None:
            continue
        try:
            f.validate_for(m, manifold.dim)
        except MapClassError as exc:
            walker.error(f"{path}.{name}", str(exc))
            return None
    if quantifier == "given":
        if f1 is None:
            walker.error(f"{path}.f1", "a 'given' query needs a concrete class")
            return None
        if kind == "general" and f2 is None:
            walker.error(f"{path}.f2", "a 'given' general query needs both classes")
            return None
    else:
        for name, f in (("f1", f1), ("f2", f2)):
            if f is not None and f.rep != "opaque":
                walker.error(
                    f"{path}.{name}",
                    "quantified queries take no concrete classes (use 'given')",
                )
                return None
    return PairQuery(
        manifold=manifold, m=m, kind=kind, f1=f1, f2=f2, quantifier=quantifier
    )


def parse_query_file(data: bytes | str) -> QueryFile:
    """Parse and validate a query file; raises QueryFileError on any defect."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise QueryFileError(
                [Diagnostic("(file)", f"not UTF-8: {exc}")]
            ) from exc
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise QueryFileError(
            [Diagnostic("(file)", f"JSON syntax error at byte {exc.pos}: {exc.msg}")]
        ) from exc
    walker = _Walker()
    if not isinstance(doc, dict):
        raise QueryFileError([Diagnostic("(root)", "expected a JSON object")])
    walker.reject_extras(doc, "(root)", {"version", "options", "queries"})
    version = doc.get("version")
    if version != "1":
        walker.error("version", f"unrecognized version {version!r} (expected \"1\")")
    trace = False
    fmt = "text"
    options = doc.get("options", {})
    if not isinstance(options, dict):
        walker.error("options", "expected an object")
    else:
        walker.reject_extras(options, "options", {"trace", "format"})
        if "trace" in options:
            value = walker.expect_bool(options["trace"], "options.trace")
            trace = bool(value)
        if "format" in options:
            if options["format"] not in ("text", "json"):
                walker.error("options.format", "expected \"text\" or \"json\"")
            else:
                fmt = options["format"]
    queries_obj = doc.get("queries")
    queries: list[PairQuery] = []
    if not isinstance(queries_obj, list):
        walker.error("queries", "expected a list")
    else:
        for i, q in enumerate(queries_obj):
            parsed = _parse_query(walker, q, f"queries[{i}]")
            if parsed is not None:
                queries.append(parsed)
    if walker.diagnostics:
        raise QueryFileError(walker.diagnostics)
    return QueryFile(version=version, queries=queries, trace=trace, format=fmt)
