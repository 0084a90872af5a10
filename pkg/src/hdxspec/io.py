"""JSON complex documents and report encoding.

Document schema::

    {"format": 1,
     "facets": [[int, ...], ...],
     "facet_weights": [float, ...],          optional, aligned with facets
     "partition": {"vertex id": side, ...},  optional
     "metadata": {...}}                      optional
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from numbers import Integral, Real
from typing import Any

from .complex import Partition, SimplicialComplex
from .errors import HdxError, NotPartite, ParseError, ValidationError
from .weights import WeightFunction, extend_top_weight, homogeneous_weight

FORMAT_VERSION = 1
FIELDS = {"format", "facets", "facet_weights", "partition", "metadata"}
SIG_DIGITS = 12


@dataclass
class ComplexDocument:
    facets: list[tuple[int, ...]]
    facet_weights: list[float] | None = None
    partition: dict[int, int] | None = None
    metadata: dict[str, Any] = field(default_factory=dict)
    format: int = FORMAT_VERSION

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.facets)

    def weight(self, X: SimplicialComplex | None = None) -> WeightFunction:
        X = X or self.complex()
        if self.facet_weights is None:
            return homogeneous_weight(X)
        return extend_top_weight(X, dict(zip(self.facets, self.facet_weights)))

    def partition_obj(self, X: SimplicialComplex | None = None) -> Partition | None:
        if self.partition is None:
            return None
        X = X or self.complex()
        return Partition(dict(self.partition), X.dim + 1)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"format": self.format, "facets": [list(f) for f in self.facets]}
        if self.facet_weights is not None:
            out["facet_weights"] = list(self.facet_weights)
        if self.partition is not None:
            out["partition"] = {str(v): s for v, s in sorted(self.partition.items())}
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    @classmethod
    def from_complex(cls, X: SimplicialComplex, weights=None, partition: Partition | None = None,
                     metadata: dict | None = None) -> ComplexDocument:
        return cls(
            facets=list(X.facets),
            facet_weights=None if weights is None else [float(w) for w in weights],
            partition=None if partition is None else {int(v): int(s) for v, s in partition.sides.items()},
            metadata=dict(metadata or {}),
        )


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_complex(text: str) -> ComplexDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise ValidationError("top level must be a JSON object")
    unknown = set(raw) - FIELDS
    if unknown:
        raise ValidationError(f"unknown fields: {', '.join(sorted(unknown))}")
    version = raw.get("format", FORMAT_VERSION)
    if version != FORMAT_VERSION or not _is_int(version):
        raise ValidationError(f"unsupported format version {version!r}")
    if "facets" not in raw:
        raise ValidationError("missing required field 'facets'")

    facets_raw = raw["facets"]
    if not isinstance(facets_raw, list) or not facets_raw:
        raise ValidationError("'facets' must be a non-empty list")
    facets = []
    for i, f in enumerate(facets_raw):
        if not isinstance(f, list) or not f:
            raise ValidationError(f"facet {i} must be a non-empty list of vertex ids")
        if not all(_is_int(v) and v >= 0 for v in f):
            raise ValidationError(f"facet {i} has a vertex id that is not a non-negative integer")
        if len(set(f)) != len(f):
            raise ValidationError(f"facet {i} repeats a vertex: {f}")
        facets.append(tuple(sorted(f)))
    if len({len(f) for f in facets}) != 1:
        raise ValidationError("facets have different sizes")
    if len(set(facets)) != len(facets):
        raise ValidationError("duplicate facets")

    weights = raw.get("facet_weights")
    if weights is not None:
        if not isinstance(weights, list) or len(weights) != len(facets):
            raise ValidationError("'facet_weights' must be a list with one entry per facet")
        for i, w in enumerate(weights):
            if isinstance(w, bool) or not isinstance(w, Real) or not math.isfinite(w) or w <= 0:
                raise ValidationError(f"facet weight {i} must be a finite positive number, got {w!r}")
        weights = [float(w) for w in weights]

    partition = raw.get("partition")
    if partition is not None:
        if not isinstance(partition, dict):
            raise ValidationError("'partition' must map vertex ids to sides")
        sides = {}
        for key, side in partition.items():
            try:
                v = int(key)
            except ValueError:
                raise ValidationError(f"partition key {key!r} is not a vertex id") from None
            if v < 0 or str(v) != key.strip():
                raise ValidationError(f"partition key {key!r} is not a vertex id")
            if not _is_int(side):
                raise ValidationError(f"side of vertex {key} must be an integer")
            sides[v] = side
        partition = sides

    metadata = raw.get("metadata", {})
    if not isinstance(metadata, dict):
        raise ValidationError("'metadata' must be an object")

    doc = ComplexDocument(facets, weights, partition, metadata, version)
    X = doc.complex()
    if partition is not None:
        extra = set(partition) - set(X.vertices)
        if extra:
            raise ValidationError(f"partition names vertices outside the complex: {sorted(extra)}")
        try:
            doc.partition_obj(X).validate(X)
        except NotPartite as exc:
            raise ValidationError(f"invalid partition: {exc}") from None
    return doc


def load_document(path: str) -> ComplexDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_complex(text)


def dump_document(doc: ComplexDocument) -> str:
    return json.dumps(doc.to_dict(), sort_keys=True) + "\n"


# -- reports ----------------------------------------------------------------

def round_sig(x: float, digits: int = SIG_DIGITS):
    if not math.isfinite(x):
        return str(x)
    y = float(f"{x:.{digits}g}")
    return 0.0 if y == 0 else y


def normalize(obj):
    """Round floats to 12 significant digits and turn tuples into lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Integral):
        return int(obj)
    if isinstance(obj, Real):
        return round_sig(float(obj))
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def encode_json(obj) -> str:
    return json.dumps(normalize(obj), sort_keys=True, indent=2) + "\n"


def format_number(x) -> str:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return str(x)
    if isinstance(x, Integral):
        return str(int(x))
    return f"{float(x):.{SIG_DIGITS}g}"


__all__ = [
    "ComplexDocument", "parse_complex", "load_document", "dump_document", "encode_json", "normalize",
    "format_number", "HdxError",
]
