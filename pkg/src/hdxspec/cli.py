"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 unreadable or invalid input,
3 a verification hypothesis was not met (or a random complex was rejected),
4 a bound was violated while its hypotheses held.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .cochains import build_down_laplacian, build_full_laplacian, build_up_laplacian
from .complex import betti_numbers, check_all_links_connected, detect_partition, is_gallery_connected
from .config import BOUND_TOL, DEFAULT_SAMPLES, DEFAULT_SEED
from .errors import (
    BadParams,
    DegreeOutOfRange,
    HdxError,
    InvalidSimplex,
    NotGalleryConnected,
    NotPartite,
    ParseError,
    Rejected,
    SimplexNotInComplex,
    ValidationError,
)
from .generators import FAMILIES, GeneratorSpec, random_facet_weights
from .io import ComplexDocument, dump_document, encode_json, format_number, load_document, normalize
from .spectral import eig_selfadjoint, partite_top_value
from .theorems import FAIL, THEOREMS, UNMET, run_battery

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_VIOLATION = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(data: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(encode_json(data))
    else:
        out.write(_text(normalize(data)))


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val and not _flat(val):
                lines.append(f"{pad}{key}:")
                lines.append(_text(val, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{key}: {_inline(val)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.append(_text(item, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return "\n".join(lines) + "\n"


def _flat(val) -> bool:
    if isinstance(val, list):
        return all(not isinstance(v, (dict, list)) for v in val)
    return False


def _inline(val) -> str:
    if isinstance(val, list):
        return "{" + ", ".join(_inline(v) for v in val) + "}"
    if isinstance(val, dict):
        return "{}" if not val else ", ".join(f"{k}={_inline(v)}" for k, v in sorted(val.items()))
    return format_number(val)


def _parse_simplex(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--link expects comma-separated vertex ids, got {text!r}") from None


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--sizes expects comma-separated integers, got {text!r}") from None


# -- commands ---------------------------------------------------------------

def cmd_analyze(args) -> int:
    doc = load_document(args.file)
    X = doc.complex()
    conn = check_all_links_connected(X)
    gallery = is_gallery_connected(X)
    partition = doc.partition_obj(X)
    source = "document"
    if partition is None:
        try:
            partition = detect_partition(X)
            source = "detected"
        except (NotPartite, NotGalleryConnected):
            source = None
    report = {
        "dimension": X.dim,
        "vertices": len(X.vertices),
        "f_vector": list(X.f_vector()),
        "simplex_counts": {str(k): X.count(k) for k in range(X.dim + 1)},
        "links_connected": conn.connected,
        "disconnected_links": [list(t) for t in conn.failures],
        "gallery_connected": gallery.connected,
        "betti_numbers": betti_numbers(X),
        "weights": "homogeneous" if doc.facet_weights is None else "facet_weights",
        "partition": None if partition is None else [list(b) for b in partition.blocks()],
        "partition_source": source,
    }
    _emit(report, args.format, sys.stdout)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    doc = load_document(args.file)
    X = doc.complex()
    m = doc.weight(X)
    tau = _parse_simplex(args.link) if args.link is not None else ()
    try:
        Y, w = X.link(tau), m.link(tau)
    except (SimplexNotInComplex, InvalidSimplex) as exc:
        raise UsageError(str(exc)) from None
    except DegreeOutOfRange as exc:
        raise UsageError(str(exc)) from None
    builders = {"up": build_up_laplacian, "down": build_down_laplacian, "full": build_full_laplacian}
    try:
        op = builders[args.laplacian](Y, w, args.degree)
    except DegreeOutOfRange as exc:
        raise UsageError(str(exc)) from None
    partite = False
    if args.degree == 0 and args.laplacian == "up" and Y.dim >= 1:
        try:
            detect_partition(Y)
            partite = True
        except (NotPartite, NotGalleryConnected):
            pass
    spec = eig_selfadjoint(op, partite_top_value(Y.dim) if partite else None)
    data = spec.to_dict()
    data["link"] = list(tau)
    data["laplacian"] = args.laplacian
    _emit(data, args.format, sys.stdout)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = load_document(args.file)
    X = doc.complex()
    m = doc.weight(X)
    reports = run_battery(X, m, doc.partition_obj(X), theorems=args.theorem or None, seed=args.seed,
                          samples=args.samples, tol=args.tolerance)
    statuses = [r.status for r in reports]
    overall = "fail" if FAIL in statuses else UNMET if UNMET in statuses else "pass"
    data = {
        "status": overall,
        "seed": args.seed,
        "tolerance": args.tolerance,
        "reports": [r.to_dict() for r in reports],
    }
    if args.format == "text":
        lines = [f"{r.theorem}: {r.status}"
                 + ("" if r.min_slack is None else f" (min slack {format_number(normalize(r.min_slack))})")
                 for r in reports]
        for r in reports:
            for c in r.failures:
                lines.append(f"  FAIL {r.theorem} {c.name} [{c.context}] value={format_number(normalize(c.value))}")
            if r.status == UNMET:
                lines.append(f"  {r.theorem}: {'; '.join(r.hypotheses)}")
        lines.append(f"overall: {overall}")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        _emit(data, "json", sys.stdout)
    if overall == "fail":
        return EXIT_VIOLATION
    if overall == UNMET:
        return EXIT_HYPOTHESIS
    return EXIT_OK


def cmd_generate(args) -> int:
    sizes = _parse_sizes(args.sizes) if args.sizes else None
    spec = GeneratorSpec(args.family, n=args.n, N=args.N, sizes=sizes, p=args.p, seed=args.seed)
    X, partition = spec.build()
    weights = random_facet_weights(X, args.seed) if args.weights == "random" else None
    meta = {"generator": spec.to_dict()}
    if args.weights == "random":
        meta["weights"] = {"kind": "random", "seed": args.seed}
    doc = ComplexDocument.from_complex(X, weights, partition, meta)
    text = dump_document(doc)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
        summary = {"out": args.out, "facets": X.count(X.dim), "f_vector": list(X.f_vector())}
        _emit(summary, args.format, sys.stdout)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text", help="output encoding")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for random cochains and generators")
    common.add_argument("--tolerance", type=float, default=BOUND_TOL, help="slack allowed on bounds")

    parser = _Parser(prog="hdxspec", description="Spectra and local-to-global checks for weighted complexes.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="dimensions, counts, connectivity, partition")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("spectrum", parents=[common], help="spectrum of a Laplacian, optionally on a link")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--link", default=None, help="comma-separated vertices of the simplex whose link to use")
    p.add_argument("--laplacian", choices=("up", "down", "full"), default="up")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", parents=[common], help="run the verification battery")
    p.add_argument("file")
    p.add_argument("--theorem", action="append", choices=THEOREMS, help="restrict to these checks (repeatable)")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="random cochains per degree")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", parents=[common], help="write a complex document")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, help="dimension")
    p.add_argument("--N", type=int, help="number of vertices")
    p.add_argument("--sizes", help="comma-separated part sizes")
    p.add_argument("--p", type=float, help="facet probability")
    p.add_argument("--weights", choices=("homogeneous", "random"), default="homogeneous")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        parser.error("--samples must be positive")
    if args.tolerance < 0:
        parser.error("--tolerance must be non-negative")
    try:
        return args.func(args)
    except (UsageError, BadParams) as exc:
        print(f"hdxspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ValidationError) as exc:
        print(f"hdxspec: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Rejected as exc:
        print(f"hdxspec: rejected: {exc.reason}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except HdxError as exc:
        print(f"hdxspec: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
