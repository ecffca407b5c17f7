"""
JSON documents for algebras, invariants, generator sets, pencil profiles
and verification reports.

Every document carries "version" and "kind". Integers and rationals are
written as decimal strings ("-3", "1/2"); documents are dumped with sorted
keys so the same inputs always give the same bytes.
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Any

from sympy.polys.domains import QQ

from liepoisson.errors import DocumentError
from liepoisson.polyring import format_rational, poly_to_document
from models import (
    Certificate,
    GeneratorSet,
    InvariantSet,
    LieAlgebraData,
    PencilProfile,
    PointOnDual,
    Report,
    RunConfig,
    Splitting,
)

logger = logging.getLogger(__name__)

VERSION = 1
KINDS = ("algebra", "invariants", "generators", "profile", "report")


def _q(value) -> str:
    q = QQ.convert(value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _stringify(value: Any) -> Any:
    """Integers to decimal strings, recursively; booleans and strings kept."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.3f}"
    if isinstance(value, dict):
        return {str(k): _stringify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_stringify(v) for v in value]
    return _q(value)


def _header(kind: str, g: LieAlgebraData) -> dict:
    return {"version": VERSION, "kind": kind, "algebra": {"series": g.series, "rank": str(g.rank)}}


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def algebra_document(g: LieAlgebraData, s: Splitting | None = None) -> dict:
    """With a splitting, every basis label is also tagged "h" or "r"."""
    constants = []
    for (i, j), row in sorted(g.constants.items()):
        for k, c in sorted(row.items()):
            num, den = format_rational(c)
            constants.append({"i": str(i), "j": str(j), "k": str(k), "num": num, "den": den})
    doc = _header("algebra", g)
    doc.update({
        "dim": str(g.dim),
        "basis": list(g.labels),
        "realization": g.realization_tag,
        "factors": [f.label for f in g.factors],
        "layout": {part: [str(k) for k in idx] for part, idx in g.layout.items()},
        "structure_constants": constants,
        "form": [[_q(c) for c in row] for row in g.form],
        "highest_root": [str(a) for a in g.highest_root],
    })
    if s is not None:
        doc["parts"] = {element.label: element.part for element in s.basis}
    return doc


def invariants_document(inv: InvariantSet, g: LieAlgebraData) -> dict:
    doc = _header("invariants", g)
    doc["realization"] = inv.realization_tag
    doc["invariants"] = [
        {"label": label, "degree": str(d), "poly": poly_to_document(p)}
        for label, p, d in zip(inv.labels, inv.polys, inv.degrees)
    ]
    return doc


def generators_document(gs: GeneratorSet, g: LieAlgebraData) -> dict:
    doc = _header("generators", g)
    doc.update({
        "scenario": gs.scenario,
        "role": gs.role,
        "count": str(len(gs)),
        "expected_count": str(gs.expected_count),
        "generators": [
            {
                "label": item.label,
                "tag": item.tag,
                "bidegree": None if item.bidegree is None else [str(item.bidegree.h), str(item.bidegree.r)],
                "poly": poly_to_document(item.poly),
            }
            for item in gs.items
        ],
    })
    return doc


def profile_document(profile: PencilProfile) -> dict:
    return {
        "version": VERSION,
        "kind": "profile",
        "size": str(profile.size),
        "generic_rank": str(profile.generic_rank),
        "singular": [
            {
                "kind": sp.kind,
                "value": None if sp.value is None else _q(sp.value),
                "minimal_polynomial": [_q(c) for c in sp.minimal_polynomial],
                "rank": None if sp.rank is None else str(sp.rank),
            }
            for sp in profile.singular
        ],
        "proportional": profile.proportional,
        "kernel_sum_dim": str(profile.kernel_sum_dim),
        "kernel_sum_basis": [[_q(c) for c in v] for v in profile.kernel_sum_basis],
        "jordan_line_count": str(profile.jordan_line_count),
        "kronecker_block_count": str(profile.kronecker_block_count),
        "jordan_dimension": str(profile.jordan_dimension),
        "jordan_line_check": _stringify(profile.jordan_line_check),
        "consistent": profile.consistent,
    }


def report_document(report: Report, *, timings: bool = False) -> dict:
    """Elapsed times are left out unless asked for, so reruns diff cleanly."""
    config = report.config
    checks = []
    for cert in report.checks:
        entry = {"name": cert.name, "status": cert.status, "witness": _stringify(cert.witness)}
        if timings:
            entry["elapsed_ms"] = f"{cert.elapsed_ms:.3f}"
        checks.append(entry)
    return {
        "version": VERSION,
        "kind": "report",
        "command": config.command,
        "algebra": {"series": config.series, "rank": str(config.rank)},
        "scenario": config.scenario,
        "seed": str(config.seed),
        "samples": str(config.samples),
        "bound": str(config.bound),
        "out": config.out,
        "realization": report.realization,
        "digests": dict(report.digests),
        "status": report.status,
        "checks": checks,
    }


# ---------------------------------------------------------------------------
# Reading and writing
# ---------------------------------------------------------------------------

def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def document_digest(doc: dict) -> str:
    """sha256 of the bytes dumps() writes for doc."""
    return hashlib.sha256(dumps(doc).encode("utf-8")).hexdigest()


def write_document(doc: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
    logger.info("Wrote %s document to %s", doc.get("kind"), path)


def loads(text: str, kind: str | None = None) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("a document must be a JSON object")
    if kind is not None:
        if doc.get("version") != VERSION:
            raise DocumentError(f"unsupported document version {doc.get('version')!r}")
        if doc.get("kind") != kind:
            raise DocumentError(f"expected a {kind} document, got {doc.get('kind')!r}")
    return doc


def report_from_document(doc: dict) -> Report:
    """Rebuild a Report; witnesses stay in their serialized (string) form."""
    try:
        config = RunConfig(
            command=doc["command"],
            series=doc["algebra"]["series"],
            rank=int(doc["algebra"]["rank"]),
            scenario=doc["scenario"],
            seed=int(doc["seed"]),
            samples=int(doc["samples"]),
            bound=int(doc["bound"]),
            out=doc.get("out"),
        )
        checks = tuple(
            Certificate(
                name=c["name"],
                status=c["status"],
                witness=c["witness"],
                seed=config.seed,
                elapsed_ms=float(c.get("elapsed_ms", 0.0)),
            )
            for c in doc["checks"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed report document: {exc}") from exc
    return Report(config, checks, doc.get("realization", ""), dict(doc.get("digests", {})))


def point_from_document(doc: dict, dim: int) -> PointOnDual:
    """{"coords": ["1", "-1/2", ...]} as a point of g*."""
    coords = doc.get("coords")
    if not isinstance(coords, list):
        raise DocumentError('a point document needs a "coords" list')
    if len(coords) != dim:
        raise DocumentError(f"point has {len(coords)} coordinates, the algebra has dimension {dim}")
    values = []
    for c in coords:
        try:
            num, _, den = str(c).strip().partition("/")
            values.append(QQ(int(num), int(den or 1)))
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"bad coordinate {c!r}") from exc
    return PointOnDual(tuple(values))
