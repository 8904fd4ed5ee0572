"""Rendering of density reports and scan tables (JSON and text).

JSON carries no floats: integers become decimal strings, rationals "p/q",
matrices nested lists of strings.  Keys are sorted so that parsing and
re-dumping reproduces the bytes exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .exact import IntMatrix, IntPolynomial, RationalInterval
from .hilb2 import Hilb2Lattice, beauville_matrix, composed_action, printed_variant_report
from .verdict import DensityReport


def to_jsonable(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, IntMatrix):
        return [[str(x) for x in row] for row in obj.rows]
    if isinstance(obj, IntPolynomial):
        return {"coeffs_ascending": [str(c) for c in obj.coeffs], "text": str(obj)}
    if isinstance(obj, RationalInterval):
        return {"lower": str(obj.lower), "upper": str(obj.upper)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def report_dict(report: DensityReport) -> dict:
    return {
        "a": to_jsonable(report.a),
        "stages": [
            {
                "id": to_jsonable(s.id),
                "name": s.name,
                "pass": s.passed,
                "gating": s.gating,
                "witnesses": to_jsonable(s.witnesses),
                "anchor": s.anchor,
            }
            for s in report.stages
        ],
        "verdict": report.verdict,
        "failed_stage": to_jsonable(report.failed_stage),
        "involutions": to_jsonable(report.extras),
        "timing": {"elapsed_us": to_jsonable(report.elapsed_us)},
    }


def report_json(report: DensityReport) -> str:
    return dumps(report_dict(report))


def _fmt(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, IntMatrix):
        return str(v.tolist())
    return str(v)


def report_text(report: DensityReport) -> str:
    lines = [f"a = {report.a}"]
    for s in report.stages:
        flag = "PASS" if s.passed else "FAIL"
        extra = "" if s.gating else "  (informational)"
        lines.append(f"[{flag}] {s.id}. {s.name}: {s.anchor}{extra}")
        for k, v in s.witnesses.items():
            if isinstance(v, dict) and any(isinstance(x, dict) for x in v.values()):
                lines.append(f"        {k}:")
                for kk, vv in v.items():
                    lines.append(f"            {kk}: {_fmt(vv)}")
            else:
                lines.append(f"        {k}: {_fmt(v)}")
    ex = report.extras
    lines.append("involutions on NS(X), basis (H1, E, H2):")
    for key in ("M1", "M2", "M1M2"):
        lines.append(f"    {key} = {ex[key].tolist()}")
    if "printed_variant" in ex:
        pv = ex["printed_variant"]
        lines.append(f"    note: {pv['note']}")
        lines.append(f"    printed product reproduced: {pv['product_matches_printed']}")
    verdict = report.verdict
    if report.failed_stage is not None and verdict != "POTENTIALLY_DENSE":
        verdict += f" (first failing stage {report.failed_stage})"
    lines.append(f"verdict: {verdict}")
    return "\n".join(lines)


@dataclass(frozen=True)
class ScanRow:
    a: int
    has_nodal: bool
    has_isotropic: bool
    min_degrees: tuple[int | None, int | None]
    spectral_radius: RationalInterval
    verdict: str
    failed_stage: int | None

    def as_dict(self) -> dict:
        return {
            "a": to_jsonable(self.a),
            "has_nodal": self.has_nodal,
            "has_isotropic": self.has_isotropic,
            "min_degrees": to_jsonable(self.min_degrees),
            "spectral_radius": to_jsonable(self.spectral_radius),
            "verdict": self.verdict,
            "failed_stage": to_jsonable(self.failed_stage),
        }


def scan_row(report: DensityReport) -> ScanRow:
    very = report.stage(4).witnesses
    return ScanRow(
        a=report.a,
        has_nodal=report.stage(1).passed,
        has_isotropic=not report.stage(2).passed,
        min_degrees=(very["h1"]["min_nodal_degree"], very["h2"]["min_nodal_degree"]),
        spectral_radius=report.stage(7).witnesses["spectral_radius"],
        verdict=report.verdict,
        failed_stage=report.failed_stage,
    )


def scan_summary(rows: list[ScanRow]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for r in rows:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    return dict(sorted(counts.items()))


def scan_json(rows: list[ScanRow]) -> str:
    return dumps({"rows": [r.as_dict() for r in rows],
                  "summary": {k: str(v) for k, v in scan_summary(rows).items()}})


def decimal_floor(x: Fraction, digits: int) -> str:
    """x rounded down to ``digits`` decimals, as a string (no floats)."""
    scaled = (x.numerator * 10**digits) // x.denominator
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def scan_text(rows: list[ScanRow]) -> str:
    header = f"{'a':>5}  {'nodal':>5}  {'isotr':>5}  {'min deg':>12}  {'radius >=':>14}  verdict"
    lines = [header]
    for r in rows:
        deg = "-" if r.min_degrees[0] is None else f"{r.min_degrees[0]},{r.min_degrees[1]}"
        approx = decimal_floor(r.spectral_radius.lower, 4)
        tag = r.verdict if r.failed_stage is None or r.verdict == "POTENTIALLY_DENSE" else \
            f"{r.verdict} @ {r.failed_stage}"
        lines.append(f"{r.a:>5}  {str(r.has_nodal):>5}  {str(r.has_isotropic):>5}  {deg:>12}  {approx:>14}  {tag}")
    summary = ", ".join(f"{k}: {v}" for k, v in scan_summary(rows).items())
    lines.append(f"summary: {summary}")
    return "\n".join(lines)


def matrix_text(a: int) -> str:
    X = Hilb2Lattice(a)
    m1, m2 = beauville_matrix(X, 1).matrix, beauville_matrix(X, 2).matrix
    comp = composed_action(X)
    out = [
        f"a = {a}, basis (H1, E, H2); columns are images of basis vectors",
        "Gram:", str(X.gram),
        "M1 (iota1*):", str(m1),
        "M2 (iota2*):", str(m2),
        "M1 M2 ((iota2 iota1)*):", str(comp.matrix),
        f"char poly: {comp.char_poly}",
        f"invariant vector: {comp.eigenvector}",
        f"largest eigenvalue in {comp.radius}",
    ]
    variant = printed_variant_report(X)
    if variant["applies"]:
        out.append("note: the product matches the printed matrix; the printed factors differ at "
                   f"entry (2,2) (M1: {variant['M1']['differs_at']}, M2: {variant['M2']['differs_at']}), "
                   "where +3 breaks M^2 = I and q-invariance")
    return "\n".join(out)


def matrix_json(a: int) -> str:
    X = Hilb2Lattice(a)
    comp = composed_action(X)
    variant = printed_variant_report(X)
    body = {
        "a": a,
        "gram": X.gram,
        "M1": beauville_matrix(X, 1).matrix,
        "M2": beauville_matrix(X, 2).matrix,
        "M1M2": comp.matrix,
        "char_poly": comp.char_poly,
        "invariant_vector": comp.eigenvector,
        "spectral_radius": comp.radius,
    }
    if variant["applies"]:
        body["printed_variant"] = {
            "M1_differs_at": variant["M1"]["differs_at"],
            "M2_differs_at": variant["M2"]["differs_at"],
            "product_matches_printed": variant["product_matches_printed"],
        }
    return dumps(to_jsonable(body))
