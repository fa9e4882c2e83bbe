"""Reading, writing and reporting of model files.

The on-disk format is UTF-8 JSON with a fixed field order, so that
serialize(parse(text)) is byte-stable.  All rational values cross the
boundary as exact "p/q" strings (plain "p" when the denominator is one);
integers stay JSON integers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from . import lattice, syz
from .degeneration import (
    DegenerationModel,
    DivisorRecord,
    Face,
    StratumCurveData,
    essential_skeleton,
    homology_ranks,
    is_maximally_degenerate,
    pseudomanifold_check,
    validate_model,
)
from .errors import ModelParseError, SkelefibError

FORMAT_VERSION = "1"


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s: Any) -> Fraction:
    if isinstance(s, bool):
        raise ModelParseError(f"expected a rational, got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelParseError(f"bad rational {s!r}: {exc}") from None
    raise ModelParseError(f"expected a rational, got {s!r}")


def _expect(obj: Mapping, key: str, kind, path: str):
    if key not in obj:
        raise ModelParseError(f"{path}: missing field '{key}'")
    value = obj[key]
    if kind is int and isinstance(value, bool):
        raise ModelParseError(f"{path}.{key}: expected integer, got boolean")
    if not isinstance(value, kind):
        raise ModelParseError(
            f"{path}.{key}: expected {kind.__name__}, got {type(value).__name__}"
        )
    return value


def _int_list(value, path: str) -> list[int]:
    if not isinstance(value, list) or any(
        isinstance(x, bool) or not isinstance(x, int) for x in value
    ):
        raise ModelParseError(f"{path}: expected a list of integers")
    return list(value)


def model_from_dict(data: Mapping) -> DegenerationModel:
    if not isinstance(data, Mapping):
        raise ModelParseError("top level: expected a JSON object")
    version = _expect(data, "version", str, "top level")
    if version != FORMAT_VERSION:
        raise ModelParseError(f"top level: unsupported version {version!r}")
    n = _expect(data, "n", int, "top level")

    divisors = []
    for i, d in enumerate(_expect(data, "divisors", list, "top level")):
        path = f"divisors[{i}]"
        if not isinstance(d, Mapping):
            raise ModelParseError(f"{path}: expected an object")
        label = d.get("label", "")
        if not isinstance(label, str):
            raise ModelParseError(f"{path}.label: expected string")
        try:
            divisors.append(
                DivisorRecord(
                    id=_expect(d, "id", int, path),
                    N=_expect(d, "N", int, path),
                    nu=_expect(d, "nu", int, path),
                    label=label,
                )
            )
        except ValueError as exc:
            raise ModelParseError(f"{path}: {exc}") from None

    faces = []
    for i, f in enumerate(_expect(data, "faces", list, "top level")):
        path = f"faces[{i}]"
        if not isinstance(f, Mapping):
            raise ModelParseError(f"{path}: expected an object")
        try:
            faces.append(
                Face(
                    id=_expect(f, "id", int, path),
                    vertex_ids=tuple(_int_list(_expect(f, "vertices", list, path), f"{path}.vertices")),
                    subface_ids=tuple(_int_list(f.get("subfaces", []), f"{path}.subfaces")),
                )
            )
        except ValueError as exc:
            raise ModelParseError(f"{path}: {exc}") from None

    curves = []
    for i, c in enumerate(_expect(data, "curves", list, "top level")):
        path = f"curves[{i}]"
        if not isinstance(c, Mapping):
            raise ModelParseError(f"{path}: expected an object")
        raw_b = _expect(c, "b", dict, path)
        b = {}
        for k, v in raw_b.items():
            try:
                key = int(k)
            except ValueError:
                raise ModelParseError(f"{path}.b: key {k!r} is not a divisor id") from None
            if isinstance(v, bool) or not isinstance(v, int):
                raise ModelParseError(f"{path}.b[{k}]: expected integer")
            b[key] = v
        endpoints = _expect(c, "endpoints", dict, path)
        efaces = _int_list(_expect(endpoints, "faces", list, f"{path}.endpoints"), f"{path}.endpoints.faces")
        edivs = _int_list(_expect(endpoints, "divisors", list, f"{path}.endpoints"), f"{path}.endpoints.divisors")
        if len(efaces) != 2 or len(edivs) != 2:
            raise ModelParseError(f"{path}.endpoints: need exactly two faces and two divisors")
        curves.append(
            StratumCurveData(
                face_id=_expect(c, "face", int, path),
                b=b,
                endpoint_face_ids=(efaces[0], efaces[1]),
                endpoint_divisor_ids=(edivs[0], edivs[1]),
            )
        )

    try:
        return DegenerationModel(
            n=n,
            divisors={d.id: d for d in divisors},
            faces={f.id: f for f in faces},
            curves={c.face_id: c for c in curves},
        )
    except ValueError as exc:
        raise ModelParseError(str(exc)) from None


def parse_model(text: str) -> DegenerationModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return model_from_dict(data)


def load_model(path: str | Path) -> DegenerationModel:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def model_to_dict(m: DegenerationModel) -> dict:
    return {
        "version": FORMAT_VERSION,
        "n": m.n,
        "divisors": [
            {"id": d.id, "N": d.N, "nu": d.nu, "label": d.label}
            for d in sorted(m.divisors.values(), key=lambda d: d.id)
        ],
        "faces": [
            {"id": f.id, "vertices": list(f.vertex_ids), "subfaces": list(f.subface_ids)}
            for f in sorted(m.faces.values(), key=lambda f: f.id)
        ],
        "curves": [
            {
                "face": c.face_id,
                "b": {str(k): c.b[k] for k in sorted(c.b)},
                "endpoints": {
                    "faces": list(c.endpoint_face_ids),
                    "divisors": list(c.endpoint_divisor_ids),
                },
            }
            for c in sorted(m.curves.values(), key=lambda c: c.face_id)
        ],
    }


def serialize_model(m: DegenerationModel) -> str:
    return json.dumps(model_to_dict(m), indent=2) + "\n"


# -- reporting ----------------------------------------------------------------


def stratum_summary(m: DegenerationModel, tau_id: int, paper_basis: bool = False) -> dict:
    """Fan data of one stratum in serializable form."""
    sf = syz.fan_from_stratum(m, tau_id, paper_basis=paper_basis)
    rel = syz.wall_relation(sf)
    chart = syz.chart_for_codim1_face(m, tau_id, paper_basis=paper_basis)
    return {
        "face": tau_id,
        "iota": sf.iota.iota,
        "v0": list(sf.v0),
        "v": [list(sf.v_j[j]) for j in sf.j_divisors],
        "vinf": list(sf.vinf),
        "b": [rel[j] for j in sf.j_divisors],
        "det0": lattice.determinant(sf.sigma0.generators),
        "detinf": lattice.determinant(sf.sigmainf.generators),
        "slices": {
            "zero": {
                "labels": list(chart.labels0),
                "vertices": [[frac_str(x) for x in v] for v in chart.slice0.vertices],
            },
            "inf": {
                "labels": list(chart.labelsinf),
                "vertices": [[frac_str(x) for x in v] for v in chart.sliceinf.vertices],
            },
        },
    }


def build_report(m: DegenerationModel, paper_basis: bool = False) -> dict:
    """Full model report: validation, skeleton, topology, stratum fans."""
    validation = validate_model(m)
    report: dict = {"valid": validation.passed}
    if not validation.passed:
        report["problems"] = list(validation.problems)
        return report
    sk = essential_skeleton(m)
    ids = sorted(sk.vertex_ids)
    labels = [m.divisors[i].label for i in ids]
    report["skeleton_vertices"] = labels if all(labels) else ids
    report["min_ratio"] = frac_str(sk.min_ratio)
    report["max_degenerate"] = is_maximally_degenerate(m)
    report["pseudomanifold"] = pseudomanifold_check(sk).passed
    report["homology"] = list(homology_ranks(sk.faces))
    report["reduced"] = validation.reduced
    report["skeleton_dim"] = validation.skeleton_dim
    if validation.warnings:
        report["warnings"] = list(validation.warnings)
    strata = []
    for tau_id in sorted(m.curves):
        try:
            strata.append(stratum_summary(m, tau_id, paper_basis=paper_basis))
        except SkelefibError as exc:
            strata.append({"face": tau_id, "error": f"{type(exc).__name__}: {exc}"})
    report["strata"] = strata
    return report


# -- DOT export ---------------------------------------------------------------


def to_dot(m: DegenerationModel) -> str:
    """Graphviz rendering of the dual complex one-skeleton.

    Divisor nodes are sized by multiplicity and filled when they belong to
    the essential skeleton.
    """
    sk = essential_skeleton(m)
    lines = ["graph dual_complex {", "  node [shape=circle, style=filled];"]
    for d in sorted(m.divisors.values(), key=lambda d: d.id):
        tenths = 4 + 2 * d.N
        width = f"{tenths // 10}.{tenths % 10}"
        color = "lightblue" if d.id in sk.vertex_ids else "lightgray"
        label = d.label or f"E{d.id}"
        lines.append(
            f'  d{d.id} [label="{label} (N={d.N})", width={width}, fillcolor={color}];'
        )
    for f in sorted(m.faces.values(), key=lambda f: f.id):
        if f.dim == 1:
            u, v = f.vertex_ids
            lines.append(f"  d{u} -- d{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
