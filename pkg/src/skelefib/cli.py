"""Command-line driver.

Exit codes: 0 on success, 1 on domain errors (invalid model, impossible
request), 2 on parse failures.  All numeric output is exact; rationals
are printed as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import modelio, syz
from .degeneration import star_subdivide, validate_model
from .errors import ModelParseError, SkelefibError
from .modelio import frac_str, parse_frac


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skelefib",
        description="Exact reports, stratum fans, charts and monodromy "
        "for degeneration models.",
        epilog="The environment variable SKELEFIB_SEED is reserved and "
        "currently unused: every command is deterministic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, **flags):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="model JSON file")
        p.add_argument("--json", action="store_true", help="compact single-line output")
        if flags.get("face"):
            p.add_argument("--face", type=int, required=True, help="face id")
        if flags.get("cycle"):
            p.add_argument(
                "--cycle", required=True, help="comma-separated top face ids"
            )
        if flags.get("point"):
            p.add_argument(
                "--point",
                required=True,
                help='valued point as JSON: {"face": ID, "q": {"divisor": "p/q"}}',
            )
        if flags.get("out"):
            p.add_argument("--out", help="write output to this path instead of stdout")
        if flags.get("basis"):
            p.add_argument(
                "--paper-basis",
                action="store_true",
                help="use the explicit reduced-case basis instead of the "
                "normal-form completion",
            )
        return p

    add("report", "validate and summarize a model", basis=True)
    add("fan", "stratum fan of a codimension-one face", face=True, basis=True)
    add("chart", "canonical chart of a face, or slice charts of a wall", face=True, basis=True)
    add("monodromy", "composed transition around a cycle of top faces", cycle=True, basis=True)
    add("subdivide", "star subdivision of a top face", face=True, out=True)
    add("retract", "retract a valued point onto the skeleton", point=True)
    add("export-dot", "Graphviz view of the dual complex", out=True)
    return parser


def _emit(payload, compact: bool, out: str | None = None) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=None if compact else 2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _require_valid(m) -> None:
    report = validate_model(m)
    if not report.passed:
        raise SkelefibError(
            "model is invalid: " + "; ".join(report.problems)
        )


def _cmd_report(m, args) -> int:
    report = modelio.build_report(m, paper_basis=args.paper_basis)
    _emit(report, args.json)
    return 0 if report["valid"] else 1


def _cmd_fan(m, args) -> int:
    _require_valid(m)
    _emit(modelio.stratum_summary(m, args.face, paper_basis=args.paper_basis), args.json)
    return 0


def _cmd_chart(m, args) -> int:
    _require_valid(m)
    face = m.faces.get(args.face)
    if face is None:
        raise SkelefibError(f"unknown face {args.face}")
    if face.dim == m.n:
        chart = syz.canonical_chart(m, args.face)
        payload = {
            "face": args.face,
            "kind": "canonical",
            "axes": list(chart.axes),
            "dropped": chart.dropped,
            "vertices": {
                str(v): [frac_str(x) for x in chart.vertex_coords[v]]
                for v in face.vertex_ids
            },
        }
    elif face.dim == m.n - 1:
        summary = modelio.stratum_summary(m, args.face, paper_basis=args.paper_basis)
        payload = {
            "face": args.face,
            "kind": "wall",
            "iota": summary["iota"],
            "slices": summary["slices"],
            "shared": list(syz.fan_from_stratum(m, args.face, paper_basis=args.paper_basis).j_divisors),
        }
    else:
        raise SkelefibError(
            f"face {args.face} has dimension {face.dim}; charts exist for "
            f"dimensions {m.n} and {m.n - 1}"
        )
    _emit(payload, args.json)
    return 0


def _cmd_monodromy(m, args) -> int:
    _require_valid(m)
    try:
        cycle = [int(x) for x in args.cycle.split(",") if x.strip() != ""]
    except ValueError:
        raise SkelefibError(f"--cycle must be comma-separated integers, got {args.cycle!r}")
    t = syz.monodromy(m, cycle, paper_basis=args.paper_basis)
    payload = {
        "A": [list(row) for row in t.A],
        "b": [frac_str(x) for x in t.b],
        "det": t.linear_det,
    }
    _emit(payload, args.json)
    return 0


def _cmd_subdivide(m, args) -> int:
    _require_valid(m)
    result = star_subdivide(m, args.face)
    _emit(modelio.serialize_model(result), args.json, out=args.out)
    return 0


def _cmd_retract(m, args) -> int:
    _require_valid(m)
    try:
        data = json.loads(args.point)
    except json.JSONDecodeError as exc:
        raise SkelefibError(f"--point is not valid JSON: {exc.msg}")
    if not isinstance(data, dict) or "face" not in data or "q" not in data:
        raise SkelefibError('--point needs the form {"face": ID, "q": {...}}')
    try:
        q = {int(k): parse_frac(v) for k, v in dict(data["q"]).items()}
        point = syz.ValuedPoint(face_id=int(data["face"]), q=q)
    except (ModelParseError, ValueError, TypeError) as exc:
        raise SkelefibError(f"bad --point payload: {exc}")
    sp = syz.retract(m, point)
    face = m.faces[sp.face_id]
    payload = {
        "face": sp.face_id,
        "alpha": {str(v): frac_str(a) for v, a in zip(face.vertex_ids, sp.alpha)},
    }
    _emit(payload, args.json)
    return 0


def _cmd_export_dot(m, args) -> int:
    _emit(modelio.to_dot(m), args.json, out=args.out)
    return 0


_COMMANDS = {
    "report": _cmd_report,
    "fan": _cmd_fan,
    "chart": _cmd_chart,
    "monodromy": _cmd_monodromy,
    "subdivide": _cmd_subdivide,
    "retract": _cmd_retract,
    "export-dot": _cmd_export_dot,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        model = modelio.load_model(args.file)
    except ModelParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[args.command](model, args)
    except ModelParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except SkelefibError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
