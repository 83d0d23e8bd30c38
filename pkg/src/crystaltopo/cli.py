"""Command-line interface.

Four commands over a JSON document describing a lattice sample or an
explicit cell list: ``build`` (construct and validate), ``homology``
(groups, Euler number, orientability), ``obstruct`` (field extension
analysis), ``network`` (edge-current and potential checks).  Reports are
deterministic; ``--report json`` emits one sorted JSON object, and every
report embeds the SHA-256 digest of the input document.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Any, Sequence

from . import __version__
from .complexes import (
    DeltaComplex,
    RING_INT,
    RING_MOD2,
    RING_REAL,
    incidence_matrix,
    validate_complex,
)
from .errors import CrystalTopoError, DocumentError
from .homology import (
    euler_characteristic,
    homology,
    homology_generators,
    orientability,
)
from .lattice import (
    BOUNDARY_FREE,
    BOUNDARY_KINDS,
    DefectSpec,
    LatticeSpec,
    build_lattice_complex,
)
from .network import check_current_law, potential_check
from .obstruction import extend_field, index_sum_check
from .orderfield import OrderField, SPACE_FINITE, make_space

RING_FLAGS = {"z": RING_INT, "z2": RING_MOD2, "r": RING_REAL}

LATTICE_KEYS_REQUIRED = {"dimension", "ambient", "generators", "index_box",
                         "scheme"}
LATTICE_KEYS_OPTIONAL = {"removed_indices", "defects", "boundary_condition",
                         "field", "currents", "drops"}
EXPLICIT_KEYS_REQUIRED = {"complex"}
EXPLICIT_KEYS_OPTIONAL = {"field", "currents", "drops"}

DEFECT_KEYS = {
    "vacancy": {"kind", "index"},
    "substitution_marker": {"kind", "index"},
    "line_defect": {"kind", "axis", "transverse"},
    "surface_defect": {"kind", "axis", "coordinate"},
}


def _fail(msg: str) -> DocumentError:
    return DocumentError(msg)


def _as_label(x: Any):
    """JSON labels: lists become tuples so they can key vertex lookups."""
    if isinstance(x, list):
        return tuple(_as_label(v) for v in x)
    return x


def load_document(path: str) -> tuple[dict, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise _fail(f"cannot read {path}: {exc}") from None
    digest = hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise _fail(f"{path} is not UTF-8: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _fail(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}") from None
    if not isinstance(doc, dict):
        raise _fail(f"{path}: top level must be a JSON object")
    return doc, digest


def _check_keys(doc: dict, required: set, optional: set, where: str) -> None:
    keys = set(doc)
    missing = required - keys
    if missing:
        raise _fail(f"{where}: missing keys: {', '.join(sorted(missing))}")
    unknown = keys - required - optional
    if unknown:
        raise _fail(f"{where}: unknown keys: {', '.join(sorted(unknown))}")


def _parse_defect(entry: Any, pos: int) -> DefectSpec:
    where = f"defects[{pos}]"
    if not isinstance(entry, dict) or "kind" not in entry:
        raise _fail(f"{where}: each defect is an object with a 'kind'")
    kind = entry["kind"]
    if kind not in DEFECT_KEYS:
        raise _fail(f"{where}: unknown defect kind {kind!r}")
    unknown = set(entry) - DEFECT_KEYS[kind]
    if unknown:
        raise _fail(f"{where}: unknown keys for {kind}: "
                    f"{', '.join(sorted(unknown))}")
    missing = DEFECT_KEYS[kind] - set(entry)
    if missing:
        raise _fail(f"{where}: missing keys for {kind}: "
                    f"{', '.join(sorted(missing))}")
    return DefectSpec(
        kind=kind,
        index=tuple(entry["index"]) if "index" in entry else None,
        axis=entry.get("axis"),
        transverse=tuple(entry["transverse"]) if "transverse" in entry else None,
        coordinate=entry.get("coordinate"),
    )


def _parse_boundary(value: Any) -> tuple[str, tuple[int, ...]]:
    if value is None:
        return BOUNDARY_FREE, ()
    if isinstance(value, str):
        if value not in BOUNDARY_KINDS:
            raise _fail(f"boundary_condition: unknown kind {value!r}")
        return value, ()
    if isinstance(value, dict):
        unknown = set(value) - {"kind", "axes"}
        if unknown:
            raise _fail("boundary_condition: unknown keys: "
                        f"{', '.join(sorted(unknown))}")
        kind = value.get("kind")
        if kind not in BOUNDARY_KINDS:
            raise _fail(f"boundary_condition: unknown kind {kind!r}")
        axes = tuple(int(a) for a in value.get("axes", ()))
        return kind, axes
    raise _fail("boundary_condition: expected a string or an object")


def build_from_document(doc: dict) -> tuple[DeltaComplex, dict]:
    """Dispatch on document form; returns the complex and a build report."""
    if "complex" in doc:
        _check_keys(doc, EXPLICIT_KEYS_REQUIRED, EXPLICIT_KEYS_OPTIONAL,
                    "document")
        body = doc["complex"]
        if not isinstance(body, dict):
            raise _fail("'complex' must be an object")
        _check_keys(body, {"cells"}, {"auto_close"}, "complex")
        cells = body["cells"]
        if (not isinstance(cells, list) or not cells
                or not all(isinstance(c, list) and c for c in cells)):
            raise _fail("complex.cells must be a nonempty list of "
                        "nonempty vertex lists")
        auto_close = body.get("auto_close", True)
        if not isinstance(auto_close, bool):
            raise _fail("complex.auto_close must be a boolean")
        cx = DeltaComplex.from_simplices(
            [tuple(_as_label(v) for v in c) for c in cells],
            auto_close=auto_close)
        return cx, {"form": "explicit", "cells": cx.cell_counts()}

    _check_keys(doc, LATTICE_KEYS_REQUIRED, LATTICE_KEYS_OPTIONAL, "document")
    try:
        dimension = int(doc["dimension"])
        ambient = int(doc["ambient"])
    except (TypeError, ValueError):
        raise _fail("dimension and ambient must be integers") from None
    generators = doc["generators"]
    if (not isinstance(generators, list)
            or not all(isinstance(g, list) for g in generators)):
        raise _fail("generators must be a list of coordinate lists")
    index_box = doc["index_box"]
    if (not isinstance(index_box, list)
            or not all(isinstance(r, list) and len(r) == 2 for r in index_box)):
        raise _fail("index_box must be a list of [lo, hi] pairs")
    scheme = doc["scheme"]
    removed = doc.get("removed_indices", [])
    if not isinstance(removed, list):
        raise _fail("removed_indices must be a list of multi-indices")
    defects = doc.get("defects", [])
    if not isinstance(defects, list):
        raise _fail("defects must be a list")
    boundary, axes = _parse_boundary(doc.get("boundary_condition"))
    spec = LatticeSpec(
        dimension=dimension,
        ambient=ambient,
        generators=tuple(tuple(float(x) for x in g) for g in generators),
        index_box=tuple((int(lo), int(hi)) for lo, hi in index_box),
        scheme=scheme,
        removed_indices=tuple(tuple(int(c) for c in r) for r in removed),
        defects=tuple(_parse_defect(d, i) for i, d in enumerate(defects)),
        boundary=boundary,
        periodic_axes=axes,
    )
    cx, report = build_lattice_complex(spec)
    report["form"] = "lattice"
    return cx, report


def field_from_document(doc: dict, cx: DeltaComplex) -> OrderField:
    body = doc.get("field")
    if body is None:
        raise _fail("this command needs a 'field' section in the document")
    if not isinstance(body, dict):
        raise _fail("'field' must be an object")
    _check_keys(body, {"space", "samples"}, {"labels"}, "field")
    space = make_space(body["space"],
                       tuple(body.get("labels", ())))
    samples = body["samples"]
    if not isinstance(samples, list):
        raise _fail("field.samples must be a list of [vertex, value] pairs")
    mapping = {}
    for i, entry in enumerate(samples):
        if not isinstance(entry, list) or len(entry) != 2:
            raise _fail(f"field.samples[{i}]: expected [vertex, value]")
        label = _as_label(entry[0])
        if label in mapping:
            raise _fail(f"field.samples[{i}]: vertex {label!r} sampled twice")
        mapping[label] = entry[1]
    try:
        return OrderField.from_samples(cx, space, mapping)
    except ValueError as exc:
        raise _fail(f"field: {exc}") from None


def _edge_data(doc: dict, key: str, cx: DeltaComplex) -> dict[int, float]:
    body = doc.get(key)
    if body is None:
        return {}
    if not isinstance(body, list):
        raise _fail(f"{key} must be a list of [edge, value] pairs")
    out: dict[int, float] = {}
    for i, entry in enumerate(body):
        if not isinstance(entry, list) or len(entry) != 2:
            raise _fail(f"{key}[{i}]: expected [edge, value]")
        edge, value = entry
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise _fail(f"{key}[{i}]: value must be a number") from None
        if isinstance(edge, int):
            if not 0 <= edge < cx.n_cells(1):
                raise _fail(f"{key}[{i}]: edge id {edge} out of range")
            cid, sign = edge, 1
        elif isinstance(edge, list) and len(edge) == 2:
            try:
                cid, sign = cx.find_cell(
                    1, (_as_label(edge[0]), _as_label(edge[1])))
            except CrystalTopoError as exc:
                raise _fail(f"{key}[{i}]: {exc}") from None
        else:
            raise _fail(f"{key}[{i}]: edge must be an id or a vertex pair")
        out[cid] = out.get(cid, 0.0) + sign * value
    return out


# ---------------------------------------------------------------------------
# Report rendering


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _emit(report: dict, mode: str) -> str:
    if mode == "json":
        return json.dumps(report, sort_keys=True, indent=2,
                          default=_json_default) + "\n"
    lines = _text_lines(report)
    return "\n".join(lines) + "\n"


def _json_default(obj):
    import numpy as np
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _text_lines(report: dict) -> list[str]:
    cmd = report["command"]
    lines = [f"{cmd}: document sha256 {report['document_sha256'][:16]}..."]
    if cmd == "build":
        counts = report["cells"]
        names = ["vertices", "edges", "faces", "cells"]
        parts = [f"{n} {names[k] if k < 4 else f'{k}-cells'}"
                 for k, n in enumerate(counts)]
        lines.append("cells: " + ", ".join(parts))
        lines.append(f"euler characteristic (cells): "
                     f"{report['euler_characteristic_cells']}")
        lines.append(f"validation: "
                     f"{'ok' if report['validation']['ok'] else 'FAILED'}")
        for msg in report["validation"]["messages"]:
            lines.append(f"  {msg}")
        if "defects" in report and report["defects"]["removed_total"]:
            lines.append(
                f"removed sites: {report['defects']['removed_total']}")
        for key, M in sorted(report.get("matrices", {}).items()):
            lines.append(f"{key}: {M['shape'][0]} x {M['shape'][1]}")
            for i, j, v in M["entries"]:
                lines.append(f"  {i} {j} {v}")
    elif cmd == "homology":
        for g in report["groups"]:
            lines.append(f"H_{g['k']}: {g['text']}")
        lines.append(f"euler characteristic: {report['euler_characteristic']}")
        o = report["orientability"]
        lines.append(
            "orientable: " + ("yes" if o["orientable"] else "no")
            + (", closed" if o["closed"] else ", with boundary"))
        for gen in report.get("generators", []):
            kind = "free" if gen["order"] == 0 else f"order {gen['order']}"
            lines.append(f"H_{gen['k']} generator ({kind}): {gen['chain']}")
    elif cmd == "obstruct":
        lines.append(f"space: {report['space']}")
        for v in report["verdicts"]:
            status = "extends" if v["ok"] else "BLOCKED"
            extra = " (vacuous)" if v.get("vacuous") else ""
            lines.append(
                f"skeleton {v['k']}: {status}, {v['checked']} cells{extra}")
            if v.get("blocking_shown"):
                shown = ", ".join(str(b) for b in v["blocking_shown"])
                lines.append(f"  blocking cells: {shown}"
                             + (" ..." if v["blocking_total"]
                                > len(v["blocking_shown"]) else ""))
        lines.append("extends over full complex: "
                     + ("yes" if report["extends"] else "no"))
        if report.get("cocycle_ok") is not None:
            lines.append("cocycle check: "
                         + ("pass" if report["cocycle_ok"] else "fail"))
        if report.get("class_status"):
            lines.append(f"obstruction class: {report['class_status']}")
        for p in report.get("generator_pairings", []):
            kind = ("free" if p["generator_order"] == 0
                    else f"order {p['generator_order']}")
            lines.append(f"pairing with {kind} generator: {p['pairing']}")
        for cset in report.get("component_values", []):
            lines.append(f"component {cset['component']}: values "
                         + ", ".join(cset["labels"]))
        if report.get("index_sum") and report["index_sum"]["applicable"]:
            s = report["index_sum"]
            verdict = "consistent" if s["consistent"] else "MISMATCH"
            lines.append(f"index sum {s['index_sum']} vs euler {s['euler']}: "
                         f"{verdict}")
        if report.get("note"):
            lines.append(f"note: {report['note']}")
    elif cmd == "network":
        cl = report.get("current_law")
        if cl is not None:
            lines.append("current law: " + ("pass" if cl["ok"] else "FAIL")
                         + f" (max residual {_fmt(cl['max_residual'])})")
            for v, r in sorted(cl["residuals"].items()):
                lines.append(f"  net flow at vertex {v}: {_fmt(r)}")
        pc = report.get("potential")
        if pc is not None:
            lines.append("potential check: "
                         + ("pass" if pc["consistent"] else "FAIL"))
            if pc["consistent"]:
                lines.append("  potentials: "
                             + " ".join(_fmt(p) for p in pc["potentials"]))
            else:
                lines.append(
                    f"  violating loop circulation: "
                    f"{_fmt(pc['loop_circulation'])}")
                lines.append("  loop edges: " + " ".join(
                    f"{e}:{_fmt(c)}" for e, c in
                    sorted(pc["loop"].items())))
    return lines


# ---------------------------------------------------------------------------
# Commands


def cmd_build(args) -> tuple[int, dict]:
    doc, digest = load_document(args.document)
    cx, build_report = build_from_document(doc)
    validation = validate_complex(cx)
    report = {
        "command": "build",
        "document_sha256": digest,
        "form": build_report.get("form"),
        "cells": cx.cell_counts(),
        "dimension": cx.dim,
        "euler_characteristic_cells": sum(
            (-1) ** k * n for k, n in enumerate(cx.cell_counts())),
        "validation": {"ok": validation.ok,
                       "messages": list(validation.messages)},
    }
    if "defects" in build_report:
        report["defects"] = build_report["defects"]
    if args.dump_matrices:
        mats = {}
        for k in range(1, cx.dim + 1):
            M = incidence_matrix(cx, k)
            mats[f"d{k}"] = {
                "shape": list(M.shape),
                "entries": [[int(i), int(j), int(M[i, j])]
                            for i in range(M.shape[0])
                            for j in range(M.shape[1]) if M[i, j] != 0],
            }
        report["matrices"] = mats
    return 0, report


def cmd_homology(args) -> tuple[int, dict]:
    doc, digest = load_document(args.document)
    cx, _ = build_from_document(doc)
    ring = RING_FLAGS[args.ring]
    groups = []
    for k in range(cx.dim + 1):
        g = homology(cx, k, ring)
        groups.append({"k": k, "betti": g.betti,
                       "torsion": list(g.torsion), "text": str(g)})
    orient = orientability(cx)
    report = {
        "command": "homology",
        "document_sha256": digest,
        "ring": ring,
        "groups": groups,
        "euler_characteristic": euler_characteristic(cx),
        "orientability": {"orientable": orient.orientable,
                          "closed": orient.closed,
                          "reason": orient.reason},
    }
    if args.generators:
        gens = []
        for k in range(cx.dim + 1):
            for order, chain in homology_generators(cx, k):
                gens.append({
                    "k": k, "order": order,
                    "chain": " ".join(
                        f"{cid}:{v}" for cid, v in
                        sorted(chain.coeffs.items()))})
        report["generators"] = gens
    return 0, report


def cmd_obstruct(args) -> tuple[int, dict]:
    doc, digest = load_document(args.document)
    cx, _ = build_from_document(doc)
    field_ = field_from_document(doc, cx)
    result = extend_field(field_)
    verdicts = []
    for v in result.verdicts:
        entry = {"k": v.k, "ok": v.ok, "checked": v.checked,
                 "vacuous": v.vacuous}
        if v.blocking:
            entry["blocking_shown"] = list(v.blocking[:10])
            entry["blocking_total"] = len(v.blocking)
        verdicts.append(entry)
    report = {
        "command": "obstruct",
        "document_sha256": digest,
        "space": result.space,
        "extends": result.extends,
        "reached": result.reached,
        "blocked_at": result.blocked_at,
        "verdicts": verdicts,
        "cocycle_ok": result.cocycle_ok,
        "class_status": result.class_status,
        "note": result.note,
    }
    if result.generator_pairings is not None:
        report["generator_pairings"] = [
            {"generator_order": p["generator_order"],
             "pairing": list(p["pairing"])
             if isinstance(p["pairing"], tuple) else p["pairing"]}
            for p in result.generator_pairings]
    if result.component_values is not None:
        report["component_values"] = result.component_values
    if result.cochain is not None:
        report["cochain"] = {
            "k": result.cochain.k,
            "group": result.cochain.group.name,
            "values": [[cid, list(v) if isinstance(v, tuple) else v]
                       for cid, v in sorted(result.cochain.values.items())],
        }
    if (field_.space.name == "circle" and cx.dim == 2):
        s = index_sum_check(field_)
        report["index_sum"] = {
            "applicable": s.applicable, "index_sum": s.index_sum,
            "euler": s.euler, "consistent": s.consistent,
            "reason": s.reason}
    return 0, report


def cmd_network(args) -> tuple[int, dict]:
    doc, digest = load_document(args.document)
    cx, _ = build_from_document(doc)
    currents = _edge_data(doc, "currents", cx)
    drops = _edge_data(doc, "drops", cx)
    if "currents" not in doc and "drops" not in doc:
        raise _fail("network needs 'currents' or 'drops' in the document")
    report: dict = {"command": "network", "document_sha256": digest}
    if "currents" in doc:
        cl = check_current_law(cx, currents)
        report["current_law"] = {
            "ok": cl.ok, "max_residual": cl.max_residual,
            "residuals": {str(k): v for k, v in sorted(cl.residuals.items())},
            "tol": cl.tol}
    if "drops" in doc:
        pc = potential_check(cx, drops)
        entry: dict = {"consistent": pc.consistent, "tol": pc.tol}
        if pc.consistent:
            entry["potentials"] = pc.potentials
        else:
            entry["loop"] = {str(e): c
                             for e, c in sorted(pc.violating_loop.coeffs.items())}
            entry["loop_circulation"] = pc.loop_circulation
        report["potential"] = entry
    return 0, report


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crystaltopo",
        description="Topological analysis of defective crystal lattices")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("document", help="JSON document path")
        p.add_argument("--report", choices=("text", "json"), default="text")

    p_build = sub.add_parser("build", help="construct and validate a complex")
    common(p_build)
    p_build.add_argument("--dump-matrices", action="store_true",
                         help="include the boundary matrices in the report")

    p_hom = sub.add_parser("homology", help="homology groups and Euler number")
    common(p_hom)
    p_hom.add_argument("--ring", choices=sorted(RING_FLAGS), default="z")
    p_hom.add_argument("--generators", action="store_true",
                       help="include explicit generator chains")

    p_obs = sub.add_parser("obstruct",
                           help="field extension / obstruction analysis")
    common(p_obs)

    p_net = sub.add_parser("network", help="edge current and potential checks")
    common(p_net)
    return parser


COMMANDS = {
    "build": cmd_build,
    "homology": cmd_homology,
    "obstruct": cmd_obstruct,
    "network": cmd_network,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        code, report = COMMANDS[args.command](args)
    except CrystalTopoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_emit(report, args.report))
    return code


if __name__ == "__main__":
    sys.exit(main())
