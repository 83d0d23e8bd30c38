"""Finite Bravais-lattice samples: geometry, defects, boundary conditions.

A lattice sample is the set of integer multi-indices in a box, minus
removed sites, mapped into ambient space by the generator matrix.  The
complex on top of it comes from :func:`crystaltopo.complexes.build_complex`;
this module owns everything before and after: generator checks, defect
removal, and the free/constant/periodic boundary treatments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .complexes import Cell, DeltaComplex, build_complex
from .errors import (
    ComplexBuildError,
    DefectLocusError,
    DegenerateGeneratorsError,
    DimensionError,
)

INDEPENDENCE_RTOL = 1e-10

BOUNDARY_FREE = "free"
BOUNDARY_CONSTANT = "constant"
BOUNDARY_PERIODIC = "periodic"
BOUNDARY_KINDS = (BOUNDARY_FREE, BOUNDARY_CONSTANT, BOUNDARY_PERIODIC)

DEFECT_VACANCY = "vacancy"
DEFECT_LINE = "line_defect"
DEFECT_SURFACE = "surface_defect"
DEFECT_MARKER = "substitution_marker"
DEFECT_KINDS = (DEFECT_VACANCY, DEFECT_LINE, DEFECT_SURFACE, DEFECT_MARKER)


@dataclass(frozen=True)
class DefectSpec:
    """One defect instruction.  Axes are 1-based in all public interfaces."""

    kind: str
    index: tuple[int, ...] | None = None
    axis: int | None = None
    transverse: tuple[int, ...] | None = None
    coordinate: int | None = None

    def validated(self, m: int) -> "DefectSpec":
        if self.kind not in DEFECT_KINDS:
            raise DefectLocusError(f"unknown defect kind {self.kind!r}")
        if self.kind in (DEFECT_VACANCY, DEFECT_MARKER):
            if self.index is None or len(self.index) != m:
                raise DefectLocusError(
                    f"{self.kind} needs an index of length {m}")
        elif self.kind == DEFECT_LINE:
            if self.axis is None or not 1 <= self.axis <= m:
                raise DefectLocusError(
                    f"line_defect axis must be in 1..{m}")
            if self.transverse is None or len(self.transverse) != m - 1:
                raise DefectLocusError(
                    f"line_defect needs {m - 1} transverse coordinates")
        elif self.kind == DEFECT_SURFACE:
            if self.axis is None or not 1 <= self.axis <= m:
                raise DefectLocusError(
                    f"surface_defect axis must be in 1..{m}")
            if self.coordinate is None:
                raise DefectLocusError("surface_defect needs a coordinate")
        return self


@dataclass(frozen=True)
class LatticeSpec:
    """Validated description of one lattice sample."""

    dimension: int
    ambient: int
    generators: tuple[tuple[float, ...], ...]
    index_box: tuple[tuple[int, int], ...]
    scheme: str
    removed_indices: tuple[tuple[int, ...], ...] = ()
    defects: tuple[DefectSpec, ...] = ()
    boundary: str = BOUNDARY_FREE
    periodic_axes: tuple[int, ...] = ()


def check_generators(generators: Sequence[Sequence[float]], m: int,
                     n: int) -> np.ndarray:
    """Validate shapes and linear independence; return the m x n array.

    Independence is judged by the Gram determinant against the scale of
    the vectors themselves, so uniformly tiny but independent generators
    pass while a near-coplanar triple fails.
    """
    A = np.array(generators, dtype=float)
    if A.shape != (m, n):
        raise DegenerateGeneratorsError(
            f"expected {m} generators of length {n}, got shape {A.shape}")
    norms = np.linalg.norm(A, axis=1)
    if np.any(norms == 0.0):
        k = int(np.argmin(norms))
        raise DegenerateGeneratorsError(f"generator {k + 1} is the zero vector")
    gram = A @ A.T
    vol = math.sqrt(max(float(np.linalg.det(gram)), 0.0))
    if vol <= INDEPENDENCE_RTOL * float(np.prod(norms)):
        # Name a culprit: the vector best explained by the others.
        worst, worst_k = -1.0, 0
        for k in range(m):
            others = np.delete(A, k, axis=0)
            if others.shape[0] == 0:
                continue
            coef, *_ = np.linalg.lstsq(others.T, A[k], rcond=None)
            resid = float(np.linalg.norm(A[k] - others.T @ coef))
            score = 1.0 - resid / max(norms[k], 1e-300)
            if score > worst:
                worst, worst_k = score, k
        raise DegenerateGeneratorsError(
            f"generators are not linearly independent "
            f"(generator {worst_k + 1} lies in the span of the others)")
    return A


def unit_cell_volume(generators: Sequence[Sequence[float]]) -> float:
    """|det| of the generator matrix; defined only for m == n."""
    A = np.array(generators, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(
            "unit cell volume needs as many generators as ambient dimensions")
    return abs(float(np.linalg.det(A)))


def reciprocal_basis(generators: Sequence[Sequence[float]]) -> np.ndarray:
    """Dual vectors b_i in the generator span with b_i . a_j = delta_ij."""
    A = check_generators(generators, len(generators), len(generators[0]))
    gram = A @ A.T
    return np.linalg.solve(gram, A)


def lattice_positions(generators: np.ndarray,
                      indices: Iterable[tuple[int, ...]]) -> dict:
    """Map each multi-index I to sum_k I_k a_k."""
    return {idx: np.asarray(idx, dtype=float) @ generators for idx in indices}


def box_points(index_box: Sequence[tuple[int, int]]) -> list[tuple[int, ...]]:
    for lo, hi in index_box:
        if hi < lo:
            raise ComplexBuildError(f"empty index box range ({lo}, {hi})")
    return [tuple(p) for p in
            product(*(range(lo, hi + 1) for lo, hi in index_box))]


def _in_box(idx: tuple[int, ...], box: Sequence[tuple[int, int]]) -> bool:
    return all(lo <= c <= hi for c, (lo, hi) in zip(idx, box))


def apply_defects(points: set, box: Sequence[tuple[int, int]],
                  defects: Sequence[DefectSpec]) -> tuple[set, dict]:
    """Remove defect loci from the point set; markers are recorded only.

    Each defect must actually meet the current point set, otherwise the
    instruction is considered misaddressed and rejected.
    """
    m = len(box)
    surviving = set(points)
    report = {"vacancies": [], "line_defects": [], "surface_defects": [],
              "markers": [], "removed_total": 0}
    for spec in defects:
        spec = spec.validated(m)
        if spec.kind == DEFECT_VACANCY:
            idx = tuple(spec.index)
            if not _in_box(idx, box):
                raise DefectLocusError(f"vacancy {idx} is outside the index box")
            if idx not in surviving:
                raise DefectLocusError(
                    f"vacancy {idx} addresses a site that is already absent")
            surviving.discard(idx)
            report["vacancies"].append(idx)
            report["removed_total"] += 1
        elif spec.kind == DEFECT_MARKER:
            idx = tuple(spec.index)
            if idx not in surviving:
                raise DefectLocusError(
                    f"substitution marker {idx} addresses an absent site")
            report["markers"].append(idx)
        elif spec.kind == DEFECT_LINE:
            axis = spec.axis - 1
            others = [a for a in range(m) if a != axis]
            hit = {p for p in surviving
                   if tuple(p[a] for a in others) == tuple(spec.transverse)}
            if not hit:
                raise DefectLocusError(
                    f"line defect along axis {spec.axis} at "
                    f"{tuple(spec.transverse)} misses every site")
            surviving -= hit
            report["line_defects"].append(
                {"axis": spec.axis, "transverse": tuple(spec.transverse),
                 "removed": len(hit)})
            report["removed_total"] += len(hit)
        elif spec.kind == DEFECT_SURFACE:
            axis = spec.axis - 1
            hit = {p for p in surviving if p[axis] == spec.coordinate}
            if not hit:
                raise DefectLocusError(
                    f"surface defect at axis {spec.axis} = {spec.coordinate} "
                    "misses every site")
            surviving -= hit
            report["surface_defects"].append(
                {"axis": spec.axis, "coordinate": spec.coordinate,
                 "removed": len(hit)})
            report["removed_total"] += len(hit)
    return surviving, report


# ---------------------------------------------------------------------------
# Boundary conditions


def _collapsed_label(box: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    # Below every box coordinate, so the new vertex sorts first.
    return tuple(lo - 1 for lo, _ in box)


def apply_constant_boundary(complex_: DeltaComplex,
                            box: Sequence[tuple[int, int]]) -> DeltaComplex:
    """Quotient that pins the sample's outer hull to a single state.

    All hull vertices become one vertex; cells lying inside a hull facet
    (every corner sharing one extreme coordinate on some axis) are
    collapsed away, and surviving cells lose those faces.  The result is
    the relative complex of the sample against its hull.
    """
    m = len(box)

    def on_hull(label) -> bool:
        return any(label[a] == lo or label[a] == hi
                   for a, (lo, hi) in enumerate(box))

    def pinned(labels) -> bool:
        for a, (lo, hi) in enumerate(box):
            coords = {lab[a] for lab in labels}
            if coords == {lo} or coords == {hi}:
                return True
        return False

    w = _collapsed_label(box)
    if w in complex_.label_to_id:
        raise ComplexBuildError(
            f"label {w} is taken; cannot introduce the collapsed vertex")
    kept_labels = [lab for lab in complex_.vertex_labels if not on_hull(lab)]
    new_labels = sorted(kept_labels + [w])
    new_vid = {lab: i for i, lab in enumerate(new_labels)}
    wid = new_vid[w]

    def map_vertex(old_id: int) -> int:
        lab = complex_.vertex_labels[old_id]
        return wid if on_hull(lab) else new_vid[lab]

    layers: list[list[Cell]] = [
        [Cell((i,), (), complex_.cells[0][0].shape if complex_.cells[0]
              else "simplex") for i in range(len(new_labels))]]
    survivors_prev: dict[int, int] = {}
    for old_id, cell in enumerate(complex_.cells[0]):
        lab = complex_.vertex_labels[cell.vertices[0]]
        if not on_hull(lab):
            survivors_prev[old_id] = new_vid[lab]
        else:
            survivors_prev[old_id] = wid
    # Every 0-cell maps somewhere (hull vertices merge into w); for k >= 1
    # only unpinned cells survive.
    for k in range(1, complex_.dim + 1):
        kept: list[tuple[int, Cell]] = []
        for old_id, cell in enumerate(complex_.cells[k]):
            labels = [complex_.vertex_labels[v] for v in cell.vertices]
            if not pinned(labels):
                kept.append((old_id, cell))
        kept.sort(key=lambda item: (
            tuple(map_vertex(v) for v in item[1].vertices), item[0]))
        new_ids = {old_id: i for i, (old_id, _) in enumerate(kept)}
        layer = []
        for old_id, cell in kept:
            verts = tuple(map_vertex(v) for v in cell.vertices)
            faces = []
            for fid, coeff in cell.faces:
                if k == 1:
                    faces.append((survivors_prev[fid], coeff))
                elif fid in prev_new_ids:
                    faces.append((prev_new_ids[fid], coeff))
            layer.append(Cell(verts, tuple(faces), cell.shape))
        layers.append(layer)
        prev_new_ids = new_ids
    info = dict(complex_.lattice_info or {})
    info.update({"boundary": BOUNDARY_CONSTANT, "collapsed_vertex": w})
    return DeltaComplex.from_resolved(new_labels, layers, lattice_info=info)


def periodic_image(label: tuple[int, ...], box: Sequence[tuple[int, int]],
                   axes: Sequence[int]) -> tuple[int, ...]:
    """Wrap a multi-index into the fundamental domain on the given axes."""
    out = list(label)
    for a in axes:
        lo, hi = box[a]
        period = hi - lo
        out[a] = lo + (out[a] - lo) % period
    return tuple(out)


def apply_periodic_boundary(complex_: DeltaComplex,
                            box: Sequence[tuple[int, int]],
                            axes: Sequence[int]) -> DeltaComplex:
    """Identify opposite box facets by translation on the given 0-based axes.

    Cells are grouped into translation orbits; the canonical orbit
    representative shifts an axis down by one period whenever every corner
    sits at that axis's top coordinate.  Face identities and signs carry
    over because translation preserves both.
    """
    for a in axes:
        lo, hi = box[a]
        if hi - lo < 1:
            raise ComplexBuildError(
                f"periodic axis {a + 1} needs box extent of at least 1")

    def canonical_key(labels: Sequence[tuple[int, ...]]) -> tuple:
        shifted = [list(lab) for lab in labels]
        for a in axes:
            lo, hi = box[a]
            if all(lab[a] == hi for lab in labels):
                for row in shifted:
                    row[a] -= hi - lo
        return tuple(tuple(row) for row in shifted)

    new_labels = sorted({periodic_image(lab, box, axes)
                         for lab in complex_.vertex_labels})
    new_vid = {lab: i for i, lab in enumerate(new_labels)}

    layers: list[list[Cell]] = []
    id_maps: list[dict[int, int]] = []
    for k in range(complex_.dim + 1):
        orbit_of: dict[int, tuple] = {}
        reps: dict[tuple, tuple[int, Cell]] = {}
        for old_id, cell in enumerate(complex_.cells[k]):
            labels = [complex_.vertex_labels[v] for v in cell.vertices]
            key = canonical_key(labels)
            orbit_of[old_id] = key
            prev = reps.get(key)
            # The representative is the cell whose labels equal the key.
            if tuple(labels) == key or prev is None:
                reps[key] = (old_id, cell)
        ordered = sorted(reps.items(), key=lambda item: item[0])
        orbit_new_id = {key: i for i, (key, _) in enumerate(ordered)}
        id_map = {old_id: orbit_new_id[key] for old_id, key in orbit_of.items()}
        layer = []
        for key, (old_id, cell) in ordered:
            verts = tuple(
                new_vid[periodic_image(complex_.vertex_labels[v], box, axes)]
                for v in cell.vertices)
            faces = tuple((id_maps[k - 1][fid], coeff)
                          for fid, coeff in cell.faces) if k > 0 else ()
            layer.append(Cell(verts, faces, cell.shape))
        layers.append(layer)
        id_maps.append(id_map)
    info = dict(complex_.lattice_info or {})
    info.update({"boundary": BOUNDARY_PERIODIC,
                 "periodic_axes": tuple(a + 1 for a in axes)})
    return DeltaComplex.from_resolved(new_labels, layers, lattice_info=info)


def expand_removed_for_periodic(removed: Iterable[tuple[int, ...]],
                                box: Sequence[tuple[int, int]],
                                axes: Sequence[int]) -> set:
    """All box preimages of removed sites under the wrap, so that deleting
    a site deletes its whole translation orbit."""
    out = set()
    pts = [tuple(p) for p in removed]
    for p in pts:
        images = [[]]
        for a, c in enumerate(p):
            lo, hi = box[a]
            if a in axes:
                period = hi - lo
                base = lo + (c - lo) % period
                values = [v for v in range(base, hi + 1, period)]
            else:
                values = [c]
            images = [img + [v] for img in images for v in values]
        out.update(tuple(img) for img in images)
    return out


# ---------------------------------------------------------------------------
# Full pipeline


def build_lattice_complex(spec: LatticeSpec) -> tuple[DeltaComplex, dict]:
    """Generators to finished complex: validate, remove, build, quotient."""
    m, n = spec.dimension, spec.ambient
    if not 1 <= m <= 3:
        raise DimensionError("lattice dimension must be 1, 2 or 3")
    if n < m:
        raise DimensionError(
            f"ambient dimension {n} cannot hold {m} independent generators")
    A = check_generators(spec.generators, m, n)
    if len(spec.index_box) != m:
        raise ComplexBuildError(
            f"index box needs {m} ranges, got {len(spec.index_box)}")
    if spec.boundary not in BOUNDARY_KINDS:
        raise ComplexBuildError(f"unknown boundary condition {spec.boundary!r}")

    axes0 = tuple(a - 1 for a in (spec.periodic_axes or
                                  tuple(range(1, m + 1))))
    if spec.boundary == BOUNDARY_PERIODIC:
        for a in axes0:
            if not 0 <= a < m:
                raise ComplexBuildError(
                    f"periodic axis {a + 1} out of range 1..{m}")
            lo, hi = spec.index_box[a]
            if hi - lo < 1:
                raise ComplexBuildError(
                    f"periodic axis {a + 1} needs box extent of at least 1")

    points = set(box_points(spec.index_box))
    removed = set()
    for idx in spec.removed_indices:
        idx = tuple(idx)
        if len(idx) != m:
            raise ComplexBuildError(f"removed index {idx} has wrong length")
        if not _in_box(idx, spec.index_box):
            raise DefectLocusError(f"removed index {idx} is outside the box")
        removed.add(idx)
    if spec.boundary == BOUNDARY_PERIODIC and removed:
        removed = expand_removed_for_periodic(removed, spec.index_box, axes0)
    points -= removed

    points, defect_report = apply_defects(points, spec.index_box, spec.defects)
    if spec.boundary == BOUNDARY_PERIODIC and defect_report["removed_total"]:
        # Defect loci must be orbit-closed as well.
        expanded = expand_removed_for_periodic(
            set(box_points(spec.index_box)) - points, spec.index_box, axes0)
        points = set(box_points(spec.index_box)) - removed - expanded
    if not points:
        raise ComplexBuildError("every lattice site was removed")

    positions = lattice_positions(A, points)
    complex_ = build_complex(points, spec.scheme, index_box=spec.index_box,
                             positions=positions)
    info = dict(complex_.lattice_info or {})
    info.update({
        "generators": tuple(tuple(float(x) for x in row) for row in A),
        "ambient": n,
        "boundary": spec.boundary,
    })

    if spec.boundary == BOUNDARY_CONSTANT:
        result = apply_constant_boundary(complex_, spec.index_box)
        merged = dict(result.lattice_info or {})
        merged.update({k: v for k, v in info.items()
                       if k not in ("boundary",)})
        result.lattice_info.update(merged)
    elif spec.boundary == BOUNDARY_PERIODIC:
        result = apply_periodic_boundary(complex_, spec.index_box, axes0)
        merged = dict(result.lattice_info or {})
        merged.update({k: v for k, v in info.items()
                       if k not in ("boundary",)})
        result.lattice_info.update(merged)
    else:
        complex_.lattice_info.update(info)
        result = complex_

    report = {
        "defects": defect_report,
        "removed_indices": sorted(removed),
        "sites": len(points),
        "cells": result.cell_counts(),
    }
    return result, report
