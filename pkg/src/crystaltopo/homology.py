"""Homology, cohomology and orientation analysis over three coefficient rings.

Integer results come from exact Smith reduction of the incidence matrices;
mod-2 results from bitmask Gaussian elimination.  Real coefficients give
the same ranks as the integers with no torsion, so they share the integer
rank computation rather than trusting floating point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import (
    Chain,
    DeltaComplex,
    RING_INT,
    RING_MOD2,
    RING_REAL,
    RINGS,
    boundary_map,
    incidence_matrix,
)
from .errors import DimensionError, InternalInconsistencyError
from .snf import (
    gf2_rank,
    gf2_solve,
    matmul_int,
    smith_diagonal,
    smith_normal_form,
    solve_integer,
)


@dataclass(frozen=True)
class HomologyGroup:
    """Isomorphism type of one homology group.

    ``betti`` is the free rank (the dimension, over a field) and
    ``torsion`` lists the invariant factors greater than one in
    divisibility order.  Fields carry no torsion.
    """

    k: int
    ring: str
    betti: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.ring == RING_INT:
            parts = ["Z"] * self.betti + [f"Z/{t}" for t in self.torsion]
            return " + ".join(parts) if parts else "0"
        sym = "(Z/2)" if self.ring == RING_MOD2 else "R"
        if not self.betti:
            return "0"
        return sym if self.betti == 1 else f"{sym}^{self.betti}"


def _matrix_rows(matrix: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in matrix]


def _boundary_rank(complex_: DeltaComplex, k: int, ring: str) -> int:
    """Rank of the k-th boundary matrix over the ring (0 when out of range)."""
    if k < 1 or k > complex_.dim or complex_.n_cells(k) == 0:
        return 0
    key = ("rank", k, RING_MOD2 if ring == RING_MOD2 else RING_INT)
    cached = complex_._cache.get(key)
    if cached is not None:
        return cached
    M = incidence_matrix(complex_, k)
    if ring == RING_MOD2:
        value = gf2_rank(_matrix_rows(M))
    else:
        value = sum(1 for d in smith_diagonal(_matrix_rows(M)) if d != 0)
    complex_._cache[key] = value
    return value


def _torsion_of(complex_: DeltaComplex, k: int) -> tuple[int, ...]:
    """Invariant factors > 1 of the k-th boundary matrix."""
    if k < 1 or k > complex_.dim or complex_.n_cells(k) == 0:
        return ()
    key = ("torsion", k)
    cached = complex_._cache.get(key)
    if cached is None:
        diag = smith_diagonal(_matrix_rows(incidence_matrix(complex_, k)))
        cached = tuple(d for d in diag if d > 1)
        complex_._cache[key] = cached
    return cached


def homology(complex_: DeltaComplex, k: int,
             ring: str = RING_INT) -> HomologyGroup:
    """The k-th homology group of the complex over the chosen ring."""
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}")
    if k < 0 or k > complex_.dim:
        return HomologyGroup(k, ring, 0)
    n_k = complex_.n_cells(k)
    if ring == RING_MOD2:
        betti = n_k - _boundary_rank(complex_, k, ring) \
            - _boundary_rank(complex_, k + 1, ring)
        return HomologyGroup(k, ring, betti)
    betti = n_k - _boundary_rank(complex_, k, RING_INT) \
        - _boundary_rank(complex_, k + 1, RING_INT)
    if ring == RING_REAL:
        return HomologyGroup(k, ring, betti)
    return HomologyGroup(k, ring, betti, _torsion_of(complex_, k + 1))


def cohomology(complex_: DeltaComplex, k: int,
               ring: str = RING_INT) -> HomologyGroup:
    """The k-th cohomology group; over Z its torsion is that of the
    (k-1)-st boundary matrix."""
    base = homology(complex_, k, ring)
    if ring != RING_INT:
        return HomologyGroup(k, ring, base.betti)
    return HomologyGroup(k, ring, base.betti, _torsion_of(complex_, k))


def betti_numbers(complex_: DeltaComplex,
                  ring: str = RING_INT) -> list[int]:
    return [homology(complex_, k, ring).betti
            for k in range(complex_.dim + 1)]


def euler_characteristic(complex_: DeltaComplex) -> int:
    """Alternating cell-count sum, cross-checked against the Betti sum."""
    by_cells = sum((-1) ** k * complex_.n_cells(k)
                   for k in range(complex_.dim + 1))
    by_betti = sum((-1) ** k * homology(complex_, k).betti
                   for k in range(complex_.dim + 1))
    if by_cells != by_betti:
        raise InternalInconsistencyError(
            f"Euler characteristic mismatch: cells give {by_cells}, "
            f"Betti numbers give {by_betti}")
    return by_cells


def vertex_components(complex_: DeltaComplex) -> list[int]:
    """Connected-component id per vertex, numbered by smallest member."""
    parent = list(range(complex_.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if complex_.dim >= 1:
        for cell in complex_.cells[1]:
            a, b = find(cell.vertices[0]), find(cell.vertices[-1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = sorted({find(v) for v in range(complex_.n_vertices)})
    renumber = {r: i for i, r in enumerate(roots)}
    return [renumber[find(v)] for v in range(complex_.n_vertices)]


# ---------------------------------------------------------------------------
# Cycle and boundary membership


def is_cycle(chain: Chain, complex_: DeltaComplex, tol: float = 1e-9) -> bool:
    if chain.dim == 0:
        return True
    image = boundary_map(chain, complex_)
    if chain.ring == RING_REAL:
        return all(abs(v) <= tol for v in image.coeffs.values())
    return not image.coeffs


def _chain_vector(chain: Chain, complex_: DeltaComplex) -> list:
    n = complex_.n_cells(chain.dim)
    vec = [0] * n
    for cid, v in chain.coeffs.items():
        if not 0 <= cid < n:
            raise DimensionError(f"cell id {cid} out of range for dim {chain.dim}")
        vec[cid] = v
    return vec


def is_boundary(chain: Chain, complex_: DeltaComplex,
                tol: float = 1e-9) -> bool:
    """Whether the chain bounds, over its own coefficient ring."""
    k = chain.dim
    if not chain.coeffs:
        return True
    if k >= complex_.dim or complex_.n_cells(k + 1) == 0:
        return False
    M = incidence_matrix(complex_, k + 1)
    vec = _chain_vector(chain, complex_)
    if chain.ring == RING_MOD2:
        return gf2_solve(_matrix_rows(M), [int(v) % 2 for v in vec]) is not None
    if chain.ring == RING_INT:
        return solve_integer(_matrix_rows(M), [int(v) for v in vec]) is not None
    x, residuals, *_ = np.linalg.lstsq(
        np.asarray(M, dtype=float), np.asarray(vec, dtype=float), rcond=None)
    return bool(np.linalg.norm(
        np.asarray(M, dtype=float) @ x - np.asarray(vec, dtype=float)) <= tol)


def are_homologous(a: Chain, b: Chain, complex_: DeltaComplex) -> bool:
    return is_boundary(a - b, complex_)


# ---------------------------------------------------------------------------
# Explicit generators


def homology_generators(complex_: DeltaComplex,
                        k: int) -> list[tuple[int, Chain]]:
    """Integer homology generators as (order, chain) pairs.

    Order 0 marks a free generator; d >= 2 a torsion generator of order d.
    The kernel of the k-th boundary map is expressed in a basis adapted to
    the image of the (k+1)-st, so each basis vector carries one invariant
    factor.
    """
    if k < 0 or k > complex_.dim:
        return []
    n_k = complex_.n_cells(k)
    if n_k == 0:
        return []

    if k == 0:
        kernel = [[1 if i == j else 0 for j in range(n_k)] for i in range(n_k)]
    else:
        A = _matrix_rows(incidence_matrix(complex_, k))
        dec = smith_normal_form(A)
        r = dec.rank
        kernel = [[dec.V[i][j] for j in range(r, n_k)] for i in range(n_k)]
    z = len(kernel[0]) if kernel else 0
    if z == 0:
        return []

    if k == complex_.dim or complex_.n_cells(k + 1) == 0:
        Y = [[0] * 0 for _ in range(z)]
        cols_b = 0
    else:
        B = _matrix_rows(incidence_matrix(complex_, k + 1))
        cols_b = len(B[0])
        dec_k = smith_normal_form(kernel)
        dk = dec_k.diagonal
        Y = [[0] * cols_b for _ in range(z)]
        for j in range(cols_b):
            rhs = [B[i][j] for i in range(n_k)]
            ub = [sum(dec_k.U[i][t] * rhs[t] for t in range(n_k))
                  for i in range(n_k)]
            y = [0] * z
            for i in range(n_k):
                d = dk[i] if i < len(dk) else 0
                if d == 0:
                    if ub[i] != 0:
                        raise InternalInconsistencyError(
                            "boundary column escapes the cycle lattice")
                elif ub[i] % d != 0:
                    raise InternalInconsistencyError(
                        "boundary column is not integral over the cycle basis")
                elif i < z:
                    y[i] = ub[i] // d
            yy = [sum(dec_k.V[i][t] * y[t] for t in range(z)) for i in range(z)]
            for i in range(z):
                Y[i][j] = yy[i]

    if cols_b == 0:
        gens = [(0, Chain(k, {i: kernel[i][j] for i in range(n_k)}, RING_INT))
                for j in range(z)]
        return gens

    dec_y = smith_normal_form(Y)
    adapted = matmul_int(kernel, dec_y.uinv)
    orders = dec_y.diagonal
    out: list[tuple[int, Chain]] = []
    for j in range(z):
        order = orders[j] if j < len(orders) else 0
        if order == 1:
            continue
        chain = Chain(k, {i: adapted[i][j] for i in range(n_k)}, RING_INT)
        out.append((order, chain))
    # Free generators last, torsion first, matching invariant-factor order.
    out.sort(key=lambda t: (t[0] == 0, t[0]))
    return out


# ---------------------------------------------------------------------------
# Orientability


@dataclass
class OrientabilityReport:
    orientable: bool
    dim: int
    closed: bool | None = None
    fundamental_chain: Chain | None = None
    boundary_chain: Chain | None = None
    mod2_certificate: Chain | None = None
    mod2_boundary: Chain | None = None
    reason: str = ""


def orientability(complex_: DeltaComplex) -> OrientabilityReport:
    """Decide orientability of the top-dimensional layer by sign propagation.

    Top cells are glued across internal faces that appear in exactly two
    face-list entries; a consistent choice of signs making all internal
    faces cancel is a fundamental chain.  When no consistent choice
    exists, the all-ones mod-2 chain is returned instead, with its mod-2
    boundary.
    """
    m = complex_.dim
    n_top = complex_.n_cells(m)
    if n_top == 0:
        return OrientabilityReport(True, m, closed=True,
                                   fundamental_chain=Chain(m, {}, RING_INT))

    entries: dict[int, list[tuple[int, int]]] = {}
    if m >= 1:
        for cid in range(n_top):
            for fid, coeff in complex_.cells[m][cid].faces:
                entries.setdefault(fid, []).append((cid, coeff))

    def classify() -> tuple[dict[int, list], set[int], bool]:
        internal: dict[int, list] = {}
        boundary: set[int] = set()
        branching = False
        for fid, lst in entries.items():
            weight = sum(abs(c) for _, c in lst)
            if weight == 2:
                internal[fid] = lst
            elif weight == 1:
                boundary.add(fid)
            elif weight > 2:
                branching = True
        return internal, boundary, branching

    internal, boundary_faces, branching = classify()

    signs = [0] * n_top
    consistent = not branching
    if consistent:
        adjacency: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n_top)}
        for fid, lst in internal.items():
            if len(lst) == 2:
                (c1, a1), (c2, a2) = lst
                if c1 == c2:
                    if a1 + a2 != 0:
                        consistent = False
                        break
                else:
                    # eps1*a1 + eps2*a2 = 0 with a1, a2 in {+-1, +-2?}; only
                    # unit coefficients admit a sign solution.
                    if abs(a1) != 1 or abs(a2) != 1:
                        consistent = False
                        break
                    rel = -a1 * a2  # eps2 = rel * eps1
                    adjacency[c1].append((c2, rel))
                    adjacency[c2].append((c1, rel))
            else:
                # One entry of weight 2: the cell wraps onto the face twice
                # with equal signs; no orientation can cancel it.
                (c1, a1), = lst
                if abs(a1) == 2:
                    consistent = False
                    break
    if consistent:
        for seed in range(n_top):
            if signs[seed]:
                continue
            signs[seed] = 1
            queue = [seed]
            while queue and consistent:
                cur = queue.pop()
                for nxt, rel in adjacency[cur]:
                    want = rel * signs[cur]
                    if signs[nxt] == 0:
                        signs[nxt] = want
                        queue.append(nxt)
                    elif signs[nxt] != want:
                        consistent = False
                        break
            if not consistent:
                break

    if consistent:
        fundamental = Chain(m, {i: signs[i] for i in range(n_top)}, RING_INT)
        image = boundary_map(fundamental, complex_) if m >= 1 \
            else Chain(-1, {}, RING_INT)
        # Independent check: the image must avoid all internal faces.
        if any(fid in internal for fid in image.coeffs):
            raise InternalInconsistencyError(
                "sign propagation left an internal face uncancelled")
        closed = not image.coeffs
        return OrientabilityReport(
            True, m, closed=closed, fundamental_chain=fundamental,
            boundary_chain=image if m >= 1 else None)

    all_ones = Chain(m, {i: 1 for i in range(n_top)}, RING_MOD2)
    mod2_image = boundary_map(all_ones, complex_)
    if any(fid in internal for fid in mod2_image.coeffs):
        reason = "top cells do not pairwise cancel even modulo 2"
    else:
        reason = "no consistent orientation of the top cells exists"
    return OrientabilityReport(
        False, m, closed=(not mod2_image.coeffs),
        mod2_certificate=all_ones, mod2_boundary=mod2_image, reason=reason)
