"""Reduced simplicial homology: GF(2) Betti numbers, integer torsion check, sphere/ball labels."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .complex import Complex, boundary_faces, f_vector, members

SNF_MAX_ENTRIES = 2_000_000
DENSE_RESIDUAL_MAX = 400


class MatrixTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class BoundaryMatrix:
    """Signed boundary map from ``k``-faces to ``(k-1)``-faces.

    Faces on both sides follow the complex's canonical order; removing the
    ``i``-th smallest member of a face carries sign ``(-1)**i``. ``k = 0`` is
    the augmentation onto the empty face.
    """

    k: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    matrix: sp.csc_matrix

    @property
    def shape(self):
        return self.matrix.shape

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def columns(self):
        """Yield each column as a ``{row: entry}`` dict."""
        m = self.matrix
        for j in range(m.shape[1]):
            lo, hi = m.indptr[j], m.indptr[j + 1]
            yield dict(zip(m.indices[lo:hi].tolist(), m.data[lo:hi].tolist()))


def boundary_matrix(cplx: Complex, k: int) -> BoundaryMatrix:
    rows = cplx.faces_of_dim(k - 1)
    cols = cplx.faces_of_dim(k)
    row_index = {f: i for i, f in enumerate(rows)}
    r, c, v = [], [], []
    for j, face in enumerate(cols):
        for pos, m in enumerate(members(face)):
            r.append(row_index[face ^ (1 << m)])
            c.append(j)
            v.append(-1 if pos % 2 else 1)
    mat = sp.csc_matrix((v, (r, c)), shape=(len(rows), len(cols)), dtype=np.int64)
    return BoundaryMatrix(k, rows, cols, mat)


def gf2_rank(bm: BoundaryMatrix) -> int:
    """Rank over GF(2); columns are packed into Python ints and reduced by pivot."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in bm.columns():
        vec = 0
        for row, val in col.items():
            if val % 2:
                vec ^= 1 << row
        while vec:
            top = vec.bit_length() - 1
            if top in pivots:
                vec ^= pivots[top]
            else:
                pivots[top] = vec
                rank += 1
                break
    return rank


def elementary_divisors(bm: BoundaryMatrix, max_entries: int = SNF_MAX_ENTRIES) -> list[int]:
    """Nonzero Smith normal form entries of an integer matrix.

    Unit pivots are eliminated sparsely (each contributes a divisor 1); any
    block left without a unit entry goes to sympy's dense Smith form.
    """
    if bm.matrix.nnz > max_entries:
        raise MatrixTooLarge(f"boundary matrix in degree {bm.k} has {bm.matrix.nnz} entries")
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for j, col in enumerate(bm.columns()):
        cols[j] = set()
        for i, val in col.items():
            if val:
                rows.setdefault(i, {})[j] = val
                cols[j].add(i)

    divisors = []
    for j in sorted(cols, key=lambda c: len(cols[c])):
        if not cols[j]:
            continue
        candidates = [i for i in cols[j] if abs(rows[i][j]) == 1]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: len(rows[i]))
        prow = rows[p]
        unit = prow[j]
        for i in list(cols[j]):
            if i == p:
                continue
            row = rows[i]
            factor = row[j] * unit
            for c, val in prow.items():
                new = row.get(c, 0) - factor * val
                if new:
                    row[c] = new
                    cols[c].add(i)
                else:
                    row.pop(c, None)
                    cols[c].discard(i)
        for c in prow:
            cols[c].discard(p)
        del rows[p]
        divisors.append(1)

    residual = {i: r for i, r in rows.items() if r}
    if residual:
        from sympy import Matrix
        from sympy.matrices.normalforms import invariant_factors

        used = sorted({c for r in residual.values() for c in r})
        if len(residual) > DENSE_RESIDUAL_MAX or len(used) > DENSE_RESIDUAL_MAX:
            raise MatrixTooLarge(f"residual block {len(residual)}x{len(used)} without unit pivots")
        col_pos = {c: k for k, c in enumerate(used)}
        dense = [[0] * len(used) for _ in residual]
        for k, r in enumerate(residual.values()):
            for c, val in r.items():
                dense[k][col_pos[c]] = val
        divisors.extend(abs(int(x)) for x in invariant_factors(Matrix(dense)) if x != 0)
    return divisors


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers over GF(2) in degrees ``-1 .. dim``.

    ``reduced_betti[k]`` is degree ``k``; degree ``-1`` is nonzero only for
    the complex whose sole face is empty. ``torsion_free`` is ``None`` when the
    integer check was skipped.
    """

    betti_minus_one: int
    reduced_betti: tuple[int, ...]
    torsion_free: bool | None
    euler_check: bool
    gf2_ranks: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return self.betti_minus_one == 0 and not any(self.reduced_betti)

    def nonzero_degrees(self) -> list[int]:
        out = [-1] if self.betti_minus_one else []
        return out + [k for k, b in enumerate(self.reduced_betti) if b]


def reduced_homology(cplx: Complex, torsion: bool = True, max_entries: int = SNF_MAX_ENTRIES) -> HomologyProfile:
    top = cplx.dim
    ranks = [gf2_rank(boundary_matrix(cplx, k)) for k in range(0, top + 1)]
    # ranks[k] is the rank of the map out of degree k; nothing leaves degree -1
    def rank_out(k):
        return ranks[k] if 0 <= k <= top else 0

    sizes = {k: len(cplx.faces_of_dim(k)) for k in range(-1, top + 1)}
    betti = {k: sizes[k] - rank_out(k) - rank_out(k + 1) for k in range(-1, top + 1)}
    chi = f_vector(cplx).reduced_euler
    alt = sum((-1) ** k * b for k, b in betti.items())

    torsion_free = None
    if torsion:
        torsion_free = True
        for k in range(0, top + 1):
            divs = elementary_divisors(boundary_matrix(cplx, k), max_entries)
            if len(divs) != ranks[k] or any(x != 1 for x in divs):
                torsion_free = False
    return HomologyProfile(
        betti[-1],
        tuple(betti[k] for k in range(0, top + 1)),
        torsion_free,
        alt == chi,
        tuple(ranks),
    )


class Classification(enum.Enum):
    SPHERE_LIKE = "SphereLike"
    BALL_LIKE = "BallLike"
    OTHER = "Other"


def expected_dim(cplx: Complex) -> int:
    if cplx.region is not None:
        return cplx.region.triangulation_size - 1
    return cplx.dim


def classify(profile: HomologyProfile, cplx: Complex) -> Classification:
    """Homology-level label; it does not certify a homeomorphism."""
    dim = expected_dim(cplx)
    if profile.nonzero_degrees() == [dim] and (
        profile.reduced_betti[dim] == 1 if dim >= 0 else profile.betti_minus_one == 1
    ):
        return Classification.SPHERE_LIKE
    if profile.trivial and cplx.is_pure and cplx.dim == dim and not boundary_faces(cplx).empty:
        return Classification.BALL_LIKE
    return Classification.OTHER
