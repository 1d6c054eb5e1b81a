"""Exact dense linear algebra over any tower subfield.

Matrices carry exponent-coded entries together with the subfield order the
entries are certified to lie in.  Elimination uses deterministic pivoting
(first nonzero entry in column order), so reduced forms, ranks, kernels and
solutions are reproducible across runs; there are no stability concerns in
exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .gf import ZERO, FieldCtx


@dataclass
class GFMatrix:
    """Dense matrix over the subfield of order `field_order` inside ctx."""

    ctx: FieldCtx
    rows: int
    cols: int
    field_order: int
    data: List[List[int]] = field(repr=False)  # row-major exponent codes

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("matrix shape does not match data")
        cof = self.ctx.cofactor(self.field_order)
        for r in self.data:
            for x in r:
                if x != ZERO and x % cof != 0:
                    raise ValueError("entry outside the certified subfield")

    @classmethod
    def from_rows(cls, ctx: FieldCtx, rows: Sequence[Sequence[int]], field_order: int) -> "GFMatrix":
        data = [list(r) for r in rows]
        return cls(ctx, len(data), len(data[0]) if data else 0, field_order, data)

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int, field_order: int) -> "GFMatrix":
        return cls(ctx, rows, cols, field_order, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int, field_order: int) -> "GFMatrix":
        data = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            data[i][i] = ctx.one
        return cls(ctx, n, n, field_order, data)

    def copy(self) -> "GFMatrix":
        return GFMatrix(self.ctx, self.rows, self.cols, self.field_order,
                        [list(r) for r in self.data])

    def column(self, j: int) -> List[int]:
        return [r[j] for r in self.data]

    def transpose(self) -> "GFMatrix":
        return GFMatrix(self.ctx, self.cols, self.rows, self.field_order,
                        [list(c) for c in zip(*self.data)] if self.data else [])

    def mul_vec(self, v: Sequence[int]) -> List[int]:
        ctx = self.ctx
        out = []
        for row in self.data:
            acc = ZERO
            for a, b in zip(row, v):
                if a != ZERO and b != ZERO:
                    acc = ctx.add(acc, (a + b) % (ctx.order - 1))
            out.append(acc)
        return out

    def mul_mat(self, other: "GFMatrix") -> "GFMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ctx = self.ctx
        bt = list(zip(*other.data))
        data = []
        for row in self.data:
            out_row = []
            for col in bt:
                acc = ZERO
                for a, b in zip(row, col):
                    if a != ZERO and b != ZERO:
                        acc = ctx.add(acc, (a + b) % (ctx.order - 1))
                out_row.append(acc)
            data.append(out_row)
        return GFMatrix(ctx, self.rows, other.cols,
                        max(self.field_order, other.field_order), data)


class RrefResult(NamedTuple):
    matrix: GFMatrix
    rank: int
    pivots: Tuple[int, ...]


def rref(M: GFMatrix) -> RrefResult:
    """Reduced row echelon form with first-nonzero pivoting."""
    ctx = M.ctx
    a = [list(r) for r in M.data]
    nrows, ncols = M.rows, M.cols
    pivots: List[int] = []
    prow = 0
    for col in range(ncols):
        if prow >= nrows:
            break
        sel = -1
        for r in range(prow, nrows):
            if a[r][col] != ZERO:
                sel = r
                break
        if sel < 0:
            continue
        a[prow], a[sel] = a[sel], a[prow]
        inv = ctx.inv(a[prow][col])
        if inv != ctx.one:
            a[prow] = [ctx.mul(inv, x) for x in a[prow]]
        for r in range(nrows):
            if r != prow:
                c = a[r][col]
                if c != ZERO:
                    piv = a[prow]
                    a[r] = [ctx.sub(x, ctx.mul(c, y)) for x, y in zip(a[r], piv)]
        pivots.append(col)
        prow += 1
    R = GFMatrix(ctx, nrows, ncols, M.field_order, a)
    return RrefResult(R, len(pivots), tuple(pivots))


def rank(M: GFMatrix) -> int:
    return rref(M).rank


def kernel_basis(M: GFMatrix) -> List[List[int]]:
    """Basis of the right kernel, one vector per free column.

    Free columns are taken in increasing order and each basis vector sets
    its free variable to one, so the basis (and any codeword enumeration
    built on it) is canonical.
    """
    ctx = M.ctx
    R, rk, pivots = rref(M)
    pivot_set = set(pivots)
    free_cols = [j for j in range(M.cols) if j not in pivot_set]
    basis = []
    for fcol in free_cols:
        v = [ZERO] * M.cols
        v[fcol] = ctx.one
        for i, pcol in enumerate(pivots):
            v[pcol] = ctx.neg(R.data[i][fcol])
        basis.append(v)
    return basis


def solve(A: GFMatrix, b: Sequence[int]) -> Optional[List[int]]:
    """One solution of Ax = b with free variables set to zero, or None."""
    if len(b) != A.rows:
        raise ValueError("dimension mismatch")
    ctx = A.ctx
    aug = GFMatrix(ctx, A.rows, A.cols + 1, A.field_order,
                   [row + [bb] for row, bb in zip(A.data, b)])
    R, rk, pivots = rref(aug)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [ZERO] * A.cols
    for i, pcol in enumerate(pivots):
        x[pcol] = R.data[i][A.cols]
    return x
