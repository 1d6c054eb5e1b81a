"""Twisted tensor embedding of PG(r-1, q^t) and its fixed subgeometry.

The embedding sends a point with homogeneous coordinates (x_0, ..., x_{r-1})
to the point of PG(r^t - 1, q^t) whose coordinate at index(f) is

    prod_i x_{f(i)}^(q^i),       f : {0..t-1} -> {0..r-1},

with index(f) = sum_i f(i) * r^i.  The twist collineation permutes the
tensor slots cyclically and applies the q-power Frobenius; it fixes every
embedded point, so the whole image lies in a subgeometry defined over F_q.
This module computes that fixed space, coordinates over F_q with respect to
it, the lift of r x r collineations to r^t x r^t matrices (the twisted
Kronecker product of Frobenius conjugates), and separating hyperplanes that
vanish on prescribed subspaces' images while avoiding a given point.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .gf import ZERO, FieldCtx, factor_prime_power, field_create
from .pglin import GFMatrix, kernel_basis, rref, solve
from .geometry import ProjPoint, normalize


class VarietyCtx:
    """Parameters and cached data for one embedding PG(r-1,q^t) -> PG(r^t-1,q^t).

    Immutable after construction.  `fix_basis` spans the F_q-space of
    twist-fixed vectors (dimension r^t, checked); `fq_coords` of embedded
    points are taken with respect to it.
    """

    def __init__(self, ctx: FieldCtx, q: int, r: int, t: int):
        p, e = factor_prime_power(q)
        if p != ctx.p or ctx.m != e * r * t:
            raise ValueError("ambient field does not match (q, r, t)")
        if r < 2 or t < 2:
            raise ValueError("need r >= 2 and t >= 2")
        if t >= q:
            raise ValueError(f"standing hypothesis t < q violated: t={t}, q={q}")
        self.ctx = ctx
        self.q, self.r, self.t, self.e, self.p = q, r, t, e, p
        self.qt = q ** t
        self.N = r ** t
        self.qpows = [q ** i for i in range(t)]

        # index <-> exponent-function tables, index = sum f(i) r^i
        self.funcs: List[Tuple[int, ...]] = []
        for idx in range(self.N):
            v, digs = idx, []
            for _ in range(t):
                digs.append(v % r)
                v //= r
            self.funcs.append(tuple(digs))
        # twist source index: coordinate idx reads from twist_src[idx], then ^q
        self.twist_src = [self._index(tuple(f[(i + 1) % t] for i in range(t)))
                          for f in self.funcs]

        self.fix_basis = self._compute_fix_basis()
        self._fq_solver = self._build_fq_solver()

    def _index(self, f: Tuple[int, ...]) -> int:
        idx = 0
        for i in reversed(range(self.t)):
            idx = idx * self.r + f[i]
        return idx

    # -- fixed subgeometry -------------------------------------------------

    def _gamma_basis(self) -> List[int]:
        """Power basis 1, g', ..., g'^{t-1} of F_{q^t} over F_q."""
        ctx = self.ctx
        gqt = ctx.subfield_generator(self.qt)
        return [ctx.pow(gqt, j) for j in range(self.t)]

    def _decompose_over(self, targets: Sequence[int], basis: Sequence[int],
                        sub_order: int) -> List[List[int]]:
        """Write each target as sum c_j basis[j] with c_j in F_{sub_order}.

        Solved over the prime field via polynomial coordinates, so it works
        for non-prime subfields as well.
        """
        ctx = self.ctx
        p = ctx.p
        _, e = factor_prime_power(sub_order)
        delta = ctx.subfield_generator(sub_order)
        dpows = [ctx.pow(delta, l) for l in range(e)]
        cols = []
        for b in basis:
            for d in dpows:
                cols.append(ctx.poly_coeffs(ctx.mul(b, d)))
        pf = ctx  # prime field lives inside the same ambient table
        int_elem = [ZERO]
        acc = ZERO
        for _ in range(p - 1):
            acc = pf.add(acc, pf.one)
            int_elem.append(acc)
        A = GFMatrix.from_rows(ctx, [[int_elem[col[i]] for col in cols]
                                     for i in range(ctx.m)], p)
        out = []
        for tgt in targets:
            b = [int_elem[c] for c in ctx.poly_coeffs(tgt)]
            x = solve(A, b)
            if x is None:
                raise ValueError("element not in the span of the basis")
            coeffs = []
            for j in range(len(basis)):
                c = ZERO
                for l in range(e):
                    c = ctx.add(c, ctx.mul(x[j * e + l], dpows[l]))
                coeffs.append(c)
            out.append(coeffs)
        return out

    def _compute_fix_basis(self) -> List[Tuple[int, ...]]:
        """Kernel of (twist - id) as an F_q-linear map on F_{q^t}^{r^t}.

        Unknowns u[c][j] are the F_q-coordinates of each vector entry in the
        power basis of F_{q^t}; the twist sends gamma^j e_c to
        gamma^(jq) e_{c'}, and gamma^(jq) is re-expanded over the basis.
        """
        ctx, t, N, q = self.ctx, self.t, self.N, self.q
        gamma = self._gamma_basis()
        phi = self._decompose_over([ctx.pow(g, q) for g in gamma], gamma, q)
        # row (c, m): u[c][m] - sum_j phi[j][m] * u[src(c)][j] = 0
        dim = N * t
        rows = []
        for c in range(N):
            src = self.twist_src[c]
            for mm in range(t):
                row = [ZERO] * dim
                row[c * t + mm] = ctx.add(row[c * t + mm], ctx.one)
                for j in range(t):
                    coef = phi[j][mm]
                    if coef != ZERO:
                        row[src * t + j] = ctx.sub(row[src * t + j], coef)
                rows.append(row)
        M = GFMatrix.from_rows(ctx, rows, q)
        basis_u = kernel_basis(M)
        if len(basis_u) != N:
            raise RuntimeError(
                f"fixed space has dimension {len(basis_u)}, expected {N}")
        vecs = []
        for u in basis_u:
            vec = []
            for c in range(N):
                x = ZERO
                for j in range(t):
                    x = ctx.add(x, ctx.mul(u[c * t + j], gamma[j]))
                vec.append(x)
            vecs.append(tuple(vec))
        for v in vecs:
            if self.twist(v) != tuple(v):
                raise RuntimeError("fixed-space basis vector is not twist-fixed")
        return vecs

    def _build_fq_solver(self):
        """Left inverse over F_p of the F_q-span map of fix_basis.

        Columns are the prime-field expansions of delta^l * fix_basis[i];
        a single integer matmul then recovers subgeometry coordinates of
        any twist-fixed vector.
        """
        ctx = self.ctx
        p, e, N, m = self.p, self.e, self.N, ctx.m
        delta = ctx.subfield_generator(self.q)
        self._dpows = [ctx.pow(delta, l) for l in range(e)]
        cols = []
        for vec in self.fix_basis:
            for d in self._dpows:
                col = []
                for entry in vec:
                    col.extend(ctx.poly_coeffs(ctx.mul(entry, d)))
                cols.append(col)
        S = np.array(cols, dtype=np.int64).T  # (N*m) x (N*e)
        rows_n, cols_n = S.shape
        aug = np.concatenate([S, np.eye(rows_n, dtype=np.int64)], axis=1)
        # prime-field RREF of [S | I]; the top block then reads [I | L]
        inv_p = [0] + [pow(a, p - 2, p) for a in range(1, p)]
        prow = 0
        for col in range(cols_n):
            sel = -1
            for rr in range(prow, rows_n):
                if aug[rr, col] % p:
                    sel = rr
                    break
            if sel < 0:
                continue
            aug[[prow, sel]] = aug[[sel, prow]]
            aug[prow] = (aug[prow] * inv_p[aug[prow, col] % p]) % p
            for rr in range(rows_n):
                if rr != prow and aug[rr, col] % p:
                    aug[rr] = (aug[rr] - aug[rr, col] * aug[prow]) % p
            prow += 1
        if prow != cols_n:
            raise RuntimeError("fixed-space basis is not independent")
        self._S = S
        return aug[:cols_n, cols_n:]  # cols_n x (N*m), entries mod p

    # -- public operations ---------------------------------------------------

    def twist(self, v: Sequence[int]) -> Tuple[int, ...]:
        """Cyclic slot shift combined with the q-power Frobenius."""
        ctx, q = self.ctx, self.q
        return tuple(ctx.pow(v[src], q) for src in self.twist_src)

    def alpha(self, P: ProjPoint) -> "VarietyPoint":
        ctx = self.ctx
        if next(x for x in P.coords if x != ZERO) != ctx.one:
            raise ValueError("point must be canonical (leading coordinate one)")
        conj = [[ctx.pow(x, qp) for x in P.coords] for qp in self.qpows]
        image = []
        for f in self.funcs:
            acc = ctx.one
            for i in range(self.t):
                acc = ctx.mul(acc, conj[i][f[i]])
            image.append(acc)
        image = tuple(image)
        if self.twist(image) != image:
            raise RuntimeError("embedded point is not twist-fixed")
        return VarietyPoint(P, image, tuple(self.to_subgeometry_coords(image)))

    def to_subgeometry_coords(self, v: Sequence[int]) -> List[int]:
        """F_q-coordinates of a twist-fixed vector in the fix_basis frame."""
        ctx = self.ctx
        p, e, N = self.p, self.e, self.N
        vec_p = np.empty(N * ctx.m, dtype=np.int64)
        pos = 0
        for entry in v:
            pc = ctx.poly_coeffs(entry)
            vec_p[pos:pos + ctx.m] = pc
            pos += ctx.m
        x = (self._fq_solver @ vec_p) % p
        if ((self._S @ x) % p != vec_p).any():
            if self.twist(tuple(v)) != tuple(v):
                raise ValueError("vector is not twist-fixed")
            raise RuntimeError("twist-fixed vector outside the fixed-space span")
        int_elem = [ZERO]
        acc = ZERO
        for _ in range(p - 1):
            acc = ctx.add(acc, ctx.one)
            int_elem.append(acc)
        coords = []
        for i in range(N):
            c = ZERO
            for l in range(e):
                c = ctx.add(c, ctx.mul(int_elem[int(x[i * e + l])], self._dpows[l]))
            coords.append(c)
        return coords

    def from_subgeometry_coords(self, c: Sequence[int]) -> Tuple[int, ...]:
        ctx = self.ctx
        out = [ZERO] * self.N
        for coeff, vec in zip(c, self.fix_basis):
            if coeff != ZERO:
                for i, entry in enumerate(vec):
                    if entry != ZERO:
                        out[i] = ctx.add(out[i], ctx.mul(coeff, entry))
        return tuple(out)

    def lift_collineation(self, g: GFMatrix) -> GFMatrix:
        """Twisted Kronecker lift: entry (a,b) = prod_i g[fa(i)][fb(i)]^(q^i)."""
        ctx = self.ctx
        if g.rows != self.r or g.cols != self.r:
            raise ValueError("collineation matrix has wrong shape")
        if rref(g).rank != self.r:
            raise ValueError("collineation matrix is singular")
        conj = [[[ctx.pow(x, qp) for x in row] for row in g.data] for qp in self.qpows]
        data = []
        for fa in self.funcs:
            row = []
            for fb in self.funcs:
                acc = ctx.one
                for i in range(self.t):
                    acc = ctx.mul(acc, conj[i][fa[i]][fb[i]])
                    if acc == ZERO:
                        break
                row.append(acc)
            data.append(row)
        return GFMatrix(ctx, self.N, self.N, self.qt, data)

    def subgeometry_matrix(self, M: GFMatrix) -> GFMatrix:
        """F_q-matrix of a lifted collineation acting on fix_basis coordinates."""
        ctx = self.ctx
        cols = []
        for vec in self.fix_basis:
            img = M.mul_vec(list(vec))
            cols.append(self.to_subgeometry_coords(img))
        data = [[cols[j][i] for j in range(self.N)] for i in range(self.N)]
        return GFMatrix(ctx, self.N, self.N, self.q, data)

    def separating_hyperplane(self, subspaces: Sequence[Union[ProjPoint, Sequence[ProjPoint]]],
                              P: ProjPoint) -> Tuple[int, ...]:
        """Hyperplane coefficients vanishing on each subspace's image, not at P.

        Each subspace is given by spanning points.  A linear form is chosen
        per subspace (first kernel-basis form not vanishing at P) and the
        twisted product of the forms gives the hyperplane of the big space.
        """
        ctx = self.ctx
        if len(subspaces) > self.t:
            raise ValueError(f"at most {self.t} subspaces are allowed")
        spaces: List[List[ProjPoint]] = []
        for sub in subspaces:
            spaces.append([sub] if isinstance(sub, ProjPoint) else list(sub))
        if not spaces:
            raise ValueError("need at least one subspace")
        while len(spaces) < self.t:
            spaces.append(spaces[-1])
        forms = []
        for pts in spaces:
            M = GFMatrix.from_rows(ctx, [list(p.coords) for p in pts], self.qt)
            form = None
            for cand in kernel_basis(M):
                val = ZERO
                for a, x in zip(cand, P.coords):
                    val = ctx.add(val, ctx.mul(a, x))
                if val != ZERO:
                    form = cand
                    break
            if form is None:
                raise ValueError("point lies in (the span of) a listed subspace")
            forms.append(form)
        lam = []
        for f in self.funcs:
            acc = ctx.one
            for i in range(self.t):
                acc = ctx.mul(acc, ctx.pow(forms[i][f[i]], self.qpows[i]))
                if acc == ZERO:
                    break
            lam.append(acc)
        return tuple(lam)

    def eval_hyperplane(self, lam: Sequence[int], image: Sequence[int]) -> int:
        ctx = self.ctx
        acc = ZERO
        for a, x in zip(lam, image):
            acc = ctx.add(acc, ctx.mul(a, x))
        return acc


class VarietyPoint:
    """An embedded point: source, raw image vector, and F_q coordinates."""

    __slots__ = ("source", "image", "fq_coords")

    def __init__(self, source: ProjPoint, image: Tuple[int, ...], fq_coords: Tuple[int, ...]):
        self.source = source
        self.image = image
        self.fq_coords = fq_coords


def variety_ctx(q: int, r: int, t: int, cap: Optional[int] = None) -> VarietyCtx:
    """Build the ambient field for (q, r, t) and the embedding context."""
    p, e = factor_prime_power(q)
    ctx = field_create(p, e * r * t) if cap is None else field_create(p, e * r * t, cap)
    return VarietyCtx(ctx, q, r, t)


def alpha(vctx: VarietyCtx, P: ProjPoint) -> VarietyPoint:
    return vctx.alpha(P)


def twist_map(vctx: VarietyCtx, v: Sequence[int]) -> Tuple[int, ...]:
    return vctx.twist(v)


def fix_space_basis(vctx: VarietyCtx) -> List[Tuple[int, ...]]:
    return list(vctx.fix_basis)


def to_subgeometry_coords(vctx: VarietyCtx, v: Sequence[int]) -> List[int]:
    return vctx.to_subgeometry_coords(v)


def lift_collineation(vctx: VarietyCtx, g: GFMatrix) -> GFMatrix:
    return vctx.lift_collineation(g)


def separating_hyperplane(vctx: VarietyCtx, subspaces, P: ProjPoint) -> Tuple[int, ...]:
    return vctx.separating_hyperplane(subspaces, P)
