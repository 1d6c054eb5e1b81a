"""Projective spaces over tower fields.

Canonical point enumeration, Singer cycles (cyclic collineation groups
acting regularly on all points), F_q-sublines of lines over F_{q^t},
subgeometries, and affine Singer cycles (three orbits: a hyperplane, a
fixed point, and a regular orbit on the remaining affine points).

Points are always kept in canonical homogeneous form: the first nonzero
coordinate equals one.  All enumeration orders are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Sequence, Tuple

from .gf import ZERO, FieldCtx
from .pglin import GFMatrix


@dataclass(frozen=True)
class ProjPoint:
    """Canonical homogeneous coordinates (exponent codes) of a point."""

    coords: Tuple[int, ...]
    field_order: int

    def __len__(self) -> int:
        return len(self.coords)


def normalize(ctx: FieldCtx, vec: Sequence[int], field_order: int) -> ProjPoint:
    """Scale a nonzero vector so its first nonzero coordinate is one."""
    lead = next((x for x in vec if x != ZERO), None)
    if lead is None:
        raise ValueError("cannot normalize the zero vector")
    if lead == ctx.one:
        return ProjPoint(tuple(vec), field_order)
    return ProjPoint(tuple(ctx.div(x, lead) for x in vec), field_order)


def point_count(dim: int, field_order: int) -> int:
    return (field_order ** (dim + 1) - 1) // (field_order - 1)


def apply_matrix(ctx: FieldCtx, M: GFMatrix, P: ProjPoint) -> ProjPoint:
    return normalize(ctx, M.mul_vec(P.coords), P.field_order)


def primitive_poly_over(ctx: FieldCtx, field_order: int, degree: int) -> Tuple[int, ...]:
    """Smallest primitive polynomial of the given degree over a tower subfield.

    Coefficients are elements of the subfield, enumerated and compared in
    I/O code order, low degree first; the polynomial is monic.  Primitivity
    is tested by checking that x attains the full multiplicative order
    field_order^degree - 1 in F[x]/(f), entirely with coefficient
    arithmetic in the subfield.
    """
    target = field_order ** degree - 1
    from .gf import _prime_factors  # noqa: PLC0415

    factors = _prime_factors(target)
    cofs = [target // ell for ell in factors]

    def polmul(a: List[int], b: List[int], mod: List[int]) -> List[int]:
        res = [ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai != ZERO:
                for j, bj in enumerate(b):
                    if bj != ZERO:
                        res[i + j] = ctx.add(res[i + j], ctx.mul(ai, bj))
        for i in range(len(res) - 1, degree - 1, -1):
            c = res[i]
            if c != ZERO:
                res[i] = ZERO
                for j in range(degree):
                    if mod[j] != ZERO:
                        res[i - degree + j] = ctx.sub(res[i - degree + j], ctx.mul(c, mod[j]))
        return res[:degree]

    def polpow(e: int, mod: List[int]) -> List[int]:
        result = [ctx.one] + [ZERO] * (degree - 1)
        acc = ([ZERO, ctx.one] + [ZERO] * (degree - 2))[:degree]
        if degree == 1:
            acc = [ctx.neg(mod[0])]
        while e:
            if e & 1:
                result = polmul(result, acc, mod)
            acc = polmul(acc, acc, mod)
            e >>= 1
        return result

    one_vec = [ctx.one] + [ZERO] * (degree - 1)
    for codes in product(range(field_order), repeat=degree):
        if codes[0] == 0:
            continue
        mod = [ctx.decode(c, field_order) for c in codes]
        if polpow(target, mod) != one_vec:
            continue
        if all(polpow(cf, mod) != one_vec for cf in cofs):
            return tuple(mod)
    raise RuntimeError("no primitive polynomial found")  # unreachable for valid input


def companion_matrix(ctx: FieldCtx, poly: Sequence[int], field_order: int) -> GFMatrix:
    """Multiplication-by-x matrix of F[x]/(x^d + sum poly[i] x^i)."""
    d = len(poly)
    data = [[ZERO] * d for _ in range(d)]
    for j in range(d - 1):
        data[j + 1][j] = ctx.one
    for i in range(d):
        data[i][d - 1] = ctx.neg(poly[i])
    return GFMatrix(ctx, d, d, field_order, data)


@dataclass
class SingerOrdering:
    """A Singer cycle of PG(r-1, field_order) together with its point orbit."""

    generator: GFMatrix
    points: List[ProjPoint]
    field_order: int
    poly: Tuple[int, ...]


def singer_ordering(ctx: FieldCtx, r: int, field_order: int) -> SingerOrdering:
    """Order the points of PG(r-1, field_order) under a Singer cycle.

    The generator is the companion matrix of the canonical primitive
    polynomial of degree r; successive points are normalized images of the
    unit point, and the orbit is checked to be regular (all points hit
    exactly once, closing up after the full cycle).
    """
    if r < 2:
        raise ValueError("Singer ordering needs projective dimension >= 1")
    poly = primitive_poly_over(ctx, field_order, r)
    gen = companion_matrix(ctx, poly, field_order)
    n = point_count(r - 1, field_order)
    start = ProjPoint((ctx.one,) + (ZERO,) * (r - 1), field_order)
    points = [start]
    cur = start
    for _ in range(n - 1):
        cur = apply_matrix(ctx, gen, cur)
        points.append(cur)
    if len(set(points)) != n:
        raise RuntimeError("Singer orbit is not regular")
    if apply_matrix(ctx, gen, points[-1]) != start:
        raise RuntimeError("Singer orbit does not close")
    return SingerOrdering(gen, points, field_order, poly)


def enumerate_points(ctx: FieldCtx, dim: int, field_order: int, order: str = "lex") -> List[ProjPoint]:
    """All canonical points of PG(dim, field_order).

    lex:    sorted by the tuple of I/O coordinate codes.
    singer: the Singer cycle order (dim >= 1).
    """
    if order == "singer":
        return list(singer_ordering(ctx, dim + 1, field_order).points)
    if order != "lex":
        raise ValueError(f"unknown point order {order!r}")
    pts: List[ProjPoint] = []
    for lead in range(dim, -1, -1):
        head = (0,) * lead + (1,)
        for tail in product(range(field_order), repeat=dim - lead):
            codes = head + tail
            pts.append(ProjPoint(tuple(ctx.decode(c, field_order) for c in codes), field_order))
    pts.sort(key=lambda P: tuple(ctx.encode(x, field_order) for x in P.coords))
    return pts


def subline_points(ctx: FieldCtx, A: ProjPoint, B: ProjPoint, base_order: int) -> List[ProjPoint]:
    """The canonical F_q-subline through representatives A and B.

    Returns the q+1 points normalize(A + lam*B) for lam running over F_q in
    I/O code order, followed by B itself.
    """
    if A == B:
        raise ValueError("subline endpoints must be distinct")
    pts = []
    for code in range(base_order):
        lam = ctx.decode(code, base_order)
        vec = [ctx.add(a, ctx.mul(lam, b)) for a, b in zip(A.coords, B.coords)]
        pts.append(normalize(ctx, vec, A.field_order))
    pts.append(B)
    if len(set(pts)) != base_order + 1:
        raise RuntimeError("degenerate subline")
    return pts


def subgeometry_points(ctx: FieldCtx, r: int, sub_order: int, ambient_order: int) -> List[ProjPoint]:
    """Canonical points of PG(r-1, ambient) with all coordinates in F_sub.

    Listed in the lex order of their I/O codes over the subfield.
    """
    amb_cof = ctx.cofactor(ambient_order)
    sub_cof = ctx.cofactor(sub_order)
    if sub_cof % amb_cof != 0:
        raise ValueError(f"F_{sub_order} is not a subfield of F_{ambient_order}")
    pts: List[ProjPoint] = []
    for lead in range(r - 1, -1, -1):
        head = (0,) * lead + (1,)
        for tail in product(range(sub_order), repeat=r - 1 - lead):
            codes = head + tail
            pts.append(ProjPoint(tuple(ctx.decode(c, sub_order) for c in codes), ambient_order))
    pts.sort(key=lambda P: tuple(ctx.encode(x, sub_order) for x in P.coords))
    return pts


@dataclass
class AffineSingerOrbit:
    """Affine Singer cycle data: generator, fixed point, and regular orbit.

    The generator fixes O, stabilizes the coordinate hyperplane
    x_{infinity_index} = 0 setwise, and acts regularly on the remaining
    affine points; `orbit` lists that regular orbit in cycle order.
    """

    generator: GFMatrix
    fixed_point: ProjPoint
    infinity_index: int
    orbit: List[ProjPoint]
    field_order: int


def affine_singer(ctx: FieldCtx, r: int, field_order: int,
                  infinity_index: int = 0, O: Optional[ProjPoint] = None) -> AffineSingerOrbit:
    """Affine Singer cycle of PG(r-1, field_order) for a chart and center.

    The affine part x_{infinity_index} != 0 is identified with the field of
    order field_order^(r-1) via the companion basis of its canonical
    primitive polynomial; the generator is multiplication by the primitive
    root, translated so that O is the fixed point.
    """
    if r < 2:
        raise ValueError("need projective dimension >= 1")
    if not 0 <= infinity_index < r:
        raise ValueError("infinity index out of range")
    if O is None:
        coords = [ZERO] * r
        coords[infinity_index] = ctx.one
        O = ProjPoint(tuple(coords), field_order)
    if O.coords[infinity_index] == ZERO:
        raise ValueError("center lies on the chart hyperplane")

    others = [i for i in range(r) if i != infinity_index]
    scale = ctx.inv(O.coords[infinity_index])
    o_aff = [ctx.mul(scale, O.coords[i]) for i in others]

    poly = primitive_poly_over(ctx, field_order, r - 1)
    C = companion_matrix(ctx, poly, field_order)

    # affine map v -> C(v - o) + o written as a projective matrix whose
    # chart row is (1, 0, ..., 0); its powers then close up exactly
    data = [[ZERO] * r for _ in range(r)]
    data[infinity_index][infinity_index] = ctx.one
    trans = [ctx.sub(o_aff[a], x) for a, x in enumerate(C.mul_vec(o_aff))]
    for a, ia in enumerate(others):
        data[ia][infinity_index] = trans[a]
        for b, ib in enumerate(others):
            data[ia][ib] = C.data[a][b]
    M = GFMatrix(ctx, r, r, field_order, data)

    start_vec = [ZERO] * r
    start_vec[infinity_index] = ctx.one
    for a, ia in enumerate(others):
        start_vec[ia] = ctx.add(o_aff[a], ctx.one) if a == 0 else o_aff[a]
    start = normalize(ctx, start_vec, field_order)

    size = field_order ** (r - 1) - 1
    orbit = [start]
    cur = start
    for _ in range(size - 1):
        cur = apply_matrix(ctx, M, cur)
        orbit.append(cur)
    if len(set(orbit)) != size:
        raise RuntimeError("affine Singer orbit is not regular")
    if apply_matrix(ctx, M, orbit[-1]) != start:
        raise RuntimeError("affine Singer orbit does not close")
    if O in orbit:
        raise RuntimeError("fixed point fell inside the regular orbit")
    return AffineSingerOrbit(M, O, infinity_index, orbit, field_order)
