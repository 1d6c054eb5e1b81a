"""Constacyclic codes from the twisted tensor embedding.

A full code of shape (q, r, t) has parity-check columns given by the
subgeometry coordinates of the embedded points of PG(r-1, q^t), so its
length is (q^rt - 1)/(q^t - 1), its redundancy is r^t and its minimum
distance is t + 2, attained exactly on images of F_q-sublines.  Subcodes
restrict the columns to a subgeometry PG(r-1, q^s) for s | t.  Puncturing
to the affine chart of an affine Singer cycle yields a cyclic code of
length q^(rt-t) - 1 and minimum distance t + 1.

Columns of Singer-ordered codes are generated by iterating the lifted
Singer generator on the first column, which is the column convention that
makes the twisted shift (beta * w_{n-1}, w_0, ..., w_{n-2}) an exact code
automorphism; each iterated column is checked to be a scalar multiple of
the canonical coordinate vector of its point.

Every structural claim is certified computationally: ranks by elimination,
distances by two-sided certificates (exhaustive subset scans where feasible,
subline-restricted plus randomized scans otherwise), shift closure on kernel
bases, and monomial lifts column by column.  A failed certificate raises
``ClaimViolation`` rather than being silently ignored.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .gf import ZERO, FieldCtx, SmallFieldTables, factor_prime_power
from .pglin import GFMatrix, kernel_basis, rref
from .geometry import (AffineSingerOrbit, ProjPoint, SingerOrdering,
                       affine_singer, enumerate_points, normalize,
                       point_count, singer_ordering, subgeometry_points,
                       subline_points)
from .variety import VarietyCtx, variety_ctx


class ClaimViolation(Exception):
    """A certified structural claim failed; carries the certificate text."""


@dataclass
class CodeSummary:
    q: int
    r: int
    t: int
    s: Optional[int]
    n: int
    k: int
    ordering: str
    d: Optional[int] = None
    beta_code: Optional[int] = None


def eta(summary: CodeSummary) -> Fraction:
    """Redundancy cost per handled error, (d-1)/(n-k); 1 exactly for MDS."""
    if summary.d is None:
        raise ValueError("minimum distance has not been certified")
    if summary.n <= summary.k:
        raise ValueError("code has no redundancy")
    val = Fraction(summary.d - 1, summary.n - summary.k)
    if not 0 < val <= 1:
        raise ClaimViolation(f"eta = {val} violates the Singleton range (0, 1]")
    return val


@dataclass
class MonomialMap:
    """Column permutation plus per-column scalars; acts on words by
    (theta w)[perm[i]] = scalars[i] * w[i], with scalars as I/O codes."""

    perm: List[int]
    scalars: List[int]
    field_order: int

    def apply(self, word: Sequence[int], tables: SmallFieldTables) -> List[int]:
        out = [0] * len(word)
        mul = tables.mul
        for i, (j, s) in enumerate(zip(self.perm, self.scalars)):
            out[j] = mul[s][word[i]]
        return out


@dataclass
class DistanceCertificate:
    d: int
    lower_method: str
    subsets_checked: int
    sublines_checked: int
    random_checked: int
    witness_support: Tuple[int, ...]
    witness_word: Tuple[int, ...]
    notes: List[str] = field(default_factory=list)

    def render(self) -> str:
        lines = [
            f"minimum distance d = {self.d}",
            f"  lower bound: no dependent {self.d - 1}-column subset "
            f"[{self.lower_method}; subsets={self.subsets_checked}, "
            f"sublines={self.sublines_checked}, random={self.random_checked}]",
            f"  upper bound: dependent columns {list(self.witness_support)} "
            f"carry the weight-{self.d} word {list(self.witness_word)}",
        ]
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


@dataclass
class MinWeightClass:
    """One projective class of minimum-weight words, keyed by support."""

    support: Tuple[int, ...]
    word: Tuple[int, ...]  # I/O codes, first nonzero entry normalized to 1


@dataclass
class ChannelStats:
    trials: int
    failures: int
    miscorrections: int

    @property
    def block_errors(self) -> int:
        return self.failures + self.miscorrections

    @property
    def block_error_rate(self) -> Optional[float]:
        return self.block_errors / self.trials if self.trials else None

    @property
    def failure_rate(self) -> Optional[float]:
        return self.failures / self.trials if self.trials else None


class Code:
    """A built code: parity-check matrix, its column points, and caches."""

    def __init__(self, vctx: VarietyCtx, H: GFMatrix, column_points: List[ProjPoint],
                 summary: CodeSummary, kind: str,
                 singer: Optional[SingerOrdering] = None,
                 lift_matrix: Optional[GFMatrix] = None,
                 affine: Optional[AffineSingerOrbit] = None):
        self.vctx = vctx
        self.ctx = vctx.ctx
        self.H = H
        self.column_points = column_points
        self.summary = summary
        self.kind = kind  # full | subcode | punctured
        self.singer = singer
        self.lift_matrix = lift_matrix
        self.affine = affine
        self.point_index = {P.coords: i for i, P in enumerate(column_points)}
        self.tables = self.ctx.small_tables(summary.q)
        enc = lambda x: self.ctx.encode(x, summary.q)
        self.io_columns: List[Tuple[int, ...]] = [
            tuple(enc(H.data[i][j]) for i in range(H.rows)) for j in range(H.cols)]
        self._kernel_io: Optional[List[List[int]]] = None
        self._w1_table: Optional[Dict[Tuple[int, ...], Tuple[int, int]]] = None

    # -- basic word machinery (I/O coded) ---------------------------------

    @property
    def n(self) -> int:
        return self.summary.n

    @property
    def expected_d(self) -> int:
        return self.summary.t + (1 if self.kind == "punctured" else 2)

    def syndrome(self, word: Sequence[int]) -> Tuple[int, ...]:
        add, mul = self.tables.add, self.tables.mul
        acc = [0] * self.H.rows
        for j, wj in enumerate(word):
            if wj:
                col = self.io_columns[j]
                mw = mul[wj]
                acc = [add[a][mw[h]] for a, h in zip(acc, col)]
        return tuple(acc)

    def is_codeword(self, word: Sequence[int]) -> bool:
        return not any(self.syndrome(word))

    def kernel_io(self) -> List[List[int]]:
        """Canonical generator rows (kernel of H) as I/O code vectors."""
        if self._kernel_io is None:
            enc = lambda x: self.ctx.encode(x, self.summary.q)
            self._kernel_io = [[enc(x) for x in v] for v in kernel_basis(self.H)]
        return self._kernel_io

    def codewords(self, limit: int = 1 << 20) -> Iterable[List[int]]:
        """All q^k codewords (small codes only), in message-lex order."""
        q, k, n = self.summary.q, self.summary.k, self.n
        if q ** k > limit:
            raise ValueError(f"{q}^{k} codewords exceed the enumeration limit")
        gen = self.kernel_io()
        add, mul = self.tables.add, self.tables.mul
        word = [0] * n
        msg = [0] * k
        yield list(word)
        for _ in range(q ** k - 1):
            i = k - 1
            while True:
                row = gen[i]
                word = [add[a][b] for a, b in zip(word, row)]  # add one more copy
                msg[i] += 1
                if msg[i] < q:
                    break
                # q copies of row sum to the trace of the odometer wrap
                msg[i] = 0
                i -= 1
            yield list(word)

    def encode(self, message: Sequence[int]) -> List[int]:
        gen = self.kernel_io()
        if len(message) != len(gen):
            raise ValueError("message length must equal the code dimension")
        add, mul = self.tables.add, self.tables.mul
        word = [0] * self.n
        for m, row in zip(message, gen):
            if m:
                mm = mul[m]
                word = [add[a][mm[b]] for a, b in zip(word, row)]
        return word


# -- construction ------------------------------------------------------------


def _validate_full_params(q: int, r: int, t: int) -> None:
    factor_prime_power(q)
    if r < 2:
        raise ValueError("r = 1 gives a single projective point, not a code")
    if t < 2:
        raise ValueError("t = 1 makes the embedding trivial; no code arises")
    if t >= q:
        raise ValueError(f"parameters need t < q, got t={t}, q={q}")


def _columns_to_matrix(vctx: VarietyCtx, cols: List[List[int]]) -> GFMatrix:
    data = [[col[i] for col in cols] for i in range(vctx.N)]
    return GFMatrix(vctx.ctx, vctx.N, len(cols), vctx.q, data)


def _proportionality_scalar(ctx: FieldCtx, v: Sequence[int], w: Sequence[int]) -> Optional[int]:
    """c with v = c*w, or None."""
    ratio = None
    for a, b in zip(v, w):
        if (a == ZERO) != (b == ZERO):
            return None
        if a != ZERO:
            c = ctx.div(a, b)
            if ratio is None:
                ratio = c
            elif ratio != c:
                return None
    return ratio


def build_parity_check(q: int, r: int, t: int, ordering: str = "singer",
                       cap: Optional[int] = None) -> Code:
    """Build the full code of shape (q, r, t) with the chosen column order.

    Singer order generates columns by iterating the lifted cycle generator,
    checking each against the canonical coordinates of its point; lex order
    uses the canonical coordinates directly.
    """
    _validate_full_params(q, r, t)
    vctx = variety_ctx(q, r, t, cap)
    ctx = vctx.ctx
    n = point_count(r - 1, vctx.qt)

    singer = None
    lift = None
    if ordering == "singer":
        singer = singer_ordering(ctx, r, vctx.qt)
        points = singer.points
    elif ordering == "lex":
        points = enumerate_points(ctx, r - 1, vctx.qt, "lex")
    else:
        raise ValueError(f"unknown ordering {ordering!r}")
    if len(points) != n:
        raise ClaimViolation(f"point count {len(points)} != expected length {n}")

    canonical = [vctx.alpha(P).fq_coords for P in points]
    if len({c for c in map(tuple, canonical)}) != n:
        raise ClaimViolation("embedding failed to be injective on points")

    if singer is not None:
        lift = vctx.subgeometry_matrix(vctx.lift_collineation(singer.generator))
        if rref(lift).rank != vctx.N:
            raise ClaimViolation("lifted Singer generator is singular")
        cols = [list(canonical[0])]
        for i in range(1, n):
            cols.append(lift.mul_vec(cols[-1]))
            if _proportionality_scalar(ctx, cols[-1], canonical[i]) is None:
                raise ClaimViolation(
                    f"iterated column {i} is not a scalar multiple of its point's coordinates")
    else:
        cols = [list(c) for c in canonical]

    H = _columns_to_matrix(vctx, cols)
    rk = rref(H).rank
    if rk != vctx.N:
        raise ClaimViolation(f"parity-check rank {rk} is not maximal ({vctx.N})")
    summary = CodeSummary(q=q, r=r, t=t, s=None, n=n, k=n - rk, ordering=ordering)
    return Code(vctx, H, list(points), summary, "full", singer=singer, lift_matrix=lift)


def build_subcode_parity_check(q: int, r: int, t: int, s: int,
                               cap: Optional[int] = None) -> Code:
    """Columns restricted to a subgeometry PG(r-1, q^s), s | t, 1 < s < t."""
    _validate_full_params(q, r, t)
    if not 1 < s < t or t % s != 0:
        raise ValueError("subcode parameter must satisfy 1 < s < t and s | t")
    m = point_count(r - 1, q ** s)
    if not t < m - 1:
        raise ValueError(f"need t < m - 1 = {m - 1}")
    vctx = variety_ctx(q, r, t, cap)
    ctx = vctx.ctx
    points = subgeometry_points(ctx, r, q ** s, vctx.qt)
    cols = [list(vctx.alpha(P).fq_coords) for P in points]
    K = _columns_to_matrix(vctx, cols)
    rk = rref(K).rank
    expected_rank = math.comb(r - 1 + t // s, t // s) ** s
    if rk != expected_rank:
        raise ClaimViolation(
            f"subcode parity-check rank {rk} != predicted span {expected_rank}")
    summary = CodeSummary(q=q, r=r, t=t, s=s, n=m, k=m - rk, ordering="lex")
    return Code(vctx, K, points, summary, "subcode")


def puncture_to_cyclic(q: int, r: int, t: int, infinity_index: int = 0,
                       origin: Optional[ProjPoint] = None,
                       cap: Optional[int] = None) -> Code:
    """Cyclic code on the affine chart of an affine Singer cycle.

    Columns are the subgeometry coordinates of embedded affine points taken
    relative to the embedded center (chart differences), ordered along the
    regular orbit; the lifted generator then shifts the columns exactly, so
    the kernel is closed under the plain cyclic shift.
    """
    _validate_full_params(q, r, t)
    vctx = variety_ctx(q, r, t, cap)
    ctx = vctx.ctx
    aso = affine_singer(ctx, r, vctx.qt, infinity_index, origin)
    m = vctx.qt ** (r - 1) - 1

    def chart_coords(P: ProjPoint) -> List[int]:
        scale = ctx.inv(P.coords[infinity_index])
        rep = [ctx.mul(scale, x) for x in P.coords]
        return vctx.to_subgeometry_coords(vctx.alpha_raw(rep))

    y_origin = chart_coords(aso.fixed_point)
    cols = []
    for P in aso.orbit:
        y = chart_coords(P)
        cols.append([ctx.sub(a, b) for a, b in zip(y, y_origin)])

    lift = vctx.subgeometry_matrix(vctx.lift_collineation(aso.generator))
    for j in range(m):
        nxt = lift.mul_vec(cols[j])
        if nxt != cols[(j + 1) % m]:
            raise ClaimViolation(f"lifted affine generator does not shift column {j} exactly")

    H = _columns_to_matrix(vctx, cols)
    rk = rref(H).rank
    summary = CodeSummary(q=q, r=r, t=t, s=None, n=m, k=m - rk,
                          ordering="affine-singer-punctured")
    return Code(vctx, H, list(aso.orbit), summary, "punctured",
                lift_matrix=lift, affine=aso)


# -- subset scanning kernels (I/O coded columns, dense small-field tables) ---


def _first_dependent_subset(cols: Sequence[Sequence[int]], tables: SmallFieldTables,
                            size: int) -> Optional[Tuple[int, ...]]:
    """Lexicographically first dependent subset of at most `size` columns.

    Depth-first scan keeping, at each level, all later columns reduced
    against the chosen echelon prefix, so the total work is about one
    single-pivot reduction per subset.
    """
    mul, sub, inv = tables.mul, tables.sub, tables.inv

    def rec(chosen: Tuple[int, ...], items: List[Tuple[int, List[int]]]):
        leaf = len(chosen) + 1 == size
        for pos, (idx, v) in enumerate(items):
            piv = -1
            for i, x in enumerate(v):
                if x:
                    piv = i
                    break
            if piv < 0:
                return chosen + (idx,)
            if leaf:
                continue
            mi = mul[inv[v[piv]]]
            pr = [mi[x] for x in v]
            nxt = []
            for jdx, w in items[pos + 1:]:
                c = w[piv]
                if c:
                    mc = mul[c]
                    w = [sub[x][mc[y]] for x, y in zip(w, pr)]
                nxt.append((jdx, w))
            hit = rec(chosen + (idx,), nxt)
            if hit:
                return hit
        return None

    return rec((), [(i, list(c)) for i, c in enumerate(cols)])


def _rank_and_kernels(cols: Sequence[Sequence[int]], nrows: int,
                      tables: SmallFieldTables) -> Tuple[int, List[List[int]]]:
    """Rank of the given columns and the combinations that vanish.

    Each returned combination c (I/O codes, indexed like `cols`) satisfies
    sum c_j cols[j] = 0 with its last nonzero coefficient normalized by
    construction of the augmented elimination.
    """
    mul, sub, inv = tables.mul, tables.sub, tables.inv
    s = len(cols)
    pivots: List[Tuple[int, List[int]]] = []
    kernels: List[List[int]] = []
    for j, col in enumerate(cols):
        v = list(col) + [0] * s
        v[nrows + j] = 1
        for piv, pr in pivots:
            c = v[piv]
            if c:
                mc = mul[c]
                v = [sub[x][mc[y]] for x, y in zip(v, pr)]
        piv = -1
        for i in range(nrows):
            if v[i]:
                piv = i
                break
        if piv < 0:
            kernels.append(v[nrows:])
        else:
            mi = mul[inv[v[piv]]]
            pivots.append((piv, [mi[x] for x in v]))
    return len(pivots), kernels


def _rank_of(cols: Sequence[Sequence[int]], nrows: int, tables: SmallFieldTables) -> int:
    return _rank_and_kernels(cols, nrows, tables)[0]


# -- subline enumeration -------------------------------------------------------


def _twist_transversal(ctx: FieldCtx, q: int, qt: int) -> List[int]:
    """Coset representatives of F_{q^t}^* / F_q^*: powers of the canonical
    generator with exponent below (q^t - 1)/(q - 1)."""
    g = ctx.subfield_generator(qt)
    return [ctx.pow(g, u) for u in range((qt - 1) // (q - 1))]


def _subline_indices(code: Code, A: ProjPoint, B: ProjPoint, mu: int,
                     min_allowed: int = -1) -> Optional[List[int]]:
    """Column indices of the subline through (A, mu*B), or None as soon as a
    point with index <= min_allowed (other than A's own) shows up."""
    ctx = code.ctx
    q = code.summary.q
    idx = code.point_index
    out = [idx[A.coords], idx[B.coords]]
    lam = ctx.one
    sub_gen = ctx.subfield_generator(q)
    for _ in range(q - 1):
        c = ctx.mul(mu, lam)
        vec = [ctx.add(a, ctx.mul(c, b)) for a, b in zip(A.coords, B.coords)]
        P = normalize(ctx, vec, A.field_order)
        j = idx.get(P.coords)
        if j is None:
            raise ClaimViolation("subline left the column point set")
        if j <= min_allowed:
            return None
        out.append(j)
        lam = ctx.mul(lam, sub_gen)
    return out


def _all_sublines(code: Code) -> Iterable[List[int]]:
    """Every F_q-subline of the column point set, each exactly once.

    Pairs (i, j) with i < j are extended by every twist; a subline is kept
    only when (i, j) are its two lowest column indices.
    """
    ctx = code.ctx
    pts = code.column_points
    twists = _twist_transversal(ctx, code.summary.q, code.vctx.qt)
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for mu in twists:
                got = _subline_indices(code, pts[i], pts[j], mu, min_allowed=j)
                if got is not None and got[0] == i and min(got) == i and sorted(got)[1] == j:
                    yield got


def _anchored_sublines(code: Code, anchor: int = 0) -> Iterable[List[int]]:
    """Sublines through the anchor column, each exactly once (the anchor and
    the second-lowest index generate them)."""
    ctx = code.ctx
    pts = code.column_points
    twists = _twist_transversal(ctx, code.summary.q, code.vctx.qt)
    for j in range(anchor + 1, len(pts)):
        for mu in twists:
            got = _subline_indices(code, pts[anchor], pts[j], mu, min_allowed=j)
            if got is not None:
                yield got


# -- distance certification ---------------------------------------------------

EXHAUSTIVE_SUBSET_LIMIT = 10 ** 7
RANDOM_SUBSETS = 10 ** 5


def _check_subline_image(code: Code, indices: List[int]) -> Optional[List[int]]:
    """Certify one subline image: every (t+1)-subset independent.

    Returns the kernel combination over the subline columns when the image
    is dependent (the generic case), None when it is independent.  Raises
    when a dependent proper subset exists.
    """
    cols = [code.io_columns[i] for i in indices]
    rank, kernels = _rank_and_kernels(cols, code.H.rows, code.tables)
    if not kernels:
        return None
    if len(kernels) > 1 or any(c == 0 for c in kernels[0]):
        raise ClaimViolation(
            f"columns {sorted(indices)} contain a dependent subset of fewer than "
            f"{len(indices)} columns")
    return kernels[0]


def _word_from_combo(code: Code, indices: Sequence[int], combo: Sequence[int]) -> Tuple[int, ...]:
    word = [0] * code.n
    for i, c in zip(indices, combo):
        word[i] = c
    div = code.tables.mul[code.tables.inv[next(c for c in word if c)]]
    return tuple(div[c] for c in word)


def verify_min_distance(code: Code, seed: int = 0) -> DistanceCertificate:
    """Two-sided minimum distance certificate; stores d in the summary.

    Lower bound: no dependent subset of expected_d - 1 columns, exhaustively
    when C(n, expected_d - 1) is at most 10^7; otherwise every subline image
    through the first column (all other sublines are exact images of these
    under the verified, invertible column recurrence) plus 10^5 seeded random
    subsets.  Upper bound: an explicit dependent expected_d-subset with its
    kernel word, checked against H.
    """
    t = code.summary.t
    expect = code.expected_d
    n = code.n
    sub_size = expect - 1
    notes: List[str] = []

    total = math.comb(n, sub_size)
    sublines_checked = 0
    random_checked = 0
    if total <= EXHAUSTIVE_SUBSET_LIMIT:
        method = "exhaustive"
        hit = _first_dependent_subset(code.io_columns, code.tables, sub_size)
        if hit is not None:
            raise ClaimViolation(
                f"dependent column subset {sorted(hit)} of size {len(hit)} <= {sub_size}")
        subsets_checked = total
    else:
        if code.kind != "full":
            raise ValueError("scan too large and no subline structure available")
        method = "sublines+random"
        if code.summary.ordering == "singer":
            gen = _anchored_sublines(code, 0)
            notes.append(
                "subline scan anchored at column 0; the build verified that an "
                "invertible matrix maps each column to the next, so every subline "
                "is a dependence-preserving rotation of an anchored one")
        else:
            gen = _all_sublines(code)
        subsets_checked = 0
        for indices in gen:
            _check_subline_image(code, indices)
            sublines_checked += 1
            subsets_checked += math.comb(len(indices), sub_size)
        rng = random.Random(seed * 2 + 1)
        cols = code.io_columns
        for _ in range(RANDOM_SUBSETS):
            pick = rng.sample(range(n), sub_size)
            if _rank_of([cols[i] for i in pick], code.H.rows, code.tables) != sub_size:
                raise ClaimViolation(f"dependent random subset {sorted(pick)}")
        random_checked = RANDOM_SUBSETS
        subsets_checked += random_checked

    # upper bound witness
    if code.kind == "punctured":
        hit = _first_dependent_subset(code.io_columns, code.tables, expect)
        if hit is None:
            raise ClaimViolation(f"no dependent {expect}-subset exists; distance exceeds {expect}")
        wit_idx = list(hit)
        _, kernels = _rank_and_kernels([code.io_columns[i] for i in wit_idx],
                                       code.H.rows, code.tables)
        combo = kernels[0]
    else:
        pts = code.column_points
        base = subline_points(code.ctx, pts[0], pts[1], code.summary.q)
        wit_idx = sorted(code.point_index[P.coords] for P in base)[:expect]
        combo = _check_subline_image(code, wit_idx)
        if combo is None:
            raise ClaimViolation(
                f"canonical subline columns {wit_idx} are independent; "
                f"no weight-{expect} word arises there")
    word = _word_from_combo(code, wit_idx, combo)
    if sum(1 for c in word if c) != expect or not code.is_codeword(word):
        raise ClaimViolation("distance witness is not a valid codeword of the expected weight")

    code.summary.d = expect
    support = tuple(i for i, c in enumerate(word) if c)
    return DistanceCertificate(expect, method, subsets_checked, sublines_checked,
                               random_checked, support, word, notes)


# -- minimum weight words ------------------------------------------------------


def min_weight_words(code: Code, cross_check_limit: int = 1 << 13) -> List[MinWeightClass]:
    """All weight-(t+2) words of a full code, grouped by support.

    Enumerates every subline image, takes each (t+2)-subset of its columns
    and the one-dimensional kernel it carries.  When the codebook is small
    enough the result is cross-checked against exhaustive enumeration.
    """
    if code.kind != "full":
        raise ValueError("minimum-weight characterization applies to full codes only")
    t, q = code.summary.t, code.summary.q
    w = t + 2
    found: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    for indices in _all_sublines(code):
        srt = sorted(indices)
        for subset in combinations(srt, w):
            cols = [code.io_columns[i] for i in subset]
            rank, kernels = _rank_and_kernels(cols, code.H.rows, code.tables)
            if rank != w - 1 or len(kernels) != 1 or any(c == 0 for c in kernels[0]):
                raise ClaimViolation(
                    f"subline columns {list(subset)} do not carry a unique full-support kernel")
            word = _word_from_combo(code, subset, kernels[0])
            support = tuple(i for i, c in enumerate(word) if c)
            prev = found.get(support)
            if prev is not None and prev != word:
                raise ClaimViolation(f"support {support} carries two projective word classes")
            found[support] = word

    if q ** code.summary.k <= cross_check_limit:
        exhaustive: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
        tables = code.tables
        for cw in code.codewords():
            wt = sum(1 for c in cw if c)
            if wt and wt < w:
                raise ClaimViolation(f"codeword of weight {wt} < d found: {cw}")
            if wt == w:
                lead = next(c for c in cw if c)
                div = tables.mul[tables.inv[lead]]
                norm = tuple(div[c] for c in cw)
                exhaustive[tuple(i for i, c in enumerate(norm) if c)] = norm
        if exhaustive != found:
            raise ClaimViolation(
                f"subline enumeration found {len(found)} classes, exhaustive search "
                f"{len(exhaustive)}; the sets differ")

    return [MinWeightClass(s, found[s]) for s in sorted(found)]


# -- constacyclic structure ----------------------------------------------------


def constacyclic_shift_constant(code: Code) -> int:
    """The twist constant beta with (beta w_{n-1}, w_0, ..., w_{n-2}) in the code.

    Computed from the lifted Singer scalar: the generator to the n-th power
    is a scalar matrix lambda*I, and beta is the norm of lambda down to F_q.
    Verified on the whole kernel basis and against exhaustive search over
    F_q^*; returns beta as an exponent-coded element (see summary.beta_code
    for the I/O form).
    """
    if code.kind == "punctured":
        raise ValueError("punctured codes are cyclic; beta = 1 by construction")
    if code.singer is None:
        raise ValueError("constacyclic structure requires the Singer column order")
    ctx = code.ctx
    q, n = code.summary.q, code.n
    qt = code.vctx.qt

    M = code.singer.generator
    power = GFMatrix.identity(ctx, M.rows, M.field_order)
    e = n
    base = M
    while e:
        if e & 1:
            power = power.mul_mat(base)
        base = base.mul_mat(base)
        e >>= 1
    lam = power.data[0][0]
    for i in range(M.rows):
        for j in range(M.rows):
            want = lam if i == j else ZERO
            if power.data[i][j] != want:
                raise ClaimViolation("Singer generator^n is not a scalar matrix")
    beta = ctx.pow(lam, (qt - 1) // (q - 1))
    if not ctx.subfield_contains(beta, q) or beta == ZERO:
        raise ClaimViolation("norm of the Singer scalar left F_q*")
    beta_code = ctx.encode(beta, q)

    tables = code.tables
    mul = tables.mul

    def shift_ok(b: int) -> bool:
        mb = mul[b]
        for row in code.kernel_io():
            shifted = [mb[row[-1]]] + row[:-1]
            if any(code.syndrome(shifted)):
                return False
        return True

    working = [b for b in range(1, q) if shift_ok(b)]
    if working != [beta_code]:
        raise ClaimViolation(
            f"twist constants passing the kernel test: {working}, "
            f"lifted-scalar value: {beta_code}")
    code.summary.beta_code = beta_code
    return beta


def verify_cyclic_shift(code: Code) -> bool:
    """Plain cyclic shift closure on the kernel basis (punctured codes)."""
    for row in code.kernel_io():
        shifted = [row[-1]] + row[:-1]
        if any(code.syndrome(shifted)):
            raise ClaimViolation("cyclic shift left the punctured code")
    return True


# -- monomial automorphisms ----------------------------------------------------


def monomial_automorphism_from(code: Code, g: GFMatrix) -> MonomialMap:
    """Lift an invertible r x r collineation matrix to a monomial map.

    The lifted matrix applied to column i must equal scalars[i] times the
    column of the image point; both the permutation and the scalars are
    verified column by column.
    """
    if code.kind != "full":
        raise ValueError("monomial lifting needs the full variety column set")
    ctx = code.ctx
    q = code.summary.q
    A = code.vctx.subgeometry_matrix(code.vctx.lift_collineation(g))
    perm: List[int] = []
    scalars: List[int] = []
    cols = [code.H.column(j) for j in range(code.n)]
    for i, P in enumerate(code.column_points):
        target = normalize(ctx, g.mul_vec(P.coords), P.field_order)
        j = code.point_index.get(target.coords)
        if j is None:
            raise ClaimViolation("collineation image of a column point is not a column point")
        w = A.mul_vec(cols[i])
        s = _proportionality_scalar(ctx, w, cols[j])
        if s is None or not ctx.subfield_contains(s, q):
            raise ClaimViolation(f"lifted image of column {i} is not an F_q multiple of column {j}")
        perm.append(j)
        scalars.append(ctx.encode(s, q))
    return MonomialMap(perm, scalars, q)


def random_collineation(code: Code, rng: random.Random) -> GFMatrix:
    """A uniformly sampled invertible r x r matrix over F_{q^t}."""
    ctx = code.ctx
    r = code.summary.r
    qt = code.vctx.qt
    while True:
        data = [[ctx.decode(rng.randrange(qt), qt) for _ in range(r)] for _ in range(r)]
        M = GFMatrix(ctx, r, r, qt, data)
        if rref(M).rank == r:
            return M


# -- decoding -------------------------------------------------------------------


def _weight_one_table(code: Code) -> Dict[Tuple[int, ...], Tuple[int, int]]:
    if code._w1_table is None:
        mul = code.tables.mul
        table: Dict[Tuple[int, ...], Tuple[int, int]] = {}
        for i, col in enumerate(code.io_columns):
            for c in range(1, code.summary.q):
                syn = tuple(mul[c][h] for h in col)
                if syn in table:
                    raise ClaimViolation("two weight-one patterns share a syndrome; d <= 2")
                table[syn] = (i, c)
        code._w1_table = table
    return code._w1_table


def decode(code: Code, received: Sequence[int]) -> Optional[Tuple[List[int], List[int]]]:
    """Bounded-distance decoding up to e = (d-1)//2 symbol errors.

    Searches error patterns in increasing weight and lexicographic support
    order (weights 0..2 via syndrome tables, exactly equivalent because the
    pattern within radius e is unique); returns (codeword, error) or None.
    """
    if len(received) != code.n:
        raise ValueError("received word has the wrong length")
    if code.summary.d is None:
        verify_min_distance(code)
    e = (code.summary.d - 1) // 2
    q = code.summary.q
    tables = code.tables
    sub, mul = tables.sub, tables.mul

    syn = code.syndrome(received)

    def finish(err: List[int]) -> Tuple[List[int], List[int]]:
        word = [sub[rj][ej] for rj, ej in zip(received, err)]
        return word, err

    if not any(syn):
        return finish([0] * code.n)
    if e >= 1:
        w1 = _weight_one_table(code)
        hit = w1.get(syn)
        if hit is not None:
            err = [0] * code.n
            err[hit[0]] = hit[1]
            return finish(err)
    if e >= 2:
        for i, col in enumerate(code.io_columns):
            for c in range(1, q):
                mc = mul[c]
                rest = tuple(sub[s][mc[h]] for s, h in zip(syn, col))
                hit = w1.get(rest)
                if hit is not None and hit[0] > i:
                    err = [0] * code.n
                    err[i] = c
                    err[hit[0]] = hit[1]
                    return finish(err)
    if e >= 3:
        from itertools import combinations, product as iproduct
        add = tables.add
        for wgt in range(3, e + 1):
            for supp in combinations(range(code.n), wgt):
                for vals in iproduct(range(1, q), repeat=wgt):
                    acc = [0] * code.H.rows
                    for pos, c in zip(supp, vals):
                        mc = mul[c]
                        acc = [add[a][mc[h]] for a, h in zip(acc, code.io_columns[pos])]
                    if tuple(acc) == syn:
                        err = [0] * code.n
                        for pos, c in zip(supp, vals):
                            err[pos] = c
                        return finish(err)
    return None


def simulate_channel(code: Code, symbol_error_prob, trials: int, seed: int) -> ChannelStats:
    """Monte Carlo run over the q-ary symmetric channel.

    Each trial encodes a random message, flips each symbol independently
    with the given probability to a uniformly random different symbol, and
    decodes.  Per-trial generators are seeded as seed*1000003 + trial, so
    results are reproducible and independent of execution order.
    """
    p = float(symbol_error_prob)
    if not 0 <= p < 1:
        raise ValueError("symbol error probability must lie in [0, 1)")
    if code.summary.d is None:
        verify_min_distance(code)
    q, k, n = code.summary.q, code.summary.k, code.n
    failures = miscorrections = 0
    for trial in range(trials):
        rng = random.Random(seed * 1000003 + trial)
        message = [rng.randrange(q) for _ in range(k)]
        sent = code.encode(message)
        received = list(sent)
        for j in range(n):
            if rng.random() < p:
                # + uniform nonzero offset mod q ranges over the other symbols
                received[j] = (received[j] + rng.randrange(1, q)) % q
        result = decode(code, received)
        if result is None:
            failures += 1
        elif result[0] != sent:
            miscorrections += 1
    return ChannelStats(trials, failures, miscorrections)
