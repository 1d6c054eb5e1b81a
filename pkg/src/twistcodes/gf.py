"""Finite field tower arithmetic inside one ambient field.

All fields F_p <= F_q <= F_{q^s} <= F_{q^t} <= F_{q^rt} are realised as
subsets of a single ambient field F_Q, Q = p^m, built once as a discrete-log
table: nonzero elements are stored as exponents of a fixed primitive root g,
zero as the sentinel ``ZERO``.  Multiplication and division are exponent
arithmetic; addition goes through a Zech logarithm table
(1 + g^k = g^zech[k]).  An element lies in the subfield of order q' exactly
when its exponent is divisible by (Q-1)/(q'-1), so subfield membership is a
single modulus test and no embedding maps are ever needed.

The defining polynomial is the lexicographically smallest primitive
polynomial of its degree (coefficients compared low-degree-first), which
makes every table, and hence every downstream matrix, reproducible bit for
bit.

I/O encoding of elements, used by all file formats and the CLI: 0 encodes
the zero element, and j+1 encodes g_{q'}^j where g_{q'} = g^{(Q-1)/(q'-1)}
is the canonical generator of the subfield of order q'.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

ZERO = -1  # exponent sentinel for the zero element

DEFAULT_TABLE_CAP = 1 << 24


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> List[int]:
    """Distinct prime factors of n by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


# --- polynomial helpers over F_p (coefficient lists, low degree first) ------


def _poly_mulmod(a: List[int], b: List[int], mod: List[int], p: int) -> List[int]:
    deg = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    res[i + j] = (res[i + j] + ai * bj) % p
    # reduce modulo the monic polynomial `mod`
    for i in range(len(res) - 1, deg - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(deg):
                res[i - deg + j] = (res[i - deg + j] - c * mod[j]) % p
    res = res[:deg]
    while len(res) > 1 and res[-1] == 0:
        res.pop()
    return res


def _poly_powmod(base: List[int], e: int, mod: List[int], p: int) -> List[int]:
    result = [1]
    acc = list(base)
    while e:
        if e & 1:
            result = _poly_mulmod(result, acc, mod, p)
        acc = _poly_mulmod(acc, acc, mod, p)
        e >>= 1
    return result


def _x_has_full_order(poly: List[int], p: int, order: int, factors: List[int]) -> bool:
    """True iff x generates a cyclic group of size `order` in F_p[x]/(poly)."""
    if poly[0] == 0:
        return False
    x = [0, 1] if len(poly) > 2 else [(-poly[0]) % p]
    if _poly_powmod(x, order, poly, p) != [1]:
        return False
    for ell in factors:
        if _poly_powmod(x, order // ell, poly, p) == [1]:
            return False
    return True


def smallest_primitive_poly(p: int, m: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic primitive polynomial of degree m over F_p.

    Coefficients are returned low-degree-first, compared in that order.
    A candidate is primitive iff x has multiplicative order p^m - 1 in
    F_p[x]/(f); that order forces f to be irreducible as well.
    """
    order = p ** m - 1
    factors = _prime_factors(order) if order > 1 else []
    # the constant term is (-1)^m times the norm of a root, and the norm of
    # a primitive element generates F_p*; other constant terms can be skipped
    pm1_factors = _prime_factors(p - 1) if p > 2 else []
    good_c0 = []
    for c0 in range(1, p):
        u = (-c0) % p if m % 2 else c0
        if all(pow(u, (p - 1) // ell, p) != 1 for ell in pm1_factors):
            good_c0.append(c0)
    coeffs = [0] * m
    coeffs[0] = good_c0[0]
    while True:
        if coeffs[0] in good_c0:
            cand = coeffs + [1]
            if m == 1 or all(
                sum(c * pow(a, i, p) for i, c in enumerate(cand)) % p
                for a in range(p)
            ):
                if _x_has_full_order(cand, p, order, factors):
                    return tuple(cand)
        i = m - 1
        while i >= 0:
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0
            i -= 1
        if i < 0:
            raise RuntimeError(f"no primitive polynomial of degree {m} over F_{p}")


@dataclass
class FieldCtx:
    """Ambient field F_{p^m} with Zech-log tables and tower bookkeeping.

    Immutable after construction; safe to share between threads.  Elements
    are plain ints: ``ZERO`` or an exponent in [0, order-2].
    """

    p: int
    m: int
    order: int
    defining_poly: Tuple[int, ...]
    subfield_orders: Tuple[int, ...]
    cofactors: Dict[int, int]
    _exp: array = field(repr=False)  # exponent -> packed polynomial key
    _log: array = field(repr=False)  # packed polynomial key -> exponent
    _zech: array = field(repr=False)
    _small: Dict[int, "SmallFieldTables"] = field(default_factory=dict, repr=False)

    # -- element basics ------------------------------------------------

    @property
    def zero(self) -> int:
        return ZERO

    @property
    def one(self) -> int:
        return 0

    def is_zero(self, x: int) -> bool:
        return x == ZERO

    def generator(self) -> int:
        """The fixed primitive root g (exponent 1), or 1 itself in F_2."""
        return 0 if self.order == 2 else 1

    def neg(self, x: int) -> int:
        if x == ZERO or self.p == 2:
            return x
        return (x + (self.order - 1) // 2) % (self.order - 1)

    def add(self, a: int, b: int) -> int:
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        n = self.order - 1
        z = self._zech[(b - a) % n]
        if z == ZERO:
            return ZERO
        return (a + z) % n

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == ZERO or b == ZERO:
            return ZERO
        return (a + b) % (self.order - 1)

    def inv(self, a: int) -> int:
        if a == ZERO:
            raise ZeroDivisionError("inverse of zero")
        return (-a) % (self.order - 1)

    def div(self, a: int, b: int) -> int:
        if b == ZERO:
            raise ZeroDivisionError("division by zero field element")
        if a == ZERO:
            return ZERO
        return (a - b) % (self.order - 1)

    def pow(self, x: int, e: int) -> int:
        if x == ZERO:
            if e == 0:
                return 0
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return ZERO
        return (x * e) % (self.order - 1)

    def frobenius(self, x: int, q_power: int) -> int:
        """x -> x^{q_power} for q_power a power of the characteristic."""
        qp = q_power
        while qp % self.p == 0:
            qp //= self.p
        if qp != 1 or q_power < 1:
            raise ValueError(f"{q_power} is not a power of the characteristic {self.p}")
        return self.pow(x, q_power)

    # -- tower structure -------------------------------------------------

    def cofactor(self, order: int) -> int:
        try:
            return self.cofactors[order]
        except KeyError:
            raise ValueError(f"{order} is not a tower subfield order of F_{self.order}")

    def subfield_contains(self, x: int, order: int) -> bool:
        cof = self.cofactor(order)
        return x == ZERO or x % cof == 0

    def subfield_generator(self, order: int) -> int:
        """Canonical generator g^{(Q-1)/(q'-1)} of the subfield of order q'."""
        cof = self.cofactor(order)
        if order == 2:
            return 0
        return cof % (self.order - 1)

    def subfield_elements(self, order: int) -> List[int]:
        """All elements of the subfield, listed in I/O code order."""
        cof = self.cofactor(order)
        return [ZERO] + [(j * cof) % (self.order - 1) if self.order > 2 else 0
                         for j in range(order - 1)]

    # -- I/O integer encoding ---------------------------------------------

    def encode(self, x: int, order: int) -> int:
        """Element -> integer code (0 for zero, j+1 for g_{q'}^j)."""
        if x == ZERO:
            return 0
        cof = self.cofactor(order)
        if x % cof != 0:
            raise ValueError(f"element g^{x} is not in the subfield of order {order}")
        if order == 2:
            return 1
        return (x // cof) % (order - 1) + 1

    def decode(self, code: int, order: int) -> int:
        if code == 0:
            return ZERO
        if not 1 <= code <= order - 1:
            raise ValueError(f"element code {code} out of range for field of order {order}")
        cof = self.cofactor(order)
        return ((code - 1) * cof) % (self.order - 1) if self.order > 2 else 0

    # -- polynomial coordinates over F_p ---------------------------------

    def poly_coeffs(self, x: int) -> Tuple[int, ...]:
        """Coordinates of x in the power basis 1, g', ..., g'^{m-1} over F_p
        (g' = residue class of the defining polynomial's variable)."""
        if x == ZERO:
            return (0,) * self.m
        key = self._exp[x]
        out = []
        for _ in range(self.m):
            out.append(key % self.p)
            key //= self.p
        return tuple(out)

    def from_poly_coeffs(self, coeffs) -> int:
        key = 0
        for c in reversed(coeffs):
            key = key * self.p + (c % self.p)
        if key == 0:
            return ZERO
        return self._log[key]

    def small_tables(self, order: int) -> "SmallFieldTables":
        tbl = self._small.get(order)
        if tbl is None:
            tbl = SmallFieldTables(self, order)
            self._small[order] = tbl
        return tbl


class SmallFieldTables:
    """Dense add/sub/mul/inv tables over I/O codes for one small subfield.

    Used by the exhaustive search kernels, where exponent arithmetic through
    the context would dominate the runtime.
    """

    def __init__(self, ctx: FieldCtx, order: int):
        if order > 4096:
            raise ValueError("dense tables requested for a field that is too large")
        self.order = order
        elems = ctx.subfield_elements(order)
        enc = {e: i for i, e in enumerate(elems)}
        self.add = [[enc[ctx.add(a, b)] for b in elems] for a in elems]
        self.sub = [[enc[ctx.sub(a, b)] for b in elems] for a in elems]
        self.mul = [[enc[ctx.mul(a, b)] for b in elems] for a in elems]
        self.neg = [enc[ctx.neg(a)] for a in elems]
        self.inv = [0] + [enc[ctx.inv(a)] for a in elems[1:]]


_FIELD_CACHE: Dict[Tuple[int, int], FieldCtx] = {}


def field_create(p: int, m: int, cap: int = DEFAULT_TABLE_CAP) -> FieldCtx:
    """Build (or fetch from cache) the ambient field F_{p^m}.

    Tables are O(p^m); construction refuses anything above `cap`.
    """
    if not _is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be positive")
    Q = p ** m
    if Q > cap:
        raise ValueError(f"field order {p}^{m} exceeds the table cap {cap}")
    cached = _FIELD_CACHE.get((p, m))
    if cached is not None:
        return cached

    poly = smallest_primitive_poly(p, m)
    n = Q - 1

    # coefficient rows of x^0 .. x^{n-1}, built blockwise: a block of
    # consecutive powers times the fixed multiplication-by-x^B matrix gives
    # the next block, so the sequential recurrence becomes ~n/B matmuls
    block = min(n, 4096)
    rows = np.zeros((block, m), dtype=np.int64)
    coeffs = [0] * m
    coeffs[0] = 1
    for k in range(block):
        rows[k] = coeffs
        top = coeffs[m - 1]
        for i in range(m - 1, 0, -1):
            coeffs[i] = coeffs[i - 1]
        coeffs[0] = 0
        if top:
            for i in range(m):
                if poly[i]:
                    coeffs[i] = (coeffs[i] - top * poly[i]) % p

    weights = np.array([p ** i for i in range(m)], dtype=np.int64)
    keys = np.empty(n, dtype=np.int64)
    keys[:block] = rows @ weights
    if n > block:
        xb = _poly_powmod([0, 1] if m > 1 else [(-poly[0]) % p], block, list(poly), p)
        mul_xb = np.zeros((m, m), dtype=np.int64)  # row i = coeffs of x^B * x^i
        cur = xb + [0] * (m - len(xb))
        for i in range(m):
            mul_xb[i] = cur
            cur = _poly_mulmod(cur, [0, 1], list(poly), p) if m > 1 else [(cur[0] * (-poly[0])) % p]
            cur = cur + [0] * (m - len(cur))
        done = block
        while done < n:
            take = min(block, n - done)
            rows = (rows @ mul_xb) % p
            keys[done:done + take] = rows[:take] @ weights
            done += take

    log_np = np.full(Q, ZERO, dtype=np.int32)
    log_np[keys] = np.arange(n, dtype=np.int32)
    # Zech logs: bump the constant digit of x^k by one and look the sum up
    c0 = keys % p
    keys1 = keys - c0 + (c0 + 1) % p
    zech_np = np.where(keys1 == 0, np.int32(ZERO), log_np[keys1]).astype(np.int32)

    exp = array("i", keys.astype(np.int32).tobytes())
    log = array("i", log_np.tobytes())
    zech = array("i", zech_np.tobytes())

    orders = tuple(sorted(p ** d for d in range(1, m + 1) if m % d == 0))
    cofs = {q: n // (q - 1) if n else 1 for q in orders}
    ctx = FieldCtx(p=p, m=m, order=Q, defining_poly=poly,
                   subfield_orders=orders, cofactors=cofs,
                   _exp=exp, _log=log, _zech=zech)
    _FIELD_CACHE[(p, m)] = ctx
    return ctx


def arith(ctx: FieldCtx, a: int, b: int, op: str) -> int:
    """Dispatch one of add/sub/mul/div on exponent-coded elements."""
    if op == "add":
        return ctx.add(a, b)
    if op == "sub":
        return ctx.sub(a, b)
    if op == "mul":
        return ctx.mul(a, b)
    if op == "div":
        return ctx.div(a, b)
    raise ValueError(f"unknown field operation {op!r}")


def frobenius_power(ctx: FieldCtx, x: int, q_power: int) -> int:
    return ctx.frobenius(x, q_power)


def subfield_contains(ctx: FieldCtx, x: int, order: int) -> bool:
    return ctx.subfield_contains(x, order)


def factor_prime_power(q: int) -> Tuple[int, int]:
    """Write q = p^e with p prime, or raise."""
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            if q != 1 or not _is_prime(p):
                raise ValueError("field order is not a prime power")
            return p, e
    raise ValueError("field order is not a prime power")
