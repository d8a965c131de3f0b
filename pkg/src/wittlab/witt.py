"""Truncated Witt vectors over finite perfect F_p-algebras.

Arithmetic comes in two independent flavours:

* the classical universal polynomials S_i / P_i / N_i, solved exactly from
  the ghost equations with divisions by p^i that must come out integral
  (anything else aborts: it would falsify integrality).  These are cached
  per (p, n) and are the primary engine for truncations inside the cache
  range.

* a digit engine for deeper truncations, where exact universal polynomials
  get combinatorially huge.  Every element of W_n(R) for perfect R is
  uniquely sum p^i tau(a_i); sums are long additions of multiplicative
  lifts whose carries are governed by the two-variable specializations of
  the ghost recursion (tiny exact polynomials), and products reduce to
  tau(a)tau(b) = tau(ab).

The Galois ring Z/p^n[x]/(lift of the field modulus) with its iterated
p^k-power Teichmuller table is a third, fully separate implementation used
as a cross-validation oracle.
"""
from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field

from .multipoly import MultiPoly
from .perfect import FiniteField, PerfectRing, FiniteCommutativeRing, FiniteRingModel, inverse_frobenius
from .intlinalg import FinAbGroup

# largest truncation per prime for which the exact universal polynomials are
# computed by default; beyond this the digit engine takes over
POLY_LEVEL_CAP = {2: 5, 3: 4, 5: 4}


def ghost_polys(p: int, n: int, nvars: int | None = None, offset: int = 0):
    """w_m = sum_{i<=m} p^i X_{offset+i}^{p^(m-i)} for m < n."""
    if n < 1:
        raise ValueError("need n >= 1")
    nv = nvars if nvars is not None else n
    out = []
    for m in range(n):
        w = MultiPoly(nv)
        for i in range(m + 1):
            w = w + MultiPoly.var(nv, offset + i, p ** (m - i), p**i)
        out.append(w)
    return out


@dataclass
class WittPolyCache:
    """Universal sum/product/negation polynomials for one (p, n)."""

    p: int
    n: int
    ghost: list = field(default_factory=list)  # n polys in n vars
    sum: list = field(default_factory=list)  # n polys in 2n vars (X then Y)
    prod: list = field(default_factory=list)  # n polys in 2n vars
    neg: list = field(default_factory=list)  # n polys in n vars

    KINDS = ("ghost", "S", "P", "N")

    def family(self, kind: str):
        return {"ghost": self.ghost, "S": self.sum, "P": self.prod, "N": self.neg}[kind]

    def render_lines(self) -> list[str]:
        lines = []
        for kind in self.KINDS:
            for idx, poly in enumerate(self.family(kind)):
                lines.append(f"{self.p} {self.n} {kind} {idx} : {poly.render()}")
        return lines

    @classmethod
    def parse_lines(cls, lines) -> "WittPolyCache":
        cache = None
        for line in lines:
            line = line.strip()
            if not line:
                continue
            head, body = line.split(" : ", 1)
            p_s, n_s, kind, idx_s = head.split()
            p, n, idx = int(p_s), int(n_s), int(idx_s)
            if cache is None:
                cache = cls(p, n)
            elif (cache.p, cache.n) != (p, n):
                raise ValueError("mixed (p, n) in cache file")
            nvars = 2 * n if kind in ("S", "P") else n
            fam = cache.family(kind)
            if idx != len(fam):
                raise ValueError("cache lines out of order")
            fam.append(MultiPoly.parse(nvars, body))
        if cache is None:
            raise ValueError("empty cache file")
        return cache

    def verify_ghost_identities(self) -> None:
        """Symbolic check that the stored polynomials solve the ghost
        equations; raises on any failure."""
        p, n = self.p, self.n
        gx = ghost_polys(p, n, nvars=2 * n, offset=0)
        gy = ghost_polys(p, n, nvars=2 * n, offset=n)
        # incremental p-th powers, recomputed independently of construction
        spow = [poly.copy() for poly in self.sum]
        ppow = [poly.copy() for poly in self.prod]
        npow = [poly.copy() for poly in self.neg]
        for m in range(n):
            lhs_s = MultiPoly.zero(2 * n)
            lhs_p = MultiPoly.zero(2 * n)
            lhs_n = MultiPoly.zero(n)
            for i in range(m + 1):
                lhs_s = lhs_s + spow[i].scale(p**i)
                lhs_p = lhs_p + ppow[i].scale(p**i)
                lhs_n = lhs_n + npow[i].scale(p**i)
            if not (lhs_s - gx[m] - gy[m]).is_zero():
                raise ArithmeticError(f"ghost additivity fails at index {m}")
            if not (lhs_p - gx[m] * gy[m]).is_zero():
                raise ArithmeticError(f"ghost multiplicativity fails at index {m}")
            if not (lhs_n + self.ghost[m]).is_zero():
                raise ArithmeticError(f"ghost negation fails at index {m}")
            if m + 1 < n:
                for i in range(m + 1):
                    spow[i] = spow[i].pow(p)
                    ppow[i] = ppow[i].pow(p)
                    npow[i] = npow[i].pow(p)


def universal_polys(p: int, n: int) -> WittPolyCache:
    """Solve the ghost equations for the sum/product/negation families.

    Every stage divides exactly by p^m; a remainder would falsify the
    integrality of the Witt polynomials and raises ArithmeticError.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    cache = WittPolyCache(p, n)
    cache.ghost = ghost_polys(p, n)
    gx = ghost_polys(p, n, nvars=2 * n, offset=0)
    gy = ghost_polys(p, n, nvars=2 * n, offset=n)
    gneg = ghost_polys(p, n)

    spow: list[MultiPoly] = []  # spow[i] = S_i^(p^(m-i)) at the start of round m
    ppow: list[MultiPoly] = []
    npow: list[MultiPoly] = []
    for m in range(n):
        for i in range(m):
            spow[i] = spow[i].pow(p)
            ppow[i] = ppow[i].pow(p)
            npow[i] = npow[i].pow(p)
        rhs_s = gx[m] + gy[m]
        rhs_p = gx[m] * gy[m]
        rhs_n = -gneg[m]
        for i in range(m):
            rhs_s = rhs_s - spow[i].scale(p**i)
            rhs_p = rhs_p - ppow[i].scale(p**i)
            rhs_n = rhs_n - npow[i].scale(p**i)
        cache.sum.append(rhs_s.exact_div(p**m))
        cache.prod.append(rhs_p.exact_div(p**m))
        cache.neg.append(rhs_n.exact_div(p**m))
        spow.append(cache.sum[m].copy())
        ppow.append(cache.prod[m].copy())
        npow.append(cache.neg[m].copy())
    return cache


def carry_polys(p: int, n: int) -> list[MultiPoly]:
    """Two-variable carry family t_m: the coordinates of tau(X) + tau(Y).

    Solved from the specialized ghost recursion
    p^m t_m = X^(p^m) + Y^(p^m) - sum_{i<m} p^i t_i^(p^(m-i)); all divisions
    exact.  t_m has at most p^m + 1 terms.
    """
    ts: list[MultiPoly] = []
    tpow: list[MultiPoly] = []
    for m in range(n):
        for i in range(m):
            tpow[i] = tpow[i].pow(p)
        rhs = MultiPoly.var(2, 0, p**m) + MultiPoly.var(2, 1, p**m)
        for i in range(m):
            rhs = rhs - tpow[i].scale(p**i)
        ts.append(rhs.exact_div(p**m))
        tpow.append(ts[m].copy())
    return ts


# ---------------------------------------------------------------------------
# cache files


def cache_filename(p: int, n: int) -> str:
    return f"witt_polys_p{p}_n{n}.txt"


def save_cache(cache: WittPolyCache, directory: str) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, cache_filename(cache.p, cache.n))
    with open(path, "w") as fh:
        fh.write("\n".join(cache.render_lines()) + "\n")
    return path


def load_cache(p: int, n: int, directory: str) -> WittPolyCache:
    path = os.path.join(directory, cache_filename(p, n))
    with open(path) as fh:
        return WittPolyCache.parse_lines(fh.readlines())


def validate_cache(p: int, n: int, directory: str) -> list[str]:
    """Recompute and compare line by line; returns mismatch descriptions."""
    path = os.path.join(directory, cache_filename(p, n))
    with open(path) as fh:
        stored = [line.rstrip("\n") for line in fh if line.strip()]
    fresh = universal_polys(p, n).render_lines()
    diffs = []
    for i in range(max(len(stored), len(fresh))):
        a = stored[i] if i < len(stored) else "<missing>"
        b = fresh[i] if i < len(fresh) else "<missing>"
        if a != b:
            diffs.append(f"line {i + 1}: cached {a!r} != recomputed {b!r}")
    return diffs


# ---------------------------------------------------------------------------
# the Witt ring itself

_poly_cache_memo: dict = {}
_carry_memo: dict = {}


def _get_poly_cache(p: int, n: int) -> WittPolyCache:
    key = (p, n)
    if key not in _poly_cache_memo:
        _poly_cache_memo[key] = universal_polys(p, n)
    return _poly_cache_memo[key]


def _get_carries(p: int, n: int):
    key = (p, n)
    if key not in _carry_memo:
        _carry_memo[key] = carry_polys(p, n)
    return _carry_memo[key]


class WittVector:
    """Element of W_n(R) in coordinate representation."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: "WittRing", coords):
        coords = tuple(coords)
        if len(coords) != ring.n:
            raise ValueError("coordinate vector has the wrong length")
        self.ring = ring
        self.coords = coords

    def __eq__(self, other):
        return (
            isinstance(other, WittVector)
            and self.ring is other.ring
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __add__(self, other):
        return self.ring.add(self, other)

    def __mul__(self, other):
        return self.ring.mul(self, other)

    def __neg__(self):
        return self.ring.neg(self)

    def __sub__(self, other):
        return self.ring.add(self, self.ring.neg(other))

    def __repr__(self):
        return f"W{self.coords}"


class WittRing:
    """W_n(R) for a finite perfect F_p-algebra R.

    engine='polys' evaluates the cached universal polynomials coordinatewise;
    engine='digits' runs multiplicative-lift long arithmetic.  'auto' picks
    polys within POLY_LEVEL_CAP and digits beyond.
    """

    def __init__(self, R: PerfectRing, n: int, engine: str = "auto"):
        if not isinstance(R, PerfectRing):
            raise TypeError("WittRing requires a PerfectRing carrier")
        if n < 1:
            raise ValueError("truncation length must be >= 1")
        self.R = R
        self.p = R.p
        self.n = n
        if engine == "auto":
            engine = "polys" if n <= POLY_LEVEL_CAP.get(self.p, 4) else "digits"
        if engine not in ("polys", "digits"):
            raise ValueError(f"unknown engine {engine!r}")
        self.engine = engine
        if engine == "polys":
            self.cache = _get_poly_cache(self.p, n)
        self.carries = _get_carries(self.p, n)
        # carry terms with coefficients reduced mod p (they act through F_p);
        # terms divisible by p vanish and are dropped up front
        self._carry_terms = []
        for t in self.carries:
            reduced = [
                (e[0], e[1], c % self.p)
                for e, c in t.sorted_terms()
                if c % self.p
            ]
            self._carry_terms.append(reduced)
        self.zero = WittVector(self, (R.zero,) * n)
        self.one = WittVector(self, (R.one,) + (R.zero,) * (n - 1))

    @property
    def order(self) -> int:
        return self.R.order**self.n

    def __call__(self, coords) -> WittVector:
        return WittVector(self, coords)

    def elements(self):
        for coords in itertools.product(list(self.R.elements()), repeat=self.n):
            yield WittVector(self, coords)

    def random_element(self, rng: random.Random) -> WittVector:
        pool = list(self.R.elements())
        return WittVector(self, tuple(rng.choice(pool) for _ in range(self.n)))

    def teichmuller(self, r) -> WittVector:
        return WittVector(self, (r,) + (self.R.zero,) * (self.n - 1))

    # -- polynomial engine ------------------------------------------------

    def _eval_poly(self, poly: MultiPoly, point):
        R = self.R
        return poly.evaluate(point, R.add, R.mul, R.scalar, R.zero, R.one)

    def _polys_binop(self, family, x: WittVector, y: WittVector) -> WittVector:
        point = x.coords + y.coords
        return WittVector(self, tuple(self._eval_poly(f, point) for f in family))

    # -- digit engine ------------------------------------------------------

    def digits(self, x: WittVector) -> tuple:
        """Unique (a_0..a_{n-1}) with x = sum p^i tau(a_i): a_i = x_i^(p^-i)."""
        return tuple(
            self.R.inverse_frobenius_iter(c, i) for i, c in enumerate(x.coords)
        )

    def from_digits(self, ds) -> WittVector:
        ds = tuple(ds)
        if len(ds) != self.n:
            raise ValueError("digit vector has the wrong length")
        return WittVector(
            self, tuple(self.R.frobenius_iter(d, i) for i, d in enumerate(ds))
        )

    def _carry_digits(self, u, v, span: int) -> list:
        """Digits of tau(u) + tau(v), truncated to `span` columns.

        Shares incremental power tables of u and v across all carry
        polynomials; coordinate j is twisted back by j inverse Frobenius
        steps to yield the digit.
        """
        R = self.R
        pmax = self.p ** (span - 1)
        upow = [R.one]
        vpow = [R.one]
        for _ in range(pmax):
            upow.append(R.mul(upow[-1], u))
            vpow.append(R.mul(vpow[-1], v))
        out = []
        for j in range(span):
            acc = R.zero
            for e0, e1, c in self._carry_terms[j]:
                term = R.mul(upow[e0], vpow[e1])
                for _ in range(c - 1):
                    acc = R.add(acc, term)
                acc = R.add(acc, term)
            out.append(R.inverse_frobenius_iter(acc, j))
        return out

    def _resolve_columns(self, cols) -> tuple:
        """Collapse per-column multisets of Teichmuller digits via carries."""
        R, n = self.R, self.n
        out = []
        for i in range(n):
            col = cols[i]
            while len(col) > 1:
                u = col.pop()
                v = col.pop()
                ds = self._carry_digits(u, v, n - i)
                if ds[0] != R.zero:
                    col.append(ds[0])
                for j in range(1, n - i):
                    if ds[j] != R.zero:
                        cols[i + j].append(ds[j])
            out.append(col[0] if col else R.zero)
        return tuple(out)

    def _digits_add(self, dx, dy) -> tuple:
        R = self.R
        cols = [[] for _ in range(self.n)]
        for i in range(self.n):
            if dx[i] != R.zero:
                cols[i].append(dx[i])
            if dy[i] != R.zero:
                cols[i].append(dy[i])
        return self._resolve_columns(cols)

    def _digits_mul(self, dx, dy) -> tuple:
        R = self.R
        cols = [[] for _ in range(self.n)]
        for i, a in enumerate(dx):
            if a == R.zero:
                continue
            for j, b in enumerate(dy):
                if i + j >= self.n or b == R.zero:
                    continue
                ab = R.mul(a, b)
                if ab != R.zero:
                    cols[i + j].append(ab)
        return self._resolve_columns(cols)

    # -- public arithmetic --------------------------------------------------

    def _check_same_ring(self, x: WittVector, y: WittVector):
        if x.ring is not self or y.ring is not self:
            raise ValueError("operands from a different Witt ring")

    def add(self, x: WittVector, y: WittVector) -> WittVector:
        self._check_same_ring(x, y)
        if self.engine == "polys":
            return self._polys_binop(self.cache.sum, x, y)
        return self.from_digits(self._digits_add(self.digits(x), self.digits(y)))

    def mul(self, x: WittVector, y: WittVector) -> WittVector:
        self._check_same_ring(x, y)
        if self.engine == "polys":
            return self._polys_binop(self.cache.prod, x, y)
        return self.from_digits(self._digits_mul(self.digits(x), self.digits(y)))

    def neg(self, x: WittVector) -> WittVector:
        if x.ring is not self:
            raise ValueError("operand from a different Witt ring")
        if self.engine == "polys":
            coords = tuple(
                self._eval_poly(f, x.coords) for f in self.cache.neg
            )
            return WittVector(self, coords)
        # p^n = 0 in W_n(R), so -x = (p^n - 1) x; uses only additions
        return self.scalar_int(self.p**self.n - 1, x)

    def scalar_int(self, c: int, x: WittVector) -> WittVector:
        """c*x by double-and-add (c reduced mod p^n, the characteristic)."""
        c %= self.p**self.n
        acc = self.zero
        base = x
        while c:
            if c & 1:
                acc = self.add(acc, base)
            c >>= 1
            if c:
                base = self.add(base, base)
        return acc

    def from_int(self, c: int) -> WittVector:
        return self.scalar_int(c, self.one)

    def verschiebung(self, x: WittVector) -> WittVector:
        return WittVector(self, (self.R.zero,) + x.coords[: self.n - 1])

    def frobenius_witt(self, x: WittVector) -> WittVector:
        # coordinatewise p-power; correct precisely because R is perfect,
        # which the constructor enforces
        return WittVector(self, tuple(self.R.pow(c, self.p) for c in x.coords))

    def reduce_to(self, m: int, x: WittVector, target: "WittRing") -> WittVector:
        """Truncation W_n -> W_m (m <= n)."""
        if m > self.n or target.n != m:
            raise ValueError("bad truncation target")
        return WittVector(target, x.coords[:m])

    def __repr__(self):
        return f"W_{self.n}({self.R!r})[{self.engine}]"


def witt_add(x: WittVector, y: WittVector) -> WittVector:
    return x.ring.add(x, y)


def witt_mul(x: WittVector, y: WittVector) -> WittVector:
    return x.ring.mul(x, y)


def witt_neg(x: WittVector) -> WittVector:
    return x.ring.neg(x)


def teichmuller(R: PerfectRing, n: int, r) -> WittVector:
    return WittRing(R, n).teichmuller(r)


def verschiebung(x: WittVector) -> WittVector:
    return x.ring.verschiebung(x)


def frobenius_witt(x: WittVector) -> WittVector:
    return x.ring.frobenius_witt(x)


def digits(x: WittVector) -> tuple:
    return x.ring.digits(x)


def from_digits(ring: WittRing, ds) -> WittVector:
    return ring.from_digits(ds)


# ---------------------------------------------------------------------------
# the Galois ring oracle


class GaloisRingOracle:
    """Z/p^n[x]/(monic lift of the canonical modulus of F_{p^k}).

    A completely separate implementation of W_n(F_{p^k}): elements are
    coefficient tuples mod p^n, the Teichmuller table is found by iterating
    t -> t^(p^k) to its fixed point, and digit expansions are produced by
    repeated exact division by p.
    """

    def __init__(self, p: int, k: int, n: int):
        self.p, self.k, self.n = p, k, n
        self.q = p**n
        self.field = FiniteField(p, k)
        self.modulus = self.field.modulus  # lifted coefficientwise
        self.zero = (0,) * k
        self.one = tuple([1] + [0] * (k - 1))
        # reduction table mod p^n: x^(k+j) for j = 0..k-2
        red = []
        cur = [(-c) % self.q for c in self.modulus]
        red.append(tuple(cur))
        for _ in range(k - 2):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(k):
                    nxt[i] = (nxt[i] + top * ((-self.modulus[i]) % self.q)) % self.q
            cur = [x % self.q for x in nxt]
            red.append(tuple(cur))
        self._red = red
        self._teich = self._build_teichmuller()

    @property
    def order(self) -> int:
        return self.q**self.k

    def elements(self):
        return itertools.product(range(self.q), repeat=self.k)

    def add(self, a, b):
        return tuple((x + y) % self.q for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.q for x in a)

    def sub(self, a, b):
        return tuple((x - y) % self.q for x, y in zip(a, b))

    def scale(self, c, a):
        return tuple((c * x) % self.q for x in a)

    def mul(self, a, b):
        q, k = self.q, self.k
        conv = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = [c % q for c in conv[:k]]
        for j in range(k - 1):
            c = conv[k + j] % q
            if c:
                table = self._red[j]
                for i in range(k):
                    out[i] = (out[i] + c * table[i]) % q
        return tuple(out)

    def pow(self, a, e: int):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def residue(self, a) -> tuple:
        """Image in the residue field F_{p^k}."""
        return tuple(x % self.p for x in a)

    def _build_teichmuller(self) -> dict:
        table = {}
        step = self.p**self.k
        for a in self.field.elements():
            t = tuple(a)  # coefficientwise lift
            for _ in range(self.n + 2):
                nt = self.pow(t, step)
                if nt == t:
                    break
                t = nt
            else:
                raise ArithmeticError("Teichmuller iteration failed to stabilize")
            table[a] = t
        values = set(table.values())
        if len(values) != self.field.order:
            raise ArithmeticError("Teichmuller table is not injective")
        for a in table:
            for b in table:
                if self.mul(table[a], table[b]) != table[self.field.mul(a, b)]:
                    raise ArithmeticError("Teichmuller table not multiplicative")
        return table

    def teichmuller(self, a) -> tuple:
        return self._teich[tuple(a)]

    def from_digits(self, ds) -> tuple:
        acc = self.zero
        for i, d in enumerate(ds):
            acc = self.add(acc, self.scale(self.p**i, self._teich[tuple(d)]))
        return acc

    def digits(self, g) -> tuple:
        out = []
        cur = g
        for _ in range(self.n):
            d = self.residue(cur)
            out.append(d)
            diff = self.sub(cur, self._teich[d])
            if any(x % self.p for x in diff):
                raise ArithmeticError("digit stripping left a non-divisible residue")
            cur = tuple((x // self.p) % self.q for x in diff)
        return tuple(out)


def galois_ring_oracle(p: int, k: int, n: int) -> GaloisRingOracle:
    return GaloisRingOracle(p, k, n)


@dataclass
class OracleMatchReport:
    ok: bool
    mode: str  # "exhaustive" or "randomized"
    checked: int
    failure: str | None = None


def _field_transport(W: WittRing, O: GaloisRingOracle):
    def theta(x: WittVector):
        ds = W.digits(x)
        return O.from_digits([d[0] for d in ds])

    return theta


def oracle_match(
    R: PerfectRing,
    n: int,
    exhaustive_limit: int = 1 << 16,
    samples: int = 10_000,
    seed: int = 0,
    engine: str = "auto",
) -> OracleMatchReport:
    """Verify that digit transport W_n(F_{p^k}) -> Z/p^n[x]/(f~) is a ring
    isomorphism.

    Exhaustive mode checks injectivity plus additivity and multiplicativity
    against the Teichmuller generators for every element, which suffices for
    a full proof; randomized mode samples (x, y, z) triples with a fixed
    seed.
    """
    if len(R.factors) != 1:
        raise ValueError("oracle_match takes a single finite field")
    fld = R.factors[0]
    W = WittRing(R, n, engine=engine)
    O = GaloisRingOracle(fld.p, fld.k, n)
    theta = _field_transport(W, O)
    if theta(W.one) != O.one:
        return OracleMatchReport(False, "exhaustive", 0, "unit mismatch")
    gens = [W.teichmuller(r) for r in R.elements() if r != R.zero]

    if W.order <= exhaustive_limit:
        elems = list(W.elements())
        image = {}
        checked = 0
        for x in elems:
            tx = theta(x)
            if tx in image:
                return OracleMatchReport(
                    False, "exhaustive", checked, f"transport not injective at {x}"
                )
            image[tx] = x
        theta_of = {x: tx for tx, x in image.items()}
        tgens = [(g, theta_of[g]) for g in gens]
        for x in elems:
            tx = theta_of[x]
            for g, tg in tgens:
                if theta_of[W.add(x, g)] != O.add(tx, tg):
                    return OracleMatchReport(
                        False, "exhaustive", checked, f"additivity fails at {x}, {g}"
                    )
                if theta_of[W.mul(x, g)] != O.mul(tx, tg):
                    return OracleMatchReport(
                        False,
                        "exhaustive",
                        checked,
                        f"multiplicativity fails at {x}, {g}",
                    )
                checked += 1
        return OracleMatchReport(True, "exhaustive", checked)

    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        x = W.random_element(rng)
        y = W.random_element(rng)
        z = W.random_element(rng)
        for a, b in ((x, y), (y, z)):
            if theta(W.add(a, b)) != O.add(theta(a), theta(b)):
                return OracleMatchReport(
                    False, "randomized", checked, f"additivity fails at {a}, {b}"
                )
            if theta(W.mul(a, b)) != O.mul(theta(a), theta(b)):
                return OracleMatchReport(
                    False, "randomized", checked, f"multiplicativity fails at {a}, {b}"
                )
        checked += 1
    return OracleMatchReport(True, "randomized", checked)


# ---------------------------------------------------------------------------
# verified additive coordinates on W_n(R), through the oracle


_coords_memo: dict = {}


def get_witt_coords(R: PerfectRing, n: int) -> "WittCoords":
    key = (R, n)
    if key not in _coords_memo:
        _coords_memo[key] = WittCoords(R, n)
    return _coords_memo[key]


class WittCoords:
    """Exact additive/multiplicative coordinates for W_n(R).

    Transports each factor of R through its Galois ring; construction runs
    the full exhaustive oracle match per factor, so downstream linear
    algebra on the coordinates is backed by a complete proof at this size.
    """

    def __init__(self, R: PerfectRing, n: int, engine: str = "auto"):
        self.R = R
        self.n = n
        self.W = WittRing(R, n, engine=engine)
        self.oracles = []
        for f in R.factors:
            sub = PerfectRing([f])
            report = oracle_match(sub, n, engine=engine)
            if not report.ok:
                raise ArithmeticError(
                    f"oracle mismatch for {f!r} at level {n}: {report.failure}"
                )
            if report.mode != "exhaustive":
                raise ArithmeticError(
                    "WittCoords requires exhaustively verified transport"
                )
            self.oracles.append(GaloisRingOracle(f.p, f.k, n))
        self.dim = sum(f.k for f in R.factors)
        self.modulus = R.p**n

    def encode(self, x: WittVector) -> tuple:
        ds = self.W.digits(x)
        out = []
        for idx, O in enumerate(self.oracles):
            g = O.from_digits([d[idx] for d in ds])
            out.extend(g)
        return tuple(out)

    def decode(self, coords) -> WittVector:
        pos = 0
        factor_digits = []
        for f, O in zip(self.R.factors, self.oracles):
            comp = tuple(coords[pos : pos + f.k])
            pos += f.k
            factor_digits.append(O.digits(comp))
        ds = []
        for i in range(self.n):
            ds.append(tuple(factor_digits[t][i] for t in range(len(self.oracles))))
        return self.W.from_digits(ds)

    def as_finite_ring(self) -> FiniteRingModel:
        group = FinAbGroup.from_invariant_factors([self.modulus] * self.dim)
        basis_elts = []
        for i in range(self.dim):
            vec = [0] * self.dim
            vec[i] = 1
            basis_elts.append(self.decode(tuple(vec)))
        table = [
            [
                self.encode(self.W.mul(basis_elts[i], basis_elts[j]))
                for j in range(self.dim)
            ]
            for i in range(self.dim)
        ]
        fcr = FiniteCommutativeRing(group, table, self.encode(self.W.one))
        return FiniteRingModel(fcr, self.encode, self.decode)
