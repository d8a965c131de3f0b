"""Finite perfect F_p-algebras and finite commutative rings.

A finite perfect F_p-algebra is a finite product of finite fields; that
structural fact is baked into PerfectRing.  Finite commutative rings are
presented additively by a FinAbGroup with structure constants, which is the
common currency for homomorphism search, quotients, and the tilt.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .intlinalg import FinAbGroup, IntMatrix, cokernel


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, low degree first)


def _poly_mul_mod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_rem(a, b, p):
    """Remainder of a modulo monic b, over F_p."""
    a = [x % p for x in a]
    db = len(b) - 1
    while len(a) > db:
        lead = a[-1]
        if lead:
            for i in range(db + 1):
                a[len(a) - db - 1 + i] = (a[len(a) - db - 1 + i] - lead * b[i]) % p
        a.pop()
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(coeffs, p) -> bool:
    """Trial division by monic polynomials of degree <= deg/2."""
    k = len(coeffs) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            r = _poly_rem(list(coeffs), g, p)
            if len(r) == 1 and r[0] == 0:
                return False
    return True


def canonical_modulus(p: int, k: int) -> tuple:
    """Non-leading coefficients (c_0..c_{k-1}) of the canonical monic
    irreducible of degree k over F_p: the one of least value sum(c_i p^i)."""
    if k > 6:
        raise ValueError("irreducibility search capped at degree 6")
    if k == 1:
        return (0,)
    for m in range(p**k):
        c = []
        v = m
        for _ in range(k):
            c.append(v % p)
            v //= p
        if _is_irreducible(c + [1], p):
            return tuple(c)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class FiniteField:
    """F_{p^k} with the deterministic canonical modulus.

    Elements are coefficient tuples of length k over range(p), low degree
    first.
    """

    def __init__(self, p: int, k: int, modulus=None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.modulus = tuple(modulus) if modulus is not None else canonical_modulus(p, k)
        if len(self.modulus) != k:
            raise ValueError("modulus length must equal the degree")
        if not _is_irreducible(list(self.modulus) + [1], p):
            raise ValueError("modulus is not irreducible")
        # reduction table: x^(k+j) mod modulus for j = 0..k-2
        red = []
        cur = [(-c) % p for c in self.modulus]  # x^k
        red.append(tuple(cur))
        for _ in range(k - 2):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for i in range(k):
                    nxt[i] = (nxt[i] + top * ((-self.modulus[i]) % p)) % p
            cur = [x % p for x in nxt]
            red.append(tuple(cur))
        self._red = red
        self.zero = (0,) * k
        self.one = tuple([1] + [0] * (k - 1))
        # lookup tables keep the digit engine fast on desk-scale fields
        self._mul_table = None
        self._frob_table = None
        self._inv_frob_table = None
        if self.order <= 512:
            els = list(self.elements())
            self._mul_table = {
                (a, b): self._mul_generic(a, b) for a in els for b in els
            }
            self._frob_table = {a: self.pow(a, p) for a in els}
            self._inv_frob_table = {v: a for a, v in self._frob_table.items()}

    @property
    def order(self) -> int:
        return self.p**self.k

    def elements(self):
        return itertools.product(range(self.p), repeat=self.k)

    def from_int(self, c: int) -> tuple:
        return tuple([c % self.p] + [0] * (self.k - 1))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def _mul_generic(self, a, b):
        p, k = self.p, self.k
        conv = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = [c % p for c in conv[:k]]
        for j in range(k - 1):
            c = conv[k + j] % p
            if c:
                table = self._red[j]
                for i in range(k):
                    out[i] = (out[i] + c * table[i]) % p
        return tuple(out)

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[(a, b)]
        return self._mul_generic(a, b)

    def pow(self, a, e: int):
        if e == 0:
            return self.one
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inverse(self, a):
        if a == self.zero:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.order - 2)

    def frobenius(self, a):
        if self._frob_table is not None:
            return self._frob_table[a]
        return self.pow(a, self.p)

    def inverse_frobenius(self, a):
        if self._inv_frob_table is not None:
            return self._inv_frob_table[a]
        # on F_{p^k} the inverse of x -> x^p is the (k-1)-fold Frobenius
        return self.pow(a, self.p ** (self.k - 1))

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"F_{self.p}^{self.k}" if self.k > 1 else f"F_{self.p}"


class PerfectRing:
    """Finite product of finite fields over a common prime p.

    Elements are tuples with one field element per factor.
    """

    def __init__(self, factors):
        factors = list(factors)
        if not factors:
            raise ValueError("need at least one factor")
        p = factors[0].p
        if any(f.p != p for f in factors):
            raise ValueError("factors must share the prime")
        self.p = p
        self.factors = factors
        self.zero = tuple(f.zero for f in factors)
        self.one = tuple(f.one for f in factors)

    @classmethod
    def field(cls, p: int, k: int) -> "PerfectRing":
        return cls([FiniteField(p, k)])

    @property
    def order(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.order
        return out

    def elements(self):
        return itertools.product(*(list(f.elements()) for f in self.factors))

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def sub(self, a, b):
        return tuple(f.sub(x, y) for f, x, y in zip(self.factors, a, b))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def pow(self, a, e: int):
        return tuple(f.pow(x, e) for f, x in zip(self.factors, a))

    def frobenius_iter(self, a, i: int):
        """a^(p^i) by i applications of the componentwise Frobenius."""
        for _ in range(i):
            a = tuple(f.frobenius(x) for f, x in zip(self.factors, a))
        return a

    def inverse_frobenius_iter(self, a, i: int):
        for _ in range(i):
            a = tuple(f.inverse_frobenius(x) for f, x in zip(self.factors, a))
        return a

    def scalar(self, c: int, a):
        c %= self.p
        out = self.zero
        for _ in range(c):
            out = self.add(out, a)
        return out

    def from_int(self, c: int):
        return tuple(f.from_int(c) for f in self.factors)

    def is_perfect(self) -> bool:
        """Exhaustively confirm the p-power map is a bijection."""
        seen = set()
        for x in self.elements():
            seen.add(self.pow(x, self.p))
        return len(seen) == self.order

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "factors": [{"k": f.k, "modulus": list(f.modulus)} for f in self.factors],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "PerfectRing":
        return cls(
            [FiniteField(doc["p"], f["k"], f["modulus"]) for f in doc["factors"]]
        )

    def __eq__(self, other):
        return isinstance(other, PerfectRing) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash((self.p, tuple((f.k, f.modulus) for f in self.factors)))

    def __repr__(self):
        return " x ".join(map(repr, self.factors))

    def as_finite_ring(self) -> "FiniteRingModel":
        """Additive F_p-basis presentation as a FiniteCommutativeRing."""
        cached = getattr(self, "_model", None)
        if cached is not None:
            return cached
        dims = [f.k for f in self.factors]
        total = sum(dims)
        offsets = [sum(dims[:i]) for i in range(len(dims))]

        def encode(x):
            out = []
            for comp in x:
                out.extend(comp)
            return tuple(out)

        def decode(c):
            return tuple(
                tuple(c[offsets[i] : offsets[i] + dims[i]])
                for i in range(len(dims))
            )

        group = FinAbGroup.from_invariant_factors([self.p] * total)
        basis = []
        for i in range(total):
            vec = [0] * total
            vec[i] = 1
            basis.append(decode(tuple(vec)))
        table = [
            [encode(self.mul(basis[i], basis[j])) for j in range(total)]
            for i in range(total)
        ]
        fcr = FiniteCommutativeRing(group, table, encode(self.one))
        self._model = FiniteRingModel(fcr, encode, decode)
        return self._model


def frobenius(R: PerfectRing, x):
    """x^p in R."""
    return R.pow(x, R.p)


def inverse_frobenius(R: PerfectRing, x):
    """The unique y with y^p = x (R perfect)."""
    return tuple(f.inverse_frobenius(c) for f, c in zip(R.factors, x))


def is_p_divisible_monoid(M, p: int) -> bool:
    """True iff the p-power map on the finite commutative monoid M is onto.

    M only needs `size` and `mul_idx(i, j)` (index-level multiplication).
    """
    image = set()
    for i in range(M.size):
        acc = i
        for _ in range(p - 1):
            acc = M.mul_idx(acc, i)
        image.add(acc)
    return len(image) == M.size


class FiniteCommutativeRing:
    """Finite commutative unital ring presented on additive generators.

    `table[i][j]` is the product of the i-th and j-th generator, as a group
    element; multiplication of arbitrary elements is the bilinear extension.
    """

    def __init__(self, group: FinAbGroup, table, unit, check: bool = True):
        self.group = group
        self.table = tuple(tuple(group.reduce(e) for e in row) for row in table)
        self.one = group.reduce(unit)
        self.zero = group.zero()
        if check:
            self._check_axioms()

    def _check_axioms(self):
        g = self.group
        k = g.rank
        ds = g.invariant_factors
        # multiplication must kill the additive relations
        for i in range(k):
            for j in range(k):
                if ds[i] and g.scale(ds[i], self.table[i][j]) != g.zero():
                    raise ValueError("multiplication does not respect relations")
                if self.table[i][j] != self.table[j][i]:
                    raise ValueError("structure constants are not symmetric")
        basis = [
            tuple(1 if t == i else 0 for t in range(k)) for i in range(k)
        ]
        for i in range(k):
            if self.mul(self.one, basis[i]) != g.reduce(basis[i]):
                raise ValueError("unit law fails")
            for j in range(k):
                for t in range(k):
                    lhs = self.mul(self.mul(basis[i], basis[j]), basis[t])
                    rhs = self.mul(basis[i], self.mul(basis[j], basis[t]))
                    if lhs != rhs:
                        raise ValueError("associativity fails on generators")

    @property
    def order(self) -> int:
        return self.group.order()

    def elements(self):
        return self.group.elements()

    def add(self, a, b):
        return self.group.add(a, b)

    def neg(self, a):
        return self.group.neg(a)

    def sub(self, a, b):
        return self.group.add(a, self.group.neg(b))

    def scale(self, c: int, a):
        return self.group.scale(c, a)

    def mul(self, a, b):
        g = self.group
        out = [0] * g.rank
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                c = x * y
                tij = self.table[i][j]
                for t, v in enumerate(tij):
                    out[t] += c * v
        return g.reduce(tuple(out))

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

    def from_int(self, c: int):
        return self.scale(c, self.one)

    def char_exponent(self, p: int) -> int:
        """Least k with p^k * 1 == 0, or raise if none exists."""
        x = self.one
        for k in range(0, 64):
            if x == self.zero:
                return k
            x = self.scale(p, x)
        raise ValueError("ring is not p-power torsion")

    def is_p_power_torsion(self, p: int) -> bool:
        try:
            self.char_exponent(p)
        except ValueError:
            return False
        return all(
            d == 1 or _is_p_power(d, p) for d in self.group.invariant_factors
        )

    def idempotents(self):
        return [e for e in self.elements() if self.mul(e, e) == e]

    def quotient(self, sub_generators):
        """Quotient by the subgroup generated by sub_generators (must be an
        ideal).  Returns (quotient_ring, projection)."""
        g = self.group
        k = g.rank
        rel_rows = [
            [g.invariant_factors[i] if j == i else 0 for j in range(k)]
            for i in range(k)
            if g.invariant_factors[i]
        ]
        rel_rows += [list(v) for v in sub_generators]
        newg = cokernel(IntMatrix(rel_rows), k) if rel_rows else cokernel(
            IntMatrix.zeros(1, k), k
        )

        def project(elt):
            return newg.reduce_ambient(elt)

        # ideal check: each sub generator times each basis element stays inside
        basis = [tuple(1 if t == i else 0 for t in range(k)) for i in range(k)]
        for v in sub_generators:
            for b in basis:
                if project(self.mul(g.reduce(v), b)) != newg.zero():
                    raise ValueError("subgroup is not an ideal")

        new_table = []
        for i in range(newg.rank):
            gi = g.reduce(newg.lift(tuple(1 if t == i else 0 for t in range(newg.rank))))
            row = []
            for j in range(newg.rank):
                gj = g.reduce(
                    newg.lift(tuple(1 if t == j else 0 for t in range(newg.rank)))
                )
                row.append(project(self.mul(gi, gj)))
            new_table.append(row)
        q = FiniteCommutativeRing(newg, new_table, project(self.one))
        return q, project

    def quotient_by_p(self, p: int):
        """(A/pA, projection)."""
        g = self.group
        gens = [
            g.scale(p, tuple(1 if t == i else 0 for t in range(g.rank)))
            for i in range(g.rank)
        ]
        return self.quotient(gens)

    def as_finite_ring(self) -> "FiniteRingModel":
        ident = lambda x: x
        return FiniteRingModel(self, ident, ident)

    def __repr__(self):
        return f"FiniteCommutativeRing{self.group.invariant_factors}"


def _is_p_power(d: int, p: int) -> bool:
    while d % p == 0:
        d //= p
    return d == 1


def zmod_ring(n: int) -> FiniteCommutativeRing:
    """Z/n as a FiniteCommutativeRing on a single generator."""
    group = FinAbGroup.from_invariant_factors([n])
    return FiniteCommutativeRing(group, [[(1 % n,)]], (1 % n,))


def truncated_polynomial_ring(p: int, e: int) -> FiniteCommutativeRing:
    """F_p[x]/(x^e), basis 1, x, ..., x^(e-1)."""
    group = FinAbGroup.from_invariant_factors([p] * e)
    table = []
    for i in range(e):
        row = []
        for j in range(e):
            vec = [0] * e
            if i + j < e:
                vec[i + j] = 1
            row.append(tuple(vec))
        table.append(row)
    unit = tuple([1] + [0] * (e - 1))
    return FiniteCommutativeRing(group, table, unit)


@dataclass(frozen=True)
class FiniteRingModel:
    """A FiniteCommutativeRing presentation of some ring, with translation
    maps between native elements and additive coordinates."""

    ring: FiniteCommutativeRing
    encode: object  # native element -> coordinate tuple
    decode: object  # coordinate tuple -> native element


class RingHom:
    """Unit-preserving ring homomorphism between FiniteCommutativeRings,
    stored as images of the additive generators of the source."""

    __slots__ = ("src", "dst", "gen_images")

    def __init__(self, src: FiniteCommutativeRing, dst: FiniteCommutativeRing, gen_images):
        self.src = src
        self.dst = dst
        self.gen_images = tuple(dst.group.reduce(v) for v in gen_images)

    def apply(self, x):
        out = [0] * self.dst.group.rank
        for c, img in zip(x, self.gen_images):
            if c:
                for t, v in enumerate(img):
                    out[t] += c * v
        return self.dst.group.reduce(tuple(out))

    def is_valid(self) -> bool:
        src, dst = self.src, self.dst
        g = src.group
        for d, img in zip(g.invariant_factors, self.gen_images):
            if d and dst.scale(d, img) != dst.zero:
                return False
        if self.apply(src.one) != dst.one:
            return False
        k = g.rank
        basis = [tuple(1 if t == i else 0 for t in range(k)) for i in range(k)]
        for i in range(k):
            for j in range(i, k):
                lhs = self.apply(src.table[i][j])
                rhs = dst.mul(self.apply(basis[i]), self.apply(basis[j]))
                if lhs != rhs:
                    return False
        return True

    def graph(self):
        """Full element mapping, as a sorted tuple of pairs."""
        return tuple(sorted((x, self.apply(x)) for x in self.src.elements()))

    def __eq__(self, other):
        return (
            isinstance(other, RingHom)
            and self.gen_images == other.gen_images
            and self.src is other.src
            and self.dst is other.dst
        )

    def __hash__(self):
        return hash(self.gen_images)

    def __repr__(self):
        return f"RingHom{self.gen_images}"


def ring_homs(A, B) -> list[RingHom]:
    """All unit-preserving ring homomorphisms A -> B (possibly empty).

    A and B may be FiniteCommutativeRings or anything exposing
    as_finite_ring(); the search assigns images to the additive generators
    of A, restricted to elements of compatible additive order.
    """
    src = A.as_finite_ring().ring
    dst = B.as_finite_ring().ring
    ds = src.group.invariant_factors
    if any(d == 0 for d in ds) or not dst.group.is_finite():
        raise ValueError("hom search requires finite rings")
    all_b = list(dst.elements())
    candidates = []
    for d in ds:
        candidates.append(
            [b for b in all_b if d == 0 or dst.scale(d, b) == dst.zero]
        )
    out = []
    for combo in itertools.product(*candidates):
        hom = RingHom(src, dst, combo)
        if hom.is_valid():
            out.append(hom)
    return out


@dataclass
class TiltResult:
    """Inverse-limit perfection of A/p, realized inside A/p.

    perfect is the canonical product-of-fields presentation; embed maps each
    perfect element to its image in the quotient ring A/p (that image set is
    the stable Frobenius image), and project maps A-elements onto A/p.
    """

    perfect: PerfectRing
    quotient: FiniteCommutativeRing
    embed: dict
    project: object

    def check_is_iso_onto_image(self) -> bool:
        R, B = self.perfect, self.quotient
        for x in R.elements():
            for y in R.elements():
                if self.embed[R.add(x, y)] != B.add(self.embed[x], self.embed[y]):
                    return False
                if self.embed[R.mul(x, y)] != B.mul(self.embed[x], self.embed[y]):
                    return False
        return self.embed[R.one] == B.one and len(set(self.embed.values())) == R.order


def tilt(A: FiniteCommutativeRing, p: int) -> TiltResult:
    """Inverse limit of A/p along x -> x^p, as a PerfectRing.

    For finite A the limit is the stable image S of the Frobenius on A/p
    (a surjective self-map of a finite set is a bijection on its eventual
    image), so coherent sequences biject with S.
    """
    B, project = A.quotient_by_p(p)
    current = set(B.elements())
    while True:
        nxt = {B.pow(x, p) for x in current}
        if nxt == current:
            break
        current = nxt
    stable = sorted(current)

    # split S into its primitive idempotent factors
    idems = [e for e in stable if B.mul(e, e) == e]
    nonzero = [e for e in idems if e != B.zero]
    prim = []
    for e in nonzero:
        if all(B.mul(e, f) in (B.zero, e) for f in idems):
            prim.append(e)
    prim.sort()

    factors = []
    factor_maps = []  # per factor: dict field-element -> element of S
    for e in prim:
        comp = sorted({B.mul(e, x) for x in stable})
        q = len(comp)
        k = 0
        n = q
        while n > 1:
            n //= p
            k += 1
        if p**k != q:
            raise ValueError("stable image factor is not a field")
        field = FiniteField(p, k)

        def embed_scalar(c, e=e):
            return B.scale(c % p, e)

        if k == 1:
            fmap = {field.from_int(c): embed_scalar(c) for c in range(p)}
        else:
            # deterministic root of the canonical modulus inside the factor
            coeffs = list(field.modulus) + [1]
            root = None
            for alpha in comp:
                acc = B.zero
                power = e  # alpha^0 within the factor
                for c in coeffs:
                    acc = B.add(acc, B.scale(c % p, power))
                    power = B.mul(power, alpha)
                if acc == B.zero:
                    root = alpha
                    break
            if root is None:
                raise ValueError("no root of the canonical modulus in factor")
            fmap = {}
            for vec in field.elements():
                acc = B.zero
                power = e
                for c in vec:
                    acc = B.add(acc, B.scale(c, power))
                    power = B.mul(power, root)
                fmap[vec] = acc
        factors.append(field)
        factor_maps.append(fmap)

    perfect = PerfectRing(factors)
    embed = {}
    for x in perfect.elements():
        acc = B.zero
        for comp_val, fmap in zip(x, factor_maps):
            acc = B.add(acc, fmap[comp_val])
        embed[x] = acc
    result = TiltResult(perfect, B, embed, project)
    if not result.check_is_iso_onto_image():
        raise ValueError("tilt embedding failed verification")
    if set(embed.values()) != set(stable):
        raise ValueError("tilt does not exhaust the stable Frobenius image")
    return result
