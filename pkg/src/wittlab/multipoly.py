"""Sparse multivariate polynomials over Z with exact arithmetic.

Terms map exponent tuples to nonzero arbitrary-precision integer
coefficients.  Term order for serialization is graded lexicographic
(total degree first, then the exponent tuple), which makes the rendered
form canonical and bit-stable across runs.
"""
from __future__ import annotations

from math import comb


class MultiPoly:
    """Polynomial in a fixed number of variables, stored sparsely."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms: dict[tuple, int] = {}
        if terms:
            for exps, c in terms.items() if isinstance(terms, dict) else terms:
                if c:
                    self.terms[tuple(exps)] = self.terms.get(tuple(exps), 0) + c
            self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c: int) -> "MultiPoly":
        p = cls(nvars)
        if c:
            p.terms[(0,) * nvars] = c
        return p

    @classmethod
    def var(cls, nvars: int, i: int, exp: int = 1, coeff: int = 1) -> "MultiPoly":
        p = cls(nvars)
        if coeff:
            e = [0] * nvars
            e[i] = exp
            p.terms[tuple(e)] = coeff
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def copy(self) -> "MultiPoly":
        p = MultiPoly(self.nvars)
        p.terms = dict(self.terms)
        return p

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = self.copy()
        terms = out.terms
        for e, c in other.terms.items():
            nc = terms.get(e, 0) + c
            if nc:
                terms[e] = nc
            else:
                terms.pop(e, None)
        return out

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        out = self.copy()
        terms = out.terms
        for e, c in other.terms.items():
            nc = terms.get(e, 0) - c
            if nc:
                terms[e] = nc
            else:
                terms.pop(e, None)
        return out

    def __neg__(self) -> "MultiPoly":
        p = MultiPoly(self.nvars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def scale(self, c: int) -> "MultiPoly":
        p = MultiPoly(self.nvars)
        if c:
            p.terms = {e: c * v for e, v in self.terms.items()}
        return p

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out = MultiPoly(self.nvars)
        terms = out.terms
        # iterate the smaller factor outside for fewer dict rebuilds
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                nc = terms.get(e, 0) + ca * cb
                if nc:
                    terms[e] = nc
                else:
                    del terms[e]
        return out

    def pow(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div(self, c: int) -> "MultiPoly":
        """Divide every coefficient by c, failing hard on non-exactness."""
        out = MultiPoly(self.nvars)
        for e, v in self.terms.items():
            q, r = divmod(v, c)
            if r:
                raise ArithmeticError(
                    f"non-exact division of coefficient {v} by {c}"
                )
            out.terms[e] = q
        return out

    def substitute(self, values: list["MultiPoly"]) -> "MultiPoly":
        """Substitute values[i] (polys over the target variable set) for X_i."""
        nv = values[0].nvars if values else self.nvars
        out = MultiPoly.zero(nv)
        for e, c in self.terms.items():
            term = MultiPoly.const(nv, c)
            for i, exp in enumerate(e):
                if exp:
                    term = term * values[i].pow(exp)
            out = out + term
        return out

    def evaluate(self, point, add, mul, scalar, zero, one):
        """Evaluate at a point of an arbitrary commutative ring.

        add/mul are binary ring operations, scalar(c, x) is the action of an
        integer, zero/one the ring constants.  Exponents use square-multiply.
        """
        acc = zero
        pow_cache: dict[tuple[int, int], object] = {}

        def power(i, e):
            key = (i, e)
            hit = pow_cache.get(key)
            if hit is not None:
                return hit
            if e == 1:
                val = point[i]
            else:
                half = power(i, e // 2)
                val = mul(half, half)
                if e & 1:
                    val = mul(val, point[i])
            pow_cache[key] = val
            return val

        for e, c in self.terms.items():
            term = one
            for i, exp in enumerate(e):
                if exp:
                    term = mul(term, power(i, exp))
            acc = add(acc, scalar(c, term))
        return acc

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self):
        """Terms in ascending graded-lex order (canonical)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def render(self) -> str:
        """Canonical one-line form: `e0,e1,... coeff ; ...` in graded-lex order."""
        chunks = [
            ",".join(map(str, e)) + " " + str(c) for e, c in self.sorted_terms()
        ]
        return " ; ".join(chunks) if chunks else "0"

    @classmethod
    def parse(cls, nvars: int, text: str) -> "MultiPoly":
        text = text.strip()
        p = cls(nvars)
        if text == "0":
            return p
        for chunk in text.split(";"):
            epart, cpart = chunk.strip().split(" ")
            e = tuple(int(x) for x in epart.split(","))
            if len(e) != nvars:
                raise ValueError("exponent vector has the wrong length")
            p.terms[e] = int(cpart)
        return p

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.render()!r})"


def binomial_power(nvars: int, i: int, j: int, k: int) -> MultiPoly:
    """(X_i + X_j)^k expanded directly by binomial coefficients."""
    p = MultiPoly(nvars)
    for t in range(k + 1):
        e = [0] * nvars
        e[i] = k - t
        e[j] = t
        p.terms[tuple(e)] = comb(k, t)
    return p
