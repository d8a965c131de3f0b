"""Integral monoid algebras Z[M], augmentation ideals, and finite quotients.

The augmentation sends each monoid basis element to its image in a finite
perfect F_p-algebra R; its kernel I is an integer lattice of finite p-power
index, and the descending chain of ideal powers I^n gives the tower of
finite rings Z[M]/I^n whose limit the Witt comparison is about.
"""
from __future__ import annotations

import itertools

from .fplinalg import left_nullspace_fp, rank_fp
from .intlinalg import FinAbGroup, GroupHom, IntMatrix, Lattice, cokernel, lattice_product
from .perfect import FiniteCommutativeRing, FiniteRingModel, PerfectRing


class FiniteCommMonoid:
    """Finite commutative monoid with an explicit multiplication table."""

    def __init__(self, elements, table, unit_index: int):
        self.elements = list(elements)
        self.table = tuple(tuple(row) for row in table)
        self.unit = unit_index
        self.size = len(self.elements)
        self._check()

    def _check(self):
        n = self.size
        t = self.table
        for i in range(n):
            if t[self.unit][i] != i or t[i][self.unit] != i:
                raise ValueError("unit law fails")
            for j in range(n):
                if t[i][j] != t[j][i]:
                    raise ValueError("monoid is not commutative")
                for k in range(n):
                    if t[t[i][j]][k] != t[i][t[j][k]]:
                        raise ValueError("monoid is not associative")

    def mul_idx(self, i: int, j: int) -> int:
        return self.table[i][j]

    @classmethod
    def multiplicative(cls, R: PerfectRing) -> "FiniteCommMonoid":
        """(R, *) as an abstract monoid; element order is R's enumeration."""
        els = list(R.elements())
        index = {e: i for i, e in enumerate(els)}
        table = [[index[R.mul(a, b)] for b in els] for a in els]
        return cls(els, table, index[R.one])

    def __repr__(self):
        return f"FiniteCommMonoid(size {self.size})"


class MonoidAlgebra:
    """Z[M]: integer vectors indexed by monoid elements."""

    def __init__(self, monoid: FiniteCommMonoid):
        self.monoid = monoid
        self.rank = monoid.size

    def basis_vector(self, i: int) -> tuple:
        return tuple(1 if t == i else 0 for t in range(self.rank))

    @property
    def one(self) -> tuple:
        return self.basis_vector(self.monoid.unit)

    def mul(self, x, y) -> tuple:
        out = [0] * self.rank
        t = self.monoid.table
        for i, xi in enumerate(x):
            if not xi:
                continue
            ti = t[i]
            for j, yj in enumerate(y):
                if yj:
                    out[ti[j]] += xi * yj
        return tuple(out)

    def structure_constants(self):
        """Tensor S[i][j] = basis vector of the product, for lattice_product."""
        return [
            [self.basis_vector(self.monoid.table[i][j]) for j in range(self.rank)]
            for i in range(self.rank)
        ]

    def __repr__(self):
        return f"Z[M] (rank {self.rank})"


class AugmentationIdeal:
    """Kernel of the additive extension Z[M] -> R of a monoid map."""

    def __init__(self, monoid, algebra, target, phi, aug_matrix, kernel):
        self.monoid = monoid
        self.algebra = algebra
        self.target = target
        self.phi = phi  # list: monoid index -> element of R
        self.aug_matrix = aug_matrix  # rows: F_p coordinates of phi[i]
        self.kernel = kernel  # Lattice

    def augment(self, v):
        """Image of an ambient vector in R."""
        R = self.target
        acc = R.zero
        for c, i in zip(v, range(len(v))):
            if c:
                acc = R.add(acc, R.scalar(c, self.phi[i]))
        return acc


def augmentation(M: FiniteCommMonoid, R: PerfectRing, phi) -> AugmentationIdeal:
    """Build I = ker(Z[M] -> R) for a multiplicative, unit-preserving phi
    whose additive extension is onto.

    phi maps monoid indices to R elements.  The kernel is the lift of the
    mod-p nullspace joined with p*Z[M], since R has characteristic p.
    """
    phi = [phi(i) if callable(phi) else phi[i] for i in range(M.size)]
    if phi[M.unit] != R.one:
        raise ValueError("phi does not preserve the unit")
    for i in range(M.size):
        for j in range(M.size):
            if phi[M.table[i][j]] != R.mul(phi[i], phi[j]):
                raise ValueError("phi is not multiplicative")
    model = R.as_finite_ring()
    rows = [list(model.encode(phi[i])) for i in range(M.size)]
    dim = len(rows[0])
    p = R.p
    if rank_fp(rows, p) != dim:
        raise ValueError("additive extension of phi is not surjective")
    null = left_nullspace_fp(rows, p)
    gens = [list(v) for v in null]
    gens += [
        [p if t == i else 0 for t in range(M.size)] for i in range(M.size)
    ]
    kernel = Lattice(M.size, gens)
    algebra = MonoidAlgebra(M)
    index = kernel.index()
    if index is None or index != p**dim:
        raise ValueError("kernel index is not |R|; augmentation is broken")
    return AugmentationIdeal(M, algebra, R, phi, IntMatrix(rows), kernel)


def ideal_powers(I: AugmentationIdeal, N: int) -> list[Lattice]:
    """I^1 contains I^2 contains ... I^N, by incremental lattice products."""
    if N < 1:
        raise ValueError("need N >= 1")
    sc = I.algebra.structure_constants()
    p = I.target.p
    m = I.algebra.rank
    powers = [I.kernel]
    for n in range(2, N + 1):
        nxt = lattice_product(powers[-1], I.kernel, sc)
        if not powers[-1].contains_lattice(nxt):
            raise ArithmeticError("ideal powers failed to descend")
        if not nxt.contains_lattice(Lattice.scaled(m, p**n)):
            raise ArithmeticError("p^n Z[M] escaped I^n")
        powers.append(nxt)
    return powers


class FiniteQuotientRing:
    """Z[M]/L for a finite-index ideal lattice L, with its ring structure."""

    def __init__(self, algebra: MonoidAlgebra, lattice: Lattice, level: int):
        m = algebra.rank
        if lattice.ambient_rank != m:
            raise ValueError("lattice does not live in the algebra")
        if lattice.rank != m:
            raise ValueError("lattice has infinite index")
        # ideal check: closure under multiplication by every basis element
        for g in lattice.generators.data:
            for j in range(m):
                if not lattice.contains(algebra.mul(g, algebra.basis_vector(j))):
                    raise ValueError("lattice is not an ideal")
        self.algebra = algebra
        self.lattice = lattice
        self.level = level
        self.group = cokernel(lattice.generators, m)
        k = self.group.rank
        table = []
        lifts = [
            self.group.lift(tuple(1 if t == i else 0 for t in range(k)))
            for i in range(k)
        ]
        for i in range(k):
            row = []
            for j in range(k):
                prod = algebra.mul(lifts[i], lifts[j])
                row.append(self.group.reduce_ambient(prod))
            table.append(row)
        self.ring = FiniteCommutativeRing(
            self.group, table, self.group.reduce_ambient(algebra.one)
        )

    @property
    def order(self) -> int:
        return self.group.order()

    def project(self, v) -> tuple:
        return self.group.reduce_ambient(v)

    def lift(self, cls_elt) -> tuple:
        return self.group.lift(cls_elt)

    def as_finite_ring(self) -> FiniteRingModel:
        ident = lambda x: x
        return FiniteRingModel(self.ring, ident, ident)

    def __repr__(self):
        return f"Z[M]/I^{self.level} ~ {self.group.invariant_factors}"


def quotient_ring(algebra: MonoidAlgebra, L: Lattice, n: int) -> FiniteQuotientRing:
    return FiniteQuotientRing(algebra, L, n)


def build_tower(I: AugmentationIdeal, cap: int) -> list[FiniteQuotientRing]:
    """The quotients Z[M]/I^n for n = 1..cap."""
    return [
        FiniteQuotientRing(I.algebra, L, n + 1)
        for n, L in enumerate(ideal_powers(I, cap))
    ]


def transition_maps(tower: list[FiniteQuotientRing]) -> list[GroupHom]:
    """Canonical surjections Z[M]/I^(n+1) -> Z[M]/I^n, verified to be ring
    maps and surjective."""
    out = []
    for big, small in zip(tower[1:], tower[:-1]):
        if not small.lattice.contains_lattice(big.lattice):
            raise ValueError("tower chain is not descending")
        k = big.group.rank
        rows = [
            small.project(big.lift(tuple(1 if t == i else 0 for t in range(k))))
            for i in range(k)
        ]
        hom = GroupHom(big.group, small.group, rows)
        # ring map: check products of generators and the unit
        basis = [tuple(1 if t == i else 0 for t in range(k)) for i in range(k)]
        for i in range(k):
            for j in range(k):
                lhs = hom.apply(big.ring.mul(basis[i], basis[j]))
                rhs = small.ring.mul(hom.apply(basis[i]), hom.apply(basis[j]))
                if lhs != rhs:
                    raise ArithmeticError("transition is not a ring map")
        if hom.apply(big.ring.one) != small.ring.one:
            raise ArithmeticError("transition does not preserve the unit")
        # surjectivity: images of generators plus the target relations span
        rel = [
            [
                small.group.invariant_factors[i] if t == i else 0
                for t in range(small.group.rank)
            ]
            for i in range(small.group.rank)
            if small.group.invariant_factors[i]
        ]
        stacked = [list(r) for r in hom.matrix] + rel
        if cokernel(IntMatrix(stacked), small.group.rank).order() != 1:
            raise ArithmeticError("transition map is not surjective")
        out.append(hom)
    return out


def tower_report(I: AugmentationIdeal, cap: int) -> dict:
    """JSON-ready summary: per level, invariant factors and the order."""
    tower = build_tower(I, cap)
    return {
        "monoid_size": I.monoid.size,
        "ring": I.target.to_json(),
        "levels": [
            {
                "n": q.level,
                "invariant_factors": list(q.group.invariant_factors),
                "order": q.order,
            }
            for q in tower
        ],
    }
