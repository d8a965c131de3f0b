"""Completeness conditions for finite modules over Z[R].

A module here is a finite abelian p-group with an action of the
multiplicative monoid of R by endomorphisms.  The four finite-level
conditions (I-adic completeness, p-divisibility of the additivity defect,
additivity mod p and on the p-torsion, and extension of the action to the
truncated Witt ring) are each decided exactly, and the classifier flags any
disagreement as a falsification witness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .intlinalg import FinAbGroup, GroupHom, IntMatrix, Lattice, all_endomorphisms, cokernel, hom_divisible_by_p, kernel_basis
from .monoidalg import FiniteCommMonoid, augmentation
from .perfect import PerfectRing
from .witt import get_witt_coords


class ModuleWithAction:
    """Finite abelian p-group with a multiplicative action of R."""

    def __init__(self, R: PerfectRing, group: FinAbGroup, rho: dict, check: bool = True):
        self.R = R
        self.group = group
        self.rho = dict(rho)
        if check:
            self._check()

    def _check(self):
        R = self.R
        els = list(R.elements())
        if set(self.rho) != set(els):
            raise ValueError("action must be defined on every element of R")
        ident = GroupHom.identity(self.group)
        if self.rho[R.one] != ident:
            raise ValueError("unit of R must act as the identity")
        for r in els:
            for s in els:
                if self.rho[R.mul(r, s)] != self.rho[r].compose(self.rho[s]):
                    raise ValueError("action is not multiplicative")

    def p_exponent(self) -> int:
        """Least k >= 1 with p^k * M = 0."""
        p = self.R.p
        k = 1
        for d in self.group.invariant_factors:
            e = 0
            while d % p == 0:
                d //= p
                e += 1
            if d != 1:
                raise ValueError("module is not a p-group")
            k = max(k, e)
        return k

    def endo_of_algebra_vector(self, v, element_order) -> GroupHom:
        """Action of sum_i v_i [m_i] in Z[R], for monoid elements listed in
        element_order."""
        acc = GroupHom.zero(self.group, self.group)
        for c, r in zip(v, element_order):
            if c:
                acc = acc + self.rho[r].scale(c)
        return acc

    def to_json(self) -> dict:
        els = list(self.R.elements())
        return {
            "ring": self.R.to_json(),
            "group": list(self.group.invariant_factors),
            "rho": [[list(row) for row in self.rho[r].matrix] for r in els],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ModuleWithAction":
        R = PerfectRing.from_json(doc["ring"])
        group = FinAbGroup.from_invariant_factors(doc["group"])
        els = list(R.elements())
        if len(doc["rho"]) != len(els):
            raise ValueError("rho must list one matrix per ring element")
        rho = {
            r: GroupHom(group, group, [tuple(row) for row in mat])
            for r, mat in zip(els, doc["rho"])
        }
        return cls(R, group, rho)

    def __repr__(self):
        return f"ModuleWithAction({self.group.invariant_factors} over {self.R!r})"


_aug_memo: dict = {}


def standard_augmentation(R: PerfectRing):
    key = R
    if key not in _aug_memo:
        M = FiniteCommMonoid.multiplicative(R)
        _aug_memo[key] = augmentation(M, R, lambda i: M.elements[i])
    return _aug_memo[key]


def _subgroup_lattice(group: FinAbGroup, gen_rows) -> Lattice:
    k = group.rank
    rel = [
        [group.invariant_factors[i] if t == i else 0 for t in range(k)]
        for i in range(k)
        if group.invariant_factors[i]
    ]
    return Lattice(k, [list(r) for r in gen_rows] + rel)


def check_I_complete(M: ModuleWithAction, I=None) -> bool:
    """Descending chain I*M >= I^2*M >= ... stabilizes at 0 iff complete.

    For finite M the inverse limit of M/I^n M is M/N with N the stable
    submodule, so completeness is exactly N = 0.
    """
    if I is None:
        I = standard_augmentation(M.R)
    group = M.group
    k = group.rank
    if k == 0:
        return True
    els = I.monoid.elements  # monoid elements are R elements for (R, *)
    current = _subgroup_lattice(group, IntMatrix.identity(k).data)
    zero_lattice = _subgroup_lattice(group, [])
    while True:
        new_rows = []
        for a in I.kernel.generators.data:
            endo = M.endo_of_algebra_vector(a, els)
            for v in current.generators.data:
                img = endo.apply(group.reduce(v))
                if any(img):
                    new_rows.append(list(img))
        nxt = _subgroup_lattice(group, new_rows)
        if nxt == current:
            break
        current = nxt
    return current == zero_lattice


def check_p_divisibility(M: ModuleWithAction) -> bool:
    """Every additivity defect rho_r + rho_s - rho_{r+s} divisible by p."""
    R = M.R
    for r in R.elements():
        for s in R.elements():
            defect = M.rho[r] + M.rho[s] - M.rho[R.add(r, s)]
            if hom_divisible_by_p(defect, R.p) is None:
                return False
    return True


def _mod_p_action(M: ModuleWithAction):
    """Induced endomorphisms on M/pM and on M[p] (both (Z/p)^k)."""
    p = M.R.p
    ds = M.group.invariant_factors
    k = M.group.rank
    quot = FinAbGroup.from_invariant_factors([p] * k)
    mod_p = {}
    torsion = {}
    for r, endo in M.rho.items():
        mod_rows = [tuple(x % p for x in row) for row in endo.matrix]
        tor_rows = []
        for i, row in enumerate(endo.matrix):
            new_row = []
            for j, x in enumerate(row):
                c = ((ds[i] // p) * x) % ds[j]
                if c % (ds[j] // p):
                    raise ArithmeticError("action does not preserve p-torsion")
                new_row.append((c // (ds[j] // p)) % p)
            tor_rows.append(tuple(new_row))
        mod_p[r] = GroupHom(quot, quot, mod_rows, check=False)
        torsion[r] = GroupHom(quot, quot, tor_rows, check=False)
    return quot, mod_p, torsion


def check_mod_p_additivity(M: ModuleWithAction) -> bool:
    """The action is additive (with rho_0 = 0) on M/pM and on M[p]."""
    R = M.R
    if M.group.rank == 0:
        return True
    _, mod_p, torsion = _mod_p_action(M)
    for induced in (mod_p, torsion):
        if not induced[R.zero].is_zero():
            return False
        for r in R.elements():
            for s in R.elements():
                if induced[r] + induced[s] != induced[R.add(r, s)]:
                    return False
    return True


_witt_kernel_memo: dict = {}


def witt_kernel_lattice(R: PerfectRing, k: int) -> Lattice:
    """Kernel of the surjection Z[R] -> W_k(R), [r] -> tau(r), as a lattice."""
    key = (R, k)
    if key not in _witt_kernel_memo:
        coords = get_witt_coords(R, k)
        W = coords.W
        els = list(R.elements())
        m = len(els)
        pn = R.p**k
        rows = [list(coords.encode(W.teichmuller(r))) for r in els]
        stacked = IntMatrix(
            rows + [[pn if t == i else 0 for t in range(coords.dim)] for i in range(coords.dim)]
        )
        kb = kernel_basis(stacked)
        _witt_kernel_memo[key] = Lattice(m, [row[:m] for row in kb])
    return _witt_kernel_memo[key]


def check_witt_extension(M: ModuleWithAction, k: int | None = None):
    """True iff ker(Z[R] -> W_k(R)) annihilates M; on success returns the
    materialized W_k(R)-action as a dict WittVector -> GroupHom."""
    R = M.R
    if M.group.rank == 0:
        return True, {}
    if k is None:
        k = M.p_exponent()
    els = list(R.elements())
    K = witt_kernel_lattice(R, k)
    for a in K.generators.data:
        if not M.endo_of_algebra_vector(a, els).is_zero():
            return False, None
    # materialize: each Witt vector acts through any algebra preimage
    coords = get_witt_coords(R, k)
    W = coords.W
    idx = {r: i for i, r in enumerate(els)}
    action = {}
    for w in W.elements():
        v = [0] * len(els)
        for i, a in enumerate(W.digits(w)):
            v[idx[a]] += R.p**i
        action[w] = M.endo_of_algebra_vector(tuple(v), els)
    # the restriction along tau must recover rho exactly
    for r in els:
        if action[W.teichmuller(r)] != M.rho[r]:
            raise ArithmeticError("materialized action does not restrict to rho")
    return True, action


@dataclass
class ClassificationReport:
    verdicts: dict  # keys "2", "6", "7", "8"
    agreement: bool
    module: dict
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "verdicts": self.verdicts,
            "agreement": self.agreement,
            "module": self.module,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def classify(M: ModuleWithAction) -> ClassificationReport:
    verdicts = {
        "2": check_I_complete(M),
        "6": check_p_divisibility(M),
        "7": check_mod_p_additivity(M),
        "8": check_witt_extension(M)[0],
    }
    values = set(verdicts.values())
    agreement = len(values) == 1
    witness = None if agreement else M.to_json()
    return ClassificationReport(verdicts, agreement, M.to_json(), witness)


def _multiplicative_order(R: PerfectRing, x) -> int:
    acc = x
    for t in range(1, R.order + 1):
        if acc == R.one:
            return t
        acc = R.mul(acc, x)
    raise ValueError("element is not invertible")


def enumerate_actions(R: PerfectRing, G: FinAbGroup, cap: int = 1 << 17):
    """Every monoid homomorphism (R,*) -> (End(G), compose), once each.

    For a field F_q the monoid is generated by 0 and a primitive element g,
    subject to g^(q-1) = 1, e^2 = e, e*E = E*e = e; enumeration scans End(G)
    for the two constrained images.
    """
    if len(R.factors) != 1:
        raise ValueError("action enumeration implemented for fields")
    size = 1
    ds = G.invariant_factors
    for di in ds:
        for dj in ds:
            size *= gcd(di, dj)
    if size > cap:
        raise ValueError(f"|End(G)| = {size} exceeds the cap {cap}")
    endos = list(all_endomorphisms(G))
    ident = GroupHom.identity(G)
    q = R.order
    idempotents = [e for e in endos if e.compose(e) == e]
    if q == 2:
        for e in idempotents:
            yield ModuleWithAction(R, G, {R.zero: e, R.one: ident})
        return
    g = next(
        x
        for x in R.elements()
        if x != R.zero and _multiplicative_order(R, x) == q - 1
    )
    unit_images = []
    for E in endos:
        acc = E
        for _ in range(q - 2):
            acc = acc.compose(E)
        if acc == ident:
            unit_images.append(E)
    for e in idempotents:
        for E in unit_images:
            if e.compose(E) != e or E.compose(e) != e:
                continue
            rho = {R.zero: e}
            power = ident
            elt = R.one
            for _ in range(q - 1):
                rho[elt] = power
                elt = R.mul(elt, g)
                power = power.compose(E)
            yield ModuleWithAction(R, G, rho)


def abelian_p_groups(p: int, max_order: int):
    """All finite abelian p-groups of order <= max_order (nontrivial)."""
    out = []
    e = 1
    while p**e <= max_order:
        for part in _partitions(e):
            out.append(
                FinAbGroup.from_invariant_factors([p**t for t in sorted(part)])
            )
        e += 1
    return out


def _partitions(n: int, cap: int | None = None):
    if n == 0:
        yield []
        return
    cap = cap if cap is not None else n
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield [first] + rest


def equivalence_suite(R: PerfectRing, max_order: int = 16, cap: int = 1 << 17):
    """Classify every enumerated action on every p-group up to max_order.

    Yields (group, report); any disagreement is the falsification the
    classifier exists to surface.
    """
    for G in abelian_p_groups(R.p, max_order):
        for M in enumerate_actions(R, G, cap=cap):
            yield G, classify(M)
