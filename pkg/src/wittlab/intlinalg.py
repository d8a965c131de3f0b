"""Exact integer linear algebra.

Smith and Hermite normal forms, finitely presented abelian groups in
invariant-factor form, integer lattices with a canonical basis, and
divisibility questions for homomorphisms of finite abelian groups.

All arithmetic is over arbitrary-precision Python integers; nothing in this
module (or anywhere downstream of it) touches floating point.
"""
from __future__ import annotations

import itertools
from math import gcd, prod


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b == g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def modinv(a: int, m: int) -> int:
    g, x, _ = xgcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return x % m


class IntMatrix:
    """Immutable dense integer matrix, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if data:
            cols = len(data[0])
            if any(len(row) != cols for row in data):
                raise ValueError("ragged rows")
        else:
            cols = 0
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, *_):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "IntMatrix":
        return cls([[0] * c for _ in range(r)])

    @classmethod
    def diagonal(cls, entries) -> "IntMatrix":
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.data]})"

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = list(zip(*other.data)) if other.data else []
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.data]
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def __neg__(self):
        return IntMatrix([[-a for a in row] for row in self.data])

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in row] for row in self.data])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.data)) if self.data else [])

    def apply_row(self, v) -> tuple:
        """Row vector v (length rows) times this matrix."""
        if len(v) != self.rows:
            raise ValueError("dimension mismatch")
        out = [0] * self.cols
        for c, row in zip(v, self.data):
            if c:
                for j, a in enumerate(row):
                    out[j] += c * a
        return tuple(out)


def _snf_inplace(a_rows: list[list[int]], m: int, n: int):
    """Run the SNF reduction, returning (U, D, V, Vinv) as row-lists.

    U*A*V = D with U, V unimodular and D diagonal with a divisibility chain.
    Vinv is maintained alongside V so callers get the inverse for free.
    Pivots are chosen as the smallest absolute nonzero entry of the working
    submatrix to limit coefficient growth.
    """
    D = [list(r) for r in a_rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_add(i, j, c):  # row_i += c*row_j
        Di, Dj = D[i], D[j]
        for k in range(n):
            Di[k] += c * Dj[k]
        Ui, Uj = U[i], U[j]
        for k in range(m):
            Ui[k] += c * Uj[k]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def row_neg(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]

    def col_add(j, i, c):  # col_j += c*col_i ; Vinv row_i -= c*row_j
        for r in range(m):
            D[r][j] += c * D[r][i]
        for r in range(n):
            V[r][j] += c * V[r][i]
        Vi, Vj = Vinv[i], Vinv[j]
        for k in range(n):
            Vi[k] -= c * Vj[k]

    def col_swap(i, j):
        for r in range(m):
            D[r][i], D[r][j] = D[r][j], D[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    t = 0
    limit = min(m, n)
    while t < limit:
        # locate smallest-absolute-value nonzero entry in the submatrix
        best = None
        for i in range(t, m):
            Di = D[i]
            for j in range(t, n):
                x = Di[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)

        while True:
            # clear column t below the pivot
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    if q:
                        row_add(i, t, -q)
                    if D[i][t]:
                        row_swap(i, t)
                        dirty = True
            if dirty:
                continue
            # clear row t right of the pivot
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    if q:
                        col_add(j, t, -q)
                    if D[t][j]:
                        col_swap(j, t)
                        dirty = True
            if dirty:
                continue
            # enforce pivot | entry for the rest of the submatrix
            piv = D[t][t]
            offender = None
            for i in range(t + 1, m):
                Di = D[i]
                for j in range(t + 1, n):
                    if Di[j] % piv:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if D[t][t] < 0:
            row_neg(t)
        t += 1
    return U, D, V, Vinv


def smith_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """U, D, V with U*A*V = D in Smith normal form (exact arithmetic)."""
    if A.rows == 0 or A.cols == 0:
        raise ValueError("smith_normal_form requires a nonempty matrix")
    U, D, V, _ = _snf_inplace(A.data, A.rows, A.cols)
    return IntMatrix(U), IntMatrix(D), IntMatrix(V)


def kernel_basis(A: IntMatrix) -> list[tuple]:
    """Basis rows of the left kernel {x in Z^rows : x*A = 0}."""
    U, D, _, _ = _snf_inplace(A.data, A.rows, A.cols)
    out = []
    for i in range(A.rows):
        if i >= A.cols or D[i][i] == 0:
            out.append(tuple(U[i]))
    return out


class FinAbGroup:
    """Finitely presented abelian group in invariant-factor coordinates.

    invariant_factors lists d_1 | d_2 | ... with each d_i >= 2, followed by
    0s for free factors.  basis_change maps ambient row vectors to full
    normal-form coordinates; elements of the group are tuples over the
    essential (non-trivial) coordinates.
    """

    __slots__ = (
        "ambient_rank",
        "moduli_full",
        "essential",
        "invariant_factors",
        "to_normal",
        "from_normal",
    )

    def __init__(self, ambient_rank, moduli_full, to_normal, from_normal):
        self.ambient_rank = ambient_rank
        self.moduli_full = tuple(moduli_full)
        self.essential = tuple(i for i, d in enumerate(self.moduli_full) if d != 1)
        self.invariant_factors = tuple(self.moduli_full[i] for i in self.essential)
        self.to_normal = to_normal
        self.from_normal = from_normal

    @classmethod
    def from_invariant_factors(cls, factors) -> "FinAbGroup":
        factors = [int(d) for d in factors]
        n = len(factors)
        eye = IntMatrix.identity(n)
        return cls(n, factors, eye, eye)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def order(self):
        """Group order, or None when a free factor makes it infinite."""
        if any(d == 0 for d in self.invariant_factors):
            return None
        return prod(self.invariant_factors) if self.invariant_factors else 1

    def is_finite(self) -> bool:
        return all(d != 0 for d in self.invariant_factors)

    def _reduce_coord(self, x: int, d: int) -> int:
        return x % d if d else x

    def zero(self) -> tuple:
        return (0,) * self.rank

    def reduce(self, coords) -> tuple:
        """Canonicalize a tuple of normal-form coordinates."""
        return tuple(
            self._reduce_coord(x, d) for x, d in zip(coords, self.invariant_factors)
        )

    def reduce_ambient(self, v) -> tuple:
        """Class of an ambient vector, in essential coordinates."""
        full = self.to_normal.apply_row(v)
        return self.reduce(tuple(full[i] for i in self.essential))

    def lift(self, coords) -> tuple:
        """An ambient representative of a class; reduce(lift(c)) == c."""
        full = [0] * self.ambient_rank
        for pos, c in zip(self.essential, coords):
            full[pos] = c
        return self.from_normal.apply_row(full)

    def add(self, a, b) -> tuple:
        return self.reduce(tuple(x + y for x, y in zip(a, b)))

    def neg(self, a) -> tuple:
        return self.reduce(tuple(-x for x in a))

    def scale(self, c: int, a) -> tuple:
        return self.reduce(tuple(c * x for x in a))

    def elements(self):
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def element_order(self, a) -> int:
        if all(x == 0 for x in a):
            return 1
        # lcm of per-coordinate orders d_i / gcd(d_i, a_i)
        out = 1
        for x, d in zip(a, self.invariant_factors):
            if d == 0:
                if x:
                    raise ValueError("infinite order element")
                continue
            o = d // gcd(d, x)
            out = out * o // gcd(out, o)
        return out

    def __repr__(self):
        return f"FinAbGroup{self.invariant_factors}"


def cokernel(relations: IntMatrix, ambient_rank: int) -> FinAbGroup:
    """Quotient of Z^ambient_rank by the row span of `relations`."""
    if relations.cols not in (0, ambient_rank):
        raise ValueError("relation width does not match ambient rank")
    if relations.rows == 0 or ambient_rank == 0:
        eye = IntMatrix.identity(ambient_rank)
        return FinAbGroup(ambient_rank, [0] * ambient_rank, eye, eye)
    _, D, V, Vinv = _snf_inplace(relations.data, relations.rows, ambient_rank)
    moduli = [
        D[j][j] if j < min(relations.rows, ambient_rank) else 0
        for j in range(ambient_rank)
    ]
    return FinAbGroup(ambient_rank, moduli, IntMatrix(V), IntMatrix(Vinv))


def _hnf_insert(basis: list[list[int]], pivots: list[int], vec: list[int]):
    """Insert vec into an echelon basis (sorted by pivot column), via xgcd."""
    n = len(vec)
    j = 0
    while j < n:
        if vec[j] == 0:
            j += 1
            continue
        # find existing row with this pivot
        hit = None
        for idx, pj in enumerate(pivots):
            if pj == j:
                hit = idx
                break
            if pj > j:
                break
        if hit is None:
            pos = 0
            while pos < len(pivots) and pivots[pos] < j:
                pos += 1
            basis.insert(pos, vec)
            pivots.insert(pos, j)
            return
        row = basis[hit]
        a, b = row[j], vec[j]
        if b % a == 0:
            q = b // a
            for k in range(j, n):
                vec[k] -= q * row[k]
        else:
            g, x, y = xgcd(a, b)
            au, bu = a // g, b // g
            for k in range(j, n):
                rk, vk = row[k], vec[k]
                row[k] = x * rk + y * vk
                vec[k] = -bu * rk + au * vk
        # continue pushing the (now reduced) vec to the right


def hermite_normal_form(vectors, ambient_rank: int) -> IntMatrix:
    """Canonical row-style HNF basis of the lattice spanned by `vectors`.

    Rows are in echelon form with positive pivots and entries above each
    pivot reduced into [0, pivot); equal lattices yield equal matrices.
    """
    basis: list[list[int]] = []
    pivots: list[int] = []
    for v in vectors:
        v = list(v)
        if len(v) != ambient_rank:
            raise ValueError("vector length does not match ambient rank")
        if any(v):
            _hnf_insert(basis, pivots, v)
    # normalize pivot signs, then reduce entries above pivots; ascending
    # order matters: clearing with row i only perturbs columns >= its pivot,
    # which later (larger-pivot) rows then clean up
    for i, j in enumerate(pivots):
        if basis[i][j] < 0:
            basis[i] = [-x for x in basis[i]]
    for i in range(len(basis)):
        pj = pivots[i]
        piv = basis[i][pj]
        for k in range(i):
            q = basis[k][pj] // piv
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return IntMatrix(basis)


class Lattice:
    """Sublattice of Z^ambient_rank, held in Hermite normal form."""

    __slots__ = ("ambient_rank", "generators")

    def __init__(self, ambient_rank: int, generators):
        self.ambient_rank = ambient_rank
        if isinstance(generators, IntMatrix):
            generators = generators.data
        self.generators = hermite_normal_form(generators, ambient_rank)

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.identity(n).data)

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, [])

    @classmethod
    def scaled(cls, n: int, c: int) -> "Lattice":
        return cls(n, IntMatrix.identity(n).scale(c).data)

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.ambient_rank == other.ambient_rank
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.ambient_rank, self.generators))

    def __repr__(self):
        return f"Lattice(rank {self.ambient_rank}, {[list(r) for r in self.generators.data]})"

    @property
    def rank(self) -> int:
        return self.generators.rows

    def index(self):
        """Index in Z^n when full rank, else None."""
        if self.rank != self.ambient_rank:
            return None
        return prod(self.generators.data[i][i] for i in range(self.rank))

    def solve(self, v):
        """Coefficients of v over the HNF basis, or None if v is outside."""
        v = list(v)
        coeffs = []
        for row in self.generators.data:
            pj = next(j for j, x in enumerate(row) if x)
            if v[pj] % row[pj]:
                return None
            q = v[pj] // row[pj]
            coeffs.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return coeffs if not any(v) else None

    def contains(self, v) -> bool:
        return self.solve(v) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(row) for row in other.generators.data)

    def join(self, other: "Lattice") -> "Lattice":
        if self.ambient_rank != other.ambient_rank:
            raise ValueError("ambient rank mismatch")
        return Lattice(
            self.ambient_rank,
            list(self.generators.data) + list(other.generators.data),
        )


def lattice_product(L1: Lattice, L2: Lattice, structure_constants) -> Lattice:
    """Lattice generated by pairwise products of generators.

    structure_constants[i][j] is the ambient vector representing the product
    of the i-th and j-th ambient basis elements.
    """
    if L1.ambient_rank != L2.ambient_rank:
        raise ValueError("ambient rank mismatch")
    n = L1.ambient_rank
    prods = []
    for u in L1.generators.data:
        for v in L2.generators.data:
            w = [0] * n
            for i, ui in enumerate(u):
                if not ui:
                    continue
                for j, vj in enumerate(v):
                    if not vj:
                        continue
                    c = ui * vj
                    sij = structure_constants[i][j]
                    for k, s in enumerate(sij):
                        if s:
                            w[k] += c * s
            prods.append(w)
    return Lattice(n, prods)


class GroupHom:
    """Homomorphism between FinAbGroups, as an integer matrix on generators.

    Row i is the image of the i-th source generator, in the target's
    essential coordinates.  Well-definedness (respecting the source
    relations) is checked on construction.
    """

    __slots__ = ("src", "dst", "matrix")

    def __init__(self, src: FinAbGroup, dst: FinAbGroup, rows, check: bool = True):
        self.src = src
        self.dst = dst
        canon = tuple(dst.reduce(row) for row in rows)
        if len(canon) != src.rank:
            raise ValueError("wrong number of generator images")
        self.matrix = canon
        if check and not self._well_defined():
            raise ValueError("map does not respect the source relations")

    def _well_defined(self) -> bool:
        for d, row in zip(self.src.invariant_factors, self.matrix):
            if self.dst.reduce(tuple(d * x for x in row)) != self.dst.zero():
                return False
        return True

    @classmethod
    def identity(cls, g: FinAbGroup) -> "GroupHom":
        rows = [
            tuple(1 if i == j else 0 for j in range(g.rank)) for i in range(g.rank)
        ]
        return cls(g, g, rows, check=False)

    @classmethod
    def zero(cls, src: FinAbGroup, dst: FinAbGroup) -> "GroupHom":
        return cls(src, dst, [dst.zero()] * src.rank, check=False)

    def apply(self, elem) -> tuple:
        out = [0] * self.dst.rank
        for c, row in zip(elem, self.matrix):
            if c:
                for j, x in enumerate(row):
                    out[j] += c * x
        return self.dst.reduce(tuple(out))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner (apply inner first)."""
        if inner.dst is not self.src and inner.dst.invariant_factors != self.src.invariant_factors:
            raise ValueError("composition mismatch")
        return GroupHom(
            inner.src, self.dst, [self.apply(row) for row in inner.matrix], check=False
        )

    def __add__(self, other: "GroupHom") -> "GroupHom":
        rows = [
            self.dst.add(r1, r2) for r1, r2 in zip(self.matrix, other.matrix)
        ]
        return GroupHom(self.src, self.dst, rows, check=False)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        rows = [
            self.dst.add(r1, self.dst.neg(r2))
            for r1, r2 in zip(self.matrix, other.matrix)
        ]
        return GroupHom(self.src, self.dst, rows, check=False)

    def scale(self, c: int) -> "GroupHom":
        return GroupHom(
            self.src, self.dst, [self.dst.scale(c, r) for r in self.matrix], check=False
        )

    def is_zero(self) -> bool:
        z = self.dst.zero()
        return all(row == z for row in self.matrix)

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.src.invariant_factors == other.src.invariant_factors
            and self.dst.invariant_factors == other.dst.invariant_factors
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"GroupHom({self.matrix})"


def _solve_entry(p: int, a: int, d: int, t: int):
    """Smallest x >= 0 with p*x = a (mod d) and x = 0 (mod t); None if none."""
    a %= d
    g = gcd(p, d)
    if a % g:
        return None
    d1 = d // g
    x0 = ((a // g) * modinv(p // g, d1)) % d1 if d1 > 1 else 0
    # merge x = x0 (mod d1) with x = 0 (mod t)
    g2 = gcd(d1, t)
    if x0 % g2:
        return None
    t1 = t // g2
    k = ((-x0 // g2) * modinv(d1 // g2, t1)) % t1 if t1 > 1 else 0
    return (x0 + d1 * k) % d if d > 1 else 0


def hom_divisible_by_p(f: GroupHom, p: int):
    """Return h with p*h == f as endomorphisms, or None if no such h exists.

    Existence is decided exactly, entry by entry, over the relation data of
    the (common) source and target group.
    """
    if f.src.invariant_factors != f.dst.invariant_factors:
        raise ValueError("hom_divisible_by_p expects an endomorphism")
    g = f.src
    rows = []
    for i, row in enumerate(f.matrix):
        di = g.invariant_factors[i]
        new_row = []
        for j, a in enumerate(row):
            dj = g.invariant_factors[j]
            if dj == 0:
                # free target coordinate: exact equation over Z, and a finite
                # source generator can only map to 0 there
                if di != 0:
                    x = 0 if a == 0 else None
                else:
                    x = a // p if a % p == 0 else None
            else:
                # well-definedness of h forces x = 0 mod dj/gcd(di, dj)
                t = dj // gcd(di, dj)
                x = _solve_entry(p, a, dj, t)
            if x is None:
                return None
            new_row.append(x)
        rows.append(tuple(new_row))
    return GroupHom(g, g, rows)


def all_endomorphisms(g: FinAbGroup):
    """Iterate every endomorphism of a finite group, each exactly once."""
    if not g.is_finite():
        raise ValueError("endomorphism enumeration needs a finite group")
    ds = g.invariant_factors
    k = g.rank
    if k == 0:
        yield GroupHom(g, g, [], check=False)
        return
    choices = []
    for i in range(k):
        row_choices = []
        for j in range(k):
            step = ds[j] // gcd(ds[i], ds[j])
            row_choices.append(range(0, ds[j], step))
        choices.append(row_choices)
    flat = [rng for row in choices for rng in row]
    for combo in itertools.product(*flat):
        rows = [tuple(combo[i * k : (i + 1) * k]) for i in range(k)]
        yield GroupHom(g, g, rows, check=False)
