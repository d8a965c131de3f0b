"""Small dense linear algebra over the prime field F_p."""
from __future__ import annotations


def rref_fp(rows, p: int):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    M = [[x % p for x in row] for row in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for j in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][j]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][j], p - 2, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][j]:
                c = M[i][j]
                M[i] = [(a - c * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank_fp(rows, p: int) -> int:
    return len(rref_fp(rows, p)[0])


def left_nullspace_fp(rows, p: int):
    """Basis of {v : v * A = 0} over F_p, via reduction of [A | I]."""
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    aug = [list(row) + [1 if t == i else 0 for t in range(m)] for i, row in enumerate(rows)]
    red, _ = rref_fp(aug, p)
    out = []
    for row in red:
        if all(x == 0 for x in row[:ncols]):
            out.append(tuple(row[ncols:]))
    # rows that were eliminated entirely do not appear in rref output; they
    # correspond to kernel vectors too, so recover the full kernel by rank
    kdim = m - rank_fp(rows, p)
    if len(out) < kdim:
        # fall back: solve for the kernel explicitly from the rref of A^T
        out = _kernel_via_transpose(rows, p)
    return out


def _kernel_via_transpose(rows, p: int):
    m = len(rows)
    cols = list(zip(*rows))
    red, pivots = rref_fp(cols, p)
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * m
        v[f] = 1
        for r, pc in zip(red, pivots):
            v[pc] = (-r[f]) % p
        basis.append(tuple(v))
    return basis


def solve_fp(rows, target, p: int):
    """One solution x of x * A = target over F_p, or None."""
    m = len(rows)
    if m == 0:
        return () if all(t % p == 0 for t in target) else None
    # each column j of A gives one equation in the unknowns x_0..x_{m-1}
    n = len(target)
    aug = [[rows[i][j] % p for i in range(m)] + [target[j] % p] for j in range(n)]
    red, pivots = rref_fp(aug, p)
    x = [0] * m
    for row, pc in zip(red, pivots):
        if pc == m:
            return None  # inconsistent
        x[pc] = row[m]
    # verify (guards the rare all-zero-row bookkeeping cases)
    for j in range(n):
        if sum(x[i] * rows[i][j] for i in range(m)) % p != target[j] % p:
            return None
    return tuple(x)
