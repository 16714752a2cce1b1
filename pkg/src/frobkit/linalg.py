"""Dense exact linear algebra over GF(p^e) (and over the prime field for
restriction-of-scalars computations).  Matrices are lists of row lists."""
from __future__ import annotations

from .field import FieldElement, FieldSpec, frobenius, frobenius_root


def zeros(spec: FieldSpec, rows: int, cols: int) -> list[list[FieldElement]]:
    z = spec.zero()
    return [[z] * cols for _ in range(rows)]


def identity(spec: FieldSpec, d: int) -> list[list[FieldElement]]:
    out = zeros(spec, d, d)
    one = spec.one()
    for i in range(d):
        out[i][i] = one
    return out


def mat_mul(a: list[list[FieldElement]],
            b: list[list[FieldElement]]) -> list[list[FieldElement]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    spec = a[0][0].spec
    out = zeros(spec, rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if not c:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j]:
                    oi[j] = oi[j] + c * bk[j]
    return out


def mat_vec(a: list[list[FieldElement]],
            v: list[FieldElement]) -> list[FieldElement]:
    return [c[0] for c in mat_mul(a, [[x] for x in v])]


def mat_equal(a, b) -> bool:
    return a == b


def mat_entrywise(a, fn) -> list[list[FieldElement]]:
    return [[fn(x) for x in row] for row in a]


def mat_frobenius(a, k: int = 1):
    """Entrywise x -> x^(p^k)."""
    out = a
    for _ in range(k):
        out = mat_entrywise(out, frobenius)
    return out


def mat_frobenius_root(a, k: int = 1):
    """Entrywise unique p^k-th root."""
    out = a
    for _ in range(k):
        out = mat_entrywise(out, frobenius_root)
    return out


def rref(rows: list[list[FieldElement]]) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column list)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def in_span(rows_rref: list[list[FieldElement]], pivots: list[int],
            v: list[FieldElement]) -> bool:
    return not any(reduce_against(rows_rref, pivots, v))


def reduce_against(rows_rref, pivots, v: list[FieldElement]) -> list[FieldElement]:
    """Residue of v modulo the row space (rows must be in rref)."""
    v = list(v)
    for row, c in zip(rows_rref, pivots):
        if v[c]:
            f = v[c]
            v = [x - f * y for x, y in zip(v, row)]
    return v


def solve(a: list[list[FieldElement]], b: list[FieldElement]):
    """One solution x of A x = b, or None when inconsistent."""
    if not a:
        return [] if not any(b) else None
    spec = b[0].spec if b else a[0][0].spec
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [spec.zero()] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x


def nullspace(a: list[list[FieldElement]], spec: FieldSpec) -> list[list[FieldElement]]:
    """Basis of {x : A x = 0}."""
    if not a:
        return []
    ncols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [spec.zero()] * ncols
        x[f] = spec.one()
        for row, c in zip(red, pivots):
            x[c] = -row[f]
        basis.append(x)
    return basis


def nullspace_mod_p(a: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of the nullspace of an integer matrix over GF(p)."""
    mat = [[x % p for x in row] for row in a]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [x * inv % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    mat = mat[:r]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, c in zip(mat, pivots):
            x[c] = -row[f] % p
        basis.append(x)
    return basis
