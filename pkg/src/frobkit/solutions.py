"""Solution spaces of unit Frobenius modules at rational points: given a root
matrix A over R = P/I and a point alpha with coordinates in GF(p^m), the
solutions are the vectors w over the point field with w_j = sum_i A_ij(alpha)
w_i^p.  These form an F_p-vector space of dimension at most s; the rank-1 case
A = (1) recovers the Artin-Schreier kernel Z/pZ."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .field import FieldElement, FieldSpec, _is_irreducible, _is_prime
from .gamma import GammaSheaf
from .linalg import nullspace_mod_p
from .polyring import QuotientContext

DEFAULT_GUARD = 10 ** 6


class GuardExceededError(RuntimeError):
    """An enumeration guard was exceeded."""


class FiberDegenerationError(ValueError):
    """A relation generator does not vanish at the point, so the fiber of the
    presentation is not the free space the solver assumes."""


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Deterministic modulus choice for GF(p^m): the first monic irreducible
    of degree m in lexicographic order of the low coefficient tuple."""
    for tail in product(range(p), repeat=m):
        cand = tuple(tail) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise ValueError("no irreducible found")  # unreachable: they always exist


def point_field(p: int, m: int) -> FieldSpec:
    if m == 1:
        return FieldSpec(p)
    return FieldSpec(p, m, smallest_irreducible(p, m))


@dataclass(frozen=True)
class RationalPoint:
    """A point of Spec R with coordinates in GF(p^m)."""

    m: int
    spec: FieldSpec
    coords: tuple[FieldElement, ...]

    def to_json(self) -> dict:
        return {"m": self.m, "coords": [list(c.coeffs) for c in self.coords]}


@dataclass(frozen=True)
class SolutionSpace:
    """F_p-vector space of solutions; basis vectors live in (point field)^s."""

    dimension: int
    basis: tuple[tuple[FieldElement, ...], ...]

    def to_json(self) -> dict:
        return {"dim": self.dimension,
                "basis": [[list(c.coeffs) for c in vec] for vec in self.basis]}


def _resolve_point_field(base: FieldSpec, m: int) -> FieldSpec:
    if base.e > 1:
        # extension base fields: points carry coordinates in the base field
        # itself, so only m = e is available
        if m != base.e:
            raise ValueError("over an extension base field only points with "
                             "coordinates in the base field are supported")
        return base
    return point_field(base.p, m)


def enumerate_points(ctx: QuotientContext, m: int,
                     guard: int = DEFAULT_GUARD) -> list[RationalPoint]:
    """All alpha in (GF(p^m))^n at which every ideal generator vanishes."""
    base = ctx.ring.field
    spec = _resolve_point_field(base, m)
    n = ctx.ring.nvars
    if spec.size ** n > guard:
        raise GuardExceededError(f"{spec.size ** n} candidate points exceed "
                                 f"the guard {guard}")
    gens = [g.comps[0] for g in ctx.ideal_gb.generators]
    out = []
    for coords in product(list(spec.elements()), repeat=n):
        if all(not g.evaluate(coords, spec) for g in gens):
            out.append(RationalPoint(m, spec, tuple(coords)))
    return out


def _check_fiber(root: GammaSheaf, pt: RationalPoint) -> list[list[FieldElement]]:
    """Evaluate the root matrix at the point after checking that the fiber is
    honestly free (all relation generators vanish)."""
    spec = pt.spec
    for rho in root.relations.generators:
        vals = [c.evaluate(pt.coords, spec) for c in rho.comps]
        if any(vals):
            raise FiberDegenerationError("a relation generator does not "
                                         "vanish at the point")
    return [[root.matrix[i][j].evaluate(pt.coords, spec)
             for j in range(root.rank)] for i in range(root.rank)]


def solutions_at_point(root: GammaSheaf, pt: RationalPoint) -> SolutionSpace:
    """Solve w_j = sum_i A_ij(alpha) w_i^p by restriction of scalars: the map
    w -> w - A(alpha)^T w^[p] is F_p-linear, so its kernel is cut out by an
    F_p-linear system in the s*m prime-field coordinates of w."""
    spec = pt.spec
    p, m, s = spec.p, spec.e, root.rank
    a_at = _check_fiber(root, pt)
    fb = [spec.one()]
    if m > 1:
        g = spec.generator()
        for _ in range(m - 1):
            fb.append(fb[-1] * g)
    columns = []
    for i in range(s):
        for t in range(m):
            bt = fb[t]
            btp = bt ** p
            col: list[int] = []
            for j in range(s):
                val = (bt if i == j else spec.zero()) - a_at[i][j] * btp
                col.extend(val.coeffs)
            columns.append(col)
    nrows = s * m
    system = [[columns[u][r] for u in range(len(columns))]
              for r in range(nrows)]
    basis = []
    for sol in nullspace_mod_p(system, s * m, p):
        w = []
        for i in range(s):
            acc = spec.zero()
            for t in range(m):
                y = sol[i * m + t]
                if y:
                    acc = acc + fb[t] * spec.from_int(y)
            w.append(acc)
        basis.append(tuple(w))
    return SolutionSpace(len(basis), tuple(basis))


def brute_force_solutions(root: GammaSheaf, pt: RationalPoint,
                          guard: int = DEFAULT_GUARD) -> list[tuple]:
    """Oracle: try every w in (point field)^s against the defining equation."""
    spec = pt.spec
    s = root.rank
    p = spec.p
    if spec.size ** s > guard:
        raise GuardExceededError("solution enumeration exceeds the guard")
    a_at = _check_fiber(root, pt)
    out = []
    for w in product(list(spec.elements()), repeat=s):
        ok = True
        for j in range(s):
            rhs = spec.zero()
            for i in range(s):
                if a_at[i][j]:
                    rhs = rhs + a_at[i][j] * w[i] ** p
            if w[j] != rhs:
                ok = False
                break
        if ok:
            out.append(w)
    return out


def artin_schreier_kernel(q: int, guard: int = DEFAULT_GUARD) -> int:
    """F_p-dimension of {a in GF(q) : a^p = a}; the fixed set is the prime
    field, so the answer is 1 for every prime power q."""
    if q > guard:
        raise GuardExceededError(f"field of size {q} exceeds the guard")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    if not _is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    m = 0
    t = q
    while t > 1:
        if t % p:
            raise ValueError(f"{q} is not a prime power")
        t //= p
        m += 1
    spec = point_field(p, m)
    fixed = sum(1 for a in spec.elements() if a ** p == a)
    dim = 0
    while p ** dim < fixed:
        dim += 1
    if p ** dim != fixed:
        raise AssertionError("fixed set is not an F_p-subspace")
    return dim


def solution_profile(root: GammaSheaf, ctx: QuotientContext, m_max: int,
                     guard: int = DEFAULT_GUARD) -> list[dict]:
    """Dimensions of the solution space at every rational point over each
    extension degree up to m_max."""
    rows = []
    for m in range(1, m_max + 1):
        for pt in enumerate_points(ctx, m, guard):
            space = solutions_at_point(root, pt)
            rows.append({"m": m, "point": pt.to_json()["coords"],
                         "dim": space.dimension})
    return rows
