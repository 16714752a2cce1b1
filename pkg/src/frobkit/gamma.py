"""Gamma-sheaves: modules N = P^s/relations over R = P/I with a linear
structural map gamma: N -> F*N recorded as an s x s matrix A of polynomials
(gamma(e_j) = sum_i A_ij tensor e_i).  Provides iteration and nilpotence of
gamma, the dualizing twist to and from Cartier modules, the Frobenius twist of
a root, restriction to principal opens, and the stable dimension of the unit
module generated by a root.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cartier import (CartierModule, InfiniteDimensionalError,
                      NilpotenceVerdict, restrict_to_principal_open)
from .frobenius import cartier_volume, pth_root_decompose
from .polyring import (DEFAULT_SPAIR_BUDGET, FreeVector, GroebnerBasis,
                       Polynomial, QuotientContext, RankMismatchError,
                       RingContext, buchberger, is_regular_sequence,
                       module_buchberger, module_staircase, normal_form,
                       submodule_equal)


class GammaSheaf:
    """The data (N, gamma) with N = P^s/relations (relations contain I e_j)
    and gamma given by the matrix A with entries in normal form mod I."""

    __slots__ = ("ctx", "rank", "relations", "matrix")

    def __init__(self, ctx: QuotientContext, rank: int,
                 relations: GroebnerBasis, matrix: tuple):
        self.ctx = ctx
        self.rank = rank
        self.relations = relations
        self.matrix = matrix

    @classmethod
    def create(cls, ctx: QuotientContext, rank: int, matrix,
               relation_vectors=(), budget: int = DEFAULT_SPAIR_BUDGET
               ) -> "GammaSheaf":
        ring = ctx.ring
        if len(matrix) != rank or any(len(row) != rank for row in matrix):
            raise RankMismatchError(f"matrix must be {rank}x{rank}")
        gens = list(relation_vectors)
        for g in ctx.ideal_gb.generators:
            f = g.comps[0]
            for j in range(rank):
                gens.append(FreeVector.unit(ring, rank, j, f))
        relations = (module_buchberger(gens, rank, ring, budget) if gens
                     else GroebnerBasis(ring, rank, ()))
        mat = tuple(tuple(ctx.nf(entry) for entry in row) for row in matrix)
        return cls(ctx, rank, relations, mat)

    @property
    def ring(self) -> RingContext:
        return self.ctx.ring

    def is_zero_matrix(self) -> bool:
        return all(e.is_zero() for row in self.matrix for e in row)


def _twist_vector(v: FreeVector, k: int) -> FreeVector:
    return FreeVector(v.ctx, (c.frobenius_twist(k) for c in v.comps))


def twisted_relations(n: GammaSheaf, level: int,
                      budget: int = DEFAULT_SPAIR_BUDGET) -> GroebnerBasis:
    """Presentation of the level-fold Frobenius pullback F^(level)*N: the
    [p^level]-twists of the relations together with I e_j."""
    ring = n.ring
    gens = [_twist_vector(g, level) for g in n.relations.generators]
    for g in n.ctx.ideal_gb.generators:
        f = g.comps[0]
        for j in range(n.rank):
            gens.append(FreeVector.unit(ring, n.rank, j, f))
    return (module_buchberger(gens, n.rank, ring, budget) if gens
            else GroebnerBasis(ring, n.rank, ()))


def validate_gamma_structure(n: GammaSheaf, collect: bool = False):
    """Well-definedness of gamma on the presentation: for every relation
    rho the image vector (A rho)_i = sum_j A_ij rho_j must lie in the twisted
    relation module of F*N."""
    tw = twisted_relations(n, 1)
    violations = []
    for gi, rho in enumerate(n.relations.generators):
        comps = []
        for i in range(n.rank):
            acc = Polynomial.zero(n.ring)
            for j in range(n.rank):
                acc = acc + n.matrix[i][j] * rho.comps[j]
            comps.append(acc)
        image = FreeVector(n.ring, comps)
        if tw.generators and not normal_form(image, tw).is_zero():
            violations.append(gi)
            if not collect:
                return False
        elif not tw.generators and not image.is_zero():
            violations.append(gi)
            if not collect:
                return False
    if collect:
        return not violations, violations
    return True


@dataclass(frozen=True)
class GammaIterate:
    """The composite F^(e-1)*gamma o ... o F*gamma o gamma as a matrix."""

    level: int
    matrix: tuple


def gamma_iterate(n: GammaSheaf, e: int) -> GammaIterate:
    if e < 1:
        raise ValueError("level must be >= 1")
    cur = n.matrix
    for k in range(1, e):
        tw = tuple(tuple(x.frobenius_twist(k) for x in row) for row in n.matrix)
        nxt = []
        for i in range(n.rank):
            row = []
            for j in range(n.rank):
                acc = Polynomial.zero(n.ring)
                for t in range(n.rank):
                    acc = acc + tw[i][t] * cur[t][j]
                row.append(n.ctx.nf(acc))
            nxt.append(tuple(row))
        cur = tuple(nxt)
    return GammaIterate(e, cur)


def _columns_vanish(n: GammaSheaf, it: GammaIterate,
                    budget: int = DEFAULT_SPAIR_BUDGET) -> bool:
    tw = twisted_relations(n, it.level, budget)
    for j in range(n.rank):
        col = FreeVector(n.ring, (it.matrix[i][j] for i in range(n.rank)))
        if tw.generators:
            if not normal_form(col, tw).is_zero():
                return False
        elif col:
            return False
    return True


def gamma_is_nilpotent(n: GammaSheaf, e_max: int = 16,
                       budget: int = DEFAULT_SPAIR_BUDGET) -> NilpotenceVerdict:
    """Smallest e with the e-fold composite vanishing into F^e*N.  When the
    underlying module is a finite-dimensional k-space of dimension d the
    search up to d is exact; otherwise a bounded search."""
    st = module_staircase(n.relations, n.rank)
    bound = e_max if st is None else max(1, len(st))
    for e in range(1, bound + 1):
        if _columns_vanish(n, gamma_iterate(n, e), budget):
            return NilpotenceVerdict.nilpotent(e)
    if st is not None:
        return NilpotenceVerdict.not_nilpotent()
    return NilpotenceVerdict.not_nilpotent_up_to(bound)


# ---------------------------------------------------------------------------
# the dualizing twist

def _koszul_factor(n_ctx: QuotientContext, seq) -> Polynomial:
    ring = n_ctx.ring
    if seq:
        acc = Polynomial.one(ring)
        for f in seq:
            acc = acc * f
        return acc
    return Polynomial.one(ring)


def _check_sequence(ctx: QuotientContext, seq,
                    budget: int = DEFAULT_SPAIR_BUDGET) -> None:
    if ctx.is_ambient:
        if seq:
            raise ValueError("ambient context takes no sequence")
        return
    if not seq:
        raise ValueError("quotient context needs a regular-sequence "
                         "presentation of its ideal")
    if not is_regular_sequence(list(seq), ctx.ring, budget):
        raise ValueError("sequence is not regular")
    if not submodule_equal(buchberger(list(seq), ctx.ring, budget),
                           ctx.ideal_gb):
        raise ValueError("sequence does not generate the quotient ideal")


def twist_to_cartier(n: GammaSheaf, seq=(), method: str = "projection",
                     budget: int = DEFAULT_SPAIR_BUDGET) -> CartierModule:
    """The Cartier structure on N tensor omega.  Over the ambient ring the
    table is kappa(x^a e_j) = sum_i cartier_volume(A_ij x^a) e_i; over a
    quotient presented by a regular sequence f_1..f_c the Koszul dualizing
    factor (f_1...f_c)^(p-1) multiplies in.  ``method`` selects between the
    volume-form route ("projection") and the dual-basis route ("dual"); both
    produce the same table."""
    _check_sequence(n.ctx, seq, budget)
    ring = n.ring
    p = ring.field.p
    factor = _koszul_factor(n.ctx, seq) ** (p - 1)
    top = tuple(p - 1 for _ in range(ring.nvars))
    table: dict = {}
    from itertools import product
    for j in range(n.rank):
        scaled = [factor * n.matrix[i][j] for i in range(n.rank)]
        if method == "dual":
            decomposed = [pth_root_decompose(g) for g in scaled]
        for a in product(range(p), repeat=ring.nvars):
            if method == "projection":
                xa = Polynomial.monomial(ring, a)
                comps = [cartier_volume(g * xa) for g in scaled]
            elif method == "dual":
                slot = tuple(t - x for t, x in zip(top, a))
                comps = [dec.part(slot) for dec in decomposed]
            else:
                raise ValueError(f"unknown method {method!r}")
            v = FreeVector(ring, comps)
            if v:
                table[(j, a)] = v
    return CartierModule.create(n.ctx, n.rank, n.relations.generators, table,
                                budget)


def twist_to_gamma(m: CartierModule,
                   budget: int = DEFAULT_SPAIR_BUDGET) -> GammaSheaf:
    """Inverse twist over the ambient ring: the unique matrix A with
    kappa(f e_j tensor dx) = sum_i cartier_volume(A_ij f) e_i, recovered from
    the table as A_ij = sum_a (c_ij^(a))^[p] x^(p-1-a) with c the e_i
    component of kappa(x^a e_j)."""
    if not m.ctx.is_ambient:
        raise ValueError("inverse twist is only defined over the ambient "
                         "polynomial ring")
    ring = m.ring
    p = ring.field.p
    top = tuple(p - 1 for _ in range(ring.nvars))
    one = ring.field.one()
    rows = [[Polynomial.zero(ring) for _ in range(m.rank)]
            for _ in range(m.rank)]
    for (j, a), v in m.kappa_table.items():
        shift = tuple(t - x for t, x in zip(top, a))
        for i, comp in enumerate(v.comps):
            if comp:
                rows[i][j] = rows[i][j] + comp.frobenius_twist().term_mul(
                    shift, one)
    return GammaSheaf.create(m.ctx, m.rank, rows, m.relations.generators,
                             budget)


def frobenius_twist_root(n: GammaSheaf,
                         budget: int = DEFAULT_SPAIR_BUDGET) -> GammaSheaf:
    """(F*N, F*gamma): twist the relations and the matrix entrywise by [p]."""
    rels = [_twist_vector(g, 1) for g in n.relations.generators]
    mat = [[x.frobenius_twist() for x in row] for row in n.matrix]
    return GammaSheaf.create(n.ctx, n.rank, mat, rels, budget)


def gen_stable_dimension(n: GammaSheaf, budget: int = DEFAULT_SPAIR_BUDGET
                         ) -> int:
    """k-dimension of the unit module generated by the root: the eventual
    rank of the e-fold composite as a map into F^e*N, computed as
    dim(P^s/rels_e) - dim(P^s/(columns + rels_e)).  The sequence is
    non-increasing; it is returned once two consecutive values agree."""
    st = module_staircase(n.relations, n.rank)
    if st is None:
        raise InfiniteDimensionalError("gen dimension needs a finite "
                                       "dimensional context")
    d = max(1, len(st))
    cur = 0
    for e in range(1, d + 2):
        it = gamma_iterate(n, e)
        rels = twisted_relations(n, e, budget)
        amb = module_staircase(rels, n.rank)
        if amb is None:
            raise InfiniteDimensionalError("twisted relations are not "
                                           "finite dimensional")
        gens = list(rels.generators)
        for j in range(n.rank):
            col = FreeVector(n.ring, (it.matrix[i][j] for i in range(n.rank)))
            if col:
                gens.append(col)
        joint = module_buchberger(gens, n.rank, n.ring, budget) if gens else \
            GroebnerBasis(n.ring, n.rank, ())
        sub = module_staircase(joint, n.rank)
        if sub is None:
            raise InfiniteDimensionalError("image module is not finite "
                                           "dimensional")
        cur = len(amb) - len(sub)
        if cur == 0:
            return 0  # non-increasing and bounded below
    return cur


@dataclass(frozen=True)
class LocalizedGammaSheaf:
    """gamma on the principal open D(h): the matrix is unchanged because
    gamma(v/h^s) = gamma(v)/h^(p s) read inside F*(N_h)."""

    base: GammaSheaf
    h: Polynomial

    @property
    def matrix(self) -> tuple:
        return self.base.matrix

    def to_cartier(self, seq=(), budget: int = DEFAULT_SPAIR_BUDGET):
        return restrict_to_principal_open(
            twist_to_cartier(self.base, seq, budget=budget), self.h)


def gamma_restrict_open(n: GammaSheaf, h: Polynomial) -> LocalizedGammaSheaf:
    if n.ctx.contains(h):
        raise ValueError("h lies in the quotient ideal; D(h) misses V(I)")
    return LocalizedGammaSheaf(n, h)
