"""Cartier modules over R = P/I: a module presented by relations inside a free
module P^s together with a p^(-1)-linear operator kappa given by its value
table on the F_* generators {x^a e_j}.  Provides application and iteration of
kappa, the descending image chain and its stable limit, nilpotence and
crystal-level tests, restriction to principal opens, and a finite-dimensional
tier where kappa becomes an explicit semilinear matrix operator.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import linalg
from .field import FieldElement, FieldSpec, frobenius, frobenius_root
from .frobenius import pth_root_decompose, residue_exponents
from .polyring import (DEFAULT_SPAIR_BUDGET, BudgetExceededError, FreeVector,
                       GroebnerBasis, Monomial, Polynomial, QuotientContext,
                       RankMismatchError, RingContext, module_buchberger,
                       module_staircase, normal_form, saturate,
                       submodule_equal)


class InvalidStructureError(ValueError):
    """A kappa table is inconsistent with the module relations."""


class InfiniteDimensionalError(ValueError):
    """The operation needs a finite k-dimensional quotient."""


@dataclass(frozen=True)
class NilpotenceVerdict:
    """Outcome of a nilpotence test.  ``index`` is the stabilization (or
    vanishing) step when meaningful; ``bound`` the search depth for the
    inconclusive bounded search."""

    status: str  # nilpotent | not_nilpotent | not_nilpotent_up_to | budget_exceeded
    index: Optional[int] = None
    bound: Optional[int] = None

    @classmethod
    def nilpotent(cls, index: int) -> "NilpotenceVerdict":
        return cls("nilpotent", index=index)

    @classmethod
    def not_nilpotent(cls) -> "NilpotenceVerdict":
        return cls("not_nilpotent")

    @classmethod
    def not_nilpotent_up_to(cls, bound: int) -> "NilpotenceVerdict":
        return cls("not_nilpotent_up_to", bound=bound)

    @classmethod
    def budget_exceeded(cls) -> "NilpotenceVerdict":
        return cls("budget_exceeded")

    @property
    def is_nilpotent(self) -> bool:
        return self.status == "nilpotent"

    @property
    def conclusive(self) -> bool:
        return self.status in ("nilpotent", "not_nilpotent")

    def to_json(self) -> dict:
        out = {"verdict": self.status}
        if self.index is not None:
            out["index"] = self.index
        if self.bound is not None:
            out["bound"] = self.bound
        return out


class CartierModule:
    """M = P^s / relations with kappa determined by kappa(x^a e_j) for
    a in [0,p)^n.  Relations always contain I e_j for the quotient ideal I;
    table values are stored in normal form."""

    __slots__ = ("ctx", "rank", "relations", "kappa_table")

    def __init__(self, ctx: QuotientContext, rank: int,
                 relations: GroebnerBasis, kappa_table: dict):
        self.ctx = ctx
        self.rank = rank
        self.relations = relations
        self.kappa_table = kappa_table

    @classmethod
    def create(cls, ctx: QuotientContext, rank: int,
               relation_vectors=(), table: Optional[dict] = None,
               budget: int = DEFAULT_SPAIR_BUDGET) -> "CartierModule":
        ring = ctx.ring
        gens = list(relation_vectors)
        for g in ctx.ideal_gb.generators:
            f = g.comps[0]
            for j in range(rank):
                gens.append(FreeVector.unit(ring, rank, j, f))
        relations = (module_buchberger(gens, rank, ring, budget) if gens
                     else GroebnerBasis(ring, rank, ()))
        clean = {}
        if table:
            for (j, a), v in table.items():
                if not 0 <= j < rank:
                    raise RankMismatchError(f"table position {j} out of range")
                if v.rank != rank:
                    raise RankMismatchError("table value rank mismatch")
                nf = normal_form(v, relations)
                if nf:
                    clean[(j, tuple(a))] = nf
        return cls(ctx, rank, relations, clean)

    @property
    def ring(self) -> RingContext:
        return self.ctx.ring

    def table_value(self, j: int, a: Monomial) -> FreeVector:
        return self.kappa_table.get((j, tuple(a)),
                                    FreeVector.zero(self.ring, self.rank))

    def is_zero_table(self) -> bool:
        return not self.kappa_table

    def nf(self, v: FreeVector) -> FreeVector:
        return normal_form(v, self.relations)


def kappa_lift(m: CartierModule, v: FreeVector) -> FreeVector:
    """Apply the table to a raw representative, without reducing the input:
    decompose each component over {x^a} and contract against the table.  Used
    directly for well-definedness checks; kappa_apply wraps it with normal
    forms."""
    if v.rank != m.rank:
        raise RankMismatchError(f"vector rank {v.rank}, module rank {m.rank}")
    acc = FreeVector.zero(m.ring, m.rank)
    for j, comp in enumerate(v.comps):
        if comp.is_zero():
            continue
        for a, g in pth_root_decompose(comp).parts.items():
            tv = m.kappa_table.get((j, a))
            if tv is not None:
                acc = acc + tv.scale(g)
    return acc


def kappa_apply(m: CartierModule, v: FreeVector) -> FreeVector:
    """kappa on the class of v; semilinear: kappa(h^p v) = h kappa(v)."""
    return m.nf(kappa_lift(m, m.nf(v)))


def kappa_power(m: CartierModule, e: int, v: FreeVector) -> FreeVector:
    if e < 0:
        raise ValueError("negative kappa power")
    out = m.nf(v)
    for _ in range(e):
        out = kappa_apply(m, out)
    return out


def validate_cartier_structure(m: CartierModule, collect: bool = False):
    """Well-definedness of the table presentation: the lift must send
    x^a * rho into the relations for every relation generator rho and every
    a in [0,p)^n.  Returns a bool, or (bool, violations) when collecting."""
    violations = []
    one = m.ring.field.one()
    for gi, rho in enumerate(m.relations.generators):
        for a in residue_exponents(m.ring):
            image = kappa_lift(m, rho.term_mul(a, one))
            if not m.nf(image).is_zero():
                violations.append((gi, a))
                if not collect:
                    return False
    if collect:
        return not violations, violations
    return True


@dataclass(frozen=True)
class StableImageResult:
    """The descending chain of kappa-iterated image submodules and its limit."""

    chain: tuple[GroebnerBasis, ...]
    index: int
    stable: GroebnerBasis

    @property
    def is_zero_module(self) -> bool:
        # "zero" means equal to the relation submodule; checked by the caller
        raise NotImplementedError


def _full_module_basis(m: CartierModule) -> GroebnerBasis:
    gens = [FreeVector.unit(m.ring, m.rank, j) for j in range(m.rank)]
    gens.extend(m.relations.generators)
    return module_buchberger(gens, m.rank, m.ring)


def stable_image(m: CartierModule, max_levels: int = 64,
                 budget: int = DEFAULT_SPAIR_BUDGET) -> StableImageResult:
    """Compute the chain M >= kappa(F_*M) >= kappa^2(F_*^2 M) >= ... until two
    consecutive levels generate the same submodule; the chain is constant from
    there on, so the result is the stable image."""
    one = m.ring.field.one()
    chain = [_full_module_basis(m)]
    for level in range(1, max_levels + 1):
        gens = list(m.relations.generators)
        for u in chain[-1].generators:
            for a in residue_exponents(m.ring):
                w = m.nf(kappa_lift(m, u.term_mul(a, one)))
                if w:
                    gens.append(w)
        nxt = (module_buchberger(gens, m.rank, m.ring, budget) if gens
               else GroebnerBasis(m.ring, m.rank, ()))
        if submodule_equal(nxt, chain[-1]):
            # chain value at level-1 already equals the limit
            return StableImageResult(tuple(chain) + (nxt,), level - 1, nxt)
        chain.append(nxt)
    raise BudgetExceededError(f"image chain did not stabilize in {max_levels} "
                              "levels")


def is_nilpotent(m: CartierModule, max_levels: int = 64,
                 budget: int = DEFAULT_SPAIR_BUDGET) -> NilpotenceVerdict:
    """Nilpotent iff the stable image collapses to the relation submodule."""
    try:
        result = stable_image(m, max_levels, budget)
    except BudgetExceededError:
        return NilpotenceVerdict.budget_exceeded()
    if submodule_equal(result.stable, m.relations):
        return NilpotenceVerdict.nilpotent(result.index)
    return NilpotenceVerdict.not_nilpotent()


def crystal_is_zero(m: CartierModule, max_levels: int = 64,
                    budget: int = DEFAULT_SPAIR_BUDGET) -> NilpotenceVerdict:
    """A coherent Cartier module is zero as a crystal exactly when it is
    nilpotent."""
    return is_nilpotent(m, max_levels, budget)


def is_crystal_supported_on(m: CartierModule, j_gens: list[Polynomial],
                            max_levels: int = 64,
                            budget: int = DEFAULT_SPAIR_BUDGET) -> bool:
    """True when the restriction of M to the complement of V(J) is nilpotent:
    every stable-image generator must be killed by a power of each generator
    of J (membership in the h-saturation of the relations)."""
    result = stable_image(m, max_levels, budget)
    for h in j_gens:
        if h.is_zero():
            continue
        sat = saturate(m.relations, h, budget) if m.relations.generators else \
            m.relations
        if not m.relations.generators:
            # no relations: saturation of 0 is 0, so every nonzero stable
            # generator fails
            if any(not g.is_zero() for g in result.stable.generators):
                return False
            continue
        for g in result.stable.generators:
            if not normal_form(g, sat).is_zero():
                return False
    return True


def volume_cartier_module(ring: RingContext) -> CartierModule:
    """The rank-1 module of top forms over the ambient ring with the canonical
    Cartier operator: kappa(x^a e) = e when a = (p-1,...,p-1) and 0 for the
    other residues."""
    ctx = QuotientContext.trivial(ring)
    top = tuple(ring.field.p - 1 for _ in range(ring.nvars))
    return CartierModule.create(ctx, 1,
                                table={(0, top): FreeVector.unit(ring, 1, 0)})


# ---------------------------------------------------------------------------
# localization at a principal open

@dataclass(frozen=True)
class LocalizedElement:
    """numerator / h^power inside M_h."""

    numerator: FreeVector
    power: int


@dataclass(frozen=True)
class LocalizedCartierModule:
    """The restriction of a Cartier module to the principal open D(h)."""

    base: CartierModule
    h: Polynomial
    saturated: GroebnerBasis

    def element(self, v: FreeVector, power: int = 0) -> LocalizedElement:
        return LocalizedElement(self.base.nf(v), power)

    def kappa(self, x: LocalizedElement) -> LocalizedElement:
        """kappa(m / h^s) = kappa(h^(pt - s) m) / h^t with t = ceil(s/p)."""
        p = self.base.ring.field.p
        s = x.power
        t = -(-s // p)
        shifted = x.numerator.scale(self.h ** (p * t - s))
        return LocalizedElement(kappa_apply(self.base, shifted), t)

    def elements_equal(self, x: LocalizedElement, y: LocalizedElement) -> bool:
        """Equality in M_h: cross-multiply and compare modulo the h-saturated
        relations (the kernel of M -> M_h)."""
        diff = (x.numerator.scale(self.h ** y.power)
                - y.numerator.scale(self.h ** x.power))
        if not self.saturated.generators:
            return diff.is_zero()
        return normal_form(diff, self.saturated).is_zero()


def restrict_to_principal_open(m: CartierModule,
                               h: Polynomial) -> LocalizedCartierModule:
    if m.ctx.contains(h):
        raise ValueError("h lies in the quotient ideal; D(h) misses V(I)")
    sat = (saturate(m.relations, h) if m.relations.generators
           else m.relations)
    return LocalizedCartierModule(m, h, sat)


# ---------------------------------------------------------------------------
# finite-dimensional tier

@dataclass(frozen=True)
class SemilinearEndo:
    """A Frobenius-semilinear endomorphism of k^d.  Inverse direction means
    T(v) = U v^(1/p entrywise) (so T(c^p v) = c T(v)); forward means
    T(v) = U v^(p entrywise)."""

    dim: int
    matrix: tuple
    spec: FieldSpec
    direction: str = "inverse"
    basis: Optional[tuple] = None  # staircase labels (j, monomial) if known

    def __post_init__(self):
        if self.direction not in ("inverse", "forward"):
            raise ValueError(f"unknown direction {self.direction!r}")

    def apply(self, v: list[FieldElement]) -> list[FieldElement]:
        tw = frobenius_root if self.direction == "inverse" else frobenius
        return linalg.mat_vec([list(r) for r in self.matrix],
                              [tw(x) for x in v])

    def rows(self) -> list[list[FieldElement]]:
        return [list(r) for r in self.matrix]


def to_semilinear(m: CartierModule) -> SemilinearEndo:
    """Matrix of kappa on the monomial staircase basis of P^s / relations.
    Requires a finite staircase."""
    st = module_staircase(m.relations, m.rank)
    if st is None:
        raise InfiniteDimensionalError("quotient module is not a finite "
                                       "dimensional k-space")
    spec = m.ring.field
    index = {bm: t for t, bm in enumerate(st)}
    d = len(st)
    cols = []
    for (j, b) in st:
        image = kappa_apply(m, FreeVector.unit(m.ring, m.rank, j,
                                               Polynomial.monomial(m.ring, b)))
        col = [spec.zero()] * d
        for pos, comp in enumerate(image.comps):
            for mono, c in comp.terms.items():
                t = index.get((pos, mono))
                if t is None:
                    raise InvalidStructureError("normal form escaped the "
                                                "staircase")
                col[t] = col[t] + c
        cols.append(col)
    matrix = tuple(tuple(cols[t][r] for t in range(d)) for r in range(d))
    return SemilinearEndo(d, matrix, spec, "inverse", tuple(st))


def _image_span(t: SemilinearEndo,
                basis: list[list[FieldElement]]) -> list[list[FieldElement]]:
    images = [t.apply(b) for b in basis]
    red, _ = linalg.rref(images)
    return red


def semilinear_nilpotent(t: SemilinearEndo) -> NilpotenceVerdict:
    """Iterate image subspaces V >= T(V) >= T^2(V) >= ...; the chain descends
    and is fixed once two consecutive terms agree, so it settles within dim
    steps.  Nilpotent iff the limit is zero."""
    spec = t.spec
    cur = [list(r) for r in linalg.identity(spec, t.dim)]
    for step in range(1, t.dim + 2):
        nxt = _image_span(t, cur)
        if not nxt:
            return NilpotenceVerdict.nilpotent(step)
        if len(nxt) == len(cur):
            # T maps span(cur) into itself with full rank: fixed forever
            return NilpotenceVerdict.not_nilpotent()
        cur = nxt
    return NilpotenceVerdict.not_nilpotent()


def _field_basis(spec: FieldSpec) -> list[FieldElement]:
    if spec.e == 1:
        return [spec.one()]
    g = spec.generator()
    out = [spec.one()]
    for _ in range(spec.e - 1):
        out.append(out[-1] * g)
    return out


def hom_commuting(m: SemilinearEndo, n: SemilinearEndo) -> list[tuple]:
    """F_p-basis of the k-linear maps phi: k^dM -> k^dN with
    phi o T_M = T_N o phi.  For the inverse direction the matrix condition is
    phi U_M = U_N phi^(1/p entrywise); for forward, phi U_M = U_N phi^(p).
    Restriction of scalars to F_p makes the condition linear in the prime
    field coordinates of the entries of phi."""
    if m.direction != n.direction:
        raise ValueError("direction mismatch")
    spec = m.spec
    if n.spec != spec:
        raise ValueError("field mismatch")
    p, e = spec.p, spec.e
    fb = _field_basis(spec)
    um, un = m.rows(), n.rows()
    unknowns = []
    columns = []
    for r in range(n.dim):
        for s in range(m.dim):
            for t in range(e):
                phi = linalg.zeros(spec, n.dim, m.dim)
                phi[r][s] = fb[t]
                lhs = linalg.mat_mul(phi, um)
                tw = (linalg.mat_frobenius_root(phi)
                      if m.direction == "inverse"
                      else linalg.mat_frobenius(phi))
                rhs = linalg.mat_mul(un, tw)
                col = []
                for i in range(n.dim):
                    for j in range(m.dim):
                        diff = lhs[i][j] - rhs[i][j]
                        col.extend(diff.coeffs)
                unknowns.append((r, s, t))
                columns.append(col)
    nrows = len(columns[0]) if columns else 0
    system = [[columns[u][row] for u in range(len(columns))]
              for row in range(nrows)]
    basis = []
    for sol in linalg.nullspace_mod_p(system, len(unknowns), p):
        phi = linalg.zeros(spec, n.dim, m.dim)
        for (r, s, t), y in zip(unknowns, sol):
            if y:
                phi[r][s] = phi[r][s] + fb[t] * spec.from_int(y)
        basis.append(tuple(tuple(row) for row in phi))
    return basis


def _commutes(phi: list[list[FieldElement]], m: SemilinearEndo,
              n: SemilinearEndo) -> bool:
    lhs = linalg.mat_mul(phi, m.rows())
    tw = (linalg.mat_frobenius_root(phi) if m.direction == "inverse"
          else linalg.mat_frobenius(phi))
    return lhs == linalg.mat_mul(n.rows(), tw)


def nil_isomorphism_test(phi, m: SemilinearEndo, n: SemilinearEndo) -> bool:
    """phi is a nil-isomorphism when the operators induced on its kernel and
    cokernel are both nilpotent.  phi must commute with the operators."""
    if m.direction != n.direction:
        raise ValueError("direction mismatch")
    phi = [list(r) for r in phi]
    if not _commutes(phi, m, n):
        raise ValueError("map does not commute with the operators")
    spec = m.spec
    tw = frobenius_root if m.direction == "inverse" else frobenius

    # kernel side: T_M preserves ker(phi) because phi T_M = T_N phi
    kbasis = linalg.nullspace(phi, spec) if m.dim else []
    if kbasis:
        kt = []  # columns of the induced operator in the kernel basis
        kmat = [[kbasis[t][i] for t in range(len(kbasis))]
                for i in range(m.dim)]
        for b in kbasis:
            img = m.apply(b)
            coords = linalg.solve(kmat, img)
            if coords is None:
                return False  # should not happen; defensive
            kt.append(coords)
        d = len(kbasis)
        kmatrix = tuple(tuple(kt[t][r] for t in range(d)) for r in range(d))
        kv = semilinear_nilpotent(SemilinearEndo(d, kmatrix, spec, m.direction))
        if not kv.is_nilpotent:
            return False

    # cokernel side: coordinates on the non-pivot positions of the image
    cols = [[phi[i][j] for i in range(n.dim)] for j in range(m.dim)]
    red, pivots = linalg.rref(cols)
    free = [i for i in range(n.dim) if i not in pivots]
    if free:
        un = n.rows()
        ct = []
        for f in free:
            v = [spec.zero()] * n.dim
            v[f] = spec.one()
            img = linalg.mat_vec(un, [tw(x) for x in v])
            resid = linalg.reduce_against(red, pivots, img)
            ct.append([resid[i] for i in free])
        d = len(free)
        cmatrix = tuple(tuple(ct[t][r] for t in range(d)) for r in range(d))
        cv = semilinear_nilpotent(SemilinearEndo(d, cmatrix, spec, n.direction))
        if not cv.is_nilpotent:
            return False
    return True
