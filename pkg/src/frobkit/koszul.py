"""Closed immersions presented by regular sequences, the pullback of Cartier
modules along them, the dualizing module of a complete-intersection quotient,
the determinant transition factor between two presenting sequences, and the
commutation check between pullback and the dualizing twist."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cartier import CartierModule, kappa_apply, volume_cartier_module
from .gamma import GammaSheaf, twist_to_cartier
from .polyring import (DEFAULT_SPAIR_BUDGET, FreeVector, Polynomial,
                       QuotientContext, RingContext, _reduce_vector,
                       buchberger, is_regular_sequence, mono_degree,
                       mono_lcm, mono_div, normal_form, submodule_equal)


@dataclass(frozen=True)
class ClosedImmersion:
    """V(f_1..f_c) -> Spec P for a regular sequence; ``target`` is the
    quotient context for the ideal the sequence generates."""

    ambient: RingContext
    seq: tuple[Polynomial, ...]
    target: QuotientContext

    @classmethod
    def create(cls, ambient: RingContext, seq,
               budget: int = DEFAULT_SPAIR_BUDGET) -> "ClosedImmersion":
        seq = tuple(seq)
        if not is_regular_sequence(list(seq), ambient, budget):
            raise ValueError("sequence is not regular")
        target = QuotientContext.from_generators(ambient, seq, budget)
        return cls(ambient, seq, target)

    @property
    def codim(self) -> int:
        return len(self.seq)

    def product(self) -> Polynomial:
        acc = Polynomial.one(self.ambient)
        for f in self.seq:
            acc = acc * f
        return acc


def cartier_pullback(m: CartierModule, im: ClosedImmersion,
                     budget: int = DEFAULT_SPAIR_BUDGET) -> CartierModule:
    """The induced Cartier module on M/IM for I = (f_1..f_c):
    kappa'(x^a e_j) = kappa((f_1...f_c)^(p-1) x^a e_j), relations extended by
    I e_j."""
    if m.ring != im.ambient:
        raise ValueError("module and immersion live over different rings")
    ring = m.ring
    p = ring.field.p
    factor = im.product() ** (p - 1)
    table: dict = {}
    for j in range(m.rank):
        base = FreeVector.unit(ring, m.rank, j, factor)
        for a in product(range(p), repeat=ring.nvars):
            v = kappa_apply(m, base.term_mul(a, ring.field.one()))
            if v:
                table[(j, a)] = v
    # the target ideal accumulates: pulling back a module that already lives
    # over P/I along V(seq) lands over P/(I + seq)
    if m.ctx.is_ambient:
        target = im.target
    else:
        combined = [g.comps[0] for g in m.ctx.ideal_gb.generators]
        combined.extend(im.seq)
        target = QuotientContext.from_generators(ring, combined, budget)
    return CartierModule.create(target, m.rank, m.relations.generators,
                                table, budget)


def dualizing_module(im: ClosedImmersion,
                     budget: int = DEFAULT_SPAIR_BUDGET) -> CartierModule:
    """omega of the complete-intersection quotient: the pullback of the
    ambient volume-form module along the immersion."""
    return cartier_pullback(volume_cartier_module(im.ambient), im, budget)


def gamma_pullback(n: GammaSheaf, im: ClosedImmersion,
                   budget: int = DEFAULT_SPAIR_BUDGET) -> GammaSheaf:
    """Pull a gamma-sheaf over the ambient ring back to the quotient: same
    matrix reduced mod I, relations extended by I e_j."""
    if n.ring != im.ambient:
        raise ValueError("sheaf and immersion live over different rings")
    if not n.ctx.is_ambient:
        raise ValueError("gamma pullback expects a sheaf over the ambient "
                         "ring")
    return GammaSheaf.create(im.target, n.rank, n.matrix,
                             n.relations.generators, budget)


# ---------------------------------------------------------------------------
# transition factor between two presenting sequences

@dataclass(frozen=True)
class TransitionMatrix:
    """g_i = sum_j C[i][j] f_j, plus det(C) reduced mod the common ideal."""

    matrix: tuple
    det: Polynomial


def _gb_with_cofactors(polys: list[Polynomial], ctx: RingContext,
                       budget: int = DEFAULT_SPAIR_BUDGET):
    """Buchberger that tracks, for every basis element h, a cofactor vector c
    with h = sum_j c_j * polys_j exactly."""
    basis: list[Polynomial] = []
    cof: list[list[Polynomial]] = []
    k = len(polys)
    zero = Polynomial.zero(ctx)
    for i, f in enumerate(polys):
        if f.is_zero():
            continue
        _, lc = f.leading()
        inv = lc.inverse()
        basis.append(f.scale(inv))
        cof.append([Polynomial.constant(ctx, 0) if j != i
                    else Polynomial.constant(ctx, 1).scale(inv)
                    for j in range(k)])

    def reduce_with_cof(h: Polynomial, hcof: list[Polynomial]):
        vecs = [FreeVector(ctx, (b,)) for b in basis]
        r, quots = _reduce_vector(FreeVector(ctx, (h,)), vecs,
                                  with_quotients=True)
        rcof = list(hcof)
        for q, bc in zip(quots, cof):
            if q.is_zero():
                continue
            rcof = [rc - q * bcj for rc, bcj in zip(rcof, bc)]
        return r.comps[0], rcof

    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    spent = 0
    while pairs:
        pairs.sort(key=lambda pr: (mono_degree(
            mono_lcm(basis[pr[0]].leading()[0], basis[pr[1]].leading()[0])),
            pr))
        i, j = pairs.pop(0)
        mi, _ = basis[i].leading()
        mj, _ = basis[j].leading()
        l = mono_lcm(mi, mj)
        if l == tuple(a + b for a, b in zip(mi, mj)):
            continue
        spent += 1
        if spent > budget:
            raise RuntimeError(f"cofactor S-pair budget {budget} exceeded")
        one = ctx.field.one()
        s = (basis[i].term_mul(mono_div(l, mi), one)
             - basis[j].term_mul(mono_div(l, mj), one))
        scof = [ci.term_mul(mono_div(l, mi), one)
                - cj.term_mul(mono_div(l, mj), one)
                for ci, cj in zip(cof[i], cof[j])]
        r, rcof = reduce_with_cof(s, scof)
        if r:
            _, lc = r.leading()
            inv = lc.inverse()
            new = len(basis)
            basis.append(r.scale(inv))
            cof.append([c.scale(inv) for c in rcof])
            pairs.extend((t, new) for t in range(new))
    return basis, cof


def _det(mat: list[list[Polynomial]], ctx: RingContext) -> Polynomial:
    n = len(mat)
    if n == 0:
        return Polynomial.one(ctx)
    if n == 1:
        return mat[0][0]
    acc = Polynomial.zero(ctx)
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [[row[t] for t in range(n) if t != j] for row in mat[1:]]
        term = mat[0][j] * _det(minor, ctx)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def transition_factor(f_seq, g_seq, ctx: RingContext,
                      budget: int = DEFAULT_SPAIR_BUDGET) -> TransitionMatrix:
    """A matrix C with g_i = sum_j C[i][j] f_j and its determinant mod the
    common ideal.  C is chosen deterministically; only det(C) mod I is
    canonical."""
    f_seq, g_seq = list(f_seq), list(g_seq)
    if len(f_seq) != len(g_seq):
        raise ValueError("sequences have different lengths")
    fgb = buchberger(f_seq, ctx, budget)
    ggb = buchberger(g_seq, ctx, budget)
    if not submodule_equal(fgb, ggb):
        raise ValueError("sequences generate different ideals")
    basis, cof = _gb_with_cofactors(f_seq, ctx, budget)
    vecs = [FreeVector(ctx, (b,)) for b in basis]
    rows = []
    for g in g_seq:
        r, quots = _reduce_vector(FreeVector(ctx, (g,)), vecs,
                                  with_quotients=True)
        if not r.comps[0].is_zero():
            raise ValueError("membership reduction failed")
        row = [Polynomial.zero(ctx) for _ in f_seq]
        for q, bc in zip(quots, cof):
            if q.is_zero():
                continue
            row = [rj + q * bcj for rj, bcj in zip(row, bc)]
        rows.append(row)
    # the defining identities hold exactly by construction; assert anyway
    for g, row in zip(g_seq, rows):
        acc = Polynomial.zero(ctx)
        for c, f in zip(row, f_seq):
            acc = acc + c * f
        if acc != g:
            raise AssertionError("transition identity failed")
    det = normal_form(_det(rows, ctx), fgb)
    return TransitionMatrix(tuple(tuple(r) for r in rows), det)


# ---------------------------------------------------------------------------
# commutation of pullback with the dualizing twist

@dataclass(frozen=True)
class CommutationCertificate:
    equal: bool
    discrepancies: tuple  # entries (j, a, route_a_value, route_b_value)


def check_pullback_twist_commutes(n: GammaSheaf, im: ClosedImmersion,
                                  budget: int = DEFAULT_SPAIR_BUDGET
                                  ) -> CommutationCertificate:
    """Compare the two routes from a gamma-sheaf over the ambient ring to a
    Cartier module over the quotient: (twist, then pull back) against (pull
    back, then twist with the dualizing factor of the sequence).  With the
    volume-form normalization used throughout, the canonical isomorphism is
    the identity, so the tables must agree entrywise."""
    route_a = cartier_pullback(twist_to_cartier(n, budget=budget), im, budget)
    route_b = twist_to_cartier(gamma_pullback(n, im, budget), seq=im.seq,
                               budget=budget)
    keys = set(route_a.kappa_table) | set(route_b.kappa_table)
    bad = []
    for key in sorted(keys):
        va = route_a.table_value(*key)
        vb = route_b.table_value(*key)
        if va != vb:
            bad.append((key[0], key[1], va, vb))
    return CommutationCertificate(not bad, tuple(bad))
