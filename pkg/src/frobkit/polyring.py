"""Sparse multivariate polynomials over GF(p^e), monomial orders, Buchberger
Groebner bases for ideals and for submodules of free modules, normal forms,
quotients, saturation, and regular-sequence testing.

Monomials are plain exponent tuples.  Module term order is position-over-term
with e_0 > e_1 > ...; within a position the ring's order (lex or grevlex)
applies.  All computation is exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .field import FieldElement, FieldSpec

Monomial = tuple  # exponent vectors; length = number of ring variables

DEFAULT_SPAIR_BUDGET = 50_000


class BudgetExceededError(RuntimeError):
    """An S-pair or iteration budget was exhausted before completion."""


class RankMismatchError(ValueError):
    """Vector or basis rank does not match the ambient free module."""


class ParseError(ValueError):
    """Polynomial text does not conform to the input grammar."""


# ---------------------------------------------------------------------------
# monomial helpers

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


@dataclass(frozen=True)
class RingContext:
    """The ambient polynomial ring k[x_1..x_n] with a fixed term order."""

    field: FieldSpec
    vars: tuple[str, ...]
    order: str = "grevlex"

    def __post_init__(self) -> None:
        if len(self.vars) < 1:
            raise ValueError("need at least one variable")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variable names must be distinct")
        if self.order not in ("lex", "grevlex"):
            raise ValueError(f"unknown order {self.order!r}")
        object.__setattr__(self, "vars", tuple(self.vars))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def monomial_key(self, m: Monomial):
        """Sort key: larger key means larger monomial."""
        if self.order == "lex":
            return m
        return (sum(m), tuple(-x for x in reversed(m)))

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "order": self.order}


class Polynomial:
    """Immutable sparse polynomial: a finite map exponent-tuple -> coefficient.
    Zero coefficients are never stored."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: RingContext, terms: Optional[dict] = None, *,
                 _clean: bool = True):
        self.ctx = ctx
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = {m: c for m, c in terms.items() if c}
        else:
            self.terms = terms

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ctx: RingContext) -> "Polynomial":
        return cls(ctx, None)

    @classmethod
    def constant(cls, ctx: RingContext, c) -> "Polynomial":
        if isinstance(c, int):
            c = ctx.field.from_int(c)
        m = (0,) * ctx.nvars
        return cls(ctx, {m: c})

    @classmethod
    def one(cls, ctx: RingContext) -> "Polynomial":
        return cls.constant(ctx, 1)

    @classmethod
    def variable(cls, ctx: RingContext, name: str) -> "Polynomial":
        i = ctx.vars.index(name)
        m = tuple(1 if j == i else 0 for j in range(ctx.nvars))
        return cls(ctx, {m: ctx.field.one()})

    @classmethod
    def monomial(cls, ctx: RingContext, expvec, coeff=None) -> "Polynomial":
        if coeff is None:
            coeff = ctx.field.one()
        elif isinstance(coeff, int):
            coeff = ctx.field.from_int(coeff)
        return cls(ctx, {tuple(expvec): coeff})

    # -- predicates / views -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial) and self.ctx == other.ctx
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def leading(self) -> tuple[Monomial, FieldElement]:
        key = self.ctx.monomial_key
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, FieldElement]]:
        key = self.ctx.monomial_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] + c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c
        return Polynomial(self.ctx, out, _clean=False)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = out[m] - c
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = -c
        return Polynomial(self.ctx, out, _clean=False)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ctx, {m: -c for m, c in self.terms.items()},
                          _clean=False)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            out: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mono_mul(m1, m2)
                    c = c1 * c2
                    if m in out:
                        s = out[m] + c
                        if s:
                            out[m] = s
                        else:
                            del out[m]
                    elif c:
                        out[m] = c
            return Polynomial(self.ctx, out, _clean=False)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        if isinstance(c, int):
            c = self.ctx.field.from_int(c)
        if not c:
            return Polynomial.zero(self.ctx)
        return Polynomial(self.ctx, {m: k * c for m, k in self.terms.items()},
                          _clean=False)

    def term_mul(self, mono: Monomial, coeff: FieldElement) -> "Polynomial":
        if not coeff:
            return Polynomial.zero(self.ctx)
        return Polynomial(self.ctx,
                          {mono_mul(m, mono): c * coeff
                           for m, c in self.terms.items()}, _clean=False)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading()
        return self.scale(c.inverse())

    def frobenius_twist(self, k: int = 1) -> "Polynomial":
        """Coefficients to the p^k, exponents times p^k (equals f^(p^k) in
        characteristic p)."""
        q = self.ctx.field.p ** k
        return Polynomial(self.ctx,
                          {tuple(e * q for e in m): c ** q
                           for m, c in self.terms.items()}, _clean=False)

    def evaluate(self, coords: tuple[FieldElement, ...],
                 target: Optional[FieldSpec] = None) -> FieldElement:
        """Evaluate at a point with coordinates in ``target`` (defaults to the
        field of the coordinates).  Base-field coefficients embed into the
        point field via the prime subfield; extension coefficients require the
        point field to equal the base field."""
        if target is None:
            target = coords[0].spec if coords else self.ctx.field
        base = self.ctx.field
        if base.e > 1 and target != base:
            raise ValueError("extension base fields require points with "
                             "coordinates in the base field itself")
        acc = target.zero()
        for m, c in self.terms.items():
            cv = c if base == target else target.from_int(c.coeffs[0])
            for x, e in zip(coords, m):
                if e:
                    cv = cv * x ** e
            acc = acc + cv
        return acc

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


class FreeVector:
    """An element of the free module P^s; components are Polynomials."""

    __slots__ = ("ctx", "comps")

    def __init__(self, ctx: RingContext, comps: Iterable[Polynomial]):
        self.ctx = ctx
        self.comps = tuple(comps)

    @classmethod
    def zero(cls, ctx: RingContext, rank: int) -> "FreeVector":
        z = Polynomial.zero(ctx)
        return cls(ctx, (z,) * rank)

    @classmethod
    def unit(cls, ctx: RingContext, rank: int, j: int,
             poly: Optional[Polynomial] = None) -> "FreeVector":
        if poly is None:
            poly = Polynomial.one(ctx)
        z = Polynomial.zero(ctx)
        return cls(ctx, tuple(poly if i == j else z for i in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeVector) and self.comps == other.comps

    def __hash__(self) -> int:
        return hash(self.comps)

    def __add__(self, other: "FreeVector") -> "FreeVector":
        return FreeVector(self.ctx, (a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other: "FreeVector") -> "FreeVector":
        return FreeVector(self.ctx, (a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> "FreeVector":
        return FreeVector(self.ctx, (-a for a in self.comps))

    def scale(self, f) -> "FreeVector":
        if isinstance(f, (int, FieldElement)):
            return FreeVector(self.ctx, (a.scale(f) for a in self.comps))
        return FreeVector(self.ctx, (a * f for a in self.comps))

    def term_mul(self, mono: Monomial, coeff: FieldElement) -> "FreeVector":
        return FreeVector(self.ctx, (a.term_mul(mono, coeff) for a in self.comps))

    def leading(self) -> tuple[int, Monomial, FieldElement]:
        """Position-over-term leading term: smallest nonzero position wins."""
        for j, comp in enumerate(self.comps):
            if comp:
                m, c = comp.leading()
                return j, m, c
        raise ValueError("zero vector has no leading term")

    def monic(self) -> "FreeVector":
        if self.is_zero():
            return self
        _, _, c = self.leading()
        return self.scale(c.inverse())

    def __repr__(self) -> str:
        return f"FreeVector([{', '.join(map(format_polynomial, self.comps))}])"


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis of an ideal (rank 1) or of a submodule of a
    free module (position-over-term order)."""

    ctx: RingContext
    rank: int
    generators: tuple[FreeVector, ...]
    reduced: bool = True

    @property
    def polys(self) -> list[Polynomial]:
        if self.rank != 1:
            raise RankMismatchError("polys view requires rank 1")
        return [g.comps[0] for g in self.generators]

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit_ideal(self) -> bool:
        return (self.rank == 1 and len(self.generators) == 1
                and self.generators[0].comps[0].terms.keys()
                == {(0,) * self.ctx.nvars})


# ---------------------------------------------------------------------------
# division / normal form

def _as_vector(f, rank: int = 1) -> FreeVector:
    if isinstance(f, FreeVector):
        return f
    return FreeVector(f.ctx, (f,))


def _reduce_vector(v: FreeVector, gens: list[FreeVector],
                   with_quotients: bool = False):
    """Full multivariate division: returns the remainder (and the quotient
    polynomials against ``gens`` when requested).  Generators must be monic."""
    ctx = v.ctx
    key = ctx.monomial_key
    leads = [g.leading() for g in gens]
    work = [dict(c.terms) for c in v.comps]
    rem = [dict() for _ in v.comps]
    quots = [dict() for _ in gens] if with_quotients else None

    while True:
        best = None
        for j, terms in enumerate(work):
            if not terms:
                continue
            # positions are scanned in increasing order, so first nonzero wins
            best = (j, max(terms, key=key))
            break
        else:
            break
        j, m = best
        c = work[j][m]
        for gi, (gpos, gm, _) in enumerate(leads):
            if gpos == j and mono_divides(gm, m):
                shift = mono_div(m, gm)
                g = gens[gi]
                for pos, comp in enumerate(g.comps):
                    tgt = work[pos]
                    for mm, cc in comp.terms.items():
                        mmm = mono_mul(mm, shift)
                        prod = cc * c
                        if mmm in tgt:
                            s = tgt[mmm] - prod
                            if s:
                                tgt[mmm] = s
                            else:
                                del tgt[mmm]
                        else:
                            tgt[mmm] = -prod
                if with_quotients:
                    q = quots[gi]
                    if shift in q:
                        s = q[shift] + c
                        if s:
                            q[shift] = s
                        else:
                            del q[shift]
                    else:
                        q[shift] = c
                break
        else:
            rem[j][m] = c
            del work[j][m]

    remainder = FreeVector(ctx, (Polynomial(ctx, d, _clean=False) for d in rem))
    if with_quotients:
        return remainder, [Polynomial(ctx, q, _clean=False) for q in quots]
    return remainder


def normal_form(f, gb: GroebnerBasis):
    """Remainder of multivariate division by a Groebner basis.  Zero exactly
    for members.  Accepts a Polynomial (rank 1) or a FreeVector."""
    poly_input = isinstance(f, Polynomial)
    v = _as_vector(f)
    if v.rank != gb.rank:
        raise RankMismatchError(f"rank {v.rank} vs basis rank {gb.rank}")
    if not gb.generators:
        return f
    r = _reduce_vector(v, list(gb.generators))
    return r.comps[0] if poly_input else r


# ---------------------------------------------------------------------------
# Buchberger

def _spair(f: FreeVector, g: FreeVector) -> FreeVector:
    fj, fm, fc = f.leading()
    gj, gm, gc = g.leading()
    l = mono_lcm(fm, gm)
    one = f.ctx.field.one()
    a = f.term_mul(mono_div(l, fm), one)
    b = g.term_mul(mono_div(l, gm), fc / gc)
    return a - b


def _interreduce(basis: list[FreeVector], ctx: RingContext,
                 rank: int) -> GroebnerBasis:
    basis = [b.monic() for b in basis if b]
    key = ctx.monomial_key
    basis.sort(key=lambda v: (v.leading()[0], key(v.leading()[1])))
    minimal: list[FreeVector] = []
    for g in basis:
        gj, gm, _ = g.leading()
        if any(h.leading()[0] == gj and mono_divides(h.leading()[1], gm)
               for h in minimal):
            continue
        minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = _reduce_vector(g, others) if others else g
        if r:
            reduced.append(r.monic())
    reduced.sort(key=lambda v: (v.leading()[0], key(v.leading()[1])))
    return GroebnerBasis(ctx, rank, tuple(reduced))


def module_buchberger(vectors: Iterable[FreeVector], rank: int,
                      ctx: Optional[RingContext] = None,
                      budget: int = DEFAULT_SPAIR_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule of P^rank generated by
    ``vectors`` (position-over-term).  Raises BudgetExceededError when more
    than ``budget`` S-pairs must be reduced."""
    vectors = [v for v in vectors if v]
    if ctx is None:
        if not vectors:
            raise ValueError("need a ring context for the empty basis")
        ctx = vectors[0].ctx
    for v in vectors:
        if v.rank != rank:
            raise RankMismatchError("generator rank mismatch")
    if not vectors:
        return GroebnerBasis(ctx, rank, ())

    basis = [v.monic() for v in vectors]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))
             if basis[i].leading()[0] == basis[j].leading()[0]]
    spent = 0
    while pairs:
        def lcm_deg(pr):
            i, j = pr
            return mono_degree(mono_lcm(basis[i].leading()[1],
                                        basis[j].leading()[1]))
        pairs.sort(key=lambda pr: (lcm_deg(pr), pr))
        i, j = pairs.pop(0)
        mi, mj = basis[i].leading()[1], basis[j].leading()[1]
        if rank == 1 and mono_lcm(mi, mj) == mono_mul(mi, mj):
            continue  # product criterion
        spent += 1
        if spent > budget:
            raise BudgetExceededError(f"S-pair budget {budget} exceeded")
        r = _reduce_vector(_spair(basis[i], basis[j]), basis)
        if r:
            r = r.monic()
            pos = r.leading()[0]
            new = len(basis)
            basis.append(r)
            pairs.extend((k, new) for k in range(new)
                         if basis[k].leading()[0] == pos)
    return _interreduce(basis, ctx, rank)


def buchberger(polys: Iterable[Polynomial],
               ctx: Optional[RingContext] = None,
               budget: int = DEFAULT_SPAIR_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``."""
    polys = list(polys)
    if ctx is None:
        if not polys:
            raise ValueError("need a ring context for the empty basis")
        ctx = polys[0].ctx
    return module_buchberger([_as_vector(f) for f in polys], 1, ctx, budget)


def submodule_equal(a: GroebnerBasis, b: GroebnerBasis) -> bool:
    """True iff the two bases generate the same submodule."""
    if a.ctx != b.ctx or a.rank != b.rank:
        raise RankMismatchError("bases live in different modules")
    return (all(normal_form(g, b).is_zero() for g in a.generators)
            and all(normal_form(g, a).is_zero() for g in b.generators))


# ---------------------------------------------------------------------------
# exact division, quotients, saturation

def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """The quotient f/g when g divides f exactly; raises otherwise."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ctx = f.ctx
    gm, gc = g.leading()
    out: dict = {}
    work = dict(f.terms)
    key = ctx.monomial_key
    while work:
        m = max(work, key=key)
        c = work[m]
        if not mono_divides(gm, m):
            raise ValueError("not exactly divisible")
        shift = mono_div(m, gm)
        q = c / gc
        out[shift] = q
        for mm, cc in g.terms.items():
            mmm = mono_mul(mm, shift)
            prod = cc * q
            if mmm in work:
                s = work[mmm] - prod
                if s:
                    work[mmm] = s
                else:
                    del work[mmm]
            else:
                work[mmm] = -prod
    return Polynomial(ctx, out, _clean=False)


def _elim_ctx(ctx: RingContext) -> RingContext:
    return RingContext(ctx.field, ("~t",) + ctx.vars, "lex")


def _lift_poly(f: Polynomial, ectx: RingContext, tdeg: int = 0) -> Polynomial:
    return Polynomial(ectx, {(tdeg,) + m: c for m, c in f.terms.items()},
                      _clean=False)


def _project_poly(f: Polynomial, ctx: RingContext) -> Polynomial:
    return Polynomial(ctx, {m[1:]: c for m, c in f.terms.items()}, _clean=False)


def module_quotient(n: GroebnerBasis, h: Polynomial,
                    budget: int = DEFAULT_SPAIR_BUDGET) -> GroebnerBasis:
    """(N : h) = {v : h*v in N}, via elimination: t*N + (1-t)*h*P^s, then
    dividing the t-free part by h."""
    if h.is_zero():
        raise ValueError("quotient by zero")
    ctx, rank = n.ctx, n.rank
    if not n.generators:
        return n
    ectx = _elim_ctx(ctx)
    t = Polynomial.monomial(ectx, (1,) + (0,) * ctx.nvars)
    one_minus_t = Polynomial.one(ectx) - t
    lifted = [FreeVector(ectx, (t * _lift_poly(c, ectx) for c in v.comps))
              for v in n.generators]
    hl = _lift_poly(h, ectx)
    for j in range(rank):
        lifted.append(FreeVector.unit(ectx, rank, j, one_minus_t * hl))
    egb = module_buchberger(lifted, rank, ectx, budget)
    out = []
    for v in egb.generators:
        if all(m[0] == 0 for c in v.comps for m in c.terms):
            proj = FreeVector(ctx, (_project_poly(c, ctx) for c in v.comps))
            out.append(FreeVector(ctx, (exact_divide(c, h) if c else c
                                        for c in proj.comps)))
    return module_buchberger(out, rank, ctx, budget)


def ideal_quotient(i_gb: GroebnerBasis, g: Polynomial,
                   budget: int = DEFAULT_SPAIR_BUDGET) -> GroebnerBasis:
    """(I : g), computed by the elimination construction."""
    if i_gb.rank != 1:
        raise RankMismatchError("ideal quotient needs a rank-1 basis")
    return module_quotient(i_gb, g, budget)


def saturate(n: GroebnerBasis, h: Polynomial,
             budget: int = DEFAULT_SPAIR_BUDGET,
             max_rounds: int = 64) -> GroebnerBasis:
    """(N : h^infinity): iterate quotients by h until they stabilize."""
    cur = n
    for _ in range(max_rounds):
        nxt = module_quotient(cur, h, budget)
        if submodule_equal(cur, nxt):
            return cur
        cur = nxt
    raise BudgetExceededError("saturation did not stabilize within "
                              f"{max_rounds} rounds")


def ideal_equal(a: GroebnerBasis, b: GroebnerBasis) -> bool:
    return submodule_equal(a, b)


def is_regular_sequence(seq: list[Polynomial], ctx: RingContext,
                        budget: int = DEFAULT_SPAIR_BUDGET) -> bool:
    """True iff each f_i is a nonzerodivisor modulo its predecessors and the
    sequence does not generate the unit ideal."""
    seq = list(seq)
    if not seq or any(f.is_zero() for f in seq):
        return False
    if buchberger(seq, ctx, budget).is_unit_ideal():
        return False
    prev: list[Polynomial] = []
    for f in seq:
        if prev:
            pgb = buchberger(prev, ctx, budget)
            q = ideal_quotient(pgb, f, budget)
            if not submodule_equal(q, pgb):
                return False
        prev.append(f)
    return True


# ---------------------------------------------------------------------------
# quotient contexts and staircases

def module_staircase(gb: GroebnerBasis, rank: int) -> Optional[list[tuple[int, Monomial]]]:
    """Monomial basis (j, x^b) of P^rank / <gb>, or None when infinite."""
    ctx = gb.ctx
    n = ctx.nvars
    leads: dict[int, list[Monomial]] = {j: [] for j in range(rank)}
    for g in gb.generators:
        j, m, _ = g.leading()
        leads[j].append(m)
    out: list[tuple[int, Monomial]] = []
    for j in range(rank):
        ms = leads[j]
        bounds = []
        for i in range(n):
            pure = [m[i] for m in ms if all(m[k] == 0 for k in range(n) if k != i)
                    and m[i] > 0]
            if not pure:
                # unit relation at this position makes the fiber empty
                if any(all(x == 0 for x in m) for m in ms):
                    bounds = []
                    break
                return None
            bounds.append(min(pure))
        if bounds == [] and ms and any(all(x == 0 for x in m) for m in ms):
            continue
        from itertools import product as _product
        for b in _product(*(range(bd) for bd in bounds)):
            if not any(mono_divides(m, b) for m in ms):
                out.append((j, b))
    out.sort(key=lambda jm: (jm[0], ctx.monomial_key(jm[1])))
    return out


@dataclass(frozen=True)
class QuotientContext:
    """The quotient ring R = P/I presented by a reduced Groebner basis."""

    ring: RingContext
    ideal_gb: GroebnerBasis

    @classmethod
    def from_generators(cls, ring: RingContext, gens: Iterable[Polynomial],
                        budget: int = DEFAULT_SPAIR_BUDGET) -> "QuotientContext":
        gens = [g for g in gens if not g.is_zero()]
        gb = (buchberger(gens, ring, budget) if gens
              else GroebnerBasis(ring, 1, ()))
        return cls(ring, gb)

    @classmethod
    def trivial(cls, ring: RingContext) -> "QuotientContext":
        return cls(ring, GroebnerBasis(ring, 1, ()))

    def nf(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.ideal_gb)

    def contains(self, f: Polynomial) -> bool:
        return self.nf(f).is_zero()

    def staircase(self) -> Optional[list[Monomial]]:
        st = module_staircase(self.ideal_gb, 1)
        if st is None:
            return None
        return [m for _, m in st]

    def dimension(self) -> Optional[int]:
        st = self.staircase()
        return None if st is None else len(st)

    @property
    def is_ambient(self) -> bool:
        return not self.ideal_gb.generators


# ---------------------------------------------------------------------------
# text grammar

_TERM_RE = re.compile(r"[+-]?[^+-]+")
_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def parse_polynomial(ctx: RingContext, text: str) -> Polynomial:
    """Parse the session grammar: terms joined by +/-, each term a product of
    an optional integer coefficient and powers ``var^k`` joined by '*'."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return Polynomial.zero(ctx)
    if s[0] not in "+-":
        s = "+" + s
    pos = 0
    acc = Polynomial.zero(ctx)
    for tok in _TERM_RE.finditer(s):
        if tok.start() != pos:
            raise ParseError(f"cannot parse {text!r} at offset {tok.start()}")
        pos = tok.end()
        body = tok.group(0)
        sign = -1 if body[0] == "-" else 1
        body = body.lstrip("+-")
        if not body:
            raise ParseError(f"empty term in {text!r}")
        coeff = sign
        exps = [0] * ctx.nvars
        for part in body.split("*"):
            if part.isdigit():
                coeff *= int(part)
                continue
            m = _FACTOR_RE.match(part)
            if not m:
                raise ParseError(f"bad factor {part!r} in {text!r}")
            name, k = m.group(1), int(m.group(2) or 1)
            if name not in ctx.vars:
                raise ParseError(f"undeclared variable {name!r} in {text!r}")
            exps[ctx.vars.index(name)] += k
        acc = acc + Polynomial.monomial(ctx, exps, coeff)
    if pos != len(s):
        raise ParseError(f"cannot parse {text!r}")
    return acc


def format_polynomial(f: Polynomial) -> str:
    """Canonical text form: terms sorted descending by the ring order."""
    if f.is_zero():
        return "0"
    ctx = f.ctx
    pieces = []
    for idx, (m, c) in enumerate(f.sorted_terms()):
        factors = []
        for name, e in zip(ctx.vars, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        cstr = str(c)
        if factors and cstr == "1":
            body = "*".join(factors)
        elif factors:
            body = cstr + "*" + "*".join(factors)
        else:
            body = cstr
        pieces.append(("" if idx == 0 else " + ") + body)
    return "".join(pieces)


def parse_vector(ctx: RingContext, rank: int, text: str) -> FreeVector:
    """Vector grammar: either a bare polynomial (rank 1) or a bracketed
    comma-separated component list ``[p1, p2, ...]``."""
    s = text.strip()
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError(f"unterminated vector {text!r}")
        parts = s[1:-1].split(",") if s[1:-1].strip() else []
        if len(parts) != rank:
            raise ParseError(f"vector {text!r} has {len(parts)} components, "
                             f"expected {rank}")
        return FreeVector(ctx, (parse_polynomial(ctx, p) for p in parts))
    if rank != 1:
        raise ParseError(f"rank-{rank} vectors need bracket syntax: {text!r}")
    return FreeVector(ctx, (parse_polynomial(ctx, s),))


def format_vector(v: FreeVector) -> str:
    if v.rank == 1:
        return format_polynomial(v.comps[0])
    return "[" + ", ".join(format_polynomial(c) for c in v.comps) + "]"
