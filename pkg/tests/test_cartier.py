import random

import pytest

from frobkit.cartier import (CartierModule, InfiniteDimensionalError,
                             SemilinearEndo, hom_commuting,
                             is_crystal_supported_on, is_nilpotent,
                             kappa_apply, kappa_lift, kappa_power,
                             nil_isomorphism_test, restrict_to_principal_open,
                             semilinear_nilpotent, stable_image,
                             to_semilinear, validate_cartier_structure,
                             volume_cartier_module)
from frobkit.field import FieldSpec
from frobkit.gamma import twist_to_cartier
from frobkit.polyring import (FreeVector, Polynomial, QuotientContext,
                              RingContext, normal_form, submodule_equal)
from frobkit.verify import random_gamma, random_polynomial

F2 = FieldSpec(2)
F3 = FieldSpec(3)


def ring(p, *names):
    return RingContext(FieldSpec(p), names)


def test_volume_module_basics():
    for p in (2, 3):
        r = ring(p, "x")
        vol = volume_cartier_module(r)
        assert validate_cartier_structure(vol)
        x = Polynomial.variable(r, "x")
        e = FreeVector.unit(r, 1, 0)
        # kappa(x^(p-1) e) = e
        assert kappa_apply(vol, e.scale(x ** (p - 1))) == e
        assert kappa_apply(vol, e).is_zero()


def test_kappa_apply_known_iterates():
    r = ring(2, "x")
    vol = volume_cartier_module(r)
    x = Polynomial.variable(r, "x")
    e = FreeVector.unit(r, 1, 0)
    assert kappa_apply(vol, e.scale(x)) == e
    # x^3 -> x -> 1
    assert kappa_power(vol, 2, e.scale(x ** 3)) == e
    assert kappa_power(vol, 0, e.scale(x ** 3)) == e.scale(x ** 3)
    r3 = ring(3, "x")
    vol3 = volume_cartier_module(r3)
    x3 = Polynomial.variable(r3, "x")
    e3 = FreeVector.unit(r3, 1, 0)
    assert kappa_apply(vol3, e3.scale(x3 ** 5)) == e3.scale(x3)


def test_semilinearity_random():
    rng = random.Random(42)
    for p in (2, 3):
        r = ring(p, "x", "y")
        ctx = QuotientContext.trivial(r)
        for _ in range(15):
            n = random_gamma(rng, ctx, rng.choice((1, 2)), max_deg=2)
            m = twist_to_cartier(n)
            h = random_polynomial(rng, r, 2, 3, nonzero=True)
            v = FreeVector(r, (random_polynomial(rng, r, 3, 3)
                               for _ in range(m.rank)))
            assert kappa_apply(m, v.scale(h ** p)) == \
                kappa_apply(m, v).scale(h)


def test_validate_rejects_inconsistent_table():
    r = ring(2, "x")
    x = Polynomial.variable(r, "x")
    ctx = QuotientContext.from_generators(r, [x])
    e = FreeVector.unit(r, 1, 0)
    # kappa(e) = e over R = k is fine
    good = CartierModule.create(ctx, 1, table={(0, (0,)): e})
    assert validate_cartier_structure(good)
    # but kappa(x e) = e is not: x e is a relation, its image must vanish
    bad = CartierModule.create(ctx, 1, table={(0, (1,)): e})
    ok, violations = validate_cartier_structure(bad, collect=True)
    assert not ok and violations


def test_kappa_lift_respects_relations_when_valid():
    rng = random.Random(9)
    r = ring(2, "x")
    x = Polynomial.variable(r, "x")
    ctx = QuotientContext.from_generators(r, [x ** 2])
    for _ in range(10):
        n = random_gamma(rng, ctx, 2, max_deg=1)
        m = twist_to_cartier(n, [x ** 2])
        assert validate_cartier_structure(m)
        for rho in m.relations.generators:
            assert m.nf(kappa_lift(m, rho)).is_zero()


def test_stable_image_chain_descends():
    rng = random.Random(13)
    r = ring(2, "x")
    x = Polynomial.variable(r, "x")
    ctx = QuotientContext.from_generators(r, [x ** 3])
    for _ in range(8):
        n = random_gamma(rng, ctx, 1, max_deg=2)
        m = twist_to_cartier(n, [x ** 3])
        res = stable_image(m)
        for upper, lower in zip(res.chain, res.chain[1:]):
            for g in lower.generators:
                assert normal_form(g, upper).is_zero()
        # one extra level stays put
        assert submodule_equal(res.chain[-1], res.stable)


def test_nilpotence_worked_instances():
    r = ring(2, "x")
    amb = QuotientContext.trivial(r)
    zero = CartierModule.create(amb, 1)
    v = is_nilpotent(zero)
    assert v.is_nilpotent and v.index == 1
    vol = volume_cartier_module(r)
    assert is_nilpotent(vol).status == "not_nilpotent"


def test_restrict_to_principal_open():
    r = ring(3, "x")
    x = Polynomial.variable(r, "x")
    vol = volume_cartier_module(r)
    loc = restrict_to_principal_open(vol, x)
    e = FreeVector.unit(r, 1, 0)
    # denominator 0 reduces to plain kappa
    img = loc.kappa(loc.element(e.scale(x ** 2), 0))
    assert img.power == 0 and img.numerator == e
    # the log form dx/x is fixed
    logf = loc.element(e, 1)
    assert loc.elements_equal(loc.kappa(logf), logf)
    # kappa((1/x^p) e) = kappa(e)/x = 0
    zero = loc.element(FreeVector.zero(r, 1), 0)
    assert loc.elements_equal(loc.kappa(loc.element(e, 3)), zero)


def test_restrict_rejects_ideal_member():
    r = ring(2, "x")
    x = Polynomial.variable(r, "x")
    ctx = QuotientContext.from_generators(r, [x])
    m = CartierModule.create(ctx, 1)
    with pytest.raises(ValueError):
        restrict_to_principal_open(m, x)


def test_crystal_support():
    r = ring(2, "x", "y")
    x = Polynomial.variable(r, "x")
    ctx = QuotientContext.from_generators(r, [x])
    torsion = CartierModule.create(ctx, 1,
                                   table={(0, (0, 0)): FreeVector.unit(r, 1, 0)})
    assert is_crystal_supported_on(torsion, [x])
    vol = volume_cartier_module(r)
    assert not is_crystal_supported_on(vol, [x])
    amb = QuotientContext.trivial(r)
    zero = CartierModule.create(amb, 1)
    assert is_crystal_supported_on(zero, [x])


def test_to_semilinear_shapes():
    r = ring(2, "x")
    x = Polynomial.variable(r, "x")
    ctx = QuotientContext.from_generators(r, [x ** 2])
    zero = CartierModule.create(ctx, 1)
    t = to_semilinear(zero)
    assert t.dim == 2
    assert all(not c for row in t.matrix for c in row)
    amb = QuotientContext.trivial(r)
    with pytest.raises(InfiniteDimensionalError):
        to_semilinear(CartierModule.create(amb, 1))


def test_semilinear_nilpotent_cases():
    f2 = F2
    zero = SemilinearEndo(2, ((f2.zero(),) * 2,) * 2, f2)
    v = semilinear_nilpotent(zero)
    assert v.is_nilpotent and v.index == 1
    ident = SemilinearEndo(2, ((f2.one(), f2.zero()), (f2.zero(), f2.one())),
                           f2)
    assert semilinear_nilpotent(ident).status == "not_nilpotent"
    swap = SemilinearEndo(2, ((f2.zero(), f2.one()), (f2.one(), f2.zero())),
                          f2)
    assert semilinear_nilpotent(swap).status == "not_nilpotent"
    upper = SemilinearEndo(2, ((f2.zero(), f2.one()), (f2.zero(), f2.zero())),
                           f2)
    v = semilinear_nilpotent(upper)
    assert v.is_nilpotent and v.index == 2


def test_tier_agreement_random():
    rng = random.Random(77)
    for p in (2, 3):
        r = ring(p, "x")
        x = Polynomial.variable(r, "x")
        for k in (1, 2):
            ctx = QuotientContext.from_generators(r, [x ** k])
            for _ in range(8):
                n = random_gamma(rng, ctx, rng.choice((1, 2)), max_deg=k - 1)
                m = twist_to_cartier(n, [x ** k])
                a = is_nilpotent(m)
                b = semilinear_nilpotent(to_semilinear(m))
                assert a.is_nilpotent == b.is_nilpotent


def test_hom_commuting_dimensions():
    one = SemilinearEndo(1, ((F2.one(),),), F2)
    assert len(hom_commuting(one, one)) == 1
    ident = SemilinearEndo(2, ((F2.one(), F2.zero()),
                               (F2.zero(), F2.one())), F2)
    assert len(hom_commuting(ident, ident)) == 4
    gf4 = FieldSpec(2, 2, (1, 1, 1))
    unit = SemilinearEndo(1, ((gf4.one(),),), gf4)
    # c = c^(1/2) forces c in the prime field: dimension 1
    assert len(hom_commuting(unit, unit)) == 1


def test_hom_direction_mismatch():
    fwd = SemilinearEndo(1, ((F2.one(),),), F2, "forward")
    inv = SemilinearEndo(1, ((F2.one(),),), F2, "inverse")
    with pytest.raises(ValueError):
        hom_commuting(fwd, inv)


def test_nil_isomorphism():
    ident_map = ((F2.one(), F2.zero()), (F2.zero(), F2.one()))
    ident = SemilinearEndo(2, ident_map, F2)
    assert nil_isomorphism_test(ident_map, ident, ident)
    zero_map = ((F2.zero(), F2.zero()), (F2.zero(), F2.zero()))
    # zero map between non-nilpotent objects: kernel operator not nilpotent
    assert not nil_isomorphism_test(zero_map, ident, ident)
    # zero map between nilpotent objects is a nil-isomorphism
    upper = SemilinearEndo(2, ((F2.zero(), F2.one()),
                               (F2.zero(), F2.zero())), F2)
    assert nil_isomorphism_test(zero_map, upper, upper)


def test_nil_isomorphism_requires_commuting():
    ident = SemilinearEndo(2, ((F2.one(), F2.zero()),
                               (F2.zero(), F2.one())), F2)
    upper = SemilinearEndo(2, ((F2.zero(), F2.one()),
                               (F2.zero(), F2.zero())), F2)
    phi = ((F2.one(), F2.zero()), (F2.zero(), F2.one()))
    with pytest.raises(ValueError):
        nil_isomorphism_test(phi, ident, upper)
