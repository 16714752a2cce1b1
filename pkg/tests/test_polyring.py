import random

import pytest

from frobkit.field import FieldSpec
from frobkit.polyring import (FreeVector, ParseError, Polynomial,
                              QuotientContext, RingContext, buchberger,
                              exact_divide, format_polynomial, format_vector,
                              ideal_quotient, is_regular_sequence,
                              module_buchberger, module_staircase,
                              normal_form, parse_polynomial, parse_vector,
                              saturate, submodule_equal)


@pytest.fixture
def ring2():
    return RingContext(FieldSpec(2), ("x", "y"))


@pytest.fixture
def ring3():
    return RingContext(FieldSpec(3), ("x", "y"))


def rand_poly(rng, ctx, max_deg=4, terms=5):
    acc = Polynomial.zero(ctx)
    for _ in range(rng.randint(0, terms)):
        m = tuple(rng.randint(0, max_deg) for _ in range(ctx.nvars))
        acc = acc + Polynomial.monomial(ctx, m, rng.randrange(1, ctx.field.p))
    return acc


# ---------------------------------------------------------------------------
# arithmetic and parsing

def test_ring_arithmetic(ring3):
    rng = random.Random(1)
    for _ in range(40):
        f, g, h = (rand_poly(rng, ring3) for _ in range(3))
        assert f * (g + h) == f * g + f * h
        assert f * g == g * f
        assert (f - f).is_zero()
        assert f ** 2 == f * f


def test_parse_format_round_trip(ring3):
    rng = random.Random(2)
    for _ in range(40):
        f = rand_poly(rng, ring3)
        assert parse_polynomial(ring3, format_polynomial(f)) == f


@pytest.mark.parametrize("text,expected_terms", [
    ("0", 0),
    ("x^2*y - 3*y^3", 2),
    ("2*x + x", 1),          # 3x = 0 over GF(3)? no: ring fixture is per test
    ("x*x*y", 1),
])
def test_parse_shapes(ring2, text, expected_terms):
    f = parse_polynomial(ring2, text)
    assert len(f.terms) <= max(expected_terms, 2)


def test_parse_errors(ring2):
    for bad in ("x +", "z^2", "x^", "x**2", "[x"):
        with pytest.raises(ParseError):
            parse_polynomial(ring2, bad)
    with pytest.raises(ParseError):
        parse_vector(ring2, 2, "x + y")  # rank-2 needs brackets
    with pytest.raises(ParseError):
        parse_vector(ring2, 2, "[x]")


def test_vector_round_trip(ring2):
    v = parse_vector(ring2, 2, "[x^2 + y, 1]")
    assert parse_vector(ring2, 2, format_vector(v)) == v


def test_monomial_orders():
    lex = RingContext(FieldSpec(2), ("x", "y"), "lex")
    grev = RingContext(FieldSpec(2), ("x", "y"), "grevlex")
    x2 = (2, 0)
    y3 = (0, 3)
    assert lex.monomial_key(x2) > lex.monomial_key(y3)
    assert grev.monomial_key(y3) > grev.monomial_key(x2)


# ---------------------------------------------------------------------------
# Groebner bases

def test_buchberger_katsura_like(ring2):
    x = Polynomial.variable(ring2, "x")
    y = Polynomial.variable(ring2, "y")
    gb = buchberger([x * x + y, x * y + Polynomial.one(ring2)])
    # membership of combinations
    f = (x * x + y) * y + (x * y + Polynomial.one(ring2)) * x
    assert normal_form(f, gb).is_zero()
    assert not normal_form(x, gb).is_zero()


def test_reduced_gb_is_canonical(ring3):
    rng = random.Random(3)
    for _ in range(10):
        gens = [rand_poly(rng, ring3, 3, 3) for _ in range(3)]
        gens = [g for g in gens if g]
        if not gens:
            continue
        gb1 = buchberger(gens, ring3)
        shuffled = list(gens)
        rng.shuffle(shuffled)
        gb2 = buchberger(shuffled, ring3)
        assert gb1.generators == gb2.generators


def test_normal_form_is_idempotent(ring2):
    rng = random.Random(4)
    x = Polynomial.variable(ring2, "x")
    y = Polynomial.variable(ring2, "y")
    gb = buchberger([x ** 3 + y, y ** 2 + x * y])
    for _ in range(30):
        f = rand_poly(rng, ring2, 6)
        r = normal_form(f, gb)
        assert normal_form(r, gb) == r
        assert normal_form(f - r, gb).is_zero()


def test_module_gb_position_over_term(ring2):
    x = Polynomial.variable(ring2, "x")
    e0 = FreeVector.unit(ring2, 2, 0)
    v1 = FreeVector(ring2, (x, Polynomial.one(ring2)))
    gb = module_buchberger([v1, e0.scale(x ** 2)], 2)
    assert normal_form(v1.scale(x ** 2), gb).is_zero()
    assert not normal_form(e0, gb).is_zero()


def test_submodule_equal(ring2):
    x = Polynomial.variable(ring2, "x")
    y = Polynomial.variable(ring2, "y")
    a = buchberger([x, y])
    b = buchberger([x + y, y])
    c = buchberger([x])
    assert submodule_equal(a, b)
    assert not submodule_equal(a, c)


# ---------------------------------------------------------------------------
# quotients, saturation, regularity

def test_exact_divide(ring3):
    rng = random.Random(5)
    for _ in range(30):
        f = rand_poly(rng, ring3, 3, 3)
        g = rand_poly(rng, ring3, 2, 2)
        if g.is_zero():
            continue
        assert exact_divide(f * g, g) == f


def test_ideal_quotient_and_saturation(ring2):
    x = Polynomial.variable(ring2, "x")
    y = Polynomial.variable(ring2, "y")
    i = buchberger([x * y, y * y])
    q = ideal_quotient(i, y)
    # (xy, y^2) : y = (x, y)
    assert submodule_equal(q, buchberger([x, y]))
    # y^2 lies in the ideal, so every f has f*y^2 in I: saturation is (1)
    s = saturate(i, y)
    assert s.is_unit_ideal()
    # saturating (xy) by y recovers (x)
    s2 = saturate(buchberger([x * y]), y)
    assert submodule_equal(s2, buchberger([x]))


def test_regular_sequences(ring2):
    x = Polynomial.variable(ring2, "x")
    y = Polynomial.variable(ring2, "y")
    one = Polynomial.one(ring2)
    assert is_regular_sequence([x, y], ring2)
    assert is_regular_sequence([x, x + y], ring2)
    assert not is_regular_sequence([x, x], ring2)
    assert not is_regular_sequence([x * y, x], ring2)  # zero divisor mod xy
    assert not is_regular_sequence([one], ring2)       # unit ideal
    assert not is_regular_sequence([], ring2)


def test_quotient_context_and_staircase():
    ring = RingContext(FieldSpec(3), ("x",))
    x = Polynomial.variable(ring, "x")
    ctx = QuotientContext.from_generators(ring, [x ** 4])
    assert ctx.dimension() == 4
    assert ctx.nf(x ** 5).is_zero()  # x^4 divides x^5
    assert ctx.nf(x ** 3) == x ** 3
    assert ctx.contains(x ** 4 * (x + Polynomial.one(ring)))
    amb = QuotientContext.trivial(ring)
    assert amb.staircase() is None


def test_module_staircase(ring2):
    x = Polynomial.variable(ring2, "x")
    y = Polynomial.variable(ring2, "y")
    gb = module_buchberger(
        [FreeVector.unit(ring2, 2, j, f) for j in range(2) for f in (x ** 2, y)],
        2)
    st = module_staircase(gb, 2)
    assert st is not None and len(st) == 4  # {e_j, x e_j}
    # infinite quotient: no relation in position 1
    gb2 = module_buchberger([FreeVector.unit(ring2, 2, 0, x)], 2)
    assert module_staircase(gb2, 2) is None
