import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import kronecker_symbol

from resultant_sieve.classgroup import (
    BQF,
    S_minus,
    class_number_neg,
    compose,
    count_representations,
    form_order,
    form_power,
    fundamental_discriminants,
    group_structure,
    h_parts,
    is_fundamental,
    is_reduced_neg,
    n_torsion_count,
    principal_form,
    reduce_neg,
    reduce_neg_with_transform,
    reduced_forms_neg,
    reduced_pos_enumerate,
)

TABLE = {-3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 2, -20: 2, -23: 3, -24: 2, -47: 5}


def analytic_h(d):
    """Dirichlet's class number formula for d < 0 fundamental."""
    w = {-3: 6, -4: 4}.get(d, 2)
    s = sum(kronecker_symbol(d, a) * a for a in range(1, -d))
    h = -w * s / (2 * -d)
    assert h == int(h)
    return int(h)


def dirichlet_compose(f, g):
    """United forms (gcd(a1, a2) = 1): solve for B by search and build (a1 a2, B, .)."""
    D = f.disc
    m = f.a * g.a
    for B in range(-m, m + 1):
        if (B - f.b) % (2 * f.a) == 0 and (B - g.b) % (2 * g.a) == 0 and (B * B - D) % (4 * m) == 0:
            return reduce_neg(BQF(m, B, (B * B - D) // (4 * m)))
    raise AssertionError("no B")


def test_fundamental_enumeration():
    assert fundamental_discriminants(-25, 0) == [-24, -23, -20, -19, -15, -11, -8, -7, -4, -3]
    assert not is_fundamental(-12) and not is_fundamental(-16) and is_fundamental(5)


def test_class_number_table():
    for d, h in TABLE.items():
        assert class_number_neg(d)[0] == h == analytic_h(d)


def test_class_number_analytic_range():
    for d in fundamental_discriminants(-1500, 0):
        assert class_number_neg(d)[0] == analytic_h(d), d


def test_reduced_examples():
    assert class_number_neg(-3)[1] == [BQF(1, 1, 1)]
    assert set(class_number_neg(-23)[1]) == {BQF(1, 1, 6), BQF(2, 1, 3), BQF(2, -1, 3)}
    assert reduce_neg(BQF(2, 2, 3)) == BQF(2, 2, 3)
    assert reduce_neg(BQF(1, 5, 7)) == BQF(1, 1, 1)
    assert reduce_neg(BQF(3, 2, 1)) == BQF(1, 0, 2)
    with pytest.raises(ValueError):
        class_number_neg(-12)


pos_def = st.tuples(st.integers(1, 60), st.integers(-80, 80), st.integers(1, 60)).filter(
    lambda t: t[1] ** 2 - 4 * t[0] * t[2] < 0
).map(lambda t: BQF(*t))


@settings(max_examples=300, deadline=None)
@given(pos_def)
def test_reduction_transform(f):
    g, ((al, be), (ga, de)) = reduce_neg_with_transform(f)
    assert al * de - be * ga == 1
    assert f.transform(al, be, ga, de) == g
    assert g.disc == f.disc and is_reduced_neg(g)
    assert reduce_neg(g) == g


def test_reduced_list_matches_brute():
    for d in (-23, -47, -56, -84, -419):
        brute = {BQF(a, b, c) for a in range(1, 20) for b in range(-a + 1, a + 1) for c in range(a, 200)
                 if b * b - 4 * a * c == d and math.gcd(a, b, c) == 1 and is_reduced_neg(BQF(a, b, c))}
        assert set(reduced_forms_neg(d)) == brute


def test_compose_examples():
    for f in class_number_neg(-23)[1]:
        assert compose(BQF(1, 1, 6), f) == f
    assert compose(BQF(2, 1, 3), BQF(2, 1, 3)) == BQF(2, -1, 3)
    assert compose(BQF(2, 0, 7), BQF(2, 0, 7)) == BQF(1, 0, 14)
    with pytest.raises(ValueError):
        compose(BQF(1, 1, 1), BQF(1, 0, 1))


@pytest.mark.parametrize("d", [-23, -47, -56, -71, -84, -120, -231, -399, -4027])
def test_group_axioms(d):
    forms = reduced_forms_neg(d)
    e = principal_form(d)
    rng = random.Random(d)
    for f in forms:
        assert compose(e, f) == f
        assert compose(f, f.inverse()) == e
    for _ in range(60):
        f, g, h = (rng.choice(forms) for _ in range(3))
        assert compose(f, g) == compose(g, f)
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


@pytest.mark.parametrize("d", [-47, -71, -104, -231, -1151])
def test_compose_dirichlet_oracle(d):
    forms = reduced_forms_neg(d)
    for f, g in itertools.product(forms, repeat=2):
        if math.gcd(f.a, g.a) == 1:
            assert compose(f, g) == dirichlet_compose(f, g)


def test_structure_examples():
    assert group_structure(-23).invariant_factors == (3,)
    assert group_structure(-56).invariant_factors == (4,)
    assert group_structure(-3).invariant_factors == ()
    assert group_structure(-420).invariant_factors == (2, 2, 2)
    assert h_parts(-15) == (2, 1, 2)
    assert h_parts(-23, 3) == (3, 3, 3)
    assert h_parts(-23, 1)[2] == 1


@pytest.mark.parametrize("d", [-23, -56, -84, -231, -399, -420, -1155, -3299, -3896])
def test_structure_consistent(d):
    G = group_structure(d)
    assert math.prod(G.invariant_factors) == G.h
    for a, b in zip(G.invariant_factors, G.invariant_factors[1:]):
        assert b % a == 0
    exponent = G.invariant_factors[-1] if G.invariant_factors else 1
    assert max(form_order(f) for f in G.reduced_forms) == exponent
    for n in (1, 2, 3, 4, 6):
        assert h_parts(d, n)[2] == n_torsion_count(d, n)
    assert h_parts(d, exponent)[2] == G.h


def test_form_power_order():
    for f in reduced_forms_neg(-1151):
        assert form_power(f, form_order(f)) == principal_form(-1151)


def test_S_minus_examples():
    assert S_minus(5) == 2
    assert S_minus(25) == 12
    assert S_minus(3) == 0
    assert S_minus(200, jobs=4) == S_minus(200)


def test_S_minus_torsion_mode():
    ds = fundamental_discriminants(-150, 0)
    assert S_minus(150, "torsion", 2) == sum(n_torsion_count(d, 2) for d in ds)
    with pytest.raises(ValueError):
        S_minus(100, "torsion")


def test_count_representations():
    assert count_representations(BQF(1, 0, 1), 10) == 36
    assert count_representations(BQF(1, 1, 1), 1) == 6
    assert count_representations(BQF(1, 0, 1), 0) == 0


@settings(max_examples=100, deadline=None)
@given(pos_def, st.integers(1, 150))
def test_count_representations_brute(f, B):
    R = 2 * B + 10
    brute = sum(1 for x, y in itertools.product(range(-R, R + 1), repeat=2)
                if (x, y) != (0, 0) and f(x, y) <= B)
    assert count_representations(f, B) == brute


def test_representation_trend():
    vals = []
    for d in fundamental_discriminants(-500, 0):
        for f in reduced_forms_neg(d):
            for B in (50, 200):
                vals.append(count_representations(f, B) * math.sqrt(-d) / B)
    # ellipse area gives 2 pi asymptotically; observed range is about 4 to 7.7
    assert 3 < min(vals) and max(vals) < 10


def test_reduced_pos_examples():
    assert set(reduced_pos_enumerate(5)) == {BQF(1, 1, -1), BQF(-1, 1, 1)}
    assert set(reduced_pos_enumerate(8)) == {BQF(1, 2, -1), BQF(-1, 2, 1)}
    for d in (5, 8, 12, 13, 17, 21, 60, 229, 1001):
        for f in reduced_pos_enumerate(d):
            assert f.disc == d and max(abs(f.a), abs(f.c), f.b) ** 2 < d
    with pytest.raises(ValueError):
        reduced_pos_enumerate(16)
