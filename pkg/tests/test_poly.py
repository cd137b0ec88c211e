import random
from fractions import Fraction as F

import pytest

from constalg.checks import random_comm_poly
from constalg.exprio import parse, render
from constalg.poly import (
    CommPoly,
    VarAlphabet,
    iter_monomials,
    nowicki_generators,
    uv_alphabet,
    x_alphabet,
)

X4 = x_alphabet(4)


def P(text, alphabet=X4):
    tag = "uv" if alphabet.kind == "UV" else "comm"
    d = alphabet.size // (4 if alphabet.kind == "UV" else 2)
    return parse(text, tag, d)


def test_alphabet_validation():
    with pytest.raises(ValueError):
        VarAlphabet("X", 3)
    with pytest.raises(ValueError):
        VarAlphabet("Q", 2)
    assert uv_alphabet(4).var_name(0) == "u1"
    assert uv_alphabet(4).var_name(4) == "v1"


def test_mul_examples():
    assert P("x1") * P("x2") == P("x1*x2")
    assert (P("x1") + P("x2")) * (P("x1") + P("x2")) == P("x1^2 + 2x1*x2 + x2^2")
    p = P("3x1*x2 - x3")
    assert p * CommPoly.one(X4) == p


def test_mul_alphabet_mismatch():
    with pytest.raises(ValueError):
        P("x1") * CommPoly.one(x_alphabet(2))


def test_derive_examples():
    assert P("x2").derive() == P("x1")
    assert not P("x1").derive()
    # Leibniz expansion by hand: d(x1x4 - x2x3) = x1x3 - x1x3 = 0
    assert not P("x1*x4 - x2*x3").derive()


def test_exp_examples():
    assert P("x1").exp_derive() == P("x1")
    assert P("x2").exp_derive() == P("x2 + x1")
    inv = P("x1*x4 - x2*x3")
    assert inv.exp_derive() == inv
    # quadratic term: exp(x2^2) = x2^2 + 2x1x2 + x1^2
    assert P("x2^2").exp_derive() == P("x2^2 + 2x1*x2 + x1^2")


def test_nowicki_generators_small():
    gens = nowicki_generators(1)
    assert gens == [parse("x1", "comm", 1)]
    gens = nowicki_generators(2)
    assert gens == [P("x1"), P("x3"), P("x1*x4 - x2*x3")]
    for d in (1, 2, 3):
        for g in nowicki_generators(d):
            assert not g.derive()


def test_leibniz_random():
    rng = random.Random(11)
    for _ in range(200):
        p = random_comm_poly(rng, X4)
        q = random_comm_poly(rng, X4)
        assert (p * q).derive() == p.derive() * q + p * q.derive()


def test_local_nilpotence():
    rng = random.Random(12)
    for _ in range(100):
        p = random_comm_poly(rng, X4)
        weight = max((m[1] + m[3] for m in p.terms), default=0)
        for _ in range(weight + 1):
            p = p.derive()
        assert not p


def test_exp_is_endomorphism():
    rng = random.Random(13)
    for _ in range(100):
        p = random_comm_poly(rng, X4)
        q = random_comm_poly(rng, X4)
        assert (p * q).exp_derive() == p.exp_derive() * q.exp_derive()


def test_exp_fixed_points_iff_constant():
    rng = random.Random(14)
    for _ in range(100):
        p = random_comm_poly(rng, X4)
        for comp in p.pair_components().values():
            assert (comp.exp_derive() == comp) == (not comp.derive())


def test_pair_components_and_keys():
    p = P("x1*x4 - x2*x3")
    assert p.pair_key() == (1, 1)
    mixed = P("x1 + x3")
    with pytest.raises(ValueError):
        mixed.pair_key()
    assert set(mixed.pair_components()) == {(1, 0), (0, 1)}


def test_iter_monomials():
    monos = list(iter_monomials(X4, (1, 1)))
    assert len(monos) == 4
    assert len(set(monos)) == 4
    assert all(m[0] + m[1] == 1 and m[2] + m[3] == 1 for m in monos)


def test_render_round_trip_uv():
    p = parse("u1*v4 - 2/3*u2^2", "uv", 2)
    assert parse(render(p), "uv", 2) == p
