import random
from fractions import Fraction as F

import pytest

from constalg.checks import random_meta
from constalg.exprio import parse, render
from constalg.metabelian import MetaElement, MetaMonomial, norm_commutator
from constalg.poly import uv_alphabet


def M(text, d=2):
    return parse(text, "meta", d)


def test_normalize_single_swap():
    assert MetaElement.word(2, [2, 1]) == M("x1*x2 + [x2,x1]")


def test_metabelian_identity_example():
    assert not MetaElement.commutator(2, (2, 1)) * MetaElement.commutator(2, (4, 3))


def test_commutator_times_letter():
    lhs = MetaElement.commutator(2, (2, 1)) * MetaElement.variable(2, 3)
    assert lhs == M("x3*[x2,x1] + [x2,x1,x3]")


def test_mul_examples():
    x1 = MetaElement.variable(2, 1)
    assert x1 * x1 == M("x1^2")
    c = MetaElement.commutator(2, (2, 1))
    assert not c * c


def test_mul_rank_mismatch():
    with pytest.raises(ValueError):
        MetaElement.variable(1, 1) * MetaElement.variable(2, 1)


def test_malformed_commutator():
    with pytest.raises(ValueError):
        MetaElement.commutator(2, (1,))


def test_norm_commutator_jacobi():
    # [x3,x2,x1] = [x3,x1,x2] - [x2,x1,x3] by the Jacobi identity
    assert MetaElement.commutator(2, (3, 2, 1)) == M("[x3,x1,x2] - [x2,x1,x3]")
    # head swap with sign
    assert MetaElement.commutator(2, (1, 2)) == M("-[x2,x1]")
    assert norm_commutator((1, 1)) == []


def test_derive_examples():
    assert not MetaElement.commutator(2, (1, 2)).derive()
    assert MetaElement.commutator(2, (4, 2)).derive() == M("[x3,x2] + [x4,x1]")
    prod = MetaElement.variable(2, 2) * MetaElement.commutator(2, (2, 1))
    assert prod.derive() == M("x1*[x2,x1]")
    # positional Leibniz through a plain word, frozen from a hand expansion
    assert MetaElement.word(2, [2, 2]).derive() == M("2*x1*x2 + [x2,x1]")


def test_act_uv_examples():
    c = MetaElement.commutator(2, (2, 1))
    assert c.act_uv((0, 0, 1, 0, 0, 0, 0, 0)) == M("x3*[x2,x1]")
    assert c.act_uv((0, 0, 0, 0, 0, 0, 1, 0)) == M("[x2,x1,x3]")
    assert c.act_uv((1, 0, 0, 0, 0, 1, 0, 0)) == M("x1*[x2,x1,x2]")
    # polynomial action distributes
    p = parse("u3 + v3", "uv", 2)
    assert c.act_uv(p) == M("x3*[x2,x1] + [x2,x1,x3]")


def test_act_uv_requires_ideal():
    with pytest.raises(ValueError):
        MetaElement.variable(2, 1).act_uv((0,) * 8)


def test_basis_well_defined():
    a = (MetaElement.variable(2, 2) * MetaElement.variable(2, 1)) * MetaElement.variable(2, 3)
    b = MetaElement.variable(2, 2) * (MetaElement.variable(2, 1) * MetaElement.variable(2, 3))
    assert a == b == M("x1*x2*x3 + x3*[x2,x1] + [x2,x1,x3]")


def test_associativity_random():
    rng = random.Random(21)
    for _ in range(150):
        f = random_meta(rng, 2, max_letters=2)
        g = random_meta(rng, 2, max_letters=2)
        h = random_meta(rng, 2, max_letters=2)
        assert (f * g) * h == f * (g * h)


def test_metabelian_identity_random():
    rng = random.Random(22)
    for _ in range(150):
        c1 = random_meta(rng, 2).comm_part()
        c2 = random_meta(rng, 2).comm_part()
        assert not c1 * c2


def test_leibniz_random():
    rng = random.Random(23)
    for _ in range(150):
        f = random_meta(rng, 2)
        g = random_meta(rng, 2)
        assert (f * g).derive() == f.derive() * g + f * g.derive()


def test_action_module_consistency():
    rng = random.Random(24)
    alphabet = uv_alphabet(4)
    for _ in range(100):
        c = random_meta(rng, 2, max_letters=2).comm_part()
        m1 = [0] * 8
        m2 = [0] * 8
        m1[rng.randrange(8)] += 1
        m2[rng.randrange(8)] += 1
        combined = tuple(a + b for a, b in zip(m1, m2))
        assert c.act_uv(tuple(m1)).act_uv(tuple(m2)) == c.act_uv(combined)
        assert c.act_uv(tuple(m2)).act_uv(tuple(m1)) == c.act_uv(combined)


def test_pair_key():
    assert M("x3*[x2,x1] + [x2,x1,x3]").pair_key() == (2, 1)
    with pytest.raises(ValueError):
        M("x1 + x3").pair_key()


def test_monomial_total_degree():
    mono = MetaMonomial((1, 0, 0, 0), (2, 1, 3))
    assert mono.total_degree() == 4
    assert mono.is_comm
