from fractions import Fraction as F
from itertools import product

import pytest

from constalg import kernel, linalg
from constalg.exprio import parse, render
from constalg.metabelian import MetaElement
from constalg.uvconstants import (
    CanonicalMonomial,
    ConstGen,
    a_u_element,
    admissible_indices,
    all_generators,
    canonical_basis,
    cdelta_generators,
    completed_module_generators,
    covers,
    generator_multisets,
    intersects,
    is_canonical,
    lifted_commutative_generators,
    module_generators,
    relation_names,
    relation_s_with_repeated_factor,
    spanning_forms,
    straighten,
    verify_relation,
    w_element,
    w_element_crossed,
)
from constalg.wreath import ModuleElement, embed


def UV(text, d):
    return parse(text, "uv", d)


def test_expand_examples():
    assert ConstGen("alpha", 1, 2).expand(2) == UV("u1*u4 - u2*u3", 2)
    assert ConstGen("gamma", 1, 1).expand(1) == UV("u1*v2 - u2*v1", 1)
    assert w_element(1, 1, 1) == parse("a1*v2 - a2*v1", "module", 1)
    assert ConstGen("u", 2).expand(3) == UV("u3", 3)
    assert ConstGen("v", 1).expand(2) == UV("v1", 2)


def test_expand_out_of_range():
    with pytest.raises(ValueError):
        ConstGen("alpha", 1, 3).expand(2)
    with pytest.raises(ValueError):
        ConstGen("alpha", 2, 1)


def test_generators_are_constants():
    for d in (1, 2, 3):
        for g in all_generators(d):
            assert not g.expand(d).derive(), g.label()
        for p in range(1, d + 1):
            for q in range(1, d + 1):
                assert not w_element(d, p, q).derive()
                assert not a_u_element(d, p, q).derive()


def test_crossed_determinant_is_not_constant():
    # the crossed orientation fails to be a constant off the diagonal,
    # which is why w_element pairs both a-indices with one variable pair
    assert w_element_crossed(2, 1, 2).derive()
    assert w_element_crossed(2, 1, 1) == w_element(2, 1, 1)


def test_relation_examples():
    assert not verify_relation("R1", (1, 2, 3, 4), 4)
    assert not verify_relation("S1", (1, 2, 3), 3)
    assert not verify_relation("R", (1, 1, 2, 3), 3)
    assert not verify_relation("S", (1, 1, 2), 2)


def test_relation_side_conditions():
    with pytest.raises(ValueError):
        verify_relation("S1", (2, 1, 3), 3)
    with pytest.raises(ValueError):
        verify_relation("R1", (1, 2, 3, 4), 3)


def test_all_relations_small_d():
    for d in (1, 2, 3):
        for name in relation_names():
            for idx in admissible_indices(name, d):
                assert not verify_relation(name, idx, d), (name, idx, d)


def test_relation_s_repeated_factor_reading_fails():
    # the reading with a repeated v-factor does not vanish anywhere
    bad = [
        idx
        for idx in admissible_indices("S", 3)
        if relation_s_with_repeated_factor(idx, 3)
    ]
    assert len(bad) == len(list(admissible_indices("S", 3)))


def test_geometry_examples():
    assert intersects(ConstGen("alpha", 1, 3), ConstGen("alpha", 2, 4), 4)
    assert not intersects(ConstGen("alpha", 1, 4), ConstGen("alpha", 2, 3), 4)
    assert covers(ConstGen("alpha", 1, 3), ConstGen("u", 2), 4)
    assert not covers(ConstGen("alpha", 1, 3), ConstGen("u", 1), 4)
    # gamma(p,p) is a legitimate interval; equal intervals do not intersect
    assert not intersects(ConstGen("gamma", 1, 1), ConstGen("gamma", 1, 1), 2)
    with pytest.raises(ValueError):
        intersects(ConstGen("u", 1), ConstGen("alpha", 1, 2), 2)
    with pytest.raises(ValueError):
        covers(ConstGen("u", 1), ConstGen("v", 1), 2)


def test_canonical_basis_examples():
    assert [cm.label() for cm in canonical_basis(1, (1,), (0,))] == ["u(1)"]
    labels = {cm.label() for cm in canonical_basis(2, (1, 1), (0, 0))}
    assert labels == {"alpha(1,2)", "u(1)*u(2)"}
    labels = {cm.label() for cm in canonical_basis(2, (1, 1), (1, 0))}
    assert labels == {"v(1)*alpha(1,2)", "v(1)*u(1)*u(2)", "gamma(2,1)*u(1)"}


def test_canonical_brute_force_oracle():
    # independent recursion over generator multisets, then the same
    # geometric filter; must agree with the library enumeration
    d = 2
    gens = all_generators(d)

    def contribution(g):
        gu, gv = g.degrees(d)
        return tuple(gu) + tuple(gv)

    for u_key, v_key in [((1, 1), (1, 0)), ((2, 0), (1, 1)), ((1, 2), (0, 1))]:
        target = tuple(u_key) + tuple(v_key)
        found = set()

        def rec(idx, remaining, chosen):
            if not any(remaining):
                if is_canonical(chosen, d):
                    found.add(tuple(sorted(g.label() for g in chosen)))
                return
            if idx == len(gens) or any(r < 0 for r in remaining):
                return
            contrib = contribution(gens[idx])
            rec(idx + 1, remaining, chosen)
            if all(r >= c for r, c in zip(remaining, contrib)):
                rec(
                    idx,
                    tuple(r - c for r, c in zip(remaining, contrib)),
                    chosen + [gens[idx]],
                )

        rec(0, target, [])
        lib = {
            tuple(sorted(g.label() for g in cm.gens))
            for cm in canonical_basis(d, u_key, v_key)
        }
        assert lib == found


def test_canonical_count_matches_kernel_small():
    d = 2
    for total in range(1, 4):
        for key in kernel.component_keys(2 * d, total):
            monos = canonical_basis(d, key[:d], key[d:])
            assert len(monos) == kernel.kernel_dimension("uv", d, key)


def test_straighten_identity_and_relations():
    combo = straighten([ConstGen("gamma", 1, 1)], 1)
    assert combo == [(F(1), CanonicalMonomial.from_gens([ConstGen("gamma", 1, 1)]))]
    combo = straighten([ConstGen("alpha", 1, 3), ConstGen("alpha", 2, 4)], 4)
    assert {(str(c), cm.label()) for c, cm in combo} == {
        ("1", "alpha(1,2)*alpha(3,4)"),
        ("1", "alpha(1,4)*alpha(2,3)"),
    }
    combo = straighten([ConstGen("u", 2), ConstGen("alpha", 1, 3)], 3)
    assert {(str(c), cm.label()) for c, cm in combo} == {
        ("1", "alpha(1,2)*u(3)"),
        ("1", "alpha(2,3)*u(1)"),
    }


def test_straighten_preserves_expansion():
    d = 3
    for gens in [
        [ConstGen("u", 2), ConstGen("alpha", 1, 3)],
        [ConstGen("gamma", 1, 2), ConstGen("gamma", 2, 1)],
        [ConstGen("beta", 1, 3), ConstGen("u", 2), ConstGen("v", 2)],
    ]:
        target = CanonicalMonomial.from_gens(gens).expand(d)
        combo = straighten(gens, d)
        total = None
        for c, cm in combo:
            piece = cm.expand(d).scale(c)
            total = piece if total is None else total + piece
        assert total == target


def test_module_generator_examples():
    gens = {(g.name, g.indices): g for g in module_generators(2)}
    g1 = gens[("g1", (1,))]
    assert g1.preimage == MetaElement.commutator(2, (1, 2))
    assert g1.expansion == w_element(2, 1, 1)
    g2 = gens[("g2", (1, 2))]
    assert g2.preimage == MetaElement.commutator(2, (1, 3))
    g3 = gens[("g3", (1, 2))]
    assert not g3.preimage.derive()
    assert g3.expansion == w_element(2, 1, 2) + w_element(2, 2, 1)


def test_module_generators_match_determinant_forms():
    # the Lie-side preimages and the module displays correspond under the
    # pairing g2 <-> a-v antisymmetrizer, g3 <-> w_ij + w_ji, etc.
    d = 3
    gens = {(g.name, g.indices): g for g in module_generators(d)}

    def beta(p, q):
        return ConstGen("beta", p, q).expand(d)

    def gamma(p, q):
        return ConstGen("gamma", p, q).expand(d)

    def u_odd(i):
        return ConstGen("u", i).expand(d)

    def v_odd(i):
        return ConstGen("v", i).expand(d)

    def a_gen(i):
        return ModuleElement.generator(d, 2 * i - 1)

    assert gens[("g1", (2,))].expansion == w_element(d, 2, 2)
    assert gens[("g2", (1, 3))].expansion == a_gen(1).mul_poly(v_odd(3)) - a_gen(
        3
    ).mul_poly(v_odd(1))
    assert gens[("g3", (1, 2))].expansion == w_element(d, 1, 2) + w_element(d, 2, 1)
    assert gens[("g4", (1, 2, 3))].expansion == a_gen(1).mul_poly(
        beta(2, 3)
    ) - w_element(d, 2, 3).mul_poly(v_odd(1))
    assert gens[("g5", (1, 2, 3))].expansion == a_gen(1).mul_poly(beta(2, 3)) - a_gen(
        2
    ).mul_poly(beta(1, 3)) + a_gen(3).mul_poly(beta(1, 2))
    assert gens[("g6", (1, 2, 1, 2))].expansion == w_element(d, 1, 2).mul_poly(
        beta(1, 2)
    ) - w_element(d, 1, 2).mul_poly(beta(1, 2))
    assert gens[("g6", (1, 2, 1, 3))].expansion == w_element(d, 1, 2).mul_poly(
        beta(1, 3)
    ) - w_element(d, 1, 3).mul_poly(beta(1, 2))
    assert gens[("g7", (1, 1, 2, 3))].expansion == w_element(d, 2, 3).mul_poly(
        gamma(1, 1)
    ) - w_element(d, 1, 3).mul_poly(gamma(1, 2)) + w_element(d, 1, 2).mul_poly(
        gamma(1, 3)
    )
    assert gens[("g8", (1, 2, 3))].expansion == w_element(d, 2, 3).mul_poly(
        u_odd(1)
    ) - a_gen(2).mul_poly(gamma(1, 3)) + a_gen(3).mul_poly(gamma(1, 2))


def test_module_generators_are_images():
    for d in (1, 2, 3):
        for g in module_generators(d):
            assert not g.preimage.derive(), g.label()
            assert embed(g.preimage).module == g.expansion, g.label()
            assert g.expansion.is_commutator_image(), g.label()


def test_completed_family_examples():
    extra = [g for g in completed_module_generators(2) if g.name == "g9"]
    assert extra, "the completion family should be nonempty at d=2"
    for g in extra:
        assert not g.preimage.derive()
        assert g.expansion.is_commutator_image()
    witness = parse(
        "x2*x4*[x3,x1] - x2*x3*[x4,x1] - x1*x4*[x3,x2] + x1*x3*[x4,x2]", "meta", 2
    )
    assert any(g.preimage == witness for g in extra)


def test_algebra_generators_constant():
    for d in (1, 2):
        from constalg.uvconstants import algebra_generators

        gens = algebra_generators(d)
        assert MetaElement.variable(d, 1) in gens
        for g in gens:
            assert not g.derive()
    d2 = algebra_generators(2)
    assert parse("x1*x4 - x2*x3", "meta", 2) in d2


def test_quotient_spanning_forms():
    # reduced forms replace a by v (and w by beta) canonically
    forms = spanning_forms(2, (0, 0), (1, 1))
    labels = {label for label, _ in forms}
    assert "a(1)*v(2)" in labels or "a(2)*v(1)" in labels
    from constalg.checks import check_quotient_spanning

    report = check_quotient_spanning(2, 4)
    assert report.ok, report.failures


def test_main_theorem_images_equal_generated_submodule():
    # inside each component: the image subspace of the constants module
    # generated by a/w coincides with the part cut out by the criterion
    d = 2
    for total in range(1, 5):
        for key in kernel.component_keys(d, total):
            module = kernel.component_basis("module", d, key)
            index = {obj: k for k, obj in enumerate(module.basis)}

            def vec_of(elem):
                out = {}
                for idx, poly in elem.coeffs.items():
                    for mono, c in poly.terms.items():
                        out[index[(idx, mono)]] = c
                return out

            cspan_elems = []
            for label, gen in cdelta_generators(d):
                gk = gen.pair_key()
                rest = tuple(k - g for k, g in zip(key, gk))
                if any(r < 0 for r in rest):
                    continue
                for cm in kernel._canonical_by_aggregate(d, rest):
                    cspan_elems.append(gen.mul_poly(cm.expand(d)))
            # L = generated by the eight families inside C
            lspan = linalg.IncrementalSpan()
            for g in module_generators(d):
                if not g.expansion:
                    continue
                gk = g.expansion.pair_key()
                rest = tuple(k - a for k, a in zip(key, gk))
                if any(r < 0 for r in rest):
                    continue
                for cm in kernel._canonical_by_aggregate(d, rest):
                    lspan.add(vec_of(g.expansion.mul_poly(cm.expand(d))))
            # criterion kernel inside the C-span
            cvecs = [vec_of(e) for e in cspan_elems]
            basis = []
            sieve = linalg.IncrementalSpan()
            for e, v in zip(cspan_elems, cvecs):
                if sieve.add(v):
                    basis.append(e)
            entries = {}
            res_index = {}
            for col, e in enumerate(basis):
                res = e.criterion_residual()
                for mono, c in res.terms.items():
                    entries[(res_index.setdefault(mono, len(res_index)), col)] = c
            matrix = linalg.QMatrix(len(res_index), len(basis), entries)
            inside = linalg.IncrementalSpan()
            dim_images_in_c = 0
            for coeffs in linalg.nullspace(matrix):
                acc = {}
                for c, e in zip(coeffs, basis):
                    if c:
                        for k2, x in vec_of(e).items():
                            acc[k2] = acc.get(k2, F(0)) + c * x
                acc = {k2: x for k2, x in acc.items() if x}
                if acc and inside.add(acc):
                    dim_images_in_c += 1
            assert lspan.rank == dim_images_in_c, key
