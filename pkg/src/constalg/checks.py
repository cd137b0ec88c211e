"""Randomized identity suites and structural verification routines.

Everything here is deterministic given a seed, reports failures as
rendered witnesses instead of raising, and is shared between the test
suite and the command line.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import exprio, kernel, linalg, uvconstants
from .grassmann import (
    GrassElement,
    commutator,
    grassmann_generators,
    lemma_elements,
    v_gen,
)
from .metabelian import MetaElement
from .poly import CommPoly, VarAlphabet, uv_alphabet, x_alphabet
from .uvconstants import (
    admissible_indices,
    relation_names,
    verify_relation,
)
from .wreath import ModuleElement, WreathElement, commutator_image, embed


@dataclass
class CheckReport:
    """Outcome of one named check: number of cases and failure witnesses."""

    name: str
    cases: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "ok": self.ok,
            "failures": self.failures[:8],
        }


# ---------------------------------------------------------------------------
# random element factories
# ---------------------------------------------------------------------------


def random_fraction(rng: random.Random) -> Fraction:
    num = rng.choice([-3, -2, -1, 1, 2, 3])
    den = rng.choice([1, 1, 2, 3])
    return Fraction(num, den)


def random_comm_poly(
    rng: random.Random, alphabet: VarAlphabet, max_terms: int = 3, max_deg: int = 2
) -> CommPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = [0] * alphabet.size
        for _ in range(rng.randint(0, max_deg)):
            mono[rng.randrange(alphabet.size)] += 1
        terms[tuple(mono)] = random_fraction(rng)
    return CommPoly(alphabet, terms)


def random_meta(
    rng: random.Random, d: int, max_letters: int = 3, max_terms: int = 2
) -> MetaElement:
    nvars = 2 * d
    raw = []
    for _ in range(rng.randint(1, max_terms)):
        seq = [("v", rng.randint(1, nvars)) for _ in range(rng.randint(0, max_letters))]
        if rng.random() < 0.6:
            arity = rng.randint(2, 3)
            pos = rng.randint(0, len(seq))
            seq.insert(pos, ("c", tuple(rng.randint(1, nvars) for _ in range(arity))))
        raw.append((random_fraction(rng), tuple(seq)))
    return MetaElement.from_raw(d, raw)


def random_grass(
    rng: random.Random, d: int, max_letters: int = 3, max_terms: int = 2
) -> GrassElement:
    nvars = 2 * d
    raw = []
    for _ in range(rng.randint(1, max_terms)):
        word = tuple(rng.randrange(nvars) for _ in range(rng.randint(0, max_letters)))
        block: tuple[int, ...] = ()
        if rng.random() < 0.5:
            block = (rng.randrange(nvars), rng.randrange(nvars))
        raw.append((random_fraction(rng), word, block))
    return GrassElement.from_raw(d, raw)


def random_module(rng: random.Random, d: int, max_terms: int = 2) -> ModuleElement:
    out = ModuleElement.zero(d)
    alphabet = uv_alphabet(2 * d)
    for _ in range(rng.randint(1, max_terms)):
        poly = random_comm_poly(rng, alphabet, max_terms=2, max_deg=2)
        out = out + ModuleElement(d, {rng.randint(1, 2 * d): poly})
    return out


# ---------------------------------------------------------------------------
# identity suites
# ---------------------------------------------------------------------------


def check_comm_leibniz(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    alphabet = x_alphabet(2 * d)
    report = CheckReport("comm-leibniz", cases)
    for _ in range(cases):
        p = random_comm_poly(rng, alphabet)
        q = random_comm_poly(rng, alphabet)
        if (p * q).derive() != p.derive() * q + p * q.derive():
            report.failures.append(f"p={exprio.render(p)}, q={exprio.render(q)}")
    return report


def check_comm_nilpotence(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    alphabet = x_alphabet(2 * d)
    report = CheckReport("comm-local-nilpotence", cases)
    for _ in range(cases):
        p = random_comm_poly(rng, alphabet)
        weight = max(
            (sum(m[k] for k in range(1, alphabet.size, 2)) for m in p.terms),
            default=0,
        )
        q = p
        for _ in range(weight + 1):
            q = q.derive()
        if q:
            report.failures.append(exprio.render(p))
    return report


def check_exp_endomorphism(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    alphabet = x_alphabet(2 * d)
    report = CheckReport("comm-exp-endomorphism", cases)
    for _ in range(cases):
        p = random_comm_poly(rng, alphabet)
        q = random_comm_poly(rng, alphabet)
        if (p * q).exp_derive() != p.exp_derive() * q.exp_derive():
            report.failures.append(f"p={exprio.render(p)}, q={exprio.render(q)}")
    return report


def check_exp_fixed_points(d: int, cases: int, seed: int) -> CheckReport:
    """derive(p) = 0 iff exp(p) = p on pair-homogeneous pieces."""
    rng = random.Random(seed)
    alphabet = x_alphabet(2 * d)
    report = CheckReport("comm-exp-fixed-points", cases)
    for _ in range(cases):
        p = random_comm_poly(rng, alphabet)
        for component in p.pair_components().values():
            fixed = component.exp_derive() == component
            constant = not component.derive()
            if fixed != constant:
                report.failures.append(exprio.render(component))
    return report


def check_metabelian_identity(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("metabelian-identity", cases)
    for _ in range(cases):
        c1 = random_meta(rng, d).comm_part()
        c2 = random_meta(rng, d).comm_part()
        if c1 * c2:
            report.failures.append(f"c1={exprio.render(c1)}, c2={exprio.render(c2)}")
    return report


def check_meta_associativity(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("meta-associativity", cases)
    for _ in range(cases):
        f = random_meta(rng, d, max_letters=2)
        g = random_meta(rng, d, max_letters=2)
        h = random_meta(rng, d, max_letters=2)
        if (f * g) * h != f * (g * h):
            report.failures.append(
                f"f={exprio.render(f)}, g={exprio.render(g)}, h={exprio.render(h)}"
            )
    return report


def check_meta_leibniz(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("meta-leibniz", cases)
    for _ in range(cases):
        f = random_meta(rng, d)
        g = random_meta(rng, d)
        if (f * g).derive() != f.derive() * g + f * g.derive():
            report.failures.append(f"f={exprio.render(f)}, g={exprio.render(g)}")
    return report


def check_meta_action(d: int, cases: int, seed: int) -> CheckReport:
    """Module action respects products and is order-independent."""
    rng = random.Random(seed)
    alphabet = uv_alphabet(2 * d)
    report = CheckReport("meta-action-consistency", cases)
    for _ in range(cases):
        c = random_meta(rng, d, max_letters=2).comm_part()
        m1 = [0] * (4 * d)
        m2 = [0] * (4 * d)
        for _ in range(rng.randint(1, 2)):
            m1[rng.randrange(4 * d)] += 1
        for _ in range(rng.randint(1, 2)):
            m2[rng.randrange(4 * d)] += 1
        combined = tuple(a + b for a, b in zip(m1, m2))
        step = c.act_uv(tuple(m1)).act_uv(tuple(m2))
        swap = c.act_uv(tuple(m2)).act_uv(tuple(m1))
        joint = c.act_uv(combined)
        if step != joint or swap != joint:
            report.failures.append(f"c={exprio.render(c)}, m1={m1}, m2={m2}")
    return report


def check_grass_triple_commutator(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("grass-triple-commutator", cases)
    for _ in range(cases):
        f = random_grass(rng, d, max_letters=2)
        g = random_grass(rng, d, max_letters=2)
        h = random_grass(rng, d, max_letters=2)
        if commutator(commutator(f, g), h):
            report.failures.append(
                f"f={exprio.render(f)}, g={exprio.render(g)}, h={exprio.render(h)}"
            )
    return report


def check_grass_product_rule(d: int, cases: int, seed: int) -> CheckReport:
    """[f1,f2][f3,f4] + [f1,f3][f2,f4] = 0."""
    rng = random.Random(seed)
    report = CheckReport("grass-commutator-exchange", cases)
    for _ in range(cases):
        f = [random_grass(rng, d, max_letters=2) for _ in range(4)]
        lhs = commutator(f[0], f[1]) * commutator(f[2], f[3]) + commutator(
            f[0], f[2]
        ) * commutator(f[1], f[3])
        if lhs:
            report.failures.append(", ".join(exprio.render(x) for x in f))
    return report


def check_grass_centrality(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("grass-commutator-centrality", cases)
    for _ in range(cases):
        f = random_grass(rng, d, max_letters=2)
        g = random_grass(rng, d, max_letters=2)
        h = random_grass(rng, d, max_letters=2)
        c = commutator(f, g)
        if c * h != h * c:
            report.failures.append(
                f"f={exprio.render(f)}, g={exprio.render(g)}, h={exprio.render(h)}"
            )
    return report


def check_grass_leibniz(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("grass-leibniz", cases)
    for _ in range(cases):
        f = random_grass(rng, d)
        g = random_grass(rng, d)
        if (f * g).derive() != f.derive() * g + f * g.derive():
            report.failures.append(f"f={exprio.render(f)}, g={exprio.render(g)}")
    return report


def check_y_power_rule(d: int, max_power: int = 8) -> CheckReport:
    """derive(y_d^b) = b x y^{b-1} + b(b-1)/2 y^{b-2} [y, x]."""
    report = CheckReport("grass-y-power-rule", max_power - 1)
    x = GrassElement.x_var(d, d)
    y = GrassElement.y_var(d, d)
    for b in range(2, max_power + 1):
        expected = (x * y ** (b - 1)).scale(b) + (
            y ** (b - 2) * commutator(y, x)
        ).scale(Fraction(b * (b - 1), 2))
        if (y**b).derive() != expected:
            report.failures.append(f"b={b}")
    return report


def check_phi_derive_commute(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("grass-phi-derive-commute", cases)
    for _ in range(cases):
        f = random_grass(rng, d)
        alpha = [random_fraction(rng) for _ in range(d - 1)]
        if f.phi(alpha).derive() != f.derive().phi(alpha):
            report.failures.append(f"f={exprio.render(f)}, alpha={alpha}")
    return report


def identity_suites(d: int, cases: int, seed: int) -> list[CheckReport]:
    """The full randomized identity battery, seeded per suite."""
    grass_d = max(d, 2)
    return [
        check_comm_leibniz(d, cases, seed + 1),
        check_comm_nilpotence(d, cases, seed + 2),
        check_exp_endomorphism(d, cases, seed + 3),
        check_exp_fixed_points(d, cases, seed + 4),
        check_metabelian_identity(d, cases, seed + 5),
        check_meta_associativity(d, cases, seed + 6),
        check_meta_leibniz(d, cases, seed + 7),
        check_meta_action(d, cases, seed + 8),
        check_grass_triple_commutator(d, cases, seed + 9),
        check_grass_product_rule(d, cases, seed + 10),
        check_grass_centrality(d, cases, seed + 11),
        check_grass_leibniz(d, cases, seed + 12),
        check_y_power_rule(d),
        check_phi_derive_commute(grass_d, cases, seed + 13),
    ]


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------


def check_relations(d: int) -> list[CheckReport]:
    out = []
    for name in relation_names():
        tuples = list(admissible_indices(name, d))
        report = CheckReport(f"relation-{name}", len(tuples))
        for idx in tuples:
            residual = verify_relation(name, idx, d)
            if residual:
                report.failures.append(f"{name}{idx}: {exprio.render(residual)}")
        out.append(report)
    return out


# ---------------------------------------------------------------------------
# embedding
# ---------------------------------------------------------------------------


def check_embedding_homomorphism(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("embed-homomorphism", cases)
    for _ in range(cases):
        f = random_meta(rng, d, max_letters=2)
        g = random_meta(rng, d, max_letters=2)
        if embed(f * g) != embed(f) * embed(g):
            report.failures.append(f"f={exprio.render(f)}, g={exprio.render(g)}")
    return report


def check_embedding_equivariance(d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("embed-equivariance", cases)
    for _ in range(cases):
        f = random_meta(rng, d, max_letters=2)
        if embed(f.derive()) != embed(f).derive():
            report.failures.append(exprio.render(f))
    return report


def _wreath_vector(
    w: WreathElement, index: dict
) -> dict[int, Fraction]:
    vec: dict[int, Fraction] = {}
    for mono, coeff in w.poly.terms.items():
        vec[index[("y", mono)]] = coeff
    for idx, poly in w.module.coeffs.items():
        for mono, coeff in poly.terms.items():
            vec[index[("a", idx, mono)]] = coeff
    return vec


def check_embedding_injectivity(d: int, max_total: int) -> CheckReport:
    """Full column rank of the embedding on every component."""
    report = CheckReport("embed-injectivity", 0)
    checked = 0
    for total in range(1, max_total + 1):
        for key in kernel.component_keys(d, total):
            component = kernel.component_basis("meta", d, key)
            images = [
                embed(MetaElement(d, {mono: Fraction(1)})) for mono in component.basis
            ]
            index: dict = {}
            for w in images:
                for mono in w.poly.terms:
                    index.setdefault(("y", mono), len(index))
                for idx, poly in w.module.coeffs.items():
                    for mono in poly.terms:
                        index.setdefault(("a", idx, mono), len(index))
            span = linalg.IncrementalSpan()
            rank = 0
            for w in images:
                if span.add(_wreath_vector(w, index)):
                    rank += 1
            checked += 1
            if rank != len(component.basis):
                report.failures.append(
                    f"key={key}: rank {rank} < dim {len(component.basis)}"
                )
    report.cases = checked
    return report


def check_image_criterion(d: int, max_total: int) -> CheckReport:
    """The residual criterion cuts out exactly the embedded ideal."""
    report = CheckReport("embed-image-criterion", 0)
    checked = 0
    for total in range(2, max_total + 1):
        for key in kernel.component_keys(d, total):
            ideal = kernel.component_basis("meta-ideal", d, key)
            module = kernel.component_basis("module", d, key)
            index = {obj: k for k, obj in enumerate(module.basis)}
            span = linalg.IncrementalSpan()
            image_dim = 0
            for mono in ideal.basis:
                img = commutator_image(d, mono)
                if not img.is_commutator_image():
                    report.failures.append(f"criterion fails on image of {mono}")
                vec = {}
                for idx, poly in img.coeffs.items():
                    for m, c in poly.terms.items():
                        vec[index[(idx, m)]] = c
                if span.add(vec):
                    image_dim += 1
            # kernel of the residual map on the same component
            residual_index: dict = {}
            entries: dict[tuple[int, int], Fraction] = {}
            for col, obj in enumerate(module.basis):
                residual = kernel.get_ops("module").expand(d, obj).criterion_residual()
                for mono, coeff in residual.terms.items():
                    row = residual_index.setdefault(mono, len(residual_index))
                    entries[(row, col)] = coeff
            matrix = linalg.QMatrix(len(residual_index), len(module.basis), entries)
            criterion_dim = len(module.basis) - linalg.rank(matrix)
            checked += 1
            if criterion_dim != image_dim:
                report.failures.append(
                    f"key={key}: criterion dim {criterion_dim} != image dim {image_dim}"
                )
    report.cases = checked
    return report


def check_pullback_roundtrip(d: int, max_total: int) -> CheckReport:
    report = CheckReport("pullback-roundtrip", 0)
    checked = 0
    for total in range(2, max_total + 1):
        for key in kernel.component_keys(d, total):
            for mono in kernel.component_basis("meta-ideal", d, key).basis:
                checked += 1
                back = commutator_image(d, mono).pullback()
                if back != MetaElement(d, {mono: Fraction(1)}):
                    report.failures.append(str(mono))
    report.cases = checked
    return report


# ---------------------------------------------------------------------------
# generator sanity
# ---------------------------------------------------------------------------


def check_generator_constancy(algebra: str, d: int) -> CheckReport:
    """Every published generator is annihilated by its derivation."""
    report = CheckReport(f"{algebra}-generators-constant", 0)
    count = 0
    if algebra == "comm":
        from .poly import nowicki_generators

        for g in nowicki_generators(d):
            count += 1
            if g.derive():
                report.failures.append(exprio.render(g))
    elif algebra == "meta":
        for gen in uvconstants.module_generators(d):
            count += 1
            if gen.preimage.derive():
                report.failures.append(f"{gen.label()} preimage")
            if embed(gen.preimage).module != gen.expansion:
                report.failures.append(f"{gen.label()} expansion mismatch")
            if not gen.expansion.is_commutator_image():
                report.failures.append(f"{gen.label()} fails the image criterion")
        for g in uvconstants.lifted_commutative_generators(d):
            count += 1
            if g.derive():
                report.failures.append(exprio.render(g))
    elif algebra == "grass":
        for gen, elem in grassmann_generators(d):
            count += 1
            if elem.derive():
                report.failures.append(gen.label())
    elif algebra == "uv":
        for g in uvconstants.all_generators(d):
            count += 1
            if g.expand(d).derive():
                report.failures.append(g.label())
    else:
        raise ValueError(f"unknown algebra {algebra!r}")
    report.cases = count
    return report


# ---------------------------------------------------------------------------
# canonical basis versus kernel
# ---------------------------------------------------------------------------


def check_canonical_basis(d: int, max_total: int) -> CheckReport:
    """Canonical count = kernel dimension and expansions have full rank."""
    report = CheckReport("canonical-basis", 0)
    checked = 0
    for total in range(1, max_total + 1):
        for key in kernel.component_keys(2 * d, total):
            u_key, v_key = key[:d], key[d:]
            monos = uvconstants.canonical_basis(d, u_key, v_key)
            kdim = kernel.kernel_dimension("uv", d, key)
            index: dict = {}
            span = linalg.IncrementalSpan()
            rank = 0
            for cm in monos:
                vec = {}
                for mono, coeff in cm.expand(d).terms.items():
                    vec[index.setdefault(mono, len(index))] = coeff
                if span.add(vec):
                    rank += 1
            checked += 1
            if not (len(monos) == kdim == rank):
                report.failures.append(
                    f"key={key}: count={len(monos)} kernel={kdim} rank={rank}"
                )
    report.cases = checked
    return report


# ---------------------------------------------------------------------------
# quotient spanning (reduction of the module modulo its generators)
# ---------------------------------------------------------------------------


def check_quotient_spanning(d: int, max_total: int) -> CheckReport:
    """Constants-module components split into reduced forms plus products
    of the eight generator families."""
    report = CheckReport("quotient-spanning", 0)
    gens = uvconstants.module_generators(d)
    checked = 0
    for total in range(1, max_total + 1):
        for key in kernel.component_keys(d, total):
            module = kernel.component_basis("module", d, key)
            index = {obj: k for k, obj in enumerate(module.basis)}

            def vec_of(elem: ModuleElement) -> dict[int, Fraction]:
                out: dict[int, Fraction] = {}
                for idx, poly in elem.coeffs.items():
                    for mono, coeff in poly.terms.items():
                        out[index[(idx, mono)]] = coeff
                return out

            full = linalg.IncrementalSpan()
            for label, gen in uvconstants.cdelta_generators(d):
                gen_key = gen.pair_key()
                rest = tuple(k - g for k, g in zip(key, gen_key))
                if any(r < 0 for r in rest):
                    continue
                for cm in kernel._canonical_by_aggregate(d, rest):
                    full.add(vec_of(gen.mul_poly(cm.expand(d))))
            reduced = linalg.IncrementalSpan()
            count = 0
            for u_key in product(*(range(a + 1) for a in key)):
                v_key = tuple(a - u for a, u in zip(key, u_key))
                for label, elem in uvconstants.spanning_forms(d, u_key, v_key):
                    reduced.add(vec_of(elem))
                    count += 1
            for gen in gens:
                if not gen.expansion:
                    continue
                gen_key = gen.expansion.pair_key()
                rest = tuple(k - g for k, g in zip(key, gen_key))
                if any(r < 0 for r in rest):
                    continue
                for cm in kernel._canonical_by_aggregate(d, rest):
                    reduced.add(vec_of(gen.expansion.mul_poly(cm.expand(d))))
            checked += 1
            if full.rank != reduced.rank:
                report.failures.append(
                    f"key={key}: module span {full.rank} != reduced span {reduced.rank}"
                )
    report.cases = checked
    return report


# ---------------------------------------------------------------------------
# evaluation-kernel ideal membership
# ---------------------------------------------------------------------------


def _grass_component_span(
    d: int, total: int
) -> tuple[list, dict, list[GrassElement]]:
    """Basis objects, index and elements of one total-degree slice."""
    objs: list = []
    for key in kernel.component_keys(d, total):
        objs.extend(kernel.component_basis("grass", d, key).basis)
    index = {obj: k for k, obj in enumerate(objs)}
    elems = [GrassElement(d, {obj: Fraction(1)}) for obj in objs]
    return objs, index, elems


def _grass_vec(elem: GrassElement, index: dict) -> dict[int, Fraction]:
    return {index[m]: c for m, c in elem.terms.items()}


def left_ideal_slice(
    d: int, generators: list[GrassElement], total: int
) -> tuple[linalg.IncrementalSpan, dict]:
    """Span of the degree-``total`` slice of a left ideal."""
    _, index, _ = _grass_component_span(d, total)
    span = linalg.IncrementalSpan()
    for gen in generators:
        gdeg = gen.total_degree()
        if gdeg > total or not gen:
            continue
        if gdeg == total:
            span.add(_grass_vec(gen, index))
            continue
        for key in kernel.component_keys(d, total - gdeg):
            for mono in kernel.component_basis("grass", d, key).basis:
                left = GrassElement(d, {mono: Fraction(1)})
                span.add(_grass_vec(left * gen, index))
    return span, index


def check_evaluation_kernel_ideal(
    d: int, max_total: int, alpha: list[Fraction]
) -> CheckReport:
    """Top-pair-homogeneous elements killed by one evaluation lie in the
    left ideal of the three attached generators and the hooked omegas."""
    from .grassmann import GrassElement as GE

    omega, mu, nu = lemma_elements(d, alpha)
    hooks = [commutator(omega, GE.x_var(d, i)) for i in range(1, d + 1)]
    hooks += [commutator(omega, GE.y_var(d, i)) for i in range(1, d + 1)]
    ideal_gens = [omega, mu, nu] + hooks
    report = CheckReport("evaluation-kernel-ideal", 0)
    checked = 0
    for total in range(1, max_total + 1):
        objs, index, _ = _grass_component_span(d, total)
        ideal_span, _ = left_ideal_slice(d, ideal_gens, total)
        # kernel of the evaluation on each {x_d, y_d}-homogeneous slice
        from .grassmann import grass_pair_degrees

        slices: dict[int, list] = {}
        for obj in objs:
            slices.setdefault(grass_pair_degrees(obj)[-1], []).append(obj)
        for top_deg, slice_objs in sorted(slices.items()):
            image_index: dict = {}
            entries: dict[tuple[int, int], Fraction] = {}
            for col, obj in enumerate(slice_objs):
                image = GrassElement(d, {obj: Fraction(1)}).phi(alpha)
                for mono, coeff in image.terms.items():
                    row = image_index.setdefault(mono, len(image_index))
                    entries[(row, col)] = coeff
            matrix = linalg.QMatrix(len(image_index), len(slice_objs), entries)
            for vec in linalg.nullspace(matrix):
                checked += 1
                lifted = {
                    index[obj]: c for obj, c in zip(slice_objs, vec) if c
                }
                if not ideal_span.contains(lifted):
                    elem = GrassElement(
                        d,
                        {obj: c for obj, c in zip(slice_objs, vec) if c},
                    )
                    report.failures.append(
                        f"total={total} top-degree={top_deg}: {exprio.render(elem)}"
                    )
    report.cases = checked
    return report


def check_joint_evaluation_kernel_ideal(max_total: int) -> CheckReport:
    """Rank-2 elements killed by every evaluation lie in the left ideal
    generated by v(1,2) and its hook with x2."""
    d = 2
    v12 = v_gen(d, 1, 2)
    ideal_gens = [v12, commutator(v12, GrassElement.x_var(d, 2))]
    report = CheckReport("joint-evaluation-kernel-ideal", 0)
    checked = 0
    for total in range(1, max_total + 1):
        objs, index, _ = _grass_component_span(d, total)
        ideal_span, _ = left_ideal_slice(d, ideal_gens, total)
        samples = [Fraction(t) for t in range(1, total + 2)]
        joint: list[dict[int, Fraction]] | None = None
        entries: dict[tuple[int, int], Fraction] = {}
        image_index: dict = {}
        row_offset = 0
        for alpha_val in samples:
            local_index: dict = {}
            for col, obj in enumerate(objs):
                image = GrassElement(d, {obj: Fraction(1)}).phi([alpha_val])
                for mono, coeff in image.terms.items():
                    row = local_index.setdefault(mono, len(local_index))
                    entries[(row_offset + row, col)] = coeff
            row_offset += len(local_index)
        matrix = linalg.QMatrix(row_offset, len(objs), entries)
        for vec in linalg.nullspace(matrix):
            checked += 1
            as_dict = {k: c for k, c in enumerate(vec) if c}
            if not ideal_span.contains(as_dict):
                elem = GrassElement(
                    d, {obj: c for obj, c in zip(objs, vec) if c}
                )
                report.failures.append(f"total={total}: {exprio.render(elem)}")
    report.cases = checked
    return report


def check_word_reduction(
    d: int, max_p: int, generators: list[GrassElement] | None = None
) -> CheckReport:
    """x_{k1}..x_{kp} y_d^p = c + g1 x_d + g2 [x_d, y_d] with c generated."""
    report = CheckReport("word-reduction", 0)
    gens = (
        generators
        if generators is not None
        else [elem for _, elem in grassmann_generators(d)]
    )
    ops = kernel.get_ops("grass")
    closure = kernel._GradedClosure(ops, d, gens)
    checked = 0
    for p in range(1, max_p + 1):
        for ks in product(range(1, d + 1), repeat=p):
            elem = GrassElement.one(d)
            for k in ks:
                elem = elem * GrassElement.x_var(d, k)
            elem = elem * GrassElement.y_var(d, d) ** p
            key = elem.pair_key()
            basis_objs = ops.basis(d, key)
            index = {obj: k for k, obj in enumerate(basis_objs)}
            span = linalg.IncrementalSpan()
            sub_span, sub_elems = closure.component(key)
            for e in sub_elems:
                span.add({index[m]: c for m, c in e.terms.items()})
            x_d = GrassElement.x_var(d, d)
            xy_block = commutator(x_d, GrassElement.y_var(d, d))
            lower = tuple(k - e for k, e in zip(key, x_d.pair_key()))
            if all(v >= 0 for v in lower):
                for mono in ops.basis(d, lower):
                    g = GrassElement(d, {mono: Fraction(1)}) * x_d
                    span.add({index[m]: c for m, c in g.terms.items()})
            lower2 = tuple(k - e for k, e in zip(key, xy_block.pair_key()))
            if all(v >= 0 for v in lower2):
                for mono in ops.basis(d, lower2):
                    g = GrassElement(d, {mono: Fraction(1)}) * xy_block
                    span.add({index[m]: c for m, c in g.terms.items()})
            checked += 1
            if not span.contains({index[m]: c for m, c in elem.terms.items()}):
                report.failures.append(f"p={p} word={ks}")
    report.cases = checked
    return report


# ---------------------------------------------------------------------------
# serialization round trips
# ---------------------------------------------------------------------------


def check_roundtrips(algebra: str, d: int, cases: int, seed: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport(f"roundtrip-{algebra}", cases)
    for _ in range(cases):
        if algebra == "comm":
            elem = random_comm_poly(rng, x_alphabet(2 * d))
        elif algebra == "uv":
            elem = random_comm_poly(rng, uv_alphabet(2 * d))
        elif algebra == "meta":
            elem = random_meta(rng, d)
        elif algebra == "grass":
            elem = random_grass(rng, d)
        elif algebra == "module":
            elem = random_module(rng, d)
        else:
            raise ValueError(f"unknown algebra {algebra!r}")
        text = exprio.render(elem)
        if exprio.parse(text, algebra, d) != elem:
            report.failures.append(f"text: {text}")
        if exprio.from_json(exprio.to_json(elem)) != elem:
            report.failures.append(f"json: {text}")
    return report
