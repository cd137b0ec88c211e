"""Graded constants computation for all the algebras in the package.

Components are keyed by the per-pair multidegree (joint degree in each
variable pair), which the derivation preserves, so the derivation is an
endomorphism of every component and its kernel is an exact nullspace
problem.  Span certificates compare those kernels against the graded
subalgebra (or submodule) generated by a candidate set, computed by
closing component bases under pairwise products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from . import linalg
from .grassmann import GrassElement, GrassMonomial, grass_monomial_key, grass_pair_degrees
from .metabelian import (
    MetaElement,
    MetaMonomial,
    meta_monomial_key,
    meta_pair_degrees,
)
from .poly import CommPoly, Monomial, monomial_key, iter_monomials, pair_degrees
from .poly import uv_alphabet, x_alphabet
from .uvconstants import CanonicalMonomial, generator_multisets, is_canonical
from .wreath import ModuleElement, module_pair_degrees

Key = tuple[int, ...]

ALGEBRAS = ("comm", "uv", "meta", "meta-ideal", "grass", "module")


@dataclass(frozen=True)
class AlgebraOps:
    """Uniform component-level interface onto one algebra."""

    tag: str
    npairs: Callable[[int], int]
    basis: Callable[[int, Key], list]
    expand: Callable[[int, object], object]
    derive: Callable[[object], object]
    decompose: Callable[[object], dict]
    render: Callable[[int, object], str]
    mul: Callable[[object, object], object] | None = None


def _comm_basis(d: int, key: Key) -> list[Monomial]:
    return list(iter_monomials(x_alphabet(2 * d), key))


def _uv_basis(d: int, key: Key) -> list[Monomial]:
    return list(iter_monomials(uv_alphabet(2 * d), key))


def _meta_comm_monomials(d: int, key: Key) -> Iterator[MetaMonomial]:
    """Commutator-kind basis monomials with the given pair multidegree."""
    nvars = 2 * d

    def slot_profiles() -> Iterator[tuple[int, ...]]:
        ranges = [range(k + 1) for k in key]
        for prof in product(*ranges):
            if sum(prof) >= 2:
                yield prof

    for prof in slot_profiles():
        word_key = tuple(k - p for k, p in zip(key, prof))
        word_monos = list(iter_monomials(x_alphabet(nvars), word_key))
        pair_multisets = []
        for pair_idx, count in enumerate(prof):
            lo, hi = 2 * pair_idx + 1, 2 * pair_idx + 2
            pair_multisets.append(
                [(lo,) * (count - t) + (hi,) * t for t in range(count + 1)]
            )
        for combo in product(*pair_multisets):
            slots: list[int] = []
            for chunk in combo:
                slots.extend(chunk)
            slots.sort()
            mn = slots[0]
            heads = sorted({s for s in slots if s > mn})
            for head in heads:
                tail = list(slots)
                tail.remove(mn)
                tail.remove(head)
                comm = (head, mn, *tail)
                for word in word_monos:
                    yield MetaMonomial(word, comm)


def _meta_basis(d: int, key: Key) -> list[MetaMonomial]:
    pure = [MetaMonomial(m) for m in _comm_basis(d, key)]
    ideal = sorted(_meta_comm_monomials(d, key), key=meta_monomial_key)
    return pure + ideal


def _meta_ideal_basis(d: int, key: Key) -> list[MetaMonomial]:
    return sorted(_meta_comm_monomials(d, key), key=meta_monomial_key)


def _grass_basis(d: int, key: Key) -> list[GrassMonomial]:
    nvars = 2 * d
    blocks: list[tuple[int, ...]] = []
    for size in range(0, nvars + 1, 2):
        from itertools import combinations

        blocks.extend(combinations(range(nvars), size))
    out: list[GrassMonomial] = []
    for block in blocks:
        used = [0] * d
        for pos in block:
            used[pos // 2] += 1
        word_key = tuple(k - u for k, u in zip(key, used))
        if any(w < 0 for w in word_key):
            continue
        for word in iter_monomials(x_alphabet(nvars), word_key):
            out.append(GrassMonomial(word, block))
    out.sort(key=grass_monomial_key)
    return out


def _module_basis(d: int, key: Key) -> list[tuple[int, Monomial]]:
    """Basis (a-index, uv-monomial) pairs of one aggregated component."""
    out: list[tuple[int, Monomial]] = []
    for a_idx in range(1, 2 * d + 1):
        rest = list(key)
        rest[(a_idx - 1) // 2] -= 1
        if rest[(a_idx - 1) // 2] < 0:
            continue
        per_pair_options = []
        for r in rest:
            options = []
            for u_deg in range(r + 1):
                v_deg = r - u_deg
                for u_lo in range(u_deg + 1):
                    for v_lo in range(v_deg + 1):
                        options.append(
                            (u_deg - u_lo, u_lo, v_deg - v_lo, v_lo)
                        )
            per_pair_options.append(options)
        for combo in product(*per_pair_options):
            u_part: list[int] = []
            v_part: list[int] = []
            for ulo, uhi, vlo, vhi in combo:
                u_part.extend((ulo, uhi))
                v_part.extend((vlo, vhi))
            out.append((a_idx, tuple(u_part) + tuple(v_part)))
    out.sort(key=lambda t: (t[0], monomial_key(t[1])))
    return out


def _module_expand(d: int, obj: tuple[int, Monomial]) -> ModuleElement:
    a_idx, mono = obj
    return ModuleElement(d, {a_idx: CommPoly.monomial(uv_alphabet(2 * d), mono)})


def _module_decompose(elem: ModuleElement) -> dict[tuple[int, Monomial], Fraction]:
    out: dict[tuple[int, Monomial], Fraction] = {}
    for idx, poly in elem.coeffs.items():
        for mono, coeff in poly.terms.items():
            out[(idx, mono)] = coeff
    return out


def _render(d: int, element) -> str:
    from .exprio import render

    return render(element)


def get_ops(tag: str) -> AlgebraOps:
    if tag == "comm":
        return AlgebraOps(
            tag,
            npairs=lambda d: d,
            basis=_comm_basis,
            expand=lambda d, m: CommPoly.monomial(x_alphabet(2 * d), m),
            derive=lambda p: p.derive(),
            decompose=lambda p: dict(p.terms),
            render=_render,
            mul=lambda a, b: a * b,
        )
    if tag == "uv":
        return AlgebraOps(
            tag,
            npairs=lambda d: 2 * d,
            basis=_uv_basis,
            expand=lambda d, m: CommPoly.monomial(uv_alphabet(2 * d), m),
            derive=lambda p: p.derive(),
            decompose=lambda p: dict(p.terms),
            render=_render,
            mul=lambda a, b: a * b,
        )
    if tag == "meta":
        return AlgebraOps(
            tag,
            npairs=lambda d: d,
            basis=_meta_basis,
            expand=lambda d, m: MetaElement(d, {m: Fraction(1)}),
            derive=lambda e: e.derive(),
            decompose=lambda e: dict(e.terms),
            render=_render,
            mul=lambda a, b: a * b,
        )
    if tag == "meta-ideal":
        return AlgebraOps(
            tag,
            npairs=lambda d: d,
            basis=_meta_ideal_basis,
            expand=lambda d, m: MetaElement(d, {m: Fraction(1)}),
            derive=lambda e: e.derive(),
            decompose=lambda e: dict(e.terms),
            render=_render,
            mul=lambda a, b: a * b,
        )
    if tag == "grass":
        return AlgebraOps(
            tag,
            npairs=lambda d: d,
            basis=_grass_basis,
            expand=lambda d, m: GrassElement(d, {m: Fraction(1)}),
            derive=lambda e: e.derive(),
            decompose=lambda e: dict(e.terms),
            render=_render,
            mul=lambda a, b: a * b,
        )
    if tag == "module":
        return AlgebraOps(
            tag,
            npairs=lambda d: d,
            basis=_module_basis,
            expand=_module_expand,
            derive=lambda e: e.derive(),
            decompose=_module_decompose,
            render=_render,
        )
    raise ValueError(f"unknown algebra tag {tag!r}")


def element_pair_key(tag: str, element) -> Key:
    if tag in ("comm", "uv"):
        return element.pair_key()
    if tag in ("meta", "meta-ideal"):
        return element.pair_key()
    if tag == "grass":
        return element.pair_key()
    if tag == "module":
        return element.pair_key()
    raise ValueError(f"unknown algebra tag {tag!r}")


def component_keys(npairs: int, total: int) -> list[Key]:
    """All pair multidegrees of the exact total degree, sorted."""

    def rec(slots: int, left: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield (left,)
            return
        for first in range(left + 1):
            for rest in rec(slots - 1, left - first):
                yield (first,) + rest

    return sorted(rec(npairs, total))


@dataclass(frozen=True)
class GradedComponent:
    """One homogeneous component with its ordered basis."""

    algebra: str
    d: int
    key: Key
    basis: tuple


def component_basis(algebra: str, d: int, key: Sequence[int]) -> GradedComponent:
    ops = get_ops(algebra)
    key = tuple(key)
    if len(key) != ops.npairs(d) or any(k < 0 for k in key):
        raise ValueError("invalid multidegree")
    return GradedComponent(algebra, d, key, tuple(ops.basis(d, key)))


def derivation_matrix(component: GradedComponent) -> linalg.QMatrix:
    """Matrix of the derivation on the component, columns over its basis.

    The derivation preserves the pair multidegree, so source and target
    bases coincide.
    """
    ops = get_ops(component.algebra)
    index = {obj: k for k, obj in enumerate(component.basis)}
    entries: dict[tuple[int, int], Fraction] = {}
    for col, obj in enumerate(component.basis):
        image = ops.derive(ops.expand(component.d, obj))
        for mono, coeff in ops.decompose(image).items():
            row = index.get(mono)
            if row is None:
                raise ArithmeticError(
                    "internal error: derivation leaves the component"
                )
            entries[(row, col)] = coeff
    n = len(component.basis)
    return linalg.QMatrix(n, n, entries)


def kernel_vectors(component: GradedComponent) -> list[linalg.Vector]:
    return linalg.nullspace(derivation_matrix(component))


def kernel_basis(algebra: str, d: int, key: Sequence[int]) -> list:
    """Constants of the component, as algebra elements."""
    component = component_basis(algebra, d, key)
    ops = get_ops(algebra)
    out = []
    for vec in kernel_vectors(component):
        elem = None
        for coeff, obj in zip(vec, component.basis):
            if coeff:
                piece = ops.expand(d, obj).scale(coeff)
                elem = piece if elem is None else elem + piece
        out.append(elem)
    return out


def kernel_dimension(algebra: str, d: int, key: Sequence[int]) -> int:
    component = component_basis(algebra, d, key)
    return len(component.basis) - linalg.rank(derivation_matrix(component))


@dataclass
class SpanReport:
    """Kernel-versus-span certificate for one component."""

    algebra: str
    d: int
    key: Key
    kernel_dim: int
    span_dim: int
    missing: list[str] = field(default_factory=list)
    dependencies: list[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.kernel_dim == self.span_dim and not self.missing

    def as_dict(self) -> dict:
        return {
            "key": list(self.key),
            "kernel_dim": self.kernel_dim,
            "span_dim": self.span_dim,
            "verified": self.verified,
            "missing": self.missing,
            "dependencies": self.dependencies,
        }


class _GradedClosure:
    """Component bases of the subalgebra generated by homogeneous elements."""

    def __init__(self, ops: AlgebraOps, d: int, candidates: Sequence) -> None:
        self.ops = ops
        self.d = d
        self.by_key: dict[Key, list] = {}
        for cand in candidates:
            if not cand:
                continue
            key = element_pair_key(ops.tag, cand)
            self.by_key.setdefault(key, []).append(cand)
        self._cache: dict[Key, tuple[linalg.IncrementalSpan, list]] = {}

    def component(self, key: Key) -> tuple[linalg.IncrementalSpan, list]:
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        span = linalg.IncrementalSpan()
        elements: list = []
        basis_objs = self.ops.basis(self.d, key)
        index = {obj: k for k, obj in enumerate(basis_objs)}

        def vec_of(elem) -> dict[int, Fraction]:
            return {index[m]: c for m, c in self.ops.decompose(elem).items()}

        def push(elem) -> None:
            if elem and span.add(vec_of(elem)):
                elements.append(elem)

        for cand in self.by_key.get(key, []):
            push(cand)
        for sub_key in self._proper_subkeys(key):
            rest = tuple(k - s for k, s in zip(key, sub_key))
            _, left = self.component(sub_key)
            _, right = self.component(rest)
            for e1 in left:
                for e2 in right:
                    push(self.ops.mul(e1, e2))
        self._cache[key] = (span, elements)
        return self._cache[key]

    def _proper_subkeys(self, key: Key) -> list[Key]:
        subs = []
        for combo in product(*(range(k + 1) for k in key)):
            if any(combo) and combo != key:
                subs.append(combo)
        return sorted(subs)


def _component_report(
    ops: AlgebraOps,
    d: int,
    key: Key,
    span: linalg.IncrementalSpan,
    product_labels: list[tuple[str, bool]],
) -> SpanReport:
    component = GradedComponent(ops.tag, d, key, tuple(ops.basis(d, key)))
    kernel = kernel_vectors(component)
    missing: list[str] = []
    for vec in kernel:
        as_dict = {k: v for k, v in enumerate(vec) if v}
        if not span.contains(as_dict):
            elem = None
            for coeff, obj in zip(vec, component.basis):
                if coeff:
                    piece = ops.expand(d, obj).scale(coeff)
                    elem = piece if elem is None else elem + piece
            missing.append(ops.render(d, elem))
    deps = [label for label, fresh in product_labels if not fresh][:8]
    return SpanReport(
        ops.tag, d, key, len(kernel), span.rank, missing, deps
    )


def span_check(
    algebra: str,
    d: int,
    candidates: Sequence[tuple[str, object]],
    max_total: int,
) -> list[SpanReport]:
    """Compare kernels against the graded subalgebra the candidates generate.

    Every candidate must be a constant; a non-constant candidate is an
    error naming the offender and its derivative.
    """
    ops = get_ops(algebra)
    if ops.mul is None:
        raise ValueError(f"algebra {algebra!r} has no product; use module_span_check")
    for label, cand in candidates:
        image = ops.derive(cand)
        if image:
            raise ValueError(
                f"candidate {label} is not a constant: derive -> {ops.render(d, image)}"
            )
    closure = _GradedClosure(ops, d, [c for _, c in candidates])
    reports = []
    for total in range(1, max_total + 1):
        for key in component_keys(ops.npairs(d), total):
            span, _ = closure.component(key)
            reports.append(_component_report(ops, d, key, span, []))
    return reports


def module_span_check(
    d: int,
    generators: Sequence[tuple[str, MetaElement]],
    max_total: int,
) -> list[SpanReport]:
    """Kernel of the commutator-ideal components versus generator products.

    Products are generator times canonical constants monomial, computed
    through the module action on the commutator ideal.
    """
    ops = get_ops("meta-ideal")
    for label, gen in generators:
        image = gen.derive()
        if image:
            raise ValueError(
                f"generator {label} is not a constant: derive -> {ops.render(d, image)}"
            )
    live = [(label, gen) for label, gen in generators if gen]
    reports = []
    for total in range(2, max_total + 1):
        for key in component_keys(d, total):
            basis_objs = ops.basis(d, key)
            index = {obj: k for k, obj in enumerate(basis_objs)}
            span = linalg.IncrementalSpan()
            labels: list[tuple[str, bool]] = []
            for label, gen in live:
                gen_key = gen.pair_key()
                rest = tuple(k - g for k, g in zip(key, gen_key))
                if any(r < 0 for r in rest):
                    continue
                for monomial in _canonical_by_aggregate(d, rest):
                    elem = gen.act_uv(monomial.expand(d))
                    if not elem:
                        continue
                    vec = {index[m]: c for m, c in elem.terms.items()}
                    fresh = span.add(vec)
                    labels.append((f"{label}*{monomial.label()}", fresh))
            reports.append(_component_report(ops, d, key, span, labels))
    return reports


def meta_algebra_candidates(
    d: int,
    max_total: int,
    module_gens: Sequence[tuple[str, MetaElement]],
) -> list[tuple[str, MetaElement]]:
    """Candidates certifying the full metabelian constants algebra:
    the lifted commutative generators plus every module product of the
    given commutator-ideal generators up to the degree bound."""
    from .uvconstants import lifted_commutative_generators

    from .exprio import render

    candidates = [(render(g), g) for g in lifted_commutative_generators(d)]
    for label, gen in module_gens:
        if not gen:
            continue
        gen_total = gen.total_degree()
        for total in range(0, max_total - gen_total + 1):
            for key in component_keys(d, total):
                for monomial in _canonical_by_aggregate(d, key):
                    elem = gen.act_uv(monomial.expand(d))
                    if elem:
                        candidates.append((f"{label}*{monomial.label()}", elem))
    return candidates


def _canonical_by_aggregate(d: int, aggregate: Key) -> list[CanonicalMonomial]:
    """Canonical monomials whose u+v pair degrees sum to the aggregate."""
    out: list[CanonicalMonomial] = []
    for u_key in product(*(range(a + 1) for a in aggregate)):
        v_key = tuple(a - u for a, u in zip(aggregate, u_key))
        for ms in generator_multisets(d, u_key, v_key):
            if is_canonical(ms, d):
                out.append(CanonicalMonomial.from_gens(ms))
    return out
