"""The abelian wreath product K[Y] ⋉ M and the embedding of the
free metabelian algebra into it.

``M`` is the free uv-polynomial module on generators ``a_1 .. a_{2d}``
with trivial multiplication ``M·M = 0``.  The two-sided K[Y]-actions are
``y_j · (a_i f) = a_i f u_j`` and ``(a_i f) · y_j = a_i f (v_j + u_j)``
(the primed right-action variable is stored directly as ``v + u``).  The
generator map ``x_j -> y_j + a_j`` extends to an injective algebra
homomorphism; on the commutator ideal its image has the closed form

    x^w [x_i, x_j, x_{t1}, ..., x_{tn}]
        -> (a_i v_j - a_j v_i) v_{t1} ... v_{tn} u^w

and an element ``sum a_i f_i`` of M is such an image exactly when
``sum v_i f_i = 0``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .metabelian import MetaElement, MetaMonomial, _monomial_factors
from .poly import CommPoly, Monomial, monomial_key, pair_degrees, uv_alphabet, y_alphabet


class ModuleElement:
    """An element of the free uv-module on the a-generators."""

    __slots__ = ("d", "coeffs")

    def __init__(
        self, d: int, coeffs: Mapping[int, CommPoly] | None = None
    ) -> None:
        if d < 1:
            raise ValueError("d must be positive")
        alphabet = uv_alphabet(2 * d)
        clean: dict[int, CommPoly] = {}
        if coeffs:
            for idx, poly in coeffs.items():
                if not 1 <= idx <= 2 * d:
                    raise ValueError(f"a-index {idx} out of range")
                if poly.alphabet != alphabet:
                    raise ValueError("module coefficient lives in the wrong ring")
                if poly:
                    clean[idx] = poly
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("ModuleElement is immutable")

    @classmethod
    def zero(cls, d: int) -> "ModuleElement":
        return cls(d)

    @classmethod
    def generator(cls, d: int, idx: int) -> "ModuleElement":
        return cls(d, {idx: CommPoly.one(uv_alphabet(2 * d))})

    def _check_same(self, other: "ModuleElement") -> None:
        if self.d != other.d:
            raise ValueError("rank mismatch")

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.d == other.d and self.coeffs == other.coeffs

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._check_same(other)
        acc = dict(self.coeffs)
        for idx, poly in other.coeffs.items():
            total = acc.get(idx)
            total = poly if total is None else total + poly
            if total:
                acc[idx] = total
            else:
                acc.pop(idx, None)
        return ModuleElement(self.d, acc)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.d, {i: -p for i, p in self.coeffs.items()})

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def scale(self, factor: int | Fraction) -> "ModuleElement":
        return ModuleElement(self.d, {i: p.scale(factor) for i, p in self.coeffs.items()})

    def mul_poly(self, poly: CommPoly) -> "ModuleElement":
        """Right multiplication by a uv-polynomial (the module structure)."""
        return ModuleElement(self.d, {i: p * poly for i, p in self.coeffs.items()})

    def derive(self) -> "ModuleElement":
        acc: dict[int, CommPoly] = {}

        def put(idx: int, poly: CommPoly) -> None:
            if not poly:
                return
            total = acc.get(idx)
            total = poly if total is None else total + poly
            if total:
                acc[idx] = total
            else:
                acc.pop(idx, None)

        for idx, poly in self.coeffs.items():
            put(idx, poly.derive())
            if idx % 2 == 0:
                put(idx - 1, poly)
        return ModuleElement(self.d, acc)

    # -- image criterion and inversion -----------------------------------

    def criterion_residual(self) -> CommPoly:
        """``sum_i v_i f_i``; zero exactly on images of the commutator ideal."""
        alphabet = uv_alphabet(2 * self.d)
        out = CommPoly.zero(alphabet)
        for idx, poly in self.coeffs.items():
            out = out + CommPoly.variable(alphabet, 2 * self.d + idx - 1) * poly
        return out

    def is_commutator_image(self) -> bool:
        return not self.criterion_residual()

    def pullback(self) -> MetaElement:
        """The commutator-ideal preimage of this module element.

        Works lead term by lead term: the highest a-index picks the head
        of a candidate basis commutator, whose smallest v-variable is the
        head's second entry; subtracting the candidate's image strictly
        shrinks the residual.  Raises ``ValueError`` (with the nonzero
        residual rendered) when the element is not an image.
        """
        residual = self.criterion_residual()
        if residual:
            from .exprio import render

            raise ValueError(
                f"not a commutator image; criterion residual = {render(residual)}"
            )
        nvars = 2 * self.d
        remaining = self
        out = MetaElement.zero(self.d)
        while remaining:
            idx = max(remaining.coeffs)
            poly = remaining.coeffs[idx]
            mono, coeff = min(poly.terms.items(), key=lambda kv: monomial_key(kv[0]))
            u_part, v_part = mono[:nvars], mono[nvars:]
            v_support = [k + 1 for k, e in enumerate(v_part) if e]
            if not v_support or v_support[0] >= idx:
                raise ArithmeticError("internal error: pullback found no valid head")
            j = v_support[0]
            tail: list[int] = []
            for k, e in enumerate(v_part):
                mult = e - 1 if k + 1 == j else e
                tail.extend([k + 1] * mult)
            basis_mono = MetaMonomial(u_part, (idx, j, *tail))
            out = out + MetaElement(self.d, {basis_mono: coeff})
            remaining = remaining - commutator_image(self.d, basis_mono).scale(coeff)
        return out

    # -- grading ----------------------------------------------------------

    def pair_key(self) -> tuple[int, ...]:
        """Aggregated per-pair degree (a-, u- and v-contributions summed)."""
        keys = set()
        for idx, poly in self.coeffs.items():
            for mono in poly.terms:
                keys.add(module_pair_degrees(self.d, idx, mono))
        if len(keys) != 1:
            raise ValueError("element is not pair-multihomogeneous")
        return keys.pop()

    def sorted_terms(self) -> list[tuple[int, Monomial, Fraction]]:
        out = []
        for idx in sorted(self.coeffs):
            for mono, coeff in self.coeffs[idx].sorted_terms():
                out.append((idx, mono, coeff))
        return out

    def __repr__(self) -> str:
        from .exprio import render

        return f"ModuleElement({render(self)})"


def module_pair_degrees(d: int, a_idx: int, mono: Monomial) -> tuple[int, ...]:
    nvars = 2 * d
    pairs = [0] * d
    pairs[(a_idx - 1) // 2] += 1
    for k, e in enumerate(pair_degrees(mono[:nvars])):
        pairs[k] += e
    for k, e in enumerate(pair_degrees(mono[nvars:])):
        pairs[k] += e
    return tuple(pairs)


class WreathElement:
    """Polynomial part over the y-variables plus a module part."""

    __slots__ = ("d", "poly", "module")

    def __init__(
        self, d: int, poly: CommPoly | None = None, module: ModuleElement | None = None
    ) -> None:
        if d < 1:
            raise ValueError("d must be positive")
        if poly is None:
            poly = CommPoly.zero(y_alphabet(2 * d))
        if poly.alphabet != y_alphabet(2 * d):
            raise ValueError("polynomial part must live over the y-alphabet")
        if module is None:
            module = ModuleElement.zero(d)
        if module.d != d:
            raise ValueError("rank mismatch between parts")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "module", module)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("WreathElement is immutable")

    @classmethod
    def zero(cls, d: int) -> "WreathElement":
        return cls(d)

    @classmethod
    def one(cls, d: int) -> "WreathElement":
        return cls(d, CommPoly.one(y_alphabet(2 * d)))

    @classmethod
    def y_gen(cls, d: int, idx: int) -> "WreathElement":
        return cls(d, CommPoly.variable(y_alphabet(2 * d), idx - 1))

    @classmethod
    def a_gen(cls, d: int, idx: int) -> "WreathElement":
        return cls(d, module=ModuleElement.generator(d, idx))

    def _check_same(self, other: "WreathElement") -> None:
        if self.d != other.d:
            raise ValueError("rank mismatch")

    def __bool__(self) -> bool:
        return bool(self.poly) or bool(self.module)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WreathElement):
            return NotImplemented
        return self.d == other.d and self.poly == other.poly and self.module == other.module

    def __add__(self, other: "WreathElement") -> "WreathElement":
        self._check_same(other)
        return WreathElement(self.d, self.poly + other.poly, self.module + other.module)

    def __neg__(self) -> "WreathElement":
        return WreathElement(self.d, -self.poly, -self.module)

    def __sub__(self, other: "WreathElement") -> "WreathElement":
        return self + (-other)

    def scale(self, factor: int | Fraction) -> "WreathElement":
        return WreathElement(self.d, self.poly.scale(factor), self.module.scale(factor))

    def _y_to_u(self) -> CommPoly:
        alphabet = uv_alphabet(2 * self.d)
        terms = {}
        for mono, coeff in self.poly.terms.items():
            terms[tuple(mono) + (0,) * (2 * self.d)] = coeff
        return CommPoly(alphabet, terms)

    def _y_to_uv(self) -> CommPoly:
        """Substitute ``y_j -> v_j + u_j`` (the right-action variables)."""
        alphabet = uv_alphabet(2 * self.d)
        out = CommPoly.zero(alphabet)
        nvars = 2 * self.d
        for mono, coeff in self.poly.terms.items():
            term = CommPoly.one(alphabet)
            for j, e in enumerate(mono):
                if e:
                    vu = CommPoly.variable(alphabet, nvars + j) + CommPoly.variable(
                        alphabet, j
                    )
                    term = term * vu**e
            out = out + term.scale(coeff)
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same(other)
        poly = self.poly * other.poly
        module = other.module.mul_poly(self._y_to_u()) + self.module.mul_poly(
            other._y_to_uv()
        )
        return WreathElement(self.d, poly, module)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def derive(self) -> "WreathElement":
        return WreathElement(self.d, self.poly.derive(), self.module.derive())

    def __repr__(self) -> str:
        from .exprio import render

        return f"WreathElement(poly={render(self.poly)}, module={render(self.module)})"


def embed_generator(d: int, j: int) -> WreathElement:
    """The image ``y_j + a_j`` of the j-th metabelian generator."""
    if not 1 <= j <= 2 * d:
        raise ValueError(f"generator index {j} out of range")
    return WreathElement.y_gen(d, j) + WreathElement.a_gen(d, j)


def embed(f: MetaElement) -> WreathElement:
    """The multiplicative extension of ``x_j -> y_j + a_j``.

    Commutator factors are expanded into alternating products of
    generator images, so this route is independent of the closed form in
    ``commutator_image`` and the two can be checked against each other.
    """
    d = f.d
    out = WreathElement.zero(d)
    for mono, coeff in f.terms.items():
        acc = WreathElement.one(d)
        for kind, payload in _monomial_factors(mono):
            if kind == "v":
                acc = acc * embed_generator(d, payload)
            else:
                slots = payload
                comm = embed_generator(d, slots[0]) * embed_generator(d, slots[1]) - (
                    embed_generator(d, slots[1]) * embed_generator(d, slots[0])
                )
                for t in slots[2:]:
                    gen = embed_generator(d, t)
                    comm = comm * gen - gen * comm
                acc = acc * comm
        out = out + acc.scale(coeff)
    return out


def commutator_image(d: int, mono: MetaMonomial) -> ModuleElement:
    """Closed form of the embedding on a basis commutator monomial."""
    if not mono.is_comm:
        raise ValueError("commutator_image expects a commutator-kind monomial")
    alphabet = uv_alphabet(2 * d)
    nvars = 2 * d
    i, j, *tail = mono.comm
    v_exps = [0] * nvars
    for t in tail:
        v_exps[t - 1] += 1
    context = CommPoly.monomial(alphabet, tuple(mono.exps) + tuple(v_exps))
    v_i = CommPoly.variable(alphabet, nvars + i - 1)
    v_j = CommPoly.variable(alphabet, nvars + j - 1)
    return ModuleElement(d, {i: v_j * context, j: -(v_i * context)})


def pullback(m: ModuleElement) -> MetaElement:
    return m.pullback()
