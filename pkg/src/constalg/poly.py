"""Sparse multivariate polynomials over Q with a Weitzenboeck derivation.

The alphabets used here come in consecutive (lower, upper) variable pairs:
the derivation kills the lower variable of each pair and sends the upper
one to it.  For the x-alphabet that reads ``d(x2i) = x2i-1, d(x2i-1) = 0``;
for the combined uv-alphabet the same rule applies inside the u block and
inside the v block.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping

Monomial = tuple[int, ...]

_KINDS = ("X", "Y", "U", "V", "UV")


@dataclass(frozen=True)
class VarAlphabet:
    """An indexed variable alphabet with the paired derivation structure."""

    kind: str
    size: int

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown alphabet kind {self.kind!r}")
        if self.size <= 0 or self.size % 2:
            raise ValueError("alphabet size must be a positive even number")
        if self.kind == "UV" and self.size % 4:
            raise ValueError("a UV alphabet needs equal even-sized u and v blocks")

    @property
    def npairs(self) -> int:
        return self.size // 2

    def var_name(self, idx: int) -> str:
        if not 0 <= idx < self.size:
            raise IndexError(f"variable index {idx} out of range")
        if self.kind == "UV":
            half = self.size // 2
            if idx < half:
                return f"u{idx + 1}"
            return f"v{idx - half + 1}"
        return f"{self.kind.lower()}{idx + 1}"


def x_alphabet(size: int) -> VarAlphabet:
    return VarAlphabet("X", size)


def y_alphabet(size: int) -> VarAlphabet:
    return VarAlphabet("Y", size)


def uv_alphabet(block: int) -> VarAlphabet:
    """Alphabet u1..u{block}, v1..v{block} in one ring."""
    return VarAlphabet("UV", 2 * block)


def monomial_key(mono: Monomial) -> tuple:
    # graded order; within one degree the variables earliest in the
    # alphabet dominate, so x1*x4 prints before x2*x3
    return (sum(mono), tuple(-e for e in mono))


def pair_degrees(mono: Monomial) -> tuple[int, ...]:
    return tuple(mono[k] + mono[k + 1] for k in range(0, len(mono), 2))


class CommPoly:
    """A sparse commutative polynomial with exact rational coefficients."""

    __slots__ = ("alphabet", "terms")

    def __init__(
        self,
        alphabet: VarAlphabet,
        terms: Mapping[Monomial, int | Fraction] | None = None,
    ) -> None:
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, raw in terms.items():
                if len(mono) != alphabet.size:
                    raise ValueError("monomial length does not match the alphabet")
                if any(e < 0 for e in mono):
                    raise ValueError("negative exponent")
                coeff = raw if isinstance(raw, Fraction) else Fraction(raw)
                if coeff:
                    clean[tuple(mono)] = coeff
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("CommPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, alphabet: VarAlphabet) -> "CommPoly":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: VarAlphabet) -> "CommPoly":
        return cls(alphabet, {(0,) * alphabet.size: Fraction(1)})

    @classmethod
    def variable(cls, alphabet: VarAlphabet, idx: int) -> "CommPoly":
        exps = [0] * alphabet.size
        exps[idx] = 1
        return cls(alphabet, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(
        cls, alphabet: VarAlphabet, mono: Monomial, coeff: int | Fraction = 1
    ) -> "CommPoly":
        return cls(alphabet, {tuple(mono): coeff})

    # -- ring structure -------------------------------------------------

    def _check_same(self, other: "CommPoly") -> None:
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CommPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __add__(self, other: "CommPoly") -> "CommPoly":
        self._check_same(other)
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            total = acc.get(mono, Fraction(0)) + coeff
            if total:
                acc[mono] = total
            else:
                acc.pop(mono, None)
        return CommPoly(self.alphabet, acc)

    def __neg__(self) -> "CommPoly":
        return CommPoly(self.alphabet, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "CommPoly") -> "CommPoly":
        return self + (-other)

    def scale(self, factor: int | Fraction) -> "CommPoly":
        factor = factor if isinstance(factor, Fraction) else Fraction(factor)
        if not factor:
            return CommPoly.zero(self.alphabet)
        return CommPoly(self.alphabet, {m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same(other)
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                total = acc.get(mono, Fraction(0)) + c1 * c2
                if total:
                    acc[mono] = total
                else:
                    acc.pop(mono, None)
        return CommPoly(self.alphabet, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "CommPoly":
        if n < 0:
            raise ValueError("negative power")
        out = CommPoly.one(self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    # -- derivation -----------------------------------------------------

    def derive(self) -> "CommPoly":
        """The Weitzenboeck derivation, extended by the Leibniz rule."""
        acc: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            for k in range(0, len(mono), 2):
                e = mono[k + 1]
                if e:
                    new = list(mono)
                    new[k + 1] -= 1
                    new[k] += 1
                    key = tuple(new)
                    total = acc.get(key, Fraction(0)) + coeff * e
                    if total:
                        acc[key] = total
                    else:
                        acc.pop(key, None)
        return CommPoly(self.alphabet, acc)

    def exp_derive(self) -> "CommPoly":
        """The unipotent operator ``sum_k derive^k / k!``.

        The sum is finite because the derivation is locally nilpotent.
        """
        out = self
        term = self
        k = 0
        while term:
            k += 1
            term = term.derive()
            if term:
                out = out + term.scale(Fraction(1, factorial(k)))
        return out

    # -- grading --------------------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)

    def pair_key(self) -> tuple[int, ...]:
        """The common per-pair multidegree; raises if inhomogeneous."""
        keys = {pair_degrees(m) for m in self.terms}
        if len(keys) != 1:
            raise ValueError("polynomial is not pair-multihomogeneous")
        return keys.pop()

    def pair_components(self) -> dict[tuple[int, ...], "CommPoly"]:
        split: dict[tuple[int, ...], dict[Monomial, Fraction]] = {}
        for mono, coeff in self.terms.items():
            split.setdefault(pair_degrees(mono), {})[mono] = coeff
        return {k: CommPoly(self.alphabet, t) for k, t in sorted(split.items())}

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    def __repr__(self) -> str:
        from .exprio import render

        return f"CommPoly({render(self)})"


def nowicki_generators(d: int) -> list[CommPoly]:
    """The d odd variables and the d(d-1)/2 determinants killed by derive."""
    if d < 1:
        raise ValueError("d must be positive")
    alphabet = x_alphabet(2 * d)
    gens = [CommPoly.variable(alphabet, 2 * i) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            det = CommPoly.variable(alphabet, 2 * i) * CommPoly.variable(
                alphabet, 2 * j + 1
            ) - CommPoly.variable(alphabet, 2 * i + 1) * CommPoly.variable(
                alphabet, 2 * j
            )
            gens.append(det)
    return gens


def iter_monomials(alphabet: VarAlphabet, key: Iterable[int]) -> Iterator[Monomial]:
    """All monomials with the given per-pair multidegree, in a fixed order."""
    key = tuple(key)
    if len(key) != alphabet.npairs:
        raise ValueError("pair multidegree length mismatch")

    def splits(pair_deg: int) -> list[tuple[int, int]]:
        return [(pair_deg - t, t) for t in range(pair_deg + 1)]

    from itertools import product

    for combo in product(*(splits(k) for k in key)):
        mono: list[int] = []
        for lo, hi in combo:
            mono.append(lo)
            mono.append(hi)
        yield tuple(mono)
