"""The free metabelian associative algebra of rank 2d.

Elements are kept in the normal form spanned by sorted words
``x1^e1 ... x{2d}^e{2d}`` and commutator terms
``x1^e1 ... x{2d}^e{2d} [x_i, x_j, x_{t1}, ..., x_{tm}]`` with
``i > j <= t1 <= ... <= tm``.  All Lie commutators are left normed,
``[x, y, z] = [[x, y], z]``, and a product of two commutator factors is
zero.  The commutator ideal carries a module action of the uv-polynomial
ring: ``f.u_i = x_i f`` (left multiplication) and ``f.v_i = [f, x_i]``
(right Lie multiplication).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .poly import CommPoly, Monomial, pair_degrees, uv_alphabet


class MetaMonomial(NamedTuple):
    """Basis monomial: exponent word plus an optional commutator block.

    ``comm`` is empty for a plain word, otherwise ``(i, j, t1, ..., tm)``
    with 1-based variable indices satisfying ``i > j <= t1 <= ... <= tm``.
    """

    exps: tuple[int, ...]
    comm: tuple[int, ...] = ()

    @property
    def is_comm(self) -> bool:
        return bool(self.comm)

    def total_degree(self) -> int:
        return sum(self.exps) + len(self.comm)


# A "factor" is ('v', index) for a single letter or ('c', slots) for a
# left-normed commutator; sequences of factors are the raw, un-normalized
# word expressions the rewriting below consumes.
Factor = tuple[str, object]
RawTerm = tuple[Fraction, tuple[Factor, ...]]


def norm_commutator(slots: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """Rewrite a left-normed commutator into basis commutators.

    Returns (sign, slots) pairs.  Tails are sorted (they commute on the
    commutator ideal) and a head whose second entry exceeds the smallest
    tail entry is split with the Jacobi identity
    ``[a, b, c] = [a, c, b] - [b, c, a]``.
    """
    if len(slots) < 2:
        raise ValueError("a commutator needs at least two entries")
    i, j = slots[0], slots[1]
    tail = sorted(slots[2:])
    if i == j:
        return []
    sign = 1
    if i < j:
        i, j = j, i
        sign = -1
    if tail and j > tail[0]:
        k = tail[0]
        rest = tuple(tail[1:])
        out = [(sign * s, c) for s, c in norm_commutator((i, k, j) + rest)]
        out.extend((-sign * s, c) for s, c in norm_commutator((j, k, i) + rest))
        return out
    return [(sign, (i, j, *tail))]


def _word_exps(letters: Iterable[int], nvars: int) -> tuple[int, ...]:
    exps = [0] * nvars
    for letter in letters:
        exps[letter - 1] += 1
    return tuple(exps)


def _normalize_factors(
    coeff: Fraction,
    factors: tuple[Factor, ...],
    nvars: int,
    sink: dict[MetaMonomial, Fraction],
) -> None:
    comm_positions = [k for k, f in enumerate(factors) if f[0] == "c"]
    if len(comm_positions) >= 2:
        return  # the commutator ideal squares to zero
    if comm_positions:
        k = comm_positions[0]
        if k + 1 < len(factors):
            # C * x_t = x_t * C + [C, x_t]
            letter = factors[k + 1]
            swapped = factors[:k] + (letter, factors[k]) + factors[k + 2 :]
            _normalize_factors(coeff, swapped, nvars, sink)
            slots = factors[k][1]
            extended = (
                factors[:k]
                + (("c", tuple(slots) + (letter[1],)),)
                + factors[k + 2 :]
            )
            _normalize_factors(coeff, extended, nvars, sink)
            return
        letters = [f[1] for f in factors[:k]]
        exps = _word_exps(letters, nvars)
        for sign, slots in norm_commutator(factors[k][1]):
            mono = MetaMonomial(exps, slots)
            total = sink.get(mono, Fraction(0)) + coeff * sign
            if total:
                sink[mono] = total
            else:
                sink.pop(mono, None)
        return
    letters = [f[1] for f in factors]
    for idx in range(len(letters) - 1):
        b, a = letters[idx], letters[idx + 1]
        if b > a:
            # x_b x_a = x_a x_b + [x_b, x_a]
            swapped = list(factors)
            swapped[idx], swapped[idx + 1] = swapped[idx + 1], swapped[idx]
            _normalize_factors(coeff, tuple(swapped), nvars, sink)
            merged = factors[:idx] + (("c", (b, a)),) + factors[idx + 2 :]
            _normalize_factors(coeff, merged, nvars, sink)
            return
    mono = MetaMonomial(_word_exps(letters, nvars))
    total = sink.get(mono, Fraction(0)) + coeff
    if total:
        sink[mono] = total
    else:
        sink.pop(mono, None)


def _monomial_factors(mono: MetaMonomial) -> tuple[Factor, ...]:
    factors: list[Factor] = []
    for idx, e in enumerate(mono.exps):
        factors.extend(("v", idx + 1) for _ in range(e))
    if mono.comm:
        factors.append(("c", mono.comm))
    return tuple(factors)


class MetaElement:
    """An element of the rank-2d free metabelian associative algebra."""

    __slots__ = ("d", "terms")

    def __init__(
        self, d: int, terms: Mapping[MetaMonomial, int | Fraction] | None = None
    ) -> None:
        if d < 1:
            raise ValueError("d must be positive")
        clean: dict[MetaMonomial, Fraction] = {}
        if terms:
            for mono, raw in terms.items():
                if len(mono.exps) != 2 * d:
                    raise ValueError("monomial rank mismatch")
                coeff = raw if isinstance(raw, Fraction) else Fraction(raw)
                if coeff:
                    clean[mono] = coeff
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name: str, value) -> None:
        raise AttributeError("MetaElement is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, d: int) -> "MetaElement":
        return cls(d)

    @classmethod
    def one(cls, d: int) -> "MetaElement":
        return cls(d, {MetaMonomial((0,) * (2 * d)): Fraction(1)})

    @classmethod
    def variable(cls, d: int, i: int) -> "MetaElement":
        if not 1 <= i <= 2 * d:
            raise ValueError(f"variable index {i} out of range for rank {2 * d}")
        return cls(d, {MetaMonomial(_word_exps([i], 2 * d)): Fraction(1)})

    @classmethod
    def word(cls, d: int, letters: Sequence[int]) -> "MetaElement":
        raw = tuple(("v", i) for i in letters)
        return cls.from_raw(d, [(Fraction(1), raw)])

    @classmethod
    def commutator(cls, d: int, slots: Sequence[int]) -> "MetaElement":
        return cls.from_raw(d, [(Fraction(1), (("c", tuple(slots)),))])

    @classmethod
    def from_raw(cls, d: int, raw_terms: Iterable[RawTerm]) -> "MetaElement":
        """Normalize a formal combination of words and commutator symbols."""
        sink: dict[MetaMonomial, Fraction] = {}
        nvars = 2 * d
        for coeff, factors in raw_terms:
            for kind, payload in factors:
                if kind == "v":
                    if not 1 <= payload <= nvars:
                        raise ValueError(f"variable index {payload} out of range")
                elif kind == "c":
                    if len(payload) < 2:
                        raise ValueError("malformed commutator: fewer than 2 entries")
                    if any(not 1 <= s <= nvars for s in payload):
                        raise ValueError("commutator entry out of range")
                else:
                    raise ValueError(f"unknown factor kind {kind!r}")
            coeff = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            if coeff:
                _normalize_factors(coeff, tuple(factors), nvars, sink)
        return cls(d, sink)

    # -- algebra structure ----------------------------------------------

    def _check_same(self, other: "MetaElement") -> None:
        if self.d != other.d:
            raise ValueError("rank mismatch")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetaElement):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __add__(self, other: "MetaElement") -> "MetaElement":
        self._check_same(other)
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            total = acc.get(mono, Fraction(0)) + coeff
            if total:
                acc[mono] = total
            else:
                acc.pop(mono, None)
        return MetaElement(self.d, acc)

    def __neg__(self) -> "MetaElement":
        return MetaElement(self.d, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "MetaElement") -> "MetaElement":
        return self + (-other)

    def scale(self, factor: int | Fraction) -> "MetaElement":
        factor = factor if isinstance(factor, Fraction) else Fraction(factor)
        if not factor:
            return MetaElement.zero(self.d)
        return MetaElement(self.d, {m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same(other)
        sink: dict[MetaMonomial, Fraction] = {}
        nvars = 2 * self.d
        for m1, c1 in self.terms.items():
            f1 = _monomial_factors(m1)
            for m2, c2 in other.terms.items():
                _normalize_factors(c1 * c2, f1 + _monomial_factors(m2), nvars, sink)
        return MetaElement(self.d, sink)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # -- derivation -----------------------------------------------------

    def derive(self) -> "MetaElement":
        """Leibniz rule through word letters and commutator slots."""
        sink: dict[MetaMonomial, Fraction] = {}
        nvars = 2 * self.d
        for mono, coeff in self.terms.items():
            factors = _monomial_factors(mono)
            for pos, (kind, payload) in enumerate(factors):
                if kind == "v":
                    if payload % 2 == 0:
                        replaced = (
                            factors[:pos] + (("v", payload - 1),) + factors[pos + 1 :]
                        )
                        _normalize_factors(coeff, replaced, nvars, sink)
                else:
                    for s, slot in enumerate(payload):
                        if slot % 2 == 0:
                            new_slots = payload[:s] + (slot - 1,) + payload[s + 1 :]
                            replaced = (
                                factors[:pos] + (("c", new_slots),) + factors[pos + 1 :]
                            )
                            _normalize_factors(coeff, replaced, nvars, sink)
        return MetaElement(self.d, sink)

    # -- commutator-ideal module action ----------------------------------

    def pure_part(self) -> "MetaElement":
        return MetaElement(
            self.d, {m: c for m, c in self.terms.items() if not m.is_comm}
        )

    def comm_part(self) -> "MetaElement":
        return MetaElement(self.d, {m: c for m, c in self.terms.items() if m.is_comm})

    def act_uv(self, action: "CommPoly | Monomial") -> "MetaElement":
        """Right action of the uv-polynomial ring on the commutator ideal.

        ``u_i`` acts as left multiplication by ``x_i`` and ``v_i`` as the
        right Lie multiplication ``[., x_i]``; the two kinds commute, so
        a whole monomial (or polynomial) can act at once.
        """
        if any(not m.is_comm for m in self.terms):
            raise ValueError("act_uv requires an element of the commutator ideal")
        if isinstance(action, CommPoly):
            if action.alphabet != uv_alphabet(2 * self.d):
                raise ValueError("action polynomial must live in the uv-ring")
            out = MetaElement.zero(self.d)
            for mono, coeff in action.terms.items():
                out = out + self._act_uv_monomial(mono).scale(coeff)
            return out
        return self._act_uv_monomial(tuple(action))

    def _act_uv_monomial(self, mono: Monomial) -> "MetaElement":
        nvars = 2 * self.d
        if len(mono) != 2 * nvars:
            raise ValueError("uv-monomial length mismatch")
        u_part, v_part = mono[:nvars], mono[nvars:]
        sink: dict[MetaMonomial, Fraction] = {}
        for term, coeff in self.terms.items():
            exps = tuple(e + u for e, u in zip(term.exps, u_part))
            slots = list(term.comm)
            for idx, mult in enumerate(v_part):
                slots.extend([idx + 1] * mult)
            for sign, norm in norm_commutator(slots):
                mono_out = MetaMonomial(exps, norm)
                total = sink.get(mono_out, Fraction(0)) + coeff * sign
                if total:
                    sink[mono_out] = total
                else:
                    sink.pop(mono_out, None)
        return MetaElement(self.d, sink)

    # -- grading --------------------------------------------------------

    def pair_key(self) -> tuple[int, ...]:
        keys = {meta_pair_degrees(m) for m in self.terms}
        if len(keys) != 1:
            raise ValueError("element is not pair-multihomogeneous")
        return keys.pop()

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(m.total_degree() for m in self.terms)

    def sorted_terms(self) -> list[tuple[MetaMonomial, Fraction]]:
        return sorted(self.terms.items(), key=meta_monomial_key)

    def __repr__(self) -> str:
        from .exprio import render

        return f"MetaElement({render(self)})"


def meta_pair_degrees(mono: MetaMonomial) -> tuple[int, ...]:
    pairs = list(pair_degrees(mono.exps))
    for slot in mono.comm:
        pairs[(slot - 1) // 2] += 1
    return tuple(pairs)


def meta_monomial_key(item: tuple[MetaMonomial, Fraction] | MetaMonomial) -> tuple:
    mono = item if isinstance(item, MetaMonomial) else item[0]
    return (
        mono.total_degree(),
        mono.is_comm,
        tuple(-e for e in mono.exps),
        mono.comm,
    )
