"""The relatively free algebra of the variety defined by [z1, z2, z3] = 0.

Generators come in pairs x_i, y_i ordered x1 < y1 < x2 < ... < xd < yd.
Every commutator of two elements is central, and products of commutators
multiply with exterior-algebra signs ([a,b][c,e] = -[a,c][b,e]), so the
normal form is a sorted word times a strictly increasing even-length
block of commutator slots.  The derivation sends y_i to x_i and kills
x_i.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, NamedTuple, Sequence


class GrassMonomial(NamedTuple):
    """Sorted word exponents plus a strictly increasing commutator block.

    Positions are 0-based into the alphabet x1, y1, x2, y2, ...; the
    block has even length and is read as consecutive commutator pairs.
    """

    exps: tuple[int, ...]
    block: tuple[int, ...] = ()

    def total_degree(self) -> int:
        return sum(self.exps) + len(self.block)


def position_name(pos: int) -> str:
    pair, member = divmod(pos, 2)
    return f"{'xy'[member]}{pair + 1}"


def _sort_block(block: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
    """Sign-sort a flat slot list; None when a slot repeats (zero)."""
    entries = list(block)
    sign = 1
    for i in range(1, len(entries)):
        j = i
        while j > 0 and entries[j - 1] > entries[j]:
            entries[j - 1], entries[j] = entries[j], entries[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(entries, entries[1:]):
        if a == b:
            return None
    return sign, tuple(entries)


def _word_exps(word: Iterable[int], nvars: int) -> tuple[int, ...]:
    exps = [0] * nvars
    for pos in word:
        exps[pos] += 1
    return tuple(exps)


def _normalize_raw(
    coeff: Fraction,
    word: tuple[int, ...],
    block: tuple[int, ...],
    nvars: int,
    sink: dict[GrassMonomial, Fraction],
) -> None:
    for idx in range(len(word) - 1):
        b, a = word[idx], word[idx + 1]
        if b > a:
            # u_b u_a = u_a u_b - [u_a, u_b]; the correction is central
            swapped = word[:idx] + (a, b) + word[idx + 2 :]
            _normalize_raw(coeff, swapped, block, nvars, sink)
            shorter = word[:idx] + word[idx + 2 :]
            _normalize_raw(-coeff, shorter, block + (a, b), nvars, sink)
            return
    sorted_block = _sort_block(block)
    if sorted_block is None:
        return
    sign, slots = sorted_block
    mono = GrassMonomial(_word_exps(word, nvars), slots)
    total = sink.get(mono, Fraction(0)) + coeff * sign
    if total:
        sink[mono] = total
    else:
        sink.pop(mono, None)


class GrassElement:
    """An element of the rank-2d relatively free algebra of the variety."""

    __slots__ = ("d", "terms")

    def __init__(
        self, d: int, terms: Mapping[GrassMonomial, int | Fraction] | None = None
    ) -> None:
        if d < 1:
            raise ValueError("d must be positive")
        clean: dict[GrassMonomial, Fraction] = {}
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
        raise AttributeError("GrassElement is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, d: int) -> "GrassElement":
        return cls(d)

    @classmethod
    def one(cls, d: int) -> "GrassElement":
        return cls(d, {GrassMonomial((0,) * (2 * d)): Fraction(1)})

    @classmethod
    def x_var(cls, d: int, i: int) -> "GrassElement":
        return cls.from_raw(d, [(Fraction(1), (2 * (i - 1),), ())])

    @classmethod
    def y_var(cls, d: int, i: int) -> "GrassElement":
        return cls.from_raw(d, [(Fraction(1), (2 * i - 1,), ())])

    @classmethod
    def from_raw(
        cls,
        d: int,
        raw_terms: Iterable[tuple[Fraction, tuple[int, ...], tuple[int, ...]]],
    ) -> "GrassElement":
        """Normalize raw (coeff, word positions, block positions) terms."""
        nvars = 2 * d
        sink: dict[GrassMonomial, Fraction] = {}
        for coeff, word, block in raw_terms:
            if any(not 0 <= p < nvars for p in word) or any(
                not 0 <= p < nvars for p in block
            ):
                raise ValueError("position out of range")
            if len(block) % 2:
                raise ValueError("commutator block must pair up")
            coeff = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            if coeff:
                _normalize_raw(coeff, tuple(word), tuple(block), nvars, sink)
        return cls(d, sink)

    # -- algebra structure ----------------------------------------------

    def _check_same(self, other: "GrassElement") -> None:
        if self.d != other.d:
            raise ValueError("rank mismatch")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrassElement):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __add__(self, other: "GrassElement") -> "GrassElement":
        self._check_same(other)
        acc = dict(self.terms)
        for mono, coeff in other.terms.items():
            total = acc.get(mono, Fraction(0)) + coeff
            if total:
                acc[mono] = total
            else:
                acc.pop(mono, None)
        return GrassElement(self.d, acc)

    def __neg__(self) -> "GrassElement":
        return GrassElement(self.d, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "GrassElement") -> "GrassElement":
        return self + (-other)

    def scale(self, factor: int | Fraction) -> "GrassElement":
        factor = factor if isinstance(factor, Fraction) else Fraction(factor)
        if not factor:
            return GrassElement.zero(self.d)
        return GrassElement(self.d, {m: c * factor for m, c in self.terms.items()})

    def __pow__(self, n: int) -> "GrassElement":
        if n < 0:
            raise ValueError("negative power")
        out = GrassElement.one(self.d)
        for _ in range(n):
            out = out * self
        return out

    @staticmethod
    def _word_of(mono: GrassMonomial) -> tuple[int, ...]:
        word: list[int] = []
        for pos, e in enumerate(mono.exps):
            word.extend([pos] * e)
        return tuple(word)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same(other)
        nvars = 2 * self.d
        sink: dict[GrassMonomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            w1 = self._word_of(m1)
            for m2, c2 in other.terms.items():
                _normalize_raw(
                    c1 * c2,
                    w1 + self._word_of(m2),
                    m1.block + m2.block,
                    nvars,
                    sink,
                )
        return GrassElement(self.d, sink)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    # -- derivation -----------------------------------------------------

    def derive(self) -> "GrassElement":
        """Leibniz rule; y positions step down to their x partner."""
        nvars = 2 * self.d
        sink: dict[GrassMonomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            word = self._word_of(mono)
            for k, pos in enumerate(word):
                if pos % 2:
                    replaced = word[:k] + (pos - 1,) + word[k + 1 :]
                    _normalize_raw(coeff, replaced, mono.block, nvars, sink)
            for k, pos in enumerate(mono.block):
                if pos % 2:
                    new_block = mono.block[:k] + (pos - 1,) + mono.block[k + 1 :]
                    _normalize_raw(coeff, word, new_block, nvars, sink)
        return GrassElement(self.d, sink)

    # -- evaluation onto lower rank ---------------------------------------

    def phi(self, alpha: Sequence[int | Fraction]) -> "GrassElement":
        """Evaluate x_d, y_d at the alpha-combination of the lower pairs.

        Returns an element of rank d-1; commutes with `derive`.
        """
        d = self.d
        if d < 2:
            raise ValueError("phi requires rank at least 2")
        if len(alpha) != d - 1:
            raise ValueError("alpha must have d-1 entries")
        weights = [a if isinstance(a, Fraction) else Fraction(a) for a in alpha]
        x_image = [(w, 2 * i) for i, w in enumerate(weights) if w]
        y_image = [(w, 2 * i + 1) for i, w in enumerate(weights) if w]

        def options(pos: int) -> list[tuple[Fraction, int]]:
            if pos == 2 * d - 2:
                return x_image
            if pos == 2 * d - 1:
                return y_image
            return [(Fraction(1), pos)]

        nvars = 2 * (d - 1)
        sink: dict[GrassMonomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            slots = [options(p) for p in self._word_of(mono)]
            slots.extend(options(p) for p in mono.block)
            nword = sum(mono.exps)
            for combo in product(*slots):
                c = coeff
                for w, _ in combo:
                    c *= w
                chosen = [p for _, p in combo]
                _normalize_raw(
                    c, tuple(chosen[:nword]), tuple(chosen[nword:]), nvars, sink
                )
        return GrassElement(d - 1, sink)

    # -- grading --------------------------------------------------------

    def pair_key(self) -> tuple[int, ...]:
        keys = {grass_pair_degrees(m) for m in self.terms}
        if len(keys) != 1:
            raise ValueError("element is not pair-multihomogeneous")
        return keys.pop()

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(m.total_degree() for m in self.terms)

    def top_pair_degree(self, mono: GrassMonomial) -> int:
        return grass_pair_degrees(mono)[-1]

    def sorted_terms(self) -> list[tuple[GrassMonomial, Fraction]]:
        return sorted(self.terms.items(), key=grass_monomial_key)

    def __repr__(self) -> str:
        from .exprio import render

        return f"GrassElement({render(self)})"


def grass_pair_degrees(mono: GrassMonomial) -> tuple[int, ...]:
    pairs = [mono.exps[k] + mono.exps[k + 1] for k in range(0, len(mono.exps), 2)]
    for pos in mono.block:
        pairs[pos // 2] += 1
    return tuple(pairs)


def grass_monomial_key(item) -> tuple:
    mono = item if isinstance(item, GrassMonomial) else item[0]
    return (
        mono.total_degree(),
        len(mono.block),
        tuple(-e for e in mono.exps),
        mono.block,
    )


def commutator(f: GrassElement, g: GrassElement) -> GrassElement:
    return f * g - g * f


# ---------------------------------------------------------------------------
# the constants generators
# ---------------------------------------------------------------------------


class GrassGen(NamedTuple):
    """Tagged generator: kind in {'x', 'v', 'w', 'z'}, recursion level,
    and the index path ((a1, b1), ..., (as, bs), base-indices)."""

    kind: str
    level: int
    indices: tuple

    def label(self) -> str:
        if self.kind == "x":
            return f"x{self.indices[0]}"
        if self.kind == "v":
            return f"v({self.indices[0]},{self.indices[1]})"
        base = ",".join(map(str, self.indices[-1]))
        prefix = "".join(f"({a},{b})." for a, b in self.indices[:-1])
        return f"{self.kind}{self.level}[{prefix}{base}]"


def v_gen(d: int, i: int, j: int) -> GrassElement:
    """``x_i y_j - y_i x_j``."""
    return GrassElement.x_var(d, i) * GrassElement.y_var(d, j) - GrassElement.y_var(
        d, i
    ) * GrassElement.x_var(d, j)


def hook(d: int, a: int, b: int, core: GrassElement) -> GrassElement:
    """``y_a [x_b, core] - x_a [y_b, core]``, the step building w and z."""
    return GrassElement.y_var(d, a) * commutator(
        GrassElement.x_var(d, b), core
    ) - GrassElement.x_var(d, a) * commutator(GrassElement.y_var(d, b), core)


def w_gen(d: int, i: int, j: int, k: int) -> GrassElement:
    return hook(d, i, j, GrassElement.x_var(d, k))


def z_gen(d: int, i: int, j: int, k: int, l: int) -> GrassElement:
    return hook(d, i, j, v_gen(d, k, l))


def generator_families(
    d: int, max_level: int | None = None
) -> dict[str, list[tuple[GrassGen, GrassElement]]]:
    """The x, v, w and z families up to recursion level d-1 (zeros and
    exact duplicates pruned)."""
    if max_level is None:
        max_level = d - 1
    out: dict[str, list[tuple[GrassGen, GrassElement]]] = {
        "x": [],
        "v": [],
        "w": [],
        "z": [],
    }
    for i in range(1, d + 1):
        out["x"].append((GrassGen("x", 0, (i,)), GrassElement.x_var(d, i)))
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            elem = v_gen(d, i, j)
            if elem:
                out["v"].append((GrassGen("v", 0, (i, j)), elem))

    def freeze(elem: GrassElement) -> tuple:
        return tuple(sorted(elem.terms.items()))

    def grow(kind: str, level0: list[tuple[GrassGen, GrassElement]]) -> None:
        seen = {freeze(e) for _, e in level0}
        out[kind].extend(level0)
        current = level0
        for level in range(1, max_level + 1):
            nxt: list[tuple[GrassGen, GrassElement]] = []
            for gen, elem in current:
                for a in range(1, d + 1):
                    for b in range(1, d + 1):
                        grown = hook(d, a, b, elem)
                        key = freeze(grown)
                        if not grown or key in seen:
                            continue
                        path = ((a, b),) + gen.indices[:-1] + (gen.indices[-1],)
                        nxt.append((GrassGen(kind, level, path), grown))
                        seen.add(key)
            out[kind].extend(nxt)
            current = nxt

    w_level0 = []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            for k in range(j, d + 1):
                elem = w_gen(d, i, j, k)
                if elem:
                    w_level0.append((GrassGen("w", 0, ((i, j, k),)), elem))
    grow("w", w_level0)

    z_level0 = []
    for i in range(1, d + 1):
        for j in range(i, d + 1):
            for k in range(j, d + 1):
                for l in range(k, d + 1):
                    elem = z_gen(d, i, j, k, l)
                    if elem:
                        z_level0.append((GrassGen("z", 0, ((i, j, k, l),)), elem))
    grow("z", z_level0)
    return out


def grassmann_generators(
    d: int, max_level: int | None = None
) -> list[tuple[GrassGen, GrassElement]]:
    """The full generating list of the constants algebra."""
    families = generator_families(d, max_level)
    return families["x"] + families["v"] + families["w"] + families["z"]


def raw_level_sets(d: int, kind: str, max_level: int) -> list[list[GrassElement]]:
    """Unpruned recursion levels, used to observe which levels vanish."""
    if kind == "w":
        current = [
            w_gen(d, i, j, k)
            for i in range(1, d + 1)
            for j in range(1, d + 1)
            for k in range(j, d + 1)
        ]
    elif kind == "z":
        current = [
            z_gen(d, i, j, k, l)
            for i in range(1, d + 1)
            for j in range(i, d + 1)
            for k in range(j, d + 1)
            for l in range(k, d + 1)
        ]
    else:
        raise ValueError("kind must be 'w' or 'z'")
    levels = [current]
    for _ in range(max_level):
        current = [
            hook(d, a, b, elem)
            for elem in current
            for a in range(1, d + 1)
            for b in range(1, d + 1)
        ]
        levels.append(current)
    return levels


def w_y_gen(d: int, i: int, j: int, k: int) -> GrassElement:
    """``y_i [x_j, y_k] - x_i [y_j, y_k]``, a derivation preimage of
    ``w_gen(d, i, j, k)``."""
    return GrassElement.y_var(d, i) * commutator(
        GrassElement.x_var(d, j), GrassElement.y_var(d, k)
    ) - GrassElement.x_var(d, i) * commutator(
        GrassElement.y_var(d, j), GrassElement.y_var(d, k)
    )


def integrated_hooks(d: int) -> list[tuple[str, GrassElement]]:
    """Constants ``y_a w - x_a w'`` built from each w-generator and its
    derivation preimage.

    These are constants because the derivative of the first summand,
    ``x_a w``, cancels against ``x_a`` times the derivative of the
    preimage.  They are not products of the x/v/w/z families, and the
    span certificates need them from total degree 4 on.
    """
    out: list[tuple[str, GrassElement]] = []
    for a in range(1, d + 1):
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                for k in range(j, d + 1):
                    elem = GrassElement.y_var(d, a) * w_gen(
                        d, i, j, k
                    ) - GrassElement.x_var(d, a) * w_y_gen(d, i, j, k)
                    if elem and not elem.derive():
                        out.append((f"iw({a};{i},{j},{k})", elem))
    return out


def completed_grassmann_generators(
    d: int, max_level: int | None = None
) -> list[tuple[GrassGen | str, GrassElement]]:
    """The x/v/w/z generating list plus the integrated hooks."""
    out: list[tuple[GrassGen | str, GrassElement]] = list(
        grassmann_generators(d, max_level)
    )
    out.extend(integrated_hooks(d))
    return out


def lemma_elements(
    d: int, alpha: Sequence[int | Fraction]
) -> tuple[GrassElement, GrassElement, GrassElement]:
    """The three ideal generators attached to an evaluation direction.

    omega = (sum a_i x_i) y_d - (sum a_i y_i) x_d,
    mu = [x_d, sum a_i x_i], nu = [y_d, sum a_i y_i].
    """
    if d < 2:
        raise ValueError("rank must be at least 2")
    weights = [a if isinstance(a, Fraction) else Fraction(a) for a in alpha]
    if len(weights) != d - 1 or not any(weights):
        raise ValueError("alpha must be a nonzero vector of length d-1")
    xs = GrassElement.zero(d)
    ys = GrassElement.zero(d)
    for i, w in enumerate(weights, start=1):
        if w:
            xs = xs + GrassElement.x_var(d, i).scale(w)
            ys = ys + GrassElement.y_var(d, i).scale(w)
    omega = xs * GrassElement.y_var(d, d) - ys * GrassElement.x_var(d, d)
    mu = commutator(GrassElement.x_var(d, d), xs)
    nu = commutator(GrassElement.y_var(d, d), ys)
    return omega, mu, nu
