"""Text and JSON interchange for elements of every algebra in the package.

Grammar (whitespace-insensitive)::

    expr       := ['+'|'-'] term (('+'|'-') term)*
    term       := [rational '*'?] factor ('*' factor)* | rational
    factor     := var | var '^' nat | commutator
    commutator := '[' var (',' var)+ ']'
    var        := ('x'|'y'|'u'|'v'|'a') nat
    rational   := int ['/' nat]

The '*' between a leading coefficient and the first factor is optional;
between factors it is required.  The algebra tag selects which variables
are legal and how the parsed expression is normalized:

    comm    x1..x{2d}                 polynomial algebra
    uv      u1..u{2d}, v1..v{2d}      polynomial algebra
    meta    x1..x{2d} + commutators   free metabelian algebra
    grass   x1..xd, y1..yd + blocks   variety of the triple-commutator identity
    module  a1..a{2d}, u, v           free module (one a per term, degree 1)

JSON schema: ``{"algebra": str, "d": int, "terms": [{"coeff": "p/q",
"exponents": [int, ...], "comm": [[int, ...], ...]}]}`` with exponents
over the algebra's variable list and 1-based commutator entries.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .grassmann import GrassElement, GrassMonomial, grass_monomial_key, position_name
from .metabelian import MetaElement, MetaMonomial, meta_monomial_key
from .poly import CommPoly, Monomial, monomial_key, uv_alphabet, x_alphabet
from .wreath import ModuleElement

ALGEBRA_TAGS = ("comm", "uv", "meta", "grass", "module")


class ExprSyntaxError(ValueError):
    """Parse failure with the offending position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class JsonSchemaError(ValueError):
    """Schema violation with a JSON-pointer-style path."""

    def __init__(self, message: str, path: str) -> None:
        super().__init__(f"{message} (at {path})")
        self.path = path


_TOKEN = re.compile(
    r"\s*(?:(?P<var>[xyuva]\d+)|(?P<num>\d+)|(?P<sym>[-+*/^\[\],()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprSyntaxError(
                f"unexpected character {stripped[0]!r}", len(text) - len(stripped)
            )
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.idx] if self.idx < len(self.tokens) else None

    def next(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", len(self.text))
        self.idx += 1
        return tok

    def expect_sym(self, sym: str) -> None:
        tok = self.next()
        if tok[0] != "sym" or tok[1] != sym:
            raise ExprSyntaxError(f"expected {sym!r}", tok[2])

    def at_sym(self, *symbols: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "sym" and tok[1] in symbols

    # terms come back as (coefficient, factors); a factor is
    # ('var', name, power) or ('comm', (names...))
    def parse_expr(self) -> list[tuple[Fraction, list]]:
        terms = []
        sign = Fraction(1)
        if self.at_sym("+", "-"):
            if self.next()[1] == "-":
                sign = Fraction(-1)
        coeff, factors = self.parse_term()
        terms.append((sign * coeff, factors))
        while self.at_sym("+", "-"):
            sign = Fraction(1 if self.next()[1] == "+" else -1)
            coeff, factors = self.parse_term()
            terms.append((sign * coeff, factors))
        tok = self.peek()
        if tok is not None:
            raise ExprSyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return terms

    def parse_rational(self) -> Fraction:
        tok = self.next()
        value = Fraction(int(tok[1]))
        if self.at_sym("/"):
            self.next()
            den = self.next()
            if den[0] != "num":
                raise ExprSyntaxError("expected a denominator", den[2])
            if int(den[1]) == 0:
                raise ExprSyntaxError("zero denominator", den[2])
            value /= int(den[1])
        return value

    def parse_term(self) -> tuple[Fraction, list]:
        coeff = Fraction(1)
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("empty term", len(self.text))
        if tok[0] == "num":
            coeff = self.parse_rational()
            if self.at_sym("*"):
                self.next()
            elif not (self.peek() and self.peek()[0] == "var" or self.at_sym("[")):
                return coeff, []  # bare constant
        factors = [self.parse_factor()]
        while self.at_sym("*"):
            self.next()
            factors.append(self.parse_factor())
        return coeff, factors

    def parse_factor(self):
        tok = self.next()
        if tok[0] == "var":
            power = 1
            if self.at_sym("^"):
                self.next()
                ptok = self.next()
                if ptok[0] != "num":
                    raise ExprSyntaxError("expected an exponent", ptok[2])
                power = int(ptok[1])
            return ("var", tok[1], power)
        if tok[0] == "sym" and tok[1] == "[":
            names = []
            while True:
                vtok = self.next()
                if vtok[0] != "var":
                    raise ExprSyntaxError("expected a variable", vtok[2])
                names.append(vtok[1])
                tok = self.next()
                if tok[0] == "sym" and tok[1] == "]":
                    break
                if not (tok[0] == "sym" and tok[1] == ","):
                    raise ExprSyntaxError("expected ',' or ']'", tok[2])
            if len(names) < 2:
                raise ExprSyntaxError("commutator needs at least 2 entries", tok[2])
            return ("comm", tuple(names))
        raise ExprSyntaxError(f"unexpected token {tok[1]!r}", tok[2])


def _split_var(name: str) -> tuple[str, int]:
    return name[0], int(name[1:])


def _require_letter(name: str, allowed: str, d: int, limit: int):
    letter, idx = _split_var(name)
    if letter not in allowed:
        raise ValueError(f"variable {name!r} not allowed in this algebra")
    if not 1 <= idx <= limit:
        raise ValueError(f"variable {name!r} out of range for d={d}")
    return letter, idx


def parse(text: str, algebra: str, d: int):
    """Parse and normalize an expression of the given algebra."""
    if algebra not in ALGEBRA_TAGS:
        raise ValueError(f"unknown algebra {algebra!r}")
    terms = _Parser(text).parse_expr()
    if algebra == "comm":
        alphabet = x_alphabet(2 * d)
        out = CommPoly.zero(alphabet)
        for coeff, factors in terms:
            exps = [0] * alphabet.size
            for factor in factors:
                if factor[0] != "var":
                    raise ValueError("commutators are not allowed in comm")
                _, idx = _require_letter(factor[1], "x", d, 2 * d)
                exps[idx - 1] += factor[2]
            out = out + CommPoly.monomial(alphabet, tuple(exps), coeff)
        return out
    if algebra == "uv":
        alphabet = uv_alphabet(2 * d)
        out = CommPoly.zero(alphabet)
        for coeff, factors in terms:
            exps = [0] * alphabet.size
            for factor in factors:
                if factor[0] != "var":
                    raise ValueError("commutators are not allowed in uv")
                letter, idx = _require_letter(factor[1], "uv", d, 2 * d)
                offset = 0 if letter == "u" else 2 * d
                exps[offset + idx - 1] += factor[2]
            out = out + CommPoly.monomial(alphabet, tuple(exps), coeff)
        return out
    if algebra == "meta":
        raw = []
        for coeff, factors in terms:
            seq = []
            for factor in factors:
                if factor[0] == "var":
                    _, idx = _require_letter(factor[1], "x", d, 2 * d)
                    seq.extend([("v", idx)] * factor[2])
                else:
                    slots = tuple(
                        _require_letter(n, "x", d, 2 * d)[1] for n in factor[1]
                    )
                    seq.append(("c", slots))
            raw.append((coeff, tuple(seq)))
        return MetaElement.from_raw(d, raw)
    if algebra == "grass":
        raw = []
        for coeff, factors in terms:
            word: list[int] = []
            block: list[int] = []
            dead = False
            for factor in factors:
                if factor[0] == "var":
                    letter, idx = _require_letter(factor[1], "xy", d, d)
                    pos = 2 * (idx - 1) + (1 if letter == "y" else 0)
                    word.extend([pos] * factor[2])
                else:
                    if len(factor[1]) > 2:
                        dead = True  # left-normed higher commutators vanish
                        continue
                    for name in factor[1]:
                        letter, idx = _require_letter(name, "xy", d, d)
                        block.append(2 * (idx - 1) + (1 if letter == "y" else 0))
            if not dead:
                raw.append((coeff, tuple(word), tuple(block)))
        return GrassElement.from_raw(d, raw)
    # module
    out = ModuleElement.zero(d)
    alphabet = uv_alphabet(2 * d)
    for coeff, factors in terms:
        if not factors and coeff == 0:
            continue
        a_idx = None
        exps = [0] * alphabet.size
        for factor in factors:
            if factor[0] != "var":
                raise ValueError("commutators are not allowed in module elements")
            letter, idx = _require_letter(factor[1], "auv", d, 2 * d)
            if letter == "a":
                if a_idx is not None or factor[2] != 1:
                    raise ValueError("each module term needs exactly one a-factor")
                a_idx = idx
            else:
                offset = 0 if letter == "u" else 2 * d
                exps[offset + idx - 1] += factor[2]
        if a_idx is None:
            raise ValueError("each module term needs exactly one a-factor")
        out = out + ModuleElement(
            d, {a_idx: CommPoly.monomial(alphabet, tuple(exps), coeff)}
        )
    return out


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _format_coeff(coeff: Fraction, factors: str) -> str:
    if not factors:
        return str(coeff)
    if coeff == 1:
        return factors
    if coeff == -1:
        return f"-{factors}"
    return f"{coeff}*{factors}"


def _join_terms(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            out += f" - {part[1:]}"
        else:
            out += f" + {part}"
    return out


def _var_factors(names: Sequence[str], exps: Sequence[int]) -> list[str]:
    out = []
    for name, e in zip(names, exps):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return out


def render(element) -> str:
    """Canonical text form; ``parse(render(e)) == e``."""
    if isinstance(element, CommPoly):
        names = [element.alphabet.var_name(k) for k in range(element.alphabet.size)]
        parts = []
        for mono, coeff in element.sorted_terms():
            factors = "*".join(_var_factors(names, mono))
            parts.append(_format_coeff(coeff, factors))
        return _join_terms(parts)
    if isinstance(element, MetaElement):
        names = [f"x{k + 1}" for k in range(2 * element.d)]
        parts = []
        for mono, coeff in element.sorted_terms():
            factors = _var_factors(names, mono.exps)
            if mono.comm:
                factors.append("[" + ",".join(names[s - 1] for s in mono.comm) + "]")
            parts.append(_format_coeff(coeff, "*".join(factors)))
        return _join_terms(parts)
    if isinstance(element, GrassElement):
        names = [position_name(k) for k in range(2 * element.d)]
        parts = []
        for mono, coeff in element.sorted_terms():
            factors = _var_factors(names, mono.exps)
            for k in range(0, len(mono.block), 2):
                a, b = mono.block[k], mono.block[k + 1]
                factors.append(f"[{names[a]},{names[b]}]")
            parts.append(_format_coeff(coeff, "*".join(factors)))
        return _join_terms(parts)
    if isinstance(element, ModuleElement):
        nvars = 2 * element.d
        names = [f"u{k + 1}" for k in range(nvars)] + [
            f"v{k + 1}" for k in range(nvars)
        ]
        parts = []
        for idx, mono, coeff in element.sorted_terms():
            factors = [f"a{idx}"] + _var_factors(names, mono)
            parts.append(_format_coeff(coeff, "*".join(factors)))
        return _join_terms(parts)
    raise TypeError(f"cannot render {type(element).__name__}")


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def _algebra_of(element) -> str:
    if isinstance(element, CommPoly):
        return "uv" if element.alphabet.kind == "UV" else "comm"
    if isinstance(element, MetaElement):
        return "meta"
    if isinstance(element, GrassElement):
        return "grass"
    if isinstance(element, ModuleElement):
        return "module"
    raise TypeError(f"unsupported element type {type(element).__name__}")


def to_json(element) -> dict:
    """Lossless JSON document for an element."""
    algebra = _algebra_of(element)
    terms = []
    if algebra in ("comm", "uv"):
        d = element.alphabet.size // (2 if algebra == "comm" else 4)
        for mono, coeff in element.sorted_terms():
            terms.append({"coeff": str(coeff), "exponents": list(mono), "comm": []})
    elif algebra == "meta":
        d = element.d
        for mono, coeff in element.sorted_terms():
            comm = [list(mono.comm)] if mono.comm else []
            terms.append(
                {"coeff": str(coeff), "exponents": list(mono.exps), "comm": comm}
            )
    elif algebra == "grass":
        d = element.d
        for mono, coeff in element.sorted_terms():
            blocks = [
                [mono.block[k] + 1, mono.block[k + 1] + 1]
                for k in range(0, len(mono.block), 2)
            ]
            terms.append(
                {"coeff": str(coeff), "exponents": list(mono.exps), "comm": blocks}
            )
    else:
        d = element.d
        for idx, mono, coeff in element.sorted_terms():
            a_part = [0] * (2 * d)
            a_part[idx - 1] = 1
            terms.append(
                {"coeff": str(coeff), "exponents": a_part + list(mono), "comm": []}
            )
    return {"algebra": algebra, "d": d, "terms": terms}


def _expect(condition: bool, message: str, path: str) -> None:
    if not condition:
        raise JsonSchemaError(message, path)


def from_json(doc: dict):
    """Rebuild an element from its JSON document."""
    _expect(isinstance(doc, dict), "document must be an object", "/")
    algebra = doc.get("algebra")
    _expect(algebra in ALGEBRA_TAGS, f"unknown algebra {algebra!r}", "/algebra")
    d = doc.get("d")
    _expect(isinstance(d, int) and d >= 1, "d must be a positive integer", "/d")
    terms = doc.get("terms")
    _expect(isinstance(terms, list), "terms must be a list", "/terms")
    exp_len = {"comm": 2 * d, "uv": 4 * d, "meta": 2 * d, "grass": 2 * d, "module": 6 * d}[
        algebra
    ]

    parsed = []
    for k, term in enumerate(terms):
        path = f"/terms/{k}"
        _expect(isinstance(term, dict), "term must be an object", path)
        coeff_text = term.get("coeff")
        _expect(isinstance(coeff_text, str), "coeff must be a string", f"{path}/coeff")
        try:
            coeff = Fraction(coeff_text)
        except (ValueError, ZeroDivisionError):
            raise JsonSchemaError(
                f"invalid rational {coeff_text!r}", f"{path}/coeff"
            ) from None
        exps = term.get("exponents")
        _expect(
            isinstance(exps, list)
            and len(exps) == exp_len
            and all(isinstance(e, int) and e >= 0 for e in exps),
            f"exponents must be {exp_len} nonnegative integers",
            f"{path}/exponents",
        )
        comm = term.get("comm", [])
        _expect(isinstance(comm, list), "comm must be a list", f"{path}/comm")
        for b, blk in enumerate(comm):
            _expect(
                isinstance(blk, list) and all(isinstance(s, int) for s in blk),
                "comm block must be a list of integers",
                f"{path}/comm/{b}",
            )
        parsed.append((coeff, exps, comm, path))

    if algebra in ("comm", "uv"):
        alphabet = x_alphabet(2 * d) if algebra == "comm" else uv_alphabet(2 * d)
        out = CommPoly.zero(alphabet)
        for coeff, exps, comm, path in parsed:
            _expect(not comm, "comm must be empty", f"{path}/comm")
            out = out + CommPoly.monomial(alphabet, tuple(exps), coeff)
        return out
    if algebra == "meta":
        raw = []
        for coeff, exps, comm, path in parsed:
            _expect(len(comm) <= 1, "at most one commutator block", f"{path}/comm")
            seq = []
            for idx, e in enumerate(exps):
                seq.extend([("v", idx + 1)] * e)
            for blk in comm:
                _expect(
                    len(blk) >= 2 and all(1 <= s <= 2 * d for s in blk),
                    "commutator entries out of range",
                    f"{path}/comm/0",
                )
                seq.append(("c", tuple(blk)))
            raw.append((coeff, tuple(seq)))
        return MetaElement.from_raw(d, raw)
    if algebra == "grass":
        raw = []
        for coeff, exps, comm, path in parsed:
            word = []
            for idx, e in enumerate(exps):
                word.extend([idx] * e)
            block = []
            for b, blk in enumerate(comm):
                _expect(
                    len(blk) == 2 and all(1 <= s <= 2 * d for s in blk),
                    "grass blocks are position pairs",
                    f"{path}/comm/{b}",
                )
                block.extend(s - 1 for s in blk)
            raw.append((coeff, tuple(word), tuple(block)))
        return GrassElement.from_raw(d, raw)
    # module
    out = ModuleElement.zero(d)
    alphabet = uv_alphabet(2 * d)
    for coeff, exps, comm, path in parsed:
        _expect(not comm, "comm must be empty", f"{path}/comm")
        a_part, uv_part = exps[: 2 * d], exps[2 * d :]
        _expect(
            sum(a_part) == 1 and max(a_part) == 1,
            "module exponents need exactly one a-variable of degree 1",
            f"{path}/exponents",
        )
        a_idx = a_part.index(1) + 1
        out = out + ModuleElement(
            d, {a_idx: CommPoly.monomial(alphabet, tuple(uv_part), coeff)}
        )
    return out
