"""Sparse multivariate polynomials over finite fields.

Monomials are exposed as exponent tuples but stored packed into a single
int: variable ``i`` occupies bits ``[W*i, W*(i+1))`` and the total degree sits
above all variable fields.  Packing makes monomial multiplication an integer
addition and divisibility a borrow check on per-field guard bits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .field import FieldDescriptor, FieldElement

Monomial = tuple  # exponent tuple, one entry per ring variable

WIDTH = 16
_FIELD_MASK = (1 << WIDTH) - 1
MAX_EXPONENT = (1 << (WIDTH - 1)) - 1


class ParseError(ValueError):
    def __init__(self, message: str, column: int | None = None):
        super().__init__(message if column is None else f"{message} (column {column})")
        self.column = column


@dataclass(frozen=True)
class MonomialOrder:
    """``grevlex``, ``lex``, or ``block`` (grevlex on the first ``block`` variables,
    ties broken by grevlex on the rest)."""

    kind: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.block < 0:
            raise ValueError("block size must be non-negative")

    @classmethod
    def grevlex(cls) -> MonomialOrder:
        return cls("grevlex")

    @classmethod
    def lex(cls) -> MonomialOrder:
        return cls("lex")

    @classmethod
    def elimination(cls, first_block: int) -> MonomialOrder:
        return cls("block", first_block)

    def key_function(self, nvars: int):
        """Map packed monomials to ints whose natural order is this monomial order."""
        low = (1 << (WIDTH * nvars)) - 1
        if self.kind == "grevlex" or (self.kind == "block" and self.block in (0, nvars)):
            return lambda e: e ^ low
        cache: dict[int, int] = {}
        if self.kind == "lex":
            def key(e: int) -> int:
                k = cache.get(e)
                if k is None:
                    k = 0
                    for i in range(nvars):
                        k = (k << WIDTH) | ((e >> (WIDTH * i)) & _FIELD_MASK)
                    cache[e] = k
                return k
            return key

        b = self.block
        shift = WIDTH * (nvars - b + 1)

        def key(e: int) -> int:
            k = cache.get(e)
            if k is None:
                exps = [(e >> (WIDTH * i)) & _FIELD_MASK for i in range(nvars)]
                k = (_grevlex_key(exps[:b]) << shift) | _grevlex_key(exps[b:])
                cache[e] = k
            return k
        return key

    def __str__(self):
        return self.kind if self.kind != "block" else f"block({self.block})"


def _grevlex_key(exps: Sequence[int]) -> int:
    k = sum(exps)
    for e in reversed(exps):
        k = (k << WIDTH) | (_FIELD_MASK - e)
    return k


GREVLEX = MonomialOrder.grevlex()
LEX = MonomialOrder.lex()


class PolyRing:
    """Polynomial ring k[x_1..x_n] with a default monomial order."""

    def __init__(self, variables: Sequence[str], field: FieldDescriptor,
                 order: MonomialOrder = GREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError(f"invalid variable name {v!r}")
        self.variables = variables
        self.field = field
        self.order = order
        self.nvars = len(variables)
        self._guard = sum(1 << (WIDTH * i + WIDTH - 1) for i in range(self.nvars))
        self._deg_shift = WIDTH * self.nvars
        self._index = {v: i for i, v in enumerate(variables)}

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({' '.join(self.variables)} over {self.field}, {self.order})"

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return PolyRing(self.variables, self.field, order)

    # -- packed monomials --------------------------------------------------

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"monomial {tuple(exps)} has wrong arity for {self}")
        e, d = 0, 0
        for i, a in enumerate(exps):
            if not 0 <= a <= MAX_EXPONENT:
                raise ValueError(f"exponent {a} out of range")
            e |= a << (WIDTH * i)
            d += a
        return e | (d << self._deg_shift)

    def unpack(self, e: int) -> Monomial:
        return tuple((e >> (WIDTH * i)) & _FIELD_MASK for i in range(self.nvars))

    def divides(self, a: int, b: int) -> bool:
        """Packed divisibility test a | b."""
        return not ((b - a) & self._guard) and b >= a

    def mdeg(self, e: int) -> int:
        return e >> self._deg_shift

    def lcm(self, a: int, b: int) -> int:
        e, d = 0, 0
        for i in range(self.nvars):
            s = WIDTH * i
            x = max((a >> s) & _FIELD_MASK, (b >> s) & _FIELD_MASK)
            e |= x << s
            d += x
        return e | (d << self._deg_shift)

    def gcd_is_one(self, a: int, b: int) -> bool:
        for i in range(self.nvars):
            s = WIDTH * i
            if (a >> s) & _FIELD_MASK and (b >> s) & _FIELD_MASK:
                return False
        return True

    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    # -- constructors ------------------------------------------------------

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return Polynomial(self, {0: 1})

    def constant(self, c: int) -> Polynomial:
        c = self.field.from_int(c) if self.field.kind == "prime" else c
        return Polynomial(self, {0: c} if c else {})

    def gen(self, name_or_index) -> Polynomial:
        i = self._index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {self.pack(exps): 1})

    def gens(self) -> list[Polynomial]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> Polynomial:
        return Polynomial(self, {self.pack(exps): coeff} if coeff else {})

    def from_terms(self, terms: Iterable[tuple[Sequence[int], int]]) -> Polynomial:
        d: dict[int, int] = {}
        F = self.field
        for exps, c in terms:
            e = self.pack(exps)
            d[e] = F.add(d.get(e, 0), c)
            if not d[e]:
                del d[e]
        return Polynomial(self, d)

    def parse(self, text: str) -> Polynomial:
        return parse_polynomial(self, text)


class Polynomial:
    """Immutable sparse polynomial: a map from packed monomials to nonzero coefficients."""

    __slots__ = ("ring", "coeffs", "__dict__")

    def __init__(self, ring: PolyRing, coeffs: Mapping[int, int]):
        self.ring = ring
        self.coeffs = coeffs

    # -- views ----------------------------------------------------------------

    @cached_property
    def terms(self) -> list[tuple[Monomial, int]]:
        """Terms sorted strictly descending under the ring's default order."""
        key = self.ring.order.key_function(self.ring.nvars)
        ordered = sorted(self.coeffs.items(), key=lambda t: key(t[0]), reverse=True)
        return [(self.ring.unpack(e), c) for e, c in ordered]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(self.ring.mdeg(e) for e in self.coeffs)

    def order_of_vanishing(self) -> int:
        """Lowest total degree of a term (the m-adic order)."""
        if not self.coeffs:
            return -1
        return min(self.ring.mdeg(e) for e in self.coeffs)

    def is_homogeneous(self) -> bool:
        return len({self.ring.mdeg(e) for e in self.coeffs}) <= 1

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def support_variables(self) -> set[int]:
        out = set()
        for e in self.coeffs:
            out.update(i for i, a in enumerate(self.ring.unpack(e)) if a)
        return out

    def leading_term(self, order: MonomialOrder | None = None) -> tuple[Monomial, FieldElement]:
        if not self.coeffs:
            raise ValueError("leading term of zero")
        key = (order or self.ring.order).key_function(self.ring.nvars)
        e = max(self.coeffs, key=key)
        return self.ring.unpack(e), FieldElement(self.ring.field, self.coeffs[e])

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.coeffs.get(self.ring.pack(exps), 0)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other) -> Polynomial:
        if isinstance(other, int):
            return self.ring.constant(other)
        if isinstance(other, FieldElement):
            return Polynomial(self.ring, {0: other.value} if other.value else {})
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring.variables != self.ring.variables or other.ring.field != self.ring.field:
            raise ValueError("polynomials from different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = F.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out: dict[int, int] = {}
        mul, add = F.mul, F.add
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                v = add(out.get(e, 0), mul(c1, c2))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> Polynomial:
        if not c:
            return self.ring.zero()
        mul = self.ring.field.mul
        return Polynomial(self.ring, {e: mul(v, c) for e, v in self.coeffs.items()})

    def shift(self, e: int) -> Polynomial:
        """Multiply by the packed monomial e."""
        return Polynomial(self.ring, {m + e: c for m, c in self.coeffs.items()})

    def monic(self, order: MonomialOrder | None = None) -> Polynomial:
        if not self.coeffs:
            return self
        _, lc = self.leading_term(order)
        return self.scale(self.ring.field.inv(lc.value))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.ring.variables == other.ring.variables
                    and self.ring.field == other.ring.field and self.coeffs == other.coeffs)
        if isinstance(other, int):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- ring changes --------------------------------------------------------

    def to_ring(self, ring: PolyRing, positions: Sequence[int] | None = None) -> Polynomial:
        """Re-embed into ``ring``; variable i goes to ``positions[i]`` (default: by name).

        Variables missing from ``ring`` are allowed as long as they do not occur.
        """
        if positions is None:
            positions = [ring._index.get(v) for v in self.ring.variables]
        out = {}
        for e, c in self.coeffs.items():
            exps = [0] * ring.nvars
            for i, a in enumerate(self.ring.unpack(e)):
                if a:
                    if positions[i] is None:
                        raise ValueError(f"variable {self.ring.variables[i]!r} not in {ring}")
                    exps[positions[i]] = a
            out[ring.pack(exps)] = c
        return Polynomial(ring, out)

    def substitute(self, values: Mapping[int, Polynomial | int]) -> Polynomial:
        """Replace variable i by ``values[i]`` (a polynomial in the same ring or a scalar)."""
        ring, F = self.ring, self.ring.field
        result = ring.zero()
        cache: dict[tuple[int, int], Polynomial] = {}
        for e, c in self.coeffs.items():
            exps = list(ring.unpack(e))
            term = ring.constant(0) + Polynomial(ring, {0: c})
            for i, v in values.items():
                a = exps[i]
                exps[i] = 0
                if a:
                    if isinstance(v, int):
                        term = term.scale(F.pow(v, a))
                    else:
                        p = cache.get((i, a))
                        if p is None:
                            p = cache[(i, a)] = v ** a
                        term = term * p
            result = result + term.shift(ring.pack(exps))
        return result

    # -- text --------------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({self})"


def _format_monomial(ring: PolyRing, exps: Monomial) -> str:
    parts = []
    for v, a in zip(ring.variables, exps):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.coeffs:
        return "0"
    F = f.ring.field
    out = []
    for exps, c in f.terms:
        mono = _format_monomial(f.ring, exps)
        sign = "+"
        if F.kind == "prime" and c > F.p // 2:
            sign, c = "-", F.p - c
        coeff = F.format(c)
        if not mono:
            body = coeff
        elif c == 1:
            body = mono
        else:
            body = f"{coeff}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(r"\s*(?:(\d+)|(\[[0-9a-fA-F]+\])|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-]))")


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse ``x^5*y^3 - 2*x*y``-style text: signed products of integers,
    ``[hex]`` extension-field literals, and variables with ``^`` powers."""
    F = ring.field
    pos, n = 0, len(text)
    tokens = []
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}",
                             len(text[:pos]) + len(text[pos:]) - len(text[pos:].lstrip()) + 1)
        tokens.append((m.lastindex, m.group(m.lastindex), m.start(m.lastindex) + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", 1)

    result: dict[int, int] = {}
    i = 0
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] == 6:
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        coeff = F.from_int(sign)
        exps = [0] * ring.nvars
        expect_factor = True
        while i < len(tokens):
            kind, val, col = tokens[i]
            if expect_factor:
                if kind == 1:
                    coeff = F.mul(coeff, F.from_int(int(val)))
                    i += 1
                    if i < len(tokens) and tokens[i][0] == 4:
                        raise ParseError("exponent on a numeric coefficient", tokens[i][2])
                elif kind == 2:
                    if F.kind != "binary":
                        raise ParseError("bracketed literals need a gf2 field", col)
                    lit = int(val[1:-1], 16)
                    if lit >= F.order:
                        raise ParseError(f"literal {val} outside {F}", col)
                    coeff = F.mul(coeff, lit)
                    i += 1
                elif kind == 3:
                    if val not in ring._index:
                        raise ParseError(f"unknown variable {val!r}", col)
                    idx = ring._index[val]
                    i += 1
                    power = 1
                    if i < len(tokens) and tokens[i][0] == 4:
                        i += 1
                        if i >= len(tokens) or tokens[i][0] != 1:
                            raise ParseError("malformed exponent", tokens[i - 1][2])
                        power = int(tokens[i][1])
                        i += 1
                    exps[idx] += power
                else:
                    raise ParseError(f"expected a factor, got {val!r}", col)
                expect_factor = False
            else:
                if kind == 5:
                    i += 1
                    expect_factor = True
                elif kind == 6:
                    break
                else:
                    raise ParseError(f"expected '*', '+' or '-', got {val!r}", col)
        if expect_factor:
            raise ParseError("dangling operator", tokens[-1][2])
        if coeff:
            e = ring.pack(exps)
            v = F.add(result.get(e, 0), coeff)
            if v:
                result[e] = v
            else:
                result.pop(e, None)
    return Polynomial(ring, result)
