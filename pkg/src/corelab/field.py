"""Exact finite coefficient fields: prime fields F_p and binary extensions GF(2^k).

Elements are stored as plain ints in canonical range (residues mod p, or
bit-vectors of length k whose bit i is the coefficient of z^i).  The
:class:`FieldDescriptor` carries the arithmetic; :class:`FieldElement` is a
thin operator-friendly wrapper used at API boundaries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

# Lexicographically least irreducible polynomial of degree k over F_2, encoded
# as an int (bit i = coefficient of z^i).
GF2_REDUCTION_POLYS = {
    1: 0x2, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B, 14: 0x4021,
    15: 0x8003, 16: 0x1002B, 17: 0x20009, 18: 0x40009, 19: 0x80027,
    20: 0x100009, 21: 0x200005, 22: 0x400003, 23: 0x800021, 24: 0x100001B,
    25: 0x2000009, 26: 0x400001B, 27: 0x8000027, 28: 0x10000003,
    29: 0x20000005, 30: 0x40000003, 31: 0x80000009, 32: 0x10000008D,
}

# Log/antilog tables are built for extensions up to this degree.
_TABLE_MAX_K = 20


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _clmul_mod(a: int, b: int, poly: int, k: int) -> int:
    """Carry-less product of two bit-vectors reduced modulo ``poly``."""
    r = 0
    top = 1 << k
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return r


def _gf2_polymod(a: int, f: int) -> int:
    fl = f.bit_length()
    while a and a.bit_length() >= fl:
        a ^= f << (a.bit_length() - fl)
    return a


def _gf2_polygcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_polymod(a, b)
    return a


@lru_cache(maxsize=None)
def gf2_is_irreducible(poly: int) -> bool:
    """Rabin's irreducibility test for a polynomial over F_2."""
    k = poly.bit_length() - 1
    if k < 1:
        return False
    z = _gf2_polymod(0b10, poly)

    def frob(times: int) -> int:
        x = z
        for _ in range(times):
            x = _clmul_mod(x, x, poly, k)
        return x

    if frob(k) != z:
        return False
    for q in range(2, k + 1):
        if k % q == 0 and is_prime(q):
            if _gf2_polygcd(poly, frob(k // q) ^ z) != 1:
                return False
    return True


def gf2_is_irreducible_bruteforce(poly: int) -> bool:
    """Trial division by every polynomial of degree <= deg/2 (small degrees only)."""
    k = poly.bit_length() - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for g in range(1 << d, 1 << (d + 1)):
            if _gf2_polymod(poly, g) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def _modulus_is_irreducible(k: int) -> bool:
    """Brute-force check of the tabulated modulus, once per degree per process."""
    return gf2_is_irreducible_bruteforce(GF2_REDUCTION_POLYS[k])


@dataclass(frozen=True)
class FieldDescriptor:
    """A finite field, either ``prime`` (F_p) or ``binary`` (GF(2^k))."""

    kind: str
    p: int = 2
    k: int = 1
    _tables: tuple = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind == "prime":
            if not is_prime(self.p):
                raise FieldError(f"{self.p} is not prime")
        elif self.kind == "binary":
            if not 1 <= self.k <= 32:
                raise FieldError(f"extension degree must be in 1..32, got {self.k}")
            if self.p != 2:
                raise FieldError("binary extension fields have characteristic 2")
            if not _modulus_is_irreducible(self.k):
                raise FieldError(f"reduction polynomial for k={self.k} is reducible")
            if self.k <= _TABLE_MAX_K:
                object.__setattr__(self, "_tables", _log_tables(self.k))
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> FieldDescriptor:
        return cls("prime", p=p)

    @classmethod
    def gf2(cls, k: int) -> FieldDescriptor:
        return cls("binary", p=2, k=k)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def modulus(self) -> int:
        """The reduction polynomial (binary) or the prime (prime fields)."""
        return GF2_REDUCTION_POLYS[self.k] if self.kind == "binary" else self.p

    @property
    def order(self) -> int:
        return self.p if self.kind == "prime" else 1 << self.k

    def __str__(self) -> str:
        return f"F_{self.p}" if self.kind == "prime" else f"GF(2^{self.k})"

    def directive(self) -> str:
        """Problem-file spelling of this field."""
        return f"field p={self.p}" if self.kind == "prime" else f"field gf2 k={self.k}"

    # -- scalar arithmetic on canonical ints -------------------------------

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> field."""
        return n % self.p if self.kind == "prime" else n & 1

    def add(self, a: int, b: int) -> int:
        if self.kind == "prime":
            s = a + b
            return s - self.p if s >= self.p else s
        return a ^ b

    def sub(self, a: int, b: int) -> int:
        if self.kind == "prime":
            return (a - b) % self.p
        return a ^ b

    def neg(self, a: int) -> int:
        if self.kind == "prime":
            return (-a) % self.p
        return a

    def mul(self, a: int, b: int) -> int:
        if self.kind == "prime":
            return a * b % self.p
        if not a or not b:
            return 0
        if self._tables is not None:
            log, exp = self._tables
            return exp[log[a] + log[b]]
        return _clmul_mod(a, b, self.modulus, self.k)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + str(self))
        if self.kind == "prime":
            return pow(a, self.p - 2, self.p)
        if self._tables is not None:
            log, exp = self._tables
            return exp[(1 << self.k) - 1 - log[a]]
        return self.pow(a, (1 << self.k) - 2)

    def pow(self, a: int, e: int) -> int:
        if self.kind == "prime":
            return pow(a, e, self.p)
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, self.from_int(value) if self.kind == "prime" else value)

    def elements(self):
        """Iterate over all canonical values (small fields only)."""
        return range(self.order)

    def format(self, a: int) -> str:
        """Text form of a coefficient; extension elements outside F_2 use ``[hex]``."""
        if self.kind == "prime" or a in (0, 1):
            return str(a)
        return f"[{a:x}]"


@lru_cache(maxsize=None)
def _log_tables(k: int) -> tuple[list[int], list[int]]:
    poly = GF2_REDUCTION_POLYS[k]
    size = 1 << k
    # find a generator of the multiplicative group
    factors = _prime_factors(size - 1)
    for g in range(2, size) if size > 2 else [1]:
        if all(_gf_pow_slow(g, (size - 1) // q, poly, k) != 1 for q in factors):
            break
    exp = [0] * (2 * size)
    log = [0] * size
    x = 1
    for i in range(size - 1):
        exp[i] = x
        log[x] = i
        x = _clmul_mod(x, g, poly, k)
    for i in range(size - 1, 2 * size):
        exp[i] = exp[i - (size - 1)]
    return log, exp


def _gf_pow_slow(a: int, e: int, poly: int, k: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _clmul_mod(r, a, poly, k)
        a = _clmul_mod(a, a, poly, k)
        e >>= 1
    return r


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldElement:
    """An element of a finite field, stored as its canonical representative."""

    field: FieldDescriptor
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise FieldError(f"{self.value} is not a canonical element of {self.field}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        return FieldElement(
            self.field, self.field.mul(self.value, self.field.inv(self._coerce(other))))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self) -> FieldElement:
        return FieldElement(self.field, self.field.frobenius(self.value))

    def __repr__(self):
        return f"{self.field.format(self.value)} in {self.field}"
