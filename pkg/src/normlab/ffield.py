"""Exact arithmetic in finite fields, polynomials over them, and factorization.

Elements are stored by their canonical integer encoding: for a field built
as ``base[t]/(g)`` with relative coordinates ``c_0, ..., c_{n-1}`` (each an
encoding in ``base``) the value is ``sum(c_i * |base|**i)``. Because encodings
nest, the same integer is also the mixed-radix value of the flat coefficient
sequence over the prime field, so towers share one encoding scheme.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import (
    CapExceeded,
    DivisionByZero,
    FieldMismatch,
    NotPrime,
    Reducible,
    TooLarge,
    ZeroPolynomial,
)

INTEGER_FACTOR_CAP = 2 ** 40
SMALL_TABLE_CAP = 2 ** 11
LOG_TABLE_CAP = 2 ** 20
POLY_FACTOR_MAX_DEGREE = 16


# --------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor_integer(n: int, cap: int = INTEGER_FACTOR_CAP) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as sorted (prime, multiplicity) pairs."""
    if n < 1:
        raise ValueError(f"factor_integer needs n >= 1, got {n}")
    if n > cap:
        raise TooLarge(f"{n} exceeds the factorization cap {cap}")
    out = []
    f = 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        if e:
            out.append((f, e))
        f += 1 if f == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


# --------------------------------------------------------------------------
# fields


class Field:
    """A finite field, either F_p or ``base[t]/(modulus)``.

    Use :func:`prime_field` and :func:`extension` rather than calling this
    directly. The low-level methods (``add``, ``mul``, ...) work on integer
    encodings; :class:`FieldElement` wraps them with operators.
    """

    def __init__(self, p: int, base: Field | None = None, modulus: Polynomial | None = None):
        self.p = p
        self.base = base
        self.modulus = modulus
        if base is None:
            self.rel_degree = 1
            self.degree = 1
            self.order = p
            self.key: tuple = (p,)
        else:
            assert modulus is not None
            self.rel_degree = modulus.degree
            self.degree = base.degree * modulus.degree
            self.order = base.order ** modulus.degree
            self.key = (p, base.key, modulus.coeffs)
        self._mod_tail = None
        if modulus is not None:
            # t^n = -(c_0 + ... + c_{n-1} t^{n-1})
            self._mod_tail = [base.neg(c) for c in modulus.coeffs[:-1]]

    # identity ------------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Field({self.name})"

    @property
    def name(self) -> str:
        if self.base is None:
            return f"F_{self.p}"
        return f"F_{self.order}"

    @property
    def is_prime(self) -> bool:
        return self.base is None

    @property
    def base_order(self) -> int:
        return self.p if self.base is None else self.base.order

    @property
    def prime_field(self) -> Field:
        f = self
        while f.base is not None:
            f = f.base
        return f

    def __len__(self):
        return self.order

    # element construction ---------------------------------------------------
    def __call__(self, x: int | Sequence[int] | FieldElement) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            if self.contains_subfield(x.field):
                return FieldElement(self, x.value)
            raise FieldMismatch(f"cannot coerce {x.field.name} element into {self.name}")
        if isinstance(x, (int, np.integer)):
            x = int(x)
            if not 0 <= x < self.order:
                raise ValueError(f"encoding {x} outside [0, {self.order})")
            return FieldElement(self, x)
        return FieldElement(self, self.from_coords([int(c) for c in x]))

    def scalar(self, n: int) -> FieldElement:
        """The image of the integer n under Z -> F."""
        return FieldElement(self, n % self.p)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of t in base[t]/(modulus) (the element 1 for a prime field)."""
        if self.base is None:
            return self.one
        return FieldElement(self, self.base_order % self.order if self.rel_degree > 1 else
                            self.base.neg(self.modulus.coeffs[0]))

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.order):
            yield FieldElement(self, v)

    def __iter__(self):
        return self.elements()

    def contains_subfield(self, sub: Field) -> bool:
        f = self
        while f is not None:
            if f == sub:
                return True
            f = f.base
        return False

    # coordinates --------------------------------------------------------------
    def coords(self, v: int) -> list[int]:
        """Relative coordinates over ``base`` (a one-item list for a prime field)."""
        if self.base is None:
            return [v]
        q = self.base.order
        out = []
        for _ in range(self.rel_degree):
            v, r = divmod(v, q)
            out.append(r)
        return out

    def from_coords(self, cs: Sequence[int]) -> int:
        if self.base is None:
            if len(cs) != 1:
                raise ValueError("prime field elements have one coordinate")
            return cs[0] % self.p
        if len(cs) != self.rel_degree:
            raise ValueError(f"expected {self.rel_degree} coordinates, got {len(cs)}")
        q = self.base.order
        v = 0
        for c in reversed(cs):
            if not 0 <= c < q:
                raise ValueError(f"coordinate {c} outside [0, {q})")
            v = v * q + c
        return v

    def digits(self, v: int) -> tuple[int, ...]:
        """Flat coefficients over the prime field, least-degree first."""
        out = []
        for _ in range(self.degree):
            v, r = divmod(v, self.p)
            out.append(r)
        return tuple(out)

    # arithmetic on encodings ------------------------------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.base is None:
            return (a + b) % p
        if p == 2:
            return a ^ b
        out, place = 0, 1
        for _ in range(self.degree):
            out += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if self.base is None:
            return (-a) % p
        if p == 2:
            return a
        out, place = 0, 1
        for _ in range(self.degree):
            out += ((-(a % p)) % p) * place
            a //= p
            place *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        B = self.base
        n = self.rel_degree
        ca, cb = self.coords(a), self.coords(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(ca):
            if x == 0:
                continue
            for j, y in enumerate(cb):
                if y:
                    prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        tail = self._mod_tail
        for top in range(2 * n - 2, n - 1, -1):
            c = prod[top]
            if c == 0:
                continue
            prod[top] = 0
            for i, m in enumerate(tail):
                if m:
                    prod[top - n + i] = B.add(prod[top - n + i], B.mul(c, m))
        return self.from_coords(prod[:n])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self.name}")
        if self.base is None:
            return pow(a, -1, self.p)
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # lookup tables ----------------------------------------------------------
    @cached_property
    def log_tables(self) -> LogTables:
        return LogTables(self)

    @cached_property
    def small_tables(self) -> SmallTables:
        return SmallTables.build(self)


class FieldElement:
    """Immutable element of a :class:`Field`."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                if self.field.contains_subfield(other.field):
                    return other.value
                raise FieldMismatch(f"{self.field.name} vs {other.field.name}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, int(e)))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.field.p and self.value < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __lt__(self, other):
        return self.value < other.value

    def __repr__(self):
        return f"{self.field.name}({self.value})"

    @property
    def coefficients(self) -> tuple[int, ...]:
        """Coefficients over the prime field, index i holding the coefficient of t^i."""
        return self.field.digits(self.value)

    @property
    def coords(self) -> list[FieldElement]:
        """Relative coordinates as elements of the base field."""
        base = self.field.base or self.field
        return [FieldElement(base, c) for c in self.field.coords(self.value)]

    def encode(self) -> int:
        return self.value


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Polynomial over a finite field; coefficients stored least-degree first as encodings."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable):
        cs = [c.value if isinstance(c, FieldElement) else int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> Polynomial:
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: Field, c: int) -> Polynomial:
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def coefficients(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.coeffs)

    def canonical_int(self) -> int:
        """Mixed-radix value of the coefficients below the leading term."""
        q = self.field.order
        v = 0
        for c in reversed(self.coeffs[:-1]):
            v = v * q + c
        return v

    def sort_key(self):
        return (self.degree, self.canonical_int(), self.lead)

    def _check(self, other: Polynomial):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field.name} vs {other.field.name}")
        return None

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def __add__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial(F, [F.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])

    def __neg__(self):
        return Polynomial(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(F, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Polynomial(F, out)

    def scale(self, c: int) -> Polynomial:
        return Polynomial(self.field, [self.field.mul(c, x) for x in self.coeffs])

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        inv_lead = F.inv(dv[-1])
        if len(rem) - 1 < dd:
            return Polynomial(F, ()), Polynomial(F, rem)
        quot = [0] * (len(rem) - dd)
        for top in range(len(rem) - 1, dd - 1, -1):
            c = rem[top]
            if c == 0:
                continue
            c = F.mul(c, inv_lead)
            quot[top - dd] = c
            for i, y in enumerate(dv):
                if y:
                    rem[top - dd + i] = F.sub(rem[top - dd + i], F.mul(c, y))
        return Polynomial(F, quot), Polynomial(F, rem[:dd])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> Polynomial:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.lead))

    def powmod(self, e: int, mod: Polynomial) -> Polynomial:
        result = Polynomial.constant(self.field, 1) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = x.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + x.field(FieldElement(self.field, c))
        return acc

    def text(self, var: str = "t") -> str:
        """Canonical text form ``c_0 + c_1*t + c_2*t^2`` with zero terms omitted."""
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*{var}")
            else:
                terms.append(f"{c}*{var}^{i}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"Polynomial({self.text('x')} over {self.field.name})"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test over the coefficient field."""
    if f.is_zero:
        raise ZeroPolynomial("zero polynomial")
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    f = f.monic()
    F = f.field
    q = F.order
    x = Polynomial.x(F)
    frob = [x % f]
    for _ in range(d):
        frob.append(frob[-1].powmod(q, f))
    if frob[d] != x % f:
        return False
    for r, _ in factor_integer(d):
        g = poly_gcd(frob[d // r] - x, f)
        if g.degree != 0:
            return False
    return True


def _monic_of_degree(F: Field, d: int, n: int) -> Polynomial:
    q = F.order
    cs = []
    for _ in range(d):
        n, r = divmod(n, q)
        cs.append(r)
    cs.append(1)
    return Polynomial(F, cs)


def least_irreducible(base: Field, d: int) -> Polynomial:
    """Least monic irreducible of degree d, comparing c_0 + c_1*q + ... as integers."""
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    for n in range(base.order ** d):
        cand = _monic_of_degree(base, d, n)
        if is_irreducible(cand):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable over finite fields


def factor_poly(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Factor a monic polynomial by ascending trial division."""
    if f.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if not f.is_monic:
        raise ValueError("factor_poly expects a monic polynomial")
    if f.degree > POLY_FACTOR_MAX_DEGREE:
        raise TooLarge(f"degree {f.degree} exceeds {POLY_FACTOR_MAX_DEGREE}")
    F = f.field
    out = []
    rest = f
    d = 1
    while 2 * d <= rest.degree:
        for n in range(F.order ** d):
            cand = _monic_of_degree(F, d, n)
            e = 0
            while True:
                quo, rem = divmod(rest, cand)
                if not rem.is_zero:
                    break
                rest = quo
                e += 1
            if e:
                out.append((cand, e))
            if 2 * d > rest.degree:
                break
        d += 1
    if rest.degree > 0:
        merged = False
        for i, (g, e) in enumerate(out):
            if g == rest:
                out[i] = (g, e + 1)
                merged = True
        if not merged:
            out.append((rest, 1))
    out.sort(key=lambda ge: ge[0].sort_key())
    return out


def multiply_factors(F: Field, factors: Sequence[tuple[Polynomial, int]]) -> Polynomial:
    out = Polynomial.constant(F, 1)
    for g, e in factors:
        for _ in range(e):
            out = out * g
    return out


# --------------------------------------------------------------------------
# constructors


def prime_field(p: int) -> Field:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise NotPrime(f"{p} is not prime")
    return Field(int(p))


def extension(base: Field, modulus: Polynomial) -> Field:
    if modulus.field != base:
        raise FieldMismatch("modulus must have coefficients in the base field")
    if not modulus.is_monic:
        raise ValueError("modulus must be monic")
    if not is_irreducible(modulus):
        raise Reducible(f"{modulus.text()} is reducible over {base.name}")
    return Field(base.p, base, modulus)


def finite_field(p: int, d: int = 1) -> Field:
    """F_{p^d} with the least irreducible modulus (F_p itself when d = 1)."""
    F = prime_field(p)
    if d == 1:
        return F
    return extension(F, least_irreducible(F, d))


# --------------------------------------------------------------------------
# multiplicative order


def element_order(F: Field, a: int) -> int:
    """Multiplicative order from the factorization of |F| - 1."""
    if a == 0:
        raise DivisionByZero("0 has no multiplicative order")
    n = F.order - 1
    t = n
    for r, _ in factor_integer(n):
        while t % r == 0 and F.pow(a, t // r) == 1:
            t //= r
    return t


def least_primitive(F: Field) -> int:
    n = F.order - 1
    for a in range(1, F.order):
        if element_order(F, a) == n:
            return a
    raise AssertionError("finite field without a primitive element")


# --------------------------------------------------------------------------
# lookup tables for the kernels


class SmallTables:
    """Full add/mul/neg/inv tables for a field with at most SMALL_TABLE_CAP elements."""

    def __init__(self, order, add, mul, neg, inv):
        self.order = order
        self.add = add
        self.mul = mul
        self.neg = neg
        self.inv = inv

    @classmethod
    def build(cls, F: Field) -> SmallTables:
        q = F.order
        if q > SMALL_TABLE_CAP:
            raise CapExceeded(f"|{F.name}| = {q} exceeds the table cap {SMALL_TABLE_CAP}")
        v = np.arange(q, dtype=np.int64)
        if F.is_prime:
            add = (v[:, None] + v[None, :]) % q
            mul = (v[:, None] * v[None, :]) % q
            neg = (-v) % q
            inv = np.zeros(q, dtype=np.int64)
            inv[1:] = [pow(int(x), -1, q) for x in v[1:]]
        else:
            lt = F.log_tables
            add = kernels.digit_add(v[:, None], v[None, :], F.p, F.degree)
            neg = kernels.digit_neg(v, F.p, F.degree)
            lg = lt.log
            s = (lg[:, None] + lg[None, :]) % (q - 1)
            mul = np.where((v[:, None] == 0) | (v[None, :] == 0), 0, lt.exp[s])
            inv = np.zeros(q, dtype=np.int64)
            inv[1:] = lt.exp[(-lg[1:]) % (q - 1)]
        return cls(q, add, mul, neg, inv)


class LogTables:
    """Discrete log/antilog tables over canonical encodings, plus vectorised ops."""

    def __init__(self, F: Field):
        if F.order > LOG_TABLE_CAP:
            raise CapExceeded(f"|{F.name}| = {F.order} exceeds the log-table cap {LOG_TABLE_CAP}")
        self.field = F
        self.order = F.order
        n = F.order - 1
        g = least_primitive(F)
        self.generator = g
        if F.is_prime:
            exp = np.empty(n, dtype=np.int64)
            x = 1
            for i in range(n):
                exp[i] = x
                x = (x * g) % F.p
        else:
            base = F.base
            bt = base.small_tables
            r = F.rel_degree
            step = np.array([F.coords(F.mul(base.order ** j, g)) for j in range(r)], dtype=np.int64)
            start = np.array(F.coords(1), dtype=np.int64)
            coords = kernels.orbit(start, step, n, bt.add, bt.mul)
            exp = kernels.from_digits(coords, base.order)
        log = np.full(F.order, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if (log[1:] < 0).any():
            raise AssertionError("generator does not span the multiplicative group")
        self.exp = exp
        self.log = log

    # vectorised ops on encodings
    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        n = self.order - 1
        s = (self.log[a] + self.log[b]) % n
        return np.where((a == 0) | (b == 0), 0, self.exp[s])

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        n = self.order - 1
        if e == 0:
            return np.ones_like(a)
        s = (self.log[a] * (e % n)) % n
        return np.where(a == 0, 0, self.exp[s])

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if (a == 0).any():
            raise DivisionByZero("0 has no inverse")
        return self.exp[(-self.log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def add(self, a, b):
        return kernels.digit_add(a, b, self.field.p, self.field.degree)

    def neg(self, a):
        return kernels.digit_neg(np.asarray(a, dtype=np.int64), self.field.p, self.field.degree)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def order_of(self, a):
        """Multiplicative orders of nonzero encodings: n / gcd(log, n)."""
        a = np.asarray(a, dtype=np.int64)
        n = self.order - 1
        return n // np.gcd(self.log[a], n)
