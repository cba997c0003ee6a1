"""Exact arithmetic in the field Q(u) of rational functions in one formal unit u.

The deformation parameter of the twisted torus algebra is lambda = u**2, so
that u itself serves as the square root of lambda.  Keeping u as a formal
variable (rather than a complex number) makes every comparison in the engine
an exact polynomial identity: two values are equal iff their canonical forms
coincide, and "generically nonzero" coefficients such as 1 - lambda**m are
honestly invertible.

A Scalar is stored as a triple (shift, num, den) representing

    u**shift * num(u) / den(u)

where num and den are integer-coefficient polynomials (ascending tuples)
that are not divisible by u.  Invariants of the canonical form:

  * zero is (0, (), (1,));
  * otherwise num[0] != 0 and den[0] != 0 (all powers of u live in shift),
    den has positive leading coefficient, num and den share no polynomial
    factor and their integer contents are coprime.

Splitting off the power of u keeps the ubiquitous monomials (+/- u**k) free
of gcd work, and it makes the star involution u -> 1/u a cheap coefficient
reversal.

>>> print(MU.inv() + MU)
(1 + u^2)/u
>>> print(lambda_pow(-1))
1/u^2
>>> (ONE - LAMBDA) * (ONE + LAMBDA) == ONE - lambda_pow(2)
True
>>> print(Scalar.parse("(1 - u^2)/u").star())
(-1 + u^2)/u
"""

from __future__ import annotations

import cmath
import math
import re


class PoleError(ZeroDivisionError):
    """Numeric evaluation hit a zero of the denominator."""


# ---------------------------------------------------------------------------
# integer polynomial helpers; a polynomial is a tuple of ints, ascending
# degree, with no trailing zeros ( () is the zero polynomial )


def _pstrip(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _pstrip(out)


def _pneg(a: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in a)


def _pmul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _pstrip(out)


def _pcontent(a: tuple[int, ...]) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
    return g


def _pdiv_exact(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Quotient a // b when b divides a exactly (integer coefficients)."""
    if not a:
        return ()
    assert b, "division by zero polynomial"
    rem = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        head = rem[i + db]
        if head % lb:
            raise ArithmeticError("inexact polynomial division")
        c = head // lb
        q[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return _pstrip(q)


def _prem(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Pseudo-remainder of a by b (agrees with the true remainder up to a
    power of the leading coefficient of b)."""
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < db or not r:
            return tuple(r)
        head, shift = r[-1], len(r) - 1 - db
        r = [x * lb for x in r]
        for j, y in enumerate(b):
            r[shift + j] -= head * y


def _pgcd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Gcd of integer polynomials: gcd of contents times primitive gcd,
    normalized to positive leading coefficient."""
    if not a:
        return b if not b or b[-1] > 0 else _pneg(b)
    if not b:
        return a if a[-1] > 0 else _pneg(a)
    ca, cb = _pcontent(a), _pcontent(b)
    a = tuple(x // ca for x in a)
    b = tuple(x // cb for x in b)
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        r = _prem(a, b)
        if r:
            cr = _pcontent(r)
            r = tuple(x // cr for x in r)
        a, b = b, r
    c = math.gcd(ca, cb)
    if a[-1] < 0:
        a = _pneg(a)
    return tuple(x * c for x in a)


def _peval(a: tuple[int, ...], z: complex) -> complex:
    out = 0j
    for c in reversed(a):
        out = out * z + c
    return out


class Scalar:
    """An element of Q(u) in canonical form.  Immutable and hashable."""

    __slots__ = ("s", "n", "d")

    def __init__(self, shift: int = 0, num: tuple[int, ...] = (), den: tuple[int, ...] = (1,)):
        s, n, d = _canonical(shift, num, den)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *a):  # pragma: no cover - guard rail
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _raw(cls, s: int, n: tuple[int, ...], d: tuple[int, ...]) -> "Scalar":
        """Internal constructor for values already in canonical form."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "s", s)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "d", d)
        return obj

    @classmethod
    def from_int(cls, k: int) -> "Scalar":
        if k == 0:
            return ZERO
        return cls._raw(0, (k,), (1,))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.n

    def __bool__(self) -> bool:
        return bool(self.n)

    # -- ring/field structure ----------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.s == other.s and self.n == other.n and self.d == other.d

    def __hash__(self) -> int:
        return hash((self.s, self.n, self.d))

    def __neg__(self) -> "Scalar":
        return Scalar._raw(self.s, _pneg(self.n), self.d)

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.n:
            return other
        if not other.n:
            return self
        s = min(self.s, other.s)
        a = (0,) * (self.s - s) + self.n
        b = (0,) * (other.s - s) + other.n
        if self.d == other.d:
            return Scalar(s, _padd(a, b), self.d)
        return Scalar(s, _padd(_pmul(a, other.d), _pmul(b, self.d)), _pmul(self.d, other.d))

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.n or not other.n:
            return ZERO
        if self.d == (1,) and other.d == (1,):
            # the hot path: no cancellation can occur against a unit den
            return Scalar._raw(self.s + other.s, _pmul(self.n, other.n), (1,))
        n1, d1, n2, d2 = self.n, self.d, other.n, other.d
        g = _pgcd(n1, d2)
        if g != (1,):
            n1, d2 = _pdiv_exact(n1, g), _pdiv_exact(d2, g)
        g = _pgcd(n2, d1)
        if g != (1,):
            n2, d1 = _pdiv_exact(n2, g), _pdiv_exact(d1, g)
        num, den = _pmul(n1, n2), _pmul(d1, d2)
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        return Scalar._raw(self.s + other.s, num, den)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self.n:
            raise ZeroDivisionError("inverse of zero")
        n, d = self.d, self.n
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return Scalar._raw(-self.s, n, d)

    def __truediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- the star involution u -> 1/u ---------------------------------------

    def star(self) -> "Scalar":
        """Field automorphism sending u to its inverse.

        On the canonical triple this is a coefficient reversal: the image of
        u**s * n(u)/d(u) is u**(-s + deg d - deg n) * rev(n)(u) / rev(d)(u).
        """
        if not self.n:
            return ZERO
        n = tuple(reversed(self.n))
        d = tuple(reversed(self.d))
        if d[-1] < 0:
            n, d = _pneg(n), _pneg(d)
        return Scalar._raw(-self.s + (len(self.d) - 1) - (len(self.n) - 1), n, d)

    # -- numeric channel ------------------------------------------------------

    def eval_numeric(self, theta: float) -> complex:
        """Evaluate at u = exp(i*pi*theta), so lambda = exp(2*pi*i*theta)."""
        z = cmath.exp(1j * math.pi * theta)
        dv = _peval(self.d, z)
        if abs(dv) < 1e-12:
            raise PoleError(f"denominator vanishes at theta={theta!r}")
        if not self.n:
            return 0j
        return z ** self.s * _peval(self.n, z) / dv

    # -- text form -------------------------------------------------------------

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar[{format_scalar(self)}]"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return parse_scalar(text)


def _canonical(shift: int, num, den) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    num = _pstrip(list(num))
    den = _pstrip(list(den))
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return 0, (), (1,)
    i = 0
    while num[i] == 0:
        i += 1
    if i:
        shift += i
        num = num[i:]
    j = 0
    while den[j] == 0:
        j += 1
    if j:
        shift -= j
        den = den[j:]
    g = _pgcd(num, den)
    if g != (1,):
        num, den = _pdiv_exact(num, g), _pdiv_exact(den, g)
    if den[-1] < 0:
        num, den = _pneg(num), _pneg(den)
    return shift, num, den


def _coerce(x) -> "Scalar":
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar.from_int(x)
    return NotImplemented


ZERO = Scalar._raw(0, (), (1,))
ONE = Scalar._raw(0, (1,), (1,))
MU = Scalar._raw(1, (1,), (1,))
LAMBDA = Scalar._raw(2, (1,), (1,))
HALF = Scalar._raw(0, (1,), (2,))


def lambda_pow(k: int) -> Scalar:
    """The monomial lambda**k = u**(2k)."""
    return Scalar._raw(2 * k, (1,), (1,))


def mu_pow(k: int) -> Scalar:
    return Scalar._raw(k, (1,), (1,))


# ---------------------------------------------------------------------------
# text form: integer-coefficient Laurent expressions in u, e.g. "(1 - u^2)/u"


def _poly_str(p: tuple[int, ...], low: int) -> str:
    """Render sum of p[k] * u**(k+low) with non-negative k+low."""
    parts = []
    for k, c in enumerate(p):
        if not c:
            continue
        e = k + low
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            upart = "u" if e == 1 else f"u^{e}"
            body = upart if mag == 1 else f"{mag}{upart}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts) if parts else "0"


def _is_atom(p: tuple[int, ...], low: int) -> bool:
    """True when the rendering of (p, low) needs no parentheses inside a
    fraction: a bare positive integer, or u**k with unit coefficient."""
    terms = [(k + low, c) for k, c in enumerate(p) if c]
    if len(terms) != 1:
        return False
    e, c = terms[0]
    return c == 1 if e else c > 0


def format_scalar(x: Scalar) -> str:
    if not x.n:
        return "0"
    num_low = max(x.s, 0)
    den_low = max(-x.s, 0)
    ns = _poly_str(x.n, num_low)
    if x.d == (1,) and den_low == 0:
        return ns
    ds = _poly_str(x.d, den_low)
    if sum(1 for c in x.n if c) > 1:
        ns = f"({ns})"
    if not _is_atom(x.d, den_low):
        ds = f"({ds})"
    return f"{ns}/{ds}"


_TOKEN = re.compile(r"\s*(\d+|u|\^|\+|-|\*|/|\(|\))")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad character in scalar text: {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Scalar:
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens in scalar text: {self.toks[self.i:]}")
        return v

    def expr(self) -> Scalar:
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self) -> Scalar:
        v = self.factor()
        while True:
            t = self.peek()
            if t in ("*", "/"):
                self.next()
                w = self.factor()
                v = v * w if t == "*" else v / w
            elif t == "u" or t == "(":
                v = v * self.factor()  # juxtaposition, e.g. "3u^2"
            else:
                return v

    def factor(self) -> Scalar:
        neg = False
        while self.peek() == "-":
            self.next()
            neg = not neg
        v = self.atom()
        if self.peek() == "^":
            self.next()
            sign = 1
            while self.peek() == "-":
                self.next()
                sign = -sign
            t = self.next()
            if t is None or not t.isdigit():
                raise ValueError("exponent must be an integer")
            v = v ** (sign * int(t))
        return -v if neg else v

    def atom(self) -> Scalar:
        t = self.next()
        if t is None:
            raise ValueError("unexpected end of scalar text")
        if t.isdigit():
            return Scalar.from_int(int(t))
        if t == "u":
            return MU
        if t == "(":
            v = self.expr()
            if self.next() != ")":
                raise ValueError("unbalanced parenthesis in scalar text")
            return v
        raise ValueError(f"unexpected token {t!r} in scalar text")


def parse_scalar(text: str) -> Scalar:
    """Parse the text form produced by format_scalar (round-trips exactly)."""
    return _Parser(_tokenize(text)).parse()
