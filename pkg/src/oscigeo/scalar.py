"""Exact arithmetic in Q(pi).

A Scalar is a rational function p(pi)/q(pi) with Fraction coefficients,
where pi is treated as a transcendental symbol.  Values are kept in
canonical form (numerator and denominator coprime, denominator monic),
so equality is structural and zero-testing is free.

Sign queries evaluate the rational function on shrinking rational
enclosures of pi.  A nonzero polynomial with rational coefficients
cannot vanish at a transcendental point, so the refinement always
terminates; this is what turns comparisons, floors and lattice
membership into exact decisions.

Polynomials are dense tuples of Fractions in ascending degree; the zero
polynomial is the empty tuple.  Degrees stay tiny in this engine, so
density costs nothing and keeps the gcd trivial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = [
    "Scalar",
    "DivisionByZero",
    "NotRational",
    "PI",
    "PI_HALF",
    "parse_scalar",
    "in_lattice_1d",
    "is_integer_multiple",
    "quarter_turns",
    "pi_enclosure",
]


class DivisionByZero(ZeroDivisionError):
    """Division of a Scalar by the zero Scalar."""


class NotRational(ValueError):
    """A rational value was requested from a non-constant Scalar."""


Coeffs = tuple[Fraction, ...]
ScalarLike = Union["Scalar", int, Fraction, str]


# ---------------------------------------------------------------------------
# dense polynomial helpers over Q
# ---------------------------------------------------------------------------

def _trim(c) -> Coeffs:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(v) for v in c)


def _padd(a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def _pneg(a: Coeffs) -> Coeffs:
    return tuple(-v for v in a)


def _pmul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return _trim(out)


def _pdivmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and any(r):
        if r[-1] == 0:
            r.pop()
            continue
        shift = len(r) - len(b)
        factor = r[-1] / lead
        q[shift] = factor
        for i, v in enumerate(b):
            r[shift + i] -= factor * v
        r.pop()
    return _trim(q), _trim(r)


def _pmonic(a: Coeffs) -> Coeffs:
    if not a:
        return ()
    lead = a[-1]
    return tuple(v / lead for v in a)


def _pgcd(a: Coeffs, b: Coeffs) -> Coeffs:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _peval_float(a: Coeffs, x: float) -> float:
    out = 0.0
    for v in reversed(a):
        out = out * x + float(v)
    return out


def _peval_exact(a: Coeffs, x: Fraction) -> Fraction:
    out = Fraction(0)
    for v in reversed(a):
        out = out * x + v
    return out


def _peval_interval(a: Coeffs, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    # interval Horner; the argument interval may have any sign
    out_lo = out_hi = Fraction(0)
    for v in reversed(a):
        products = (out_lo * lo, out_lo * hi, out_hi * lo, out_hi * hi)
        out_lo = min(products) + v
        out_hi = max(products) + v
    return out_lo, out_hi


# ---------------------------------------------------------------------------
# rational enclosures of pi (Machin's formula, integer arithmetic)
# ---------------------------------------------------------------------------

def _arccot(x: int, one: int) -> int:
    total = 0
    power = one // x
    n = 1
    sign = 1
    xx = x * x
    while power:
        total += sign * (power // n)
        power //= xx
        n += 2
        sign = -sign
    return total


@lru_cache(maxsize=None)
def pi_enclosure(digits: int) -> tuple[Fraction, Fraction]:
    """Rational lower/upper bounds of pi with gap about 10**-digits."""
    guard = 10 ** 12
    one = 10 ** digits * guard
    approx = 4 * (4 * _arccot(5, one) - _arccot(239, one))
    scaled = approx // guard
    denom = 10 ** digits
    # series truncation plus flooring stays far below the guard scale
    return Fraction(scaled - 2, denom), Fraction(scaled + 2, denom)


# ---------------------------------------------------------------------------
# the field element
# ---------------------------------------------------------------------------

class Scalar:
    """An exact element of Q(pi), a reduced fraction of polynomials in pi."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        n = self._as_coeffs(num)
        d = self._as_coeffs(den)
        if not d:
            raise DivisionByZero("scalar denominator is zero")
        if not n:
            self.num, self.den = (), (Fraction(1),)
            return
        # constants and unit denominators need no polynomial gcd
        if len(d) > 1 and len(n) > 1:
            g = _pgcd(n, d)
            if len(g) > 1:
                n = _pdivmod(n, g)[0]
                d = _pdivmod(d, g)[0]
        lead = d[-1]
        if lead != 1:
            n = tuple(v / lead for v in n)
            d = tuple(v / lead for v in d)
        self.num, self.den = n, d

    @staticmethod
    def _as_coeffs(value) -> Coeffs:
        if isinstance(value, (int, Fraction)):
            return _trim([Fraction(value)])
        if isinstance(value, (tuple, list)):
            return _trim(value)
        raise TypeError(f"cannot build polynomial from {value!r}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def coerce(cls, value: ScalarLike) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot interpret {value!r} as a Scalar")

    @classmethod
    def pi(cls) -> "Scalar":
        return cls((0, 1))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_rational(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"{self} is not a rational constant")
        if not self.num:
            return Fraction(0)
        return self.num[0] / self.den[0]

    def is_integer(self) -> bool:
        return self.is_rational() and self.rational_value().denominator == 1

    # -- field arithmetic ---------------------------------------------------

    def __add__(self, other):
        o = Scalar.coerce(other)
        return Scalar(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(Scalar)
        out.num, out.den = _pneg(self.num), self.den
        return out

    def __sub__(self, other):
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) + (-self)

    def __mul__(self, other):
        o = Scalar.coerce(other)
        return Scalar(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Scalar.coerce(other)
        if o.is_zero():
            raise DivisionByZero("scalar division by zero")
        return Scalar(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("scalar exponent must be an integer")
        if exponent < 0:
            return Scalar(1) / self ** (-exponent)
        out = Scalar(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparisons (exact) -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            o = Scalar.coerce(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def sign(self) -> int:
        """Exact sign of the value at pi: -1, 0 or +1."""
        if self.is_zero():
            return 0
        if self.is_rational():
            v = self.rational_value()
            return (v > 0) - (v < 0)
        digits = 40
        while True:
            lo, hi = pi_enclosure(digits)
            nlo, nhi = _peval_interval(self.num, lo, hi)
            dlo, dhi = _peval_interval(self.den, lo, hi)
            if (nlo > 0 or nhi < 0) and (dlo > 0 or dhi < 0):
                ns = 1 if nlo > 0 else -1
                ds = 1 if dlo > 0 else -1
                return ns * ds
            digits *= 2

    def __lt__(self, other):
        return (self - Scalar.coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - Scalar.coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - Scalar.coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - Scalar.coerce(other)).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def floor(self) -> int:
        """Exact floor of the value at pi."""
        if self.is_rational():
            v = self.rational_value()
            return v.numerator // v.denominator
        m = math.floor(float(self))
        while (self - m).sign() < 0:
            m -= 1
        while (self - (m + 1)).sign() >= 0:
            m += 1
        return m

    # -- conversions ---------------------------------------------------------

    def __float__(self) -> float:
        return _peval_float(self.num, math.pi) / _peval_float(self.den, math.pi)

    def eval_fraction(self, x: Fraction) -> Fraction:
        """Exact evaluation at a rational argument (reference evaluations)."""
        d = _peval_exact(self.den, x)
        if d == 0:
            raise DivisionByZero(f"denominator of {self} vanishes at {x}")
        return _peval_exact(self.num, x) / d

    # -- printing ------------------------------------------------------------

    def __str__(self) -> str:
        if self.den == (Fraction(1),):
            return _format_poly(self.num)
        return f"({_format_poly(self.num)})/({_format_poly(self.den)})"

    def __repr__(self) -> str:
        return f"Scalar({self})"


PI = Scalar.pi()
PI_HALF = PI / 2

ZERO = Scalar(0)
ONE = Scalar(1)


# ---------------------------------------------------------------------------
# lattice membership helpers
# ---------------------------------------------------------------------------

def in_lattice_1d(s: ScalarLike, step: Fraction) -> bool:
    """True iff s is rational and an integer multiple of the rational step."""
    step = Fraction(step)
    if step <= 0:
        raise ValueError("lattice step must be positive")
    s = Scalar.coerce(s)
    if not s.is_rational():
        return False
    return (s.rational_value() / step).denominator == 1


def is_integer_multiple(s: ScalarLike, step: ScalarLike) -> bool:
    """True iff s/step is an integer; step may be any nonzero Scalar."""
    s = Scalar.coerce(s)
    step = Scalar.coerce(step)
    return (s / step).is_integer()


def quarter_turns(s: ScalarLike) -> int | None:
    """The integer j with s = j*pi/2, or None if s is not such a multiple."""
    u = Scalar.coerce(s) * 2 / PI
    if not u.is_integer():
        return None
    return int(u.rational_value())


# ---------------------------------------------------------------------------
# textual form: "p(pi)/q(pi)" with integer-fraction coefficients
# ---------------------------------------------------------------------------

def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _format_poly(coeffs: Coeffs) -> str:
    if not coeffs:
        return "0"
    parts = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        mag = abs(c)
        if power == 0:
            body = _format_coeff(mag)
        else:
            sym = "pi" if power == 1 else f"pi^{power}"
            body = sym if mag == 1 else f"{_format_coeff(mag)}*{sym}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[str] = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(text[i:j])
                i = j
                continue
            if text.startswith("pi", i):
                self.tokens.append("pi")
                i += 2
                continue
            if text.startswith("**", i):
                self.tokens.append("^")
                i += 2
                continue
            if ch in "+-*/^()":
                self.tokens.append(ch)
                i += 1
                continue
            raise ValueError(f"unexpected character {ch!r} in scalar text {text!r}")

    def peek(self) -> str | None:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError(f"unexpected end of scalar text {self.text!r}")
        self.index += 1
        return tok


def parse_scalar(text: str) -> Scalar:
    """Parse the textual form; the printer and parser round-trip exactly."""
    tk = _Tokenizer(text)
    value = _parse_sum(tk)
    if tk.peek() is not None:
        raise ValueError(f"trailing token {tk.peek()!r} in scalar text {text!r}")
    return value


def _parse_sum(tk: _Tokenizer) -> Scalar:
    value = _parse_term(tk)
    while tk.peek() in ("+", "-"):
        op = tk.next()
        rhs = _parse_term(tk)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_term(tk: _Tokenizer) -> Scalar:
    value = _parse_factor(tk)
    while tk.peek() in ("*", "/"):
        op = tk.next()
        rhs = _parse_factor(tk)
        value = value * rhs if op == "*" else value / rhs
    return value


def _parse_factor(tk: _Tokenizer) -> Scalar:
    negate = False
    while tk.peek() in ("+", "-"):
        if tk.next() == "-":
            negate = not negate
    value = _parse_atom(tk)
    if tk.peek() == "^":
        tk.next()
        exp_negate = False
        while tk.peek() in ("+", "-"):
            if tk.next() == "-":
                exp_negate = not exp_negate
        tok = tk.next()
        if not tok.isdigit():
            raise ValueError(f"exponent must be an integer, got {tok!r}")
        exponent = -int(tok) if exp_negate else int(tok)
        value = value ** exponent
    return -value if negate else value


def _parse_atom(tk: _Tokenizer) -> Scalar:
    tok = tk.next()
    if tok == "(":
        value = _parse_sum(tk)
        if tk.next() != ")":
            raise ValueError(f"unbalanced parentheses in scalar text {tk.text!r}")
        return value
    if tok == "pi":
        return PI
    if tok.isdigit():
        return Scalar(int(tok))
    raise ValueError(f"unexpected token {tok!r} in scalar text {tk.text!r}")
