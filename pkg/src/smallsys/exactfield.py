"""Exact arithmetic in Q, k = Q(sqrt 2), and quadratic towers k(sqrt d).

Every value is immutable and every operation is a pure function, so all of
this is safe to use from concurrent tasks.  Sign determination is exact
(integer case analysis, never floating point); numerical evaluation goes
through ``RealInterval``, whose endpoints always enclose the exact value.
The distinguished real embedding sends sqrt(2) and sqrt(d) to their
positive roots.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from mpmath import libmp

RationalLike = "int | Fraction"


class ContextMismatchError(ValueError):
    """Raised when tower elements from different field contexts are mixed."""


# ---------------------------------------------------------------------------
# certified intervals
# ---------------------------------------------------------------------------

def _round_down(x: Fraction, prec: int) -> Fraction:
    scale = 1 << prec
    return Fraction(math.floor(x * scale), scale)


def _round_up(x: Fraction, prec: int) -> Fraction:
    scale = 1 << prec
    return Fraction(math.ceil(x * scale), scale)


def _sqrt_down(x: Fraction, prec: int) -> Fraction:
    if x < 0:
        raise ValueError("sqrt of negative lower bound")
    if x == 0:
        return Fraction(0)
    p, q = x.numerator, x.denominator
    s = math.isqrt(p * q << (2 * prec))
    return Fraction(s, q << prec)


def _sqrt_up(x: Fraction, prec: int) -> Fraction:
    if x <= 0:
        if x < 0:
            raise ValueError("sqrt of negative upper bound")
        return Fraction(0)
    p, q = x.numerator, x.denominator
    s = math.isqrt(p * q << (2 * prec))
    if s * s < p * q << (2 * prec):
        s += 1
    return Fraction(s, q << prec)


def _raw_to_frac(raw) -> Fraction:
    sign, man, exp, _ = raw
    m = int(man)
    if sign:
        m = -m
    if exp >= 0:
        return Fraction(m << exp)
    return Fraction(m, 1 << -exp)


def _libmp_dir(fn, x: Fraction, prec: int, upper: bool) -> Fraction:
    """One transcendental endpoint, padded outward past libmp's rounding."""
    work = prec + 16
    rnd = "c" if upper else "f"
    raw = libmp.from_rational(x.numerator, x.denominator, work, rnd)
    out = _raw_to_frac(fn(raw, work, rnd))
    pad = max(abs(out), Fraction(1)) / (1 << (prec + 8))
    return out + pad if upper else out - pad


class RealInterval:
    """A closed interval with exact rational endpoints containing a real value.

    Endpoint arithmetic is exact; endpoints are rounded outward to dyadics
    with ``precision`` fractional bits so representations stay small.
    """

    __slots__ = ("lo", "hi", "precision")

    def __init__(self, lo, hi, precision: int = 64):
        if precision < 16:
            raise ValueError("precision must be at least 16 bits")
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        object.__setattr__(self, "lo", _round_down(lo, precision))
        object.__setattr__(self, "hi", _round_up(hi, precision))
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, *_):
        raise AttributeError("RealInterval is immutable")

    @classmethod
    def exact(cls, x, precision: int = 64) -> "RealInterval":
        x = Fraction(x)
        return cls(x, x, precision)

    # -- queries ----------------------------------------------------------

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.mid())

    def __contains__(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def overlaps(self, other: "RealInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def sign(self):
        """+1/-1 when the interval excludes 0, 0 for [0,0], else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 and self.hi == 0:
            return 0
        return None

    def strictly_less(self, other: "RealInterval") -> bool:
        return self.hi < other.lo

    def __repr__(self):
        return f"RealInterval({float(self.lo)!r}, {float(self.hi)!r})"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "RealInterval":
        if isinstance(other, RealInterval):
            return other
        return RealInterval.exact(other, self.precision)

    def __add__(self, other):
        o = self._coerce(other)
        p = min(self.precision, o.precision)
        return RealInterval(self.lo + o.lo, self.hi + o.hi, p)

    __radd__ = __add__

    def __neg__(self):
        return RealInterval(-self.hi, -self.lo, self.precision)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        p = min(self.precision, o.precision)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RealInterval(min(prods), max(prods), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.contains_zero():
            raise ZeroDivisionError("interval divisor contains zero")
        inv = RealInterval(1 / o.hi, 1 / o.lo, o.precision)
        return self * inv

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sqrt(self) -> "RealInterval":
        lo = max(self.lo, Fraction(0))
        if self.hi < 0:
            raise ValueError("sqrt of negative interval")
        return RealInterval(_sqrt_down(lo, self.precision),
                            _sqrt_up(self.hi, self.precision), self.precision)

    def log(self) -> "RealInterval":
        if self.lo <= 0:
            raise ValueError("log needs a positive interval")
        return RealInterval(_libmp_dir(libmp.mpf_log, self.lo, self.precision, False),
                            _libmp_dir(libmp.mpf_log, self.hi, self.precision, True),
                            self.precision)

    def exp(self) -> "RealInterval":
        return RealInterval(_libmp_dir(libmp.mpf_exp, self.lo, self.precision, False),
                            _libmp_dir(libmp.mpf_exp, self.hi, self.precision, True),
                            self.precision)

    def cosh(self) -> "RealInterval":
        a, b = abs(self.lo), abs(self.hi)
        top = max(a, b)
        hi = _libmp_dir(libmp.mpf_cosh, top, self.precision, True)
        if self.contains_zero():
            lo = Fraction(1)
        else:
            lo = _libmp_dir(libmp.mpf_cosh, min(a, b), self.precision, False)
            lo = max(lo, Fraction(1))
        return RealInterval(lo, hi, self.precision)

    def sinh(self) -> "RealInterval":
        return RealInterval(_libmp_dir(libmp.mpf_sinh, self.lo, self.precision, False),
                            _libmp_dir(libmp.mpf_sinh, self.hi, self.precision, True),
                            self.precision)

    def acosh(self) -> "RealInterval":
        """Inverse cosh; the represented value is assumed to be >= 1, so the
        lower endpoint is clamped to 1 before the composition log(x+sqrt(x^2-1))."""
        lo = max(self.lo, Fraction(1))
        if self.hi < 1:
            raise ValueError("acosh needs an interval meeting [1, oo)")
        x = RealInterval(lo, self.hi, self.precision)
        out = (x + (x * x - 1).sqrt()).log()
        return RealInterval(max(out.lo, Fraction(0)), max(out.hi, Fraction(0)),
                            self.precision)

    def acos(self) -> "RealInterval":
        lo = max(self.lo, Fraction(-1))
        hi = min(self.hi, Fraction(1))
        if lo > hi:
            raise ValueError("acos needs an interval meeting [-1, 1]")
        out_lo = max(_libmp_dir(libmp.mpf_acos, hi, self.precision, False), Fraction(0))
        out_hi = max(_libmp_dir(libmp.mpf_acos, lo, self.precision, True), Fraction(0))
        return RealInterval(out_lo, out_hi, self.precision)


def sqrt2_interval(precision: int = 64) -> RealInterval:
    return RealInterval(_sqrt_down(Fraction(2), precision),
                        _sqrt_up(Fraction(2), precision), precision)


# ---------------------------------------------------------------------------
# k = Q(sqrt 2)
# ---------------------------------------------------------------------------

def _rational_sqrt(x: Fraction):
    """Exact square root of a rational, or None."""
    if x < 0:
        return None
    p, q = x.numerator, x.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


class KElem:
    """An element a + b*sqrt(2) of Q(sqrt 2), with exact rational a, b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, *_):
        raise AttributeError("KElem is immutable")

    @staticmethod
    def _lift(x) -> "KElem":
        if isinstance(x, KElem):
            return x
        if isinstance(x, (int, Fraction)):
            return KElem(x)
        return NotImplemented

    # -- ring/field structure --------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return KElem(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return KElem(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return KElem(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def inverse(self) -> "KElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 2)")
        conj = self.conjugate()
        return KElem(conj.a / n, conj.b / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = KElem(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- order under the distinguished embedding --------------------------

    def sign(self) -> int:
        """Exact sign under sqrt(2) -> +1.414..., by integer case analysis."""
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: |a| vs |b|*sqrt(2) decided by a^2 vs 2 b^2
        cmp = a * a - 2 * b * b
        big_is_a = 1 if cmp > 0 else -1   # cmp == 0 impossible: sqrt 2 irrational
        return big_is_a if a > 0 else -big_is_a

    def __lt__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        return self._lift(other) < self

    def __ge__(self, other):
        return self._lift(other) <= self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- field-theoretic operations ---------------------------------------

    def conjugate(self) -> "KElem":
        """The nontrivial Galois conjugate a + b*sqrt(2) -> a - b*sqrt(2)."""
        return KElem(self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm x * conj(x) = a^2 - 2 b^2."""
        return self.a * self.a - 2 * self.b * self.b

    def is_square(self):
        """Decide x = r^2 for some r in k; returns (bool, witness or None).

        For x = a + b sqrt2 with b != 0, a root p + q sqrt2 forces
        2 p^4 - 2 a p^2 + b^2 = 0, so norm(x) must be a rational square s^2
        and one of p^2 = (a +- s)/2 must be a rational square.
        """
        a, b = self.a, self.b
        if b == 0:
            if a < 0:
                return False, None
            r = _rational_sqrt(a)
            if r is not None:
                return True, KElem(r, 0)
            r = _rational_sqrt(a / 2)
            if r is not None:
                return True, KElem(0, r)
            return False, None
        s = _rational_sqrt(self.norm())
        if s is None:
            return False, None
        for p_sq in ((a + s) / 2, (a - s) / 2):
            p = _rational_sqrt(p_sq)
            if p is not None and p != 0:
                root = KElem(p, b / (2 * p))
                if root.sign() < 0:
                    root = -root
                return True, root
        return False, None

    def height(self) -> int:
        """Max absolute value of the four integers in the reduced form."""
        if not self:
            return 0
        return max(abs(self.a.numerator), self.a.denominator,
                   abs(self.b.numerator), self.b.denominator)

    def embed(self, precision: int = 64) -> RealInterval:
        """Certified enclosure of the value under the distinguished embedding."""
        if precision < 16:
            raise ValueError("precision must be at least 16 bits")
        out = RealInterval.exact(self.a, precision)
        if self.b:
            out = out + RealInterval.exact(self.b, precision) * sqrt2_interval(precision)
        return out

    def __float__(self):
        return float(self.embed(64))

    # -- text form ---------------------------------------------------------

    def to_text(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*rt2"

    def __repr__(self):
        return f"KElem({self.a!r}, {self.b!r})"

    def __str__(self):
        return self.to_text()


SQRT2 = KElem(0, 1)
K_ONE = KElem(1)
K_ZERO = KElem(0)


def galois_conjugate(x: KElem) -> KElem:
    return KElem._lift(x).conjugate()


def norm_k(x) -> Fraction:
    return KElem._lift(x).norm()


def is_square_in_k(x):
    return KElem._lift(x).is_square()


def sign_k(x) -> int:
    return KElem._lift(x).sign()


def height(x) -> int:
    return KElem._lift(x).height()


_TERM_RE = re.compile(r"^(?P<coef>[+-]?\d+(?:/\d+)?)(?:\*(?P<rad>rt2|rtA))?$|^(?P<sign>[+-]?)(?P<bare>rt2|rtA)$")


def _parse_terms(text: str):
    """Split 'a+b*rt2' style text into (rational, rt2-coef, rtA-coef)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty field element")
    chunks = re.findall(r"[+-]?[^+-]+", s)
    if "".join(chunks) != s:
        raise ValueError(f"cannot parse field element: {text!r}")
    coords = {None: Fraction(0), "rt2": Fraction(0), "rtA": Fraction(0)}
    for chunk in chunks:
        m = _TERM_RE.match(chunk)
        if not m:
            raise ValueError(f"cannot parse term {chunk!r} in {text!r}")
        if m.group("bare") is not None:
            coef = Fraction(-1 if m.group("sign") == "-" else 1)
            rad = m.group("bare")
        else:
            coef = Fraction(m.group("coef"))
            rad = m.group("rad")
        coords[rad] += coef
    return coords


def parse_kelem(text: str) -> KElem:
    """Parse 'p/q', 'p/q+r/s*rt2' and friends; inverse of KElem.to_text."""
    coords = _parse_terms(text)
    if coords["rtA"]:
        raise ValueError(f"unexpected rtA term in k-element: {text!r}")
    return KElem(coords[None], coords["rt2"])


# ---------------------------------------------------------------------------
# quadratic towers K = k(sqrt d)
# ---------------------------------------------------------------------------

class TowerContext:
    """A fixed quadratic extension k(sqrt d), d in k positive and non-square.

    Elements from different contexts must not be mixed; arithmetic checks
    this and raises ContextMismatchError.  The standard instantiation is
    ``TowerContext.from_rational(a)`` for the field k(sqrt a) with a a
    positive rational that is not a square in k.
    """

    __slots__ = ("radicand", "a_param")

    def __init__(self, radicand: KElem, a_param=None):
        radicand = KElem._lift(radicand)
        if radicand.sign() <= 0:
            raise ValueError("tower radicand must be positive")
        sq, _ = radicand.is_square()
        if sq:
            raise ValueError(f"radicand {radicand} is a square in k; not a quadratic extension")
        object.__setattr__(self, "radicand", radicand)
        object.__setattr__(self, "a_param", None if a_param is None else Fraction(a_param))

    def __setattr__(self, *_):
        raise AttributeError("TowerContext is immutable")

    @classmethod
    def from_rational(cls, a) -> "TowerContext":
        a = Fraction(a)
        if a <= 0:
            raise ValueError("a must be a positive rational")
        return cls(KElem(a), a_param=a)

    def __eq__(self, other):
        return isinstance(other, TowerContext) and self.radicand == other.radicand

    def __hash__(self):
        return hash(self.radicand)

    def __repr__(self):
        return f"TowerContext(radicand={self.radicand!r})"

    def elem(self, u, v=0) -> "TowerElem":
        return TowerElem(KElem._lift(u), KElem._lift(v), self)

    def from_k(self, x) -> "TowerElem":
        return self.elem(KElem._lift(x), K_ZERO)

    def sqrt_gen(self) -> "TowerElem":
        return self.elem(K_ZERO, K_ONE)


class TowerElem:
    """An element u + v*sqrt(d) of a quadratic tower over k."""

    __slots__ = ("u", "v", "ctx")

    def __init__(self, u: KElem, v: KElem, ctx: TowerContext):
        object.__setattr__(self, "u", KElem._lift(u))
        object.__setattr__(self, "v", KElem._lift(v))
        object.__setattr__(self, "ctx", ctx)

    def __setattr__(self, *_):
        raise AttributeError("TowerElem is immutable")

    def _lift(self, x) -> "TowerElem":
        if isinstance(x, TowerElem):
            if x.ctx != self.ctx:
                raise ContextMismatchError(
                    f"mixing towers k(sqrt({x.ctx.radicand})) and k(sqrt({self.ctx.radicand}))")
            return x
        if isinstance(x, (int, Fraction, KElem)):
            return self.ctx.from_k(x)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return TowerElem(self.u + o.u, self.v + o.v, self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return TowerElem(-self.u, -self.v, self.ctx)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        d = self.ctx.radicand
        return TowerElem(self.u * o.u + d * self.v * o.v,
                         self.u * o.v + self.v * o.u, self.ctx)

    __rmul__ = __mul__

    def tower_conjugate(self) -> "TowerElem":
        return TowerElem(self.u, -self.v, self.ctx)

    def tower_norm(self) -> KElem:
        return self.u * self.u - self.ctx.radicand * self.v * self.v

    def inverse(self) -> "TowerElem":
        n = self.tower_norm()
        if not n:
            raise ZeroDivisionError("division by zero in tower")
        conj = self.tower_conjugate()
        return TowerElem(conj.u / n, conj.v / n, self.ctx)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.ctx.from_k(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v, self.ctx))

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def in_k(self) -> bool:
        return not self.v

    def sign(self) -> int:
        """Exact sign, with sqrt(d) -> positive root (same logic as KElem)."""
        su, sv = self.u.sign(), self.v.sign()
        if sv == 0:
            return su
        if su == 0:
            return sv
        if su == sv:
            return su
        cmp = (self.u * self.u - self.ctx.radicand * self.v * self.v).sign()
        return cmp if su > 0 else -cmp   # cmp != 0: d is not a square in k

    def embed(self, precision: int = 64) -> RealInterval:
        out = self.u.embed(precision)
        if self.v:
            root = self.ctx.radicand.embed(precision).sqrt()
            out = out + self.v.embed(precision) * root
        return out

    def __float__(self):
        return float(self.embed(64))

    def to_text(self) -> str:
        return f"({self.u.to_text()})+({self.v.to_text()})*rtA"

    def __repr__(self):
        return f"TowerElem({self.u!r}, {self.v!r}, d={self.ctx.radicand!r})"

    def __str__(self):
        return self.to_text()


def parse_tower(text: str, ctx: TowerContext) -> TowerElem:
    """Parse '(u)+(v)*rtA' (or any k-element text) inside a declared context."""
    s = text.replace(" ", "")
    m = re.match(r"^\((?P<u>[^()]*)\)\+\((?P<v>[^()]*)\)\*rtA$", s)
    if m:
        return ctx.elem(parse_kelem(m.group("u")), parse_kelem(m.group("v")))
    coords = _parse_terms(s)
    return ctx.elem(KElem(coords[None], coords["rt2"]), KElem(coords["rtA"]))


def as_tower_coords(x):
    """View any field element as (u, v) with x = u + v*sqrt(a), u, v in k."""
    if isinstance(x, TowerElem):
        return x.u, x.v
    return KElem._lift(x), K_ZERO


def embed(x, precision: int = 64) -> RealInterval:
    """Certified interval for a Rational, KElem, or TowerElem."""
    if isinstance(x, (int, Fraction)):
        if precision < 16:
            raise ValueError("precision must be at least 16 bits")
        return RealInterval.exact(x, precision)
    return x.embed(precision)
