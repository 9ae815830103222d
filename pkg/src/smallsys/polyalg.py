"""Exact polynomial machinery: resultants, minimal polynomials of numbers
quadratic over k = Q(sqrt 2), algebraic-integer tests, Mahler measure, and
bounded enumeration of monic integer polynomials.

Degrees stay small throughout (eliminants never exceed 16), so factor
selection works by clustering high-precision roots and reconstructing
integer factors from subset products, each verified by exact division.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np

from .exactfield import KElem, RealInterval

GAP_TOL = 1e-8          # measures below 1 + GAP_TOL are cross-checked exactly
_NEAR_ONE = 1.01        # numeric measure below this triggers the exact test
_BOUNDARY = 2e-3        # relative slack of the double-precision prefilter


class PrecisionError(ArithmeticError):
    """Raised when escalating precision failed to separate root clusters."""


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _strip(coeffs):
    coeffs = list(coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class QPoly:
    """A polynomial over Q, coefficients constant-first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", _strip(Fraction(c) for c in coeffs))

    def __setattr__(self, *_):
        raise AttributeError("QPoly is immutable")

    @classmethod
    def zero(cls):
        return cls([0])

    @classmethod
    def one(cls):
        return cls([1])

    @classmethod
    def x_monomial(cls, coeff, power):
        return cls([0] * power + [coeff])

    def is_zero(self) -> bool:
        return self.coeffs == (Fraction(0),)

    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def lc(self) -> Fraction:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.lc() == 1 and not self.is_zero()

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    def __neg__(self):
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return QPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for j, d in enumerate(other.coeffs):
                out[i + j] += c * d
        return QPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = self.degree() - other.degree()
        if dq < 0:
            return QPoly.zero(), self
        quo = [Fraction(0)] * (dq + 1)
        d = other.coeffs
        for k in range(dq, -1, -1):
            c = rem[other.degree() + k] / d[-1]
            quo[k] = c
            if c:
                for j, dc in enumerate(d):
                    rem[j + k] -= c * dc
        return QPoly(quo), QPoly(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def divides(self, other: "QPoly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "QPoly":
        if self.is_zero():
            raise ValueError("zero polynomial has no monic form")
        return QPoly([c / self.lc() for c in self.coeffs])

    def derivative(self) -> "QPoly":
        if self.degree() <= 0:
            return QPoly.zero()
        return QPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x):
        """Horner evaluation; works for Fraction, KElem, intervals, mpmath."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def content_primitive(self):
        """Positive content and primitive integer part (lc sign preserved)."""
        if self.is_zero():
            return Fraction(0), ZPoly([0])
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        return Fraction(g, den), ZPoly([c // g for c in ints])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_text(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"

    def __repr__(self):
        return f"QPoly({list(self.coeffs)!r})"


class ZPoly:
    """A polynomial over Z, coefficients constant-first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        if any(not isinstance(c, int) for c in coeffs):
            raise TypeError("ZPoly needs integer coefficients")
        object.__setattr__(self, "coeffs", _strip(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("ZPoly is immutable")

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.coeffs) - 1

    def lc(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.lc() == 1

    def __eq__(self, other):
        return isinstance(other, ZPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __lt__(self, other):
        return (self.degree(), self.coeffs) < (other.degree(), other.coeffs)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return ZPoly([0])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for j, d in enumerate(other.coeffs):
                out[i + j] += c * d
        return ZPoly(out)

    def compose_neg(self) -> "ZPoly":
        return ZPoly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def shift_out_zero_roots(self):
        """Drop x^v factors; returns (v, reduced poly)."""
        v = 0
        coeffs = list(self.coeffs)
        while len(coeffs) > 1 and coeffs[0] == 0:
            coeffs.pop(0)
            v += 1
        return v, ZPoly(coeffs)

    def evaluate(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def to_qpoly(self) -> QPoly:
        return QPoly(self.coeffs)

    def to_text(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"

    def __repr__(self):
        return f"ZPoly({list(self.coeffs)!r})"


def parse_poly(text: str):
    """Parse '[a0, a1, ...]'; ZPoly when all entries are integers, else QPoly."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"expected '[a0, a1, ...]', got {text!r}")
    toks = [t.strip() for t in s[1:-1].split(",") if t.strip()]
    if not toks:
        raise ValueError("empty coefficient list")
    vals = [Fraction(t) for t in toks]
    if all(v.denominator == 1 for v in vals):
        return ZPoly([int(v) for v in vals])
    return QPoly(vals)


# ---------------------------------------------------------------------------
# resultants (subresultant pseudo-remainder sequence)
# ---------------------------------------------------------------------------

def _pseudo_rem(A, B):
    """prem(A, B) over Z: remainder of lc(B)^(dA-dB+1) * A by B."""
    dA, dB = len(A) - 1, len(B) - 1
    lb = B[-1]
    R = list(A)
    for k in range(dA - dB, -1, -1):
        c = R[dB + k]
        R = [v * lb for v in R]
        for j in range(dB + 1):
            R[j + k] -= c * B[j]
        del R[dB + k]        # leading term eliminated exactly
    while len(R) > 1 and R[-1] == 0:
        R.pop()
    return R


def _resultant_int(P, Q):
    """Resultant of primitive integer polynomials by the subresultant PRS."""
    A, B = list(P), list(Q)
    s = 1
    if len(A) < len(B):
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
        A, B = B, A
    if len(B) == 1:
        return s * B[0] ** (len(A) - 1)
    g = h = 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            s = -s
        R = _pseudo_rem(A, B)
        if R == [0]:
            return 0
        A = B
        denom = g * h ** delta
        B = [c // denom for c in R]
        g = A[-1]
        if delta > 0:
            h = (g ** delta) // (h ** (delta - 1))
        if len(B) - 1 == 0:
            dA = len(A) - 1
            return s * (B[0] ** dA) // (h ** (dA - 1)) if dA >= 1 else s


def resultant(p: QPoly, q: QPoly) -> Fraction:
    """res(p, q) over Q via the subresultant PRS on primitive parts."""
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    if p.degree() == 0:
        return p.coeffs[0] ** q.degree()
    if q.degree() == 0:
        return q.coeffs[0] ** p.degree()
    cp, P = p.content_primitive()
    cq, Q = q.content_primitive()
    r = _resultant_int(list(P.coeffs), list(Q.coeffs))
    return cp ** q.degree() * cq ** p.degree() * r


# ---------------------------------------------------------------------------
# quadratic algebraic numbers over k
# ---------------------------------------------------------------------------

class QuadAlgNum:
    """A chosen real root of x^2 - trace*x + norm with trace, norm in k.

    ``branch`` +1 selects (trace + sqrt(disc))/2, -1 the other root; the
    discriminant must be nonnegative under the distinguished embedding.
    """

    __slots__ = ("trace", "norm", "branch")

    def __init__(self, trace, norm, branch=1):
        trace = KElem._lift(trace)
        norm = KElem._lift(norm)
        if branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")
        if (trace * trace - 4 * norm).sign() < 0:
            raise ValueError("negative discriminant: no real root on this branch")
        object.__setattr__(self, "trace", trace)
        object.__setattr__(self, "norm", norm)
        object.__setattr__(self, "branch", branch)

    def __setattr__(self, *_):
        raise AttributeError("QuadAlgNum is immutable")

    @classmethod
    def from_kelem(cls, r) -> "QuadAlgNum":
        r = KElem._lift(r)
        return cls(2 * r, r * r, 1)

    def disc(self) -> KElem:
        return self.trace * self.trace - 4 * self.norm

    def numeric(self, precision: int = 64) -> RealInterval:
        root = self.disc().embed(precision).sqrt()
        t = self.trace.embed(precision)
        return (t + root if self.branch > 0 else t - root) / 2

    def __float__(self):
        return float(self.numeric(64))

    def affine(self, a, b) -> "QuadAlgNum":
        """a*self + b for a, b in k."""
        a = KElem._lift(a)
        b = KElem._lift(b)
        if not a:
            return QuadAlgNum.from_kelem(b)
        t, n = self.trace, self.norm
        return QuadAlgNum(a * t + 2 * b, a * a * n + a * b * t + b * b,
                          self.branch * a.sign())

    def reciprocal(self) -> "QuadAlgNum":
        n = self.norm
        if not n:
            raise ZeroDivisionError("reciprocal of a root of x^2 - t x")
        return QuadAlgNum(self.trace / n, 1 / n, -self.branch * n.sign())

    def __repr__(self):
        return (f"QuadAlgNum(trace={self.trace}, norm={self.norm}, "
                f"branch={'+' if self.branch > 0 else '-'})")


def _vanishes_at(lam: QuadAlgNum, m: QPoly) -> bool:
    """Exact test m(lam) == 0 by reduction mod the defining quadratic over k."""
    t, n = lam.trace, lam.norm
    p, q = KElem(0), KElem(0)           # remainder p + q*x
    for c in reversed(m.coeffs):
        p, q = -q * n + KElem(c), p + q * t
    if not q:
        return not p
    rho = -p / q
    if rho * rho - t * rho + n:
        return False
    d = lam.disc()
    if not d:
        return True
    return (2 * rho - t).sign() == lam.branch


def _cluster_roots(zcoeffs, precision):
    """Roots of an integer polynomial (highest-first input to mpmath), or
    None when the iteration failed to converge at this precision."""
    with mpmath.workprec(precision):
        try:
            roots, err = mpmath.polyroots(
                [mpmath.mpf(c) for c in reversed(zcoeffs)],
                maxsteps=200, extraprec=precision, error=True)
        except mpmath.libmp.NoConvergence:
            return None, None
        return [mpmath.mpc(r) for r in roots], float(err)


def _squarefree_part(p: QPoly) -> QPoly:
    d = p.derivative()
    if d.is_zero():
        return p.monic()
    g = _poly_gcd(p, d)
    return (p // g).monic()


def _poly_gcd(p: QPoly, q: QPoly) -> QPoly:
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def _minimal_factor(eliminant: QPoly, refine, exact_check=None,
                    start_prec: int = 96, max_rounds: int = 5) -> QPoly:
    """Smallest-degree monic rational factor of ``eliminant`` vanishing at the
    number enclosed by ``refine(prec)``.

    Candidates come from subset products of clustered roots (conjugate pairs
    kept together); every candidate is verified by exact division, and by
    ``exact_check`` when the caller can decide vanishing exactly.
    """
    sf = _squarefree_part(eliminant)
    _, P = sf.content_primitive()
    prec = start_prec
    for _ in range(max_rounds):
        roots, err = _cluster_roots(P.coeffs, prec)
        if roots is None:
            prec *= 2
            continue
        pad = 4 * err + 2.0 ** (-prec // 2)
        target = refine(prec)
        t_lo, t_hi = float(target.lo) - pad, float(target.hi) + pad
        hits = [i for i, r in enumerate(roots)
                if t_lo <= float(r.real) <= t_hi and abs(float(r.imag)) <= pad]
        if len(hits) == 1:
            cand = _reconstruct(P, roots, hits[0], pad, prec, exact_check)
            if cand is not None:
                return cand
        prec *= 2
    raise PrecisionError("could not isolate a unique minimal factor")


def _reconstruct(P: ZPoly, roots, hit, pad, prec, exact_check):
    # group complex-conjugate pairs so candidate products have real coefficients
    used = [False] * len(roots)
    groups = []
    for i, r in enumerate(roots):
        if used[i]:
            continue
        if abs(float(r.imag)) <= pad:
            groups.append((i,))
            used[i] = True
        else:
            best, bd = None, None
            for j in range(i + 1, len(roots)):
                if used[j]:
                    continue
                d = abs(roots[j] - mpmath.conj(r))
                if bd is None or d < bd:
                    best, bd = j, d
            if best is None:
                return None
            groups.append((i, best))
            used[i] = used[best] = True
    target_group = next(g for g in groups if hit in g)
    others = [g for g in groups if g is not target_group]
    combos = []
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            idx = list(target_group) + [i for g in combo for i in g]
            combos.append(sorted(idx))
    combos.sort(key=lambda idx: (len(idx), idx))
    lc = abs(P.lc())
    tol = Fraction(max(pad, 2.0 ** (-prec // 2)))
    for idx in combos:
        if len(idx) == P.degree():
            cand = P.to_qpoly().monic()
            if exact_check is None or exact_check(cand):
                return cand
            continue
        # monic rational factors have denominators dividing lc(P); recover
        # each coefficient by continued-fraction reconstruction and let the
        # exact division check reject impostors
        recovered = []
        ok = True
        with mpmath.workprec(prec):
            prod = [mpmath.mpc(1)]
            for i in idx:
                prod = _mul_linear(prod, roots[i])
            scale = 1 + max(float(abs(c)) for c in prod)
            for c in prod[:-1]:
                if abs(float(c.imag)) > tol * scale:
                    ok = False
                    break
                num, den = mpmath.libmp.to_rational(mpmath.mpf(c.real)._mpf_)
                exact_real = Fraction(int(num), int(den))
                rec = exact_real.limit_denominator(lc)
                if abs(rec - exact_real) > tol * scale:
                    ok = False
                    break
                recovered.append(rec)
        if not ok:
            continue
        cand = QPoly(recovered + [Fraction(1)])
        if not cand.divides(P.to_qpoly()):
            continue
        if exact_check is None or exact_check(cand):
            return cand
    return None


def _mul_linear(coeffs, root):
    """Multiply a complex coefficient list (constant-first) by (x - root)."""
    out = [mpmath.mpc(0)] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] -= c * root
        out[i + 1] += c
    return out


def minpoly_over_Q(lam: QuadAlgNum) -> QPoly:
    """Monic minimal polynomial of lam over Q.

    sqrt(2) is eliminated through res_y(x^2 - t(y) x + n(y), y^2 - 2),
    which for A + y*B collapses to A^2 - 2 B^2; the minimal factor is then
    selected among subset products and certified by exact reduction mod the
    defining quadratic.
    """
    t, n = lam.trace, lam.norm
    A = QPoly([n.a, -t.a, 1])
    B = QPoly([n.b, -t.b])
    eliminant = A * A - 2 * (B * B)
    return _minimal_factor(eliminant, lam.numeric,
                           exact_check=lambda m: _vanishes_at(lam, m))


def _det_poly_matrix(M):
    """Fraction-free Bareiss determinant of a matrix of QPoly entries."""
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev = QPoly.one()
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return QPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                quo, rem = divmod(num, prev)
                if not rem.is_zero():
                    raise ArithmeticError("Bareiss exact division failed")
                M[i][j] = quo
            M[i][k] = QPoly.zero()
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def _sylvester_det(A, B):
    """Resultant in z of sum A[j] z^j and sum B[j] z^j with QPoly coefficients."""
    m = len(A) - 1
    n = len(B) - 1
    size = m + n
    rows = []
    arow = list(reversed(A))
    brow = list(reversed(B))
    for i in range(n):
        rows.append([QPoly.zero()] * i + arow + [QPoly.zero()] * (n - 1 - i))
    for j in range(m):
        rows.append([QPoly.zero()] * j + brow + [QPoly.zero()] * (m - 1 - j))
    assert all(len(r) == size for r in rows)
    return _det_poly_matrix(rows)


def product(lam: QuadAlgNum, mu: QuadAlgNum, precision: int = 64):
    """A monic rational polynomial vanishing at lam*mu (the minimal one),
    together with an isolating interval for the product."""
    p = minpoly_over_Q(lam)
    q = minpoly_over_Q(mu)
    if p == QPoly([0, 1]) or q == QPoly([0, 1]):
        return QPoly([0, 1]), RealInterval.exact(0, precision)
    dp = p.degree()
    # z^dp * p(x/z) as a polynomial in z: coefficient of z^j is p[dp-j] x^(dp-j)
    A = [QPoly.x_monomial(p.coeffs[dp - j], dp - j) for j in range(dp + 1)]
    B = [QPoly([c]) for c in q.coeffs]
    eliminant = _sylvester_det(A, B)

    def refine(prec):
        return lam.numeric(prec) * mu.numeric(prec)

    try:
        factor = _minimal_factor(eliminant, refine)
    except PrecisionError:
        raise
    return factor, refine(precision)


def is_algebraic_integer(obj) -> bool:
    """True iff the monic minimal polynomial has integer coefficients."""
    if isinstance(obj, QuadAlgNum):
        return minpoly_over_Q(obj).is_integral()
    if isinstance(obj, QPoly):
        if not obj.is_monic():
            raise ValueError("expected a monic minimal polynomial")
        return obj.is_integral()
    raise TypeError(f"cannot test {type(obj).__name__} for integrality")


# ---------------------------------------------------------------------------
# Mahler measure
# ---------------------------------------------------------------------------

def is_measure_one(p: ZPoly) -> bool:
    """Exact Kronecker test: a monic integer polynomial has Mahler measure 1
    iff its Graeffe iterates stay within the binomial coefficient bounds and
    eventually repeat (all roots then being zero or roots of unity)."""
    if not p.is_monic():
        raise ValueError("measure-one test expects a monic polynomial")
    _, q = p.shift_out_zero_roots()
    d = q.degree()
    if d == 0:
        return True
    bounds = [math.comb(d, j) for j in range(d + 1)]
    seen = set()
    while True:
        if any(abs(c) > b for c, b in zip(q.coeffs, bounds)):
            return False
        if q.coeffs in seen:
            return True
        seen.add(q.coeffs)
        s = q * q.compose_neg()
        sign = -1 if d % 2 else 1
        q = ZPoly([sign * s.coeffs[2 * jj] for jj in range(d + 1)])


def _measure_double(coeffs) -> float:
    arr = np.array(coeffs[::-1], dtype=float)
    nz = np.nonzero(arr)[0]
    arr = arr[nz[0]:]                      # strip zero roots
    if len(arr) <= 1:
        return abs(float(arr[0])) if len(arr) else 0.0
    m = abs(float(arr[0]))
    for r in np.roots(arr):
        a = abs(r)
        if a > 1.0:
            m *= float(a)
    return m


def _monic_measure_certified(f: QPoly, rel_tol: float):
    """(lo, hi) enclosure of prod max(1, |root|) for monic f, by exact
    squarefree splitting followed by escalating-precision root finding."""
    if f.degree() <= 0:
        return 1.0, 1.0
    d = f.derivative()
    g = _poly_gcd(f, d)
    if g.degree() > 0:
        h = (f // g).monic()
        lo1, hi1 = _monic_measure_certified(h, rel_tol / 2)
        lo2, hi2 = _monic_measure_certified(g.monic(), rel_tol / 2)
        return lo1 * lo2, hi1 * hi2
    _, P = f.content_primitive()
    deg = P.degree()
    prec = 64
    while prec <= 4096:
        roots, err = _cluster_roots(P.coeffs, prec)
        e = 4 * err + 2.0 ** (1 - prec)
        lo, hi = 1.0, 1.0
        for r in roots:
            a = abs(r)
            lo *= float(max(1.0, a - e))
            hi *= float(max(1.0, a + e))
        if hi - lo <= rel_tol * lo:
            return lo, hi
        prec *= 2
    raise PrecisionError("Mahler measure did not converge")


def mahler_measure(p: ZPoly, tol: float) -> float:
    """|lc| * prod max(1, |root|), certified to absolute error < tol."""
    if p.is_zero():
        raise ValueError("Mahler measure of the zero polynomial")
    if tol <= 0:
        raise ValueError("tol must be positive")
    _, q = p.shift_out_zero_roots()
    scale = abs(q.lc())
    if q.degree() == 0:
        return float(abs(q.coeffs[0]))
    monic = q.to_qpoly().monic()
    # relative tolerance: measure of the monic part is at least 1
    rel = tol / (2 * scale * max(1.0, _measure_double(list(q.coeffs))))
    lo, hi = _monic_measure_certified(monic, max(rel, 1e-17))
    return scale * (lo + hi) / 2


def _mirror(p: ZPoly) -> ZPoly:
    """The monic polynomial (-1)^d p(-x), which has the same Mahler measure."""
    d = p.degree()
    return ZPoly([c if (d - i) % 2 == 0 else -c for i, c in enumerate(p.coeffs)])


def enumerate_bounded(D: int, mu: float, tol: float = 1e-9):
    """All monic integer polynomials of degree 1..D with Mahler measure
    <= mu, possibly including a guard band of measures in (mu, mu + tol].

    Coefficient boxes come from |a_{d-i}| <= binom(d, i) * mu; a fast
    double-precision measure filters far from the boundary, and boundary or
    near-1 cases are decided by certified (or exact Kronecker) computation.
    Double-precision readings of repeated roots can drift upward by far more
    than the slack once the degree exceeds 4, so high-degree polynomials in
    the inflated band go through the certified path as well.
    """
    if D < 1:
        raise ValueError("D must be at least 1")
    if mu < 1:
        raise ValueError("mu must be at least 1")
    out = set()
    slack = _BOUNDARY * (1 + mu)
    coarse = 0.5 * (1 + mu)
    for d in range(1, D + 1):
        ranges = []
        for j in range(d):
            bound = math.floor(math.comb(d, d - j) * mu + 1e-12)
            ranges.append(range(-bound, bound + 1))
        for tail in itertools.product(*ranges):
            coeffs = list(tail) + [1]
            m = _measure_double(coeffs)
            if m > mu + coarse:
                continue
            if m > mu + slack and d <= 4:
                continue
            if m <= mu - slack:
                out.add(ZPoly(coeffs))
                continue
            poly = ZPoly(coeffs)
            if m < _NEAR_ONE and is_measure_one(poly):
                out.add(poly)
                continue
            mc = mahler_measure(poly, tol / 4)
            if mc <= mu + tol:
                out.add(poly)
    out |= {_mirror(p) for p in out}
    return sorted(out)


def min_mahler_above_one(D: int):
    """Minimum Mahler measure strictly above 1 + GAP_TOL among monic integer
    polynomials of degree <= D, with its witness; ties resolved by smallest
    (degree, coefficient list).  x - 2 guarantees the search is nonempty."""
    if D < 1:
        raise ValueError("D must be at least 1")
    for cap in (1.4, 1.7, 2.0001):
        measured = []
        for poly in enumerate_bounded(D, cap):
            m = _measure_double(list(poly.coeffs))
            if m < _NEAR_ONE and is_measure_one(poly):
                continue
            mc = mahler_measure(poly, 1e-10)
            if mc > 1 + GAP_TOL:
                measured.append((mc, poly))
        if not measured:
            continue
        best = min(m for m, _ in measured)
        front = [poly for m, poly in measured if m <= best + 1e-9]
        return best, min(front)
    raise AssertionError("unreachable: x - 2 has measure 2")


def epsilon_gap(D: int) -> float:
    """The systole gap constant log(min Mahler measure above 1) at degree D."""
    value, _ = min_mahler_above_one(D)
    return math.log(value)
