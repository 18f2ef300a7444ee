"""Exact Laurent polynomial arithmetic in q^{1/2} and numeric evaluation at
the 2N-th root of unity.

A Laurent polynomial is stored as a map from doubled exponents to exact
rational coefficients, so q^{3/2} lives at key 3 and q^{-2} at key -4.
Coefficients stay plain ints whenever they are integral and only fall back
to Fraction after divisions or d/dq on odd keys.  All ring operations are
exact; nothing numeric happens until a RootContext evaluates at
xi = exp(pi*i/N).
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

import mpmath as mp


class InexactDivisionError(ArithmeticError):
    """Polynomial division left a remainder where an exact quotient was required."""


class LHopitalError(ArithmeticError):
    """Denominator and all its derivatives vanish at xi up to the allowed order."""


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LaurentPoly:
    """Laurent polynomial in q^{1/2} with exact rational coefficients.

    ``terms`` maps doubled exponents (int) to nonzero int/Fraction
    coefficients; the zero polynomial has an empty map.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[e] = _norm_coeff(c)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(c) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def q_power(num: int, den: int = 1) -> "LaurentPoly":
        """q^(num/den); den must be 1 or 2 (the lattice only holds halves)."""
        if den == 1:
            return LaurentPoly({2 * num: 1})
        if den == 2:
            return LaurentPoly({num: 1})
        raise ValueError("exponent must be an integer or half-integer")

    # -- ring structure -----------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        r = dict(self.terms)
        for e, c in other.terms.items():
            s = r.get(e, 0) + c
            if s:
                r[e] = _norm_coeff(s)
            else:
                r.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = r
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly()
            out = LaurentPoly.__new__(LaurentPoly)
            out.terms = {e: _norm_coeff(c * other) for e, c in self.terms.items()}
            return out
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        if len(a) * len(b) > 3000:
            packed = _try_kronecker_mul(a, b)
            if packed is not None:
                out = LaurentPoly.__new__(LaurentPoly)
                out.terms = packed
                return out
        r = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = r.get(e, 0) + c1 * c2
                if s:
                    r[e] = s
                else:
                    del r[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {e: _norm_coeff(c) for e, c in r.items()}
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: Fraction(c) / other for e, c in self.terms.items()})
        q, r = self.divmod(other)
        if r:
            raise InexactDivisionError(f"division of {self} by {other} leaves remainder {r}")
        return q

    def divmod(self, other: "LaurentPoly"):
        """Long division in the Laurent ring: self = q*other + r."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return LaurentPoly(), LaurentPoly()
        amin, amax = min(self.terms), max(self.terms)
        bmin, bmax = min(other.terms), max(other.terms)
        num = [self.terms.get(e, 0) for e in range(amin, amax + 1)]
        den = [other.terms.get(e, 0) for e in range(bmin, bmax + 1)]
        lead = den[-1]
        qlen = len(num) - len(den) + 1
        if qlen <= 0:
            return LaurentPoly(), self
        quot = [0] * qlen
        # monic (up to sign) integer divisors keep everything in int arithmetic
        int_path = lead in (1, -1) and all(type(c) is int for c in num) and all(type(c) is int for c in den)
        for i in range(qlen - 1, -1, -1):
            top = num[i + len(den) - 1]
            if not top:
                continue
            c = top * lead if int_path else Fraction(top) / lead
            quot[i] = c
            for j, d in enumerate(den):
                if d:
                    num[i + j] -= c * d
        q = LaurentPoly({i + amin - bmin: c for i, c in enumerate(quot)})
        r = LaurentPoly({i + amin: c for i, c in enumerate(num[: len(den) - 1])})
        return q, r

    # -- structure ----------------------------------------------------

    def degree2(self):
        """Top doubled exponent, or None for the zero polynomial."""
        return max(self.terms) if self.terms else None

    def valuation2(self):
        return min(self.terms) if self.terms else None

    def shift(self, half_steps: int) -> "LaurentPoly":
        """Multiply by q^(half_steps/2)."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {e + half_steps: c for e, c in self.terms.items()}
        return out

    def mirror(self) -> "LaurentPoly":
        """Substitute q -> q^{-1}."""
        out = LaurentPoly.__new__(LaurentPoly)
        out.terms = {-e: c for e, c in self.terms.items()}
        return out

    def is_palindromic(self) -> bool:
        return self.terms == {-e: c for e, c in self.terms.items()}

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                body = f"{mag}"
            else:
                ex = str(e // 2) if e % 2 == 0 else f"{e}/2"
                body = f"q^{ex}" if mag == 1 else f"{mag}*q^{ex}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _try_kronecker_mul(a, b):
    """Dense product of two int-coefficient term maps via packed big-int
    multiplication (Kronecker substitution); None when not applicable.

    Digits are W bits with |convolution coefficient| < 2^{W-1}, so the
    signed digits of the integer product are exactly the product
    coefficients.
    """
    amin, amax = min(a), max(a)
    bmin, bmax = min(b), max(b)
    la = amax - amin + 1
    lb = bmax - bmin + 1
    if la > 70 * len(a) or lb > 70 * len(b):
        return None  # too sparse for dense packing to pay off
    maxa = maxb = 0
    for c in a.values():
        if type(c) is not int:
            return None
        if c < 0:
            c = -c
        if c > maxa:
            maxa = c
    for c in b.values():
        if type(c) is not int:
            return None
        if c < 0:
            c = -c
        if c > maxb:
            maxb = c
    bound = maxa * maxb * min(len(a), len(b))
    w_bits = (max(bound.bit_length() + 2, 16) + 7) & ~7
    wb = w_bits // 8
    prod = _pack_terms(a, amin, la, wb) * _pack_terms(b, bmin, lb, wb)
    lout = la + lb - 1
    return _unpack_terms(prod, amin + bmin, lout, w_bits, wb)


def _pack_terms(t, emin, length, wb):
    pos = bytearray(length * wb)
    neg = bytearray(length * wb)
    for e, c in t.items():
        off = (e - emin) * wb
        if c > 0:
            pos[off:off + (c.bit_length() + 7) // 8] = c.to_bytes((c.bit_length() + 7) // 8, "little")
        else:
            c = -c
            neg[off:off + (c.bit_length() + 7) // 8] = c.to_bytes((c.bit_length() + 7) // 8, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack_terms(prod, emin, lout, w_bits, wb):
    if prod < 0:
        prod += 1 << (w_bits * (lout + 1))
    raw = prod.to_bytes(wb * (lout + 2), "little")
    half = 1 << (w_bits - 1)
    full = 1 << w_bits
    out = {}
    carry = 0
    for i in range(lout):
        d = int.from_bytes(raw[i * wb:(i + 1) * wb], "little") + carry
        if d >= half:
            d -= full
            carry = 1
        else:
            carry = 0
        if d:
            out[emin + i] = d
    return out


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


# -- the q-symbol zoo --------------------------------------------------


def brace(n: int) -> LaurentPoly:
    """{n}_q = q^n - q^{-n}."""
    if n == 0:
        return LaurentPoly()
    return LaurentPoly({2 * n: 1, -2 * n: -1})


def brace_falling(n: int, k: int) -> LaurentPoly:
    """{n, k}_q = prod_{j=0}^{k-1} {n-j}_q; the empty product is 1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    out = LaurentPoly.const(1)
    for j in range(k):
        out = out * brace(n - j)
    return out


def brace_fact(n: int) -> LaurentPoly:
    """{n}_q! = {n, n}_q."""
    return brace_falling(n, n)


def qint(n: int) -> LaurentPoly:
    """[n]_q = {n}_q/{1}_q = q^{n-1} + q^{n-3} + ... + q^{1-n}."""
    if n == 0:
        return LaurentPoly()
    if n < 0:
        return -qint(-n)
    return LaurentPoly({2 * e: 1 for e in range(-(n - 1), n, 2)})


def qfact(n: int) -> LaurentPoly:
    """[n]_q! = prod_{k=1}^{n} [k]_q."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = LaurentPoly.const(1)
    for k in range(1, n + 1):
        out = out * qint(k)
    return out


def qbinom(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial [n over k]_q by exact polynomial division."""
    if k < 0 or n < 0:
        raise ValueError("n, k must be >= 0")
    if k > n:
        return LaurentPoly()
    out = LaurentPoly.const(1)
    for j in range(k):
        out = (out * qint(n - j)) / qint(j + 1)
    return out


def ddq(p: LaurentPoly) -> LaurentPoly:
    """Formal d/dq; a term q^{e/2} maps to (e/2) q^{e/2 - 1}."""
    r = {}
    for e, c in p.terms.items():
        if e == 0:
            continue
        r[e - 2] = c * (e // 2) if e % 2 == 0 else c * Fraction(e, 2)
    return LaurentPoly(r)


# -- evaluation at roots of unity --------------------------------------


@dataclasses.dataclass(frozen=True)
class RootContext:
    """Holds N, the 2N-th root of unity xi = exp(pi*i/N), and the working
    precision in decimal digits.

    Evaluation routines run with a few guard digits on top of
    ``precision_digits``; comparisons should use ``tol`` which leaves half
    the configured digits as guard.
    """

    N: int
    precision_digits: int = 60

    _GUARD = 10

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be >= 2")
        if self.precision_digits < 30:
            raise ValueError("precision_digits must be >= 30")

    @property
    def dps(self) -> int:
        return self.precision_digits + self._GUARD

    def workprec(self):
        return mp.workdps(self.dps)

    @property
    def tol(self):
        return mp.mpf(10) ** (-self.precision_digits // 2)

    @property
    def xi(self):
        with self.workprec():
            return mp.expjpi(mp.mpf(1) / self.N)

    @property
    def xi_half(self):
        """xi^{1/2} = exp(pi*i/2N), the point where q^{1/2} is evaluated."""
        with self.workprec():
            return mp.expjpi(mp.mpf(1) / (2 * self.N))

    def xi_pow(self, num: int, den: int = 1):
        """xi^(num/den) for den in {1, 2}."""
        if den not in (1, 2):
            raise ValueError("den must be 1 or 2")
        with self.workprec():
            return mp.expjpi(mp.mpf(num) / (den * self.N))

    def eval(self, p: LaurentPoly):
        """Horner evaluation of p at q = xi."""
        return self.eval_at(p, None)

    def eval_at(self, p: LaurentPoly, q_half):
        """Evaluate p at an arbitrary point given by q^{1/2} = q_half.

        q_half=None means the context's own root xi^{1/2}.
        """
        with self.workprec():
            if not p.terms:
                return mp.mpc(0)
            x = self.xi_half if q_half is None else mp.mpc(q_half)
            exps = sorted(p.terms, reverse=True)
            acc = mp.mpc(int_or_frac_to_mp(p.terms[exps[0]]))
            for prev, e in zip(exps, exps[1:]):
                acc = acc * x ** (prev - e) + int_or_frac_to_mp(p.terms[e])
            return acc * x ** exps[-1]

    def brace_plus(self, n: int):
        """{n}_+ = xi^n + xi^{-n} = 2 cos(n*pi/N)."""
        with self.workprec():
            return 2 * mp.cospi(mp.mpf(n) / self.N)

    def brace_at(self, n: int):
        """{n} at xi, i.e. 2i sin(n*pi/N)."""
        with self.workprec():
            return mp.mpc(0, 2 * mp.sinpi(mp.mpf(n) / self.N))

    def qint_at(self, n: int):
        """[n] at xi = sin(n*pi/N)/sin(pi/N)."""
        with self.workprec():
            return mp.sinpi(mp.mpf(n) / self.N) / mp.sinpi(mp.mpf(1) / self.N)

    def qfact_at(self, n: int):
        with self.workprec():
            out = mp.mpf(1)
            for k in range(1, n + 1):
                out *= self.qint_at(k)
            return out

    def lhopital_ratio(self, num: LaurentPoly, den: LaurentPoly):
        """lim_{q->xi} num/den, differentiating while both sides vanish.

        Raises LHopitalError when den and its first 2N derivatives all
        vanish at xi, and ZeroDivisionError when the limit is a pole.
        """
        if not den:
            raise ZeroDivisionError("denominator is identically zero")
        with self.workprec():
            tol = self.tol
            for _ in range(2 * self.N + 1):
                dv = self.eval(den)
                if abs(dv) > tol:
                    return self.eval(num) / dv
                nv = self.eval(num)
                if abs(nv) > tol:
                    raise ZeroDivisionError("pole: numerator does not vanish with denominator")
                num, den = ddq(num), ddq(den)
                if not den:
                    raise LHopitalError("denominator derivatives vanish identically")
            raise LHopitalError(f"denominator vanishes to order > {2 * self.N} at xi")


def int_or_frac_to_mp(c):
    if isinstance(c, Fraction):
        return mp.mpf(c.numerator) / c.denominator
    return mp.mpf(c)
