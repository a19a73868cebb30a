"""Exact arithmetic in the cyclotomic field Q(v), v a primitive m-th root of unity.

Elements are stored as coefficient vectors of length phi(m) reduced modulo
the m-th cyclotomic polynomial, so every nonzero element is invertible.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _trim(coeffs):
    """Drop trailing zeros of a low-to-high coefficient list."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_divmod_monic(a, b):
    """Divide a by a monic polynomial b; returns (quotient, remainder)."""
    a = list(a)
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("division by zero polynomial")
    q = [0] * max(0, len(a) - db)
    while len(_trim(a)) - 1 >= db:
        a = _trim(a)
        lead = a[-1]
        k = len(a) - 1 - db
        q[k] = lead
        for j, c in enumerate(b):
            a[k + j] -= lead * c
    return _trim(q), _trim(a)


@lru_cache(maxsize=None)
def cyclotomic_modulus(m: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the m-th cyclotomic polynomial.

    Built by dividing x^m - 1 by the product of Phi_e over proper divisors e of m.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    num = [-1] + [0] * (m - 1) + [1]
    for e in range(1, m):
        if m % e == 0:
            q, r = _poly_divmod_monic(num, list(cyclotomic_modulus(e)))
            assert not r, "cyclotomic division must be exact"
            num = q
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def phi_degree(m: int) -> int:
    """Euler phi of m, as the degree of the cyclotomic modulus."""
    return len(cyclotomic_modulus(m)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(m: int):
    """x^k mod Phi_m for k = 0 .. 2*phi(m)-2, as Fraction tuples of length phi(m)."""
    phi = phi_degree(m)
    mod = [Fraction(c) for c in cyclotomic_modulus(m)]
    rows = []
    for k in range(2 * phi - 1):
        _, r = _poly_divmod_monic([Fraction(0)] * k + [Fraction(1)], mod)
        r = r + [Fraction(0)] * (phi - len(r))
        rows.append(tuple(r))
    return tuple(rows)


@lru_cache(maxsize=None)
def _nu_power(m: int, k: int) -> tuple:
    """Coefficient vector of v^k mod Phi_m (k taken mod m)."""
    k %= m
    phi = phi_degree(m)
    mod = [Fraction(c) for c in cyclotomic_modulus(m)]
    _, r = _poly_divmod_monic([Fraction(0)] * k + [Fraction(1)], mod)
    r = r + [Fraction(0)] * (phi - len(r))
    return tuple(r)


class Cyc:
    """An element of Q(v) for a fixed order m, reduced mod Phi_m."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        phi = phi_degree(order)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) != phi:
            raise ValueError(f"need {phi} coefficients for order {order}")
        self.order = order
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(m: int) -> "Cyc":
        return Cyc(m, [0] * phi_degree(m))

    @staticmethod
    def one(m: int) -> "Cyc":
        return Cyc.from_rational(m, 1)

    @staticmethod
    def from_rational(m: int, q) -> "Cyc":
        cs = [Fraction(0)] * phi_degree(m)
        cs[0] = Fraction(q)
        return Cyc(m, cs)

    @staticmethod
    def root(m: int, k: int = 1) -> "Cyc":
        """v^k as a field element."""
        return Cyc(m, _nu_power(m, k))

    def _check(self, other) -> "Cyc":
        if isinstance(other, Cyc):
            if other.order != self.order:
                raise ValueError("cyclotomic order mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.from_rational(self.order, other)
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Cyc(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return Cyc(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        phi = len(self.coeffs)
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(o.coeffs):
                if y != 0:
                    prod[i + j] += x * y
        rows = _reduction_rows(self.order)
        out = [Fraction(0)] * phi
        for k, c in enumerate(prod):
            if c != 0:
                row = rows[k]
                for t in range(phi):
                    out[t] += c * row[t]
        return Cyc(self.order, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        mod = [Fraction(c) for c in cyclotomic_modulus(self.order)]
        # extended gcd of self (as poly) and Phi_m over Q[x]
        r0, r1 = _trim(self.coeffs), mod
        s0, s1 = [Fraction(1)], []
        while r1:
            # make r1 monic for the division helper
            lead = r1[-1]
            r1m = [c / lead for c in r1]
            q, r = _poly_divmod_monic(r0, r1m)
            q = [c / lead for c in q]
            r0, r1 = r1, _trim(r)
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 = gcd (a nonzero constant since Phi_m is irreducible)
        assert len(r0) == 1, "gcd with irreducible modulus must be constant"
        inv = [c / r0[0] for c in s0]
        _, red = _poly_divmod_monic(inv, mod)
        red = red + [Fraction(0)] * (len(self.coeffs) - len(red))
        return Cyc(self.order, red)

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyc.one(self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Cyc":
        """The automorphism v -> v^(-1)."""
        m = self.order
        out = Cyc.zero(m)
        for t, c in enumerate(self.coeffs):
            if c != 0:
                out = out + Cyc.root(m, -t) * c
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyc.from_rational(self.order, other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"Cyc({self.order}, {self.to_text()!r})"

    def to_text(self) -> str:
        """Canonical form "(c0 + c1*v + ...)/den" with integer c_t."""
        dens = [c.denominator for c in self.coeffs]
        den = 1
        for d in dens:
            den = den * d // _gcd(den, d)
        ints = [int(c * den) for c in self.coeffs]
        parts = []
        for t, c in enumerate(ints):
            if t == 0:
                parts.append(str(c))
            elif c != 0:
                mono = "v" if t == 1 else f"v^{t}"
                parts.append(f"{c}*{mono}" if c >= 0 else f"-{-c}*{mono}")
        if len(parts) > 1 or den != 1:
            body = " + ".join(parts).replace("+ -", "- ")
            s = f"({body})"
        else:
            s = parts[0]
        return s if den == 1 else f"{s}/{den}"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def cyc_conjugate(a: Cyc) -> Cyc:
    return a.conjugate()


def cyc_inv(a: Cyc) -> Cyc:
    return a.inverse()
