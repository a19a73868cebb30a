"""Sparse multivariate polynomials in the loop parameters d0..d_{m-1}.

Coefficients live in Q(v) (see cyclo). Exponent vectors have length m.
Includes exact division (for fraction-free elimination) and determinants.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import Cyc


class DPoly:
    """Polynomial in d0..d_{m-1} with Cyc coefficients, stored sparsely."""

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms=None):
        self.order = order
        self.terms = {}
        if terms:
            for exp, c in dict(terms).items():
                if len(exp) != order:
                    raise ValueError("exponent vector has wrong length")
                if not c.is_zero():
                    self.terms[tuple(exp)] = c

    @staticmethod
    def zero(m: int) -> "DPoly":
        return DPoly(m)

    @staticmethod
    def one(m: int) -> "DPoly":
        return DPoly.constant(m, Cyc.one(m))

    @staticmethod
    def constant(m: int, c: Cyc) -> "DPoly":
        return DPoly(m, {(0,) * m: c})

    @staticmethod
    def delta(m: int, k: int, power: int = 1) -> "DPoly":
        """The parameter d_k (optionally raised to a power)."""
        exp = [0] * m
        exp[k] = power
        return DPoly(m, {tuple(exp): Cyc.one(m)})

    @staticmethod
    def monomial(m: int, exps, c=None) -> "DPoly":
        c = Cyc.one(m) if c is None else c
        return DPoly(m, {tuple(exps): c})

    def _coerce(self, other):
        if isinstance(other, DPoly):
            if other.order != self.order:
                raise ValueError("polynomial order mismatch")
            return other
        if isinstance(other, Cyc):
            return DPoly.constant(self.order, other)
        if isinstance(other, (int, Fraction)):
            return DPoly.constant(self.order, Cyc.from_rational(self.order, other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for exp, c in o.terms.items():
            s = out.get(exp)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(exp, None)
            else:
                out[exp] = s
        r = DPoly(self.order)
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = DPoly(self.order)
        r.terms = {exp: -c for exp, c in self.terms.items()}
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(exp)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(exp, None)
                else:
                    out[exp] = s
        r = DPoly(self.order)
        r.terms = out
        return r

    __rmul__ = __mul__

    def scale(self, c: Cyc) -> "DPoly":
        if c.is_zero():
            return DPoly.zero(self.order)
        r = DPoly(self.order)
        r.terms = {exp: t * c for exp, t in self.terms.items()}
        return r

    def __pow__(self, k: int):
        out = DPoly.one(self.order)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> Cyc:
        if self.is_zero():
            return Cyc.zero(self.order)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms[(0,) * self.order]

    def evaluate(self, point) -> Cyc:
        """Substitute d_k -> point[k]; point entries are Cyc."""
        if len(point) != self.order:
            raise ValueError("evaluation point has wrong dimension")
        out = Cyc.zero(self.order)
        for exp, c in self.terms.items():
            val = c
            for k, e in enumerate(exp):
                for _ in range(e):
                    val = val * point[k]
            out = out + val
        return out

    def degree_in(self, k: int) -> int:
        """Degree in d_k; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(exp[k] for exp in self.terms)

    def apply_coeff_map(self, f) -> "DPoly":
        """Apply a map Cyc -> Cyc to every coefficient."""
        return DPoly(self.order, {exp: f(c) for exp, c in self.terms.items()})

    def bar(self) -> "DPoly":
        """The involution v -> v^(-1), d_k -> d_{(m-k) mod m}."""
        m = self.order
        out = {}
        for exp, c in self.terms.items():
            newexp = tuple(exp[(m - k) % m] for k in range(m))
            out[newexp] = c.conjugate()
        return DPoly(m, out)

    def _lead(self):
        exp = max(self.terms)
        return exp, self.terms[exp]

    def exact_div(self, other: "DPoly") -> "DPoly":
        """Exact division; raises ValueError if the division is not exact."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = self
        quot = DPoly.zero(self.order)
        dexp, dc = o._lead()
        dcinv = dc.inverse()
        while not rem.is_zero():
            rexp, rc = rem._lead()
            qexp = tuple(a - b for a, b in zip(rexp, dexp))
            if any(e < 0 for e in qexp):
                raise ValueError("inexact polynomial division")
            qterm = DPoly.monomial(self.order, qexp, rc * dcinv)
            quot = quot + qterm
            rem = rem - qterm * o
        return quot

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def __repr__(self):
        return f"DPoly({self.order}, {self.to_text()!r})"

    def to_text(self) -> str:
        """Canonical text form, e.g. "d0^2 - d1^2" or "(1 + 2*v)/3 * d0 d2"."""
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, reverse=True):
            c = self.terms[exp]
            factors = []
            for k, e in enumerate(exp):
                if e == 1:
                    factors.append(f"d{k}")
                elif e > 1:
                    factors.append(f"d{k}^{e}")
            mono = " ".join(factors)
            neg = False
            if c.is_rational():
                q = c.rational_value()
                if q < 0:
                    neg = True
                    q = -q
                if not mono:
                    cs = _frac_text(q)
                elif q == 1:
                    cs = ""
                else:
                    cs = _frac_text(q) + " * "
            else:
                cs = c.to_text() + (" * " if mono else "")
            term = cs + mono if mono else cs
            if not parts:
                parts.append(("- " if neg else "") + term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        return " ".join(parts)


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def poly_from_loop_counts(m: int, counts) -> DPoly:
    """The monomial prod_k d_k^{counts[k]} for a vector of removed-loop counts."""
    return DPoly.monomial(m, tuple(counts))


def det_cofactor(mat):
    """Determinant by cofactor expansion; the cross-check oracle for small sizes."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("matrix is not square")
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return mat[0][0]
    sample = mat[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * det_cofactor(minor) if n > 1 else mat[0][j]
        if j % 2 == 1:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else sample - sample


def det_fraction_free(mat):
    """Exact determinant by single-step Bareiss elimination.

    Works over any integral domain whose elements support +, -, * and either
    exact_div or true division (DPoly and Cyc both qualify).
    """
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("matrix is not square")
    if n == 0:
        raise ValueError("empty matrix")
    a = [list(row) for row in mat]
    sign = 1
    prev = None
    for k in range(n - 1):
        if _entry_is_zero(a[k][k]):
            pivot_row = next((r for r in range(k + 1, n) if not _entry_is_zero(a[r][k])), None)
            if pivot_row is None:
                # the whole pivot column vanishes: singular matrix
                z = mat[0][0]
                return z - z
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else _exact_div(num, prev)
            a[i][k] = a[i][k] - a[i][k]  # zero of the domain
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def _entry_is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def _exact_div(a, b):
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    return a / b
