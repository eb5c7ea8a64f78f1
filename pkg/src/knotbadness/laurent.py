"""Exact Laurent polynomials with integer coefficients."""

from __future__ import annotations

from fractions import Fraction


class LaurentPoly:
    """Sparse ``{exponent: coefficient}`` polynomial in one variable.

    Exponents are plain integers.  Callers working with half-integer
    exponents (the Kauffman state sum) use the variable ``s = t**(1/2)``
    and say so.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: int(terms)}
        self.terms = {int(e): int(c) for e, c in terms.items() if c}

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls({exponent: coefficient})

    @classmethod
    def from_coefficients(cls, coeffs, low=0):
        """Coefficients listed from exponent ``low`` upward."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_unit():
                raise ValueError("only units can be inverted")
            (e, c), = self.terms.items()
            return LaurentPoly({e * k: c ** -k})
        out = LaurentPoly(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection -------------------------------------------------------

    def is_unit(self):
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    @property
    def min_degree(self):
        return min(self.terms) if self.terms else 0

    @property
    def max_degree(self):
        return max(self.terms) if self.terms else 0

    @property
    def span(self):
        return self.max_degree - self.min_degree

    def __call__(self, x):
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * x ** e
        return total.numerator if total.denominator == 1 else total

    def shift(self, k):
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def scale_exponents(self, factor):
        """Substitute ``t -> t**factor``."""
        return LaurentPoly({e * factor: c for e, c in self.terms.items()})

    def normalized(self):
        """Representative up to units ``±t^k``: lowest exponent 0, lowest coefficient positive."""
        if not self.terms:
            return self
        out = self.shift(-self.min_degree)
        if out.terms[0] < 0:
            out = -out
        return out

    def symmetrized(self):
        """Shift so exponents are symmetric about 0 (needs an even span) and fix the sign so p(1) > 0."""
        if not self.terms:
            return self
        if (self.min_degree + self.max_degree) % 2:
            raise ValueError("span is odd; cannot centre at t^0")
        out = self.shift(-(self.min_degree + self.max_degree) // 2)
        if out(1) < 0:
            out = -out
        return out

    def equal_up_to_unit(self, other):
        return self.normalized() == _coerce(other).normalized()

    def is_symmetric(self):
        return all(self.terms.get(-e) == c for e, c in self.terms.items())

    def to_json(self):
        return {str(e): c for e, c in sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data):
        return cls({int(e): c for e, c in data.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            coef = str(c) if (mono == "" or abs(c) != 1) else ("-" if c < 0 else "")
            if mono and coef not in ("", "-"):
                coef += "*"
            parts.append(coef + mono)
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(x):
    return x if isinstance(x, LaurentPoly) else LaurentPoly(x)


def interpolate(points, values) -> LaurentPoly:
    """Exact polynomial through ``(points[i], values[i])`` (Newton divided differences).

    Raises ``ValueError`` if the interpolant has non-integer coefficients.
    """
    xs = [Fraction(x) for x in points]
    coef = [Fraction(v) for v in values]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form into monomial coefficients
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [Fraction(0)] * n
        for k in range(n - 1):
            new[k + 1] += poly[k]
            new[k] -= poly[k] * xs[i]
        new[0] += coef[i]
        poly = new
    if any(c.denominator != 1 for c in poly):
        raise ValueError("interpolant is not an integer polynomial")
    return LaurentPoly({k: int(c) for k, c in enumerate(poly)})
