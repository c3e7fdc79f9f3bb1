"""Exact polynomials over the rationals.

``UniPoly`` is dense in one variable, ``BiPoly`` is a sparse map from
``(deg_x, deg_y)`` to coefficients.  Coefficients are ``Fraction`` values;
evaluation is generic, so the same polynomial can be evaluated at a
``Fraction``, a float, a complex number or another polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def as_rational(x):
    """Parse ``"p/q"``, an int or a Fraction into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _coef(c):
    return c if isinstance(c, Fraction) else Fraction(c)


def _term(c, mono, first):
    # one signed term of a rendered polynomial
    neg = c < 0
    a = -c if neg else c
    if mono and a == 1:
        body = mono
    elif mono:
        body = f"{format_rational(a)}*{mono}" if a.denominator != 1 else f"{a.numerator}{mono}"
    else:
        body = format_rational(a)
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def _power(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="n"):
        c = [_coef(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)
        self.var = var

    @classmethod
    def constant(cls, c, var="n"):
        return cls([c], var)

    @classmethod
    def x(cls, var="n"):
        return cls([0, 1], var)

    @classmethod
    def monomial(cls, k, c=1, var="n"):
        return cls([0] * k + [c], var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        if isinstance(other, BiPoly):
            return NotImplemented
        o = self._lift(other)
        m = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (Fraction(0),) * (m - len(self.coeffs))
        b = o.coeffs + (Fraction(0),) * (m - len(o.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-x for x in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            return NotImplemented
        o = self._lift(other)
        if not self.coeffs or not o.coeffs:
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, value):
        return self.evaluate(value)

    def evaluate(self, value):
        """Horner evaluation; exact when ``value`` is rational."""
        if isinstance(value, int):
            value = Fraction(value)
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc if self.coeffs else Fraction(0)

    def substitute(self, value):
        """Composition ``p(value)`` where ``value`` may be a polynomial."""
        return self.evaluate(value)

    def to_list(self):
        return [format_rational(c) for c in self.coeffs]

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                out.append(_term(c, _power(self.var, k), not out))
        return "".join(out)

    def __repr__(self):
        return f"UniPoly({str(self)!r})"


class BiPoly:
    __slots__ = ("terms", "vars")

    def __init__(self, terms=None, vars=("x", "y")):
        t = {}
        for k, c in (terms or {}).items():
            c = _coef(c)
            if c:
                t[(int(k[0]), int(k[1]))] = c
        self.terms = t
        self.vars = tuple(vars)

    @classmethod
    def constant(cls, c, vars=("x", "y")):
        return cls({(0, 0): c}, vars)

    @classmethod
    def gens(cls, vars=("x", "y")):
        return cls({(1, 0): 1}, vars), cls({(0, 1): 1}, vars)

    def is_zero(self):
        return not self.terms

    def _lift(self, other):
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, UniPoly):
            raise TypeError("mixing UniPoly and BiPoly needs an explicit embedding")
        return BiPoly({(0, 0): other}, self.vars)

    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t.get(k, 0) + c
        return BiPoly(t, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        t = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in o.terms.items():
                key = (i + k, j + l)
                t[key] = t.get(key, 0) + a * b
        return BiPoly(t, self.vars)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = BiPoly({(0, 0): 1}, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == BiPoly({(0, 0): other}).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, i, j):
        return self.terms.get((i, j), Fraction(0))

    def evaluate(self, x, y):
        """Value at ``(x, y)``; arguments may be numbers or polynomials."""
        if isinstance(x, int):
            x = Fraction(x)
        if isinstance(y, int):
            y = Fraction(y)
        px, py = {}, {}
        acc = 0
        for (i, j), c in sorted(self.terms.items()):
            if i not in px:
                px[i] = x ** i if i else 1
            if j not in py:
                py[j] = y ** j if j else 1
            acc = acc + c * px[i] * py[j]
        if not self.terms:
            return Fraction(0)
        return acc

    def __call__(self, x, y):
        return self.evaluate(x, y)

    def substitute(self, var, value):
        """Replace one variable by a number or a BiPoly in the same variables."""
        x, y = BiPoly.gens(self.vars)
        if var == self.vars[0]:
            x = value if isinstance(value, BiPoly) else BiPoly.constant(value, self.vars)
        elif var == self.vars[1]:
            y = value if isinstance(value, BiPoly) else BiPoly.constant(value, self.vars)
        else:
            raise KeyError(var)
        out = self.evaluate(x, y)
        return out if isinstance(out, BiPoly) else BiPoly.constant(out, self.vars)

    def to_list(self):
        return [[i, j, format_rational(c)] for (i, j), c in sorted(self.terms.items(), reverse=True)]

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            mono = "*".join(p for p in (_power(self.vars[0], i), _power(self.vars[1], j)) if p)
            out.append(_term(self.terms[(i, j)], mono, not out))
        return "".join(out)

    def __repr__(self):
        return f"BiPoly({str(self)!r})"
