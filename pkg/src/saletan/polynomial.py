"""Polynomial model of a non-regular contraction.

The algebra is Q[p] with the product f*g = f' g' and N is multiplication by
a fixed polynomial phi.  Where phi vanishes the Riesz splitting degenerates,
so existence of the contraction becomes a divisibility question: the
correction term phi'^2 f g / phi must stay polynomial for every f, g.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import NotContractible, ParseError


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial with rational coefficients in ascending degree."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = [linalg.to_rational(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, value) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "Poly":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> float:
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __add__(self, other: "Poly") -> "Poly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "Poly":
        return _lift(other) - self

    def __mul__(self, other) -> "Poly":
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(divisor.coeffs) + 1, 0)
        dlen = len(divisor.coeffs)
        for shift in range(len(quot) - 1, -1, -1):
            factor = rem[shift + dlen - 1] / divisor.lead()
            quot[shift] = factor
            if factor:
                for i, d in enumerate(divisor.coeffs):
                    rem[shift + i] -= factor * d
        return Poly(tuple(quot)), Poly(tuple(rem[: dlen - 1]))

    def divides(self, other: "Poly") -> bool:
        """Whether self | other in Q[p] (0 divides only 0)."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    def __call__(self, x):
        result = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("p" if i == 1 else f"p^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            elif mono:
                terms.append(f"{c}*{mono}")
            else:
                terms.append(str(c))
        return " + ".join(reversed(terms)).replace("+ -", "- ")


def _lift(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


P = Poly.monomial(1)

_TERM_RE = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?\*?(p(?:\^(\d+))?)?$")


def parse_poly(text: str) -> Poly:
    """Parse sums of terms like ``3/2*p^2 - p + 1`` in the variable ``p``."""
    cleaned = text.replace(" ", "").replace("**", "^")
    if not cleaned:
        raise ParseError(f"empty polynomial: {text!r}")
    pieces = re.findall(r"[+-]?[^+-]+", cleaned)
    if "".join(pieces) != cleaned:
        raise ParseError(f"cannot parse polynomial {text!r}")
    total = Poly()
    for piece in pieces:
        match = _TERM_RE.match(piece)
        if match is None or (match.group(2) is None and match.group(3) is None):
            raise ParseError(f"bad polynomial term {piece!r} in {text!r}")
        sign, coeff, var, power = match.groups()
        value = linalg.parse_rational(coeff) if coeff else Fraction(1)
        if sign == "-":
            value = -value
        degree = 0 if var is None else (int(power) if power else 1)
        total = total + Poly.monomial(degree, value)
    return total


# -- the algebra ----------------------------------------------------------------


def fa_product(f: Poly, g: Poly) -> Poly:
    """f * g = f' g'."""
    return f.derivative() * g.derivative()


def fa_delta(f: Poly, g: Poly, phi: Poly) -> Poly:
    """Derived product from its definition, N = multiplication by phi."""
    return fa_product(phi * f, g) + fa_product(f, phi * g) - phi * fa_product(f, g)


def fa_delta_closed(f: Poly, g: Poly, phi: Poly) -> Poly:
    """phi f' g' + phi' (f' g + f g')."""
    df, dg = f.derivative(), g.derivative()
    return phi * df * dg + phi.derivative() * (df * g + f * dg)


def fa_torsion(f: Poly, g: Poly, phi: Poly) -> Poly:
    """Torsion from its definition: N f * N g - N(delta(f, g))."""
    return fa_product(phi * f, phi * g) - phi * fa_delta(f, g, phi)


def fa_torsion_closed(f: Poly, g: Poly, phi: Poly) -> Poly:
    dphi = phi.derivative()
    return dphi * dphi * f * g


def contractible(phi: Poly) -> bool:
    """phi divides phi'^2, so the correction term stays polynomial."""
    dphi = phi.derivative()
    return dphi.is_zero() or phi.divides(dphi * dphi)


def correction_factor(phi: Poly) -> Poly:
    """phi'^2 / phi, the polynomial r with tau(f, g) = r f g."""
    dphi = phi.derivative()
    if dphi.is_zero():
        return Poly()
    if not phi.divides(dphi * dphi):
        raise NotContractible(f"{phi} does not divide {dphi * dphi}")
    return (dphi * dphi).divmod(phi)[0]


def fa_contract(f: Poly, g: Poly, phi: Poly) -> Poly:
    """delta(f, g) + (phi'^2 / phi) f g; raises NotContractible if phi does not divide phi'^2."""
    return fa_delta(f, g, phi) + correction_factor(phi) * f * g
