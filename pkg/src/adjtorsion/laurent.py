"""Complex Laurent polynomials in t and rational functions modulo units +-t^m."""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Any

import numpy as np

EPS_TRIM = 1e-11
EPS_ROOT = 1e-8


class LaurentPoly:
    """Dense Laurent polynomial sum_k coeffs[k] t^(min_degree + k).

    Coefficients are complex doubles.  Leading and trailing coefficients
    smaller than ``EPS_TRIM`` times the largest magnitude are dropped on
    construction; the zero polynomial has no coefficients and min_degree 0.
    """

    __slots__ = ("min_degree", "coeffs")

    def __init__(self, coeffs=(), min_degree: int = 0, trim: bool = True, eps: float = EPS_TRIM):
        c = np.array(coeffs, dtype=complex).ravel()
        if not np.all(np.isfinite(c)):
            raise ValueError("Laurent coefficients must be finite")
        lo = 0
        hi = len(c)
        if hi:
            scale = np.abs(c).max()
            cut = eps * scale if trim else 0.0
            big = np.nonzero(np.abs(c) > cut)[0] if scale > 0 else np.array([], dtype=int)
            if big.size == 0:
                lo = hi = 0
            else:
                lo, hi = int(big[0]), int(big[-1]) + 1
        c = c[lo:hi].copy()
        c.flags.writeable = False
        self.coeffs = c
        self.min_degree = int(min_degree) + lo if c.size else 0

    @classmethod
    def monomial(cls, power: int, coeff: complex = 1.0) -> "LaurentPoly":
        return cls([coeff], power)

    @classmethod
    def constant(cls, c: complex) -> "LaurentPoly":
        return cls([c], 0)

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls([1.0], 1)

    @classmethod
    def from_dict(cls, terms: dict[int, complex]) -> "LaurentPoly":
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in terms.items():
            c[k - lo] += v
        return cls(c, lo)

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def norm(self) -> float:
        return float(np.abs(self.coeffs).max()) if self.coeffs.size else 0.0

    def coefficient(self, k: int) -> complex:
        i = k - self.min_degree
        return complex(self.coeffs[i]) if 0 <= i < len(self.coeffs) else 0j

    def leading(self) -> complex:
        return complex(self.coeffs[-1]) if self.coeffs.size else 0j

    def to_dict(self) -> dict[int, complex]:
        return {self.min_degree + i: complex(c) for i, c in enumerate(self.coeffs) if c != 0}

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, Number):
            return LaurentPoly.constant(complex(x))
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo = min(self.min_degree, other.min_degree)
        hi = max(self.max_degree, other.max_degree)
        c = np.zeros(hi - lo + 1, dtype=complex)
        c[self.min_degree - lo : self.max_degree - lo + 1] += self.coeffs
        c[other.min_degree - lo : other.max_degree - lo + 1] += other.coeffs
        return LaurentPoly(c, lo)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(-self.coeffs, self.min_degree, trim=False)

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, Number):
            return self.scale(other)
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        return LaurentPoly(np.convolve(self.coeffs, other.coeffs), self.min_degree + other.min_degree)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = LaurentPoly.constant(1.0)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: complex) -> "LaurentPoly":
        return LaurentPoly(self.coeffs * complex(c), self.min_degree)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly(self.coeffs, self.min_degree + k, trim=False)

    def __call__(self, z):
        """Evaluate at a scalar or array of points (Horner on the ordinary part)."""
        z_arr = np.asarray(z, dtype=complex)
        if self.is_zero():
            return np.zeros_like(z_arr) if z_arr.ndim else 0j
        if self.min_degree < 0 and np.any(z_arr == 0):
            raise ZeroDivisionError("cannot evaluate negative powers of t at t = 0")
        acc = np.zeros_like(z_arr)
        for c in self.coeffs[::-1]:
            acc = acc * z_arr + c
        out = acc * z_arr**self.min_degree
        return complex(out) if out.ndim == 0 else out

    def allclose(self, other: "LaurentPoly", tol: float = 1e-12) -> bool:
        diff = (self - other).norm()
        return diff <= tol * max(self.norm(), other.norm(), 1e-300)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.min_degree == other.min_degree and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.min_degree, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        if self.is_zero():
            return "LaurentPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            k = self.min_degree + i
            coef = f"{c.real:.6g}" if abs(c.imag) < 1e-14 else f"({c.real:.6g}{c.imag:+.6g}i)"
            parts.append(coef if k == 0 else f"{coef}*t^{k}")
        return "LaurentPoly(" + " + ".join(parts) + ")"

    def to_json(self) -> dict[str, Any]:
        return {"minDegree": self.min_degree, "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "LaurentPoly":
        coeffs = [complex(re, im) for re, im in data["coeffs"]]
        return cls(coeffs, data["minDegree"], trim=False)


def divide_out_t_minus_1(p: LaurentPoly, eps: float = EPS_ROOT) -> tuple[LaurentPoly, complex]:
    """Synthetic division p = (t - 1) q + r with r = p(1).

    Returns ``(q, r)``.  Raises ``ValueError`` when ``|p(1)|`` exceeds
    ``eps * ||p||``, i.e. when t = 1 is not a root.
    """
    if p.is_zero():
        return LaurentPoly(), 0j
    c = p.coeffs[::-1]  # highest degree first
    q = np.empty(len(c) - 1, dtype=complex)
    acc = 0j
    for i in range(len(c) - 1):
        acc = acc + c[i]
        q[i] = acc
    remainder = complex(acc + c[-1])
    if abs(remainder) > eps * p.norm():
        raise ValueError(f"polynomial does not vanish at t = 1 (|p(1)| = {abs(remainder):.3e})")
    return LaurentPoly(q[::-1], p.min_degree, trim=False), remainder


def order_at_one(p: LaurentPoly, eps: float = EPS_ROOT, max_order: int = 64) -> tuple[int, LaurentPoly]:
    """Largest m with (t - 1)^m dividing p numerically; returns ``(m, p / (t-1)^m)``."""
    if p.is_zero():
        raise ValueError("the zero polynomial vanishes to infinite order")
    m = 0
    while m < max_order and abs(p(1.0)) <= eps * p.norm():
        p, _ = divide_out_t_minus_1(p, eps)
        m += 1
    return m, p


@dataclass(frozen=True)
class UnitReport:
    """Outcome of comparing g against c * t^m * f."""

    equal: bool
    sign: int
    power: int
    residual: float

    def to_json(self) -> dict[str, Any]:
        return {"sign": self.sign, "power": self.power}


class RationalFunction:
    """Rational function in t kept modulo the shift t^m.

    Stored canonically as ``t^shift * numerator / denominator`` where
    numerator and denominator both have min degree 0.
    """

    __slots__ = ("numerator", "denominator", "shift")

    def __init__(self, numerator: LaurentPoly, denominator: LaurentPoly):
        numerator = LaurentPoly._coerce(numerator)
        denominator = LaurentPoly._coerce(denominator)
        if denominator.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.shift = (numerator.min_degree - denominator.min_degree) if not numerator.is_zero() else 0
        self.numerator = numerator.shift(-numerator.min_degree)
        self.denominator = denominator.shift(-denominator.min_degree)

    def __call__(self, z):
        return self.numerator(z) * np.asarray(z, dtype=complex) ** self.shift / self.denominator(z)

    def raw_numerator(self) -> LaurentPoly:
        return self.numerator.shift(self.shift)

    def __repr__(self) -> str:
        return f"RationalFunction(t^{self.shift} * {self.numerator!r} / {self.denominator!r})"

    def to_json(self) -> dict[str, Any]:
        return {"num": self.raw_numerator().to_json(), "den": self.denominator.to_json()}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "RationalFunction":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _exponent(x: float) -> int:
    return int(np.frexp(x)[1]) if x > 0 else 0


def _ldexp(p: LaurentPoly, e: int) -> LaurentPoly:
    c = np.ldexp(p.coeffs.real, e) + 1j * np.ldexp(p.coeffs.imag, e)
    return LaurentPoly(c, p.min_degree, trim=False)


def rational_equal_up_to_unit(f: RationalFunction, g: RationalFunction, tol: float = 1e-8) -> UnitReport:
    """Search for c in {+1, -1} and integer m with g = c t^m f.

    Cross-multiplies (num_g den_f against num_f den_g), fixes m from the
    lowest degrees, then tries both signs.  The residual is the largest
    coefficient mismatch relative to the largest coefficient magnitude.
    """
    # common power-of-two rescaling of both numerators and both denominators avoids under/overflow
    fn, gn = f.raw_numerator(), g.raw_numerator()
    h = _exponent(max(fn.norm(), gn.norm()))
    k = _exponent(max(f.denominator.norm(), g.denominator.norm()))
    lhs = _ldexp(gn, -h) * _ldexp(f.denominator, -k)
    rhs = _ldexp(fn, -h) * _ldexp(g.denominator, -k)
    if lhs.is_zero() or rhs.is_zero():
        same = lhs.is_zero() and rhs.is_zero()
        return UnitReport(same, 1, 0, 0.0 if same else float("inf"))
    m = lhs.min_degree - rhs.min_degree
    rhs = rhs.shift(m)
    scale = max(lhs.norm(), rhs.norm())
    best = None
    for c in (1, -1):
        res = (lhs - rhs.scale(c)).norm() / scale
        if best is None or res < best[1]:
            best = (c, res)
    c, res = best
    return UnitReport(bool(res <= tol), c, m, float(res))
