"""Branch-consistent complex special functions and modular comparisons.

Every length, gap term and edge weight in this package is built from the
functions here, so the branch conventions are fixed once and for all:

* the principal logarithm has imaginary part in (-pi, pi]; inputs that sit
  exactly on the negative real axis are treated as approached from above,
  regardless of the sign of their zero imaginary part;
* tanh^{-1}(z) = (1/2) log((1+z)/(1-z)) with that logarithm;
* ``acosh_pos(z)`` solves cosh(w) = z with Re(w) >= 0.  For Re(w) > 0 the
  imaginary part is normalised to [-pi, pi) (so real z < -1 maps to
  acosh(|z|) - pi*i); on the degenerate line Re(w) = 0, i.e. z in [-1, 1],
  the imaginary part is taken in [0, pi].

Denominators smaller than ``POLE_TOL`` raise :class:`PoleError` instead of
returning huge values; downstream series must never absorb near-pole
garbage.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

POLE_TOL = 1e-14

_PI = math.pi
_TWO_PI = 2.0 * math.pi


class PoleError(ArithmeticError):
    """Evaluation was requested within POLE_TOL of a pole or branch point."""


def require_finite(z: complex, what: str = "argument") -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z


def _clean_imag(z: complex) -> complex:
    # -0.0 imaginary parts would pull cmath onto the lower side of the
    # negative-real branch cut; the package convention is the upper side.
    if z.imag == 0.0:
        return complex(z.real, 0.0)
    return z


def principal_log(z: complex) -> complex:
    """log with imaginary part in (-pi, pi]; cut approached from above."""
    z = _clean_imag(complex(z))
    if abs(z) < POLE_TOL:
        raise PoleError(f"log argument within {POLE_TOL} of 0: {z!r}")
    w = cmath.log(z)
    if w.imag == -_PI:
        w = complex(w.real, _PI)
    return w


def principal_sqrt(z: complex) -> complex:
    """sqrt with the cut on the negative reals, approached from above."""
    return cmath.sqrt(_clean_imag(complex(z)))


def acosh_pos(z: complex) -> complex:
    """The solution w of cosh(w) = z with Re(w) >= 0.

    Re(w) > 0: Im(w) in [-pi, pi).  Re(w) = 0: Im(w) in [0, pi].
    Total on finite inputs.
    """
    z = _clean_imag(require_finite(z))
    w = cmath.acosh(z)
    if w.real == 0.0:
        if w.imag < 0.0:
            w = complex(0.0, -w.imag)
        return complex(0.0, w.imag)
    if w.real < 0.0:  # not produced by cmath, kept as a guard
        w = -w
    if w.imag == _PI:
        w = complex(w.real, -_PI)
    return w


def atanh_principal(z: complex) -> complex:
    """tanh^{-1}(z) = (1/2) log((1+z)/(1-z)), principal branch.

    Raises PoleError at z = +-1.
    """
    z = require_finite(z)
    if abs(1.0 - z) < POLE_TOL or abs(1.0 + z) < POLE_TOL:
        raise PoleError(f"atanh pole at z = {z!r}")
    return 0.5 * principal_log((1.0 + z) / (1.0 - z))


def gap_G(x: complex, y: complex, z: complex) -> complex:
    """Main-gap function 2*tanh^{-1}(sinh x / (cosh x + e^{y+z}))."""
    x, y, z = (require_finite(v) for v in (x, y, z))
    den = cmath.cosh(x) + cmath.exp(y + z)
    if abs(den) < POLE_TOL:
        raise PoleError("gap_G pole: cosh x + exp(y+z) ~ 0")
    return 2.0 * atanh_principal(cmath.sinh(x) / den)


def gap_G_log(x: complex, y: complex, z: complex) -> complex:
    """Log form of gap_G; agrees with gap_G mod 2*pi*i."""
    x, y, z = (require_finite(v) for v in (x, y, z))
    num = cmath.exp(x) + cmath.exp(y + z)
    den = cmath.exp(-x) + cmath.exp(y + z)
    if abs(den) < POLE_TOL or abs(num) < POLE_TOL:
        raise PoleError("gap_G_log pole")
    return principal_log(num / den)


def gap_S(x: complex, y: complex, z: complex) -> complex:
    """Side-gap function tanh^{-1}(sinh x sinh y / (cosh z + cosh x cosh y))."""
    x, y, z = (require_finite(v) for v in (x, y, z))
    den = cmath.cosh(z) + cmath.cosh(x) * cmath.cosh(y)
    if abs(den) < POLE_TOL:
        raise PoleError("gap_S pole: cosh z + cosh x cosh y ~ 0")
    return atanh_principal(cmath.sinh(x) * cmath.sinh(y) / den)


def gap_S_log(x: complex, y: complex, z: complex) -> complex:
    """Half-log form of gap_S; agrees with gap_S mod 2*pi*i."""
    x, y, z = (require_finite(v) for v in (x, y, z))
    num = cmath.cosh(z) + cmath.cosh(x + y)
    den = cmath.cosh(z) + cmath.cosh(x - y)
    if abs(den) < POLE_TOL or abs(num) < POLE_TOL:
        raise PoleError("gap_S_log pole")
    return 0.5 * principal_log(num / den)


class Modulus(Enum):
    """Periods used for modular equality of lengths: 2*pi*i or pi*i."""

    TWO_PI_I = "2pii"
    PI_I = "pii"

    @property
    def imag_period(self) -> float:
        return _TWO_PI if self is Modulus.TWO_PI_I else _PI


def canonical_mod(z: complex, modulus: Modulus) -> complex:
    """Representative of z mod (modulus) with Im in (-p/2, p/2], p the period."""
    z = require_finite(z)
    p = modulus.imag_period
    k = math.floor(z.imag / p + 0.5)
    im = z.imag - k * p
    if im <= -p / 2.0:
        im += p
    elif im > p / 2.0:
        im -= p
    return complex(z.real, im)


def eq_mod(a: complex, b: complex, modulus: Modulus, tol: float) -> bool:
    """True iff a = b mod (2*pi*i or pi*i) within tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return abs(canonical_mod(complex(a) - complex(b), modulus)) < tol


@dataclass(frozen=True)
class LogClass:
    """An element of C/(2*pi*i)Z or C/(pi*i)Z, stored by one representative."""

    value: complex
    modulus: Modulus = Modulus.TWO_PI_I

    @property
    def canonical(self) -> complex:
        return canonical_mod(self.value, self.modulus)

    def distance_to(self, z: complex) -> float:
        """|z - value| measured in the quotient."""
        return abs(canonical_mod(complex(z) - complex(self.value), self.modulus))

    def eq(self, z: complex, tol: float = 1e-9) -> bool:
        return self.distance_to(z) < tol
