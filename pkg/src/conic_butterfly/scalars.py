"""Exact scalar backends for the projective kernel.

Two interchangeable scalar types cover every computation:

* ``GaussianRational`` -- complex numbers with rational real and imaginary
  parts, always stored reduced.  This is the ground-truth backend: every
  operation is exact and every value has one canonical representation.
* ``PrimeFieldElement`` -- integers modulo a fixed 61-bit prime.  Much
  faster, but a vanishing result certifies an algebraic identity only with
  Schwartz-Zippel confidence (error at most degree/p per random trial), so
  it is reserved for high-volume randomized campaigns.

Neither backend offers square roots.  The geometry layers are arranged so
that every construction stays inside the field.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from random import Random
from typing import Protocol, Union, runtime_checkable

RationalLike = Union[int, Fraction, str]


class ScalarDivisionError(ZeroDivisionError):
    """Inversion of zero, surfaced as a distinct error type."""


class ScalarParseError(ValueError):
    """Scalar text that does not match the serialization grammar."""


@runtime_checkable
class FieldContract(Protocol):
    """Capabilities every scalar backend provides.

    Beyond the arithmetic dunders, a backend needs ``inv``, ``conjugate``,
    ``is_zero`` and ``is_real``, plus the classmethods ``zero``, ``one``,
    ``from_int``, ``coerce``, ``parse``, ``random`` and ``reduce_content``.
    Conjugation must be a field automorphism; on the prime field it is the
    identity.
    """

    def inv(self): ...
    def conjugate(self): ...
    def is_zero(self) -> bool: ...
    def is_real(self) -> bool: ...


_RAT = r"[+-]?\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^({_RAT})$")
_IMAG_RE = re.compile(rf"^({_RAT})i$")
_COMPLEX_RE = re.compile(rf"^({_RAT})([+-]\d+(?:/\d+)?)i$")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ScalarParseError(f"zero denominator in {text!r}") from None
    except ValueError:
        raise ScalarParseError(f"bad rational literal {text!r}") from None


class GaussianRational:
    """A complex scalar ``re + im*i`` with exact rational components.

    Values are immutable by convention and the components are `Fraction`
    instances, hence always reduced with positive denominator; equality,
    hashing and text round-trips are therefore canonical.  Division by zero
    raises :class:`ScalarDivisionError`.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # ------------------------------------------------------------------
    # constructors
    @classmethod
    def zero(cls) -> "GaussianRational":
        return cls(0)

    @classmethod
    def one(cls) -> "GaussianRational":
        return cls(1)

    @classmethod
    def from_int(cls, n: int) -> "GaussianRational":
        return cls(n)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussianRational")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Inverse of ``str``: accepts ``a/b``, ``a/b+c/di`` and ``c/di``."""
        t = text.strip().replace(" ", "")
        m = _COMPLEX_RE.match(t)
        if m:
            return cls(_fraction(m.group(1)), _fraction(m.group(2)))
        m = _IMAG_RE.match(t)
        if m:
            return cls(0, _fraction(m.group(1)))
        m = _REAL_RE.match(t)
        if m:
            return cls(_fraction(m.group(1)))
        raise ScalarParseError(f"bad scalar literal {text!r}")

    @classmethod
    def random(cls, rng: Random, height_bound: int, *, real: bool = False) -> "GaussianRational":
        """Random scalar whose numerators and denominators stay within ``height_bound``."""
        if height_bound < 1:
            raise ValueError("height_bound must be at least 1")

        def part() -> Fraction:
            return Fraction(rng.randint(-height_bound, height_bound), rng.randint(1, height_bound))

        return cls(part(), 0 if real else part())

    @classmethod
    def reduce_content(cls, values: tuple) -> tuple:
        """Scale a tuple by a positive rational so all components are coprime integers."""
        nums, dens = [], []
        for v in values:
            for part in (v.re, v.im):
                if part:
                    nums.append(abs(part.numerator))
                    dens.append(part.denominator)
        if not nums:
            return tuple(values)
        common_den = reduce(lcm, dens)
        common_num = reduce(gcd, (n * (common_den // d) for n, d in zip(nums, dens)))
        factor = cls(Fraction(common_den, common_num))
        return tuple(v * factor for v in values)

    # ------------------------------------------------------------------
    # field operations
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inv(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ScalarDivisionError("0 has no multiplicative inverse")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self * other.inv()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    # ------------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GaussianRational({self})"


_PRIME = (1 << 61) - 1  # Mersenne prime, fixed once for the whole build
_raw_new = object.__new__


class PrimeFieldElement:
    """An element of GF(p) for the fixed prime ``p = 2**61 - 1``.

    Conjugation is the identity and every element counts as real.  The
    backend exists for volume: all the geometry runs unchanged over it, but
    a zero produced from random inputs is probabilistic evidence, not proof.
    """

    __slots__ = ("residue",)
    MODULUS = _PRIME

    def __init__(self, value: Union[int, str] = 0):
        self.residue = int(value) % _PRIME

    @classmethod
    def _make(cls, residue: int) -> "PrimeFieldElement":
        out = object.__new__(cls)
        out.residue = residue
        return out

    # ------------------------------------------------------------------
    # constructors
    @classmethod
    def zero(cls) -> "PrimeFieldElement":
        return cls._make(0)

    @classmethod
    def one(cls) -> "PrimeFieldElement":
        return cls._make(1)

    @classmethod
    def from_int(cls, n: int) -> "PrimeFieldElement":
        return cls._make(n % _PRIME)

    @classmethod
    def coerce(cls, value) -> "PrimeFieldElement":
        if isinstance(value, PrimeFieldElement):
            return value
        if isinstance(value, int):
            return cls._make(value % _PRIME)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to PrimeFieldElement")

    @classmethod
    def parse(cls, text: str) -> "PrimeFieldElement":
        t = text.strip()
        if not re.fullmatch(r"[+-]?\d+", t):
            raise ScalarParseError(f"bad residue literal {text!r}")
        return cls._make(int(t) % _PRIME)

    @classmethod
    def random(cls, rng: Random, height_bound: int = 0, *, real: bool = False) -> "PrimeFieldElement":
        """Uniform residue; the height bound and reality flag do not apply here."""
        return cls._make(rng.randrange(_PRIME))

    @classmethod
    def reduce_content(cls, values: tuple) -> tuple:
        return tuple(values)

    # ------------------------------------------------------------------
    # field operations; allocation is inlined because these four run in
    # the million-call range per fuzz campaign
    def __add__(self, other):
        if not isinstance(other, PrimeFieldElement):
            return NotImplemented
        out = _raw_new(PrimeFieldElement)
        out.residue = (self.residue + other.residue) % _PRIME
        return out

    def __sub__(self, other):
        if not isinstance(other, PrimeFieldElement):
            return NotImplemented
        out = _raw_new(PrimeFieldElement)
        out.residue = (self.residue - other.residue) % _PRIME
        return out

    def __neg__(self):
        out = _raw_new(PrimeFieldElement)
        out.residue = -self.residue % _PRIME
        return out

    def __mul__(self, other):
        if not isinstance(other, PrimeFieldElement):
            return NotImplemented
        out = _raw_new(PrimeFieldElement)
        out.residue = self.residue * other.residue % _PRIME
        return out

    def inv(self) -> "PrimeFieldElement":
        if not self.residue:
            raise ScalarDivisionError("0 has no multiplicative inverse")
        return PrimeFieldElement._make(pow(self.residue, _PRIME - 2, _PRIME))

    def __truediv__(self, other):
        if not isinstance(other, PrimeFieldElement):
            return NotImplemented
        return self * other.inv()

    def conjugate(self) -> "PrimeFieldElement":
        return self

    def is_zero(self) -> bool:
        return not self.residue

    def is_real(self) -> bool:
        return True

    # ------------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, PrimeFieldElement):
            return NotImplemented
        return self.residue == other.residue

    def __hash__(self):
        return hash(("GF", self.residue))

    def __str__(self):
        return str(self.residue)

    def __repr__(self):
        return f"PrimeFieldElement({self.residue})"


BACKENDS = {"gauss": GaussianRational, "prime": PrimeFieldElement}


def get_backend(name: str):
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown scalar backend {name!r}; expected one of {sorted(BACKENDS)}") from None


def backend_name(field) -> str:
    for name, cls in BACKENDS.items():
        if field is cls:
            return name
    raise ValueError(f"{field!r} is not a registered scalar backend")
