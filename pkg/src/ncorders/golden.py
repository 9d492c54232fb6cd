"""Exact arithmetic in the golden ring Z[phi], its fraction field K = Q(sqrt 5),
and the two small residue fields Z[phi]/2 and Z[phi]/(sqrt 5).

Every value is immutable.  ``phi`` always satisfies ``phi**2 == phi + 1`` and
the Galois conjugation sends ``phi`` to ``1 - phi``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

__all__ = [
    "GoldenInt",
    "FieldElem",
    "ResidueF4",
    "ResidueF5",
    "GoldenDivisionError",
    "PHI",
    "golden_mul",
    "golden_conj",
    "golden_trace_norm",
    "dirichlet_height",
    "kappa",
    "reduce_mod2",
    "reduce_mod_sqrt5",
    "lambda_member",
    "lambda_coordinates",
    "format_fraction",
]


class GoldenDivisionError(ZeroDivisionError):
    """Division by zero (or by a non-unit, for ring division) in Z[phi] or K."""


def format_fraction(q: Fraction) -> str:
    """Canonical ``p/q`` rendering used in certificates (always with a slash)."""
    return f"{q.numerator}/{q.denominator}"


class GoldenInt:
    """The element ``a + b*phi`` of Z[phi]."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0) -> None:
        if not isinstance(a, int) or not isinstance(b, int):
            raise TypeError("GoldenInt coefficients must be int")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("GoldenInt is immutable")

    def __reduce__(self):
        return (GoldenInt, (self.a, self.b))

    @classmethod
    def coerce(cls, x: Union[int, "GoldenInt"]) -> "GoldenInt":
        if isinstance(x, GoldenInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to GoldenInt")

    def __repr__(self) -> str:
        return f"GoldenInt({self.a}, {self.b})"

    def __str__(self) -> str:
        sign = "-" if self.b < 0 else "+"
        return f"{self.a}{sign}{abs(self.b)}*phi"

    def __eq__(self, other) -> bool:
        if isinstance(other, GoldenInt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, FieldElem):
            return other == self
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __neg__(self) -> "GoldenInt":
        return GoldenInt(-self.a, -self.b)

    def __add__(self, other):
        if isinstance(other, GoldenInt):
            return GoldenInt(self.a + other.a, self.b + other.b)
        if isinstance(other, int):
            return GoldenInt(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GoldenInt):
            return GoldenInt(self.a - other.a, self.b - other.b)
        if isinstance(other, int):
            return GoldenInt(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return GoldenInt(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GoldenInt):
            a, b, c, d = self.a, self.b, other.a, other.b
            bd = b * d
            return GoldenInt(a * c + bd, a * d + b * c + bd)
        if isinstance(other, int):
            return GoldenInt(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "GoldenInt":
        if n < 0:
            return self.unit_inverse() ** (-n)
        result, base = GoldenInt(1, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "GoldenInt":
        return GoldenInt(self.a + self.b, -self.b)

    def trace(self) -> int:
        return 2 * self.a + self.b

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def is_unit(self) -> bool:
        return self.norm() in (1, -1)

    def unit_inverse(self) -> "GoldenInt":
        """Inverse in Z[phi]; raises GoldenDivisionError unless ``self`` is a unit."""
        n = self.norm()
        if n not in (1, -1):
            raise GoldenDivisionError(f"{self} is not a unit of Z[phi] (norm {n})")
        return self.conj() * n

    def divides(self, other: "GoldenInt") -> bool:
        if not self:
            return not other
        n = self.norm()
        q = GoldenInt.coerce(other) * self.conj()
        return q.a % n == 0 and q.b % n == 0

    def exact_div(self, other: Union[int, "GoldenInt"]) -> "GoldenInt":
        """``self / other`` when the quotient lies in Z[phi]."""
        other = GoldenInt.coerce(other)
        if not other:
            raise GoldenDivisionError("division by zero in Z[phi]")
        n = other.norm()
        q = self * other.conj()
        if q.a % n or q.b % n:
            raise GoldenDivisionError(f"{other} does not divide {self} in Z[phi]")
        return GoldenInt(q.a // n, q.b // n)

    def to_field(self) -> "FieldElem":
        return FieldElem(self.a, self.b)

    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)


class FieldElem:
    """The element ``a + b*phi`` of K with rational ``a``, ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0) -> None:
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    def __reduce__(self):
        return (FieldElem, (self.a, self.b))

    @classmethod
    def coerce(cls, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, GoldenInt):
            return cls(x.a, x.b)
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {type(x).__name__} to FieldElem")

    def __repr__(self) -> str:
        return f"FieldElem({self.a!r}, {self.b!r})"

    def __str__(self) -> str:
        sign = "-" if self.b < 0 else "+"
        return f"{format_fraction(self.a)}{sign}{format_fraction(abs(self.b))}*phi"

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElem):
            return self.a == other.a and self.b == other.b
        if isinstance(other, GoldenInt):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __neg__(self) -> "FieldElem":
        return FieldElem(-self.a, -self.b)

    def __add__(self, other):
        if type(other) is FieldElem:
            o = other
        else:
            try:
                o = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        return _make(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is FieldElem:
            o = other
        else:
            try:
                o = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        return _make(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        try:
            o = FieldElem.coerce(other)
        except TypeError:
            return NotImplemented
        return FieldElem(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        if type(other) is FieldElem:
            o = other
        else:
            try:
                o = FieldElem.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        if not b and not d:
            return _make(a * c, b)
        bd = b * d
        return _make(a * c + bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = FieldElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = FieldElem.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "FieldElem":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = FieldElem(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "FieldElem":
        return FieldElem(self.a + self.b, -self.b)

    def trace(self) -> Fraction:
        return 2 * self.a + self.b

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> "FieldElem":
        # x^-1 = x* / (x x*)
        n = self.norm()
        if n == 0:
            raise GoldenDivisionError("division by zero in Q(sqrt 5)")
        c = self.conj()
        return FieldElem(c.a / n, c.b / n)

    def is_integral(self) -> bool:
        """Membership in Z[phi]."""
        return self.a.denominator == 1 and self.b.denominator == 1

    def is_rational_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def to_golden(self) -> GoldenInt:
        if not self.is_integral():
            raise ValueError(f"{self} is not in Z[phi]")
        return GoldenInt(int(self.a), int(self.b))

    def sign(self) -> int:
        """Sign under the real embedding phi -> (1 + sqrt 5)/2, decided exactly."""
        # a + b*phi = (2a + b + b*sqrt5) / 2; compare u = 2a + b against -b*sqrt5.
        u = 2 * self.a + self.b
        v = self.b
        if v == 0:
            return (u > 0) - (u < 0)
        if u == 0:
            return (v > 0) - (v < 0)
        if (u > 0) == (v > 0):
            return 1 if u > 0 else -1
        # opposite signs: the larger of u^2, 5 v^2 wins
        d = u * u - 5 * v * v
        if d > 0:
            return 1 if u > 0 else -1
        return 1 if v > 0 else -1

    def is_totally_positive(self) -> bool:
        return self.sign() > 0 and self.conj().sign() > 0

    def denominator(self) -> int:
        from math import lcm

        return lcm(self.a.denominator, self.b.denominator)


def _make(a: Fraction, b: Fraction) -> FieldElem:
    """Build from two Fractions without re-validating them."""
    x = object.__new__(FieldElem)
    object.__setattr__(x, "a", a)
    object.__setattr__(x, "b", b)
    return x


PHI = GoldenInt(0, 1)


def golden_mul(x: GoldenInt, y: GoldenInt) -> GoldenInt:
    return x * y


def golden_conj(x: GoldenInt) -> GoldenInt:
    return x.conj()


def golden_trace_norm(x: GoldenInt) -> tuple[int, int]:
    return x.trace(), x.norm()


def kappa() -> FieldElem:
    """The weight (3 - phi)/5 = 2/(5 + sqrt 5) of the trace form of the height."""
    return FieldElem(Fraction(3, 5), Fraction(-1, 5))


def dirichlet_height(x: GoldenInt) -> int:
    """Coordinate projection a + b*phi -> a.

    Cross-checked against kappa*x + (kappa*x)* computed in K; a mismatch raises.
    """
    kx = kappa() * x.to_field()
    via_trace = kx + kx.conj()
    if via_trace != FieldElem(x.a):
        raise ArithmeticError(f"height mismatch for {x}: {via_trace}")
    return x.a


class ResidueF4:
    """Class of a + b*phi modulo 2 Z[phi]; a field with four elements."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int) -> None:
        object.__setattr__(self, "a", a % 2)
        object.__setattr__(self, "b", b % 2)

    def __setattr__(self, name, value):
        raise AttributeError("ResidueF4 is immutable")

    def __repr__(self) -> str:
        return f"ResidueF4({self.a}, {self.b})"

    def __eq__(self, other) -> bool:
        if isinstance(other, ResidueF4):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("F4", self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __add__(self, other: "ResidueF4") -> "ResidueF4":
        return ResidueF4(self.a ^ other.a, self.b ^ other.b)

    __sub__ = __add__

    def __neg__(self) -> "ResidueF4":
        return self

    def __mul__(self, other: "ResidueF4") -> "ResidueF4":
        a, b, c, d = self.a, self.b, other.a, other.b
        return ResidueF4(a * c + b * d, a * d + b * c + b * d)

    def __pow__(self, n: int) -> "ResidueF4":
        result = ResidueF4(1, 0)
        for _ in range(n):
            result = result * self
        return result

    def code(self) -> int:
        """Two-bit code a + 2b used by the search kernels."""
        return self.a | (self.b << 1)

    @classmethod
    def elements(cls) -> tuple["ResidueF4", ...]:
        return (cls(0, 0), cls(1, 0), cls(0, 1), cls(1, 1))


class ResidueF5:
    """Class modulo the prime (sqrt 5) = (2 phi - 1); phi reduces to 3."""

    __slots__ = ("r",)

    def __init__(self, r: int) -> None:
        object.__setattr__(self, "r", r % 5)

    def __setattr__(self, name, value):
        raise AttributeError("ResidueF5 is immutable")

    def __repr__(self) -> str:
        return f"ResidueF5({self.r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, ResidueF5):
            return self.r == other.r
        if isinstance(other, int):
            return self.r == other % 5
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("F5", self.r))

    def __bool__(self) -> bool:
        return self.r != 0

    def __add__(self, other: "ResidueF5") -> "ResidueF5":
        return ResidueF5(self.r + other.r)

    def __sub__(self, other: "ResidueF5") -> "ResidueF5":
        return ResidueF5(self.r - other.r)

    def __neg__(self) -> "ResidueF5":
        return ResidueF5(-self.r)

    def __mul__(self, other: "ResidueF5") -> "ResidueF5":
        return ResidueF5(self.r * other.r)


PHI_MOD_SQRT5 = 3


def reduce_mod2(x: GoldenInt) -> ResidueF4:
    return ResidueF4(x.a, x.b)


def reduce_mod_sqrt5(x: GoldenInt) -> ResidueF5:
    return ResidueF5(x.a + PHI_MOD_SQRT5 * x.b)


def lambda_member(alpha) -> bool:
    """Whether Tr(alpha) and Tr(phi^2 alpha) are both rational integers.

    This is the condition for every element of the Z[phi]-line through a
    vector of norm ``alpha`` to have integral rational trace-norm.
    """
    alpha = FieldElem.coerce(alpha)
    t1 = alpha.trace()
    t2 = (alpha * FieldElem(1, 1)).trace()
    return t1.denominator == 1 and t2.denominator == 1


def lambda_coordinates(alpha) -> tuple[Fraction, Fraction]:
    """Coordinates (m, c) with alpha = m*phi + c/sqrt5, where c = n - 4m.

    ``alpha`` is in the trace-norm lattice exactly when both are integers.
    """
    alpha = FieldElem.coerce(alpha)
    m = alpha.trace()
    n = (alpha * FieldElem(1, 1)).trace()
    return m, n - 4 * m
