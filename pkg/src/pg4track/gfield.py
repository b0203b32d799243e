"""Prime field arithmetic and dense univariate polynomials over F_q.

Elements are carried around as plain ints in ``[0, q)``; :class:`PrimeField`
holds the modulus and supplies the operations.  :class:`FieldElement` wraps an
int with operator overloading for code that reads better with ``+`` and ``*``.
The hot loops elsewhere in the package work on raw ints.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt
from typing import Iterable

MAX_MODULUS = 2**31 - 1


class FieldError(ArithmeticError):
    """Raised on invalid moduli and on division by zero."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in range(3, isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def check_modulus(q: int) -> int:
    """Validate ``q`` as a supported modulus and return it.

    Supported moduli are primes ``5 <= q <= 2**31 - 1``; characteristic 2 and 3
    are excluded.
    """
    if not isinstance(q, int) or isinstance(q, bool):
        raise FieldError(f"modulus must be an int, got {q!r}")
    if q < 5 or q > MAX_MODULUS:
        raise FieldError(f"modulus {q} outside supported range [5, 2^31 - 1]")
    if not is_prime(q):
        raise FieldError(f"modulus {q} is not prime")
    return q


class PrimeField:
    """The field of integers modulo a prime ``q``."""

    __slots__ = ("q", "half", "_nonres")

    def __init__(self, q: int):
        self.q = check_modulus(q)
        self.half = (q + 1) // 2
        self._nonres = None

    def __repr__(self) -> str:
        return f"PrimeField({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("PrimeField", self.q))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def __iter__(self):
        return iter(range(self.q))

    # -- int-level operations -------------------------------------------------

    def reduce(self, x: int) -> int:
        return x % self.q

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.q

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.q

    def neg(self, x: int) -> int:
        return -x % self.q

    def mul(self, x: int, y: int) -> int:
        return x * y % self.q

    def inv(self, x: int) -> int:
        x %= self.q
        if x == 0:
            raise FieldError(f"0 has no inverse in F_{self.q}")
        return pow(x, -1, self.q)

    def div(self, x: int, y: int) -> int:
        return x * self.inv(y) % self.q

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(x), -e, self.q)
        return pow(x % self.q, e, self.q)

    def chi(self, x: int) -> int:
        """Quadratic character via Euler's criterion: 0, 1 or -1."""
        x %= self.q
        if x == 0:
            return 0
        return 1 if pow(x, (self.q - 1) // 2, self.q) == 1 else -1

    def _nonresidue(self) -> int:
        if self._nonres is None:
            z = 2
            while self.chi(z) != -1:
                z += 1
            self._nonres = z
        return self._nonres

    def sqrt(self, x: int) -> int | None:
        """Square root by Tonelli-Shanks; the smaller root, or None."""
        q = self.q
        x %= q
        if x == 0:
            return 0
        if self.chi(x) != 1:
            return None
        if q % 4 == 3:
            r = pow(x, (q + 1) // 4, q)
        else:
            m, s = q - 1, 0
            while m % 2 == 0:
                m //= 2
                s += 1
            c = pow(self._nonresidue(), m, q)
            r = pow(x, (m + 1) // 2, q)
            t = pow(x, m, q)
            while t != 1:
                i, t2 = 0, t
                while t2 != 1:
                    t2 = t2 * t2 % q
                    i += 1
                b = pow(c, 1 << (s - i - 1), q)
                r = r * b % q
                c = b * b % q
                t = t * c % q
                s = i
        return min(r, q - r)


@lru_cache(maxsize=None)
def GF(q: int) -> PrimeField:
    """Shared :class:`PrimeField` instance for ``q``."""
    return PrimeField(q)


class FieldElement:
    """An element of F_q with arithmetic operators."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = int(value) % field.q
        self.field = field

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.q != self.field.q:
                raise FieldError("mixing elements of different fields")
            return other.value
        if isinstance(other, int):
            return other % self.field.q
        return NotImplemented

    def _wrap(self, v: int) -> "FieldElement":
        return FieldElement(v, self.field)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def chi(self) -> int:
        return self.field.chi(self.value)

    def sqrt(self) -> "FieldElement | None":
        r = self.field.sqrt(self.value)
        return None if r is None else self._wrap(r)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field.q == other.field.q and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.q))

    def __int__(self) -> int:
        return self.value

    __index__ = __int__

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.field.q})"


def _trim(coeffs: Iterable[int], q: int) -> tuple[int, ...]:
    c = [x % q for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Dense polynomial over F_q, coefficients lowest degree first.

    The zero polynomial has empty ``coeffs`` and ``degree`` None.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: Iterable[int], field: PrimeField | int):
        if isinstance(field, int):
            field = GF(field)
        self.field = field
        self.coeffs = _trim((int(c) for c in coeffs), field.q)

    @classmethod
    def monomial(cls, deg: int, field: PrimeField, coeff: int = 1) -> "Poly":
        return cls([0] * deg + [coeff], field)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        q = self.field.q
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % q
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field.q == other.field.q and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.field.q))

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"Poly(0 mod {self.field.q})"
        terms = [f"{c}*x^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"Poly({' + '.join(reversed(terms))} mod {self.field.q})"

    def _check(self, other: "Poly") -> None:
        if other.field.q != self.field.q:
            raise FieldError("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)],
            self.field,
        )

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.field)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly([c * other for c in self.coeffs], self.field)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly([], self.field)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        out = Poly([1], self.field)
        for _ in range(e):
            out = out * self
        return out


def poly_roots(P: Poly) -> list[int]:
    """All roots of ``P`` in F_q, ascending, by scanning the field."""
    if P.is_zero():
        raise FieldError("the zero polynomial vanishes everywhere")
    return [x for x in range(P.field.q) if P(x) == 0]


def poly_square_root(P: Poly) -> Poly | None:
    """Return ``S`` with ``S*S == P`` if one exists over F_q, else None.

    Coefficients of ``S`` are fixed one at a time from the top degree down by
    matching the upper half of the coefficients of ``P``; the candidate is then
    squared and compared against ``P``.  Of the two roots ``S`` and ``-S``, the
    one whose leading coefficient is the smaller representative is returned.
    """
    F = P.field
    q = F.q
    if P.is_zero():
        return P
    n = P.degree
    if n % 2:
        return None
    lead_root = F.sqrt(P.lead)
    if lead_root is None:
        return None
    m = n // 2
    s = [0] * (m + 1)
    s[m] = lead_root
    inv_2lead = F.inv(2 * lead_root)
    p = P.coeffs
    for k in range(1, m + 1):
        # coefficient of x^(2m-k) in S^2, excluding the 2*s[m]*s[m-k] term
        acc = 0
        for i in range(m - k + 1, m):
            j = 2 * m - k - i
            if m - k < j < m:
                acc += s[i] * s[j]
        s[m - k] = (p[2 * m - k] - acc) * inv_2lead % q
    S = Poly(s, F)
    return S if S * S == P else None
