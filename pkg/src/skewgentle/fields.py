"""Exact coefficient fields: the rationals and prime fields F_p.

Field elements are plain Python values (Fraction for Q, int in [0, p) for
F_p); a Field instance supplies the arithmetic. No floating point is used
anywhere in this package.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


class Field:
    """Operation table for an exact field."""

    name: str
    char: int

    def of(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def __repr__(self):
        return f"Field({self.name})"


class Rationals(Field):
    name = "q"
    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def of(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero in Q")
        return 1 / Fraction(a)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField(Field):
    """F_p with p an odd or even prime below 2**31; elements are ints."""

    zero = 0
    one = 1

    def __init__(self, p: int):
        if not isinstance(p, int) or not 2 <= p < 2**31 or not _is_prime(p):
            raise FieldError(f"not a supported prime: {p!r}")
        self.p = p
        self.char = p
        self.name = f"f{p}"

    def of(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise FieldError(f"denominator of {x} vanishes in F_{self.p}")
            return (x.numerator % self.p) * pow(den, self.p - 2, self.p) % self.p
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise FieldError(f"division by zero in F_{self.p}")
        return pow(a, self.p - 2, self.p)


QQ = Rationals()
F2 = PrimeField(2)
F3 = PrimeField(3)

_CACHE: dict[str, Field] = {"q": QQ, "f2": F2, "f3": F3}


def field_by_name(name: str) -> Field:
    """Resolve 'q' or 'f<p>' to a Field instance."""
    key = name.strip().lower()
    if key in _CACHE:
        return _CACHE[key]
    if key.startswith("f") and key[1:].isdigit():
        fld = PrimeField(int(key[1:]))
        _CACHE[key] = fld
        return fld
    raise FieldError(f"unknown field name {name!r} (expected 'q' or 'f<p>')")
