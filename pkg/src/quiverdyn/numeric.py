"""Weight arithmetic that stays exact while it can and certifies signs after.

Quiver weights are Python integers.  Along reduced mutation sequences they
grow doubly exponentially (the log-size of a fresh weight is roughly the sum
of the log-sizes of the two weights it was composed from), so a walk of a few
hundred steps produces integers with astronomically many digits.

Once an integer exceeds :data:`EXACT_BITS` bits it is replaced by an
:class:`Enclosure`: a rigorous outward-rounded interval (mpmath's interval
kernel, unbounded exponent) that is guaranteed to contain the true integer.
Every sign test or comparison on an enclosure is either decided correctly or
raises :class:`ExactnessLost`; nothing is ever guessed.
"""

from __future__ import annotations

import itertools

from mpmath.libmp import from_int, libmpi, mpf_sign, to_int

EXACT_BITS = 8192
PRECISION = 192

_mag_ids = itertools.count(1)


class ExactnessLost(ArithmeticError):
    """A sign or comparison on an enclosed weight cannot be certified."""


def _raw_bits(raw) -> int:
    # raw mpf is (sign, mantissa, exponent, bitcount)
    return raw[2] + raw[3] if raw[1] else 0


class Enclosure:
    """Interval enclosure of an integer too large to carry exactly.

    ``mag`` identifies the magnitude: ``x``, ``-x`` and ``abs(x)`` share it,
    so they compare exactly against each other even though their intervals
    are wide.
    """

    __slots__ = ("lo", "hi", "mag")

    def __init__(self, lo, hi, mag: int | None = None):
        self.lo = lo
        self.hi = hi
        self.mag = next(_mag_ids) if mag is None else mag

    @classmethod
    def from_int(cls, value: int) -> "Enclosure":
        return cls(from_int(value, PRECISION, "f"), from_int(value, PRECISION, "c"))

    @property
    def _iv(self):
        return (self.lo, self.hi)

    def sign(self) -> int:
        if mpf_sign(self.lo) > 0:
            return 1
        if mpf_sign(self.hi) < 0:
            return -1
        raise ExactnessLost(f"sign of an enclosed weight near 2^{self.bit_length()} is undetermined")

    def bit_length(self) -> int:
        return max(_raw_bits(self.lo), _raw_bits(self.hi))

    # arithmetic -------------------------------------------------------
    def __neg__(self):
        lo, hi = libmpi.mpi_neg(self._iv)
        return Enclosure(lo, hi, self.mag)

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self.sign() > 0 else -self

    def __add__(self, other):
        o = _as_interval(other)
        if o is None:
            return NotImplemented
        return settle(Enclosure(*libmpi.mpi_add(self._iv, o, PRECISION)))

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_interval(other)
        if o is None:
            return NotImplemented
        return settle(Enclosure(*libmpi.mpi_sub(self._iv, o, PRECISION)))

    def __rsub__(self, other):
        o = _as_interval(other)
        if o is None:
            return NotImplemented
        return settle(Enclosure(*libmpi.mpi_sub(o, self._iv, PRECISION)))

    def __mul__(self, other):
        o = _as_interval(other)
        if o is None:
            return NotImplemented
        return settle(Enclosure(*libmpi.mpi_mul(self._iv, o, PRECISION)))

    __rmul__ = __mul__

    # comparisons --------------------------------------------------------
    def _cmp(self, other) -> int:
        if isinstance(other, Enclosure) and other.mag == self.mag:
            s, t = self.sign(), other.sign()
            return (s > t) - (s < t)
        o = _as_interval(other)
        if o is None:
            raise TypeError(f"cannot compare Enclosure with {type(other).__name__}")
        lo, hi = libmpi.mpi_sub(self._iv, o, PRECISION)
        if mpf_sign(lo) > 0:
            return 1
        if mpf_sign(hi) < 0:
            return -1
        raise ExactnessLost("comparison between enclosed weights is undetermined")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (int, Enclosure)):
            return NotImplemented
        return self._cmp(other) == 0

    def __ne__(self, other):
        if not isinstance(other, (int, Enclosure)):
            return NotImplemented
        return self._cmp(other) != 0

    def __bool__(self):
        return self.sign() != 0

    def __hash__(self):
        raise ExactnessLost("enclosed weights are not hashable")

    def __repr__(self):
        return f"Enclosure(~2^{self.bit_length()}, sign={self._sign_str()})"

    def _sign_str(self):
        try:
            return "+" if self.sign() > 0 else "-"
        except ExactnessLost:
            return "?"


def _as_interval(value):
    if isinstance(value, Enclosure):
        return value._iv
    if isinstance(value, int):
        return (from_int(value, PRECISION, "f"), from_int(value, PRECISION, "c"))
    return None


def settle(value):
    """Normalize a weight: big ints become enclosures, pinned enclosures ints."""
    if isinstance(value, int):
        if value.bit_length() > EXACT_BITS:
            return Enclosure.from_int(value)
        return value
    if value.bit_length() <= EXACT_BITS + 1:
        lo = to_int(value.lo, "c")
        hi = to_int(value.hi, "f")
        if lo == hi:
            return lo
    return value


def is_exact(value) -> bool:
    return isinstance(value, int)


def sign(value) -> int:
    if isinstance(value, int):
        return (value > 0) - (value < 0)
    return value.sign()
