"""Truncated univariate power series ``c_0 + c_1 t + ... mod t^P``.

Coefficients may be field elements or polynomials (the latter is how jet
equations are generated); anything with ``+``, ``-``, ``*`` and ``== 0`` works.
Division is only defined for field coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .fields import Field, ModP, format_coeff


class TruncSeries:
    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs: Sequence, precision: int, zero=None):
        if precision < 1:
            raise ValueError(f"precision must be positive, got {precision}")
        coeffs = list(coeffs[:precision])
        if len(coeffs) < precision:
            if zero is None:
                if not coeffs:
                    raise ValueError("cannot pad an empty coefficient list without a zero element")
                zero = coeffs[0] * 0
            coeffs.extend([zero] * (precision - len(coeffs)))
        self.coeffs = tuple(coeffs)
        self.precision = precision

    @classmethod
    def constant(cls, c, precision: int, zero=None) -> TruncSeries:
        zero = c * 0 if zero is None else zero
        return cls([c], precision, zero)

    @classmethod
    def t_power(cls, k: int, precision: int, field: Field) -> TruncSeries:
        coeffs = [field.zero] * precision
        if k < precision:
            coeffs[k] = field.one
        return cls(coeffs, precision)

    @property
    def zero_coeff(self):
        return self.coeffs[0] * 0

    # arithmetic -------------------------------------------------------------
    def _check(self, other: TruncSeries):
        if other.precision != self.precision:
            raise ValueError(f"precision mismatch: {self.precision} vs {other.precision}")

    def _scalar(self, c) -> TruncSeries:
        return TruncSeries.constant(c, self.precision, self.zero_coeff)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = self._scalar(other)
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.precision)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.precision)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = self._scalar(other)
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.precision)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries([a * other for a in self.coeffs], self.precision)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        P = self.precision
        va, vb = self.valuation(), other.valuation()
        out = [self.zero_coeff] * P
        for i in range(va, P):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(vb, P - i):
                bj = b[j]
                if bj == 0:
                    continue
                out[i + j] = out[i + j] + ai * bj
        return TruncSeries(out, P)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = TruncSeries.constant(self.coeffs[0] * 0 + 1, self.precision, self.zero_coeff)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ModP)):
            other = self._scalar(other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.precision == other.precision and all(
            (a - b) == 0 for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.precision, self.coeffs))

    # valuation and units ----------------------------------------------------
    def valuation(self) -> int:
        """Index of the first nonzero coefficient; ``precision`` if none is stored.

        A return value equal to ``precision`` means "at least P".
        """
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.precision

    def is_zero(self) -> bool:
        return self.valuation() == self.precision

    def is_unit(self) -> bool:
        return self.coeffs[0] != 0

    def unit_inverse(self) -> TruncSeries:
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ValueError(f"non-unit series (valuation {self.valuation()}) has no inverse")
        inv0 = 1 / c0
        P = self.precision
        out = [inv0] + [self.zero_coeff] * (P - 1)
        for k in range(1, P):
            acc = self.zero_coeff
            for j in range(1, k + 1):
                acc = acc + self.coeffs[j] * out[k - j]
            out[k] = -acc * inv0
        return TruncSeries(out, P)

    # precision bookkeeping ----------------------------------------------------
    def truncate(self, precision: int) -> TruncSeries:
        if precision > self.precision:
            raise ValueError(f"cannot raise precision {self.precision} to {precision} by truncation")
        return TruncSeries(self.coeffs[:precision], precision)

    def extend_by_zero(self, precision: int) -> TruncSeries:
        """Reinterpret with more stored coefficients, the new ones set to zero.

        Only meaningful when the caller knows the unknown tail does not matter
        (e.g. it is about to be multiplied by a high power of ``t``) or the
        series is an exact polynomial.
        """
        if precision < self.precision:
            return self.truncate(precision)
        return TruncSeries(self.coeffs, precision, self.zero_coeff)

    def shift_up(self, k: int) -> TruncSeries:
        """Multiply by ``t^k`` keeping the precision."""
        if k < 0:
            raise ValueError("use shift_down to divide by t")
        z = self.zero_coeff
        return TruncSeries([z] * k + list(self.coeffs), self.precision, z)

    def shift_down(self, k: int) -> TruncSeries:
        """Divide by ``t^k``; the series must have valuation at least ``k``.

        The quotient is known to precision ``P - k`` only.
        """
        if k == 0:
            return self
        if self.valuation() < k:
            raise ValueError(f"cannot divide by t^{k}: valuation is {self.valuation()}")
        if k >= self.precision:
            raise ValueError(f"dividing by t^{k} leaves no known coefficients at precision {self.precision}")
        return TruncSeries(self.coeffs[k:], self.precision - k)

    # rendering --------------------------------------------------------------
    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if isinstance(c, (Fraction, ModP)):
                negative = isinstance(c, Fraction) and c < 0
                mag = -c if negative else c
                if mono:
                    body = mono if mag == 1 else f"{format_coeff(mag)}*{mono}"
                else:
                    body = format_coeff(mag)
            else:
                negative = False
                body = f"({c})*{mono}" if mono else f"({c})"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        head = "".join(parts) if parts else "0"
        return f"{head} + O(t^{self.precision})"

    def __repr__(self):
        return f"TruncSeries({str(self)!r})"


def series_from_poly(coeffs_by_power: dict[int, object], precision: int, field: Field) -> TruncSeries:
    out = [field.zero] * precision
    for k, c in coeffs_by_power.items():
        if k < precision:
            out[k] = field(c)
    return TruncSeries(out, precision)
