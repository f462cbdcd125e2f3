"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .fields import QQ, Field, FieldElem, ModP, format_coeff

Exponent = tuple[int, ...]


def grlex_key(exp: Exponent):
    # larger key = larger monomial
    return (sum(exp), exp)


class Poly:
    """Polynomial over a ``Field`` in an ordered tuple of named variables.

    Terms map exponent tuples to nonzero coefficients.  Two polynomials only
    combine when their variable tuples agree; use :meth:`in_ring` to move a
    polynomial into a larger ring.
    """

    __slots__ = ("variables", "terms", "field")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None,
                 field: Field = QQ):
        self.variables = tuple(variables)
        self.field = field
        n = len(self.variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match {n} variables")
            c = field(c)
            if c != 0:
                clean[exp] = c
        self.terms = clean

    # construction ---------------------------------------------------------
    @classmethod
    def _raw(cls, variables, terms, field):
        p = cls.__new__(cls)
        p.variables = variables
        p.field = field
        p.terms = terms
        return p

    @classmethod
    def zero(cls, variables: Sequence[str], field: Field = QQ) -> Poly:
        return cls(variables, {}, field)

    @classmethod
    def constant(cls, c, variables: Sequence[str], field: Field = QQ) -> Poly:
        return cls(variables, {(0,) * len(variables): c}, field)

    @classmethod
    def var(cls, name: str, variables: Sequence[str], field: Field = QQ) -> Poly:
        variables = tuple(variables)
        i = variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {exp: 1}, field)

    @classmethod
    def monomial(cls, exp: Exponent, variables: Sequence[str], field: Field = QQ, coeff=1) -> Poly:
        return cls(variables, {tuple(exp): coeff}, field)

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise ValueError(f"ring mismatch: {self.variables} vs {other.variables}")
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, ModP)):
            return Poly.constant(other, self.variables, self.field)
        return NotImplemented

    # queries ----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> FieldElem:
        return self.terms.get((0,) * len(self.variables), self.field.zero)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Exponent, FieldElem]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def used_variables(self) -> list[str]:
        used = set()
        for exp in self.terms:
            used.update(i for i, e in enumerate(exp) if e)
        return [self.variables[i] for i in sorted(used)]

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp)
            s = c if s is None else s + c
            if s == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return Poly._raw(self.variables, terms, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.variables, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw(self.variables, {e: c for e, c in terms.items() if c != 0}, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(1, self.variables, self.field)
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
            other = Poly.constant(other, self.variables, self.field)
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.variables == other.variables and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # calculus and substitution ---------------------------------------------
    def diff(self, name: str) -> Poly:
        i = self.variables.index(name)
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                new = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
                terms[new] = c * exp[i]
        return Poly(self.variables, terms, self.field)

    def evaluate(self, values: Mapping[str, object], one=None):
        """Evaluate at ``values`` (any ring elements supporting + and *).

        ``one`` is the multiplicative identity of the target ring; it is
        required when the polynomial has a constant term and the values are not
        field elements.
        """
        missing = [v for v in self.used_variables() if v not in values]
        if missing:
            raise KeyError(f"no value assigned to {', '.join(missing)}")
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                val = values[self.variables[i]]
                powers[key] = val if e == 1 else power(i, e - 1) * val
            return powers[key]

        total = None
        for exp, c in self.sorted_terms():
            term = None
            for i, e in enumerate(exp):
                if e:
                    term = power(i, e) if term is None else term * power(i, e)
            if term is None:
                if one is None:
                    term = c
                else:
                    term = one * c
            else:
                term = term * c
            total = term if total is None else total + term
        if total is None:
            return self.field.zero if one is None else one * 0
        return total

    def substitute(self, images: Mapping[str, Poly], target_vars: Sequence[str]) -> Poly:
        """Compose with a map sending each variable to a polynomial in ``target_vars``."""
        target_vars = tuple(target_vars)
        one = Poly.constant(1, target_vars, self.field)
        vals = {}
        for v in self.variables:
            if v in images:
                vals[v] = images[v]
        return self.evaluate(vals, one=one) if self.terms else Poly.zero(target_vars, self.field)

    def in_ring(self, variables: Sequence[str]) -> Poly:
        variables = tuple(variables)
        idx = {v: i for i, v in enumerate(variables)}
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * len(variables)
            for i, e in enumerate(exp):
                if e:
                    if self.variables[i] not in idx:
                        raise ValueError(f"variable {self.variables[i]} missing from target ring")
                    new[idx[self.variables[i]]] = e
            terms[tuple(new)] = c
        return Poly._raw(variables, terms, self.field)

    def with_field(self, field: Field) -> Poly:
        return Poly(self.variables, {e: field(c) if not isinstance(c, ModP) else c
                                     for e, c in self.terms.items()}, field)

    # rendering --------------------------------------------------------------
    def format_monomial(self, exp: Exponent) -> str:
        parts = []
        for name, e in zip(self.variables, exp):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, (exp, c) in enumerate(self.sorted_terms()):
            mono = self.format_monomial(exp)
            negative = isinstance(c, Fraction) and c < 0
            mag = -c if negative else c
            if mono:
                body = mono if mag == 1 else f"{format_coeff(mag)}*{mono}"
            else:
                body = format_coeff(mag)
            if k == 0:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r}, vars={self.variables})"


def poly_ring(variables: Iterable[str], field: Field = QQ):
    """Return the generator polynomials of ``field[variables]`` as a tuple."""
    variables = tuple(variables)
    return tuple(Poly.var(v, variables, field) for v in variables)
