"""Sparse multivariate polynomials with exact rational coefficients, plus the
normalization operator ``x^a -> x^a / a!`` and the operators built from it."""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]


class Polynomial:
    """Immutable sparse polynomial.  ``terms`` maps exponent tuples (aligned
    with ``variables``) to nonzero :class:`~fractions.Fraction` coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] = ()):
        self.variables = tuple(variables)
        clean: Dict[Exponent, Fraction] = {}
        for alpha, c in dict(terms).items():
            alpha = tuple(int(e) for e in alpha)
            if len(alpha) != len(self.variables):
                raise ValueError(f"exponent {alpha} does not match {len(self.variables)} variables")
            if any(e < 0 for e in alpha):
                raise ValueError(f"negative exponent {alpha}")
            c = Fraction(c)
            if c:
                clean[alpha] = clean.get(alpha, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], c=1) -> "Polynomial":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def variable(cls, variables: Sequence[str], i: int) -> "Polynomial":
        variables = tuple(variables)
        alpha = [0] * len(variables)
        alpha[i] = 1
        return cls(variables, {tuple(alpha): 1})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, alpha: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(alpha), Fraction(0))

    def support(self) -> list:
        return sorted(self.terms)

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self.terms}) <= 1

    def sorted_terms(self) -> list:
        """Terms in graded lexicographic order (highest degree first)."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def rename(self, variables: Sequence[str]) -> "Polynomial":
        if len(variables) != self.nvars:
            raise ValueError("renaming must keep the variable count")
        return Polynomial(variables, self.terms)

    def _same_ring(self, other: "Polynomial") -> None:
        if self.variables != other.variables:
            raise ValueError(f"variable mismatch: {self.variables} vs {other.variables}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.variables, other)
        self._same_ring(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, 0) + c
        return Polynomial(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.variables, {a: c * v for a, v in self.terms.items()})
        self._same_ring(other)
        terms: Dict[Exponent, Fraction] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                terms[k] = terms.get(k, 0) + c * d
        return Polynomial(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial.constant(self.variables)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __call__(self, *point) -> Fraction:
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = tuple(point[0])
        if len(point) != self.nvars:
            raise ValueError("wrong number of arguments")
        point = [Fraction(p) for p in point]
        return sum((c * prod(p**e for p, e in zip(point, a)) for a, c in self.terms.items()), Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for a, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, a) if e
            )
            parts.append(f"{c}*{mono}" if mono and c != 1 else (mono or str(c)))
        return " + ".join(parts)

    def to_text(self) -> str:
        lines = [" ".join(self.variables)]
        for a, c in self.sorted_terms():
            lines.append(" ".join([f"{c.numerator}/{c.denominator}"] + [str(e) for e in a]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Polynomial":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise ValueError("missing header line")
        variables = lines[0].split()
        terms: Dict[Exponent, Fraction] = {}
        for line in lines[1:]:
            fields = line.split()
            if not fields:
                continue
            alpha = tuple(int(e) for e in fields[1:])
            if alpha in terms:
                raise ValueError(f"duplicate monomial {alpha}")
            terms[alpha] = Fraction(fields[0])
        return cls(variables, terms)


def _alpha_factorial(alpha: Exponent) -> int:
    return prod(factorial(e) for e in alpha)


def normalize(f: Polynomial) -> Polynomial:
    return Polynomial(f.variables, {a: c / _alpha_factorial(a) for a, c in f.terms.items()})


def denormalize(f: Polynomial) -> Polynomial:
    return Polynomial(f.variables, {a: c * _alpha_factorial(a) for a, c in f.terms.items()})


def coefficient_shift(f: Polynomial, i: int) -> Polynomial:
    """``N^-1 d/dx_i N`` acting on coefficients: drop monomials without
    ``x_i`` and lower the ``x_i`` exponent of the rest by one."""
    terms = {}
    for a, c in f.terms.items():
        if a[i] >= 1:
            b = list(a)
            b[i] -= 1
            terms[tuple(b)] = c
    return Polynomial(f.variables, terms)


def formal_derivative(f: Polynomial, i: int) -> Polynomial:
    terms: Dict[Exponent, Fraction] = {}
    for a, c in f.terms.items():
        if a[i] >= 1:
            b = list(a)
            b[i] -= 1
            terms[tuple(b)] = terms.get(tuple(b), 0) + c * a[i]
    return Polynomial(f.variables, terms)


def substitute_nonneg_matrix(f: Polynomial, A, variables: Sequence[str] | None = None) -> Polynomial:
    """Expand ``f(A v)`` for an ``n x m`` matrix ``A`` with nonnegative entries."""
    rows = [[Fraction(x) for x in row] for row in A]
    if len(rows) != f.nvars:
        raise ValueError(f"matrix has {len(rows)} rows, polynomial has {f.nvars} variables")
    m = len(rows[0]) if rows else 0
    if any(len(r) != m for r in rows):
        raise ValueError("ragged matrix")
    if any(x < 0 for r in rows for x in r):
        raise ValueError("matrix entries must be nonnegative")
    if variables is None:
        variables = [f"v_{k + 1}" for k in range(m)]
    variables = tuple(variables)
    linear = [
        Polynomial(variables, {tuple(int(k == c) for k in range(m)): x for c, x in enumerate(r)})
        for r in rows
    ]
    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power(i: int, e: int) -> Polynomial:
        if (i, e) not in powers:
            powers[(i, e)] = Polynomial.constant(variables) if e == 0 else power(i, e - 1) * linear[i]
        return powers[(i, e)]

    result = Polynomial.zero(variables)
    for a, c in f.terms.items():
        term = Polynomial.constant(variables, c)
        for i, e in enumerate(a):
            if e:
                term = term * power(i, e)
        result = result + term
    return result
