"""Exact inertia of symmetric integer matrices and the Lorentzian predicate
for normalized integer-coefficient polynomials.

Matrices are plain tuples of tuples of Python ints.  No floating point is
involved in any verdict: inertia comes from the integer characteristic
polynomial (Berkowitz, division free) read through Descartes' rule of
signs, which is exact because a symmetric matrix has a real spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .kostant import kostant
from .multigraph import Multigraph, sink_structure
from .permutahedra import ExchangeWitness, is_m_convex
from .polyalg import Exponent, Polynomial

Matrix = Tuple[Tuple[int, ...], ...]


def as_matrix(m) -> Matrix:
    rows = tuple(tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in r) for r in m)
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix must be square")
    return rows


def is_symmetric(m: Matrix) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


def charpoly(m) -> List[int]:
    """Coefficients of ``det(t I - m)``, highest degree first (Berkowitz)."""
    m = as_matrix(m)
    n = len(m)
    if n == 0:
        return [1]
    poly = [1, -m[0][0]]
    for r in range(1, n):
        R = m[r][:r]
        C = [m[k][r] for k in range(r)]
        A = [row[:r] for row in m[:r]]
        # first column of the Toeplitz factor: 1, -a, -R C, -R A C, ..., -R A^(r-1) C
        col = [1, -m[r][r]]
        v = C
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(A[i][k] * v[k] for k in range(r)) for i in range(r)]
        poly = [sum(col[i - k] * poly[k] for k in range(len(poly)) if 0 <= i - k < len(col)) for i in range(r + 2)]
    return poly


def _sign_changes(coeffs: Sequence) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class Inertia:
    n_pos: int
    n_neg: int
    n_zero: int

    @property
    def rank(self) -> int:
        return self.n_pos + self.n_neg

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.n_pos, self.n_neg, self.n_zero)


def inertia(m) -> Inertia:
    m = as_matrix(m)
    if not is_symmetric(m):
        raise ValueError("inertia needs a symmetric matrix")
    n = len(m)
    # all-zero rows split off as a zero block
    live = [i for i in range(n) if any(m[i])]
    sub = tuple(tuple(m[i][j] for j in live) for i in live)
    p = charpoly(sub)
    k = len(live)
    zeros = 0
    while zeros < k and p[k - zeros] == 0:
        zeros += 1
    core = p[: k + 1 - zeros]
    pos = _sign_changes(core)
    deg = len(core) - 1
    neg = _sign_changes([c * (-1) ** (deg - idx) for idx, c in enumerate(core)])
    if pos + neg + zeros != k:
        raise ArithmeticError("characteristic polynomial is not real-rooted; matrix cannot be symmetric")
    return Inertia(pos, neg, zeros + n - k)


def rank(m) -> int:
    return inertia(m).rank


def _integer_coefficients(f: Polynomial) -> Dict[Exponent, int]:
    out = {}
    for a, c in f.terms.items():
        if c.denominator != 1:
            raise ValueError(f"coefficient {c} of {a} is not an integer")
        out[a] = int(c)
    return out


def hessian_slice(f: Polynomial, d: Sequence[int]) -> Matrix:
    """``H[i][j] = c_{d + e_i + e_j}``."""
    coeffs = _integer_coefficients(f)
    n = f.nvars
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            alpha = list(d)
            alpha[i] += 1
            alpha[j] += 1
            row.append(coeffs.get(tuple(alpha), 0))
        rows.append(tuple(row))
    return tuple(rows)


def hessian_slices(f: Polynomial) -> List[Tuple[Exponent, Matrix]]:
    """Every nonzero coefficient slice ``H_d`` with ``|d| = deg f - 2``."""
    _integer_coefficients(f)
    if f.is_zero() or f.degree() < 2:
        return []
    if not f.is_homogeneous():
        raise ValueError("hessian slices need a homogeneous polynomial")
    n = f.nvars
    ds = set()
    for alpha in f.terms:
        for i in range(n):
            if alpha[i] == 0:
                continue
            for j in range(i, n):
                d = list(alpha)
                d[i] -= 1
                d[j] -= 1
                if d[j] >= 0:
                    ds.add(tuple(d))
    return [(d, hessian_slice(f, d)) for d in sorted(ds)]


@dataclass
class LorentzianVerdict:
    ok: bool
    reason: str = ""
    slice_d: Optional[Exponent] = None
    slice_matrix: Optional[Matrix] = None
    slice_inertia: Optional[Inertia] = None
    exchange: Optional[ExchangeWitness] = None
    slices_checked: int = 0

    def certificate(self) -> dict:
        cert = {"ok": self.ok, "reason": self.reason, "slices_checked": self.slices_checked}
        if self.slice_d is not None:
            cert["d"] = list(self.slice_d)
            cert["matrix"] = [list(r) for r in self.slice_matrix]
            cert["inertia"] = list(self.slice_inertia.as_tuple())
        if self.exchange is not None:
            cert["alpha"] = list(self.exchange.alpha)
            cert["beta"] = list(self.exchange.beta)
            cert["i"] = self.exchange.i
        return cert


def is_lorentzian_normalized(f: Polynomial) -> LorentzianVerdict:
    """Decide whether ``N(f)`` is Lorentzian for an integer-coefficient ``f``.

    Checks nonnegativity, homogeneity, M-convex support and, for degree at
    least 2, that every coefficient slice has at most one positive eigenvalue.
    """
    coeffs = _integer_coefficients(f)
    neg = [a for a, c in coeffs.items() if c < 0]
    if neg:
        return LorentzianVerdict(False, f"negative coefficient at {min(neg)}")
    if f.is_zero():
        return LorentzianVerdict(True, "zero polynomial")
    if not f.is_homogeneous():
        return LorentzianVerdict(False, "not homogeneous")
    if f.degree() <= 1:
        return LorentzianVerdict(True, f"degree {f.degree()} with nonnegative coefficients")
    ok, witness = is_m_convex(f.support())
    if not ok:
        return LorentzianVerdict(False, "support is not M-convex", exchange=witness)
    slices = hessian_slices(f)
    for d, H in slices:
        ine = inertia(H)
        if ine.n_pos > 1:
            return LorentzianVerdict(False, f"slice has {ine.n_pos} positive eigenvalues", d, H, ine, slices_checked=len(slices))
    return LorentzianVerdict(True, "all slices have at most one positive eigenvalue", slices_checked=len(slices))


@dataclass(frozen=True)
class LogConcavityWitness:
    alpha: Exponent
    i: int
    j: int
    lhs: Fraction
    rhs: Fraction


def log_concavity_check(f: Polynomial) -> Tuple[bool, Optional[LogConcavityWitness]]:
    """``c_a^2 >= c_{a+e_i-e_j} c_{a-e_i+e_j}`` at every exponent near the support."""
    n = f.nvars
    candidates = set(f.terms)
    for alpha in f.terms:
        for i in range(n):
            for j in range(n):
                if i != j and alpha[j] > 0:
                    b = list(alpha)
                    b[i] += 1
                    b[j] -= 1
                    candidates.add(tuple(b))
    for alpha in sorted(candidates):
        c = f.coefficient(alpha)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                up = list(alpha)
                up[i] += 1
                up[j] -= 1
                down = list(alpha)
                down[i] -= 1
                down[j] += 1
                if min(up) < 0 or min(down) < 0:
                    continue
                rhs = f.coefficient(up) * f.coefficient(down)
                if c * c < rhs:
                    return False, LogConcavityWitness(alpha, i, j, c * c, rhs)
    return True, None


def expand_matrix(kminus, multiplicities) -> Matrix:
    """Repeat row ``i`` then column ``i`` ``multiplicities[i]`` times."""
    m = as_matrix(kminus)
    if isinstance(multiplicities, Mapping):
        mult = [multiplicities[i] for i in range(len(m))]
    else:
        mult = list(multiplicities)
    if len(mult) != len(m) or any(k < 1 for k in mult):
        raise ValueError("one positive multiplicity per row is required")
    rows = [r for r, k in zip(m, mult) for _ in range(k)]
    return tuple(tuple(x for x, k in zip(r, mult) for _ in range(k)) for r in rows)


def conjugate_antidiagonal(m) -> Matrix:
    """``P m P`` with ``P`` the order-reversing permutation matrix."""
    m = as_matrix(m)
    return tuple(tuple(reversed(r)) for r in reversed(m))


def principal_submatrix(m, rows: Sequence[int]) -> Matrix:
    m = as_matrix(m)
    return tuple(tuple(m[i][j] for j in rows) for i in rows)


def build_K_matrix(g: Multigraph, a: Sequence[int], d: Sequence[int]) -> Matrix:
    """Kostant matrix indexed by sink edges: entry for ``(i1;k1), (i2;k2)`` is
    ``K_{G|[n]}(a|[n] - ef d - e_i1 - e_i2)``."""
    g.require_unique_sink()
    a = tuple(int(x) for x in a)
    sink = sink_structure(g)
    total = sum(a[: g.n])
    if total < 2:
        raise ValueError("no quadratic slice exists when sum(a_i) < 2")
    d = tuple(int(x) for x in d)
    if len(d) != len(sink.S) or min(d, default=0) < 0 or sum(d) != total - 2:
        raise ValueError(f"d must be a nonnegative vector over S_G summing to {total - 2}")
    base = list(a[: g.n])
    for (i, _, _), v in zip(sink.S, d):
        base[i - 1] -= v
    restricted = g.restrict()
    tails = [e[0] for e in sink.S]
    rows = []
    for i1 in tails:
        row = []
        for i2 in tails:
            b = list(base)
            b[i1 - 1] -= 1
            b[i2 - 1] -= 1
            row.append(kostant(restricted, b))
        rows.append(tuple(row))
    return tuple(rows)


def _sorted_signs(ine: Inertia) -> List[int]:
    return [-1] * ine.n_neg + [0] * ine.n_zero + [1] * ine.n_pos


def interlacing_check(big, principal_rows: Sequence[int]) -> bool:
    """Are the inertias of ``big`` and its principal submatrix on
    ``principal_rows`` (0-based) compatible with Cauchy interlacing?

    Sorted eigenvalue signs must satisfy ``s_big[j] <= s_sub[j] <= s_big[n-m+j]``.
    """
    big = as_matrix(big)
    rows = list(principal_rows)
    if len(set(rows)) != len(rows) or any(not 0 <= r < len(big) for r in rows):
        raise ValueError("principal rows must be distinct valid indices")
    sa = _sorted_signs(inertia(big))
    sb = _sorted_signs(inertia(principal_submatrix(big, rows)))
    n, m = len(sa), len(sb)
    return all(sa[j] <= sb[j] <= sa[n - m + j] for j in range(m))
