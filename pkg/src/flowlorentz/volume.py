"""Volume polynomials of flow polytopes and the Hessian-through-volume pipeline.

Volumes are relative lattice volumes: the leading coefficient of the Ehrhart
polynomial of ``F_G(x, -sum x)``.  Points have volume 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Optional, Sequence, Tuple

from .kostant import compositions, kostant
from .lorentzian import LorentzianVerdict, Matrix, build_K_matrix, is_lorentzian_normalized
from .multigraph import Multigraph, proof_graph, sink_structure
from .polyalg import (
    Polynomial,
    coefficient_shift,
    denormalize,
    formal_derivative,
    normalize,
    substitute_nonneg_matrix,
)


@dataclass(frozen=True)
class VolumePolynomial:
    poly: Polynomial
    graph: Multigraph
    out: Tuple[int, ...]

    def __call__(self, *x) -> Fraction:
        return self.poly(*x)


def _dominates(j: Sequence[int], out: Sequence[int]) -> bool:
    sj = so = 0
    for a, b in zip(j, out):
        sj += a
        so += b
        if sj < so:
            return False
    return True


def volume_polynomial(
    g: Multigraph,
    lower: Optional[Sequence[int]] = None,
    support: Optional[Sequence[int]] = None,
) -> VolumePolynomial:
    """``sum_j K_G(j - out, 0) x^j / j!`` over weak compositions ``j`` of
    ``|E| - n`` dominating ``out``.

    ``lower`` and ``support`` (1-based variable indices) restrict the sum to
    exponents ``j >= lower`` whose excess ``j - lower`` lives on ``support``:
    exactly the terms that survive differentiating by ``lower`` and then
    zeroing the variables outside ``support``.
    """
    g.require_unique_sink()
    n = g.n
    out = tuple(g.outdegree(i) - 1 for i in range(1, n + 1))
    deg = len(g.edges) - n
    labels = [f"x_{i}" for i in range(1, n + 1)]
    if lower is None:
        lower = (0,) * n
        support = list(range(1, n + 1))
    elif support is None:
        support = list(range(1, n + 1))
    lower = tuple(int(v) for v in lower)
    if len(lower) != n or min(lower, default=0) < 0:
        raise ValueError("lower bound must be a nonnegative vector of length n")
    cols = [i - 1 for i in support]
    terms = {}
    excess = deg - sum(lower)
    if excess >= 0:
        for part in compositions(excess, len(cols)):
            j = list(lower)
            for c, v in zip(cols, part):
                j[c] += v
            if not _dominates(j, out):
                continue
            k = kostant(g, [ji - oi for ji, oi in zip(j, out)] + [0])
            if k:
                terms[tuple(j)] = Fraction(k, prod(factorial(v) for v in j))
    return VolumePolynomial(Polynomial(labels, terms), g, out)


def volume_lorentzian_check(g: Multigraph) -> LorentzianVerdict:
    """Lorentzian check on the volume polynomial, which is already normalized."""
    return is_lorentzian_normalized(denormalize(volume_polynomial(g).poly))


def ehrhart_volume_oracle(g: Multigraph, x: Sequence[int]) -> Fraction:
    """Leading Ehrhart coefficient of ``F_G(x, -sum x)`` by exact finite
    differences of the dilation counts ``t = 0 .. dim``."""
    x = tuple(int(v) for v in x)
    if len(x) != g.n or min(x, default=1) <= 0:
        raise ValueError("x must be a positive integer vector of length n")
    netflow = list(x) + [-sum(x)]
    if kostant(g, netflow) == 0:
        return Fraction(0)
    dim = len(g.edges) - g.n
    counts = [kostant(g, [t * v for v in netflow]) for t in range(dim + 1)]
    for _ in range(dim):
        counts = [b - a for a, b in zip(counts, counts[1:])]
    return Fraction(counts[0], factorial(dim))


def flipped_shift(g: Multigraph, a: Sequence[int], efd: Sequence[int]) -> Tuple[int, ...]:
    """``z = (efd_n - a_n, ..., efd_1 - a_1)``."""
    n = g.n
    return tuple(efd[n - 1 - k] - a[n - 1 - k] for k in range(n))


def hessian_via_volume(g: Multigraph, a: Sequence[int], efd: Sequence[int]) -> Matrix:
    """Rebuild the order-reversed Kostant matrix of a sink-simple graph as the
    Hessian of a differentiated, coordinate-restricted volume polynomial.

    ``efd`` is an escaping-flow vector of length ``n`` (zero off ``T_G``) with
    ``sum(efd) = sum(a_i) - 2``.  The result is indexed by ``n+1-t`` for
    ``t`` in ``T_G``, ascending.
    """
    g.require_unique_sink()
    sink = sink_structure(g)
    if len(sink.S) != len(sink.T):
        raise ValueError("graph must have at most one edge from each vertex to the sink")
    n = g.n
    a = tuple(int(v) for v in a)
    efd = tuple(int(v) for v in efd)
    if len(a) != n + 1 or len(efd) != n:
        raise ValueError("netflow must have length n+1 and efd length n")
    if min(efd) < 0 or any(efd[i - 1] for i in range(1, n + 1) if i not in sink.T):
        raise ValueError("efd must be nonnegative and supported on T_G")
    if sum(efd) != sum(a[:n]) - 2:
        raise ValueError("efd must sum to sum(a_i) - 2")

    pg = proof_graph(g, flipped_shift(g, a, efd))
    shift = [zt + ot for zt, ot in zip(pg.z_tilde, pg.o_tilde)]
    if min(shift) < 0:
        raise ArithmeticError("z~ + o~ has a negative entry")
    keep = sorted(n + 1 - t for t in sink.T)

    vol = volume_polynomial(pg.graph, lower=shift, support=keep).poly
    f = denormalize(vol)
    for i, s in enumerate(shift):
        for _ in range(s):
            f = coefficient_shift(f, i)
    derivative = normalize(f)
    A = [[1 if (r == c and r + 1 in keep) else 0 for c in range(pg.N)] for r in range(pg.N)]
    quad = substitute_nonneg_matrix(derivative, A, derivative.variables)
    if not quad.is_zero() and (quad.degree() != 2 or not quad.is_homogeneous()):
        raise ArithmeticError("pipeline did not produce a quadratic form")
    rows = []
    for i in keep:
        di = formal_derivative(quad, i - 1)
        row = []
        for j in keep:
            h = formal_derivative(di, j - 1).coefficient((0,) * pg.N)
            if h.denominator != 1:
                raise ArithmeticError("non-integral Hessian entry")
            row.append(int(h))
        rows.append(tuple(row))
    return tuple(rows)


def reversed_K_minus(g: Multigraph, a: Sequence[int], efd: Sequence[int]) -> Matrix:
    """``P_T K^-_efd P_T`` computed directly from Kostant counts on ``G|_[n]``."""
    from .lorentzian import conjugate_antidiagonal

    sink = sink_structure(g)
    d = tuple(efd[t - 1] for t in sink.T)
    return conjugate_antidiagonal(build_K_matrix(g, a, d))
