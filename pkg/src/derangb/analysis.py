"""
Coefficient-shape analysis of integer polynomials.

Real-rootedness is decided exactly: the polynomial is split into square-free
parts by Yun's algorithm over Q, and the distinct real roots of each part are
counted with a Sturm sequence at -oo and +oo.  No floating point is involved.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .exactpoly import IntPoly, RatPoly, _as_poly, poly_divmod, poly_gcd, reverse


class NotSymmetricError(ValueError):
    pass


def is_symmetric(p, n: int) -> bool:
    """True iff a_i = a_{n-i} for all i.  The zero polynomial is symmetric for every n."""
    p = _as_poly(p)
    if p.degree() > n:
        return False
    return reverse(p, n) == p


def symmetry_center(p) -> Fraction | None:
    """Center n/2 for the unique n making p symmetric, or None."""
    p = _as_poly(p)
    if p.is_zero():
        return None
    low = next(i for i, c in enumerate(p.coeffs) if c)
    n = low + p.degree()
    return Fraction(n, 2) if is_symmetric(p, n) else None


def _coeff_list(p) -> list:
    p = _as_poly(p)
    return list(p.coeffs) if p.coeffs else [0]


def unimodal_peaks(p) -> tuple[bool, frozenset[int]]:
    """Whether p is unimodal, together with every index that is a peak."""
    a = _coeff_list(p)
    d = len(a) - 1
    # rise[j]: a_0 <= ... <= a_j ; fall[j]: a_j >= ... >= a_d
    rise = [True] * (d + 1)
    for j in range(1, d + 1):
        rise[j] = rise[j - 1] and a[j - 1] <= a[j]
    fall = [True] * (d + 1)
    for j in range(d - 1, -1, -1):
        fall[j] = fall[j + 1] and a[j] >= a[j + 1]
    peaks = frozenset(j for j in range(d + 1) if rise[j] and fall[j])
    return bool(peaks), peaks


def is_log_concave(p) -> bool:
    a = _coeff_list(p)
    return all(a[i] * a[i] >= a[i - 1] * a[i + 1] for i in range(1, len(a) - 1))


def has_internal_zeros(p) -> bool:
    a = _coeff_list(p)
    nz = [i for i, c in enumerate(a) if c]
    if not nz:
        return False
    return any(not a[j] for j in range(nz[0], nz[-1] + 1))


@dataclass(frozen=True)
class GammaVector:
    """Coefficients gamma_i with p(x) = sum_i gamma_i x^i (1+x)^(n-2i)."""

    n: int
    gammas: tuple[int, ...]

    def as_poly(self) -> IntPoly:
        return IntPoly(self.gammas)

    def reconstruct(self) -> IntPoly:
        out = IntPoly()
        one_plus_x = IntPoly((1, 1))
        for i, g in enumerate(self.gammas):
            if g:
                out = out + (one_plus_x ** (self.n - 2 * i)).shift(i) * g
        return out

    def is_nonnegative(self) -> bool:
        return all(g >= 0 for g in self.gammas)


def gamma_extract(p, n: int) -> GammaVector:
    """Expand a polynomial symmetric about n/2 in the basis x^i (1+x)^(n-2i)."""
    p = _as_poly(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not is_symmetric(p, n):
        raise NotSymmetricError(f"{p} is not symmetric with respect to n = {n}")
    rest = p
    gammas = []
    one_plus_x = type(p)((1, 1))
    for i in range(n // 2 + 1):
        g = rest[i]
        gammas.append(g)
        if g:
            rest = rest - (one_plus_x ** (n - 2 * i)).shift(i) * g
    if not rest.is_zero():
        raise NotSymmetricError(f"{p} has no gamma expansion for n = {n}")
    if isinstance(p, RatPoly):
        return GammaVector(n, tuple(gammas))
    return GammaVector(n, tuple(int(g) for g in gammas))


def _sign_at_inf(p: RatPoly, positive: bool) -> int:
    lead = p.coeffs[-1]
    s = 1 if lead > 0 else -1
    if not positive and p.degree() % 2:
        s = -s
    return s


def _sign_changes(signs: list[int]) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_sequence(p) -> list[RatPoly]:
    p = RatPoly(_as_poly(p).coeffs)
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree() > 0:
        seq.append(-poly_divmod(seq[-2], seq[-1])[1])
    return [q for q in seq if not q.is_zero()]


def count_distinct_real_roots(p) -> int:
    """Number of distinct real roots of a nonzero polynomial (Sturm's theorem)."""
    p = RatPoly(_as_poly(p).coeffs)
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree() == 0:
        return 0
    seq = sturm_sequence(p)
    minus = _sign_changes([_sign_at_inf(q, False) for q in seq])
    plus = _sign_changes([_sign_at_inf(q, True) for q in seq])
    return minus - plus


def squarefree_decomposition(p) -> list[tuple[RatPoly, int]]:
    """Yun's algorithm: pairs (q_i, i) with p = c * prod q_i^i, q_i square-free and coprime."""
    p = RatPoly(_as_poly(p).coeffs)
    if p.degree() < 1:
        return []
    out = []
    a = poly_gcd(p, p.derivative())
    b = poly_divmod(p, a)[0]
    c = poly_divmod(p.derivative(), a)[0]
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        g = poly_gcd(b, d)
        if g.degree() > 0:
            out.append((g, i))
        b = poly_divmod(b, g)[0]
        c = poly_divmod(d, g)[0]
        d = c - b.derivative()
        i += 1
    return out


def real_root_count(p) -> int:
    """Real roots of p counted with multiplicity."""
    return sum(mult * count_distinct_real_roots(q) for q, mult in squarefree_decomposition(p))


def sturm_real_rooted(p) -> bool:
    p = _as_poly(p)
    if p.is_zero():
        raise ValueError("real-rootedness is undefined for the zero polynomial")
    return real_root_count(p) == p.degree()


def _det(m: list[list[int]]) -> int:
    """Bareiss fraction-free determinant."""
    m = [row[:] for row in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def toeplitz_minors(p, order: int):
    """Yield (rows, cols, minor) for all minors of size <= order of (a_{i-j})."""
    a = _coeff_list(p)
    width = len(a) - 1 + order
    mat = [[a[i - j] if 0 <= i - j < len(a) else 0 for j in range(width)] for i in range(width)]
    for size in range(1, order + 1):
        for rows in itertools.combinations(range(width), size):
            for cols in itertools.combinations(range(width), size):
                yield rows, cols, _det([[mat[r][c] for c in cols] for r in rows])


def toeplitz_minor_check(p, order: int) -> bool:
    """Necessary condition for real-rootedness: all Toeplitz minors up to ``order`` are >= 0.

    A ``True`` answer never certifies real-rootedness; a ``False`` answer refutes it.
    """
    a = _coeff_list(p)
    if any(c < 0 for c in a):
        raise ValueError("toeplitz_minor_check needs nonnegative coefficients")
    if order > 6:
        raise ValueError("order is guarded at 6")
    return all(m >= 0 for _, _, m in toeplitz_minors(p, order))


def first_negative_minor(p, order: int):
    return next(((r, c, m) for r, c, m in toeplitz_minors(p, order) if m < 0), None)


@dataclass
class ShapeReport:
    coeffs: list[str]
    symmetric: bool
    center: str | None
    unimodal: bool
    peaks: list[int]
    log_concave: bool
    internal_zeros: bool
    gamma_nonnegative: bool | None = None
    gamma: list[str] | None = None
    real_rooted: bool | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def shape_report(p, gamma_n: int | None = None) -> ShapeReport:
    """Collect every shape property of p.

    ``gamma_n`` fixes the symmetry degree used for the gamma expansion; by
    default the natural center of p is used.
    """
    p = _as_poly(p)
    center = symmetry_center(p)
    uni, peaks = unimodal_peaks(p)
    notes = []
    if p.is_zero():
        notes.append("zero polynomial: symmetric for every n, center undefined")
    gamma = gamma_nonneg = None
    if gamma_n is None and center is not None:
        gamma_n = int(2 * center)
    if gamma_n is not None and is_symmetric(p, gamma_n):
        gv = gamma_extract(p, gamma_n)
        gamma = [str(g) for g in gv.gammas]
        gamma_nonneg = gv.is_nonnegative()
    real = sturm_real_rooted(p) if not p.is_zero() else None
    report = ShapeReport(
        coeffs=[str(c) for c in p.coeffs],
        symmetric=p.is_zero() or center is not None,
        center=None if center is None else str(center),
        unimodal=uni,
        peaks=sorted(peaks),
        log_concave=is_log_concave(p),
        internal_zeros=has_internal_zeros(p),
        gamma_nonnegative=gamma_nonneg,
        gamma=gamma,
        real_rooted=real,
        notes=notes,
    )
    if real and all(c >= 0 for c in p.coeffs):
        # real roots with nonnegative coefficients force the weaker shape properties
        assert report.log_concave and report.unimodal and not report.internal_zeros, report
    return report
