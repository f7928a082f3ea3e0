"""
Abstract simplicial complexes, subdivisions and their (local) h-polynomials.

Faces are frozensets of hashable vertex labels and the empty face belongs to
every complex.  A ``Subdivision`` pairs a complex with a target complex and an
explicit carrier map on all of its faces.  All constructions here (barycentric
subdivisions, the interval complexes K_n) have carriers that are unions of
vertex carriers, which is how they are built.

The h-polynomial of a complex of dimension d - 1 is
sum_i f_{i-1} x^i (1 - x)^(d - i), counting the empty face as f_{-1} = 1.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

from .exactpoly import IntPoly, er_operator

KN_GUARD = 6


def _subsets(s) -> Iterable[frozenset]:
    s = list(s)
    for r in range(len(s) + 1):
        for c in itertools.combinations(s, r):
            yield frozenset(c)


def h_from_fvector(fvec: list[int]) -> IntPoly:
    """h-polynomial from face counts by size (fvec[0] counts the empty face)."""
    d = len(fvec) - 1
    out = IntPoly()
    one_minus_x = IntPoly((1, -1))
    for i, f in enumerate(fvec):
        if f:
            out = out + (one_minus_x ** (d - i)).shift(i) * f
    return out


def _trim(fvec: list[int]) -> list[int]:
    while len(fvec) > 1 and not fvec[-1]:
        fvec.pop()
    return fvec


class SimplicialComplex:
    """A finite abstract simplicial complex, stored as its full face set."""

    __slots__ = ("faces", "_facets", "_vertices")

    def __init__(self, faces: Iterable[Iterable[Hashable]]):
        fs = {frozenset(f) for f in faces}
        fs.add(frozenset())
        for f in list(fs):
            for v in f:
                if f - {v} not in fs:
                    raise ValueError(f"face set is not closed under subsets at {set(f)}")
        self.faces = frozenset(fs)
        self._facets = None
        self._vertices = None

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]]) -> "SimplicialComplex":
        faces = set()
        for facet in facets:
            faces.update(_subsets(facet))
        return cls(faces)

    @classmethod
    def simplex(cls, vertices: Iterable[Hashable]) -> "SimplicialComplex":
        return cls.from_facets([list(vertices)])

    @property
    def vertices(self) -> frozenset:
        if self._vertices is None:
            self._vertices = frozenset(v for f in self.faces for v in f)
        return self._vertices

    @property
    def facets(self) -> frozenset:
        if self._facets is None:
            covered = set()
            for f in self.faces:
                for v in f:
                    covered.add(f - {v})
            self._facets = frozenset(f for f in self.faces if f not in covered)
        return self._facets

    def __contains__(self, face) -> bool:
        return frozenset(face) in self.faces

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.faces == other.faces

    def __hash__(self):
        return hash(self.faces)

    def __repr__(self):
        return f"SimplicialComplex(vertices={len(self.vertices)}, facets={len(self.facets)})"

    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def is_simplex(self) -> bool:
        return len(self.facets) == 1

    def fvector(self) -> list[int]:
        """Face counts by number of vertices, starting with the empty face."""
        out = [0] * (self.dimension() + 2)
        for f in self.faces:
            out[len(f)] += 1
        return out

    def h_polynomial(self) -> IntPoly:
        return h_from_fvector(self.fvector())

    def relabel(self, mapping) -> "SimplicialComplex":
        get = mapping.__getitem__ if not callable(mapping) else mapping
        return SimplicialComplex(frozenset(get(v) for v in f) for f in self.faces)


def h_polynomial(c: SimplicialComplex) -> IntPoly:
    """
    >>> h_polynomial(SimplicialComplex.from_facets([[1, 2], [2, 3], [1, 3]]))
    IntPoly([1, 1, 1])
    """
    return c.h_polynomial()


def join(c1: SimplicialComplex, c2: SimplicialComplex) -> SimplicialComplex:
    if c1.vertices & c2.vertices:
        raise ValueError("join needs disjoint vertex sets")
    return SimplicialComplex(f | g for f in c1.faces for g in c2.faces)


def join_h_check(c1: SimplicialComplex, c2: SimplicialComplex) -> bool:
    return join(c1, c2).h_polynomial() == c1.h_polynomial() * c2.h_polynomial()


def link(c: SimplicialComplex, face) -> SimplicialComplex:
    face = frozenset(face)
    if face not in c.faces:
        raise ValueError(f"{set(face)} is not a face")
    return SimplicialComplex(g - face for g in c.faces if face <= g)


# ---------------------------------------------------------------------------
# posets


class Poset:
    """A finite poset given by its elements and a ``leq`` predicate."""

    def __init__(self, elements: Iterable[Hashable], leq: Callable[[Hashable, Hashable], bool]):
        self.elements = tuple(elements)
        self.leq = leq
        self.above = {
            a: frozenset(b for b in self.elements if b != a and leq(a, b)) for a in self.elements
        }
        for a in self.elements:
            for b in self.above[a]:
                if a in self.above[b]:
                    raise ValueError(f"leq is not antisymmetric at {a!r}, {b!r}")

    def __len__(self):
        return len(self.elements)

    def less(self, a, b) -> bool:
        return b in self.above[a]

    def chains(self) -> Iterable[tuple]:
        """Every chain (including the empty one), listed bottom-up."""
        yield ()
        stack = [(a,) for a in self.elements]
        while stack:
            chain = stack.pop()
            yield chain
            for b in self.above[chain[-1]]:
                stack.append(chain + (b,))

    def covers(self) -> list[tuple]:
        out = []
        for a in self.elements:
            for b in self.above[a]:
                if not any(b in self.above[c] for c in self.above[a]):
                    out.append((a, b))
        return out


def order_complex(p: Poset) -> SimplicialComplex:
    return SimplicialComplex(p.chains())


def face_poset(c: SimplicialComplex) -> Poset:
    return Poset([f for f in c.faces if f], lambda a, b: a <= b)


def cubical_barycentric_poset(c: SimplicialComplex) -> Poset:
    """Nonempty closed intervals [F, G] of the face poset, ordered by inclusion.

    An interval is the pair (F, G) with F <= G; [F, G] is inside [F', G']
    when F' <= F and G <= G'.
    """
    nonempty = [f for f in c.faces if f]
    elements = [(a, b) for b in nonempty for a in nonempty if a <= b]
    return Poset(elements, lambda i, j: j[0] <= i[0] and i[1] <= j[1])


# ---------------------------------------------------------------------------
# subdivisions


@dataclass
class Subdivision:
    """A complex together with a carrier map into the faces of a target complex."""

    target: SimplicialComplex
    complex: SimplicialComplex
    carrier: dict
    _counts: dict = field(default=None, init=False, repr=False)
    _vertex_star: dict = field(default=None, init=False, repr=False)

    @classmethod
    def from_vertex_carriers(cls, target, complex_, vertex_carrier) -> "Subdivision":
        """Carrier of a face = union of the carriers of its vertices."""
        get = vertex_carrier.__getitem__ if not callable(vertex_carrier) else vertex_carrier
        vc = {v: frozenset(get(v)) for v in complex_.vertices}
        carrier = {}
        for f in complex_.faces:
            out = frozenset()
            for v in f:
                out |= vc[v]
            carrier[f] = out
        return cls(target, complex_, carrier)

    @classmethod
    def trivial(cls, target: SimplicialComplex) -> "Subdivision":
        return cls(target, target, {f: f for f in target.faces})

    def carrier_of(self, face) -> frozenset:
        face = frozenset(face)
        if face not in self.carrier:
            raise ValueError(f"{set(face)} is not a face of the subdividing complex")
        return self.carrier[face]

    def validate(self) -> bool:
        """Carrier lands in the target, is monotone, and restrictions have the right dimension."""
        for f, c in self.carrier.items():
            if c not in self.target.faces:
                return False
            for v in f:
                if not self.carrier[f - {v}] <= c:
                    return False
        for face in self.target.faces:
            if face and self.restriction_fvector(face) and len(self.restriction_fvector(face)) - 1 != len(face):
                return False
        return True

    def _carrier_counts(self) -> dict:
        if self._counts is None:
            counts: dict = {}
            for f, c in self.carrier.items():
                row = counts.setdefault(c, [])
                if len(row) <= len(f):
                    row.extend([0] * (len(f) + 1 - len(row)))
                row[len(f)] += 1
            self._counts = counts
        return self._counts

    def restriction_fvector(self, face) -> list[int]:
        face = frozenset(face)
        counts = self._carrier_counts()
        out = [0]
        if 2 ** len(face) < len(counts):
            keys = (c for c in _subsets(face) if c in counts)
        else:
            keys = (c for c in counts if c <= face)
        for c in keys:
            row = counts[c]
            if len(out) < len(row):
                out.extend([0] * (len(row) - len(out)))
            for i, v in enumerate(row):
                out[i] += v
        return _trim(out)

    def restriction(self, face) -> SimplicialComplex:
        face = frozenset(face)
        if face not in self.target.faces:
            raise ValueError(f"{set(face)} is not a face of the target")
        return SimplicialComplex(f for f, c in self.carrier.items() if c <= face)

    def restricted_subdivision(self, face) -> "Subdivision":
        """The restriction to ``face``, as a subdivision of the simplex 2^face."""
        face = frozenset(face)
        if face not in self.target.faces:
            raise ValueError(f"{set(face)} is not a face of the target")
        carrier = {f: c for f, c in self.carrier.items() if c <= face}
        return Subdivision(SimplicialComplex.simplex(face), SimplicialComplex(carrier), carrier)

    def h_restriction(self, face) -> IntPoly:
        return h_from_fvector(self.restriction_fvector(face))

    def star(self, face) -> list[frozenset]:
        face = frozenset(face)
        if face not in self.carrier:
            raise ValueError(f"{set(face)} is not a face of the subdividing complex")
        if not face:
            return list(self.carrier)
        if self._vertex_star is None:
            vs: dict = {}
            for f in self.carrier:
                for v in f:
                    vs.setdefault(v, []).append(f)
            self._vertex_star = vs
        pivot = min(face, key=lambda v: len(self._vertex_star[v]))
        return [f for f in self._vertex_star[pivot] if face <= f]


def _simplex_vertices(s: Subdivision) -> frozenset:
    if not s.target.is_simplex():
        raise ValueError("target is not a simplex")
    return next(iter(s.target.facets))


def local_h(s: Subdivision) -> IntPoly:
    """sum_{F subset V} (-1)^(|V| - |F|) h(Gamma_F), for a subdivision of the simplex 2^V."""
    V = _simplex_vertices(s)
    out = IntPoly()
    for F in _subsets(V):
        term = s.h_restriction(F)
        out = out + (term if (len(V) - len(F)) % 2 == 0 else -term)
    return out


def local_h_at(s: Subdivision, face) -> IntPoly:
    """Local h-polynomial of the restriction of s to a face of its target."""
    face = frozenset(face)
    if face not in s.target.faces:
        raise ValueError(f"{set(face)} is not a face of the target")
    out = IntPoly()
    for F in _subsets(face):
        term = s.h_restriction(F)
        out = out + (term if (len(face) - len(F)) % 2 == 0 else -term)
    return out


def relative_local_h(s: Subdivision, E) -> IntPoly:
    """sum over carrier(E) <= F <= V of (-1)^(|V| - |F|) h(link of E in Gamma_F)."""
    V = _simplex_vertices(s)
    E = frozenset(E)
    star = s.star(E)
    carrier_e = s.carrier[E]
    rest = V - carrier_e
    out = IntPoly()
    for extra in _subsets(rest):
        F = carrier_e | extra
        fvec = [0]
        for g in star:
            if s.carrier[g] <= F:
                k = len(g) - len(E)
                if len(fvec) <= k:
                    fvec.extend([0] * (k + 1 - len(fvec)))
                fvec[k] += 1
        term = h_from_fvector(_trim(fvec))
        out = out + (term if (len(V) - len(F)) % 2 == 0 else -term)
    return out


def compose(outer: Subdivision, inner: Subdivision) -> Subdivision:
    """inner subdivides outer.complex; the result subdivides outer.target."""
    if inner.target.faces != outer.complex.faces:
        raise ValueError("subdivisions are not composable")
    carrier = {f: outer.carrier[c] for f, c in inner.carrier.items()}
    return Subdivision(outer.target, inner.complex, carrier)


def decomposition_sides(gamma: Subdivision, gamma_prime: Subdivision) -> tuple[IntPoly, IntPoly]:
    """Both sides of l_V(Gamma') = sum_{E in Gamma} l_E(Gamma'_E) l_V(Gamma, E)."""
    lhs = local_h(compose(gamma, gamma_prime))
    rhs = IntPoly()
    for E in gamma.complex.faces:
        left = local_h_at(gamma_prime, E)
        if left.is_zero():
            continue
        rhs = rhs + left * relative_local_h(gamma, E)
    return lhs, rhs


def decomposition_formula_check(gamma: Subdivision, gamma_prime: Subdivision) -> bool:
    lhs, rhs = decomposition_sides(gamma, gamma_prime)
    return lhs == rhs


def h_formula_sides(s: Subdivision) -> tuple[IntPoly, IntPoly]:
    """Both sides of h(D') = sum_{F in D} l_F(D'_F) h(lk_D F)."""
    if not s.target.is_pure():
        raise ValueError("target is not pure")
    rhs = IntPoly()
    for F in s.target.faces:
        rhs = rhs + local_h_at(s, F) * link(s.target, F).h_polynomial()
    return s.complex.h_polynomial(), rhs


def h_formula_check(s: Subdivision) -> bool:
    lhs, rhs = h_formula_sides(s)
    return lhs == rhs


def barycentric_subdivision(c: SimplicialComplex) -> Subdivision:
    """sd(c): chains of nonempty faces, each carried by its largest element."""
    complex_ = order_complex(face_poset(c))
    return Subdivision.from_vertex_carriers(c, complex_, lambda v: v)


def edgewise_h(h, d: int, r: int) -> IntPoly:
    """E_r((1 + x + ... + x^(r-1))^d h)."""
    if d < 0 or r < 1:
        raise ValueError("need d >= 0 and r >= 1")
    h = IntPoly(h) if not isinstance(h, IntPoly) else h
    return er_operator(IntPoly([1] * r) ** d * h, r)


# ---------------------------------------------------------------------------
# the interval complexes


def simplex_n(n: int) -> SimplicialComplex:
    return SimplicialComplex.simplex(range(1, n + 1))


def interval_mask(v) -> tuple[int, int]:
    """Serialize a K_n vertex (A, B) as a pair of bitmasks (bit i - 1 for element i)."""
    return tuple(sum(1 << (i - 1) for i in part) for part in v)


@dataclass
class KnComplex:
    """K_n with its two carriers: into the simplex 2^[n] and into sd(2^[n])."""

    n: int
    over_simplex: Subdivision
    over_sd: Subdivision
    sd: Subdivision

    @property
    def complex(self) -> SimplicialComplex:
        return self.over_simplex.complex

    def facet_count(self) -> int:
        return len(self.complex.facets)

    def to_dict(self) -> dict:
        facets = sorted(sorted(interval_mask(v) for v in f) for f in self.complex.facets)
        return {"n": self.n, "facets": [[list(v) for v in f] for f in facets]}


def k_n(n: int, allow_large: bool = False) -> KnComplex:
    """The order complex of the interval poset of the simplex on [n]."""
    if not 1 <= n <= KN_GUARD and not (allow_large and n >= 1):
        raise ValueError(f"K_n is built only for 1 <= n <= {KN_GUARD}")
    simplex = simplex_n(n)
    complex_ = order_complex(cubical_barycentric_poset(simplex))
    sd = barycentric_subdivision(simplex)
    over_simplex = Subdivision.from_vertex_carriers(simplex, complex_, lambda v: v[1])
    over_sd = Subdivision.from_vertex_carriers(sd.complex, complex_, lambda v: {v[0], v[1]})
    return KnComplex(n, over_simplex, over_sd, sd)


def interval_chain_subdivision(d: int) -> Subdivision:
    """Chains of intervals [i, j] of 1 < ... < d, carried by their endpoint sets."""
    elements = [(i, j) for i in range(1, d + 1) for j in range(i, d + 1)]
    poset = Poset(elements, lambda a, b: b[0] <= a[0] and a[1] <= b[1])
    return Subdivision.from_vertex_carriers(simplex_n(d), order_complex(poset), lambda v: {v[0], v[1]})


def sd_face_to_interval_map(E) -> dict:
    """Vertex map from the restriction of K_n (over sd) at a chain E to the interval complex."""
    chain = sorted(E, key=len)
    index = {s: i for i, s in enumerate(chain, 1)}
    return lambda v: (index[v[0]], index[v[1]])


def chain_gaps(E, n: int) -> tuple[int, tuple[int, ...]]:
    """(r_0; r_1, ..., r_k) for a chain S_1 < ... < S_k of subsets of [n]."""
    chain = sorted(E, key=len)
    prev, gaps = frozenset(), []
    for s in chain:
        gaps.append(len(s - prev))
        prev = s
    return n - len(prev), tuple(gaps)


def lemma63_expected(k: int) -> IntPoly:
    """x^(k/2) for even k and 0 for odd k."""
    return IntPoly.monomial(k // 2) if k % 2 == 0 else IntPoly()


# ---------------------------------------------------------------------------
# flag vectors of P_n


def pn_poset(n: int) -> Poset:
    """Signed subsets with a positive element and at most one of each +-i, by reverse inclusion."""
    elements = []
    for signs in itertools.product((0, 1, -1), repeat=n):
        if 1 in signs:
            elements.append(frozenset(s * i for i, s in enumerate(signs, 1) if s))
    return Poset(elements, lambda a, b: b <= a)


def interval_to_pn(v, n: int) -> frozenset:
    """[A, B] -> A together with the negatives of [n] - B."""
    a, b = v
    return frozenset(a) | frozenset(-i for i in range(1, n + 1) if i not in b)


def flag_vectors(p: Poset, n: int, rank: Callable = len) -> tuple[dict, dict]:
    """Flag f-vector alpha and flag h-vector beta, indexed by subsets of [n].

    alpha(S) counts the chains whose set of ranks is exactly S.  Elements of a
    chain have distinct ranks, so consecutive comparability suffices.
    """
    by_rank: dict = {}
    for e in p.elements:
        by_rank.setdefault(rank(e), []).append(e)
    comparable = {e: p.above[e] | frozenset(x for x in p.elements if e in p.above[x]) for e in p.elements}
    alpha = {}
    for S in _subsets(range(1, n + 1)):
        ranks = sorted(S)
        if not ranks:
            alpha[S] = 1
            continue
        ways = {e: 1 for e in by_rank.get(ranks[0], [])}
        for r in ranks[1:]:
            ways = {
                e: sum(w for f, w in ways.items() if f in comparable[e])
                for e in by_rank.get(r, [])
            }
        alpha[S] = sum(ways.values())
    beta = {}
    for S in alpha:
        beta[S] = sum(
            (-1) ** (len(S) - len(T)) * alpha[T] for T in _subsets(S)
        )
    return alpha, beta


def h_from_flag_h(beta: dict, n: int) -> IntPoly:
    """h_k = sum over |S| = k of beta(S)."""
    coeffs = [0] * (n + 1)
    for S, b in beta.items():
        coeffs[len(S)] += b
    return IntPoly(coeffs)


def kn_facet_count(n: int) -> int:
    return 2 ** (n - 1) * math.factorial(n)
