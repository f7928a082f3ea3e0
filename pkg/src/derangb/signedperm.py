"""
Permutations of totally ordered sets and signed permutations of [n].

A ``SignedPermutation`` is stored in signed one-line notation: ``entries[i-1]``
is w(a_i), where a_i is the unique element of the ground set S with |a_i| = i.
S itself is the set of entries, so the pair (S, w) is recoverable from the
tuple alone.  For example ``(2, -1)`` has S = {-1, 2}, w(-1) = 2, w(2) = -1.

Enumeration orders are fixed so that streams are reproducible:

* ``enumerate_sn`` yields value sequences in lexicographic order.
* ``enumerate_bn`` loops over sign patterns of S first (``+`` before ``-``,
  lexicographic in 1..n), then over value permutations lexicographically.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

SN_GUARD = 12
BN_GUARD = 10


class EnumerationGuardError(ValueError):
    """Raised when an exhaustive enumeration is requested beyond its guard."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``ground`` given as the sequence (w(a_1), ..., w(a_n)).

    The order a_1 < a_2 < ... of ``ground`` is the reference order for every
    statistic.
    """

    ground: tuple[int, ...]
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "values", tuple(self.values))
        if len(set(self.ground)) != len(self.ground):
            raise ValueError(f"ground set has repeated elements: {self.ground}")
        if sorted(self.values) != sorted(self.ground):
            raise ValueError(f"{self.values} is not a rearrangement of {self.ground}")

    @classmethod
    def from_word(cls, values: Sequence[int]) -> "Permutation":
        """Permutation of the set of ``values`` under the natural order."""
        return cls(tuple(sorted(values)), tuple(values))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], ground: Sequence[int] | None = None) -> "Permutation":
        mapping = _cycles_to_map(cycles)
        if ground is None:
            ground = sorted(mapping)
        return cls(tuple(ground), tuple(mapping.get(a, a) for a in ground))

    def __len__(self):
        return len(self.ground)

    def as_map(self) -> dict[int, int]:
        return dict(zip(self.ground, self.values))

    def _rank(self) -> dict[int, int]:
        return {a: i for i, a in enumerate(self.ground)}

    def fixed_points(self) -> list[int]:
        return [a for a, v in zip(self.ground, self.values) if a == v]

    def is_derangement(self) -> bool:
        return not self.fixed_points()

    def cycle_form(self) -> tuple[tuple[int, ...], ...]:
        """Standard cycle form: largest element first, cycles by increasing largest."""
        rank = self._rank()
        cycles = _cycles(self.as_map(), key=lambda a: -rank[a])
        return tuple(sorted(cycles, key=lambda c: rank[c[0]]))

    def to_dict(self) -> dict:
        return {
            "ground": list(self.ground),
            "values": list(self.values),
            "cycles": [list(c) for c in self.cycle_form()],
        }


def _cycles_to_map(cycles: Sequence[Sequence[int]]) -> dict[int, int]:
    mapping: dict[int, int] = {}
    for cyc in cycles:
        for i, a in enumerate(cyc):
            if a in mapping:
                raise ValueError(f"element {a} repeated in cycles")
            mapping[a] = cyc[(i + 1) % len(cyc)]
    return mapping


def _cycles(mapping: dict[int, int], key) -> list[tuple[int, ...]]:
    """Cycles of ``mapping``, each rotated to start at its ``key``-minimal element."""
    seen: set[int] = set()
    out = []
    for start in mapping:
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        a = mapping[start]
        while a != start:
            cyc.append(a)
            seen.add(a)
            a = mapping[a]
        i = min(range(len(cyc)), key=lambda j: key(cyc[j]))
        out.append(tuple(cyc[i:] + cyc[:i]))
    return out


def stat_exc(p: Permutation) -> int:
    rank = p._rank()
    return sum(rank[v] > rank[a] for a, v in zip(p.ground, p.values))


def stat_iexc(p: Permutation) -> int:
    rank = p._rank()
    return sum(rank[v] < rank[a] for a, v in zip(p.ground, p.values))


def stat_des(p: Permutation) -> int:
    rank = p._rank()
    r = [rank[v] for v in p.values]
    return sum(r[i] > r[i + 1] for i in range(len(r) - 1))


def stat_asc(p: Permutation) -> int:
    rank = p._rank()
    r = [rank[v] for v in p.values]
    return sum(r[i] < r[i + 1] for i in range(len(r) - 1))


def _guard(n: int, limit: int, allow_large: bool, what: str):
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > limit and not allow_large:
        raise EnumerationGuardError(f"{what} enumeration guarded at n <= {limit}; got n = {n}")


def enumerate_sn(n: int, allow_large: bool = False) -> Iterator[Permutation]:
    _guard(n, SN_GUARD, allow_large, "S_n")
    ground = tuple(range(1, n + 1))
    for values in itertools.permutations(ground):
        yield Permutation(ground, values)


@dataclass(frozen=True)
class SignedPermutation:
    """Signed permutation in one-line notation (w(a_1), ..., w(a_n))."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if sorted(abs(e) for e in entries) != list(range(1, len(entries) + 1)) or 0 in entries:
            raise ValueError(f"{entries} is not a signed permutation")

    @classmethod
    def parse(cls, text: str) -> "SignedPermutation":
        """Parse ``"3,-1,2"`` style text (empty text is the empty permutation)."""
        text = text.strip()
        if text.startswith("[") and text.endswith("]"):
            text = text[1:-1]
        if not text:
            return cls(())
        return cls(tuple(int(tok) for tok in text.split(",")))

    @classmethod
    def from_map(cls, mapping: dict[int, int]) -> "SignedPermutation":
        n = len(mapping)
        by_abs = {abs(a): a for a in mapping}
        if sorted(by_abs) != list(range(1, n + 1)):
            raise ValueError(f"ground set {sorted(mapping)} is not a sign choice on [{n}]")
        return cls(tuple(mapping[by_abs[i]] for i in range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]]) -> "SignedPermutation":
        return cls.from_map(_cycles_to_map(cycles))

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return ",".join(str(e) for e in self.entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def ground(self) -> tuple[int, ...]:
        """(a_1, ..., a_n): the element of S with absolute value i, for each i."""
        signs = {abs(e): e for e in self.entries}
        return tuple(signs[i] for i in range(1, self.n + 1))

    def as_map(self) -> dict[int, int]:
        return dict(zip(self.ground(), self.entries))

    def cycle_form(self, convention: str = "typeB") -> tuple[tuple[int, ...], ...]:
        """Standard cycle form.

        ``typeB``: smallest element first, cycles in decreasing order of smallest.
        ``typeA``: largest element first, cycles in increasing order of largest,
        both with respect to the natural order on the integers.
        """
        mapping = self.as_map()
        if convention == "typeB":
            cycles = _cycles(mapping, key=lambda a: a)
            return tuple(sorted(cycles, key=lambda c: -c[0]))
        if convention == "typeA":
            cycles = _cycles(mapping, key=lambda a: -a)
            return tuple(sorted(cycles, key=lambda c: c[0]))
        raise ValueError(f"unknown convention {convention!r}")

    def to_json(self) -> list[int]:
        return list(self.entries)


def negate(w: SignedPermutation) -> SignedPermutation:
    """-w: ground set -S, with (-w)(-a) = -w(a)."""
    return SignedPermutation(tuple(-e for e in w.entries))


def invert(w: SignedPermutation) -> SignedPermutation:
    return SignedPermutation.from_map({v: a for a, v in w.as_map().items()})


def stat_desb(w: SignedPermutation) -> int:
    return _desb(w.entries)


def stat_ascb(w: SignedPermutation) -> int:
    seq = (0,) + w.entries
    return sum(seq[i] < seq[i + 1] for i in range(len(w.entries)))


def desb_set(w: SignedPermutation) -> frozenset[int]:
    seq = (0,) + w.entries
    return frozenset(i for i in range(len(w.entries)) if seq[i] > seq[i + 1])


def stat_excb(w: SignedPermutation) -> int:
    return _excb(w.entries)


def stat_iexcb(w: SignedPermutation) -> int:
    return _iexcb(w.entries)


def is_derangement_b(w: SignedPermutation) -> bool:
    return _is_der(w.entries)


def positive_fixed_points(w: SignedPermutation) -> list[int]:
    return [i for i, e in enumerate(w.entries, 1) if e == i]


def classify(w: SignedPermutation) -> str:
    """``"Bplus"`` if the last entry is positive, else ``"Bminus"``."""
    if not w.entries:
        raise ValueError("classify is undefined for n = 0")
    return "Bplus" if w.entries[-1] > 0 else "Bminus"


def in_bstar(w: SignedPermutation) -> bool:
    """True iff w(m_w) > 0, m_w being the least element of S."""
    if not w.entries:
        raise ValueError("in_bstar is undefined for n = 0")
    return _in_bstar(w.entries)


# Tuple-level kernels shared by the object API and the bulk aggregators.


def _desb(e: tuple[int, ...]) -> int:
    prev, count = 0, 0
    for v in e:
        if prev > v:
            count += 1
        prev = v
    return count


def _signs_of(e: tuple[int, ...]) -> list[int]:
    """signs[i] = a_i, the ground element of absolute value i (index 0 unused)."""
    a = [0] * (len(e) + 1)
    for v in e:
        a[abs(v)] = v
    return a


def _excb(e: tuple[int, ...]) -> int:
    a = _signs_of(e)
    count = 0
    for i, v in enumerate(e, 1):
        ai = a[i]
        if v > ai or (ai < 0 and v == ai):
            count += 1
    return count


def _iexcb(e: tuple[int, ...]) -> int:
    a = _signs_of(e)
    count = 0
    for i, v in enumerate(e, 1):
        ai = a[i]
        if v < ai or (ai < 0 and v == ai):
            count += 1
    return count


def _is_der(e: tuple[int, ...]) -> bool:
    return all(v != i for i, v in enumerate(e, 1))


def _in_bstar(e: tuple[int, ...]) -> bool:
    m = min(e)
    return e[abs(m) - 1] > 0


def sign_patterns(n: int) -> Iterator[tuple[int, ...]]:
    """Sign choices (eps_1, ..., eps_n) for the ground set, ``+1`` first."""
    return itertools.product((1, -1), repeat=n)


def _bn_entries(n: int, signs: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    patterns = [tuple(signs)] if signs is not None else sign_patterns(n)
    perms = list(itertools.permutations(range(1, n + 1)))
    for eps in patterns:
        for p in perms:
            yield tuple(eps[v - 1] * v for v in p)


def enumerate_bn(n: int, allow_large: bool = False) -> Iterator[SignedPermutation]:
    _guard(n, BN_GUARD, allow_large, "B_n")
    for e in _bn_entries(n):
        yield SignedPermutation(e)


def _count_into(counter: dict, key: str, k: int):
    bucket = counter.setdefault(key, [])
    if len(bucket) <= k:
        bucket.extend([0] * (k + 1 - len(bucket)))
    bucket[k] += 1


def _bn_partition_stats(n: int, signs: tuple[int, ...]) -> dict[str, list[int]]:
    out: dict[str, list[int]] = {}
    for e in _bn_entries(n, signs):
        d = _desb(e)
        exc = _excb(e)
        iexc = _iexcb(e)
        _count_into(out, "desB", d)
        # entries are distinct and nonzero, so every position is an ascent or a descent
        _count_into(out, "ascB", n - d)
        _count_into(out, "excB", exc)
        _count_into(out, "iexcB", iexc)
        if n and e[-1] > 0:
            _count_into(out, "Bplus", d)
        elif n:
            _count_into(out, "Bminus", d)
        if _is_der(e):
            _count_into(out, "dB_exc", exc)
            _count_into(out, "dB_iexc", iexc)
            if n and _in_bstar(e):
                _count_into(out, "fplus", exc)
            elif n:
                _count_into(out, "fminus", exc)
    return out


def bn_statistics(n: int, jobs: int = 1, allow_large: bool = False) -> dict[str, list[int]]:
    """Coefficient lists of the statistic-generating polynomials over B_n.

    Keys: desB, ascB, excB, iexcB (all of B_n); Bplus, Bminus (desB over
    positive / negative last entry); dB_exc, dB_iexc (derangements);
    fplus, fminus (excB over derangements in / outside B*_n).
    The work is split by sign pattern; the sums commute so ``jobs`` does not
    affect the result.
    """
    _guard(n, BN_GUARD, allow_large, "B_n")
    patterns = list(sign_patterns(n))
    if jobs > 1 and n >= 5:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_bn_partition_stats, [n] * len(patterns), patterns))
    else:
        parts = [_bn_partition_stats(n, eps) for eps in patterns]
    total: dict[str, list[int]] = {}
    for part in parts:
        for key, counts in part.items():
            bucket = total.setdefault(key, [])
            if len(bucket) < len(counts):
                bucket.extend([0] * (len(counts) - len(bucket)))
            for k, c in enumerate(counts):
                bucket[k] += c
    return total


def sn_statistics(n: int, allow_large: bool = False) -> dict[str, list[int]]:
    """Coefficient lists for des, asc, exc, iexc over S_n and exc over derangements."""
    _guard(n, SN_GUARD, allow_large, "S_n")
    out: dict[str, list[int]] = {}
    for p in itertools.permutations(range(1, n + 1)):
        des = sum(p[i] > p[i + 1] for i in range(n - 1))
        asc = n - 1 - des if n else 0
        exc = sum(v > i for i, v in enumerate(p, 1))
        iexc = sum(v < i for i, v in enumerate(p, 1))
        _count_into(out, "des", des)
        _count_into(out, "asc", asc)
        _count_into(out, "exc", exc)
        _count_into(out, "iexc", iexc)
        if all(v != i for i, v in enumerate(p, 1)):
            _count_into(out, "d_exc", exc)
    return out
