"""
The correspondence between type-B derangements and permutation sequences.

A derangement w of B_n is written in type-B standard cycle form.  The leading
all-positive cycles form a derangement sigma_0 of their support S_0.  The
remaining cycles, read as one word u, split into maximal runs of constant
sign u_1 u_2 ... u_k (u_1 negative, then alternating).  Block i is the word
|u_i|, a permutation of S_i = {|a| : a in u_i} in one-line notation over the
natural order of S_i.

The inverse rebuilds u from the blocks (odd blocks negated) and cuts it into
cycles at its left-to-right minima, which are exactly the cycle leaders of a
type-B standard cycle form.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .signedperm import (
    Permutation,
    SignedPermutation,
    enumerate_sn,
    positive_fixed_points,
    stat_asc,
    stat_des,
    stat_iexc,
    stat_iexcb,
)


class NotADerangementError(ValueError):
    """Raised when a signed permutation has a positive fixed point."""

    def __init__(self, w: SignedPermutation, fixed: list[int]):
        self.w = w
        self.fixed = fixed
        super().__init__(f"{w} is not a type-B derangement: positive fixed point {fixed[0]}")


@dataclass(frozen=True)
class PermutationSeq:
    """An element (sigma_0; sigma_1, ..., sigma_k) of the target set C_n."""

    n: int
    sigma0: Permutation
    blocks: tuple[Permutation, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        parts = [set(self.sigma0.ground)] + [set(b.ground) for b in self.blocks]
        union = set().union(*parts)
        if sum(len(p) for p in parts) != len(union) or union != set(range(1, self.n + 1)):
            raise ValueError(f"blocks do not form a weak ordered partition of [{self.n}]")
        if any(not b.ground for b in self.blocks):
            raise ValueError("blocks sigma_1..sigma_k must be nonempty")
        if not self.sigma0.is_derangement():
            raise ValueError(f"sigma_0 has fixed point {self.sigma0.fixed_points()[0]}")
        for b in (self.sigma0, *self.blocks):
            if list(b.ground) != sorted(b.ground):
                raise ValueError("ground sets must carry the natural order")

    @property
    def k(self) -> int:
        return len(self.blocks)

    @classmethod
    def from_parts(cls, n: int, sigma0_cycles, blocks) -> "PermutationSeq":
        sigma0 = Permutation.from_cycles(sigma0_cycles)
        return cls(n, sigma0, tuple(Permutation.from_word(b) for b in blocks))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "sigma0": self.sigma0.to_dict(),
            "blocks": [list(b.values) for b in self.blocks],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PermutationSeq":
        s0 = data["sigma0"]
        if "values" in s0:
            sigma0 = Permutation(tuple(s0["ground"]), tuple(s0["values"]))
        else:
            sigma0 = Permutation.from_cycles(s0.get("cycles", []))
        blocks = tuple(Permutation.from_word(b) for b in data["blocks"])
        n = data.get("n")
        if n is None:
            n = len(sigma0) + sum(len(b) for b in blocks)
        return cls(n, sigma0, blocks)


def _split_runs(word: list[int]) -> list[list[int]]:
    runs: list[list[int]] = []
    for a in word:
        if runs and (runs[-1][-1] > 0) == (a > 0):
            runs[-1].append(a)
        else:
            runs.append([a])
    return runs


def phi(w: SignedPermutation) -> PermutationSeq:
    fixed = positive_fixed_points(w)
    if fixed:
        raise NotADerangementError(w, fixed)
    cycles = w.cycle_form("typeB")
    j = 0
    while j < len(cycles) and cycles[j][0] > 0:
        j += 1
    sigma0 = Permutation.from_cycles(cycles[:j])
    word = [a for cyc in cycles[j:] for a in cyc]
    blocks = tuple(Permutation.from_word([abs(a) for a in run]) for run in _split_runs(word))
    return PermutationSeq(w.n, sigma0, blocks)


def phi_inverse(c: PermutationSeq) -> SignedPermutation:
    word = []
    for i, block in enumerate(c.blocks, 1):
        sign = -1 if i % 2 else 1
        word.extend(sign * v for v in block.values)
    mapping = dict(c.sigma0.as_map())
    start = 0
    for pos in range(1, len(word) + 1):
        if pos == len(word) or word[pos] < min(word[start:pos]):
            cyc = word[start:pos]
            for i, a in enumerate(cyc):
                mapping[a] = cyc[(i + 1) % len(cyc)]
            start = pos
    return SignedPermutation.from_map(mapping)


def block_statistic(block: Permutation, i: int) -> int:
    """asc for odd-indexed blocks, des for even-indexed ones."""
    return stat_asc(block) if i % 2 else stat_des(block)


def statistic_ledger(w: SignedPermutation) -> dict:
    """Both sides of iexc_B(w) = iexc(sigma_0) + sum_i f(sigma_i) + floor((k+1)/2)."""
    c = phi(w)
    per_block = []
    for i, b in enumerate(c.blocks, 1):
        per_block.append({
            "index": i,
            "word": list(b.values),
            "stat": "asc" if i % 2 else "des",
            "value": block_statistic(b, i),
        })
    rhs = stat_iexc(c.sigma0) + sum(p["value"] for p in per_block) + (c.k + 1) // 2
    return {
        "iexcB": stat_iexcb(w),
        "iexc_sigma0": stat_iexc(c.sigma0),
        "blocks": per_block,
        "floor_term": (c.k + 1) // 2,
        "rhs": rhs,
    }


def statistic_identity_check(w: SignedPermutation) -> bool:
    ledger = statistic_ledger(w)
    return ledger["iexcB"] == ledger["rhs"]


def enumerate_cn(n: int):
    """All elements of C_n by direct construction (small n only)."""

    def ordered_set_partitions(items):
        if not items:
            yield []
            return
        for r in range(1, len(items) + 1):
            for first in itertools.combinations(items, r):
                rest = [a for a in items if a not in first]
                for tail in ordered_set_partitions(rest):
                    yield [list(first)] + tail

    ground = list(range(1, n + 1))
    for r0 in range(n + 1):
        for s0 in itertools.combinations(ground, r0):
            rest = [a for a in ground if a not in s0]
            derangements = [
                Permutation(s0, tuple(s0[i - 1] for i in p.values))
                for p in enumerate_sn(r0)
                if p.is_derangement()
            ]
            for parts in ordered_set_partitions(rest):
                block_choices = [
                    [Permutation(tuple(part), vals) for vals in itertools.permutations(part)]
                    for part in parts
                ]
                for sigma0 in derangements:
                    for blocks in itertools.product(*block_choices):
                        yield PermutationSeq(n, sigma0, blocks)
