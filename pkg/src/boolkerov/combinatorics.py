"""Partitions, permutations, and conjugacy-class combinatorics."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator

from .exactmath import InvalidInputError


class Partition:
    """An integer partition stored as a weakly decreasing tuple of positive parts.

    The textual form is "(5,3,2,2,1)"; the empty partition prints as "()".
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        ps = tuple(int(p) for p in parts)
        if any(p <= 0 for p in ps):
            raise InvalidInputError(f"partition parts must be positive: {ps}")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise InvalidInputError(f"partition parts must be weakly decreasing: {ps}")
        self.parts = ps

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(parts)

    @classmethod
    def from_cycle_lengths(cls, lengths: Iterable[int]) -> "Partition":
        return cls(sorted(lengths, reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse "(a,b,c)" or bare "a,b,c"; "()" and "" denote the empty one."""
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1].strip()
        if not s:
            return cls()
        if not re.fullmatch(r"\d+(\s*,\s*\d+)*\s*,?", s):
            raise InvalidInputError(f"cannot parse partition from {text!r}")
        return cls(int(t) for t in s.rstrip(",").split(","))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(sum(1 for p in self.parts if p > j)
                         for j in range(self.parts[0]))

    def pad_to(self, n: int) -> "Partition":
        """Append parts equal to 1 until the size reaches n."""
        if n < self.size:
            raise InvalidInputError("cannot pad to a smaller size")
        return Partition(self.parts + (1,) * (n - self.size))

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __lt__(self, other: "Partition") -> bool:
        return (self.size, self.parts) < (other.size, other.parts)

    def __hash__(self) -> int:
        return hash(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def __repr__(self) -> str:
        return f"Partition({self.parts!r})"


def enumerate_partitions(n: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of n in reverse lexicographic order, (n) first."""
    if n < 0:
        raise InvalidInputError("n must be >= 0")

    def gen(rem: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in gen(rem - first, first):
                yield (first,) + rest

    cap = n if max_part is None else max_part
    return [Partition(t) for t in gen(n, cap)]


def partitions_up_to(n: int) -> list[Partition]:
    """All partitions of 0, 1, ..., n, smaller sizes first."""
    out: list[Partition] = []
    for m in range(n + 1):
        out.extend(enumerate_partitions(m))
    return out


class Permutation:
    """A permutation of {1, ..., n} stored as its tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(x) for x in images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise InvalidInputError(f"not a permutation of 1..n: {imgs}")
        self.images = imgs

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        imgs = list(range(1, n + 1))
        for cyc in cycles:
            c = list(cyc)
            for i, a in enumerate(c):
                imgs[a - 1] = c[(i + 1) % len(c)]
        return cls(imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(i) = self(other(i))."""
        if self.degree != other.degree:
            raise InvalidInputError("composition needs equal degrees")
        return Permutation(self.images[other.images[i] - 1]
                           for i in range(self.degree))

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for i, img in enumerate(self.images):
            out[img - 1] = i + 1
        return Permutation(out)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = []
            i = start
            while not seen[i - 1]:
                seen[i - 1] = True
                cyc.append(i)
                i = self(i)
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.images!r})"


@dataclass(frozen=True)
class CycleType:
    """Cycle type of a permutation of {1..n}, fixed points included."""
    partition: Partition
    ambient: int


def cycle_type(sigma: Permutation) -> CycleType:
    lengths = [len(c) for c in sigma.cycles()]
    return CycleType(Partition.from_cycle_lengths(lengths), sigma.degree)


def reflection_length(sigma: Permutation) -> int:
    """Minimal number of transpositions whose product is sigma: n - #cycles."""
    return sigma.degree - len(sigma.cycles())


def reflection_length_of_type(pi: Partition) -> int:
    return pi.size - pi.length


def centralizer_order(pi: Partition) -> int:
    z = 1
    for part, mult in pi.multiplicities().items():
        z *= part ** mult * factorial(mult)
    return z


def conjugacy_class_size(ct: CycleType | Partition, n: int | None = None) -> int:
    """Number of permutations in S_n with the given cycle type."""
    if isinstance(ct, CycleType):
        pi, n = ct.partition, ct.ambient
    else:
        pi = ct
        if n is None:
            n = pi.size
    if pi.size != n:
        raise InvalidInputError("cycle type must be a partition of n")
    return factorial(n) // centralizer_order(pi)


def all_permutations(n: int) -> Iterator[Permutation]:
    for imgs in itertools.permutations(range(1, n + 1)):
        yield Permutation(imgs)
