"""Integer partitions with the combinatorial statistics used by the
generating-function sums: conjugate, the pairing sum of squared conjugate
parts, arm/leg per box, and the multiplicity encoding 1^{r_1} 2^{r_2} ... .

Box convention: the Young diagram of a partition (p_1 >= p_2 >= ...) is the
set of points (i, j) with 1 <= i <= p_j; i indexes columns within row j.  The
arm of a box counts boxes strictly to its right, the leg counts boxes
strictly above.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p < 1 for p in parts):
            raise ValueError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("partition parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        return Partition(
            tuple(
                sum(1 for p in self.parts if p > i) for i in range(self.parts[0])
            )
        )

    def pairing(self) -> int:
        """<lambda, lambda> = sum of squared conjugate parts."""
        return sum(p * p for p in self.conjugate().parts)

    def boxes(self):
        """Yield (arm, leg) for every box, row by row.

        For the box at column i of row j (1-based), the arm is the number of
        boxes to its right in row j and the leg is the number of rows j' > j
        still reaching column i.
        """
        for j, row_len in enumerate(self.parts):
            for i in range(1, row_len + 1):
                arm = row_len - i
                leg = sum(1 for p in self.parts[j + 1 :] if p >= i)
                yield arm, leg

    def multiplicities(self) -> tuple:
        """(r_1, ..., r_t) where r_i counts parts equal to i; t is the
        largest part (empty tuple for the empty partition)."""
        if not self.parts:
            return ()
        t = self.parts[0]
        counts = [0] * t
        for p in self.parts:
            counts[p - 1] += 1
        return tuple(counts)

    def prefix_counts(self) -> tuple:
        """(r_{<1}, ..., r_{<t}): number of parts of size strictly less than
        i, for each part size i."""
        mults = self.multiplicities()
        out = []
        acc = 0
        for r in mults:
            out.append(acc)
            acc += r
        return tuple(out)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


@dataclass(frozen=True)
class PartitionStats:
    """Bundle of the per-partition statistics consumed by the pipelines."""

    partition: Partition
    conjugate: Partition
    pairing: int
    boxes: tuple = field(repr=False)  # ((arm, leg), ...)
    multiplicities: tuple
    prefix_counts: tuple


def stats(p: Partition) -> PartitionStats:
    return PartitionStats(
        partition=p,
        conjugate=p.conjugate(),
        pairing=p.pairing(),
        boxes=tuple(p.boxes()),
        multiplicities=p.multiplicities(),
        prefix_counts=p.prefix_counts(),
    )


def enumerate_partitions(n: int) -> list:
    """All partitions of n, in lexicographically descending order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return out
