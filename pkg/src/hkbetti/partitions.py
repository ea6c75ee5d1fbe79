"""Integer partitions and the statistics used by the partition-sum formulas."""

from functools import lru_cache
from itertools import product


class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    def __new__(cls, parts=()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if parts and parts[-1] <= 0:
            raise ValueError("partition parts must be positive")
        return super().__new__(cls, parts)

    @property
    def size(self):
        return sum(self)

    def length(self):
        return len(self)

    def multiplicity(self, k):
        return self.count(k)

    def multiplicities(self):
        m = {}
        for p in self:
            m[p] = m.get(p, 0) + 1
        return m

    def conjugate(self):
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))


@lru_cache(maxsize=None)
def _partitions(n, maxpart):
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enum_partitions(n):
    """All partitions of n in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(p) for p in _partitions(n, n)]


def partitions_upto(n):
    """Partitions of every size 0..n, grouped by size."""
    return [enum_partitions(m) for m in range(n + 1)]


def partition_count(n):
    """p(n) by Euler's pentagonal recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        s, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            s += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                s += sign * p[m - g2]
            k += 1
        p[m] = s
    return p[n]


def pairing_n(lam, mu):
    """n(lam, mu) = sum over part pairs of min(lam_i, mu_j)."""
    # via conjugates: sum_k lam'_k * mu'_k
    a = conjugate(lam)
    b = conjugate(mu)
    return sum(x * y for x, y in zip(a, b))


def conjugate(lam):
    return Partition(lam).conjugate() if not isinstance(lam, Partition) else lam.conjugate()


def length(lam):
    return len(lam)


def multiplicity(lam, k):
    return sum(1 for p in lam if p == k)


def cells_arm_leg(lam):
    """(arm, leg) for each cell (i, j), rows then columns."""
    lam = Partition(lam)
    conj = lam.conjugate()
    out = []
    for i, row in enumerate(lam):
        for j in range(row):
            out.append((row - j - 1, conj[j] - i - 1))
    return out


def partition_tuples(dims):
    """Lazy Cartesian product of per-vertex partition lists."""
    lists = [enum_partitions(d) for d in dims]
    return product(*lists)


def count_by_length(n):
    """[#{lam |- n : l(lam) = k} for k = 0..n] by the bounded-parts recurrence."""
    # p(m, k): partitions of m with exactly k parts
    table = [[0] * (n + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for m in range(1, n + 1):
        row = table[m]
        for k in range(1, m + 1):
            row[k] = table[m - 1][k - 1] + (table[m - k][k] if m - k >= k else 0)
    return table[n]
