"""
Finitely generated abelian groups in invariant-factor form, Smith normal
form with a checkable certificate, and the torsion obstruction to full
exceptional collections.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from fanosod import linalg


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ M @ right == diag(diagonal)`` with ``left``, ``right`` unimodular."""

    diagonal: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    def verify(self, matrix: Sequence[Sequence[int]]) -> bool:
        m = len(matrix)
        n = len(matrix[0]) if m else 0
        if abs(linalg.determinant(self.left)) != 1 or abs(linalg.determinant(self.right)) != 1:
            return False
        prod = linalg.matmul(linalg.matmul(self.left, matrix), self.right) if m and n else []
        for i in range(m):
            for j in range(n):
                want = self.diagonal[i] if i == j else 0
                if prod[i][j] != want:
                    return False
        d = self.diagonal
        for a, b in zip(d, d[1:]):
            if a == 0 and b != 0:
                return False
            if a and b % a:
                return False
        return True


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithDecomposition:
    """
    Smith normal form by gcd-driven elimination with explicit pivots.

    The diagonal has ``min(rows, cols)`` entries, non-negative, each dividing
    the next, zeros last.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    U = linalg.identity(m)
    V = linalg.identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(t, i, -q)
                dirty |= a[i][t] != 0
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(t, j, -q)
                dirty |= a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]

    diag = tuple(a[i][i] for i in range(min(m, n)))
    return SmithDecomposition(diag, tuple(map(tuple, U)), tuple(map(tuple, V)))


def invariant_factors(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return smith_normal_form(matrix).diagonal


@dataclass(frozen=True)
class FgAbGroup:
    """``Z^rank (+) Z/d1 (+) ... (+) Z/dk`` with ``1 < d1 | d2 | ... | dk``."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("invariant factors must exceed 1")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")

    @classmethod
    def from_cyclic_orders(cls, rank: int, orders: Sequence[int]) -> "FgAbGroup":
        """Normalize ``Z^rank (+) Z/o1 (+) Z/o2 ...`` for arbitrary positive orders."""
        orders = [o for o in orders if o != 1]
        if any(o <= 0 for o in orders):
            raise ValueError("cyclic orders must be positive")
        if not orders:
            return cls(rank)
        k = len(orders)
        diag = [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
        return cls(rank, tuple(d for d in invariant_factors(diag) if d > 1))

    @classmethod
    def cokernel(cls, relations: Sequence[Sequence[int]], generators: int | None = None) -> "FgAbGroup":
        """``Z^n`` modulo the row span of ``relations``."""
        if not relations:
            if generators is None:
                raise ValueError("cokernel of no relations needs a generator count")
            return cls(generators)
        n = generators if generators is not None else len(relations[0])
        diag = invariant_factors(relations)
        nonzero = [d for d in diag if d]
        return cls(n - len(nonzero), tuple(d for d in nonzero if d > 1))

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank)

    def is_torsion_free(self) -> bool:
        return not self.torsion

    def __add__(self, other: "FgAbGroup") -> "FgAbGroup":
        return direct_sum(self, other)

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " (+) ".join(parts) if parts else "0"


def direct_sum(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    return FgAbGroup.from_cyclic_orders(a.rank + b.rank, a.torsion + b.torsion)


@dataclass(frozen=True)
class Obstructed:
    factor: int

    def __str__(self) -> str:
        return f"Obstructed({self.factor})"

    def explain(self) -> str:
        return (
            f"K0 has a Z/{self.factor} summand; a full exceptional collection would "
            "force K0 to be free, so none exists"
        )


@dataclass(frozen=True)
class NoObstruction:
    def __str__(self) -> str:
        return "NoObstruction"

    def explain(self) -> str:
        return "no obstruction from K0 torsion (this does not prove a full exceptional collection exists)"


def fec_obstruction(g: FgAbGroup) -> Obstructed | NoObstruction:
    if g.torsion:
        return Obstructed(g.torsion[0])
    return NoObstruction()
