r"""
Hodge diamonds and the additive calculus used to assemble them.

A diamond is stored as the full square table ``h[p][q]`` for
``0 <= p, q <= dim``.  Printing folds it into the familiar shape, with
row ``p + q`` running from ``2 dim`` at the top down to ``0``::

            h^{2,2}
        h^{2,1}  h^{1,2}
    h^{2,0}  h^{1,1}  h^{0,2}
        h^{1,0}  h^{0,1}
            h^{0,0}

Two kinds of table flow through this module.  Diamonds of connected
smooth projective varieties satisfy Hodge symmetry, Serre duality and
``h^{0,0} = 1``; those are flagged ``connected=True`` and validated on
construction.  Shifted summands (Tate twists placed inside a larger table)
generally violate Serre duality on their own, so they carry no flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class HodgeError(ValueError):
    pass


@dataclass(frozen=True)
class HodgeDiamond:
    dim: int
    h: tuple[tuple[int, ...], ...]
    connected: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.dim < 0:
            raise HodgeError(f"negative dimension {self.dim}")
        n = self.dim + 1
        if len(self.h) != n or any(len(row) != n for row in self.h):
            raise HodgeError(f"table must be {n}x{n} for dimension {self.dim}")
        if any(x < 0 for row in self.h for x in row):
            raise HodgeError("Hodge numbers must be non-negative")
        if self.connected:
            if not self.has_hodge_symmetry():
                raise HodgeError("Hodge symmetry h^{p,q} = h^{q,p} fails")
            if not self.has_serre_duality():
                raise HodgeError("Serre duality h^{p,q} = h^{n-p,n-q} fails")
            if self.h[0][0] != 1:
                raise HodgeError("connected variety needs h^{0,0} = 1")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], connected: bool = False) -> "HodgeDiamond":
        table = tuple(tuple(int(x) for x in row) for row in rows)
        return cls(len(table) - 1, table, connected)

    @classmethod
    def diagonal(cls, values: Sequence[int], connected: bool = True) -> "HodgeDiamond":
        """Diamond with ``values[p]`` at ``(p, p)`` and zeros elsewhere."""
        n = len(values)
        rows = [[values[p] if p == q else 0 for q in range(n)] for p in range(n)]
        return cls.from_matrix(rows, connected=connected)

    @classmethod
    def zero(cls, dim: int) -> "HodgeDiamond":
        return cls.from_matrix([[0] * (dim + 1) for _ in range(dim + 1)])

    def __getitem__(self, pq: tuple[int, int]) -> int:
        p, q = pq
        if 0 <= p <= self.dim and 0 <= q <= self.dim:
            return self.h[p][q]
        return 0

    def has_hodge_symmetry(self) -> bool:
        n = self.dim
        return all(self.h[p][q] == self.h[q][p] for p in range(n + 1) for q in range(n + 1))

    def has_serre_duality(self) -> bool:
        n = self.dim
        return all(
            self.h[p][q] == self.h[n - p][n - q] for p in range(n + 1) for q in range(n + 1)
        )

    def diagonal_values(self) -> tuple[int, ...]:
        return tuple(self.h[p][p] for p in range(self.dim + 1))

    def total(self) -> int:
        return sum(sum(row) for row in self.h)

    def euler(self) -> int:
        n = self.dim
        return sum((-1) ** (p + q) * self.h[p][q] for p in range(n + 1) for q in range(n + 1))

    def nonzero_entries(self) -> list[tuple[int, int, int]]:
        n = self.dim
        return [
            (p, q, self.h[p][q])
            for p in range(n + 1)
            for q in range(n + 1)
            if self.h[p][q]
        ]

    def __add__(self, other: "HodgeDiamond") -> "HodgeDiamond":
        return diamond_sum(self, other)

    def __mul__(self, other: "HodgeDiamond") -> "HodgeDiamond":
        return diamond_product(self, other)

    def pprint(self) -> str:
        """Centered diamond layout, top row ``p + q = 2 dim``."""
        n = self.dim
        rows = []
        for s in range(2 * n, -1, -1):
            ps = range(min(s, n), max(0, s - n) - 1, -1)
            rows.append([str(self.h[p][s - p]) for p in ps])
        width = max(len(x) for row in rows for x in row)
        cell = width + 2
        lines = []
        for row in rows:
            indent = (n + 1 - len(row)) * cell // 2
            line = " " * indent + "".join(x.center(cell) for x in row)
            lines.append(line.rstrip())
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.pprint()


def _table(dim: int, entry) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(entry(p, q) for q in range(dim + 1)) for p in range(dim + 1))


def diamond_sum(a: HodgeDiamond, b: HodgeDiamond) -> HodgeDiamond:
    if a.dim != b.dim:
        raise HodgeError(f"cannot add diamonds of dimensions {a.dim} and {b.dim}")
    return HodgeDiamond(a.dim, _table(a.dim, lambda p, q: a.h[p][q] + b.h[p][q]))


def diamond_shift(a: HodgeDiamond, k: int, target_dim: int) -> HodgeDiamond:
    """Place ``a`` twisted by ``k`` inside a table of dimension ``target_dim``."""
    if k < 0 or a.dim + k > target_dim:
        raise HodgeError(f"shift by {k} of a dimension-{a.dim} diamond leaves a {target_dim} table")
    return HodgeDiamond(target_dim, _table(target_dim, lambda p, q: a[p - k, q - k]))


def diamond_product(a: HodgeDiamond, b: HodgeDiamond) -> HodgeDiamond:
    # Kunneth: convolution of the two tables
    n = a.dim + b.dim
    out = [[0] * (n + 1) for _ in range(n + 1)]
    for p1 in range(a.dim + 1):
        for q1 in range(a.dim + 1):
            x = a.h[p1][q1]
            if not x:
                continue
            for p2 in range(b.dim + 1):
                for q2 in range(b.dim + 1):
                    out[p1 + p2][q1 + q2] += x * b.h[p2][q2]
    return HodgeDiamond.from_matrix(out, connected=a.connected and b.connected)


def _sum_shifts(parts: Iterable[tuple[HodgeDiamond, int]], dim: int) -> list[list[int]]:
    out = [[0] * (dim + 1) for _ in range(dim + 1)]
    for d, k in parts:
        shifted = diamond_shift(d, k, dim)
        for p in range(dim + 1):
            for q in range(dim + 1):
                out[p][q] += shifted.h[p][q]
    return out


def projective_bundle_diamond(base: HodgeDiamond, r: int) -> HodgeDiamond:
    """Diamond of the projectivization of a rank ``r`` bundle over ``base``."""
    if r < 1:
        raise HodgeError("projective bundle needs rank r >= 1")
    dim = base.dim + r - 1
    rows = _sum_shifts(((base, i) for i in range(r)), dim)
    return HodgeDiamond.from_matrix(rows, connected=base.connected)


def blowup_diamond(ambient: HodgeDiamond, center: HodgeDiamond, codim: int) -> HodgeDiamond:
    if codim < 2:
        raise HodgeError(f"blowup codimension must be at least 2, got {codim}")
    if center.dim + codim != ambient.dim:
        raise HodgeError(
            f"center of dimension {center.dim} does not have codimension {codim} "
            f"in a {ambient.dim}-dimensional ambient"
        )
    dim = ambient.dim
    parts = [(ambient, 0)] + [(center, i) for i in range(1, codim)]
    return HodgeDiamond.from_matrix(_sum_shifts(parts, dim), connected=ambient.connected)


def universal_divisor_diamond(
    base: HodgeDiamond, fiber_copies: int, jump_locus: HodgeDiamond
) -> HodgeDiamond:
    """
    Diamond of a family over ``base`` with fibre ``P^{fiber_copies - 1}`` that
    jumps to ``P^{fiber_copies}`` over ``jump_locus``.

    Numerically this is ``fiber_copies`` twisted copies of ``base`` plus one
    copy of the jump locus twisted by ``fiber_copies``.
    """
    if fiber_copies < 1:
        raise HodgeError("fiber_copies must be positive")
    dim = base.dim + fiber_copies - 1
    if jump_locus.dim + 2 * fiber_copies != dim:
        raise HodgeError(
            f"jump locus of dimension {jump_locus.dim} must have codimension "
            f"{fiber_copies + 1} in the {base.dim}-dimensional base"
        )
    parts = [(base, i) for i in range(fiber_copies)] + [(jump_locus, fiber_copies)]
    return HodgeDiamond.from_matrix(_sum_shifts(parts, dim), connected=base.connected)


def is_diagonal(a: HodgeDiamond) -> bool:
    return all(x == 0 for p, q, x in a.nonzero_entries() if p != q)


def surface_diamond(structure: Sequence[int], k_squared: int = 0) -> HodgeDiamond:
    """
    Diamond of a smooth surface from its structure-sheaf row
    ``(h^{0,0}, h^{0,1}, h^{0,2})`` and ``K^2``.

    The middle entry comes from Noether's formula ``e = 12 chi - K^2``.
    """
    h00, h01, h02 = structure
    chi = h00 - h01 + h02
    euler = 12 * chi - k_squared
    h11 = euler - 2 * h00 + 4 * h01 - 2 * h02
    if h11 < 0:
        raise HodgeError(f"Noether's formula gives h^(1,1) = {h11}")
    return HodgeDiamond.from_matrix(
        [[h00, h01, h02], [h01, h11, h01], [h02, h01, h00]], connected=(h00 == 1)
    )


def point() -> HodgeDiamond:
    return HodgeDiamond.diagonal([1])


def projective_space(n: int) -> HodgeDiamond:
    return HodgeDiamond.diagonal([1] * (n + 1))


def enriques() -> HodgeDiamond:
    return HodgeDiamond.diagonal([1, 10, 1])


def k3() -> HodgeDiamond:
    return HodgeDiamond.from_matrix([[1, 0, 1], [0, 20, 0], [1, 0, 1]], connected=True)


def grassmannian_2_4() -> HodgeDiamond:
    return HodgeDiamond.diagonal([1, 1, 2, 1, 1])
