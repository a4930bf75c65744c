"""
Exact check that a section ``phi: W -> Sym^2 V1^dual (+) Sym^2 V2^dual``
avoids the two exceptional divisors, i.e. that each triple of plane conics
it induces has no common zero.

Three conics ``q1, q2, q3`` in ``k[x, y, z]`` have no common projective zero
iff they form a complete intersection with Hilbert series
``1 + 3t + 3t^2 + t^3``; its socle sits in degree 3, so this happens iff the
degree-4 part of the ideal is all of ``S_4``.  That is a single rank
computation: the ``18 x 15`` matrix of ``(a, b, c) -> a q1 + b q2 + c q3``
on quadrics must have rank 15.  Rank 15 proves emptiness; anything less
is reported as "not certified".
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from fanosod import linalg


def monomials(degree: int, nvars: int = 3) -> list[tuple[int, ...]]:
    """Exponent vectors of the given degree, lexicographically descending."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        out += [(first,) + rest for rest in monomials(degree - first, nvars - 1)]
    return out


QUADRICS = monomials(2)  # x^2, xy, xz, y^2, yz, z^2
QUARTICS = monomials(4)
_QUARTIC_INDEX = {m: i for i, m in enumerate(QUARTICS)}


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def multiplication_matrix(conics: Sequence[Sequence]) -> list[list[Fraction]]:
    """Rows are ``m * q`` for each conic ``q`` and quadric monomial ``m``, over the quartic basis."""
    rows = []
    for q in conics:
        if len(q) != len(QUADRICS):
            raise ValueError(f"a conic has {len(QUADRICS)} coefficients, got {len(q)}")
        for m in QUADRICS:
            row = [Fraction(0)] * len(QUARTICS)
            for c, mono in zip(q, QUADRICS):
                if c:
                    row[_QUARTIC_INDEX[_add(m, mono)]] += Fraction(c)
            rows.append(row)
    return rows


def conics_common_zero_empty(q1, q2, q3) -> bool:
    return linalg.rank(multiplication_matrix([q1, q2, q3])) == len(QUARTICS)


def evaluate(q: Sequence[int], point: Sequence[int], p: int) -> int:
    total = 0
    for c, (a, b, e) in zip(q, QUADRICS):
        total += c * point[0] ** a * point[1] ** b * point[2] ** e
    return total % p


def projective_points(p: int):
    """One representative of each point of ``P^2(F_p)``."""
    yield (1, 0, 0)
    for y in range(p):
        yield (y, 1, 0)
    for x, y in product(range(p), repeat=2):
        yield (x, y, 1)


def common_zeros_mod_p(conics: Sequence[Sequence[int]], p: int, limit: int | None = None) -> list[tuple[int, int, int]]:
    """Brute-force search for common zeros over ``F_p`` (integer coefficients only)."""
    qs = [[int(c) % p for c in q] for q in conics]
    found = []
    for pt in projective_points(p):
        if all(evaluate(q, pt, p) == 0 for q in qs):
            found.append(pt)
            if limit and len(found) >= limit:
                break
    return found


def rank_mod_p(conics: Sequence[Sequence[int]], p: int) -> int:
    rows = [[int(x) for x in row] for row in multiplication_matrix(conics)]
    return linalg.rank_mod_p(rows, p)


@dataclass(frozen=True)
class SectionPhi:
    """
    ``3 x 12`` rational matrix: one row per basis vector of ``W``; columns
    0-5 are the conic in ``V1``, 6-11 the conic in ``V2``, each in the
    monomial order ``x^2, xy, xz, y^2, yz, z^2``.
    """

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.rows) != 3 or any(len(r) != 12 for r in self.rows):
            raise ValueError("a section is a 3 x 12 matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SectionPhi":
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def from_blocks(cls, first: Sequence[Sequence], second: Sequence[Sequence]) -> "SectionPhi":
        return cls.from_rows([list(a) + list(b) for a, b in zip(first, second)])

    def block(self, i: int) -> list[tuple[Fraction, ...]]:
        """The three conics of ``phi_i``, ``i`` in ``{1, 2}``."""
        lo = 6 * (i - 1)
        return [row[lo:lo + 6] for row in self.rows]

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SectionPhi":
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append([Fraction(tok) for tok in line.replace(",", " ").split()])
        return cls.from_rows(rows)


def random_section(seed: int) -> SectionPhi:
    rng = random.Random(seed)
    return SectionPhi.from_rows([[rng.randint(-9, 9) for _ in range(12)] for _ in range(3)])


def degenerate_section(block: int = 1, seed: int = 1) -> SectionPhi:
    """
    A section whose ``block``-th conic triple is ``x^2, xy, xz`` (common zeros
    along ``x = 0``), with the other block taken from ``random_section(seed)``.
    """
    bad = [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]]
    good = random_section(seed).block(2 if block == 1 else 1)
    return SectionPhi.from_blocks(bad, good) if block == 1 else SectionPhi.from_blocks(good, bad)


def check_disjoint_from_exceptional(phi: SectionPhi) -> tuple[bool, bool]:
    return (conics_common_zero_empty(*phi.block(1)), conics_common_zero_empty(*phi.block(2)))


# -- coordinate changes, for invariance checks --------------------------------

def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = _add(ma, mb)
            out[m] = out.get(m, 0) + ca * cb
    return out


def change_coordinates(q: Sequence, A: Sequence[Sequence]) -> list[Fraction]:
    """Coefficients of ``q(A x)`` in the quadric basis."""
    lin = [{(1, 0, 0): Fraction(A[i][0]), (0, 1, 0): Fraction(A[i][1]), (0, 0, 1): Fraction(A[i][2])}
           for i in range(3)]
    total: dict = {}
    for c, (a, b, e) in zip(q, QUADRICS):
        if not c:
            continue
        term = {(0, 0, 0): Fraction(c)}
        for var, power in enumerate((a, b, e)):
            for _ in range(power):
                term = _poly_mul(term, lin[var])
        for m, v in term.items():
            total[m] = total.get(m, 0) + v
    return [Fraction(total.get(m, 0)) for m in QUADRICS]
