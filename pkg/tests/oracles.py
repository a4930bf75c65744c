"""Independent reference computations shared by the unit and acceptance tests."""

from itertools import combinations, product
from math import gcd

from fanosod.linalg import determinant


def count_monomials(nvars, degree):
    if degree < 0:
        return 0
    return sum(1 for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree)


def bott_oracle(n, d):
    """h^0 by counting monomials, h^n by Serre duality, nothing in between."""
    out = [0] * (n + 1)
    out[0] += count_monomials(n + 1, d)
    out[n] += count_monomials(n + 1, -d - n - 1)
    return tuple(out)


def h0_two_plane_blowup(d, e1, e2):
    """
    h^0 of ``d h - e1 E1 - e2 E2`` on ``P^5`` blown up in ``{y = 0}`` and
    ``{x = 0}``: degree-``d`` monomials ``x^a y^b`` with ``|b| >= e1`` and
    ``|a| >= e2``.  Negative multiplicities impose nothing since the centres
    have codimension 3.
    """
    if d < 0:
        return 0
    total = 0
    for i in range(d + 1):
        if d - i >= max(e1, 0) and i >= max(e2, 0):
            total += count_monomials(3, i) * count_monomials(3, d - i)
    return total


def htop_two_plane_blowup(d, e1, e2):
    """Serre duality with ``K = -6h + 2E1 + 2E2``."""
    return h0_two_plane_blowup(-6 - d, -2 - e1, -2 - e2)


def determinantal_divisors_oracle(M):
    """Invariant factors as ratios of gcds of k x k minors."""
    m, n = len(M), len(M[0])
    divisors = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, determinant([[M[i][j] for j in cols] for i in rows]))
        divisors.append(g)
    out = []
    for k in range(1, len(divisors)):
        out.append(divisors[k] // divisors[k - 1] if divisors[k - 1] else 0)
    return tuple(out)
