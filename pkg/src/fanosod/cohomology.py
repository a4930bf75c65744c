"""
Exact cohomology of line bundles on products of projective spaces and on
split projective bundles over them, and the Koszul hypercohomology of
structure sheaves of zero loci of split bundles.

Supported ambients: ``ProjectiveSpace``, ``Product`` trees whose leaves are
projective spaces, one ``ProjBundle`` level over such a product, and
``Models`` wrappers containing one of these.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from fanosod import geometry as geo
from fanosod.picard import DivisorClass, FormalBundle, PicardError, pullback, restrict, sym_power_split


class CohomologyError(ValueError):
    pass


class NotDegenerate(CohomologyError):
    """The Koszul spectral sequence might have nonzero differentials."""


def bott_pn(n: int, d: int) -> tuple[int, ...]:
    """``h^q(P^n, O(d))`` for ``q = 0..n``."""
    if n < 0:
        raise CohomologyError("negative projective dimension")
    out = [0] * (n + 1)
    if d >= 0:
        out[0] = comb(n + d, n)
    elif d <= -n - 1:
        out[n] += comb(-d - 1, n)
    return tuple(out)


def convolve(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def kunneth(factors: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    """Cohomology of ``O(d1, ..., dk)`` on ``P^{n1} x ... x P^{nk}`` given ``[(n_i, d_i)]``."""
    out: tuple[int, ...] = (1,)
    for n, d in factors:
        out = convolve(out, bott_pn(n, d))
    return out


def pushforward_proj_bundle(m: int, E: FormalBundle, D: DivisorClass) -> tuple[FormalBundle, int]:
    """
    Derived pushforward of ``O(mH + D)`` from ``P(E)`` (with ``O(-H) -> pi^* E``),
    as a split bundle on the base sitting in the returned degree.
    """
    if not E.is_split:
        raise CohomologyError("pushforward needs a split bundle")
    r = E.rank
    if m >= 0:
        return sym_power_split(E.dual(), m).twist(D), 0
    if m <= -r:
        return sym_power_split(E, -m - r).twist(E.det() + D), r - 1
    return FormalBundle.split([], E.lattice), 0


def _pn_factors(v) -> list[geo.ProjectiveSpace]:
    if isinstance(v, geo.ProjectiveSpace):
        return [v]
    if isinstance(v, geo.Product):
        return _pn_factors(v.left) + _pn_factors(v.right)
    if isinstance(v, geo.Models):
        for m in v.models:
            try:
                return _pn_factors(m)
            except geo.Unsupported:
                pass
    raise geo.Unsupported(f"{type(v).__name__} is not a product of projective spaces")


def _product_cohomology(factors: list[geo.ProjectiveSpace], L: DivisorClass) -> tuple[int, ...]:
    return kunneth([(f.n, L[f.hyperplane]) for f in factors])


def _pad(vec: Sequence[int], length: int, shift: int = 0) -> tuple[int, ...]:
    out = [0] * length
    for i, x in enumerate(vec):
        if x:
            if i + shift >= length:
                raise CohomologyError("cohomology beyond the dimension")
            out[i + shift] += x
    return tuple(out)


def _as_bundle_model(v):
    if isinstance(v, geo.ProjBundle):
        return v
    if isinstance(v, geo.Models):
        for m in v.models:
            if isinstance(m, geo.ProjBundle):
                return m
    return None


def line_bundle_cohomology(v, L: DivisorClass) -> tuple[int, ...]:
    """``h^q(v, O(L))`` for ``q = 0..dim v``."""
    dim = geo.dimension(v)
    try:
        factors = _pn_factors(v)
    except geo.Unsupported:
        factors = None
    if factors is not None:
        lat = geo.lattice(v)
        return _pad(_product_cohomology(factors, pullback(L, lat)), dim + 1)

    pb = _as_bundle_model(v)
    if pb is None:
        raise geo.Unsupported(f"no line-bundle cohomology rule for {type(v).__name__}")
    base_factors = _pn_factors(pb.base)
    lat = geo.lattice(pb)
    L = pullback(L, lat)
    base_lat = geo.lattice(pb.base)
    bundle, shift = pushforward_proj_bundle(L[pb.H_name], pb.bundle, restrict(L, base_lat))
    total = [0] * (dim + 1)
    for s in bundle.summands:
        part = _pad(_product_cohomology(base_factors, s), dim + 1, shift)
        total = [a + b for a, b in zip(total, part)]
    return tuple(total)


def euler(vec: Sequence[int]) -> int:
    return sum((-1) ** q * x for q, x in enumerate(vec))


@dataclass(frozen=True)
class KoszulResult:
    """Structure-sheaf cohomology of a zero locus plus the E1 page it came from."""

    cohomology: tuple[int, ...]
    # terms[k] = h^*(ambient, Lambda^k F^dual)
    terms: tuple[tuple[int, ...], ...]
    degenerate: bool = True

    @property
    def chi(self) -> int:
        return euler(self.cohomology)

    def __iter__(self):
        return iter(self.cohomology)


def koszul_terms(ambient, F: FormalBundle) -> tuple[tuple[int, ...], ...]:
    if not F.is_split:
        raise CohomologyError("Koszul computation needs a split bundle")
    if F.lattice.generators != geo.lattice(ambient).generators:
        raise CohomologyError("bundle does not live on the ambient")
    dual = F.dual()
    terms = []
    for k in range(F.rank + 1):
        wedge = dual.exterior_power(k)
        acc = [0] * (geo.dimension(ambient) + 1)
        for s in wedge.summands:
            acc = [a + b for a, b in zip(acc, line_bundle_cohomology(ambient, s))]
        terms.append(tuple(acc))
    return tuple(terms)


def koszul_structure_cohomology(ambient, F: FormalBundle) -> KoszulResult:
    """
    ``h^*(Z, O_Z)`` for the zero locus ``Z`` of a regular section of ``F``.

    The Koszul complex puts ``Lambda^k F^dual`` in degree ``-k``; its E1 page
    has ``h^q(Lambda^k F^dual)`` at total degree ``q - k``.  The answer is read
    off only when every column is concentrated in one degree and no two
    entries sit in adjacent total degrees with the later one to the right,
    so that no differential can be nonzero.
    """
    dim = geo.dimension(ambient)
    if F.rank > dim:
        raise CohomologyError(f"rank {F.rank} exceeds ambient dimension {dim}")
    terms = koszul_terms(ambient, F)
    entries = []
    for k, vec in enumerate(terms):
        nz = [q for q, x in enumerate(vec) if x]
        if len(nz) > 1:
            raise NotDegenerate(f"spectral sequence not trivially degenerate: column {k} has degrees {nz}")
        if nz:
            entries.append((k, nz[0], vec[nz[0]]))
    for k, q, _ in entries:
        for k2, q2, _ in entries:
            # d_s : E^{-k,q} -> E^{-k+s, q-s+1}, s >= 1, raises total degree by one
            if k2 < k and (q2 - k2) == (q - k) + 1:
                raise NotDegenerate(
                    f"spectral sequence not trivially degenerate: columns {k} and {k2} may interact"
                )
    zdim = dim - F.rank
    out = [0] * (zdim + 1)
    for k, q, x in entries:
        t = q - k
        if not 0 <= t <= zdim:
            raise CohomologyError(f"Koszul term {k} lands in degree {t}, outside 0..{zdim}")
        out[t] += x
    return KoszulResult(tuple(out), terms)


def euler_characteristic_koszul(ambient, F: FormalBundle) -> int:
    return sum((-1) ** k * euler(t) for k, t in enumerate(koszul_terms(ambient, F)))


def structure_cohomology(v) -> tuple[int, ...]:
    """``h^*(v, O_v)`` for the shapes this module understands."""
    if isinstance(v, geo.ZeroLocus):
        return koszul_structure_cohomology(v.ambient, v.bundle).cohomology
    if isinstance(v, geo.Models):
        for m in v.models:
            try:
                return structure_cohomology(m)
            except (geo.Unsupported, CohomologyError, PicardError):
                pass
        raise geo.Unsupported("no model supports structure-sheaf cohomology")
    return line_bundle_cohomology(v, geo.lattice(v).zero())
