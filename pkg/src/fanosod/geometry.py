"""
Variety expressions: construction trees that know their dimension, Picard
lattice, canonical class, Hodge diamond, semiorthogonal decomposition
summary and Grothendieck group.

Every query is a pure function of the (immutable) tree.  Nodes that have
no rule for a query raise :class:`Unsupported`; a :class:`Models` node
holding several isomorphic constructions answers each query with the first
model that supports it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import singledispatch
from typing import Union

from fanosod import hodge as hd
from fanosod.hodge import HodgeDiamond
from fanosod.ktheory import FgAbGroup, direct_sum
from fanosod.picard import (
    DivisorClass,
    FormalBundle,
    PicardLattice,
    adjunction_zero_locus,
    canonical_blowup,
    canonical_projective_bundle,
    free_lattice,
    product_lattice,
    pullback,
)


class GeometryError(ValueError):
    pass


class InvalidExpr(GeometryError):
    pass


class Unsupported(GeometryError):
    pass


@dataclass(frozen=True)
class Atomic:
    """
    A variety supplied as data.  ``exceptional`` is the length of a full
    exceptional collection when one is known; otherwise the whole derived
    category is one opaque SOD component.
    """

    name: str
    dim: int
    diamond: HodgeDiamond
    k0: FgAbGroup
    lattice: PicardLattice = field(default_factory=lambda: free_lattice())
    canonical: DivisorClass | None = None
    exceptional: int | None = None

    def __post_init__(self):
        if self.diamond.dim != self.dim:
            raise InvalidExpr(f"{self.name}: diamond dimension {self.diamond.dim} != {self.dim}")
        if not (self.diamond.has_hodge_symmetry() and self.diamond.has_serre_duality()):
            raise InvalidExpr(f"{self.name}: diamond violates Hodge symmetry or Serre duality")
        if self.canonical is not None and self.canonical.lattice.generators != self.lattice.generators:
            raise InvalidExpr(f"{self.name}: canonical class lives in a foreign lattice")


@dataclass(frozen=True)
class ProjectiveSpace:
    n: int
    hyperplane: str = "h"

    def __post_init__(self):
        if self.n < 0:
            raise InvalidExpr("projective space of negative dimension")


@dataclass(frozen=True)
class Grassmannian24:
    """``Gr(2,4)``, stored as atomic data: K = -4 s1, six exceptional objects."""

    hyperplane: str = "s1"


@dataclass(frozen=True)
class Product:
    left: "VarietyExpr"
    right: "VarietyExpr"

    def __post_init__(self):
        product_lattice(lattice(self.left), lattice(self.right))


@dataclass(frozen=True)
class ProjBundle:
    base: "VarietyExpr"
    bundle: FormalBundle
    H_name: str = "H"

    def __post_init__(self):
        if self.bundle.rank < 1:
            raise InvalidExpr("projectivization of the zero bundle")
        if self.bundle.lattice.generators != lattice(self.base).generators:
            raise InvalidExpr("bundle does not live on the base")
        if self.H_name in lattice(self.base).generators:
            raise InvalidExpr(f"generator {self.H_name!r} already used on the base")


@dataclass(frozen=True)
class BlowUp:
    ambient: "VarietyExpr"
    center: "VarietyExpr"
    codim: int
    E_name: str = "E"

    def __post_init__(self):
        if self.codim < 2:
            raise InvalidExpr(f"blowup codimension {self.codim} < 2")
        if dimension(self.center) + self.codim != dimension(self.ambient):
            raise InvalidExpr(
                f"center dimension {dimension(self.center)} + codim {self.codim} "
                f"!= ambient dimension {dimension(self.ambient)}"
            )
        if self.E_name in lattice(self.ambient).generators:
            raise InvalidExpr(f"generator {self.E_name!r} already used on the ambient")


@dataclass(frozen=True)
class ZeroLocus:
    ambient: "VarietyExpr"
    bundle: FormalBundle

    def __post_init__(self):
        if self.bundle.rank > dimension(self.ambient):
            raise InvalidExpr(
                f"rank {self.bundle.rank} bundle on a {dimension(self.ambient)}-dimensional ambient"
            )
        if self.bundle.lattice.generators != lattice(self.ambient).generators:
            raise InvalidExpr("bundle does not live on the ambient")


@dataclass(frozen=True)
class UniversalDivisor:
    """
    The universal divisor ``X`` in ``base x P^{w-1}`` of a ``w``-dimensional
    linear system ``|divisor|`` on ``base``, i.e. the zero locus of
    ``O(divisor) (x) O(hyperplane)``.  Its fibres over ``base`` are
    ``P^{w-2}``, jumping to ``P^{w-1}`` over the base locus ``jump``.
    """

    base: "VarietyExpr"
    w: int
    jump: "VarietyExpr"
    divisor: DivisorClass
    hyperplane: str = "H'"

    def __post_init__(self):
        if self.w < 2:
            raise InvalidExpr("linear system must have dimension at least 2")
        if dimension(self.jump) + self.w != dimension(self.base):
            raise InvalidExpr(
                f"base locus of {self.w} sections should have dimension "
                f"{dimension(self.base) - self.w}, got {dimension(self.jump)}"
            )
        if self.divisor.lattice.generators != lattice(self.base).generators:
            raise InvalidExpr("divisor does not live on the base")
        if self.hyperplane in lattice(self.base).generators:
            raise InvalidExpr(f"generator {self.hyperplane!r} already used on the base")

    def linear_system(self) -> ProjectiveSpace:
        return ProjectiveSpace(self.w - 1, self.hyperplane)

    def ambient(self) -> Product:
        return Product(self.base, self.linear_system())

    def section_bundle(self) -> FormalBundle:
        lat = lattice(self.ambient())
        return FormalBundle.line(pullback(self.divisor, lat) + lat.gen(self.hyperplane))


@dataclass(frozen=True)
class Models:
    """One variety given by several isomorphic constructions, tried in order."""

    models: tuple

    def __post_init__(self):
        if not self.models:
            raise InvalidExpr("Models needs at least one construction")
        dims = {dimension(m) for m in self.models}
        if len(dims) != 1:
            raise InvalidExpr(f"isomorphic models disagree on dimension: {sorted(dims)}")


VarietyExpr = Union[
    Atomic, ProjectiveSpace, Grassmannian24, Product, ProjBundle, BlowUp, ZeroLocus,
    UniversalDivisor, Models,
]


def first_supported(v: Models, query, *args):
    reasons = []
    for m in v.models:
        try:
            return query(m, *args)
        except Unsupported as exc:
            reasons.append(str(exc))
    raise Unsupported("no model supports this query: " + "; ".join(reasons))


def _node_name(v) -> str:
    return type(v).__name__


def _unsupported(what: str):
    def impl(v, *args):
        raise Unsupported(f"{_node_name(v)} has no {what} rule")

    return impl


# -- dimension ---------------------------------------------------------------

@singledispatch
def dimension(v) -> int:
    raise InvalidExpr(f"not a variety expression: {v!r}")


@dimension.register
def _(v: Atomic):
    return v.dim


@dimension.register
def _(v: ProjectiveSpace):
    return v.n


@dimension.register
def _(v: Grassmannian24):
    return 4


@dimension.register
def _(v: Product):
    return dimension(v.left) + dimension(v.right)


@dimension.register
def _(v: ProjBundle):
    return dimension(v.base) + v.bundle.rank - 1


@dimension.register
def _(v: BlowUp):
    return dimension(v.ambient)


@dimension.register
def _(v: ZeroLocus):
    return dimension(v.ambient) - v.bundle.rank


@dimension.register
def _(v: UniversalDivisor):
    return dimension(v.base) + v.w - 2


@dimension.register
def _(v: Models):
    return dimension(v.models[0])


# -- Picard lattice ----------------------------------------------------------

@singledispatch
def lattice(v) -> PicardLattice:
    raise InvalidExpr(f"not a variety expression: {v!r}")


@lattice.register
def _(v: Atomic):
    return v.lattice


@lattice.register
def _(v: ProjectiveSpace):
    return free_lattice(v.hyperplane, hyperplanes=[v.hyperplane])


@lattice.register
def _(v: Grassmannian24):
    return free_lattice(v.hyperplane)


@lattice.register
def _(v: Product):
    return product_lattice(lattice(v.left), lattice(v.right))


@lattice.register
def _(v: ProjBundle):
    return lattice(v.base).extend(v.H_name)


@lattice.register
def _(v: BlowUp):
    return lattice(v.ambient).extend(v.E_name)


@lattice.register
def _(v: ZeroLocus):
    return lattice(v.ambient)


@lattice.register
def _(v: UniversalDivisor):
    return lattice(v.ambient())


@lattice.register
def _(v: Models):
    return lattice(v.models[0])


# -- canonical class ---------------------------------------------------------

@singledispatch
def canonical(v) -> DivisorClass:
    raise InvalidExpr(f"not a variety expression: {v!r}")


@canonical.register
def _(v: Atomic):
    if v.canonical is None:
        raise Unsupported(f"atomic {v.name} carries no canonical class")
    return v.canonical


@canonical.register
def _(v: ProjectiveSpace):
    return -(v.n + 1) * lattice(v).gen(v.hyperplane)


@canonical.register
def _(v: Grassmannian24):
    return -4 * lattice(v).gen(v.hyperplane)


@canonical.register
def _(v: Product):
    lat = lattice(v)
    return pullback(canonical(v.left), lat) + pullback(canonical(v.right), lat)


@canonical.register
def _(v: ProjBundle):
    return canonical_projective_bundle(canonical(v.base), v.bundle, v.H_name)


@canonical.register
def _(v: BlowUp):
    return canonical_blowup(canonical(v.ambient), v.codim, v.E_name)


@canonical.register
def _(v: ZeroLocus):
    return adjunction_zero_locus(canonical(v.ambient), v.bundle)


@canonical.register
def _(v: UniversalDivisor):
    return adjunction_zero_locus(canonical(v.ambient()), v.section_bundle())


@canonical.register
def _(v: Models):
    return first_supported(v, canonical)


# -- Hodge diamond -----------------------------------------------------------

@singledispatch
def hodge(v) -> HodgeDiamond:
    raise InvalidExpr(f"not a variety expression: {v!r}")


@hodge.register
def _(v: Atomic):
    return v.diamond


@hodge.register
def _(v: ProjectiveSpace):
    return hd.projective_space(v.n)


@hodge.register
def _(v: Grassmannian24):
    return hd.grassmannian_2_4()


@hodge.register
def _(v: Product):
    return hd.diamond_product(hodge(v.left), hodge(v.right))


@hodge.register
def _(v: ProjBundle):
    return hd.projective_bundle_diamond(hodge(v.base), v.bundle.rank)


@hodge.register
def _(v: BlowUp):
    return hd.blowup_diamond(hodge(v.ambient), hodge(v.center), v.codim)


hodge.register(ZeroLocus, _unsupported("Hodge"))


@hodge.register
def _(v: UniversalDivisor):
    return hd.universal_divisor_diamond(hodge(v.base), v.w - 1, hodge(v.jump))


@hodge.register
def _(v: Models):
    return first_supported(v, hodge)


# -- semiorthogonal decompositions -------------------------------------------

@dataclass(frozen=True)
class SodPiece:
    """Either a block of ``exceptional`` exceptional objects or an opaque atomic component."""

    exceptional: int = 0
    component: Atomic | None = None
    origin: str = ""

    def __post_init__(self):
        if (self.component is None) == (self.exceptional == 0):
            raise InvalidExpr("an SOD piece is either exceptional objects or one component")

    def describe(self) -> str:
        what = f"D({self.component.name})" if self.component else f"{self.exceptional} exceptional"
        return f"{what} [{self.origin}]" if self.origin else what


def _merge_exceptional(pieces: list[SodPiece], origin: str) -> tuple[SodPiece, ...]:
    out: list[SodPiece] = []
    for p in pieces:
        if out and p.component is None and out[-1].component is None:
            out[-1] = SodPiece(out[-1].exceptional + p.exceptional, origin=origin)
        else:
            out.append(p)
    return tuple(out)


def _tag(pieces, origin: str) -> list[SodPiece]:
    return [SodPiece(p.exceptional, p.component, origin) for p in pieces]


@singledispatch
def sod(v) -> tuple[SodPiece, ...]:
    raise InvalidExpr(f"not a variety expression: {v!r}")


@sod.register
def _(v: Atomic):
    if v.exceptional is not None:
        return (SodPiece(v.exceptional, origin=v.name),)
    return (SodPiece(component=v, origin=v.name),)


@sod.register
def _(v: ProjectiveSpace):
    return (SodPiece(v.n + 1, origin=f"P^{v.n}"),)


@sod.register
def _(v: Grassmannian24):
    return (SodPiece(6, origin="Gr(2,4)"),)


@sod.register
def _(v: Product):
    out = []
    for a in sod(v.left):
        for b in sod(v.right):
            if a.component is not None and b.component is not None:
                raise Unsupported("product of two non-exceptional SOD components")
            if a.component is None and b.component is None:
                out.append(SodPiece(a.exceptional * b.exceptional, origin="product"))
            else:
                comp = a.component or b.component
                copies = b.exceptional if a.component else a.exceptional
                out.extend(SodPiece(component=comp, origin="product") for _ in range(copies))
    return _merge_exceptional(out, "product")


@sod.register
def _(v: ProjBundle):
    base = sod(v.base)
    out = [p for _ in range(v.bundle.rank) for p in base]
    return _merge_exceptional(out, "projective bundle")


@sod.register
def _(v: BlowUp):
    center = sod(v.center)
    out = []
    for i in range(1, v.codim):
        out += _tag(center, f"blowup center copy {i}")
    out += _tag(sod(v.ambient), "blowup ambient")
    return tuple(out)


sod.register(ZeroLocus, _unsupported("SOD"))


@sod.register
def _(v: UniversalDivisor):
    out = _tag(sod(v.jump), "jump locus")
    base = sod(v.base)
    for i in range(1, v.w):
        out += _tag(base, f"base copy {i}")
    return tuple(out)


@sod.register
def _(v: Models):
    return first_supported(v, sod)


def sod_summary(pieces) -> tuple[dict[str, int], int]:
    """``({component name: copies}, total exceptional objects)``."""
    comps: dict[str, int] = {}
    total = 0
    for p in pieces:
        if p.component is not None:
            comps[p.component.name] = comps.get(p.component.name, 0) + 1
        else:
            total += p.exceptional
    return comps, total


def k0(v) -> FgAbGroup:
    """Grothendieck group by additivity over :func:`sod`."""
    g = FgAbGroup(0)
    for p in sod(v):
        g = direct_sum(g, p.component.k0 if p.component is not None else FgAbGroup(p.exceptional))
    return g


# -- atomic data -------------------------------------------------------------

def enriques(k0_group: FgAbGroup | None = None) -> Atomic:
    """
    Enriques surface.  Canonical class is 2-torsion, hence zero in the
    (numerical) lattice, which is left empty.  ``K0`` defaults to
    ``Z^12 (+) Z/2``, the rank matching the diamond total.
    """
    lat = free_lattice()
    return Atomic(
        "Enriques", 2, hd.enriques(), k0_group or FgAbGroup(12, (2,)), lat, lat.zero()
    )


def k3() -> Atomic:
    lat = free_lattice()
    return Atomic("K3", 2, hd.k3(), FgAbGroup(24), lat, lat.zero())


def point() -> Atomic:
    lat = free_lattice()
    return Atomic("point", 0, hd.point(), FgAbGroup(1), lat, lat.zero(), exceptional=1)


ATOMS = {"enriques": enriques, "k3": k3, "point": point}
