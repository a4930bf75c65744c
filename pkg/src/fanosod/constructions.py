"""
The concrete varieties of the two Enriques counterexamples, built as
variety expressions.

Generator names used throughout:

=========  ==================================================================
``s1``     hyperplane (Pluecker) class of ``Gr(2,4)``
``H'``     hyperplane class of the auxiliary projective space
``H1,H2``  hyperplane classes of ``P(V1), P(V2)`` pulled back to ``J``
``H``      relative class of ``J = P(O(-2,0) (+) O(0,-2))``
``Ht*``    the same three classes on ``Jt = P(O(-1,0) (+) O(0,-1))``
``h``      hyperplane class of ``P(V1 (+) V2) = P^5``
``E1,E2``  exceptional divisors of ``Jt -> P^5``
=========  ==================================================================
"""

from __future__ import annotations

from fanosod import geometry as geo
from fanosod.picard import DivisorClass, FormalBundle, c1_sym_rank2, restrict


def plane_pair(h1: str = "H1", h2: str = "H2") -> geo.Product:
    """``P(V1) x P(V2)`` with ``dim V1 = dim V2 = 3``."""
    return geo.Product(geo.ProjectiveSpace(2, h1), geo.ProjectiveSpace(2, h2))


def grassmannian_times_p3() -> geo.Product:
    return geo.Product(geo.Grassmannian24("s1"), geo.ProjectiveSpace(3, "H'"))


def sym2_dual_tautological_twisted(ambient: geo.Product) -> FormalBundle:
    """``Sym^2 U^dual (x) O(1)`` on ``Gr(2,4) x P^3``: rank 3, ``c1 = 3 s1 + 3 H'``."""
    lat = geo.lattice(ambient)
    c1_dual_taut = lat.gen("s1")  # c1(U^dual) = s1
    return FormalBundle(3, c1_sym_rank2(c1_dual_taut, 2) + 3 * lat.gen("H'"))


def reye_fourfold() -> geo.Models:
    """
    ``M = Bl_S Gr(2,4)`` for a nodal Enriques surface ``S``, also given as
    the zero locus of ``Sym^2 U^dual (x) O(1)`` in ``Gr(2,4) x P^3``.
    """
    amb = grassmannian_times_p3()
    zero_locus = geo.ZeroLocus(amb, sym2_dual_tautological_twisted(amb))
    blowup = geo.BlowUp(geo.Grassmannian24("s1"), geo.enriques(), 2, "E")
    return geo.Models((zero_locus, blowup))


def join_resolution() -> geo.ProjBundle:
    """``J = P_{P(V1) x P(V2)}(O(-2,0) (+) O(0,-2))``."""
    base = plane_pair()
    lat = geo.lattice(base)
    return geo.ProjBundle(base, FormalBundle.split([lat(-2, 0), lat(0, -2)]), "H")


def double_cover_bundle() -> geo.ProjBundle:
    """``Jt = P_{P(V1) x P(V2)}(O(-1,0) (+) O(0,-1))``."""
    base = plane_pair("Ht1", "Ht2")
    lat = geo.lattice(base)
    return geo.ProjBundle(base, FormalBundle.split([lat(-1, 0), lat(0, -1)]), "Ht")


def two_plane_blowup() -> geo.BlowUp:
    """
    ``P(V1 (+) V2)`` blown up along the disjoint planes ``P(V1)`` and
    ``P(V2)``.  Disjointness lets this be two successive blowups.
    """
    p5 = geo.ProjectiveSpace(5, "h")
    first = geo.BlowUp(p5, geo.ProjectiveSpace(2, "p1"), 3, "E1")
    return geo.BlowUp(first, geo.ProjectiveSpace(2, "p2"), 3, "E2")


def double_cover() -> geo.Models:
    return geo.Models((double_cover_bundle(), two_plane_blowup()))


def exceptional_relations(jt: geo.ProjBundle | None = None) -> dict[str, DivisorClass]:
    """``E1 = Ht - Ht2``, ``E2 = Ht - Ht1`` and ``h = Ht`` in the bundle lattice of ``Jt``."""
    lat = geo.lattice(jt or double_cover_bundle())
    return {
        "h": lat.gen("Ht"),
        "E1": lat.gen("Ht") - lat.gen("Ht2"),
        "E2": lat.gen("Ht") - lat.gen("Ht1"),
    }


def k3_cover_bundle(jt: geo.ProjBundle | None = None) -> FormalBundle:
    """``O(2 Ht)^{(+)3}`` on ``Jt``; a tau-invariant section cuts out the K3 cover."""
    lat = geo.lattice(jt or double_cover_bundle())
    return FormalBundle.split([2 * lat.gen("Ht")] * 3)


def k3_cover() -> geo.ZeroLocus:
    jt = double_cover_bundle()
    return geo.ZeroLocus(jt, k3_cover_bundle(jt))


def enriques_sixfold() -> geo.UniversalDivisor:
    """
    The universal divisor ``X`` in ``J x P(W)`` of the 3-dimensional linear
    system of sections of ``O_J(H)`` cutting out the Enriques surface.
    """
    j = join_resolution()
    return geo.UniversalDivisor(j, 3, geo.enriques(), geo.lattice(j).gen("H"), "H'")


def anticanonical_on_join_part(x: geo.UniversalDivisor) -> DivisorClass:
    """The ``J`` component ``H + H1 + H2`` of ``-K_X``."""
    return restrict(-geo.canonical(x), geo.lattice(x.base))

