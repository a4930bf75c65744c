import pytest

from fanosod import constructions as cn, geometry as geo, hodge as hd
from fanosod.ktheory import FgAbGroup
from fanosod.picard import FormalBundle, free_lattice, substitute

M = cn.reye_fourfold()
X = cn.enriques_sixfold()
J = cn.join_resolution()
JT = cn.double_cover()


def diag(*v):
    return hd.HodgeDiamond.diagonal(list(v))


def test_dimensions():
    assert geo.dimension(M) == 4
    assert geo.dimension(J) == 5
    assert geo.dimension(JT) == 5
    assert geo.dimension(X) == 6
    assert geo.dimension(cn.k3_cover()) == 2
    assert geo.dimension(cn.grassmannian_times_p3()) == 7


def test_hodge_examples():
    assert geo.hodge(M) == diag(1, 2, 12, 2, 1)
    assert geo.hodge(J) == diag(1, 3, 5, 5, 3, 1)
    assert geo.hodge(X) == diag(1, 4, 9, 20, 9, 4, 1)
    for model in JT.models:
        assert geo.hodge(model) == diag(1, 3, 5, 5, 3, 1)


def test_zero_locus_hodge_unsupported():
    with pytest.raises(geo.Unsupported):
        geo.hodge(M.models[0])
    with pytest.raises(geo.Unsupported):
        geo.sod(cn.k3_cover())


def test_canonical_examples():
    assert str(geo.canonical(X)) == "-H1 - H2 - H - 2H'"
    assert str(geo.canonical(M)) == "-s1 - H'"
    assert str(geo.canonical(J)) == "-H1 - H2 - 2H"
    assert str(geo.canonical(JT.models[0])) == "-2Ht1 - 2Ht2 - 2Ht"
    assert str(geo.canonical(JT.models[1])) == "-6h + 2E1 + 2E2"
    assert str(geo.canonical(geo.Grassmannian24())) == "-4s1"
    assert geo.canonical(geo.enriques()).is_zero()


def test_canonical_of_k3_cover_is_supported_on_exceptional_divisors():
    # trivial on the surface because it avoids E1 and E2
    K = geo.canonical(cn.k3_cover())
    assert str(K) == "-2Ht1 - 2Ht2 + 4Ht"
    rel = cn.exceptional_relations()
    assert K == 2 * rel["E1"] + 2 * rel["E2"]


def test_anticanonical_restricted_to_join():
    assert str(cn.anticanonical_on_join_part(X)) == "H1 + H2 + H"


def test_models_are_consistent():
    # canonical classes of the two double-cover models correspond under the relations
    rel = cn.exceptional_relations()
    assert substitute(geo.canonical(JT.models[1]), rel) == geo.canonical(JT.models[0])
    # both Reye models agree on the Picard rank (2)
    assert geo.lattice(M.models[0]).rank == geo.lattice(M.models[1]).rank == 2


def test_sod_examples():
    comps, exc = geo.sod_summary(geo.sod(M))
    assert comps == {"Enriques": 1} and exc == 6
    comps, exc = geo.sod_summary(geo.sod(X))
    assert comps == {"Enriques": 1} and exc == 36
    pieces = geo.sod(X)
    assert pieces[0].component is not None and pieces[0].origin == "jump locus"
    assert [p.exceptional for p in pieces[1:]] == [18, 18]
    assert geo.sod_summary(geo.sod(J)) == ({}, 18)


def test_sod_of_blowup_lists_center_copies_first():
    bl = geo.BlowUp(geo.ProjectiveSpace(4), geo.enriques(), 2, "E")
    assert [p.describe() for p in geo.sod(bl)] == [
        "D(Enriques) [blowup center copy 1]",
        "5 exceptional [blowup ambient]",
    ]
    bl3 = geo.BlowUp(geo.ProjectiveSpace(5, "h"), geo.ProjectiveSpace(2, "p"), 3, "E")
    assert geo.sod_summary(geo.sod(bl3)) == ({}, 12)


def test_sod_products_merge_exceptional_blocks():
    pieces = geo.sod(geo.Product(geo.ProjectiveSpace(1, "a"), geo.ProjectiveSpace(2, "b")))
    assert len(pieces) == 1 and pieces[0].exceptional == 6
    with pytest.raises(geo.Unsupported):
        geo.sod(geo.Product(geo.enriques(), geo.k3()))
    e_p1 = geo.sod(geo.Product(geo.enriques(), geo.ProjectiveSpace(1, "a")))
    assert geo.sod_summary(e_p1) == ({"Enriques": 2}, 0)


@pytest.mark.parametrize(
    "v",
    [M, X, J, JT, geo.Grassmannian24(), geo.BlowUp(geo.ProjectiveSpace(4), geo.enriques(), 2, "E")],
    ids=["M", "X", "J", "Jt", "Gr", "BlP4"],
)
def test_sod_accounts_for_the_whole_diamond(v):
    """Every SOD piece contributes its diamond total to h^*; they must add up."""
    total = 0
    for p in geo.sod(v):
        total += p.component.diamond.total() if p.component else p.exceptional
    assert total == geo.hodge(v).total()
    assert geo.k0(v).rank == geo.hodge(v).total()


def test_k0():
    assert geo.k0(M) == FgAbGroup(18, (2,))
    assert geo.k0(X) == FgAbGroup(48, (2,))
    assert geo.k0(JT) == FgAbGroup(18)
    assert geo.k0(geo.k3()) == FgAbGroup(24)


def test_invalid_expressions():
    with pytest.raises(geo.InvalidExpr):
        geo.BlowUp(geo.Grassmannian24(), geo.enriques(), 3, "E")
    with pytest.raises(geo.InvalidExpr):
        geo.BlowUp(geo.Grassmannian24(), geo.enriques(), 2, "s1")
    with pytest.raises(geo.InvalidExpr):
        geo.ProjectiveSpace(-1)
    with pytest.raises(geo.InvalidExpr):
        geo.Models((J, M))
    with pytest.raises(geo.InvalidExpr):
        geo.ProjBundle(geo.ProjectiveSpace(2), FormalBundle.split([free_lattice("x")(1)]), "H")
    with pytest.raises(geo.InvalidExpr):
        geo.UniversalDivisor(J, 2, geo.enriques(), geo.lattice(J).gen("H"))
    with pytest.raises(geo.InvalidExpr):
        geo.ZeroLocus(geo.ProjectiveSpace(1), FormalBundle.trivial(geo.lattice(geo.ProjectiveSpace(1)), 2))
    with pytest.raises(geo.InvalidExpr):
        geo.Atomic("bad", 2, hd.projective_space(1), FgAbGroup(2))


def test_universal_divisor_helpers():
    assert X.linear_system() == geo.ProjectiveSpace(2, "H'")
    F = X.section_bundle()
    assert F.rank == 1 and str(F.c1) == "H + H'"
