"""
One-sided ampleness certificates and Fano verdicts.

A ``True`` answer (or :class:`Fano`) is a proof; a negative answer only
means no criterion applied, except on products of projective spaces where
"all coefficients positive" is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fanosod import geometry as geo
from fanosod.picard import (
    DivisorClass,
    FormalBundle,
    PicardError,
    pullback,
    restrict,
    sym_power_split,
)


class CriterionInapplicable(ValueError):
    pass


def is_ample_on_pn_product(L: DivisorClass) -> bool:
    lat = L.lattice
    if not lat.is_pure_hyperplane():
        foreign = sorted(set(lat.generators) - set(lat.hyperplanes))
        raise PicardError(f"foreign generators present: {foreign}")
    return lat.rank > 0 and all(c > 0 for c in L.coeffs)


def is_ample_split_bundle(E: FormalBundle) -> bool:
    if not E.is_split:
        raise PicardError("ampleness test needs a split bundle")
    return all(is_ample_on_pn_product(s) for s in E.summands)


def proj_bundle_pushforward(L: DivisorClass, bundle: FormalBundle, H_name: str) -> FormalBundle:
    """``pi_* O(L) = Sym^m E^dual (x) O(D)`` for ``L = mH + D``, ``m >= 1``."""
    m = L[H_name]
    if m <= 0:
        raise CriterionInapplicable(f"criterion inapplicable: coefficient of {H_name} is {m} <= 0")
    D = restrict(L, bundle.lattice)
    return sym_power_split(bundle.dual(), m).twist(D)


def is_ample_on_proj_bundle(L: DivisorClass, bundle: FormalBundle, H_name: str = "H") -> bool:
    return is_ample_split_bundle(proj_bundle_pushforward(L, bundle, H_name))


@dataclass
class Certificate:
    ample: bool
    trace: list[str] = field(default_factory=list)


def certify_ample(v, L: DivisorClass, indent: str = "") -> Certificate:
    """Try to prove ``L`` ample on ``v``; the trace lists every criterion applied."""
    if not isinstance(v, geo.Models):
        L = pullback(L, geo.lattice(v))
    if isinstance(v, geo.ProjectiveSpace) or (
        isinstance(v, geo.Product) and geo.lattice(v).is_pure_hyperplane()
    ):
        ok = is_ample_on_pn_product(L)
        why = "all coefficients positive" if ok else "some coefficient <= 0"
        return Certificate(ok, [f"{indent}{L} on a product of projective spaces: {why}"])

    if isinstance(v, geo.Grassmannian24):
        k = L[v.hyperplane]
        if k > 0:
            return Certificate(True, [f"{indent}{L} on Gr(2,4): positive multiple of the Pluecker class (atomic certified data)"])
        return Certificate(False, [f"{indent}{L} on Gr(2,4): not a positive multiple of the Pluecker class"])

    if isinstance(v, geo.Product):
        la, lb = geo.lattice(v.left), geo.lattice(v.right)
        a, b = restrict(L, la), restrict(L, lb)
        trace = [f"{indent}{L} on a product: split as ({a}) + ({b})"]
        ca = certify_ample(v.left, a, indent + "  ")
        cb = certify_ample(v.right, b, indent + "  ")
        return Certificate(ca.ample and cb.ample, trace + ca.trace + cb.trace)

    if isinstance(v, geo.ProjBundle):
        try:
            push = proj_bundle_pushforward(L, v.bundle, v.H_name)
        except CriterionInapplicable as exc:
            return Certificate(False, [f"{indent}{L} on a projective bundle: {exc}"])
        try:
            ok = is_ample_split_bundle(push)
        except PicardError as exc:
            return Certificate(False, [f"{indent}{L}: base is not a product of projective spaces ({exc})"])
        trace = [
            f"{indent}{L} on a projective bundle is ample iff its pushforward {push} is ample",
            f"{indent}  pushforward summands: " + ", ".join(f"O({s})" for s in push.summands),
            f"{indent}  {'every summand is ample' if ok else 'some summand is not ample'}",
        ]
        return Certificate(ok, trace)

    if isinstance(v, geo.ZeroLocus):
        c = certify_ample(v.ambient, L, indent + "  ")
        return Certificate(c.ample, [f"{indent}{L} is the restriction of a class on the ambient"] + c.trace)

    if isinstance(v, geo.UniversalDivisor):
        c = certify_ample(v.ambient(), L, indent + "  ")
        return Certificate(
            c.ample, [f"{indent}{L} is the restriction of a class on the ambient product"] + c.trace
        )

    if isinstance(v, geo.Models):
        traces = []
        for m in v.models:
            try:
                Lm = L if L.lattice.generators == geo.lattice(m).generators else None
                if Lm is None:
                    continue
                c = certify_ample(m, Lm, indent)
            except (geo.Unsupported, PicardError) as exc:
                traces.append(f"{indent}model {type(m).__name__}: {exc}")
                continue
            if c.ample:
                return c
            traces += c.trace
        return Certificate(False, traces or [f"{indent}no model carries the class {L}"])

    return Certificate(False, [f"{indent}no ampleness criterion for {type(v).__name__}"])


@dataclass(frozen=True)
class Fano:
    trace: tuple[str, ...]

    def __str__(self) -> str:
        return "Fano"


@dataclass(frozen=True)
class NotShown:
    reason: str
    trace: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"NotShown({self.reason})"


def is_fano(v) -> Fano | NotShown:
    if isinstance(v, geo.Models):
        reasons = []
        for m in v.models:
            verdict = is_fano(m)
            if isinstance(verdict, Fano):
                return verdict
            reasons.append(verdict.reason)
        return NotShown("; ".join(reasons))
    try:
        K = geo.canonical(v)
    except geo.Unsupported as exc:
        return NotShown(str(exc))
    anti = -K
    cert = certify_ample(v, anti)
    trace = (f"-K = {anti}",) + tuple(cert.trace)
    if cert.ample:
        return Fano(trace)
    return NotShown(f"could not certify -K = {anti} ample", trace)
