"""Text and ``key=value`` renderings of an analysis; both are byte-deterministic."""

from __future__ import annotations

from dataclasses import dataclass, field

from fanosod import ample, geometry as geo, hodge as hd, ktheory
from fanosod.cohomology import euler
from fanosod.picard import PicardError


@dataclass
class Analysis:
    name: str
    dimension: int
    diamond: hd.HodgeDiamond | None = None
    canonical: object = None
    fano: object = None
    sod: tuple = ()
    k0: ktheory.FgAbGroup | None = None
    obstruction: object = None
    notes: dict = field(default_factory=dict)


def analyze(v, name: str = "") -> Analysis:
    out = Analysis(name, geo.dimension(v))
    try:
        out.diamond = geo.hodge(v)
    except geo.Unsupported as exc:
        out.notes["hodge"] = str(exc)
    try:
        out.canonical = geo.canonical(v)
    except geo.Unsupported as exc:
        out.notes["canonical"] = str(exc)
    try:
        out.fano = ample.is_fano(v)
    except (geo.GeometryError, PicardError) as exc:
        out.fano = ample.NotShown(str(exc))
    try:
        out.sod = geo.sod(v)
        out.k0 = geo.k0(v)
        out.obstruction = ktheory.fec_obstruction(out.k0)
    except geo.Unsupported as exc:
        out.notes["sod"] = str(exc)
    return out


def _sod_line(pieces) -> str:
    return "<" + ", ".join(p.describe() for p in pieces) + ">"


def render_text(a: Analysis) -> str:
    lines = [f"variety: {a.name}", f"dimension = {a.dimension}"]
    if a.diamond is not None:
        lines.append("hodge diamond:")
        lines += ["  " + row for row in a.diamond.pprint().splitlines()]
        for p, q, x in a.diamond.nonzero_entries():
            lines.append(f"h^{{{p},{q}}} = {x}")
        lines.append(f"diagonal = {'yes' if hd.is_diagonal(a.diamond) else 'no'}")
    else:
        lines.append(f"hodge diamond: unavailable ({a.notes['hodge']})")
    if a.canonical is not None:
        lines.append(f"canonical class K = {a.canonical}")
    else:
        lines.append(f"canonical class: unavailable ({a.notes['canonical']})")
    lines.append(f"fano verdict: {a.fano}")
    lines += ["  " + t for t in getattr(a.fano, "trace", ())]
    if a.k0 is not None:
        comps, exc = geo.sod_summary(a.sod)
        lines.append(f"SOD = {_sod_line(a.sod)}")
        parts = [f"D({n}) x{c}" for n, c in comps.items()] + [f"{exc} exceptional"]
        lines.append("SOD summary: " + ", ".join(parts))
        lines.append(f"K0 = {a.k0}")
        lines.append(f"full exceptional collection: {a.obstruction}")
        lines.append(f"  {a.obstruction.explain()}")
    else:
        lines.append(f"SOD: unavailable ({a.notes['sod']})")
    return "\n".join(lines) + "\n"


def render_machine(a: Analysis) -> str:
    kv = [("variety", a.name), ("dimension", a.dimension)]
    if a.diamond is not None:
        for p, q, x in a.diamond.nonzero_entries():
            kv.append((f"hodge.h[{p},{q}]", x))
        kv.append(("hodge.diagonal", str(hd.is_diagonal(a.diamond)).lower()))
    else:
        kv.append(("hodge", "unavailable"))
    kv.append(("canonical", a.canonical if a.canonical is not None else "unavailable"))
    kv.append(("fano", "Fano" if isinstance(a.fano, ample.Fano) else "NotShown"))
    for i, t in enumerate(getattr(a.fano, "trace", ())):
        kv.append((f"fano.trace[{i}]", t.strip()))
    if a.k0 is not None:
        comps, exc = geo.sod_summary(a.sod)
        kv.append(("sod.components", ",".join(f"{n}:{c}" for n, c in comps.items())))
        kv.append(("sod.exceptional", exc))
        kv.append(("k0", a.k0))
        kv.append(("k0.rank", a.k0.rank))
        kv.append(("k0.torsion", ",".join(map(str, a.k0.torsion))))
        kv.append(("obstruction", a.obstruction))
    else:
        kv.append(("sod", "unavailable"))
    return "".join(f"{k}={v}\n" for k, v in kv)


def render_cohomology(vec, fmt: str = "text") -> str:
    sep = "=" if fmt == "machine" else " = "
    lines = [f"h{q}{sep}{x}" for q, x in enumerate(vec)]
    lines.append(f"chi{sep}{euler(vec)}")
    return "\n".join(lines) + "\n"
