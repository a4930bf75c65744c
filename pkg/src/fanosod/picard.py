"""
Divisor classes in lattices with named generators, canonical classes of
the standard constructions, and formal vector bundles.

Classes are always additive: the twist written ``O(2,0)`` on
``P(V1) x P(V2)`` is the class ``2H1``.  On a projective bundle the
relative class ``H`` is fixed by the embedding ``O(-H) -> pi^* E``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from fanosod import linalg


class PicardError(ValueError):
    pass


@dataclass(frozen=True)
class PicardLattice:
    """
    Free lattice on ordered, named generators.

    ``hyperplanes`` marks generators that are pulled back hyperplane classes
    of projective-space factors; the ampleness criteria rely on it.
    ``relations`` records vectors declared zero; they are kept as
    substitution rules and never used to quotient.
    """

    generators: tuple[str, ...]
    relations: tuple[tuple[int, ...], ...] = ()
    hyperplanes: frozenset = frozenset()

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise PicardError(f"duplicate generator names in {self.generators}")
        for rel in self.relations:
            if len(rel) != len(self.generators):
                raise PicardError("relation length does not match generator count")
        if not self.hyperplanes <= set(self.generators):
            raise PicardError("hyperplane markers must name generators")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise PicardError(f"no generator {name!r} in lattice {self.generators}") from None

    def gen(self, name: str) -> "DivisorClass":
        coeffs = [0] * self.rank
        coeffs[self.index(name)] = 1
        return DivisorClass(self, tuple(coeffs))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def __call__(self, *coeffs: int, **named: int) -> "DivisorClass":
        """``lat(1, 2)`` or ``lat(H1=1, H2=2)``."""
        if coeffs and named:
            raise PicardError("give coefficients positionally or by name, not both")
        if named:
            return self.from_dict(named)
        if len(coeffs) != self.rank:
            raise PicardError(f"expected {self.rank} coefficients, got {len(coeffs)}")
        return DivisorClass(self, tuple(int(c) for c in coeffs))

    def from_dict(self, coeffs: Mapping[str, int]) -> "DivisorClass":
        out = [0] * self.rank
        for name, c in coeffs.items():
            out[self.index(name)] += int(c)
        return DivisorClass(self, tuple(out))

    def extend(self, name: str, hyperplane: bool = False) -> "PicardLattice":
        if name in self.generators:
            raise PicardError(f"generator name {name!r} collides with {self.generators}")
        rels = tuple(rel + (0,) for rel in self.relations)
        hyp = self.hyperplanes | {name} if hyperplane else self.hyperplanes
        return PicardLattice(self.generators + (name,), rels, hyp)

    def with_relations(self, relations: Iterable["DivisorClass"]) -> "PicardLattice":
        rels = tuple(r.coeffs for r in relations)
        return PicardLattice(self.generators, self.relations + rels, self.hyperplanes)

    def is_pure_hyperplane(self) -> bool:
        return set(self.generators) == set(self.hyperplanes)


def product_lattice(a: PicardLattice, b: PicardLattice) -> PicardLattice:
    clash = set(a.generators) & set(b.generators)
    if clash:
        raise PicardError(f"product factors share generator names {sorted(clash)}")
    rels = tuple(r + (0,) * b.rank for r in a.relations) + tuple(
        (0,) * a.rank + r for r in b.relations
    )
    return PicardLattice(a.generators + b.generators, rels, a.hyperplanes | b.hyperplanes)


def free_lattice(*names: str, hyperplanes: Iterable[str] = ()) -> PicardLattice:
    return PicardLattice(tuple(names), (), frozenset(hyperplanes))


@dataclass(frozen=True)
class DivisorClass:
    lattice: PicardLattice
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.lattice.rank:
            raise PicardError(
                f"{len(self.coeffs)} coefficients for a rank-{self.lattice.rank} lattice"
            )

    # equality ignores lattice metadata (hyperplane marks, relations)
    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self.lattice.generators == other.lattice.generators and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.lattice.generators, self.coeffs))

    def _check(self, other: "DivisorClass"):
        if self.lattice.generators != other.lattice.generators:
            raise PicardError(
                f"lattice mismatch: {self.lattice.generators} vs {other.lattice.generators}"
            )

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __getitem__(self, name: str) -> int:
        return self.coeffs[self.lattice.index(name)]

    def as_dict(self) -> dict[str, int]:
        return {g: c for g, c in zip(self.lattice.generators, self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        terms = [(c, g) for g, c in zip(self.lattice.generators, self.coeffs) if c]
        if not terms:
            return "0"
        out = []
        for i, (c, g) in enumerate(terms):
            mag = "" if abs(c) == 1 else str(abs(c))
            if i == 0:
                out.append(("-" if c < 0 else "") + mag + g)
            else:
                out.append(("- " if c < 0 else "+ ") + mag + g)
        return " ".join(out)


def pullback(cls: DivisorClass, target: PicardLattice) -> DivisorClass:
    """Carry ``cls`` into a lattice containing all its generators by name."""
    coeffs = [0] * target.rank
    for g, c in zip(cls.lattice.generators, cls.coeffs):
        if c:
            if g not in target.generators:
                raise PicardError(f"generator {g!r} is not present in {target.generators}")
            coeffs[target.index(g)] += c
    return DivisorClass(target, tuple(coeffs))


def restrict(cls: DivisorClass, target: PicardLattice) -> DivisorClass:
    """Keep only the coefficients of generators present in ``target``."""
    coeffs = [0] * target.rank
    for g, c in zip(cls.lattice.generators, cls.coeffs):
        if g in target.generators:
            coeffs[target.index(g)] += c
    return DivisorClass(target, tuple(coeffs))


def substitute(cls: DivisorClass, dictionary: Mapping[str, DivisorClass]) -> DivisorClass:
    """
    Linear substitution of generators.

    Every generator of ``cls`` with a nonzero coefficient must either be a
    key of ``dictionary`` or already exist in the common target lattice.
    """
    if not dictionary:
        return cls
    targets = list(dictionary.values())
    lat = targets[0].lattice
    for t in targets[1:]:
        if t.lattice.generators != lat.generators:
            raise PicardError("substitution targets live in different lattices")
    out = lat.zero()
    for g, c in zip(cls.lattice.generators, cls.coeffs):
        if not c:
            continue
        if g in dictionary:
            out = out + c * dictionary[g]
        elif g in lat.generators:
            out = out + c * lat.gen(g)
        else:
            raise PicardError(f"unbound generator {g!r}")
    return out


def rewrite_in_basis(cls: DivisorClass, basis: Mapping[str, DivisorClass]) -> DivisorClass:
    """
    Express ``cls`` as an integer combination of the named classes in
    ``basis``; the inverse direction of :func:`substitute`.

    The result lives in a fresh lattice whose generators are the keys of
    ``basis``.  Raises if ``cls`` is not an integral combination.
    """
    names = tuple(basis)
    cols = []
    for name in names:
        b = basis[name]
        b._check(cls)
        cols.append(b.coeffs)
    x = linalg.solve(cols, cls.coeffs)
    if x is None:
        raise PicardError(f"{cls} is not in the span of {', '.join(names)}")
    if any(v.denominator != 1 for v in x):
        raise PicardError(f"{cls} is only a rational combination of {', '.join(names)}")
    return DivisorClass(free_lattice(*names), tuple(int(v) for v in x))


@dataclass(frozen=True)
class FormalBundle:
    """
    A vector bundle remembered by rank and first Chern class, plus its line
    bundle summands when it is split.  Rank 0 is the zero bundle.
    """

    rank: int
    c1: DivisorClass
    summands: tuple[DivisorClass, ...] | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise PicardError("negative rank")
        if self.summands is not None:
            if len(self.summands) != self.rank:
                raise PicardError("rank does not match the number of summands")
            total = self.c1.lattice.zero()
            for s in self.summands:
                total = total + s
            if total != self.c1:
                raise PicardError("c1 is not the sum of the summands")

    @classmethod
    def split(cls, summands: Sequence[DivisorClass], lattice: PicardLattice | None = None) -> "FormalBundle":
        if not summands and lattice is None:
            raise PicardError("empty split bundle needs an explicit lattice")
        lat = lattice or summands[0].lattice
        c1 = lat.zero()
        for s in summands:
            c1 = c1 + s
        return cls(len(summands), c1, tuple(summands))

    @classmethod
    def line(cls, L: DivisorClass) -> "FormalBundle":
        return cls.split([L])

    @classmethod
    def trivial(cls, lattice: PicardLattice, rank: int = 1) -> "FormalBundle":
        return cls.split([lattice.zero()] * rank, lattice)

    @property
    def lattice(self) -> PicardLattice:
        return self.c1.lattice

    @property
    def is_split(self) -> bool:
        return self.summands is not None

    def _need_split(self, what: str) -> tuple[DivisorClass, ...]:
        if self.summands is None:
            raise PicardError(f"{what} needs a split bundle")
        return self.summands

    def dual(self) -> "FormalBundle":
        if self.summands is None:
            return FormalBundle(self.rank, -self.c1)
        return FormalBundle.split([-s for s in self.summands], self.lattice)

    def twist(self, L: DivisorClass) -> "FormalBundle":
        """``E (x) O(L)``."""
        if self.summands is None:
            return FormalBundle(self.rank, self.c1 + self.rank * L)
        return FormalBundle.split([s + L for s in self.summands], self.lattice)

    def det(self) -> DivisorClass:
        return self.c1

    def exterior_power(self, k: int) -> "FormalBundle":
        parts = self._need_split("exterior power")
        sums = []
        for combo in combinations(parts, k):
            acc = self.lattice.zero()
            for s in combo:
                acc = acc + s
            sums.append(acc)
        return FormalBundle.split(sums, self.lattice)

    def direct_sum(self, other: "FormalBundle") -> "FormalBundle":
        if self.summands is not None and other.summands is not None:
            return FormalBundle.split(self.summands + other.summands, self.lattice)
        return FormalBundle(self.rank + other.rank, self.c1 + other.c1)

    def pullback(self, target: PicardLattice) -> "FormalBundle":
        if self.summands is None:
            return FormalBundle(self.rank, pullback(self.c1, target))
        return FormalBundle.split([pullback(s, target) for s in self.summands], target)

    def __str__(self) -> str:
        if self.summands is None:
            return f"rank {self.rank} bundle with c1 = {self.c1}"
        if not self.summands:
            return "0"
        return " (+) ".join(f"O({s})" for s in self.summands)


def sym_power_split(E: FormalBundle, k: int) -> FormalBundle:
    parts = E._need_split("symmetric power")
    if k < 0:
        raise PicardError("negative symmetric power")
    sums = []
    for combo in combinations_with_replacement(parts, k):
        acc = E.lattice.zero()
        for s in combo:
            acc = acc + s
        sums.append(acc)
    return FormalBundle.split(sums, E.lattice)


def c1_sym_rank2(c1_E: DivisorClass, k: int) -> DivisorClass:
    """First Chern class of ``Sym^k`` of a rank-2 bundle."""
    return (k * (k + 1) // 2) * c1_E


def canonical_projective_bundle(K_base: DivisorClass, E: FormalBundle, H_name: str) -> DivisorClass:
    lat = K_base.lattice.extend(H_name)
    return pullback(K_base, lat) - pullback(E.c1, lat) - E.rank * lat.gen(H_name)


def adjunction_zero_locus(K_ambient: DivisorClass, F: FormalBundle) -> DivisorClass:
    return K_ambient + F.c1


def canonical_blowup(K_ambient: DivisorClass, codim: int, E_name: str) -> DivisorClass:
    if codim < 2:
        raise PicardError(f"blowup codimension must be at least 2, got {codim}")
    lat = K_ambient.lattice.extend(E_name)
    return pullback(K_ambient, lat) + (codim - 1) * lat.gen(E_name)



def parse_class(text: str, lattice: PicardLattice) -> DivisorClass:
    """Parse ``"-H1 - H2 + 3H'"`` style input; ``"0"`` is the zero class."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return lattice.zero()
    names = sorted(lattice.generators, key=len, reverse=True)
    pattern = re.compile(
        r"([+-]?)(\d*)\*?(" + "|".join(re.escape(n) for n in names) + r")"
        if names
        else r"(?!)"
    )
    pos = 0
    out = lattice.zero()
    while pos < len(s):
        m = pattern.match(s, pos)
        if not m or (pos > 0 and not m.group(1)):
            raise PicardError(f"cannot parse divisor class {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        out = out + (sign * coef) * lattice.gen(m.group(3))
        pos = m.end()
    return out

