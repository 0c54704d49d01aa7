"""Ext^1 between simple modules: regular pairs via mu-coefficients, the u_q
table E^1(lam0, mu0), and the general sum over A_0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .affine import affine_group
from .charalg import tensor_multiplicity
from .errors import (
    EqualRestrictedParts,
    EqualWeights,
    NotDominant,
    NotRegular,
    NotRestricted,
    PreconditionLtooSmall,
)
from .kl import KLTable, mu
from .rootdata import (
    QContext,
    Weight,
    dominance_lt,
    is_dominant,
    is_restricted,
    restricted_weights,
    steinberg_decompose,
    weights_below_bound,
)


class Case(str, enum.Enum):
    SELF_EXT = "self-ext"
    SAME_RESTRICTED_PART = "same-restricted-part"
    UNLINKED = "unlinked"
    GENERAL_SUM = "general-sum"
    KL_MU = "kl-mu"
    NOT_COVERED = "not-covered"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Presentation:
    """One accepted choice (z, y, w = z s) with its mu-value.

    Words are over the reflections in the walls of A^-, i.e. the generators
    after conjugation by w0; ``wall`` is the type of the crossed wall.
    """

    swapped: bool
    z: tuple[int, ...]
    y: tuple[int, ...]
    w: tuple[int, ...]
    wall: int
    value: int

    def as_dict(self) -> dict:
        return {
            "swapped": self.swapped,
            "z": list(self.z),
            "y": list(self.y),
            "w": list(self.w),
            "s": self.wall,
            "mu": self.value,
        }


@dataclass(frozen=True)
class Contribution:
    nu: Weight
    e1_mult: int | None
    tensor_mult: int

    def as_dict(self) -> dict:
        return {"nu": list(self.nu), "e1": self.e1_mult, "tensor": self.tensor_mult}


@dataclass(frozen=True)
class ExtResult:
    dimension: int | None
    case_tag: Case
    contributions: tuple[Contribution, ...] = ()
    presentation: Presentation | None = None
    presentations: tuple[Presentation, ...] = ()
    note: str = ""

    @property
    def covered(self) -> bool:
        return self.case_tag is not Case.NOT_COVERED

    @property
    def presentation_values(self) -> set[int]:
        return {p.value for p in self.presentations}

    @property
    def consistent(self) -> bool:
        """All accepted presentations, in either argument order, agree."""
        return len(self.presentation_values) <= 1

    def as_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "case": self.case_tag.value,
            "contributions": [c.as_dict() for c in self.contributions],
            "presentation": self.presentation.as_dict() if self.presentation else None,
            "presentations": len(self.presentations),
            "note": self.note,
        }


def _require_dominant(*weights: Sequence[int]) -> None:
    for lam in weights:
        if not is_dominant(lam):
            raise NotDominant(f"{tuple(lam)} is not dominant")


def _require_ell(ctx: QContext) -> None:
    if ctx.ell < ctx.h:
        raise PreconditionLtooSmall(f"ell = {ctx.ell} is below the Coxeter number {ctx.h}")


def _w0_dot(rs, lam: Sequence[int]) -> Weight:
    return tuple(x - 1 for x in rs.w0([x + 1 for x in lam]))


def _presentations(a: Weight, b: Weight, ctx: QContext, table: KLTable, swapped: bool) -> list[Presentation]:
    """Accepted presentations with a = z.lam, b = y.lam and w = z s above z.

    Lengths must be counted from A^-, so weights are moved by w0 first; the
    base then sits in A^+ where the group's generators are the walls.  The
    wall of z.lam of type s is crossed by right multiplication with s, and
    for y the wall of the same type is tested.
    """
    g = affine_group(ctx)
    rs = ctx.root_system
    base = _w0_dot(rs, g.antidominant_base(a))
    z = g.element_for_weight(_w0_dot(rs, a), base)
    y = g.element_for_weight(_w0_dot(rs, b), base)
    out = []
    for s in range(g.n + 1):
        w = g.from_word(z.word + (s,))
        up = _w0_dot(rs, g.apply_dot(w, base))
        if not (is_dominant(up) and dominance_lt(a, up, rs)):
            continue
        if y == w or not table.leq(y, w):
            continue
        q = _w0_dot(rs, g.apply_dot(g.from_word(y.word + (s,)), base))
        if not dominance_lt(q, b, rs):
            continue
        out.append(Presentation(swapped, z.word, y.word, w.word, s, mu(z, y, table)))
    return out


def ext_regular_pair(lam1: Sequence[int], lam2: Sequence[int], ctx: QContext, table: KLTable) -> ExtResult:
    """dim Ext^1(L_q(lam1), L_q(lam2)) for regular dominant weights via mu-coefficients."""
    lam1, lam2 = tuple(lam1), tuple(lam2)
    _require_ell(ctx)
    _require_dominant(lam1, lam2)
    if lam1 == lam2:
        raise EqualWeights(f"both weights are {lam1}")
    for lam in (lam1, lam2):
        if not ctx.is_regular(lam):
            raise NotRegular(f"{lam} is not regular")
    g = affine_group(ctx)
    if not g.linked(lam1, lam2):
        return ExtResult(0, Case.UNLINKED)
    direct = _presentations(lam1, lam2, ctx, table, swapped=False)
    swapped = _presentations(lam2, lam1, ctx, table, swapped=True)
    found = tuple(direct + swapped)
    if not found:
        return ExtResult(None, Case.NOT_COVERED, note="no presentation in either order")
    first = found[0]
    return ExtResult(first.value, Case.KL_MU, presentation=first, presentations=found)


@dataclass
class E1Multiplicities:
    """[E^1(lam0, mu0) : L_0(nu)] over a domain of nu (A_0 unless stated)."""

    lam0: Weight
    mu0: Weight
    values: dict[Weight, int] = field(default_factory=dict)
    not_covered: list[Weight] = field(default_factory=list)
    results: dict[Weight, ExtResult] = field(default_factory=dict)

    def __getitem__(self, nu: Sequence[int]) -> int:
        return self.values[tuple(nu)]

    def get(self, nu: Sequence[int], default=None):
        return self.values.get(tuple(nu), default)

    @property
    def nonzero(self) -> dict[Weight, int]:
        return {k: v for k, v in self.values.items() if v}

    def as_dict(self) -> dict:
        return {
            "lambda0": list(self.lam0),
            "mu0": list(self.mu0),
            "multiplicities": [[list(k), v] for k, v in sorted(self.values.items()) if v],
            "not_covered": [list(k) for k in self.not_covered],
        }


def e1_multiplicities(
    lam0: Sequence[int],
    mu0: Sequence[int],
    ctx: QContext,
    table: KLTable,
    domain: Iterable[Weight] | None = None,
) -> E1Multiplicities:
    lam0, mu0 = tuple(lam0), tuple(mu0)
    for lam in (lam0, mu0):
        if not is_restricted(lam, ctx.ell):
            raise NotRestricted(f"{lam} is not restricted for ell = {ctx.ell}")
    if lam0 == mu0:
        raise EqualRestrictedParts(f"both restricted parts are {lam0}")
    _require_ell(ctx)
    out = E1Multiplicities(lam0, mu0)
    for nu in ctx.A0 if domain is None else domain:
        lam = tuple(a + ctx.ell * b for a, b in zip(lam0, nu))
        if not (ctx.is_regular(lam) and ctx.is_regular(mu0)):
            out.not_covered.append(nu)
            continue
        res = ext_regular_pair(lam, mu0, ctx, table)
        out.results[nu] = res
        if res.covered:
            out.values[nu] = res.dimension
        else:
            out.not_covered.append(nu)
    return out


def ext_dimension(lam: Sequence[int], mu_: Sequence[int], ctx: QContext, table: KLTable) -> ExtResult:
    """dim Ext^1(L_q(lam), L_q(mu)) between simple modules."""
    lam, mu_ = tuple(lam), tuple(mu_)
    _require_dominant(lam, mu_)
    if lam == mu_:
        return ExtResult(0, Case.SELF_EXT)
    lam0, lam1 = steinberg_decompose(lam, ctx)
    mu0, mu1 = steinberg_decompose(mu_, ctx)
    if lam0 == mu0:
        if ctx.very_special:
            return ExtResult(None, Case.NOT_COVERED, note="equal restricted parts in the very special case")
        return ExtResult(0, Case.SAME_RESTRICTED_PART)
    _require_ell(ctx)
    g = affine_group(ctx)
    if not g.linked(lam, mu_):
        return ExtResult(0, Case.UNLINKED)
    rs = ctx.root_system
    contributions = []
    total = 0
    missing = []
    regular = ctx.is_regular(lam0) and ctx.is_regular(mu0)
    for nu in ctx.A0:
        tm = tensor_multiplicity(nu, mu1, lam1, rs)
        if not tm:
            continue
        if not regular:
            missing.append(nu)
            contributions.append(Contribution(nu, None, tm))
            continue
        res = ext_regular_pair(tuple(a + ctx.ell * b for a, b in zip(lam0, nu)), mu0, ctx, table)
        if not res.covered:
            missing.append(nu)
            contributions.append(Contribution(nu, None, tm))
            continue
        contributions.append(Contribution(nu, res.dimension, tm))
        total += res.dimension * tm
    if missing:
        return ExtResult(
            None,
            Case.NOT_COVERED,
            tuple(contributions),
            note="no E^1 value for nu in " + ", ".join(str(list(n)) for n in missing),
        )
    return ExtResult(total, Case.GENERAL_SUM, tuple(contributions))


# -- support bound check ---------------------------------------------------------


@dataclass
class A0BoundReport:
    type_label: str
    rank: int
    ell: int
    box_bound: int
    box_size: int
    pairs: int = 0
    nonzero_tables: int = 0
    nonzero_entries: int = 0
    not_covered: int = 0
    queries: int = 0
    violations: list[dict] = field(default_factory=list)
    inconsistent: list[dict] = field(default_factory=list)
    roundtrip_checked: int = 0
    roundtrip_mismatches: list[dict] = field(default_factory=list)
    tables: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations and not self.inconsistent and not self.roundtrip_mismatches

    def as_dict(self) -> dict:
        return {
            "type": self.type_label,
            "rank": self.rank,
            "ell": self.ell,
            "box_bound": self.box_bound,
            "box_size": self.box_size,
            "pairs": self.pairs,
            "nonzero_tables": self.nonzero_tables,
            "nonzero_entries": self.nonzero_entries,
            "queries": self.queries,
            "not_covered": self.not_covered,
            "violations": self.violations,
            "inconsistent": self.inconsistent,
            "roundtrip_checked": self.roundtrip_checked,
            "roundtrip_mismatches": self.roundtrip_mismatches,
            "passed": self.passed,
        }


def check_A0_bound(ctx: QContext, table: KLTable, roundtrip: bool = True) -> A0BoundReport:
    """Recompute E^1 over the box <nu, alpha_0^vee> <= 3(h-1) and flag support outside A_0.

    With ``roundtrip`` each covered entry with nu in A_0 is also compared
    with ext_dimension(lam0 + ell nu, mu0).
    """
    _require_ell(ctx)
    rs = ctx.root_system
    bound = 3 * (ctx.h - 1)
    box = sorted(weights_below_bound(rs.highest_short_root.coroot_coords, bound))
    a0 = set(ctx.A0)
    rep = A0BoundReport(rs.type_label, rs.rank, ctx.ell, bound, len(box))
    x1 = [lam for lam in restricted_weights(ctx) if ctx.is_regular(lam)]
    for lam0 in x1:
        for mu0 in x1:
            if lam0 == mu0:
                continue
            rep.pairs += 1
            e1 = e1_multiplicities(lam0, mu0, ctx, table, domain=box)
            rep.queries += len(box)
            rep.not_covered += len(e1.not_covered)
            nz = e1.nonzero
            if nz:
                rep.nonzero_tables += 1
                rep.nonzero_entries += len(nz)
                rep.tables[(lam0, mu0)] = nz
            for nu, v in nz.items():
                if nu not in a0:
                    rep.violations.append({"lambda0": list(lam0), "mu0": list(mu0), "nu": list(nu), "mult": v})
            for nu, res in e1.results.items():
                if not res.consistent:
                    rep.inconsistent.append(
                        {"lambda0": list(lam0), "mu0": list(mu0), "nu": list(nu), "values": sorted(res.presentation_values)}
                    )
            if not roundtrip:
                continue
            for nu in ctx.A0:
                lam = tuple(a + ctx.ell * b for a, b in zip(lam0, nu))
                got = ext_dimension(lam, mu0, ctx, table)
                want = e1.get(nu)
                rep.roundtrip_checked += 1
                if got.dimension != want:
                    rep.roundtrip_mismatches.append(
                        {"lambda0": list(lam0), "mu0": list(mu0), "nu": list(nu), "ext": got.dimension, "e1": want}
                    )
    return rep

