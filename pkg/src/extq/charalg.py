"""Classical character algebra: multiplicities, Weyl characters, tensor products."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NotDominant, NotWInvariant
from .rootdata import RootSystem, Weight, is_dominant


@dataclass(frozen=True)
class FormalCharacter:
    """Finite Z-linear combination of formal exponentials e^mu.

    Zero coefficients are dropped on construction.  Signed (virtual)
    characters are allowed.
    """

    support: Mapping[Weight, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(k): v for k, v in dict(self.support).items() if v}
        object.__setattr__(self, "support", clean)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Sequence[int], int]]) -> "FormalCharacter":
        acc: dict[Weight, int] = {}
        for k, v in terms:
            k = tuple(k)
            acc[k] = acc.get(k, 0) + v
        return cls(acc)

    def __getitem__(self, mu: Sequence[int]) -> int:
        return self.support.get(tuple(mu), 0)

    def __len__(self) -> int:
        return len(self.support)

    def __iter__(self):
        return iter(sorted(self.support))

    def items(self) -> list[tuple[Weight, int]]:
        return sorted(self.support.items())

    def __eq__(self, other):
        if not isinstance(other, FormalCharacter):
            return NotImplemented
        return self.support == other.support

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def __add__(self, other: "FormalCharacter") -> "FormalCharacter":
        acc = dict(self.support)
        for k, v in other.support.items():
            acc[k] = acc.get(k, 0) + v
        return FormalCharacter(acc)

    def __neg__(self) -> "FormalCharacter":
        return FormalCharacter({k: -v for k, v in self.support.items()})

    def __sub__(self, other: "FormalCharacter") -> "FormalCharacter":
        return self + (-other)

    def scale(self, c: int) -> "FormalCharacter":
        return FormalCharacter({k: c * v for k, v in self.support.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        acc: dict[Weight, int] = {}
        for a, x in self.support.items():
            for b, y in other.support.items():
                k = tuple(p + q for p, q in zip(a, b))
                acc[k] = acc.get(k, 0) + x * y
        return FormalCharacter(acc)

    __rmul__ = __mul__

    @property
    def dimension(self) -> int:
        return sum(self.support.values())

    def is_zero(self) -> bool:
        return not self.support

    def is_w_invariant(self, rs: RootSystem) -> bool:
        return all(
            self[rs.reflect(i, mu)] == m for mu, m in self.support.items() for i in range(rs.rank)
        )

    def frobenius_twist(self, ell: int) -> "FormalCharacter":
        """The character with every weight scaled by ell."""
        return FormalCharacter({tuple(ell * x for x in k): v for k, v in self.support.items()})

    def dominant_part(self) -> dict[Weight, int]:
        return {k: v for k, v in self.support.items() if is_dominant(k)}


ZERO = FormalCharacter()


# -- Freudenthal -------------------------------------------------------------------

_memo: dict[tuple[RootSystem, Weight], dict[Weight, int]] = {}
_memo_lock = threading.Lock()


def _check_dominant(lam: Sequence[int]) -> Weight:
    lam = tuple(lam)
    if not is_dominant(lam):
        raise NotDominant(f"{lam} is not dominant")
    return lam


def _depth(rs: RootSystem, lam: Weight, mu: Weight) -> int:
    return int(sum(rs.to_simple_coords(tuple(a - b for a, b in zip(lam, mu)))))


def dominant_multiplicities(lam: Sequence[int], rs: RootSystem) -> dict[Weight, int]:
    """{dominant mu: m_lam(mu)} for every dominant weight of L_0(lam)."""
    lam = _check_dominant(lam)
    key = (rs, lam)
    got = _memo.get(key)
    if got is not None:
        return got
    roots = rs.positive_roots
    # dominant weights below lam are connected to lam by steps down along positive roots
    depth = {lam: 0}
    frontier = [lam]
    while frontier:
        nxt = []
        for v in frontier:
            for b in roots:
                u = tuple(x - y for x, y in zip(v, b.weight))
                if u not in depth and is_dominant(u):
                    depth[u] = _depth(rs, lam, u)
                    nxt.append(u)
        frontier = nxt
    rho = rs.rho
    lr = tuple(x + r for x, r in zip(lam, rho))
    top = rs.form(lr, lr)
    mult: dict[Weight, int] = {lam: 1}
    for mu in sorted(depth, key=lambda v: (depth[v], v)):
        if mu == lam:
            continue
        d = depth[mu]
        total = 0
        for b in roots:
            ht = b.height
            k = 1
            while k * ht <= d:
                nu = tuple(x + k * y for x, y in zip(mu, b.weight))
                m = mult.get(rs.dominant_representative(nu)[0], 0)
                if m:
                    total += rs.form(nu, b.weight) * m
                k += 1
        mr = tuple(x + r for x, r in zip(mu, rho))
        denom = top - rs.form(mr, mr)
        q, r = divmod(2 * total, denom)
        assert r == 0, "Freudenthal recursion produced a non-integer"
        if q:
            mult[mu] = q
    with _memo_lock:
        _memo.setdefault(key, mult)
    return mult


def weight_multiplicity(lam: Sequence[int], mu: Sequence[int], rs: RootSystem) -> int:
    """dim L_0(lam)_mu."""
    dom = dominant_multiplicities(lam, rs)
    return dom.get(rs.dominant_representative(mu)[0], 0)


def weyl_character(lam: Sequence[int], rs: RootSystem) -> FormalCharacter:
    acc: dict[Weight, int] = {}
    for mu, m in dominant_multiplicities(lam, rs).items():
        for v in rs.orbit(mu):
            acc[v] = m
    return FormalCharacter(acc)


def weyl_dimension(lam: Sequence[int], rs: RootSystem) -> int:
    lam = _check_dominant(lam)
    rho = rs.rho
    lr = tuple(x + r for x, r in zip(lam, rho))
    out = Fraction(1)
    for b in rs.positive_roots:
        out *= Fraction(rs.form(lr, b.weight), rs.form(rho, b.weight))
    assert out.denominator == 1
    return int(out)


def euler_characteristic(mu: Sequence[int], rs: RootSystem) -> tuple[int, Weight | None]:
    """chi(mu) = sign * chi(lam) with lam dominant, or (0, None) if mu is dot-singular."""
    v, steps = rs.dominant_representative(tuple(x + 1 for x in mu))
    if any(x == 0 for x in v):
        return 0, None
    return (-1) ** steps, tuple(x - 1 for x in v)


def euler_character(mu: Sequence[int], rs: RootSystem) -> FormalCharacter:
    sign, lam = euler_characteristic(mu, rs)
    if not sign:
        return ZERO
    return weyl_character(lam, rs).scale(sign)


# -- tensor products ---------------------------------------------------------------


def tensor_multiplicity(nu: Sequence[int], mu: Sequence[int], lam: Sequence[int], rs: RootSystem) -> int:
    """[L_0(nu) (x) L_0(mu) : L_0(lam)] by Racah-Speiser."""
    nu, mu, lam = _check_dominant(nu), _check_dominant(mu), _check_dominant(lam)
    dom = dominant_multiplicities(nu, rs)
    total = 0
    for w in rs.weyl_group:
        wl = rs.dot(w, lam)
        gamma = tuple(a - b for a, b in zip(wl, mu))
        m = dom.get(rs.dominant_representative(gamma)[0], 0)
        if m:
            total += w.sign * m
    return total


def tensor_decompose(nu: Sequence[int], mu: Sequence[int], rs: RootSystem) -> dict[Weight, int]:
    """All of L_0(nu) (x) L_0(mu), via the Brauer-Klimyk sum over weights of nu."""
    mu = _check_dominant(mu)
    acc: dict[Weight, int] = {}
    for gamma, m in weyl_character(nu, rs).support.items():
        sign, lam = euler_characteristic(tuple(a + b for a, b in zip(mu, gamma)), rs)
        if sign:
            acc[lam] = acc.get(lam, 0) + sign * m
    return {k: v for k, v in sorted(acc.items()) if v}


def character_decompose(c: FormalCharacter, rs: RootSystem) -> list[tuple[Weight, int]]:
    """Expand a W-invariant character in irreducible characters (greedy peel-off)."""
    if not c.is_w_invariant(rs):
        raise NotWInvariant("character is not W-invariant")
    rho = rs.rho
    rest = dict(c.support)
    out = []
    while rest:
        top = max((k for k in rest if is_dominant(k)), key=lambda k: (rs.form(k, rho), k))
        a = rest[top]
        out.append((top, a))
        for k, m in weyl_character(top, rs).support.items():
            v = rest.get(k, 0) - a * m
            if v:
                rest[k] = v
            else:
                rest.pop(k, None)
    return sorted(out)
