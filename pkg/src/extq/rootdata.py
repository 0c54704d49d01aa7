"""Irreducible root systems, weight-lattice arithmetic and the quantum context.

Weights are plain tuples of ints in the fundamental-weight basis, so that
``lam[i]`` is the pairing of ``lam`` with the i-th simple coroot.  Roots carry
both their simple-root and simple-coroot coordinates; no Euclidean model of
the root system is ever built.

Cartan matrices use ``cartan[i][j] = <alpha_j, alpha_i^vee>`` with Bourbaki
numbering, so column j of the Cartan matrix is alpha_j written in the
fundamental-weight basis and ``symmetrizer[i] * cartan[i][j]`` is the
(symmetric) matrix of inner products of simple roots.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import CapExceeded, InvalidType, NotDominant

Weight = tuple[int, ...]

DEFAULT_WEYL_CAP = 10**6

_WEYL_ORDERS = {
    "E": {6: 51840, 7: 2903040, 8: 696729600},
    "F": {4: 1152},
    "G": {2: 12},
}


def weyl_group_order(type_label: str, rank: int) -> int:
    if type_label == "A":
        return math.factorial(rank + 1)
    if type_label in "BC":
        return 2**rank * math.factorial(rank)
    if type_label == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    return _WEYL_ORDERS[type_label][rank]


def _validate_type(type_label: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(type_label, False)
    if not ok:
        raise InvalidType(f"unsupported root system {type_label}{rank}")


def cartan_matrix(type_label: str, rank: int) -> tuple[tuple[int, ...], ...]:
    _validate_type(type_label, rank)
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        # 1-based Bourbaki labels
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if type_label in "ABCD":
        chain = n - 1 if type_label != "D" else n - 2
        for i in range(1, chain):
            bond(i, i + 1)
        if type_label == "A" and n > 1:
            bond(n - 1, n)
        elif type_label == "B":
            # alpha_n = eps_n is short
            bond(n - 1, n, aij=-1, aji=-2)
        elif type_label == "C":
            # alpha_n = 2 eps_n is long
            bond(n - 1, n, aij=-2, aji=-1)
        elif type_label == "D":
            bond(n - 2, n - 1)
            bond(n - 2, n)
    elif type_label == "E":
        bond(1, 3)
        bond(2, 4)
        for i in range(3, n):
            bond(i, i + 1)
    elif type_label == "F":
        bond(1, 2)
        bond(2, 3, aij=-1, aji=-2)
        bond(3, 4)
    elif type_label == "G":
        bond(1, 2, aij=-3, aji=-1)
    return tuple(tuple(row) for row in a)


def _symmetrizer(cartan) -> tuple[int, ...]:
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if i != j and cartan[i][j] != 0 and d[j] is None:
                # d_i a_ij = d_j a_ji
                d[j] = d[i] * cartan[i][j] / cartan[j][i]
                stack.append(j)
    lo = min(d)
    out = tuple(x / lo for x in d)
    assert all(x.denominator == 1 for x in out)
    return tuple(int(x) for x in out)


def _det_and_adjugate(m) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Exact determinant and adjugate of a small integer matrix."""
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    det = Fraction(1)
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
            det = -det
        p = aug[col][col]
        det *= p
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = [row[n:] for row in aug]
    adj = tuple(tuple(int(det * x) for x in row) for row in inv)
    return int(det), adj


@dataclass(frozen=True)
class Root:
    simple_coords: tuple[int, ...]
    coroot_coords: tuple[int, ...]
    weight: Weight  # the root itself in the fundamental-weight basis
    half_norm: int  # (beta, beta) / 2 in the normalisation where short simple roots have 1

    @property
    def height(self) -> int:
        return sum(self.simple_coords)

    def pair(self, lam: Sequence[int]) -> int:
        """<lam, beta^vee>."""
        return sum(c * x for c, x in zip(self.coroot_coords, lam))


@dataclass(frozen=True)
class WeylElement:
    """Element of the finite Weyl group, identified by its image of rho."""

    word: tuple[int, ...]
    length: int
    rho_image: Weight

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1


@dataclass(frozen=True, eq=False)
class RootSystem:
    type_label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    weyl_cap: int = field(default=DEFAULT_WEYL_CAP, repr=False)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.type_label, self.rank) == (other.type_label, other.rank)

    def __hash__(self):
        return hash((self.type_label, self.rank))

    def __repr__(self):
        return f"RootSystem({self.type_label}{self.rank})"

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    # -- linear algebra ----------------------------------------------------

    @cached_property
    def _det_adj(self):
        return _det_and_adjugate(self.cartan)

    @property
    def det(self) -> int:
        return self._det_adj[0]

    def simple_root_weight(self, i: int) -> Weight:
        return tuple(self.cartan[k][i] for k in range(self.rank))

    def to_simple_coords(self, lam: Sequence[int]) -> tuple[Fraction, ...]:
        """Coefficients of ``lam`` in the simple-root basis (exact)."""
        det, adj = self._det_adj
        return tuple(Fraction(sum(a * x for a, x in zip(row, lam)), det) for row in adj)

    def from_simple_coords(self, coords: Sequence[int]) -> Weight:
        n = self.rank
        return tuple(sum(self.cartan[k][j] * coords[j] for j in range(n)) for k in range(n))

    @cached_property
    def _form_matrix(self):
        # det * (x, y) = sum_j (adj x)_j d_j y_j
        det, adj = self._det_adj
        n = self.rank
        return tuple(tuple(adj[j][i] * self.symmetrizer[j] for i in range(n)) for j in range(n))

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        """det(cartan) times the invariant inner product (x, y); always an integer."""
        f = self._form_matrix
        n = self.rank
        return sum(y[j] * sum(f[j][i] * x[i] for i in range(n)) for j in range(n))

    def inner(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        return Fraction(self.form(x, y), self.det)

    # -- roots -------------------------------------------------------------

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        n = self.rank
        a = self.cartan
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for c in frontier:
                for i in range(n):
                    p = sum(a[i][j] * c[j] for j in range(n))
                    r = tuple(c[j] - (p if j == i else 0) for j in range(n))
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        pos = sorted((c for c in seen if all(x >= 0 for x in c)), key=lambda c: (sum(c), c))
        d = self.symmetrizer
        roots = []
        for c in pos:
            two_norm = sum(c[i] * c[j] * d[i] * a[i][j] for i in range(n) for j in range(n))
            assert two_norm % 2 == 0
            hn = two_norm // 2
            co = tuple(Fraction(c[j] * d[j], hn) for j in range(n))
            assert all(x.denominator == 1 for x in co)
            roots.append(Root(c, tuple(int(x) for x in co), self.from_simple_coords(c), hn))
        return tuple(roots)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.positive_roots if r.height == 1)

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def highest_short_root(self) -> Root:
        short = min(r.half_norm for r in self.positive_roots)
        return max((r for r in self.positive_roots if r.half_norm == short), key=lambda r: r.height)

    @property
    def coxeter_number(self) -> int:
        return coxeter_number(self)

    def root_index(self, weight: Sequence[int]) -> int | None:
        """Index of the positive root whose weight vector is ``weight``."""
        return self._root_lookup.get(tuple(weight))

    @cached_property
    def _root_lookup(self):
        return {r.weight: k for k, r in enumerate(self.positive_roots)}

    # -- finite Weyl group -------------------------------------------------

    def reflect(self, i: int, lam: Sequence[int]) -> Weight:
        """Plain (linear) action of the simple reflection s_i."""
        p = lam[i]
        if p == 0:
            return tuple(lam)
        col = [row[i] for row in self.cartan]
        return tuple(x - p * c for x, c in zip(lam, col))

    def reflect_root(self, beta: Root, lam: Sequence[int]) -> Weight:
        p = beta.pair(lam)
        return tuple(x - p * b for x, b in zip(lam, beta.weight))

    def dominant_representative(self, lam: Sequence[int]) -> tuple[Weight, int]:
        """(dominant W-conjugate of lam, number of reflections used)."""
        v = tuple(lam)
        steps = 0
        while True:
            i = next((k for k, x in enumerate(v) if x < 0), None)
            if i is None:
                return v, steps
            v = self.reflect(i, v)
            steps += 1

    def orbit(self, lam: Sequence[int]) -> list[Weight]:
        start = tuple(lam)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.rank):
                    u = self.reflect(i, v)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return sorted(seen)

    @property
    def weyl_order(self) -> int:
        return weyl_group_order(self.type_label, self.rank)

    @cached_property
    def weyl_group(self) -> tuple[WeylElement, ...]:
        if self.weyl_order > self.weyl_cap:
            raise CapExceeded(f"|W({self.name})| = {self.weyl_order} exceeds cap {self.weyl_cap}")
        rho = self.rho
        elems = [WeylElement((), 0, rho)]
        seen = {rho}
        frontier = elems[:]
        length = 0
        while frontier:
            length += 1
            nxt = []
            for e in frontier:
                for i in range(self.rank):
                    # left multiplication: image of rho gets reflected
                    v = self.reflect(i, e.rho_image)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(WeylElement((i,) + e.word, length, v))
            elems.extend(nxt)
            frontier = nxt
        assert len(elems) == self.weyl_order
        return tuple(elems)

    @property
    def longest_element(self) -> WeylElement:
        return self.weyl_group[-1]

    def act(self, w: WeylElement, lam: Sequence[int]) -> Weight:
        v = tuple(lam)
        for i in reversed(w.word):
            v = self.reflect(i, v)
        return v

    def dot(self, w: WeylElement, lam: Sequence[int]) -> Weight:
        v = self.act(w, tuple(x + 1 for x in lam))
        return tuple(x - 1 for x in v)

    @cached_property
    def _minus_w0_perm(self) -> tuple[int, ...]:
        # -w0 permutes the fundamental weights; read it off from w0(omega_i)
        perm = []
        for i in range(self.rank):
            v, _ = self.dominant_representative(tuple(int(k == i) for k in range(self.rank)))
            while True:
                j = next((k for k, x in enumerate(v) if x > 0), None)
                if j is None:
                    break
                v = self.reflect(j, v)
            perm.append(next(k for k, x in enumerate(v) if x))
        return tuple(perm)

    def w0(self, lam: Sequence[int]) -> Weight:
        """Apply the longest element without enumerating W."""
        out = [0] * self.rank
        for i, j in enumerate(self._minus_w0_perm):
            out[j] = -lam[i]
        return tuple(out)


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int, weyl_cap: int = DEFAULT_WEYL_CAP) -> RootSystem:
    type_label = type_label.upper()
    cartan = cartan_matrix(type_label, rank)
    return RootSystem(type_label, rank, cartan, _symmetrizer(cartan), weyl_cap)


def coxeter_number(rs: RootSystem) -> int:
    # h = <rho, alpha_0^vee> + 1; alpha_0^vee is the highest coroot
    return rs.highest_short_root.pair(rs.rho) + 1


# -- weight predicates ------------------------------------------------------


def is_dominant(lam: Sequence[int]) -> bool:
    return all(x >= 0 for x in lam)


def is_restricted(lam: Sequence[int], ell: int) -> bool:
    return all(0 <= x <= ell - 1 for x in lam)


def dominance_leq(lam: Sequence[int], mu: Sequence[int], rs: RootSystem) -> bool:
    """True iff mu - lam is a non-negative integer combination of simple roots."""
    diff = [m - l for l, m in zip(lam, mu)]
    det, adj = rs._det_adj
    for row in adj:
        s = sum(a * x for a, x in zip(row, diff))
        if s % det or s * det < 0:
            return False
    return True


def dominance_lt(lam, mu, rs: RootSystem) -> bool:
    return tuple(lam) != tuple(mu) and dominance_leq(lam, mu, rs)


def height(lam: Sequence[int], rs: RootSystem) -> Fraction:
    return sum(rs.to_simple_coords(lam))


# -- quantum context ---------------------------------------------------------


@dataclass(frozen=True)
class QContext:
    root_system: RootSystem
    ell: int

    def __post_init__(self):
        if self.ell < 2:
            raise ValueError("ell must be at least 2")

    @property
    def rank(self) -> int:
        return self.root_system.rank

    @property
    def h(self) -> int:
        return coxeter_number(self.root_system)

    @property
    def very_special(self) -> bool:
        return is_very_special(self)

    @property
    def bottom_alcove_bound(self) -> int:
        return self.ell

    @cached_property
    def A0(self) -> tuple[Weight, ...]:
        return tuple(enumerate_A0(self))

    @property
    def fingerprint(self) -> tuple[str, int, int]:
        rs = self.root_system
        return rs.type_label, rs.rank, self.ell

    def is_regular(self, lam: Sequence[int]) -> bool:
        """No <lam + rho, beta^vee> divisible by ell."""
        v = tuple(x + 1 for x in lam)
        return all(b.pair(v) % self.ell for b in self.root_system.positive_roots)

    def in_bottom_alcove(self, lam: Sequence[int]) -> bool:
        v = tuple(x + 1 for x in lam)
        return all(0 < b.pair(v) < self.ell for b in self.root_system.positive_roots)


def make_context(type_label: str, rank: int, ell: int) -> QContext:
    return QContext(build_root_system(type_label, rank), ell)


def steinberg_decompose(lam: Sequence[int], ctx: QContext) -> tuple[Weight, Weight]:
    """lam = lam0 + ell * lam1 with lam0 restricted and lam1 dominant."""
    if not is_dominant(lam):
        raise NotDominant(f"{tuple(lam)} is not dominant")
    pairs = [divmod(x, ctx.ell) for x in lam]
    return tuple(r for _, r in pairs), tuple(q for q, _ in pairs)


def weights_below_bound(coroot: Sequence[int], bound: int) -> Iterator[Weight]:
    """Dominant weights nu with sum_i coroot[i] * nu[i] <= bound, in lexicographic order."""
    n = len(coroot)

    def rec(i, budget, prefix):
        if i == n:
            yield tuple(prefix)
            return
        c = coroot[i]
        for x in range(budget // c + 1):
            prefix.append(x)
            yield from rec(i + 1, budget - c * x, prefix)
            prefix.pop()

    if bound >= 0:
        yield from rec(0, bound, [])


def enumerate_A0(ctx: QContext) -> list[Weight]:
    """Dominant nu with <nu, alpha_0^vee> < 2(h - 1), sorted lexicographically."""
    rs = ctx.root_system
    coroot = rs.highest_short_root.coroot_coords
    return sorted(weights_below_bound(coroot, 2 * (coxeter_number(rs) - 1) - 1))


def is_very_special(ctx: QContext) -> bool:
    return ctx.root_system.type_label == "C" and ctx.ell == 2


def restricted_weights(ctx: QContext) -> list[Weight]:
    return [tuple(w) for w in itertools.product(range(ctx.ell), repeat=ctx.rank)]


def epsilon_to_omega(coords: Sequence, type_label: str, rank: int) -> Weight:
    """Convert Bourbaki epsilon coordinates of a classical-type weight to the omega basis."""
    t = type_label.upper()
    _validate_type(t, rank)
    if t not in "ABCD":
        raise InvalidType(f"epsilon coordinates are only defined for classical types, not {t}")
    x = [Fraction(c) for c in coords]
    want = rank + 1 if t == "A" else rank
    if len(x) != want:
        raise ValueError(f"type {t}{rank} needs {want} epsilon coordinates, got {len(x)}")
    out = [x[i] - x[i + 1] for i in range(rank - 1)]
    if t == "A":
        out.append(x[rank - 1] - x[rank])
    elif t == "B":
        out.append(2 * x[rank - 1])
    elif t == "C":
        out.append(x[rank - 1])
    else:
        out.append(x[rank - 2] + x[rank - 1])
    if any(v.denominator != 1 for v in out):
        raise ValueError(f"{tuple(coords)} is not an integral weight of {t}{rank}")
    return tuple(int(v) for v in out)
