"""The affine Weyl group under the ell-dilated dot action.

An element is stored as the image of a fixed regular base point.  The base
point ``b`` satisfies ``b + rho = (ell / h) rho``; we keep the integer vector
``h * (w.b + rho)``, which lives on the lattice scaled by ``h`` so that the
affine hyperplanes sit at multiples of ``h * ell``.  Generator ``s0`` is the
affine reflection in the highest short root at level one, ``s1 .. sn`` are the
finite simple reflections (Bourbaki order).  Words are written left to right
and act right to left, as group elements do.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import NotLinked, NotRegular
from .rootdata import QContext, Root, Weight, coxeter_number, dominance_lt


def _affine_reflect(root: Root, level: int, unit: int, v: Sequence[int]) -> Weight:
    k = root.pair(v) - level * unit
    if k == 0:
        return tuple(v)
    return tuple(x - k * b for x, b in zip(v, root.weight))


@dataclass(frozen=True)
class WallReflection:
    """Reflection in the hyperplane <x + rho, root^vee> = level * ell."""

    root: Root
    level: int
    ell: int

    def apply(self, lam: Sequence[int]) -> Weight:
        v = _affine_reflect(self.root, self.level, self.ell, [x + 1 for x in lam])
        return tuple(x - 1 for x in v)

    def apply_canonical(self, vec: Sequence[int], h: int) -> Weight:
        return _affine_reflect(self.root, self.level, h * self.ell, vec)


@dataclass(frozen=True)
class AffineElement:
    canonical: Weight
    group: "AffineWeylGroup" = field(compare=False, hash=False, repr=False)

    @property
    def length(self) -> int:
        return self.group.length_of(self.canonical)

    @property
    def word(self) -> tuple[int, ...]:
        return self.group.word_of(self.canonical)

    def left(self, g: int) -> "AffineElement":
        return self.group.element(self.group.reflect_gen(g, self.canonical))

    def inverse(self) -> "AffineElement":
        return self.group.from_word(tuple(reversed(self.word)))

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        return self.group.from_word(self.word + other.word)

    def __repr__(self):
        w = " ".join(f"s{g}" for g in self.word) or "e"
        return f"AffineElement({w})"


class AffineWeylGroup:
    """Combinatorics of the affine Weyl group for a fixed (root system, ell).

    Besides element arithmetic this keeps a lazily grown ball of elements in
    breadth-first order, with integer ids, a left-multiplication table and
    Bruhat lower ideals.  The KL table builds on those.
    """

    def __init__(self, ctx: QContext):
        self.ctx = ctx
        rs = ctx.root_system
        self.rs = rs
        self.n = rs.rank
        self.h = coxeter_number(rs)
        self.ell = ctx.ell
        self.unit = self.h * self.ell
        self.gens: list[tuple[Root, int]] = [(rs.highest_short_root, 1)] + [(r, 0) for r in rs.simple_roots]
        self.base: Weight = (self.ell,) * self.n
        self.identity = AffineElement(self.base, self)
        self._lock = threading.RLock()
        self._word_cache: dict[Weight, tuple[int, ...]] = {}
        self._bruhat_memo: dict = {}
        # ball
        self._ids: dict[Weight, int] = {self.base: 0}
        self._canon: list[Weight] = [self.base]
        self._len: list[int] = [0]
        self._left: list[list[int | None]] = [[None] * (self.n + 1)]
        self._layers: list[list[int]] = [[0]]
        self._ideals: dict[int, frozenset] = {0: frozenset((0,))}

    # -- points --------------------------------------------------------------

    def reflect_gen(self, g: int, vec: Sequence[int], unit: int | None = None) -> Weight:
        root, level = self.gens[g]
        return _affine_reflect(root, level, self.unit if unit is None else unit, vec)

    def apply_word(self, word: Sequence[int], vec: Sequence[int], unit: int | None = None) -> Weight:
        v = tuple(vec)
        for g in reversed(word):
            v = self.reflect_gen(g, v, unit)
        return v

    def element(self, canonical: Sequence[int]) -> AffineElement:
        return AffineElement(tuple(canonical), self)

    def from_word(self, word: Sequence[int]) -> AffineElement:
        for g in word:
            if not 0 <= g <= self.n:
                raise ValueError(f"generator s{g} out of range for rank {self.n}")
        return self.element(self.apply_word(word, self.base))

    def generators(self) -> list[AffineElement]:
        return [self.from_word((g,)) for g in range(self.n + 1)]

    def is_descent(self, g: int, vec: Sequence[int]) -> bool:
        """True iff len(s_g w) < len(w), w given by its canonical vector."""
        root, level = self.gens[g]
        p = root.pair(vec)
        return p > self.unit if level else p < 0

    def descents(self, vec: Sequence[int]) -> list[int]:
        return [g for g in range(self.n + 1) if self.is_descent(g, vec)]

    def length_of(self, vec: Sequence[int]) -> int:
        # number of hyperplanes (beta, m) separating the base point from vec;
        # the base point pairs strictly inside (0, unit) with every coroot
        return sum(abs(b.pair(vec) // self.unit) for b in self.rs.positive_roots)

    def word_of(self, vec: Sequence[int]) -> tuple[int, ...]:
        vec = tuple(vec)
        w = self._word_cache.get(vec)
        if w is None:
            word = []
            v = vec
            while v != self.base:
                g = next(k for k in range(self.n + 1) if self.is_descent(k, v))
                word.append(g)
                v = self.reflect_gen(g, v)
            w = tuple(word)
            self._word_cache[vec] = w
        return w

    # -- dot action on weights -----------------------------------------------

    def apply_dot(self, w: AffineElement, lam: Sequence[int]) -> Weight:
        v = self.apply_word(w.word, [x + 1 for x in lam], self.ell)
        return tuple(x - 1 for x in v)

    def walk_to_fundamental(self, lam: Sequence[int]) -> tuple[Weight, tuple[int, ...]]:
        """Move lam + rho into the closed fundamental alcove.

        Returns (point, word) with ``point`` the shifted representative and
        ``apply_word(word, point) == lam + rho``.
        """
        v = tuple(x + 1 for x in lam)
        word = []
        while True:
            g = next((k for k in range(self.n + 1) if self._outside(k, v)), None)
            if g is None:
                return v, tuple(word)
            word.append(g)
            v = self.reflect_gen(g, v, self.ell)

    def _outside(self, g: int, v) -> bool:
        root, level = self.gens[g]
        p = root.pair(v)
        return p > self.ell if level else p < 0

    def orbit_representative(self, lam: Sequence[int]) -> Weight:
        return self.walk_to_fundamental(lam)[0]

    def linked(self, lam: Sequence[int], mu: Sequence[int]) -> bool:
        return self.orbit_representative(lam) == self.orbit_representative(mu)

    def antidominant_base(self, lam: Sequence[int]) -> Weight:
        """The unique weight of lam's orbit in A^- = w0 . A^+."""
        v = self.orbit_representative(lam)
        return tuple(x - 1 for x in self.rs.w0(v))

    def element_for_weight(self, mu: Sequence[int], base: Sequence[int]) -> AffineElement:
        ctx = self.ctx
        if not ctx.is_regular(base):
            raise NotRegular(f"base weight {tuple(base)} is not regular")
        if not ctx.is_regular(mu):
            raise NotRegular(f"{tuple(mu)} is not regular")
        p, u = self.walk_to_fundamental(mu)
        q, x0 = self.walk_to_fundamental(base)
        if p != q:
            raise NotLinked(f"{tuple(mu)} is not in the orbit of {tuple(base)}")
        return self.element(self.apply_word(u + tuple(reversed(x0)), self.base))

    def alcove_walls(self, mu: Sequence[int]) -> list[tuple[WallReflection, bool]]:
        if not self.ctx.is_regular(mu):
            raise NotRegular(f"{tuple(mu)} is not regular")
        p = tuple(x + 1 for x in mu)
        pc, u = self.walk_to_fundamental(mu)
        walls = []
        for g in range(self.n + 1):
            # the wall u(H_g); its reflection sends p to u s_g u^-1 p
            r = self.apply_word(u, self.reflect_gen(g, pc, self.ell), self.ell)
            diff = [a - b for a, b in zip(p, r)]
            root, c = self._root_multiple(diff)
            level, rem = divmod(root.pair(p) - c, self.ell)
            assert rem == 0
            walls.append((WallReflection(root, level, self.ell), c > 0))
        return walls

    def _root_multiple(self, diff) -> tuple[Root, int]:
        for root in self.rs.positive_roots:
            k = next(i for i, x in enumerate(root.weight) if x != 0)
            c, rem = divmod(diff[k], root.weight[k])
            if rem == 0 and c != 0 and all(d == c * x for d, x in zip(diff, root.weight)):
                return root, c
        raise AssertionError(f"{diff} is not a multiple of a root")

    def dot_lt(self, lam, mu) -> bool:
        return dominance_lt(lam, mu, self.rs)

    # -- Bruhat order by the lifting recursion --------------------------------

    def bruhat_leq(self, y: Weight, w: Weight, choose=min) -> bool:
        key = (y, w, choose)
        memo = self._bruhat_memo
        if key in memo:
            return memo[key]
        ly, lw = self.length_of(y), self.length_of(w)
        if ly > lw:
            res = False
        elif lw == 0:
            res = y == w
        elif ly == lw:
            res = y == w
        else:
            s = choose(self.descents(w))
            sw = self.reflect_gen(s, w)
            if self.is_descent(s, y):
                res = self.bruhat_leq(self.reflect_gen(s, y), sw, choose)
            else:
                res = self.bruhat_leq(y, sw, choose)
        memo[key] = res
        return res

    # -- the ball: ids, multiplication table, ideals --------------------------

    @property
    def radius(self) -> int:
        return len(self._layers) - 1

    def ensure_radius(self, r: int) -> None:
        if r <= self.radius:
            return
        with self._lock:
            while self.radius < r:
                outer = self._layers[-1]
                new_layer = []
                for i in outer:
                    c = self._canon[i]
                    for g in range(self.n + 1):
                        if self.is_descent(g, c):
                            continue
                        c2 = self.reflect_gen(g, c)
                        if c2 not in self._ids:
                            self._ids[c2] = len(self._canon)
                            self._canon.append(c2)
                            self._len.append(self.radius + 1)
                            self._left.append([None] * (self.n + 1))
                            new_layer.append(self._ids[c2])
                self._layers.append(new_layer)

    def id_of(self, vec: Sequence[int]) -> int:
        vec = tuple(vec)
        k = self._ids.get(vec)
        if k is None:
            self.ensure_radius(self.length_of(vec))
            k = self._ids[vec]
        return k

    def canonical_of(self, k: int) -> Weight:
        return self._canon[k]

    def len_id(self, k: int) -> int:
        return self._len[k]

    def mul_id(self, g: int, k: int) -> int:
        row = self._left[k]
        r = row[g]
        if r is None:
            r = self.id_of(self.reflect_gen(g, self._canon[k]))
            row[g] = r
        return r

    def descents_id(self, k: int) -> list[int]:
        return self.descents(self._canon[k])

    def ids_up_to(self, r: int) -> list[int]:
        self.ensure_radius(r)
        return [k for layer in self._layers[: r + 1] for k in layer]

    def ideal(self, k: int) -> frozenset:
        """Ids of all elements Bruhat-below element k (inclusive)."""
        got = self._ideals.get(k)
        if got is not None:
            return got
        with self._lock:
            todo = [k]
            while todo:
                x = todo[-1]
                if x in self._ideals:
                    todo.pop()
                    continue
                s = self.descents_id(x)[0]
                v = self.mul_id(s, x)
                iv = self._ideals.get(v)
                if iv is None:
                    todo.append(v)
                    continue
                self._ideals[x] = iv | frozenset(self.mul_id(s, z) for z in iv)
                todo.pop()
            return self._ideals[k]


@lru_cache(maxsize=None)
def affine_group(ctx: QContext) -> AffineWeylGroup:
    return AffineWeylGroup(ctx)


# -- module-level operations ----------------------------------------------------


def generators(ctx: QContext) -> list[AffineElement]:
    return affine_group(ctx).generators()


def element_from_word(word, ctx: QContext) -> AffineElement:
    if isinstance(word, str):
        word = parse_word(word)
    return affine_group(ctx).from_word(word)


def parse_word(text: str) -> tuple[int, ...]:
    """Parse 'e', 's0 s1 s0', 's0s1' or '0,1,0' into generator indices."""
    import re

    text = text.strip()
    if text in ("", "e", "1", "id"):
        return ()
    if "s" in text:
        toks = re.findall(r"s(\d+)", text)
        if "".join(f"s{t}" for t in toks) != re.sub(r"[\s,*]", "", text):
            raise ValueError(f"cannot parse word {text!r}")
        return tuple(int(t) for t in toks)
    return tuple(int(t) for t in re.split(r"[\s,]+", text))


def apply_dot(w: AffineElement, lam: Sequence[int]) -> Weight:
    return w.group.apply_dot(w, lam)


def length(w: AffineElement) -> int:
    return w.length


def bruhat_leq(y: AffineElement, w: AffineElement) -> bool:
    return w.group.bruhat_leq(y.canonical, w.canonical)


def bruhat_lt(y: AffineElement, w: AffineElement) -> bool:
    return y != w and bruhat_leq(y, w)


def element_for_weight(mu: Sequence[int], base: Sequence[int], ctx: QContext) -> AffineElement:
    return affine_group(ctx).element_for_weight(mu, base)


def alcove_walls(mu: Sequence[int], ctx: QContext) -> list[tuple[WallReflection, bool]]:
    return affine_group(ctx).alcove_walls(mu)
