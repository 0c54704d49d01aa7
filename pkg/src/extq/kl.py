"""Kazhdan-Lusztig polynomials and mu-coefficients for the affine Weyl group.

Polynomials are computed a whole column ``{y: P_{y,w}}`` at a time, in
increasing length of ``w``, using the standard left recursion: for a
generator ``s`` with ``sw < w`` and ``v = sw``

    P_{y,w} = P_{sy,w}                                           if sy > y
    P_{y,w} = P_{sy,v} + t P_{y,v}
              - sum_{y <= z < v, sz < z} mu(z,v) t^{(l(w)-l(z))/2} P_{y,z}    if sy < y

Columns are keyed by element ids of the group's ball and persisted by
canonical vectors.
"""

from __future__ import annotations

import os
import random
import threading
from dataclasses import dataclass
from typing import Callable, Iterable

from .affine import AffineElement, AffineWeylGroup, affine_group
from .errors import CacheMismatch, EqualArguments, InvariantViolation
from .rootdata import QContext, make_context

CACHE_MAGIC = "klcache"
CACHE_VERSION = 1


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = tuple(self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coef = str(c) if (c != 1 or k == 0) else ""
            if c == -1 and k:
                coef = "-"
            terms.append(coef + mono)
        return " + ".join(terms).replace("+ -", "- ")


T = IntPolynomial((0, 1))
ONE = IntPolynomial((1,))


def _as_poly(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial((x,))
    return NotImplemented


def _strip(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


_CHOOSERS: dict[str, Callable[[list[int]], int]] = {"first": min, "last": max}


class KLTable:
    """Memo table of KL polynomials for one (type, rank, ell) context.

    ``choose`` picks the left descent used in each recursion step; any
    choice yields the same polynomials.  Reads are lock free, column
    computation is serialised by a lock, and a duplicate computation would
    store an identical value.
    """

    def __init__(self, ctx: QContext, choose: str | Callable = "first", check: bool = True):
        self.ctx = ctx
        self.group: AffineWeylGroup = affine_group(ctx)
        self.choose = _CHOOSERS[choose] if isinstance(choose, str) else choose
        self.check = check
        self._cols: dict[int, dict[int, tuple[int, ...]]] = {}
        self._mu: dict[int, list[tuple[int, int]]] = {}
        self._intern: dict[tuple[int, ...], tuple[int, ...]] = {(1,): (1,)}
        self._lock = threading.RLock()

    @property
    def fingerprint(self) -> tuple[str, int, int]:
        return self.ctx.fingerprint

    def __len__(self) -> int:
        return sum(len(c) for c in self._cols.values())

    @property
    def columns(self) -> int:
        return len(self._cols)

    # -- core ------------------------------------------------------------------

    def column(self, w: int) -> dict[int, tuple[int, ...]]:
        col = self._cols.get(w)
        if col is not None:
            return col
        with self._lock:
            for x in sorted(self.group.ideal(w)):
                if x not in self._cols:
                    self._store(x, self.compute_column(x))
            return self._cols[w]

    def _store(self, x: int, col: dict[int, tuple[int, ...]]) -> None:
        if self.check:
            self._validate(x, col)
        g = self.group
        lx = g.len_id(x)
        mu = []
        for y, c in col.items():
            gap = lx - g.len_id(y)
            if gap % 2 == 1:
                d = (gap - 1) // 2
                if d < len(c) and c[d]:
                    mu.append((y, c[d]))
        mu.sort()
        self._mu[x] = mu
        self._cols[x] = col

    def _validate(self, x: int, col) -> None:
        g = self.group
        lx = g.len_id(x)
        if col.get(x) != (1,):
            raise InvariantViolation(f"P_{{w,w}} != 1 for {g.canonical_of(x)}")
        for y, c in col.items():
            if y == x:
                continue
            bound = (lx - g.len_id(y) - 1) // 2
            if not c or c[0] != 1 or len(c) - 1 > bound:
                raise InvariantViolation(
                    f"P_{{y,w}} = {c} violates degree bound {bound} or constant term "
                    f"(y={g.canonical_of(y)}, w={g.canonical_of(x)})"
                )

    def compute_column(self, w: int, s: int | None = None) -> dict[int, tuple[int, ...]]:
        """Column of w from already-stored lower columns, using descent s."""
        g = self.group
        if w == 0:
            return {0: (1,)}
        descents = g.descents_id(w)
        if s is None:
            s = self.choose(descents)
        elif s not in descents:
            raise ValueError(f"s{s} is not a left descent")
        v = g.mul_id(s, w)
        pv = self._cols[v]
        lw = g.len_id(w)
        terms = []
        for z, m in self._mu[v]:
            if g.is_descent(s, g.canonical_of(z)):
                terms.append((self._cols[z], g.ideal(z), m, (lw - g.len_id(z)) // 2))
        col: dict[int, tuple[int, ...]] = {}
        up = []
        intern = self._intern
        for y in g.ideal(w):
            sy = g.mul_id(s, y)
            if g.len_id(sy) > g.len_id(y):
                up.append((y, sy))
                continue
            acc = list(pv[sy])
            pvy = pv.get(y)
            if pvy:
                need = len(pvy) + 1
                if len(acc) < need:
                    acc.extend([0] * (need - len(acc)))
                for i, c in enumerate(pvy):
                    acc[i + 1] += c
            for pz, iz, m, k in terms:
                if y in iz:
                    pzy = pz[y]
                    need = len(pzy) + k
                    if len(acc) < need:
                        acc.extend([0] * (need - len(acc)))
                    for i, c in enumerate(pzy):
                        acc[i + k] -= m * c
            t = _strip(acc)
            col[y] = intern.setdefault(t, t)
        for y, sy in up:
            col[y] = col[sy]
        return col

    # -- element-level API -------------------------------------------------------

    def _ids(self, *elems: AffineElement) -> list[int]:
        return [self.group.id_of(e.canonical) for e in elems]

    def poly(self, y: AffineElement, w: AffineElement) -> IntPolynomial:
        yi, wi = self._ids(y, w)
        return IntPolynomial(self.column(wi).get(yi, ()))

    def leq(self, y: AffineElement, w: AffineElement) -> bool:
        yi, wi = self._ids(y, w)
        return yi in self.group.ideal(wi)

    def mu_list(self, w: AffineElement) -> list[tuple[AffineElement, int]]:
        (wi,) = self._ids(w)
        self.column(wi)
        g = self.group
        return [(g.element(g.canonical_of(z)), m) for z, m in self._mu[wi]]

    # -- persistence ---------------------------------------------------------------

    def entries(self) -> Iterable[tuple[tuple, tuple, tuple]]:
        """(y canonical, w canonical, coefficients) in a deterministic order."""
        g = self.group
        for w in sorted(self._cols, key=lambda k: (g.len_id(k), g.canonical_of(k))):
            col = self._cols[w]
            wc = g.canonical_of(w)
            for y in sorted(col, key=lambda k: (g.len_id(k), g.canonical_of(k))):
                yield g.canonical_of(y), wc, col[y]

    def dumps(self) -> str:
        t, n, ell = self.fingerprint
        lines = [f"{CACHE_MAGIC} {CACHE_VERSION} {t} {n} {ell}"]
        for yc, wc, c in self.entries():
            lines.append(f"{_vec(yc)};{_vec(wc)};{_vec(c)}")
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        tmp = f"{path}.tmp{os.getpid()}"
        with open(tmp, "w") as fh:
            fh.write(self.dumps())
        os.replace(tmp, path)

    def loads(self, text: str) -> int:
        lines = text.splitlines()
        if not lines:
            raise CacheMismatch("empty cache file")
        head = lines[0].split()
        t, n, ell = self.fingerprint
        if len(head) != 5 or head[0] != CACHE_MAGIC or head[1] != str(CACHE_VERSION):
            raise CacheMismatch(f"not a version-{CACHE_VERSION} KL cache: {lines[0]!r}")
        if (head[2], int(head[3]), int(head[4])) != (t, n, ell):
            raise CacheMismatch(
                f"cache fingerprint {' '.join(head[2:])} does not match context {t} {n} {ell}"
            )
        g = self.group
        cols: dict[int, dict[int, tuple[int, ...]]] = {}
        try:
            for line in lines[1:]:
                if not line.strip():
                    continue
                ys, ws, cs = line.split(";")
                yi, wi = g.id_of(_unvec(ys)), g.id_of(_unvec(ws))
                c = _unvec(cs)
                cols.setdefault(wi, {})[yi] = self._intern.setdefault(c, c)
        except (ValueError, KeyError) as exc:
            raise CacheMismatch(f"malformed cache line: {exc}") from exc
        with self._lock:
            for wi in sorted(cols):
                col = cols[wi]
                if set(col) != g.ideal(wi):
                    raise CacheMismatch(f"incomplete column for {g.canonical_of(wi)}")
                try:
                    self._validate(wi, col)
                except InvariantViolation as exc:
                    raise CacheMismatch(str(exc)) from exc
                self._store(wi, col)
        return len(cols)

    def load(self, path) -> int:
        with open(path) as fh:
            return self.loads(fh.read())


def _vec(v) -> str:
    return ",".join(str(x) for x in v)


def _unvec(s: str) -> tuple[int, ...]:
    s = s.strip()
    return tuple(int(x) for x in s.split(",")) if s else ()


def read_cache_fingerprint(path) -> tuple[str, int, int]:
    with open(path) as fh:
        head = fh.readline().split()
    if len(head) != 5 or head[0] != CACHE_MAGIC:
        raise CacheMismatch(f"{path} is not a KL cache")
    return head[2], int(head[3]), int(head[4])


def load_table(path) -> KLTable:
    t, n, ell = read_cache_fingerprint(path)
    table = KLTable(make_context(t, n, ell))
    table.load(path)
    return table


# -- module-level operations ------------------------------------------------------


def bruhat_interval(y: AffineElement, w: AffineElement, table: KLTable) -> list[AffineElement]:
    g = table.group
    yi, wi = table._ids(y, w)
    out = [z for z in g.ideal(wi) if yi in g.ideal(z)]
    out.sort(key=lambda k: (g.len_id(k), g.canonical_of(k)))
    return [g.element(g.canonical_of(z)) for z in out]


def kl_polynomial(y: AffineElement, w: AffineElement, table: KLTable, descent: int | None = None) -> IntPolynomial:
    """P_{y,w}; with ``descent`` the top recursion step uses that generator."""
    if descent is None:
        return table.poly(y, w)
    g = table.group
    yi, wi = table._ids(y, w)
    if wi == 0:
        return IntPolynomial((1,)) if yi == 0 else IntPolynomial()
    with table._lock:
        for x in sorted(g.ideal(wi)):
            if x != wi and x not in table._cols:
                table.column(x)
        col = table.compute_column(wi, descent)
    return IntPolynomial(col.get(yi, ()))


def mu(y: AffineElement, w: AffineElement, table: KLTable) -> int:
    """mu-coefficient, symmetrised: the pair is ordered by Bruhat order first."""
    if y == w:
        raise EqualArguments("mu(y, w) needs y != w")
    if not table.leq(y, w):
        if table.leq(w, y):
            y, w = w, y
        else:
            return 0
    gap = w.length - y.length
    if gap % 2 == 0:
        return 0
    return table.poly(y, w).coefficient((gap - 1) // 2)


def cache_roundtrip(table: KLTable, directory, samples: int = 100, seed: int = 0) -> dict:
    """Save ``table``, reload it into a fresh table, recompute random pairs."""
    path = os.path.join(directory, cache_filename(table.ctx))
    table.save(path)
    loaded = KLTable(table.ctx)
    loaded.load(path)
    fresh = KLTable(table.ctx, check=False)
    entries = list(table.entries())
    rng = random.Random(seed)
    picks = rng.sample(entries, min(samples, len(entries)))
    g = table.group
    mismatches = []
    for yc, wc, c in picks:
        yi, wi = g.id_of(yc), g.id_of(wc)
        a = loaded._cols[wi][yi]
        b = fresh.column(wi)[yi]
        if not (a == b == c):
            mismatches.append({"y": list(yc), "w": list(wc), "stored": list(c), "loaded": list(a), "recomputed": list(b)})
    text_again = loaded.dumps() == table.dumps()
    return {
        "path": path,
        "entries": len(entries),
        "checked": len(picks),
        "mismatches": mismatches,
        "reserialized_identical": text_again,
        "passed": not mismatches and text_again,
    }


def cache_filename(ctx: QContext) -> str:
    t, n, ell = ctx.fingerprint
    return f"klcache-{t}{n}-ell{ell}.txt"
