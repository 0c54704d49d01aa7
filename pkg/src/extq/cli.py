"""Command-line frontend.

Exit status: 0 success, 2 some query was not covered, 64 usage or input
error, 65 cache refused, 1 anything else.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from . import __version__
from .affine import affine_group, parse_word
from .charalg import tensor_decompose, tensor_multiplicity, weyl_character, weyl_dimension
from .errors import CacheMismatch, ExtqError, InvariantViolation
from .extcalc import check_A0_bound, e1_multiplicities, ext_dimension
from .kl import KLTable, cache_filename, cache_roundtrip, kl_polynomial, mu
from .rootdata import QContext, Weight, build_root_system, epsilon_to_omega, make_context
from .sumformula import jantzen_sum_chi, verify_very_special

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_NOT_COVERED = 2
EXIT_USAGE = 64
EXIT_CACHE = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- parsing helpers ----------------------------------------------------------------


def parse_weight(text: str) -> tuple:
    t = text.strip().strip("()[]")
    if not t:
        return ()
    parts = t.replace(",", " ").split()
    try:
        return tuple(int(p) if "/" not in p else p for p in parts)
    except ValueError as exc:
        raise UsageError(f"cannot parse weight {text!r}") from exc


def weight_arg(args, text: str | None, name: str) -> Weight:
    if text is None:
        raise UsageError(f"--{name} is required")
    raw = parse_weight(text)
    if args.basis == "epsilon":
        try:
            return epsilon_to_omega(raw, args.type, args.rank)
        except (ValueError, ExtqError) as exc:
            raise UsageError(str(exc)) from exc
    if len(raw) != args.rank or any(not isinstance(x, int) for x in raw):
        raise UsageError(f"--{name} {text!r} must have {args.rank} integer coordinates")
    return raw


def _ctx(args) -> QContext:
    if args.ell is None:
        raise UsageError("--ell is required")
    try:
        return make_context(args.type, args.rank, args.ell)
    except ExtqError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- KL tables with optional on-disk cache -----------------------------------------


class Session:
    def __init__(self, args):
        self.use_cache = not args.no_cache
        self.cache_dir = args.cache_dir or os.environ.get("EXTQ_CACHE_DIR")
        self.cache_file = getattr(args, "cache_file", None)
        self.tables: dict[QContext, KLTable] = {}
        self._loaded: dict[QContext, int] = {}

    def path_for(self, ctx: QContext) -> str | None:
        if not self.use_cache:
            return None
        if self.cache_file:
            return self.cache_file
        if self.cache_dir:
            return os.path.join(self.cache_dir, cache_filename(ctx))
        return None

    def table(self, ctx: QContext) -> KLTable:
        t = self.tables.get(ctx)
        if t is None:
            t = KLTable(ctx)
            path = self.path_for(ctx)
            if path and os.path.exists(path):
                t.load(path)
            self.tables[ctx] = t
            self._loaded[ctx] = len(t)
        return t

    def save(self) -> None:
        for ctx, t in self.tables.items():
            path = self.path_for(ctx)
            if path and len(t) != self._loaded.get(ctx):
                os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
                t.save(path)


# -- commands ---------------------------------------------------------------------
# each returns a list of (query, result, covered) records


def _ext_pairs(args) -> list[tuple[Weight, Weight]]:
    if args.batch:
        pairs = []
        with open(args.batch) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if line.startswith("{"):
                    d = json.loads(line)
                    a, b = ",".join(map(str, d["lambda"])), ",".join(map(str, d["mu"]))
                else:
                    a, b = line.split(";")
                pairs.append((weight_arg(args, a, "lambda"), weight_arg(args, b, "mu")))
        return pairs
    if args.box is not None:
        box = list(itertools.product(range(args.box + 1), repeat=args.rank))
        return [(a, b) for a in box for b in box]
    return [(weight_arg(args, args.lam, "lambda"), weight_arg(args, args.mu, "mu"))]


def _map(args, fn: Callable, items: Sequence) -> list:
    if args.jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        return list(pool.map(fn, items))


def cmd_ext(args, session):
    ctx = _ctx(args)
    table = session.table(ctx)
    pairs = _ext_pairs(args)

    def one(pair):
        res = ext_dimension(pair[0], pair[1], ctx, table)
        return {"lambda": list(pair[0]), "mu": list(pair[1])}, res.as_dict(), res.covered

    return _map(args, one, pairs)


def cmd_e1(args, session):
    ctx = _ctx(args)
    lam0, mu0 = weight_arg(args, args.lam, "lambda"), weight_arg(args, args.mu, "mu")
    res = e1_multiplicities(lam0, mu0, ctx, session.table(ctx))
    return [({"lambda0": list(lam0), "mu0": list(mu0)}, res.as_dict(), not res.not_covered)]


def _elements(args, ctx):
    g = affine_group(ctx)
    if args.y is None or args.w is None:
        raise UsageError("--y and --w are required")
    try:
        return g.from_word(parse_word(args.y)), g.from_word(parse_word(args.w))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _elem_dict(e) -> dict:
    return {"word": " ".join(f"s{k}" for k in e.word) or "e", "canonical": list(e.canonical), "length": e.length}


def cmd_mu(args, session):
    ctx = _ctx(args)
    y, w = _elements(args, ctx)
    value = mu(y, w, session.table(ctx))
    return [({"y": _elem_dict(y), "w": _elem_dict(w)}, {"mu": value}, True)]


def cmd_kl(args, session):
    ctx = _ctx(args)
    y, w = _elements(args, ctx)
    p = kl_polynomial(y, w, session.table(ctx))
    return [({"y": _elem_dict(y), "w": _elem_dict(w)}, {"coefficients": list(p.coeffs), "polynomial": str(p)}, True)]


def cmd_tensor(args, session):
    rs = build_root_system(args.type, args.rank)
    nu, mu_ = weight_arg(args, args.nu, "nu"), weight_arg(args, args.mu, "mu")
    query = {"nu": list(nu), "mu": list(mu_)}
    if args.lam is not None:
        lam = weight_arg(args, args.lam, "lambda")
        query["lambda"] = list(lam)
        return [(query, {"multiplicity": tensor_multiplicity(nu, mu_, lam, rs)}, True)]
    dec = tensor_decompose(nu, mu_, rs)
    return [(query, {"decomposition": [[list(k), v] for k, v in dec.items()]}, True)]


def cmd_char(args, session):
    rs = build_root_system(args.type, args.rank)
    lam = weight_arg(args, args.lam, "lambda")
    ch = weyl_character(lam, rs)
    return [({"lambda": list(lam)}, {"character": [[list(k), v] for k, v in ch.items()], "dimension": ch.dimension}, True)]


def cmd_dim(args, session):
    rs = build_root_system(args.type, args.rank)
    lam = weight_arg(args, args.lam, "lambda")
    return [({"lambda": list(lam)}, {"dimension": weyl_dimension(lam, rs)}, True)]


def cmd_sumformula(args, session):
    rs = build_root_system(args.type, args.rank)
    ell = 2 if args.ell is None else args.ell
    lam = weight_arg(args, args.lam, "lambda")
    terms = jantzen_sum_chi(lam, rs, ell)
    return [({"lambda": list(lam), "ell": ell}, {"chi": [[list(k), v] for k, v in terms]}, True)]


def cmd_a0(args, session):
    ctx = _ctx(args)
    return [({}, {"A0": [list(v) for v in ctx.A0], "size": len(ctx.A0), "h": ctx.h}, True)]


def cmd_alcove(args, session):
    ctx = _ctx(args)
    g = affine_group(ctx)
    lam = weight_arg(args, args.lam, "lambda")
    walls = [
        {"root": list(w.root.simple_coords), "level": w.level, "lower": low, "image": list(w.apply(lam))}
        for w, low in g.alcove_walls(lam)
    ]
    rep = {
        "walls": walls,
        "orbit_representative": [x - 1 for x in g.orbit_representative(lam)],
        "antidominant_base": list(g.antidominant_base(lam)),
        "element": _elem_dict(g.element_for_weight(lam, g.antidominant_base(lam))),
    }
    return [({"lambda": list(lam)}, rep, True)]


def cmd_verify_very_special(args, session):
    rep = verify_very_special(args.rank)
    if not args.json:
        print(rep.text())
    return [({"rank": args.rank}, rep.as_dict(), True)], (EXIT_OK if rep.passed else EXIT_INTERNAL)


def cmd_check_a0(args, session):
    ctx = _ctx(args)
    rep = check_A0_bound(ctx, session.table(ctx))
    return [({}, rep.as_dict(), True)], (EXIT_OK if rep.passed else EXIT_INTERNAL)


def cmd_cache_roundtrip(args, session):
    ctx = _ctx(args)
    table = KLTable(ctx)
    g = table.group
    for k in g.ids_up_to(args.length):
        table.column(k)
    directory = args.cache_dir or os.environ.get("EXTQ_CACHE_DIR") or tempfile.mkdtemp(prefix="extq-")
    os.makedirs(directory, exist_ok=True)
    rep = cache_roundtrip(table, directory, samples=args.samples, seed=args.seed)
    return [({"length": args.length}, rep, True)], (EXIT_OK if rep["passed"] else EXIT_INTERNAL)


COMMANDS = {
    "ext": cmd_ext,
    "e1": cmd_e1,
    "mu": cmd_mu,
    "kl": cmd_kl,
    "tensor": cmd_tensor,
    "char": cmd_char,
    "dim": cmd_dim,
    "sumformula": cmd_sumformula,
    "a0": cmd_a0,
    "alcove": cmd_alcove,
    "verify-very-special": cmd_verify_very_special,
    "check-a0": cmd_check_a0,
    "cache-roundtrip": cmd_cache_roundtrip,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--type", default="C", help="root system type A..G (default C)")
    common.add_argument("--rank", type=int, default=2)
    common.add_argument("--ell", type=int, default=None)
    common.add_argument("--json", action="store_true", help="JSON lines output")
    common.add_argument("--cache-dir", default=None, help="KL cache directory (default $EXTQ_CACHE_DIR)")
    common.add_argument("--cache-file", default=None, help="explicit KL cache file")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--basis", choices=["omega", "epsilon"], default="omega")
    common.add_argument("--lambda", dest="lam", default=None)
    common.add_argument("--mu", default=None)
    common.add_argument("--nu", default=None)
    common.add_argument("--y", default=None, help="affine element as a word, e.g. 's0 s1'")
    common.add_argument("--w", default=None)

    parser = _Parser(prog="extq", description="Ext^1 between simple modules via KL mu-coefficients.")
    parser.add_argument("--version", action="version", version=f"extq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "ext":
            p.add_argument("--batch", default=None, help="file with 'lambda;mu' or JSON lines")
            p.add_argument("--box", type=int, default=None, help="all pairs with coordinates <= N")
        if name == "cache-roundtrip":
            p.add_argument("--length", type=int, default=12)
            p.add_argument("--samples", type=int, default=100)
            p.add_argument("--seed", type=int, default=0)
    return parser


def _render(query: dict, result: dict) -> str:
    head = " ".join(f"{k}={_short(v)}" for k, v in sorted(query.items()))
    body = ", ".join(f"{k}: {_short(v)}" for k, v in sorted(result.items()) if v not in ("", [], None) or k == "dimension")
    return f"{head}  ->  {body}" if head else body


def _short(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_short(x)}" for k, x in sorted(v.items())) + "}"
    return json.dumps(v) if isinstance(v, (list, bool)) or v is None else str(v)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    session = Session(args)
    try:
        out = COMMANDS[args.command](args, session)
        session.save()
    except UsageError as exc:
        print(f"extq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CacheMismatch as exc:
        print(f"extq: cache refused: {exc} (rerun with --no-cache or remove the file)", file=sys.stderr)
        return EXIT_CACHE
    except InvariantViolation as exc:
        print(f"extq: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ExtqError as exc:
        print(f"extq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status = EXIT_OK
    if isinstance(out, tuple):
        out, status = out
    if not args.json and args.command == "verify-very-special":
        out = []
    for query, result, covered in out:
        if not covered and status == EXIT_OK:
            status = EXIT_NOT_COVERED
        if args.json:
            print(json.dumps({"query": query, "result": result, "version": SCHEMA_VERSION}, sort_keys=True))
        else:
            print(_render(query, result))
    return status


if __name__ == "__main__":
    raise SystemExit(main())
