"""Command-line front end.

JSON reports carry ``command``, ``version``, ``format_version``, ``inputs`` and
``elapsed`` next to the command's own fields.  Vertex numbers in anything the
CLI reads or prints are 1-based.  Exit status: 0 success, 1 domain error,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .constructions import BUILTIN_NAMES, add_dominating_vertex, builtin, delete_vertex, paley
from .core import Tournament, TournamentError, random_tournament, seidel
from .counting import InconsistencyError, count
from .extremal import PreconditionError, bound, check_property
from .io import FormatError, dumps_seidel, dumps_tournament, loads
from .reproduce import OPT_IN, TARGETS, format_table, reproduce
from .search import search_max
from .spectral import spectral_summary
from .switching import are_switching_equivalent, switch

FORMAT_VERSION = 1
SAFE_INT = 2**53

log = logging.getLogger("diamondlab")


class DomainError(Exception):
    pass


def jsonable(obj):
    """Exact integers, string-encoded beyond 2^53; numpy and tuples unwrapped."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        v = int(obj)
        return str(v) if abs(v) > SAFE_INT else v
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _read_input(path: str, fmt: str) -> Tournament:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return loads(text, fmt)


def _one_based(vs) -> list[int]:
    return [int(v) + 1 for v in vs]


def _parse_set(text: str, n: int) -> list[int]:
    if not text.strip():
        return []
    out = []
    for tok in text.split(","):
        v = int(tok)
        if not 1 <= v <= n:
            raise DomainError(f"vertex {v} out of range 1..{n}")
        out.append(v - 1)
    return out


# commands ---------------------------------------------------------------------


def cmd_count(args) -> dict:
    T = _read_input(args.file, args.format)
    if args.method == "both":
        a = count(T, "oracle")
        try:
            b = count(T, "spectral")
        except InconsistencyError as exc:
            raise DomainError(f"closed-form count failed: {exc}") from None
        agree = a.delta == b.delta and a.c3 == b.c3
        if not agree:
            raise DomainError(f"oracle {a} and closed form {b} disagree")
        return {"n": T.n, "delta": a.delta, "c3": a.c3, "method": "both", "agree": True}
    r = count(T, args.method)
    return {"n": r.n, "delta": r.delta, "c3": r.c3, "method": r.method}


def cmd_construct(args) -> str:
    kind = args.kind
    if kind == "paley":
        T = paley(int(args.arg))
        if args.star:
            T = add_dominating_vertex(T)
    elif kind == "builtin":
        T = builtin(args.arg)
    elif kind == "delete":
        if args.vertex is None:
            raise DomainError("construct delete needs a vertex")
        T = _read_input(args.arg, args.format)
        T = delete_vertex(T, _parse_set(str(args.vertex), T.n)[0])
    elif kind == "dominate":
        T = add_dominating_vertex(_read_input(args.arg, args.format))
    elif kind == "random":
        T = random_tournament(int(args.arg), np.random.default_rng(args.seed))
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(kind)
    return dumps_seidel(seidel(T)) if args.seidel else dumps_tournament(T)


def cmd_switch(args) -> str:
    T = _read_input(args.file, args.format)
    U = switch(T, _parse_set(args.set, T.n))
    return dumps_seidel(seidel(U)) if args.seidel else dumps_tournament(U)


def cmd_check(args) -> dict:
    T = _read_input(args.file, args.format)
    out = check_property(T, args.property)
    w = out.get("witness") or {}
    for key in ("even", "odd", "permutation"):
        if key in w:
            w[key] = _one_based(w[key])
    if out.get("partition"):
        out["partition"] = [_one_based(p) for p in out["partition"]]
    return out


def cmd_spectrum(args) -> dict:
    return spectral_summary(_read_input(args.file, args.format))


def cmd_equiv(args) -> dict:
    T1 = _read_input(args.file1, args.format)
    T2 = _read_input(args.file2, args.format)
    w = are_switching_equivalent(T1, T2, up_to_iso=args.up_to_iso)
    if w is None:
        return {"equivalent": False, "message": "not equivalent"}
    out = {"equivalent": True, "switch_set": _one_based(w.switch_set()), "signs": list(w.eps)}
    if w.perm is not None:
        out["permutation"] = _one_based(w.perm)
    return out


def cmd_search(args) -> dict:
    ck = args.checkpoint
    if ck is None and os.environ.get("DIAMONDLAB_CHECKPOINT_DIR"):
        ck = str(Path(os.environ["DIAMONDLAB_CHECKPOINT_DIR"]) / f"search-n{args.n}.json")
    classify = False if args.no_classify else None
    return search_max(args.n, workers=args.workers, checkpoint=ck, classify=classify).as_dict()


def cmd_bound(args) -> dict:
    return bound(args.n).as_dict()


def cmd_reproduce(args) -> dict:
    kwargs = {}
    if args.target == "conjecture9":
        kwargs = {"workers": args.workers, "checkpoint": args.checkpoint}
    result = reproduce(args.target, seed=args.seed, **kwargs)
    print(format_table(result), file=sys.stderr)
    return result


# parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diamondlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--format", choices=("auto", "tournament", "seidel"), default="auto",
                        help="input file format (default: detect)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def command(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    c = command("count", help="count diamonds and 3-cycles")
    c.add_argument("file", nargs="?", default="-")
    c.add_argument("--method", choices=("oracle", "spectral", "both"), default="both")
    c.set_defaults(func=cmd_count)

    c = command("construct", help="write a named tournament")
    c.add_argument("kind", choices=("paley", "builtin", "delete", "dominate", "random"))
    c.add_argument("arg", help="q, builtin name (" + ", ".join(BUILTIN_NAMES)
                   + "), input file, or n for random")
    c.add_argument("vertex", nargs="?", type=int, help="vertex to delete (1-based)")
    c.add_argument("--star", action="store_true", help="add a dominating vertex to the Paley tournament")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--seidel", action="store_true", help="emit the Seidel matrix format")
    c.set_defaults(func=cmd_construct)

    c = command("switch", help="switch a tournament with respect to a vertex set")
    c.add_argument("file")
    c.add_argument("--set", required=True, help="comma-separated 1-based vertices")
    c.add_argument("--seidel", action="store_true")
    c.set_defaults(func=cmd_switch)

    c = command("check", help="test a structural property")
    c.add_argument("file", nargs="?", default="-")
    c.add_argument("--property", required=True,
                   choices=("extremal", "skew-conference", "doubly-regular", "ew"))
    c.set_defaults(func=cmd_check)

    c = command("spectrum", help="characteristic polynomial and identities")
    c.add_argument("file", nargs="?", default="-")
    c.set_defaults(func=cmd_spectrum)

    c = command("equiv", help="switching equivalence test")
    c.add_argument("file1")
    c.add_argument("file2")
    c.add_argument("--up-to-iso", action="store_true", help="also allow relabelling (n <= 9)")
    c.set_defaults(func=cmd_equiv)

    c = command("search", help="exhaustive maximum-diamond search")
    c.add_argument("n", type=int)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--checkpoint")
    c.add_argument("--no-classify", action="store_true")
    c.set_defaults(func=cmd_search)

    c = command("bound", help="upper bound for order n")
    c.add_argument("n", type=int)
    c.set_defaults(func=cmd_bound)

    c = command("reproduce", help="run a reproduction scenario",
                       description="opt-in long targets: " + ", ".join(OPT_IN))
    c.add_argument("target", choices=sorted(TARGETS))
    c.add_argument("--seed", type=int)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--checkpoint")
    c.set_defaults(func=cmd_reproduce)
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "out", "verbose")}
    t0 = time.perf_counter()
    try:
        result = args.func(args)
    except (DomainError, TournamentError, FormatError, PreconditionError,
            InconsistencyError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"diamondlab {args.command}: error: {msg}", file=sys.stderr)
        return 1
    if isinstance(result, str):
        _emit(result, args.out)
        return 0
    report = {
        "command": args.command,
        "version": __version__,
        "format_version": FORMAT_VERSION,
        "inputs": inputs,
    }
    report.update(result)
    report["elapsed"] = time.perf_counter() - t0
    _emit(json.dumps(jsonable(report), indent=2) + "\n", args.out)
    if args.command == "reproduce" and not result["pass"]:
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
