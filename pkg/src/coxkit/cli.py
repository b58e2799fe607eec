"""Command-line surface: polynomial tables, invariant check suites,
canonical-basis decompositions, and a content-keyed result cache.

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 resource/cap error.
Stdout carries data; stderr carries diagnostics (machine-readable JSON for
errors).
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import os
import random
import sys
import tempfile

from .coxeter import CoxeterMatrix, build_ball
from .errors import (CapError, CoxkitError, NotFinitaryError, ResourceError,
                     UnsupportedBraidError, UnsupportedCharacteristicError,
                     UsageError)
from .hecke import Element_shortlex, KLTable
from .laurent import LaurentPoly
from .leaves import char_of_word
from .localization import LocalCalculus, relation_oracle
from .parabolic import (NElt, ParabolicKLTable, check_deodhar,
                        check_finitary, check_monotonicity)

ALGORITHM_VERSION = "coxkit-tables-1"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


# -- input plumbing -----------------------------------------------------------

def _matrix_from_args(args):
    if args.type and args.matrix:
        raise UsageError("give either --type or --matrix, not both")
    if args.type:
        return CoxeterMatrix.from_type(args.type)
    if args.matrix:
        with open(args.matrix, "r", encoding="utf-8") as fh:
            return CoxeterMatrix.from_json(fh.read())
    raise UsageError("one of --type or --matrix is required")


def _parse_gen(token, rank):
    text = token[1:] if token.startswith("s") else token
    try:
        k = int(text)
    except ValueError:
        raise UsageError("bad generator token %r (use s1 ... s%d)" % (token, rank))
    if not 1 <= k <= rank:
        raise UsageError("generator %r out of range 1..%d" % (token, rank))
    return k - 1


def _parse_I(tokens, rank):
    return frozenset(_parse_gen(t, rank) for t in tokens)


def _parse_word(tokens, rank):
    return tuple(_parse_gen(t, rank) for t in tokens)


def _gen_name(s):
    return "s%d" % (s + 1)


def _word_name(word):
    return "*".join(_gen_name(s) for s in word) if word else "e"


def _elt_name(x):
    return _word_name(x.word)


# -- output rendering ----------------------------------------------------------

def _render(rows, header, fmt):
    """rows: list of lists of strings."""
    if fmt == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(row))
    elif fmt == "json":
        print(json.dumps({"columns": list(header), "rows": rows},
                         sort_keys=True, indent=2))
    else:  # pretty
        widths = [max([len(h)] + [len(r[i]) for r in rows])
                  for i, h in enumerate(header)]
        line = "  ".join(h.ljust(w) for h, w in zip(header, widths))
        print(line)
        print("-" * len(line))
        for row in rows:
            print("  ".join(c.ljust(w) for c, w in zip(row, widths)))


# -- cache ---------------------------------------------------------------------

def _cache_key(payload):
    blob = json.dumps(payload, sort_keys=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _cache_load(cache_dir, key):
    path = os.path.join(cache_dir, key + ".json")
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("version") != ALGORITHM_VERSION:
        return None
    return data["rows"]


def _cache_store(cache_dir, key, payload, rows):
    os.makedirs(cache_dir, exist_ok=True)
    data = {"version": ALGORITHM_VERSION, "key": payload, "rows": rows}
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh, sort_keys=True)
        os.replace(tmp, os.path.join(cache_dir, key + ".json"))
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- table commands ---------------------------------------------------------------

def _table_rows(command, matrix, I, cap):
    ball = build_ball(matrix, cap)
    if command == "klpoly":
        table = KLTable(ball)
        raw = table.table_rows()
    else:
        table = ParabolicKLTable(ball, I, spherical=(command == "mpoly"))
        raw = table.table_rows()
    return [[_elt_name(y), _elt_name(x), str(p)] for y, x, p in raw]


def cmd_table(command, args):
    matrix = _matrix_from_args(args)
    I = _parse_I(args.I, matrix.rank)
    if command == "klpoly" and I:
        raise UsageError("klpoly takes no --I")
    payload = {
        "command": command,
        "matrix": matrix.canonical_form(),
        "I": sorted(I),
        "cap": args.cap,
        "version": ALGORITHM_VERSION,
    }
    rows = None
    key = _cache_key(payload)
    if args.cache_dir:
        rows = _cache_load(args.cache_dir, key)
    if rows is None:
        rows = _table_rows(command, matrix, I, args.cap)
        if args.cache_dir:
            _cache_store(args.cache_dir, key, payload, rows)
    _render(rows, ("y", "x", "poly"), args.format)
    return EXIT_PASS


# -- check suites ------------------------------------------------------------------

def _check_positivity(ball, I, report):
    table = ParabolicKLTable(ball, I)
    bad = []
    for y, x, p in table.table_rows():
        if not p.is_nonneg():
            bad.append([_elt_name(y), _elt_name(x), str(p)])
    report("positivity", bad)
    return not bad


def _check_deodhar(ball, I, report):
    kl = KLTable(ball)
    ntable = ParabolicKLTable(ball, I)
    reps = sorted(ball.min_reps(I), key=Element_shortlex)
    bad = []
    for x in reps:
        for y in reps:
            if y.length > x.length:
                continue
            if not check_deodhar(kl, ntable, y, x):
                bad.append([_elt_name(y), _elt_name(x), "deodhar mismatch"])
    report("deodhar", bad)
    return not bad


def _check_finitary(ball, I, report):
    kl = KLTable(ball)
    mtable = ParabolicKLTable(ball, I, spherical=True)
    w0 = ball.longest_element(I)  # raises if W_I is not finitary
    reps = [x for x in ball.min_reps(I)
            if x.length + w0.length <= ball.length_cap]
    reps.sort(key=Element_shortlex)
    bad = []
    for x in reps:
        for y in reps:
            if y.length > x.length:
                continue
            if not check_finitary(kl, mtable, y, x):
                bad.append([_elt_name(y), _elt_name(x), "finitary mismatch"])
    report("finitary", bad)
    return not bad


def _check_monotonicity(ball, I, report):
    # chain {} <= {i1} <= {i1,i2} <= ... following the order of --I
    chain = [frozenset()]
    for s in sorted(I):
        chain.append(chain[-1] | {s})
    tables = [ParabolicKLTable(ball, J) for J in chain]
    bad = []
    for small, big in zip(tables, tables[1:]):
        reps = sorted(ball.min_reps(big.I), key=Element_shortlex)
        for x in reps:
            for y in reps:
                if y.length > x.length:
                    continue
                if not check_monotonicity(big, small, y, x):
                    bad.append([_elt_name(y), _elt_name(x),
                                "I=%s vs J=%s" % (sorted(big.I), sorted(small.I))])
    report("monotonicity", bad)
    return not bad


def _check_gradedrank(ball, I, report, count, cap, seed):
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        length = rng.randint(0, cap)
        word = tuple(rng.randrange(ball.rank) for _ in range(length))
        lhs = char_of_word(ball, word, I)
        rhs = NElt.unit(ball, I).mul_b_word(word)
        if lhs != rhs:
            bad.append([_word_name(word), "", "character mismatch"])
    report("gradedrank", bad)
    return not bad


def _check_localization(ball, I, report, cap):
    calc = LocalCalculus(ball, I)
    bad = []
    for name, ok in relation_oracle(calc):
        if not ok:
            bad.append([name, "", "relation failure"])
    for length in range(cap + 1):
        for word in itertools.product(range(ball.rank), repeat=length):
            leaves = calc.indices(word)
            endpoints = sorted({e.endpoint for e in leaves},
                               key=Element_shortlex)
            for x in endpoints:
                lv = calc.leaves_at(word, x)
                for e in lv:
                    if not calc.check_diagonal(word, e):
                        bad.append([_word_name(word), _elt_name(x),
                                    "diagonal not unit*roots"])
                    for f in lv:
                        if not calc.check_triangularity(word, e, f):
                            bad.append([_word_name(word), _elt_name(x),
                                        "triangularity failure"])
                        if not calc.double_leaf(word, e, f).endpoint_matched():
                            bad.append([_word_name(word), _elt_name(x),
                                        "endpoint mismatch"])
                if not calc.gram_invertible(word, x):
                    bad.append([_word_name(word), _elt_name(x),
                                "pairing matrix not invertible"])
    report("localization", bad)
    return not bad


def cmd_check(args):
    matrix = _matrix_from_args(args)
    I = _parse_I(args.I, matrix.rank)
    ball = build_ball(matrix, args.cap)

    failures = []

    def report(name, bad):
        if bad:
            print("FAIL %s (%d counterexamples)" % (name, len(bad)))
            for row in bad[:50]:
                print("  " + " ".join(c for c in row if c))
            failures.extend(bad)
        else:
            print("PASS %s" % name)

    which = args.which
    if which == "positivity":
        ok = _check_positivity(ball, I, report)
    elif which == "deodhar":
        ok = _check_deodhar(ball, I, report)
    elif which == "finitary":
        ok = _check_finitary(ball, I, report)
    elif which == "monotonicity":
        ok = _check_monotonicity(ball, I, report)
    elif which == "gradedrank":
        ok = _check_gradedrank(ball, I, report, args.count, args.cap, args.seed)
    else:  # localization
        ok = _check_localization(ball, I, report, min(args.cap, args.word_cap))
    return EXIT_PASS if ok else EXIT_FAIL


# -- pcan ---------------------------------------------------------------------------

def cmd_pcan(args):
    matrix = _matrix_from_args(args)
    I = _parse_I(args.I, matrix.rank)
    word = _parse_word(args.word, matrix.rank)
    cap = max(args.cap, len(word))
    ball = build_ball(matrix, cap)
    calc = LocalCalculus(ball, I)
    decomposition = calc.pcanonical(word, char=args.char)

    if args.char == 0:
        # automatic cross-check against the canonical-basis route
        table = ParabolicKLTable(ball, I)
        total = NElt(ball, I)
        for x, mult in decomposition.items():
            total = total + table.b(x).scale(mult)
        if total != char_of_word(ball, word, I):
            print("FAIL pcan cross-check against canonical-basis expansion",
                  file=sys.stderr)
            return EXIT_FAIL

    rows = [[_elt_name(x), str(mult)]
            for x, mult in sorted(decomposition.items(),
                                  key=lambda kv: (-kv[0].length, kv[0].word))]
    _render(rows, ("x", "multiplicity"), args.format)
    return EXIT_PASS


# -- argument parsing -----------------------------------------------------------------

def _add_common(parser):
    parser.add_argument("--type", help="built-in Coxeter type, e.g. A3, B2, H3, I2_7, affA1")
    parser.add_argument("--matrix", help="path to a JSON Coxeter matrix file")
    parser.add_argument("--I", nargs="*", default=[], metavar="GEN",
                        help="parabolic generators, e.g. s1 s3")
    parser.add_argument("--cap", type=int, default=6,
                        help="length cap for the group ball (default 6)")
    parser.add_argument("--format", choices=("csv", "json", "pretty"),
                        default="pretty")
    parser.add_argument("--cache-dir", default=None)
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for random-word suites")
    parser.add_argument("--char", type=int, default=0,
                        help="characteristic (0 or a prime)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="coxkit",
        description="Exact Coxeter/Hecke/antispherical computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, doc in (("npoly", "antispherical canonical-basis table"),
                      ("mpoly", "spherical canonical-basis table"),
                      ("klpoly", "Kazhdan-Lusztig table")):
        p = sub.add_parser(name, help=doc)
        _add_common(p)

    p = sub.add_parser("check", help="run a named invariant suite")
    p.add_argument("which", choices=("positivity", "deodhar", "finitary",
                                     "monotonicity", "gradedrank",
                                     "localization"))
    _add_common(p)
    p.add_argument("--count", type=int, default=100,
                   help="number of random words for gradedrank")
    p.add_argument("--word-cap", type=int, default=4,
                   help="word length cap for localization checks")

    p = sub.add_parser("pcan", help="canonical/p-canonical decomposition of a word")
    p.add_argument("word", nargs="*", metavar="GEN",
                   help="letters of the word, e.g. s1 s2 s1")
    _add_common(p)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("npoly", "mpoly", "klpoly"):
            return cmd_table(args.command, args)
        if args.command == "check":
            return cmd_check(args)
        return cmd_pcan(args)
    except (UsageError, NotFinitaryError, UnsupportedBraidError,
            UnsupportedCharacteristicError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return EXIT_USAGE
    except (CapError, ResourceError, MemoryError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
