"""Command-line front end.

Class labels are this package's canonical labels (run ``classes`` first);
they can differ from ATLAS letters for algebraically conjugate classes.

Exit codes: 0 ok, 1 usage, 2 unknown group or class label, 3 computation
ceiling exceeded, 4 internal verification failure.
"""
from __future__ import annotations

import argparse
import itertools
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .catalog import Catalog, CatalogError
from .classes import class_by_label, conjugacy_classes, cyclic_class_orbit
from .permcore import CeilingExceeded, VerificationError
from .probgen import (
    _NongenContext,
    approx_p,
    characters_of,
    outer_prime_classes,
    prob_gen_info,
    prob_gen_info_almost_simple,
    random_check_uniform_spread,
)

EXIT_LABEL, EXIT_CEILING, EXIT_VERIFY = 2, 3, 4

PAPER_SMALL = ["A5", "A6", "A7", "A8", "A9", "L3(2)", "L2(11)", "M11", "M12", "U4(2)", "S6(2)"]
PAPER_SMALL_AUT = ["S5", "S6", "S7"]


class UsageError(Exception):
    pass


def fmt_q(x) -> str:
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator) if x.denominator != 1 else str(x.numerator)


def fmt_list(xs) -> str:
    return "[" + ", ".join(str(x) for x in xs) + "]"


def format_table(rows, sep: str = "  ") -> str:
    """Columnwise formatting; every column is as wide as its longest cell."""
    if not rows:
        return ""
    ncol = max(len(r) for r in rows)
    cells = [[str(c) for c in r] + [""] * (ncol - len(r)) for r in rows]
    widths = [max(len(r[j]) for r in cells) for j in range(ncol)]
    return "\n".join(sep.join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


@dataclass
class ReportRow:
    group: str
    sigma: Fraction
    spread_bound: int | None
    best_classes: list
    max_counts: list
    runtime: float = 0.0

    def cells(self, timings: bool) -> list:
        bound = "-" if self.spread_bound is None else str(self.spread_bound)
        out = [self.group, fmt_q(self.sigma), bound, fmt_list(self.best_classes), fmt_list(self.max_counts)]
        if timings:
            out.append("%.2fs" % self.runtime)
        return out

    def record(self, timings: bool) -> str:
        parts = ["group=%s" % self.group, "sigma=%s" % fmt_q(self.sigma),
                 "bound=%s" % ("-" if self.spread_bound is None else self.spread_bound),
                 "classes=%s" % ",".join(self.best_classes),
                 "counts=%s" % ",".join(str(c) for c in self.max_counts)]
        if timings:
            parts.append("runtime=%.3f" % self.runtime)
        return " ".join(parts)


# --------------------------------------------------------------------------
# helpers


def _group(cat: Catalog, name: str):
    try:
        return cat.group(name)
    except KeyError:
        raise UsageError("unknown group %r (known: %s)" % (name, ", ".join(cat.names()))) from None


def _class(G, label: str):
    try:
        return class_by_label(G, label)
    except KeyError:
        names = ", ".join(c.name for c in conjugacy_classes(G))
        raise UsageError("unknown class label %r (known: %s)" % (label, names)) from None


def info_row(cat: Catalog, name: str) -> ReportRow:
    t = time.perf_counter()
    G = _group(cat, name)
    entry = cat.entry(name)
    if entry.socle_of:
        S = cat.socle(name)
        value, best, counts = prob_gen_info_almost_simple(G, S, cat.maxes(name),
                                                          socle_maxes=cat.maxes(entry.socle_of))
        row = ReportRow(name, value, None, best, counts)
    else:
        info = prob_gen_info(G, cat.maxes(name), name)
        row = ReportRow(name, info.sigma, info.spread_bound, info.best_classes, info.max_counts)
    row.runtime = time.perf_counter() - t
    return row


# --------------------------------------------------------------------------
# subcommands


def cmd_classes(cat, args, out):
    G = _group(cat, args.group)
    rows = [["label", "order", "size", "centralizer"]]
    for c in conjugacy_classes(G):
        rows.append([c.name, c.order, c.size, c.centralizer_order])
    print(format_table(rows), file=out)


def cmd_sigma(cat, args, out):
    G = _group(cat, args.group)
    s = _class(G, args.s)
    classes = conjugacy_classes(G)
    psi = approx_p(characters_of(G, cat.maxes(args.group)), s.index, len(classes))
    if args.outer:
        S = _group(cat, args.outer)
        value = max((psi.values[i] for i in outer_prime_classes(G, S)), default=Fraction(0))
    else:
        value = psi.maximum()
    print("%s %s" % ("sigma'" if args.outer else "sigma", fmt_q(value)), file=out)
    print(format_table([[c.name for c in classes], [fmt_q(v) for v in psi.values]]), file=out)


def cmd_info(cat, args, out):
    print(format_table([info_row(cat, args.group).cells(False)]), file=out)


def cmd_nongen(cat, args, out):
    G = _group(cat, args.group)
    g, s = _class(G, args.g), _class(G, args.s)
    if not G.is_transitive():
        raise UsageError("group %s is not transitive" % args.group)
    print(fmt_q(_NongenContext(G, g.representative).ratio(s.representative)), file=out)


def _spread_candidates(G, labels):
    classes = conjugacy_classes(G)
    if labels:
        return [_class(G, x).index for x in labels]
    picked = []
    seen: set = set()
    for c in classes[1:]:
        if c.index in seen or not _is_prime(c.order):
            continue
        orb = cyclic_class_orbit(G, c.index)
        seen.update(orb)
        picked.append(min(orb))
    return picked


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, int(n ** 0.5) + 1))


def cmd_spread(cat, args, out):
    G = _group(cat, args.group)
    if args.k < 1:
        raise UsageError("--k must be positive")
    if args.tries < 1:
        raise UsageError("--tries must be positive")
    s = _class(G, args.s)
    classes = conjugacy_classes(G)
    cands = _spread_candidates(G, args.classes.split(",") if args.classes else None)
    tuples = []
    ratios = {}
    for i in cands:
        g = classes[i].representative
        ratios[i] = _NongenContext(G, g).ratio(s.representative) if not g.is_identity() else Fraction(1)
    for tup in itertools.combinations_with_replacement(cands, args.k):
        # tuples whose ratios sum below 1 are settled by counting
        if args.classes or sum(ratios[i] for i in tup) >= 1:
            tuples.append(tup)
    print("group %s" % args.group, file=out)
    print("s %s" % s.name, file=out)
    print("seed %d" % args.seed, file=out)
    print("candidates %s" % " ".join("%s:%s" % (classes[i].name, fmt_q(ratios[i])) for i in cands), file=out)
    rows = [["tuple", "orbits", "max_trials", "outcome"]]
    ok = True
    for n, tup in enumerate(tuples):
        reps = [classes[i].representative for i in tup]
        cert = random_check_uniform_spread(G, reps, s.representative, args.tries, rng=args.seed + n)
        if cert.success:
            rows.append([",".join(cert.tuple_class_labels), len(cert.trials_used),
                         max(cert.trials_used, default=0), "success"])
        else:
            ok = False
            bad = " ".join(str(x) for x in cert.failing_tuple)
            rows.append([",".join(cert.tuple_class_labels), len(cert.trials_used),
                         "-", "failure at " + bad])
    print(format_table(rows), file=out)
    print("outcome %s" % ("success" if ok else "failure"), file=out)
    return 0 if ok else 1


def cmd_report(cat, args, out):
    if args.suite != "paper-small":
        raise UsageError("unknown suite %r" % args.suite)
    rows = [info_row(cat, n) for n in PAPER_SMALL + PAPER_SMALL_AUT if n in cat.names()]
    if args.format == "records":
        for r in rows:
            print(r.record(args.timings), file=out)
    else:
        head = ["group", "sigma", "bound", "classes", "counts"] + (["runtime"] if args.timings else [])
        print(format_table([head] + [r.cells(args.timings) for r in rows]), file=out)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spreadkit", description=__doc__.split("\n")[0])
    p.add_argument("--catalog", help="catalog file (default: $PROBGEN_CATALOG or the bundled one)")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("classes", help="canonical class table")
    q.add_argument("group")
    q.set_defaults(func=cmd_classes)

    q = sub.add_parser("sigma", help="sigma(G, s) and the full estimate vector")
    q.add_argument("group")
    q.add_argument("--s", required=True, help="class label of s")
    q.add_argument("--outer", metavar="SOCLE", help="restrict to prime-order classes outside SOCLE")
    q.set_defaults(func=cmd_sigma)

    q = sub.add_parser("info", help="sigma, spread bound, best classes, counts")
    q.add_argument("group")
    q.set_defaults(func=cmd_info)

    q = sub.add_parser("nongen", help="exact nongeneration proportion P(g, s)")
    q.add_argument("group")
    q.add_argument("--g", required=True)
    q.add_argument("--s", required=True)
    q.set_defaults(func=cmd_nongen)

    q = sub.add_parser("spread", help="randomized uniform-spread certificate")
    q.add_argument("group")
    q.add_argument("--s", required=True)
    q.add_argument("--k", type=int, default=2)
    q.add_argument("--tries", type=int, default=40)
    q.add_argument("--seed", type=int, default=1)
    q.add_argument("--classes", help="comma-separated tuple classes (default: prime-order classes, filtered)")
    q.set_defaults(func=cmd_spread)

    q = sub.add_parser("report", help="table of the bundled reproduction suite")
    q.add_argument("--suite", default="paper-small")
    q.add_argument("--format", choices=["table", "records"], default="table")
    q.add_argument("--timings", action="store_true", help="add a runtime column (output no longer byte-stable)")
    q.set_defaults(func=cmd_report)
    for q in sub.choices.values():
        q.add_argument("--catalog", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return p


def run_command(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 1
    try:
        cat = Catalog(args.catalog)
    except (OSError, CatalogError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_LABEL
    try:
        return args.func(cat, args, out) or 0
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_LABEL
    except CeilingExceeded as exc:
        print("ceiling exceeded: %s" % exc, file=sys.stderr)
        return EXIT_CEILING
    except VerificationError as exc:
        print("verification failed: %s" % exc, file=sys.stderr)
        return EXIT_VERIFY


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
