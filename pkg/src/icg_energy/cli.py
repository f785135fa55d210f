"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .construction import construct_divisor_set, energy_bracket
from .energy import (
    ExponentSet,
    PrimePowerOrder,
    closed_form_energy,
    energy_report,
    hyper_threshold,
    pair_sum,
)
from .search import (
    DEFAULT_CAP,
    EnumerationCapError,
    enumerate_hyperenergetic,
    max_energy,
    max_energy_of_size,
)
from .spectrum import GraphSpec, classical_bounds, dft_eigenvalues, spectrum_energy

EXIT_INPUT = 2
EXIT_CAP = 3


class Record:
    def __init__(self, command, params, provenance, real_fmt):
        self.command = command
        self.params = params
        self.provenance = provenance
        self.fmt = real_fmt
        self.fields = {}
        self.rows = []

    def real(self, x):
        return self.fmt(float(x))

    def exact(self, x):
        if isinstance(x, Fraction):
            return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
        return str(x)

    def as_dict(self):
        out = {
            "command": self.command,
            "params": self.params,
            "provenance": self.provenance,
            "results": self.fields,
        }
        if self.rows:
            out["rows"] = self.rows
        return out


def _show(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return " ".join(_show(x) for x in v)
    return str(v)


def emit(rec: Record, fmt: str, out=None):
    out = out or sys.stdout
    if fmt == "json":
        json.dump(rec.as_dict(), out, indent=2)
        out.write("\n")
        return
    if fmt == "tsv":
        for k, v in rec.params.items():
            out.write(f"# {k}\t{_show(v)}\n")
        if rec.rows:
            cols = list(rec.rows[0])
            out.write("\t".join(cols) + "\n")
            for row in rec.rows:
                out.write("\t".join(_show(row[c]) for c in cols) + "\n")
        for k, v in rec.fields.items():
            out.write(f"{k}\t{_show(v)}\n")
        return
    out.write(f"{rec.command} [{', '.join(rec.provenance)}]\n")
    if rec.fields:
        width = max(len(k) for k in rec.fields)
        for k, v in rec.fields.items():
            out.write(f"  {k.ljust(width)}  {_show(v)}\n")
    if rec.rows:
        cols = list(rec.rows[0])
        cells = [[_show(row[c]) for c in cols] for row in rec.rows]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
        out.write("  " + "  ".join(c.rjust(w) for c, w in zip(cols, widths)) + "\n")
        for r in cells:
            out.write("  " + "  ".join(x.rjust(w) for x, w in zip(r, widths)) + "\n")


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def cmd_energy(args, rec: Record):
    order = PrimePowerOrder(args.prime, args.exp)
    D = ExponentSet(tuple(args.exponents))
    rep = energy_report(order, D)
    f = rec.fields
    f["n"] = str(order.n)
    f["exponents"] = str(D)
    f["divisors"] = ",".join(map(str, D.divisors(order.p)))
    f["energy"] = str(rep.energy)
    f["normalized"] = rec.exact(rep.normalized)
    f["normalized_decimal"] = rec.real(rep.normalized)
    f["degree"] = str(rep.degree)
    f["complete_graph_energy"] = str(2 * (order.n - 1))
    f["hyperenergetic"] = rep.hyperenergetic
    if args.check_oracle:
        spec = GraphSpec(order.n, D.divisors(order.p))
        f["oracle_energy"] = str(spectrum_energy(spec).energy)
        rec.provenance.append("spectrum")


def cmd_spectrum(args, rec: Record):
    g = GraphSpec(args.n, tuple(args.divisors))
    res = spectrum_energy(g)
    km, bal = classical_bounds(res, g.n)
    f = rec.fields
    f["divisors"] = ",".join(map(str, g.divisors))
    f["eigenvalues"] = [str(x) for x in res.sorted_eigenvalues()]
    f["energy"] = str(res.energy)
    f["degree"] = str(res.degree)
    f["koolen_moulton"] = rec.real(km)
    f["koolen_moulton_slack"] = rec.real(km - res.energy)
    f["balakrishnan"] = rec.real(bal)
    f["balakrishnan_slack"] = rec.real(bal - res.energy)


def cmd_maximize(args, rec: Record):
    order = PrimePowerOrder(args.prime, args.exp)
    f = rec.fields
    f["n"] = str(order.n)
    if args.r is not None:
        energy, sets = max_energy_of_size(order, args.r, cap=args.max_exponent, workers=args.workers)
        f["r"] = str(args.r)
        f["energy"] = str(energy)
        f["normalized"] = rec.exact(Fraction(energy, order.scale))
        f["normalized_decimal"] = rec.real(Fraction(energy, order.scale))
        f["maximal_sets"] = [str(S) for S in sets]
        return
    res = max_energy(order, cap=args.max_exponent, workers=args.workers)
    f["energy"] = str(res.energy)
    f["normalized"] = rec.exact(res.normalized)
    f["normalized_decimal"] = rec.real(res.normalized)
    f["maximal_sets"] = [str(S) for S in res.maximal_sets]
    for r, (e, sets) in res.per_r.items():
        rec.rows.append(
            {
                "r": str(r),
                "energy": str(e),
                "normalized": rec.real(Fraction(e, order.scale)),
                "sets": [str(S) for S in sets],
            }
        )


def _neighbours(exps, s):
    cur = set(exps)
    for a in exps:
        for b in (a - 1, a + 1):
            if 0 <= b < s and b not in cur:
                yield tuple(sorted(cur - {a} | {b}))
        if len(exps) > 1:
            yield tuple(sorted(cur - {a}))
    for b in range(s):
        if b not in cur:
            yield tuple(sorted(cur | {b}))


def local_search(order: PrimePowerOrder, start: ExponentSet, steps: int):
    """Greedy hill climb from ``start`` over single-exponent moves, additions and removals."""
    best = start.exponents
    best_e = closed_form_energy(order, best)
    for _ in range(steps):
        cand = max(_neighbours(best, order.s), key=lambda t: (closed_form_energy(order, t), t))
        e = closed_form_energy(order, cand)
        if e <= best_e:
            break
        best, best_e = cand, e
    return ExponentSet(best), best_e


def cmd_construct(args, rec: Record):
    c = construct_divisor_set(args.prime, args.exp)
    f = rec.fields
    f["n"] = str(args.prime**args.exp)
    f["r0"] = str(c.r0)
    f["positions"] = [rec.real(x) for x in c.positions]
    f["exponents"] = str(c.exponents)
    f["energy"] = str(c.energy)
    f["normalized"] = rec.exact(c.normalized)
    f["normalized_decimal"] = rec.real(c.normalized)
    f["lower"] = rec.real(c.bounds.lower)
    f["upper"] = rec.real(c.bounds.upper)
    f["guarantee"] = c.guarantee
    f["used_fallback"] = c.used_fallback
    if args.neighborhood:
        order = PrimePowerOrder(args.prime, args.exp)
        D, e = local_search(order, c.exponents, args.neighborhood)
        f["neighborhood_exponents"] = str(D)
        f["neighborhood_energy"] = str(e)
        f["neighborhood_normalized_decimal"] = rec.real(Fraction(e, order.scale))
        rec.provenance.append("local-search")


def cmd_table(args, rec: Record):
    for p in args.primes:
        c = construct_divisor_set(p, args.s)
        row = {
            "n": f"{p}^{args.s}",
            "r0": str(c.r0),
            "D0": "(" + ", ".join(map(str, c.exponents)) + ")",
            "lower": rec.real(c.bounds.lower),
        }
        if args.exact:
            res = max_energy(PrimePowerOrder(p, args.s), cap=args.max_exponent, workers=args.workers)
            row["Emax_normalized"] = rec.real(res.normalized)
        row["upper"] = rec.real(c.bounds.upper)
        row["D0_normalized"] = rec.real(c.normalized)
        rec.rows.append(row)


def cmd_hyper(args, rec: Record):
    order = PrimePowerOrder(args.prime, args.exp)
    p, s = order.p, order.s
    if args.exponents:
        D = ExponentSet(tuple(args.exponents))
        D.check_order(order)
        c = hyper_threshold(p, s, D.r)
        margin = c - pair_sum(p, D.exponents)
        rec.fields["exponents"] = str(D)
        rec.fields["threshold"] = rec.exact(c)
        rec.fields["margin"] = rec.exact(margin)
        rec.fields["hyperenergetic"] = margin > 0
        return
    sizes = [args.r] if args.r is not None else range(1, s + 1)
    count = 0
    for r in sizes:
        c = hyper_threshold(p, s, r)
        for D in enumerate_hyperenergetic(order, r, cap=args.max_exponent):
            margin = c - pair_sum(p, D.exponents)
            rec.rows.append(
                {"r": str(r), "exponents": str(D), "margin": rec.exact(margin),
                 "margin_decimal": rec.real(margin)}
            )
            count += 1
    rec.fields["count"] = str(count)


def cmd_verify(args, rec: Record):
    """Random cross-checks of closed form against both spectral routes."""
    rng = random.Random(args.seed)
    checked = 0
    for _ in range(args.trials):
        p = rng.choice([2, 3, 5, 7])
        s = rng.randint(1, 6)
        while p**s > args.max_n:
            s -= 1
        if s < 1:
            continue
        order = PrimePowerOrder(p, s)
        r = rng.randint(1, s)
        D = ExponentSet(tuple(sorted(rng.sample(range(s), r))))
        spec = GraphSpec(order.n, D.divisors(p))
        res = spectrum_energy(spec)
        dft = dft_eigenvalues(spec)
        if closed_form_energy(order, D) != res.energy or list(dft) != list(res.eigenvalues):
            raise ArithmeticError(f"mismatch at p={p}, s={s}, exponents={D}")
        checked += 1
    rec.fields["checked"] = str(checked)
    rec.fields["mismatches"] = "0"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "tsv", "json"], default="text")
    common.add_argument("--precision", type=int, default=6, help="significant digits for reals")
    common.add_argument("--decimals", type=int, default=None, help="fixed decimals for reals")
    common.add_argument("--max-exponent", type=int, default=DEFAULT_CAP,
                        help="enumeration cap on the exponent range")
    common.add_argument("--workers", type=int, default=None,
                        help="processes for exhaustive scans")

    ap = argparse.ArgumentParser(prog="icg-energy", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", parents=[common], help="energy of one divisor set")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--exp", type=int, required=True)
    p.add_argument("--exponents", type=parse_int_list, required=True)
    p.add_argument("--check-oracle", action="store_true")
    p.set_defaults(func=cmd_energy, provenance=["closed-form"])

    p = sub.add_parser("spectrum", parents=[common], help="exact spectrum for any n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--divisors", type=parse_int_list, required=True)
    p.set_defaults(func=cmd_spectrum, provenance=["spectrum"])

    p = sub.add_parser("maximize", parents=[common], help="maximal energy by brute force")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--exp", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.set_defaults(func=cmd_maximize, provenance=["bruteforce"])

    p = sub.add_parser("construct", parents=[common], help="near-maximal divisor set")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--exp", type=int, required=True)
    p.add_argument("--neighborhood", type=int, default=0, metavar="STEPS",
                   help="hill-climb this many steps from the constructed set")
    p.set_defaults(func=cmd_construct, provenance=["relaxation", "closed-form"])

    p = sub.add_parser("table", parents=[common], help="bounds table for fixed s")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--primes", type=parse_int_list, required=True)
    p.add_argument("--no-exact", dest="exact", action="store_false",
                   help="skip the brute-force Emax column")
    p.set_defaults(func=cmd_table, provenance=["relaxation", "bruteforce"])

    p = sub.add_parser("hyper", parents=[common], help="hyperenergetic exponent sets")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--exp", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--exponents", type=parse_int_list, default=None)
    p.set_defaults(func=cmd_hyper, provenance=["closed-form", "bruteforce"])

    p = sub.add_parser("verify", parents=[common], help="random oracle cross-checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--max-n", type=int, default=5000)
    p.set_defaults(func=cmd_verify, provenance=["closed-form", "spectrum", "dft"])
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.decimals is not None:
        real_fmt = lambda x: f"{x:.{args.decimals}f}"  # noqa: E731
    else:
        real_fmt = lambda x: f"{x:.{args.precision}g}"  # noqa: E731
    params = {
        k: (",".join(map(str, v)) if isinstance(v, list) else v)
        for k, v in vars(args).items()
        if k not in ("func", "provenance", "format", "precision", "decimals") and v is not None
    }
    rec = Record(args.command, params, list(args.provenance), real_fmt)
    try:
        args.func(args, rec)
    except EnumerationCapError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    emit(rec, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
