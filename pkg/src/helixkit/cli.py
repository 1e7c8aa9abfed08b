"""Command-line front end.

Subcommands: seed-table, triad, hilbert, koszul-dual, limits, verify.
Exit codes: 0 success, 1 mutation impossible, 2 verification failure,
64 usage, 65 invalid input values, 66 file I/O.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from fractions import Fraction

from . import __version__
from . import quadratic as qa
from .bundles import ChernVector, Triad, hom_dims, mutate_triad_left, mutate_triad_right
from .errors import NotMutable, UnsupportedD
from .helix import (
    Seed,
    check_positivity,
    invariants_from_seed,
    limit_slopes,
    verify_periodicity,
    verify_ratio_bound,
)
from .sampling import (
    random_presentation,
    random_right_mutable_triad,
    random_seed_triple,
)

_VERIFY_SEED = 0x5EED5

# tokens like -1/2 would otherwise be taken for option flags
_FRACTION_TOKEN = re.compile(r"^-\d+/\d+$")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(64, f"{self.prog}: error: {message}\n")


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}")


def _chern_arg(text: str) -> tuple[int, int]:
    parts = text.strip().split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected rank:degree, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected rank:degree, got {text!r}")


def _drange_arg(text: str) -> tuple[int, int]:
    parts = text.strip().split(":")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    try:
        lo = int(parts[0])
        hi = int(parts[-1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    return lo, hi


def _build_parser() -> _Parser:
    top = _Parser(prog="helixkit", description=__doc__)
    top.add_argument("--version", action="version",
                     version=f"helixkit {__version__}")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seed-table", help="grow and report a seed table")
    p.add_argument("mu0", type=_fraction_arg)
    p.add_argument("mu1p", type=_fraction_arg)
    p.add_argument("mu1", type=_fraction_arg)
    p.add_argument("--n", type=int, default=10, help="last row index")
    p.add_argument("--format", choices=("table", "json", "csv"),
                   default="table")
    p.set_defaults(func=_run_seed_table)

    p = sub.add_parser("triad", help="mutate a slope-ordered triple")
    p.add_argument("a", type=_chern_arg)
    p.add_argument("b", type=_chern_arg)
    p.add_argument("c", type=_chern_arg)
    direction = p.add_mutually_exclusive_group()
    direction.add_argument("--right", dest="direction", action="store_const",
                           const="right", default="right")
    direction.add_argument("--left", dest="direction", action="store_const",
                           const="left")
    p.add_argument("--steps", type=int, default=1)
    p.set_defaults(func=_run_triad)

    p = sub.add_parser("hilbert", help="series coefficients and cross-checks")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--order", type=int, default=10)
    p.set_defaults(func=_run_hilbert)

    p = sub.add_parser("koszul-dual", help="dualize a presentation file")
    p.add_argument("input", help="presentation JSON file")
    p.add_argument("--out", help="write the dual here instead of stdout")
    p.add_argument("--dims", type=int, metavar="D",
                   help="print the dual dimension table to degree D")
    p.add_argument("--witness", type=int, metavar="D",
                   help="run the alternating-sum check to offset D")
    p.add_argument("--check-double-dual", action="store_true")
    p.set_defaults(func=_run_koszul_dual)

    p = sub.add_parser("limits", help="exact two-sided slope limits")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_run_limits)

    p = sub.add_parser("verify", help="run the full property suite")
    p.add_argument("--d-range", type=_drange_arg, default=(5, 13))
    p.add_argument("--horizon", type=int, default=40)
    p.add_argument("--seed-samples", type=int, default=25)
    p.set_defaults(func=_run_verify)

    return top


def _run_seed_table(args) -> int:
    if args.n < 1:
        raise ValueError("--n must be at least 1")
    seed = Seed(args.mu0, args.mu1p, args.mu1)
    table = invariants_from_seed(seed, args.n)
    report = check_positivity(seed, args.n)

    if args.format == "csv":
        sys.stdout.write(table.to_csv())
        return 0
    if args.format == "json":
        doc = table.to_json_dict()
        doc["positivity"] = str(report)
        print(json.dumps(doc, indent=2))
        return 0

    print(f"seed: mu0={seed.mu0} mu1p={seed.mu1p} mu1={seed.mu1}")
    for row in table.rows:
        line = f"n={row.n} d={row.d} r={row.r}"
        if row.dp is not None:
            line += f" dp={row.dp} rp={row.rp}"
        if row.r > 0:
            line += f" slope={Fraction(row.d, row.r)}"
        print(line)
    if report.kind == "FailsAt":
        print(f"positivity: FailsAt n={report.fail_index} ({report.fail_component})")
    else:
        print(f"positivity: {report}")
    if len(table.rows) >= 5:
        ok, why = verify_periodicity(table)
        print("periodicity: ok" if ok else f"periodicity: BROKEN ({why})")
        if not ok:
            return 2
    return 0


def _triad_line(step: int, t: Triad) -> str:
    h = hom_dims(t)
    slopes = ", ".join(
        str(Fraction(v.degree, v.rank)) for v in (t.a, t.b, t.c)
    )
    return (
        f"step {step}: ({t.a}, {t.b}, {t.c}) "
        f"hom=({h.ab},{h.ac},{h.bc}) slopes=({slopes})"
    )


def _run_triad(args) -> int:
    if args.steps < 0:
        raise ValueError("--steps must be nonnegative")
    t = Triad(ChernVector(*args.a), ChernVector(*args.b), ChernVector(*args.c))
    print(_triad_line(0, t))
    mutate = mutate_triad_right if args.direction == "right" else mutate_triad_left
    for step in range(1, args.steps + 1):
        try:
            t = mutate(t)
        except NotMutable as exc:
            print(
                f"error at step {step}: member {exc.member} not mutable ({exc})",
                file=sys.stderr,
            )
            return 1
        print(_triad_line(step, t))
    return 0


def _run_hilbert(args) -> int:
    model = qa.EquigenModel(args.d)
    if args.order < 3:
        raise ValueError("--order must be at least 3")
    a = qa.hilbert_A(model, args.order)
    b = qa.hilbert_B(model, args.order)
    print("A: " + " ".join(str(c) for c in a.coeffs))
    print("B: " + " ".join(str(c) for c in b.coeffs))
    failed = False
    d = args.d
    if d == 3 or (d >= 5 and d % 2 == 1):
        ok, where = qa.cross_check_hilbert(model, args.order)
        print("cross-check: PASS" if ok else
              f"cross-check: FAIL (first mismatch at i={where})")
        failed = failed or not ok
    else:
        print("cross-check: SKIPPED (only defined for d=3 and odd d>=5)")
    if args.order >= 6:
        ok = qa.normal_quotient_check(model, args.order)
        print("normal-quotient: PASS" if ok else "normal-quotient: FAIL")
        failed = failed or not ok
    return 2 if failed else 0


def _run_koszul_dual(args) -> int:
    with open(args.input, encoding="utf-8") as fh:
        doc = json.load(fh)
    pres = qa.QuadraticPresentation.from_json_dict(doc)
    dual = qa.koszul_dual(pres)
    rendered = json.dumps(dual.to_json_dict(), indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered + "\n")
    else:
        print(rendered)
    failed = False
    if args.check_double_dual:
        ok = qa.double_dual_check(pres)
        print("double-dual: PASS" if ok else "double-dual: FAIL")
        failed = failed or not ok
    if args.dims is not None:
        sys.stdout.write(qa.degree_dims(dual, args.dims).to_csv())
    if args.witness is not None:
        rep = qa.koszulity_witness(pres, args.witness)
        if rep.passed:
            print("koszulity-witness: PASS")
        else:
            j, q = rep.failures()[0]
            print(f"koszulity-witness: FAIL (first at j={j}, q={q})")
            failed = True
    return 2 if failed else 0


def _run_limits(args) -> int:
    rep = limit_slopes(args.d)
    print(f"right: {rep.right_limit} ≈ {rep.decimal_right}")
    print(f"left: {rep.left_limit} ≈ {rep.decimal_left}")
    print("irrational: " + ("yes" if rep.irrational else "no"))
    return 0


def _verify_checks(ds, horizon, samples, rng):
    """Yield (name, ok, detail) for the nine suites in a fixed order."""

    def periodicity():
        for d in ds:
            table = invariants_from_seed(Seed(0, Fraction(d, 2), d), horizon)
            ok, why = verify_periodicity(table)
            if not ok:
                return False, f"d={d}: {why}"
        for _ in range(samples):
            seed = random_seed_triple(rng, 12)
            ok, why = verify_periodicity(invariants_from_seed(seed, 12))
            if not ok:
                return False, f"seed ({seed.mu0},{seed.mu1p},{seed.mu1}): {why}"
        return True, ""

    def rotation():
        for _ in range(max(samples, 50)):
            t = random_right_mutable_triad(rng)
            h = hom_dims(t)
            got = hom_dims(mutate_triad_right(t))
            if (got.ab, got.ac, got.bc) != (h.ac, h.bc, h.ab):
                return False, f"triad ({t.a}, {t.b}, {t.c})"
        return True, ""

    def roundtrip():
        for _ in range(max(samples, 50)):
            t = random_right_mutable_triad(rng)
            if mutate_triad_left(mutate_triad_right(t)) != t:
                return False, f"triad ({t.a}, {t.b}, {t.c})"
        return True, ""

    def closed_form_equivalence():
        from .helix import closed_form

        for d in ds:
            table = invariants_from_seed(Seed(0, Fraction(d, 2), d), horizon)
            for row in table.rows:
                if closed_form(d, row.n) != (row.r, row.d):
                    return False, f"d={d}, n={row.n}"
        return True, ""

    def ratio_bound():
        for d in ds:
            table = invariants_from_seed(Seed(0, Fraction(d, 2), d), horizon)
            if not verify_ratio_bound(table):
                return False, f"d={d}"
        return True, ""

    def hilbert_crosscheck():
        for d in ds:
            ok, where = qa.cross_check_hilbert(qa.EquigenModel(d), min(horizon, 30))
            if not ok:
                return False, f"d={d}, first mismatch at i={where}"
        return True, ""

    def normal_quotient():
        for d in ds:
            if not qa.normal_quotient_check(qa.EquigenModel(d), max(6, min(horizon, 30))):
                return False, f"d={d}"
        return True, ""

    def double_dual():
        for k in range(min(max(samples, 20), 50)):
            pres = random_presentation(rng)
            if not qa.double_dual_check(pres):
                return False, f"random presentation #{k}"
        return True, ""

    def koszulity_witness():
        for d in ds:
            rep = qa.koszulity_witness(qa.EquigenModel(d), 6)
            if not rep.passed:
                j, q = rep.failures()[0]
                return False, f"d={d}, first at j={j}, q={q}"
        for n in (1, 2, 3):
            pres, _ = qa.classical_euler_fixture(n)
            rep = qa.koszulity_witness(pres, n + 2)
            if not rep.passed:
                j, q = rep.failures()[0]
                return False, f"fixture n={n}, first at j={j}, q={q}"
        return True, ""

    suites = (
        ("periodicity", periodicity),
        ("rotation", rotation),
        ("roundtrip", roundtrip),
        ("closed-form-equivalence", closed_form_equivalence),
        ("ratio-bound", ratio_bound),
        ("hilbert-crosscheck", hilbert_crosscheck),
        ("normal-quotient", normal_quotient),
        ("double-dual", double_dual),
        ("koszulity-witness", koszulity_witness),
    )
    for name, fn in suites:
        ok, detail = fn()
        yield name, ok, detail


def _run_verify(args) -> int:
    lo, hi = args.d_range
    if lo > hi or lo < 5 or lo % 2 == 0 or hi % 2 == 0:
        raise UnsupportedD(f"d range must cover odd values >= 5, got {lo}:{hi}")
    if args.horizon < 5:
        raise ValueError("--horizon must be at least 5")
    if args.seed_samples < 0:
        raise ValueError("--seed-samples must be nonnegative")
    ds = list(range(lo, hi + 1, 2))
    rng = random.Random(_VERIFY_SEED)
    all_ok = True
    for name, ok, detail in _verify_checks(ds, args.horizon, args.seed_samples, rng):
        print(f"{name}: PASS" if ok else f"{name}: FAIL ({detail})")
        all_ok = all_ok and ok
    return 0 if all_ok else 2


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = [" " + tok if _FRACTION_TOKEN.match(tok) else tok for tok in argv]
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NotMutable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 66
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 65


if __name__ == "__main__":
    sys.exit(main())
