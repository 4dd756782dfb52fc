"""Command-line access to the tables, convergence runs and pairings.

Every subcommand prints a table to stdout, aligned text by default or CSV
with ``--format csv``.  Exit status is 0 on success, 1 when a computation
fails and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, field

from .exceptions import DeMoivreError

# De Moivre's printed values; data, never recomputed.
HISTORICAL_TABLE = {1.0: 0.682688, 2.0: 0.95428, 3.0: 0.99874}

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


@dataclass
class OutputTable:
    """Named columns of equal length plus optional comment lines."""

    columns: list  # [(name, [values])]
    trailer: list = field(default_factory=list)

    def rows(self):
        return list(zip(*(values for _, values in self.columns)))

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self._csv()
        return self._text()

    def _csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([name for name, _ in self.columns])
        for row in self.rows():
            writer.writerow([_fmt(v, 15) for v in row])
        for line in self.trailer:
            buf.write(f"# {line}\n")
        return buf.getvalue()

    def _text(self) -> str:
        header = [name for name, _ in self.columns]
        body = [[_fmt(v, 6) for v in row] for row in self.rows()]
        widths = [max(len(c) for c in col) for col in zip(header, *body)] if header else []
        lines = ["  ".join(c.rjust(w) for c, w in zip(header, widths))]
        lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in body]
        lines += [f"# {line}" for line in self.trailer]
        return "\n".join(lines) + "\n"


def _fmt(value, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool) or isinstance(value, str):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) and math.isnan(value):
        return "nan"
    return f"{value:.{digits}g}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _probe_arg(text):
    from .probes import parse_probe

    try:
        return parse_probe(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _n_arg(text):
    value = int(text)
    if value < 4:
        raise argparse.ArgumentTypeError(f"n must be at least 4, got {text}")
    return value


def _prob(text):
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"p must lie in (0, 1), got {text}")
    return value


def _finite_float(text):
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text}")
    return value


def _nonneg_float(text):
    value = _finite_float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text}")
    return value


def _growth(text):
    value = _finite_float(text)
    if value <= 1:
        raise argparse.ArgumentTypeError(f"factor must exceed 1, got {text}")
    return value


# -- commands ---------------------------------------------------------------


def cmd_table(args) -> OutputTable:
    from .laws import BinomialLaw
    from .pairing import continuity_corrected_limit, pair_binomial
    from .probes import Indicator
    from .quadrature import BOOLE, gaussian_cdf_central, historical_bracket

    sigmas = args.sigmas
    cols = {"s": [], "modern": [], "de_moivre": []}
    if args.n is not None:
        cols["binomial"] = []
        if args.continuity_correction:
            cols["corrected_limit"] = []
    if args.historical:
        cols["coarse_low"] = []
        cols["coarse_high"] = []
    trailer = []
    for s in sigmas:
        cols["s"].append(s)
        cols["modern"].append(gaussian_cdf_central(s, BOOLE, 256) if s > 0 else 0.0)
        cols["de_moivre"].append(HISTORICAL_TABLE.get(float(s)))
        if args.n is not None:
            law = BinomialLaw(args.n, args.p)
            probe = Indicator(-s, s)
            cols["binomial"].append(pair_binomial(law, probe).value.real)
            if args.continuity_correction:
                cols["corrected_limit"].append(continuity_corrected_limit(law, probe))
        if args.historical:
            bracket = historical_bracket(s)
            cols["coarse_low"].append(bracket.low)
            cols["coarse_high"].append(bracket.high)
    if args.historical:
        trailer.append("coarse settings: " + historical_bracket(1.0).settings())
        trailer.append("de_moivre column is historical data, not a reproduction target")
    if args.n is not None:
        trailer.append(f"binomial: closed interval [-s, s] on the standardized grid, n={args.n}, p={args.p}")
    return OutputTable(list(cols.items()), trailer)


def cmd_converge(args) -> OutputTable:
    from .pairing import convergence_study

    n_values = []
    n = args.n_start
    while n <= args.n_stop:
        n_values.append(n)
        nxt = int(round(n * args.factor))
        n = nxt if nxt > n else n + 1
    if len(n_values) < 3:
        raise _UsageError("the n range must contain at least 3 points")
    report = convergence_study(args.p, args.probe, n_values, parallel=args.parallel)
    limit = report.limit
    real = args.probe.is_real
    cols = [("n", list(report.n_values))]
    if real:
        cols += [
            ("pairing", [v.real for v in report.pairings]),
            ("gaussian_limit", [limit.real] * len(n_values)),
        ]
    else:
        cols += [
            ("pairing_re", [v.real for v in report.pairings]),
            ("pairing_im", [v.imag for v in report.pairings]),
            ("gaussian_limit_re", [limit.real] * len(n_values)),
            ("gaussian_limit_im", [limit.imag] * len(n_values)),
        ]
    cols.append(("abs_error", list(report.errors)))
    trailer = [f"probe: {report.probe_description}, p={args.p}", f"fitted slope: {report.fitted_slope:.6g}"]
    if report.note:
        trailer.append(report.note)
    return OutputTable(cols, trailer)


def cmd_plot_data(args) -> tuple:
    import numpy as np

    from .laws import BinomialLaw, atom_grid, gaussian_density

    grid = atom_grid(BinomialLaw(args.n, args.p))
    # --range 0 means no bars at all, even though an atom may sit at x = 0
    keep = (np.abs(grid.x) <= args.range) & (args.range > 0)
    atoms = OutputTable(
        [("x", grid.x[keep].tolist()), ("height", (grid.weights[keep] / grid.dx).tolist())]
    )
    half = max(args.range, 4.0)
    xs = np.linspace(-half, half, 401)
    curve = OutputTable([("x", xs.tolist()), ("density", gaussian_density(xs).tolist())])
    return atoms, curve


def cmd_pair(args) -> OutputTable:
    from .laws import BinomialLaw
    from .pairing import continuity_corrected_limit, pair_binomial, pair_gaussian
    from .probes import Indicator

    law = BinomialLaw(args.n, args.p)
    res = pair_binomial(law, args.probe, args.cutoff, parallel=args.parallel)
    limit = pair_gaussian(args.probe, "quadrature")
    cols = [
        ("value_re", [res.value.real]),
        ("value_im", [res.value.imag]),
        ("bulk_re", [res.bulk_value.real]),
        ("tail_re", [res.tail_value.real]),
        ("tail_certificate", [res.tail_certificate if res.tail_certificate is not None else math.nan]),
        ("gaussian_limit_re", [limit.real]),
        ("gaussian_limit_im", [limit.imag]),
    ]
    if args.continuity_correction:
        if not isinstance(args.probe, Indicator):
            raise _UsageError("--continuity-correction applies to indicator probes only")
        cols.append(("corrected_limit", [continuity_corrected_limit(law, args.probe)]))
    return OutputTable(cols, [f"probe: {args.probe.describe()}, n={args.n}, p={args.p}, M={args.cutoff:g}"])


def cmd_local(args) -> OutputTable:
    from .pairing import local_ratio

    res = local_ratio(args.n, args.l, args.p)
    return OutputTable(
        [
            ("n", [res.n]),
            ("l", [res.l]),
            ("exact_log_ratio", [res.exact_log_ratio]),
            ("demoivre_log_ratio", [res.demoivre_log_ratio]),
            ("difference", [res.difference]),
        ]
    )


def cmd_moments(args) -> OutputTable:
    from .laws import BinomialLaw, CauchyLaw, GaussianReference
    from .probes import gaussian_window
    from .transforms import classical_moment, weak_moment

    orders = list(range(args.r + 1)) if args.all else [args.r]
    if args.weak:
        law = CauchyLaw() if args.weak == "cauchy" else GaussianReference()
        window = gaussian_window()
        base = weak_moment(law, 0, window)
        raw = [weak_moment(law, r, window) for r in orders]
        return OutputTable(
            [("r", orders), ("weak_moment", raw), ("normalized", [v / base for v in raw])],
            [f"law: {args.weak}, window: exp(-x^2/2); normalized = weak_moment / weak_moment(r=0)"],
        )
    if args.n is None:
        raise _UsageError("--n is required for classical moments")
    law = BinomialLaw(args.n, args.p)
    values = [classical_moment(law, r, args.standardized) for r in orders]
    label = "standardized" if args.standardized else "raw"
    return OutputTable([("r", orders), ("moment", values)], [f"{label} moments, n={args.n}, p={args.p}"])


def cmd_cf(args) -> OutputTable:
    from .laws import BinomialLaw, CauchyLaw, GaussianReference
    from .probes import gaussian_window
    from .transforms import characteristic_function, weak_characteristic_function

    ts = args.t
    if args.weak:
        law = CauchyLaw() if args.weak == "cauchy" else GaussianReference()
        window = gaussian_window()
        raw = [weak_characteristic_function(law, t, window) for t in ts]
        ratio = [weak_characteristic_function(law, t, window, normalized=True) for t in ts]
        return OutputTable(
            [
                ("t", ts),
                ("raw_re", [v.real for v in raw]),
                ("raw_im", [v.imag for v in raw]),
                ("normalized_re", [v.real for v in ratio]),
                ("normalized_im", [v.imag for v in ratio]),
            ],
            [f"law: {args.weak}, window: exp(-x^2/2); raw = <T, exp(itx) phi>, normalized = raw / <T, phi>"],
        )
    if args.n is None:
        raise _UsageError("--n is required for the binomial characteristic function")
    law = BinomialLaw(args.n, args.p)
    vals = [characteristic_function(law, t) for t in ts]
    return OutputTable([("t", ts), ("cf_re", [v.real for v in vals]), ("cf_im", [v.imag for v in vals])])


class _UsageError(Exception):
    pass


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .probes import PROBE_GRAMMAR

    parser = _Parser(prog="demoivre", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def common(p, fmt_default="text"):
        p.add_argument("--format", choices=("text", "csv"), default=fmt_default)
        p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    t = sub.add_parser("table", help="central Gaussian probabilities beside De Moivre's figures")
    t.add_argument("--sigmas", type=_nonneg_float, nargs="+", default=[1.0, 2.0, 3.0])
    t.add_argument("--n", type=_n_arg, help="add the exact binomial pairing at this n")
    t.add_argument("--p", type=_prob, default=0.5)
    t.add_argument("--historical", action="store_true", help="add the coarse-quadrature bracket")
    t.add_argument("--continuity-correction", action="store_true",
                   help="with --n, add the Gaussian limit over [-s - dx/2, s + dx/2]")
    common(t)
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("converge", help="pairing errors along a geometric n sequence",
                       epilog=PROBE_GRAMMAR)
    c.add_argument("--p", type=_prob, default=0.5)
    c.add_argument("--probe", type=_probe_arg, default="hermite:0")
    c.add_argument("--n-start", type=_n_arg, default=16)
    c.add_argument("--n-stop", type=_n_arg, default=4096)
    c.add_argument("--factor", type=_growth, default=2.0)
    c.add_argument("--parallel", action="store_true")
    common(c)
    c.set_defaults(func=cmd_converge)

    d = sub.add_parser("plot-data", help="bar heights and normal curve, as two CSV blocks")
    d.add_argument("--n", type=_n_arg, required=True)
    d.add_argument("--p", type=_prob, default=0.5)
    d.add_argument("--range", type=_nonneg_float, default=4.0)
    common(d, "csv")
    d.set_defaults(func=cmd_plot_data)

    pr = sub.add_parser("pair", help="pair a binomial law with a probe", epilog=PROBE_GRAMMAR)
    pr.add_argument("--n", type=_positive_int, required=True)
    pr.add_argument("--p", type=_prob, default=0.5)
    pr.add_argument("--probe", type=_probe_arg, required=True)
    pr.add_argument("--cutoff", type=_finite_float, default=10.0, help="bulk/tail cutoff M (default 10)")
    pr.add_argument("--continuity-correction", action="store_true")
    pr.add_argument("--parallel", action="store_true")
    common(pr)
    pr.set_defaults(func=cmd_pair)

    lo = sub.add_parser("local", help="exact vs De Moivre log-ratio to the middle term")
    lo.add_argument("--n", type=_positive_int, required=True)
    lo.add_argument("--l", type=int, required=True)
    lo.add_argument("--p", type=_prob, default=None, help="general-p form (np must be an integer)")
    common(lo)
    lo.set_defaults(func=cmd_local)

    m = sub.add_parser("moments", help="classical binomial moments or weak moments")
    m.add_argument("--n", type=_positive_int)
    m.add_argument("--p", type=_prob, default=0.5)
    m.add_argument("--r", type=int, required=True)
    m.add_argument("--all", action="store_true", help="all orders 0..r")
    m.add_argument("--standardized", action="store_true")
    m.add_argument("--weak", choices=("gaussian", "cauchy"),
                   help="weak moments of this law with a Gaussian window")
    common(m)
    m.set_defaults(func=cmd_moments)

    f = sub.add_parser("cf", help="binomial characteristic function or weak characteristic function")
    f.add_argument("--n", type=_positive_int)
    f.add_argument("--p", type=_prob, default=0.5)
    f.add_argument("--t", type=_finite_float, nargs="+", required=True)
    f.add_argument("--weak", choices=("gaussian", "cauchy"))
    common(f)
    f.set_defaults(func=cmd_cf)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub_parser = parser._subparsers._group_actions[0].choices[args.command]
    try:
        result = args.func(args)
    except _UsageError as exc:
        sub_parser.print_usage(sys.stderr)
        print(f"{sub_parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DeMoivreError, ArithmeticError) as exc:
        print(f"demoivre: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE

    tables = result if isinstance(result, tuple) else (result,)
    text = "\n".join(t.render(args.format) for t in tables)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
