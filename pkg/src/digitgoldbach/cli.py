"""
Command-Line Interface.

``digit-goldbach [global flags] <command> [command flags]``

Every command builds one report model (or a list of them) and writes it as
JSON or flattened CSV. With ``--check`` the command's acceptance assertion
is evaluated afterwards and a failure exits with status 3.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Any, NoReturn

from pydantic import BaseModel

from digitgoldbach.approximant import (
    F_chi_Q,
    deviation_scan,
    lambda_Q,
    lambda_Q_sigma0,
    load_zeros,
)
from digitgoldbach.characters import (
    character_from_index,
    count_square_roots,
    fraction_pair_count,
    fraction_pair_sweep,
    hensel_reduction_check,
    square_root_sweep,
    w_sum,
    w_sum_sweep,
    weil_sum_check,
    weil_sweep,
)
from digitgoldbach.config import ToolkitConfig, config_from_mapping, load_config_file
from digitgoldbach.counting import count_representations, decompose_conditional
from digitgoldbach.errors import (
    EXIT_ARGUMENT,
    EXIT_OK,
    DigitGoldbachAcceptanceError,
    DigitGoldbachArgumentError,
    DigitGoldbachError,
    exit_code_for,
)
from digitgoldbach.experiments import EXPERIMENTS
from digitgoldbach.measures import (
    fourier_transform,
    l1_norm,
    large_sieve_sum,
    linf_bound,
)
from digitgoldbach.models import (
    ApproximantValue,
    Block,
    CountReport,
    DeviationPlan,
    DigitSystem,
    ExperimentConfig,
    Frequency,
    ProductMeasure,
    RepCountQuery,
    SweepSummary,
    TransformValue,
    VerificationReport,
    ZeroSet,
)
from digitgoldbach.toolkit import DigitGoldbachToolkit
from digitgoldbach.utils import Exclude, setup_logging, write_report


logger = logging.getLogger("digitgoldbach")

Payload = BaseModel | Sequence[BaseModel]
Outcome = tuple[Payload, list[str]]

DEFAULT_G = 10
DEFAULT_B = 7
DEFAULT_Q = 10.0

# Config-file keys that supply global flags rather than ToolkitConfig fields.
FLAG_TYPES: dict[str, Callable[[str], Any]] = {
    "g": int,
    "b": int,
    "N": int,
    "Q": float,
    "zeros": str,
    "out": str,
}


@dataclass(frozen=True)
class Settings:
    """Global flags merged with the config file."""

    config: ToolkitConfig
    g: int
    b: int
    N: int | None
    Q: float
    zeros: str | None
    out: str | None
    check: bool
    timings: bool

    def require_N(self) -> int:
        """Return --N or fail."""
        if self.N is None:
            raise DigitGoldbachArgumentError(
                "--N is required for this command", field="N"
            )
        return self.N

    def zero_set(self) -> ZeroSet:
        """Load --zeros, or an empty zero set when none is given."""
        if self.zeros is None:
            return ZeroSet(Q=self.Q, sigma0=self.config.sigma0)
        return load_zeros(self.zeros, self.Q, self.config.sigma0, self.config)


# -----------------------------------------------------------------------------
# Argument parsing
# -----------------------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    """Parse "3;5;7" (or commas) into integers."""
    try:
        return [int(part) for part in text.replace(",", ";").split(";") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(
            f"expected integers separated by ';': {text!r}"
        ) from e


def _parse_block(text: str) -> Block:
    """Parse "lo-hi", "lo-hi!x!y" or a single digit "d"."""
    head, *excluded = text.strip().split("!")
    lo, _, hi = head.partition("-")
    return Block(lo=int(lo), hi=int(hi or lo), excluded=tuple(int(e) for e in excluded))


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with the argument-error status."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGUMENT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with all commands."""
    parser = _Parser(
        prog="digit-goldbach",
        description=(
            "Ternary Goldbach with a forbidden digit: counts, sums and experiments."
        ),
    )
    parser.add_argument("--g", type=int, help=f"base (default {DEFAULT_G})")
    parser.add_argument("--b", type=int, help=f"forbidden digit (default {DEFAULT_B})")
    parser.add_argument("--N", type=int, help="target")
    parser.add_argument(
        "--Q", type=float, help=f"approximant level (default {DEFAULT_Q})"
    )
    parser.add_argument(
        "--p-max", dest="p_max", type=int, help="singular series cutoff"
    )
    parser.add_argument(
        "--zeros", help="zeros CSV (beta,gamma,modulus,char_index[,multiplicity])"
    )
    parser.add_argument("--seed", type=int)
    parser.add_argument("--threads", type=int)
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--format", dest="output_format", choices=["json", "csv"])
    parser.add_argument("--config", help="key=value file supplying any flag")
    parser.add_argument(
        "--check", action="store_true", help="exit 3 if acceptance fails"
    )
    parser.add_argument("--timings", action="store_true", help="emit runtimes")
    parser.add_argument("--log-level", default="WARNING")
    commands = parser.add_subparsers(dest="command", required=True)

    count = commands.add_parser("count", help="count representations")
    count.add_argument("--T", type=int, help="target (defaults to --N)")
    count.add_argument("--m", type=int, choices=[2, 3], default=3)
    count.add_argument("--include-zero", action="store_true")
    count.add_argument("--coprime", action="store_true", help="require gcd(x_i, g) = 1")
    count.set_defaults(handler=_count)

    decompose = commands.add_parser(
        "decompose", help="carry decomposition of x1 + x2 = T"
    )
    decompose.add_argument("--T", type=int, help="target (defaults to --N)")
    decompose.add_argument("--include-zero", action="store_true")
    decompose.add_argument("--reveal-above", type=int)
    decompose.set_defaults(handler=_decompose)

    fourier = commands.add_parser(
        "fourier", help="Fourier transforms of product measures"
    )
    fourier.add_argument("action", choices=["transform", "l1", "sieve", "linf"])
    fourier.add_argument("--k", type=int, help="digit length (defaults to that of --N)")
    fourier.add_argument(
        "--blocks",
        type=lambda text: [_parse_block(part) for part in text.split(";")],
        help=(
            "';'-separated blocks such as '0-9!7;3;1-5' "
            "(defaults to the restricted digits)"
        ),
    )
    fourier.add_argument("--a", type=int, default=1)
    fourier.add_argument("--q", type=int, default=3)
    fourier.add_argument("--beta", type=float, default=0.0)
    fourier.add_argument("--d", type=int, default=1)
    fourier.add_argument("--oversampling", type=int, default=4)
    fourier.set_defaults(handler=_fourier)

    charsum = commands.add_parser("charsum", help="character sums and their bounds")
    charsum.add_argument(
        "action", choices=["wsum", "weil", "hensel", "squares", "fractions"]
    )
    charsum.add_argument("--sweep", action="store_true", help="exhaustive sweep")
    charsum.add_argument("--primes", type=_int_list, default=[3, 5])
    charsum.add_argument("--p", type=int, default=5)
    charsum.add_argument("--q1", type=int, default=5)
    charsum.add_argument("--i1", type=int, default=1)
    charsum.add_argument("--q2", type=int, default=25)
    charsum.add_argument("--i2", type=int, default=1)
    charsum.add_argument("--b1", type=int, default=1)
    charsum.add_argument("--b2", type=int, default=1)
    charsum.add_argument("--t", type=int, default=0)
    charsum.add_argument("--a1", type=int, default=1)
    charsum.add_argument("--a2", type=int, default=2)
    charsum.add_argument("--max-a1", type=int, default=2)
    charsum.add_argument("--max-a2", type=int)
    charsum.add_argument("--max-degree", type=int, default=3)
    charsum.add_argument("--max-power", type=int, default=3)
    charsum.add_argument(
        "--poly", type=_int_list, default=[1, 0, 1], help="little-endian"
    )
    charsum.add_argument(
        "--g-poly", type=_int_list, default=[0, 1], help="little-endian"
    )
    charsum.add_argument("--index", type=int, default=1)
    charsum.add_argument("--alpha", type=int, default=1)
    charsum.add_argument("--odd", action="store_true", help="modulus p^(2 alpha + 1)")
    charsum.add_argument("--a", type=int, default=1)
    charsum.add_argument("--k", type=int, default=2)
    charsum.add_argument("--units-only", action="store_true")
    charsum.set_defaults(handler=_charsum)

    approximant = commands.add_parser("approximant", help="approximants to Λ")
    approximant.add_argument("action", choices=["lambda-q", "f-chi-q", "deviation"])
    approximant.add_argument("--n", type=int, default=1)
    approximant.add_argument("--modulus", type=int, default=1)
    approximant.add_argument("--index", type=int, default=0)
    approximant.add_argument("--M", type=int, default=10_000)
    approximant.add_argument("--farey-limit", type=int)
    approximant.add_argument("--grid-size", type=int)
    approximant.add_argument("--restricted", action="store_true", help="weight by 1_S")
    approximant.set_defaults(handler=_approximant)

    verify = commands.add_parser("verify", help="circle-method verification")
    verify.add_argument("--range", nargs=3, type=int, metavar=("START", "STOP", "STEP"))
    verify.add_argument("--mode", choices=["fft", "direct"], default="fft")
    verify.set_defaults(handler=_verify)

    experiment = commands.add_parser("experiment", help="registered experiments")
    experiment.add_argument("name", choices=sorted(EXPERIMENTS))
    experiment.add_argument(
        "--param", action="append", default=[], metavar="KEY=VALUE", help="repeatable"
    )
    experiment.set_defaults(handler=_experiment)
    return parser


def resolve_settings(args: argparse.Namespace) -> Settings:
    """
    Merge the config file with the command line; command-line values win.

    Raises:
        DigitGoldbachConfigError: If the file or a value is invalid.
    """
    values: dict[str, Any] = load_config_file(args.config) if args.config else {}
    if "format" in values:
        values["output_format"] = values.pop("format")
    for key, kind in FLAG_TYPES.items():
        if isinstance(values.get(key), str):
            try:
                values[key] = kind(values[key])
            except ValueError as e:
                raise DigitGoldbachArgumentError(
                    f"invalid {key} in config file", field=key, value=values[key]
                ) from e
    for key in ("p_max", "seed", "threads", "output_format", *FLAG_TYPES):
        if getattr(args, key, None) is not None:
            values[key] = getattr(args, key)
    return Settings(
        config=config_from_mapping(values),
        g=values.get("g", DEFAULT_G),
        b=values.get("b", DEFAULT_B),
        N=values.get("N"),
        Q=values.get("Q", DEFAULT_Q),
        zeros=values.get("zeros"),
        out=values.get("out"),
        check=args.check,
        timings=args.timings,
    )


# -----------------------------------------------------------------------------
# Commands
# -----------------------------------------------------------------------------


def _count(args: argparse.Namespace, s: Settings) -> Outcome:
    T = args.T if args.T is not None else s.require_N()
    query = RepCountQuery(
        T=T,
        m=args.m,
        sys=DigitSystem.for_target(max(T, 1), s.g, s.b),
        include_zero=args.include_zero,
        coprime_to_g=args.coprime,
    )
    report = CountReport(query=query, count=count_representations(query))
    return report, [] if report.count > 0 else [f"no representations of {T}"]


def _decompose(args: argparse.Namespace, s: Settings) -> Outcome:
    T = args.T if args.T is not None else s.require_N()
    sys_ = DigitSystem.for_target(max(T, 1), s.g, s.b)
    decomposition = decompose_conditional(T, sys_, args.include_zero, args.reveal_above)
    expected = count_representations(
        RepCountQuery(T=T, m=2, sys=sys_, include_zero=args.include_zero)
    )
    failures = []
    if decomposition.total_mass != expected:
        failures.append(f"total mass {decomposition.total_mass} != count {expected}")
    return decomposition, failures


def _measure(args: argparse.Namespace, s: Settings) -> ProductMeasure:
    if args.blocks:
        return ProductMeasure(g=s.g, blocks=tuple(args.blocks))
    k = args.k
    if k is None:
        k = DigitSystem.for_target(s.require_N(), s.g, s.b).k
    block = Block(lo=0, hi=s.g - 1, excluded=(s.b,))
    return ProductMeasure(g=s.g, blocks=(block,) * k)


def _fourier(args: argparse.Namespace, s: Settings) -> Outcome:
    mu = _measure(args, s)
    if args.action == "transform":
        value = fourier_transform(mu, Frequency(a=args.a, q=args.q, beta=args.beta))
        ratio = abs(value) / mu.mass
        result = TransformValue(
            a=args.a,
            q=args.q,
            beta=args.beta,
            value_real=value.real,
            value_imag=value.imag,
            ratio=ratio,
        )
        if ratio > 1 + 1e-9:
            return result, [f"|transform| / mass = {ratio} > 1"]
        return result, []
    if args.action == "l1":
        return l1_norm(mu, args.oversampling, s.config), []
    if args.action == "sieve":
        return large_sieve_sum(mu, int(s.Q), args.d, args.beta, s.config), []
    bound = linf_bound(mu, args.a, args.q)
    if not bound.satisfied:
        return bound, [f"ratio {bound.ratio} exceeds {bound.bound}"]
    return bound, []


def _sweep(summary: SweepSummary) -> Outcome:
    return summary, list(summary.failures)


def _charsum(args: argparse.Namespace, s: Settings) -> Outcome:
    config = s.config
    if args.action == "wsum":
        if args.sweep:
            return _sweep(
                w_sum_sweep(
                    args.primes, args.max_a1, args.max_a2, config.threads, config
                )
            )
        chi1 = character_from_index(args.q1, args.i1, config)
        chi2 = character_from_index(args.q2, args.i2, config)
        result = w_sum(chi1, chi2, args.b1, args.b2, args.t)
        if result.bound_satisfied is False:
            return result, ["|W| exceeds its bound"]
        return result, []
    if args.action == "weil":
        if args.sweep:
            return _sweep(
                weil_sweep(args.primes, args.max_degree, config.threads, config)
            )
        chi = character_from_index(args.p, args.index, config)
        check = weil_sum_check(args.p, args.poly, chi, config)
        return check, [] if check.satisfied is not False else ["Weil bound violated"]
    if args.action == "hensel":
        modulus = args.p ** (2 * args.alpha + int(args.odd))
        chi = character_from_index(modulus, args.index, config)
        check = hensel_reduction_check(
            args.p, args.alpha, args.poly, args.g_poly, chi, args.a
        )
        return check, [] if check.match else ["reduced sum does not match the full sum"]
    if args.action == "squares":
        if args.sweep:
            return _sweep(square_root_sweep(args.primes, args.max_power, config))
        result = count_square_roots(args.a, args.p, args.k, config)
        if not result.satisfied:
            return result, [f"{result.count} roots exceed {result.bound}"]
        return result, []
    if args.sweep:
        return _sweep(fraction_pair_sweep(args.primes, args.max_a2 or 3, config))
    result = fraction_pair_count(
        args.p, args.a1, args.a2, args.t, args.units_only, config
    )
    if not result.satisfied:
        return result, [f"{result.count} pairs exceed {result.bound}"]
    return result, []


def _approximant(args: argparse.Namespace, s: Settings) -> Outcome:
    config = s.config
    if args.action == "lambda-q":
        if s.zeros is None:
            value_real = lambda_Q(args.n, s.Q)
            return (
                ApproximantValue(
                    name="lambda-q", n=args.n, Q=s.Q, value_real=value_real
                ),
                [],
            )
        value = lambda_Q_sigma0(args.n, s.Q, s.zero_set(), config)
        return (
            ApproximantValue(
                name="lambda-q-sigma0",
                n=args.n,
                Q=s.Q,
                value_real=value.real,
                value_imag=value.imag,
            ),
            [],
        )
    if args.action == "f-chi-q":
        chi = character_from_index(args.modulus, args.index, config)
        value = F_chi_Q(args.n, chi, s.Q, config)
        return (
            ApproximantValue(
                name="f-chi-q",
                n=args.n,
                Q=s.Q,
                modulus=args.modulus,
                char_index=args.index,
                value_real=value.real,
                value_imag=value.imag,
            ),
            [],
        )
    plan = DeviationPlan(
        farey_limit=args.farey_limit or config.farey_limit,
        grid_size=config.grid_size if args.grid_size is None else args.grid_size,
    )
    restricted = None
    if args.restricted:
        restricted = DigitSystem.for_target(args.M - 1, s.g, s.b)
    result = deviation_scan(
        args.M,
        s.Q,
        s.zero_set(),
        plan,
        restricted,
        threads=config.threads,
        config=config,
    )
    return result, []


def _verify(args: argparse.Namespace, s: Settings) -> Outcome:
    toolkit = DigitGoldbachToolkit(s.config)
    if args.range:
        start, stop, step = args.range
        summary = toolkit.verify_range(
            range(start, stop, step), s.g, s.b, mode=args.mode, timings=s.timings
        )
        failures = list(summary.errors)
        failures.extend(
            f"lhs_weighted <= 0 for N={r.N}"
            for r in summary.reports
            if r.lhs_weighted <= 0
        )
        return summary, failures
    report = toolkit.verify(
        s.require_N(), s.g, s.b, mode=args.mode, timings=s.timings
    )
    if report.lhs_weighted <= 0:
        return report, [f"lhs_weighted <= 0 for N={report.N}"]
    return report, []


def _experiment(args: argparse.Namespace, s: Settings) -> Outcome:
    params: dict[str, Any] = {"g": s.g, "b": s.b}
    if s.N is not None:
        params["N"] = s.N
    for item in args.param:
        key, sep, value = item.partition("=")
        if not sep:
            raise DigitGoldbachArgumentError(
                f"expected key=value, got {item!r}", field="param"
            )
        params[key.strip()] = value.strip()
    experiment = DigitGoldbachToolkit(s.config).get_experiment(args.name)
    rows = experiment.run(
        ExperimentConfig(
            name=args.name,
            params=params,
            seed=s.config.seed,
            threads=s.config.threads,
            output=s.out,
        )
    )
    return rows, experiment.check(rows)


# -----------------------------------------------------------------------------
# Entry point
# -----------------------------------------------------------------------------


def _exclude(payload: Payload, timings: bool) -> Exclude:
    if timings:
        return set()
    if isinstance(payload, VerificationReport):
        return {"runtime"}
    if hasattr(payload, "reports"):
        return {"reports": {"__all__": {"runtime"}}}
    return set()


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run the command line and return the exit status.

    Args:
        argv: Arguments (defaults to sys.argv[1:]).

    Returns:
        0 on success, 1 on argument errors, 2 on resource caps and 3 on a
        failed acceptance check.
    """
    args = build_parser().parse_args(argv)
    setup_logging(getattr(logging, str(args.log_level).upper(), logging.WARNING))
    try:
        settings = resolve_settings(args)
        payload, failures = args.handler(args, settings)
        text = write_report(
            payload,
            settings.out,
            format=settings.config.output_format,
            exclude=_exclude(payload, settings.timings),
        )
        if settings.out is None:
            sys.stdout.write(text)
        if settings.check and failures:
            raise DigitGoldbachAcceptanceError("; ".join(failures))
    except ValueError as e:
        # pydantic ValidationError is a ValueError
        logger.error("Invalid input: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARGUMENT
    except DigitGoldbachError as e:
        logger.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
