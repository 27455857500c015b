"""viscwave command-line entry point.

Subcommands:
    simulate    run a configured simulation into an output directory
    dispersion  analytic vs measured linear eigenvalues, CSV on stdout
    apply       apply a Fourier multiplier to both fields of a snapshot
    verify      run the built-in oracle suite

Exit codes: 0 success, 1 failure, 2 configuration error, 3 blow-up.
"""

import argparse
import csv
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from loguru import logger
from pydantic import ValidationError

from spectral import SpectralField, derivative, hilbert, lambda_pow
from viscwave.config import ConfigError, build_initial_state, load_config
from viscwave.dispersion import DISPERSION_COLUMNS, dispersion_rows
from viscwave.models import DEFAULT_SEED, VerifyRequest
from viscwave.output import RunWriter, format_value
from viscwave.params import ModelParams, Variant, WaveState
from viscwave.snapshot import read_snapshot, write_snapshot
from viscwave.timestepper import BlowUpError, Simulation
from viscwave.verifier import OracleVerifier

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_BLOWUP = 3


@dataclass(frozen=True)
class FieldOperator:
    """Operator chosen on the command line, applied field by field."""

    label: str
    apply: Callable[[SpectralField], SpectralField]

    def __call__(self, field: SpectralField) -> SpectralField:
        return self.apply(field)


def parse_operator(text: str) -> FieldOperator:
    """Operator named by `hilbert`, `lambda:S` or `dx:N`."""
    name, _, arg = text.partition(":")
    try:
        if name == "hilbert" and not arg:
            return FieldOperator(text, hilbert)
        if name == "lambda" and arg:
            s = float(arg)
            return FieldOperator(text, lambda f: lambda_pow(f, s))
        if name == "dx" and arg:
            n = int(arg)
            if n < 0:
                raise ValueError(n)
            return FieldOperator(text, lambda f: derivative(f, n))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"invalid operator '{text}': expected hilbert, lambda:S or dx:N")


def run_simulate(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    output_dir = args.output_dir or cfg.output_dir
    try:
        params = cfg.model_params()
        sim_config = cfg.sim_config(params)
    except ValidationError as e:
        raise ConfigError(str(e.errors()[0]["msg"])) from None

    init = build_initial_state(cfg)
    with RunWriter(output_dir, params) as writer:
        simulation = Simulation(params, sim_config, writer)
        try:
            final = simulation.run(init)
        except BlowUpError as e:
            writer.write_summary(
                {**simulation.tracker.calculate_summary(), "blow_up": {"t": e.t, "mode": e.mode, "reason": e.reason}}
            )
            raise
        writer.write_summary(simulation.tracker.calculate_summary())

    logger.info(f"Simulation finished at t={final.t:.6g}; output in {output_dir}")
    return EXIT_OK


def run_dispersion(args: argparse.Namespace) -> int:
    params = ModelParams(delta=args.delta, beta=args.beta, epsilon=0.0, variant=Variant.LINEAR)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(DISPERSION_COLUMNS)
    for row in dispersion_rows(params, args.kmax):
        writer.writerow([row[0], *(format_value(v) for v in row[1:])])
    return EXIT_OK


def run_apply(args: argparse.Namespace) -> int:
    state, params = read_snapshot(args.input)
    operator: FieldOperator = args.op
    result = WaveState(operator(state.f), operator(state.ft), state.t)
    write_snapshot(result, params, args.output)
    logger.info(f"Applied {operator.label} to {args.input} -> {args.output}")
    return EXIT_OK


def run_verify(args: argparse.Namespace) -> int:
    request = VerifyRequest(checks=args.only or "all", seed=args.seed, stop_on_failure=args.stop_on_failure)
    result = OracleVerifier().run(request)

    if args.json:
        print(result.model_dump_json(indent=2))
    else:
        for row in result.detail["per_check"]:
            print(
                f"{row['check_id']:>2}  {row['status'].upper():<4}  {row['name']:<28} "
                f"{row['time_seconds']:>7.2f}s  {row['error_message'] or row['detail']}"
            )
        detail = result.detail
        print(
            f"{detail['checks_passed']}/{detail['checks_attempted']} passed, "
            f"{detail['checks_warned']} warned, {detail['checks_failed']} failed"
        )
    return EXIT_OK if result.passed else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="viscwave", description="Viscous water-wave pseudospectral simulator.")
    parser.add_argument(
        "--log-level",
        default="INFO",
        choices=["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"],
        help="Log level for stderr output",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="Run a simulation from a config file")
    simulate.add_argument("--config", required=True, help="Path to a key = value config file")
    simulate.add_argument("--output-dir", help="Override the config's output_dir")
    simulate.set_defaults(handler=run_simulate)

    dispersion = commands.add_parser("dispersion", help="Analytic vs measured linear eigenvalues")
    dispersion.add_argument("--delta", type=float, required=True, help="Viscous damping")
    dispersion.add_argument("--beta", type=float, required=True, help="Bond number")
    dispersion.add_argument("--kmax", type=int, required=True, help="Largest wavenumber")
    dispersion.set_defaults(handler=run_dispersion)

    apply = commands.add_parser("apply", help="Apply an operator to a snapshot")
    apply.add_argument("--op", required=True, type=parse_operator, help="hilbert, lambda:S or dx:N")
    apply.add_argument("--in", dest="input", required=True, help="Input snapshot")
    apply.add_argument("--out", dest="output", required=True, help="Output snapshot")
    apply.set_defaults(handler=run_apply)

    verify = commands.add_parser("verify", help="Run the built-in oracle suite")
    verify.add_argument("--only", type=int, nargs="+", metavar="ID", help="Run only these check ids")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for random test fields")
    verify.add_argument("--json", action="store_true", help="Print the result as JSON")
    verify.add_argument("--stop-on-failure", action="store_true", help="Stop after the first failing check")
    verify.set_defaults(handler=run_verify)

    return parser


def configure_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level)


def cli_main(argv: Sequence[str] | None = None) -> int:
    """Parse argv, run the subcommand and map failures to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args.log_level)

    try:
        return args.handler(args)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except ValidationError as e:
        logger.error(f"Invalid parameters: {e}")
        return EXIT_CONFIG
    except BlowUpError as e:
        logger.error(f"Blow-up at t={e.t:.6g} (mode={e.mode}, reason={e.reason}): {e}")
        return EXIT_BLOWUP
    except Exception as e:
        logger.error(f"{args.command} failed: {type(e).__name__}: {e}")
        return EXIT_FAILURE


def main():
    sys.exit(cli_main())


if __name__ == '__main__':
    main()
