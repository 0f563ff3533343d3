"""Command-line entry point: one subcommand per pipeline.

Exit codes: 0 success, 2 bad configuration or parameters, 3 degenerate
operator, 4 optimizer did not converge, 5 I/O failure, 1 anything else.
"""
import argparse
import json
import logging
import sys

from syk_nmr_sim.config import COMMAND_DEFAULTS, ENGINES, load_run_config
from syk_nmr_sim.tools import RUNNERS
from syk_nmr_sim.utils import ConfigError, SykSimError, err_with_hint

logger = logging.getLogger("syk_nmr_sim")

EXIT_IO = 5


def _parse_set(items: list[str]) -> dict:
    """key=value pairs into a nested params dict; values are JSON when they parse."""
    params: dict = {}
    for item in items:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            raise ConfigError(err_with_hint(f"Bad --set '{item}'.", "Use key=value, e.g. --set samples=4."))
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        *parents, leaf = key.split(".")
        node = params
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = value
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syk-sim", description="SYK model simulation and NMR control toolkit.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeat for debug)")
    parser.add_argument("--quiet", action="store_true", help="only log errors")
    commands = parser.add_subparsers(dest="command", required=True)
    for command in COMMAND_DEFAULTS:
        sub = commands.add_parser(command, help=f"run the {command} pipeline")
        sub.add_argument("--config", help="JSON config file, or a run manifest to re-run")
        sub.add_argument("--seed", type=int, help="master seed")
        sub.add_argument("--out", help="root directory for run outputs")
        sub.add_argument("--threads", type=int, help="worker threads")
        sub.add_argument("--engine", choices=ENGINES, help="evolution engine")
        sub.add_argument("--trotter-steps", type=int, help="fixed Trotter step count")
        sub.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                         help="override a command parameter (dotted keys reach nested values)")
    return parser


def _configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(stream=sys.stderr, level=level, format="%(asctime)s %(name)s %(levelname)s %(message)s")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose, args.quiet)
    try:
        overrides = {
            "master_seed": args.seed,
            "out_dir": args.out,
            "threads": args.threads,
            "engine": args.engine,
            "trotter_steps": args.trotter_steps,
            "params": _parse_set(args.set),
        }
        config = load_run_config(args.command, args.config, overrides)
        outcome = RUNNERS[args.command](config)
    except SykSimError as e:
        logger.error("%s failed: %s", args.command, e)
        return e.exit_code
    except OSError as e:
        logger.error("%s failed: %s", args.command, e)
        return EXIT_IO
    except Exception:
        logger.exception("%s failed", args.command)
        return 1
    print(outcome.summary())
    return 0


if __name__ == "__main__":
    sys.exit(main())
