"""Command line entry point: ccaqed <scenario> --config <file> --out <dir>"""

import argparse
import logging
import sys

import component.parameter as param
import component.scripts as scripts
from component.message import cm
from component.model import read_config
from component.scenario import run_scenario

__all__ = ["build_parser", "main"]

logger = logging.getLogger("component")


def build_parser():

    parser = argparse.ArgumentParser(prog="ccaqed", description=cm.cli.description)
    parser.add_argument("scenario", choices=param.SCENARIOS, help=cm.cli.scenario)
    parser.add_argument("--config", required=True, help=cm.cli.config)
    parser.add_argument("--out", default=None, help=cm.cli.out)
    parser.add_argument("--workers", type=int, default=None, help=cm.cli.workers)
    parser.add_argument("--seed", type=int, default=None, help=cm.cli.seed)
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help=cm.cli.set,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help=cm.cli.verbose)
    parser.add_argument("-q", "--quiet", action="store_true", help=cm.cli.quiet)
    parser.add_argument("--debug", action="store_true", help=cm.cli.debug)

    return parser


def _configure_logging(verbose, quiet):

    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    scripts.PROGRESS["disable"] = quiet


def main(argv=None):
    """parse the arguments, run the scenario and return the exit code"""

    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose, args.quiet)

    @scripts.report_errors(debug=args.debug)
    def execute():
        config = read_config(args.config, args.overrides, args.seed)
        run_scenario(config, args.scenario, args.out, args.workers)

    code = execute()
    if code == param.EXIT_OK:
        logger.info(cm.cli.done.format(args.scenario))

    return code


if __name__ == "__main__":
    sys.exit(main())
