import argparse
import configparser
import logging
import os
import sys
from typing import List, Optional

from sg_workbench.commands import COMMANDS
from sg_workbench.data_collection.loader import Loader
from sg_workbench.data_objects import Limits, RunConfig
from sg_workbench.data_storage.writer import Writer
from sg_workbench.errors import InputError, InvariantBreach, WorkbenchError
from sg_workbench.version import version

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INVARIANT_BREACH = 3

DEFAULT_CONFIG_PATH = "workbench.ini"
OUTPUT_DIR_VARIABLE = "SG_WORKBENCH_OUTPUT_DIR"


def default_config() -> configparser.ConfigParser:
    """Built-in settings, overridden by the config file."""
    config = configparser.ConfigParser()
    config.read_dict({
        "DEFAULT": {"DATA_SOURCE": "Corpus", "WRITER_ENGINE": "LogOutput"},
        "JSONFile": {},
        "Corpus": {"NAME": "truncated_polynomial:2"},
        "JSONOutput": {"OUTPUT_DIR": os.environ.get(OUTPUT_DIR_VARIABLE, "reports")},
        "LogOutput": {},
    })
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Singularity-category workbench for finite-dimensional algebras.",
        prog="sg_workbench"
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="analysis to run")
    parser.add_argument("-c", "--config-path", type=str,
                        help=f"config file path (default: {DEFAULT_CONFIG_PATH})")
    parser.add_argument("-o", "--override-config", nargs=3, metavar=("SECTION", "OPTION", "VALUE"),
                        action="append", help="override any config value")
    parser.add_argument("-V", "--version", action="version",
                        version=f"{parser.prog} {version}")
    parser.add_argument("-v", "--verbose", action="store_true", help="show debug logs")
    parser.add_argument("--input", type=str, help="JSON algebra document or report (JSONFile source)")
    parser.add_argument("--corpus", type=str, help="corpus algebra name (Corpus source)")
    parser.add_argument("--output", type=str, help="write JSON reports to this directory")
    parser.add_argument("--module", type=str, default="top",
                        help="top, regular, simple:<v>, projective:<v> or a declared module")
    parser.add_argument("--d", dest="period", type=int, default=1, help="period d")
    parser.add_argument("--n", dest="multiple", type=int, default=1, help="transport certificates to period n·d")
    parser.add_argument("--dmax", type=int, default=4, help="search depth of the probes")
    parser.add_argument("--range", dest="shift_range", type=int, help="shift range N")
    parser.add_argument("--degrees", type=int, nargs=2, metavar=("LO", "HI"), help="cohomology degrees")
    parser.add_argument("--cutoff", dest="syzygy_cutoff", type=int, help="syzygy cutoff K")
    parser.add_argument("--length", dest="length_bound", type=int, help="Leavitt word length bound")
    parser.add_argument("--m-bound", dest="m_bound", type=int, help="boundary length bound")
    parser.add_argument("--seed", type=int, help="seed of the randomized fallbacks")
    return parser


def read_config(args: argparse.Namespace) -> configparser.ConfigParser:
    config = default_config()
    if args.config_path:
        if not config.read(args.config_path, encoding="utf-8"):
            raise InputError(f"Error reading config file {args.config_path}")
    else:
        config.read(DEFAULT_CONFIG_PATH, encoding="utf-8")

    for section_to_override, option_to_override, value_to_override in args.override_config or ():
        if section_to_override != "DEFAULT" and section_to_override not in config:
            raise InputError(f"Unknown config section {section_to_override}")
        config[section_to_override][option_to_override] = value_to_override

    if args.input:
        config["DEFAULT"]["DATA_SOURCE"] = "JSONFile"
        config["JSONFile"]["FILE_PATH"] = args.input
    elif args.corpus:
        config["DEFAULT"]["DATA_SOURCE"] = "Corpus"
        config["Corpus"]["NAME"] = args.corpus
    if args.output:
        config["DEFAULT"]["WRITER_ENGINE"] = "JSONOutput"
        config["JSONOutput"]["OUTPUT_DIR"] = args.output
    return config


def run_config(args: argparse.Namespace, config: configparser.ConfigParser) -> RunConfig:
    limits = Limits.from_config(config["DEFAULT"]).replace(
        shift_range=args.shift_range, syzygy_cutoff=args.syzygy_cutoff, length_bound=args.length_bound,
        m_bound=args.m_bound, seed=args.seed)
    return RunConfig(
        command=args.command,
        data_source=config["DEFAULT"]["DATA_SOURCE"],
        writer_engine=config["DEFAULT"]["WRITER_ENGINE"],
        module=args.module,
        period=args.period,
        multiple=args.multiple,
        dmax=args.dmax,
        degrees=tuple(args.degrees) if args.degrees else None,
        limits=limits,
    ).validate()


def main(argv: Optional[List[str]] = None) -> None:
    args = build_parser().parse_args(argv)

    # Initialize logger
    logging_level = logging.DEBUG if args.verbose else logging.INFO
    logging.basicConfig(
        level=logging_level,
        datefmt="%Y-%m-%d %H:%M:%S",
        format="%(asctime)s %(levelname)s %(module)s.%(funcName)s: %(message)s"
    )

    # Initialize config settings
    try:
        config = read_config(args)
        run = run_config(args, config)
    except InputError as err:
        logging.error(f"Configuration failed: {err}")
        sys.exit(EXIT_INPUT_ERROR)

    # Prepare source and storage
    try:
        loader = Loader(run.data_source, config[run.data_source])
    except (ValueError, KeyError) as err:
        logging.error(f"Loader initialization failed: {err}")
        sys.exit(EXIT_INPUT_ERROR)

    try:
        writer = Writer(run.writer_engine, config[run.writer_engine])
    except (ValueError, KeyError) as err:
        logging.error(f"Writer initialization failed: {err}")
        sys.exit(EXIT_INPUT_ERROR)

    # Do stuff
    try:
        workload = loader.load_data()
        report = COMMANDS[run.command](workload, run)
    except InputError as err:
        logging.error(f"Input error: {err}")
        sys.exit(EXIT_INPUT_ERROR)
    except InvariantBreach as err:
        logging.error(f"Internal invariant failed: {err}")
        sys.exit(EXIT_INVARIANT_BREACH)
    except WorkbenchError as err:
        logging.error(f"Search limits exhausted, raise them and retry: {err}")
        sys.exit(EXIT_INPUT_ERROR)
    except (ArithmeticError, IndexError, ValueError) as err:
        logging.error(f"Computation failed: {err}", exc_info=True)
        sys.exit(EXIT_INVARIANT_BREACH)

    try:
        writer.save(report)
    except OSError as err:
        logging.error(f"Saving the report failed: {err}")
        sys.exit(EXIT_INPUT_ERROR)
    if run.command == "verify" and not report["result"]["verified"]:
        sys.exit(EXIT_VERIFICATION_FAILED)


if __name__ == "__main__":
    main()
