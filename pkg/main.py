import argparse
import sys

from rich.console import Console
from rich.table import Table

from src.config.settings import get_settings
from src.core.exceptions import (
    BudgetExceeded,
    CoarseMetricException,
    ConfigError,
    GeneratingSetError,
    GroupAxiomError,
    InsufficientRange,
)
from src.core.logger import LoggerFactory
from src.experiments.config import ExperimentConfig, load_config
from src.experiments.runner import ExperimentRunner, RunResult

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_CONFIG = 3
EXIT_BUDGET = 4

COMMANDS = {
    "growth": "Ball census and growth certificate of a word metric",
    "embed": "Cocycle embedding: identity, norm sandwich, properness",
    "lattice": "Coarse lattice and bounded-geometry census",
    "verify": "Full invariant suite",
    "gl": "GL(n,R) length function suite",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coarse-metrics",
        description="Verify length functions, word metrics and cocycle embeddings on concrete groups."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", help="JSON experiment file")
        sub.add_argument("--out", default="out", help="Output directory (default: out)")
        sub.add_argument("--seed", type=int, help="Override the config seed")
        sub.add_argument("--truncation", type=int, help="Override the cocycle truncation")
        sub.add_argument("--verbose", action="store_true", help="Debug logging")
    return parser


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    """Config file (or defaults) with the subcommand and CLI overrides applied"""
    if args.config:
        config = load_config(args.config)
    else:
        config = ExperimentConfig(experiment=args.command)
    if args.truncation is not None and args.truncation < 1:
        raise ConfigError("--truncation must be at least 1", details={"truncation": args.truncation})
    update = {"experiment": args.command}
    if args.seed is not None:
        update["seed"] = args.seed
    if args.truncation is not None:
        update["truncation"] = args.truncation
    return config.model_copy(update=update)


def render_summary(result: RunResult, console: Console) -> None:
    table = Table(title=f"{result.experiment}: {'PASS' if result.passed else 'FAIL'}")
    table.add_column("Suite")
    table.add_column("Check")
    table.add_column("Result")
    for suite in result.suites:
        for check, ok in suite.checks.items():
            table.add_row(suite.name, check, "[green]pass[/green]" if ok else "[red]FAIL[/red]")
    console.print(table)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    logger = LoggerFactory.create_logger("CLI", level=settings.LOG_LEVEL)
    console = Console(stderr=True)
    if args.verbose:
        LoggerFactory.set_level("DEBUG")

    try:
        config = resolve_config(args)
        result = ExperimentRunner(config, args.out, settings).run()
    except (ConfigError, InsufficientRange) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_CONFIG
    except BudgetExceeded as e:
        logger.error(f"Enumeration budget exceeded: {e}")
        return EXIT_BUDGET
    except (GeneratingSetError, GroupAxiomError) as e:
        logger.error(f"Axiom violation {type(e).__name__}: {e}")
        return EXIT_VIOLATION
    except CoarseMetricException as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_CONFIG

    render_summary(result, console)
    if not result.passed:
        logger.error(f"Violations: {', '.join(result.violations())}")
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
