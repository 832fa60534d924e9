"""Entry point for the pctrain experiment runner."""

import logging
import sys
from collections.abc import Sequence

from src.config import settings
from src.errors import ConfigError
from src.runner.cli import spec_from_args
from src.runner.experiment import EXIT_CONFIG_ERROR, EXIT_IO_ERROR, run

logger = logging.getLogger(__name__)


def configure_logging() -> None:
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.INFO),
        format="%(asctime)s | %(levelname)-8s | %(name)s | %(message)s",
        stream=sys.stdout,
    )


def main(argv: Sequence[str] | None = None) -> int:
    """Parse the command line, run the experiment and return the exit status."""
    configure_logging()
    try:
        spec = spec_from_args(argv)
    except ConfigError as exc:
        logger.error("Configuration error: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except OSError as exc:
        logger.error("Cannot read configuration: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO_ERROR

    logger.info("Starting %s run into %s", spec.mode, spec.output_dir)
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
