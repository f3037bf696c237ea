"""
Solar irradiance forecaster - Main Entry Point
"""

import sys
from pathlib import Path
from typing import Optional, Sequence

# Add the project directory to Python path
sys.path.insert(0, str(Path(__file__).parent))

from config.logging import new_run_id, setup_logging
from core.exceptions import (
    CheckpointError,
    ConfigurationError,
    DataIOError,
    DatasetError,
    InvalidArgumentError,
    TrainingError,
)
from core.utils import safe_json_dumps
from cli import RunConfig, parse_args, run_command

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_DIVERGED = 4


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit status"""
    try:
        command, config_file, log_level, flags = parse_args(argv)
    except SystemExit as e:
        # argparse usage errors
        return EXIT_CONFIG if e.code else EXIT_OK

    logger = setup_logging(level=log_level, run_id=new_run_id(command))
    try:
        if config_file:
            config = RunConfig.from_file(config_file, flags)
        else:
            config = RunConfig.from_sources(flag_values=flags)
        summary = run_command(command, config)
    except (ConfigurationError, InvalidArgumentError) as e:
        logger.error(f"Configuration error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataIOError, DatasetError, CheckpointError) as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    except TrainingError as e:
        logger.error(f"Numeric failure: {e}")
        return EXIT_DIVERGED
    except KeyboardInterrupt:
        logger.info("Interrupted")
        return EXIT_UNEXPECTED
    except Exception as e:
        logger.error(f"Unexpected error in {command}: {e}")
        import traceback
        traceback.print_exc()
        return EXIT_UNEXPECTED

    print(safe_json_dumps(summary, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
