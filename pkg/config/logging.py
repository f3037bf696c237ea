"""
Logging for CLI runs and training progress

Every record carries a run id so the lines of one `synth`/`train`/`eval`/
`forecast` invocation can be picked out of a shared log file.
"""

import logging
import sys
import uuid
from pathlib import Path
from typing import List, Optional

from .settings import DEBUG, LOG_EPOCH_EVERY, LOG_FILE, LOG_FORMAT, LOG_LEVEL

NO_RUN = "-"

# plotly static export chatter
EXPORT_LOGGERS = ("kaleido", "choreographer")

# handlers owned by setup_logging; others (pytest capture) are left alone
_installed: List[logging.Handler] = []

DEBUG_FORMAT = (
    "%(asctime)s - %(run_id)s - %(name)s - %(levelname)s - "
    "%(filename)s:%(lineno)d - %(funcName)s() - %(message)s"
)


class RunContextFilter(logging.Filter):
    """Stamps records with the current run id"""

    def __init__(self, run_id: str = NO_RUN):
        super().__init__()
        self.run_id = run_id

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, "run_id"):
            record.run_id = self.run_id
        return True


def new_run_id(command: str) -> str:
    """Short id for one CLI invocation, e.g. `train-3f9c0a12`"""
    return f"{command}-{uuid.uuid4().hex[:8]}"


def setup_logging(
    level: Optional[str] = None,
    log_file: Optional[str] = None,
    run_id: str = NO_RUN,
) -> logging.Logger:
    """
    Configure the root logger for one run

    Handlers installed by a previous call are replaced, so repeated calls
    (tests call main() many times) do not duplicate lines.

    Args:
        level: Log level name (default: LOG_LEVEL)
        log_file: Extra file destination (default: LOG_FILE)
        run_id: Id stamped on every record

    Returns:
        The root logger
    """
    root = logging.getLogger()
    log_level = logging.DEBUG if DEBUG else getattr(logging, (level or LOG_LEVEL).upper())
    root.setLevel(log_level)
    for handler in _installed:
        root.removeHandler(handler)
        handler.close()
    _installed.clear()

    formatter = logging.Formatter(DEBUG_FORMAT if DEBUG else LOG_FORMAT)
    context = RunContextFilter(run_id)

    # stdout carries the JSON summary
    handlers = [logging.StreamHandler(sys.stderr)]
    file_path = log_file or LOG_FILE
    if file_path:
        try:
            Path(file_path).parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(file_path, encoding="utf-8"))
        except OSError as e:
            root.warning(f"Failed to open log file {file_path}: {e}")

    for handler in handlers:
        handler.setLevel(log_level)
        handler.setFormatter(formatter)
        handler.addFilter(context)
        root.addHandler(handler)
        _installed.append(handler)

    for name in EXPORT_LOGGERS:
        logging.getLogger(name).setLevel(max(log_level, logging.WARNING))
    return root


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


class TrainingProgress(logging.LoggerAdapter):
    """
    Per-epoch progress lines tagged with the model being trained

    Epoch lines are INFO every `every` epochs (and for the first one), DEBUG
    otherwise.
    """

    def __init__(self, logger: logging.Logger, label: str, every: int = LOG_EPOCH_EVERY):
        super().__init__(logger, {"label": label})
        self.every = max(1, int(every))

    def process(self, msg, kwargs):
        return f"[{self.extra['label']}] {msg}", kwargs

    def epoch_level(self, epoch: int) -> int:
        return logging.INFO if epoch == 1 or epoch % self.every == 0 else logging.DEBUG

    def epoch(self, epoch: int, message: str) -> None:
        self.log(self.epoch_level(epoch), f"epoch {epoch}: {message}")
