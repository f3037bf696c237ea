"""
Tests for settings and logging setup
"""

import io
import logging

import pytest

from config import settings
from config.logging import (
    EXPORT_LOGGERS,
    RunContextFilter,
    TrainingProgress,
    new_run_id,
    setup_logging,
)


@pytest.fixture
def restore_root():
    """Undo setup_logging's changes to the root logger"""
    root = logging.getLogger()
    level, handlers = root.level, list(root.handlers)
    yield root
    for handler in list(root.handlers):
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    root.setLevel(level)


class _ListHandler(logging.Handler):
    def __init__(self):
        super().__init__()
        self.records = []

    def emit(self, record):
        self.records.append(record)


class TestRunId:
    """Run ids on log records"""

    def test_format(self):
        run_id = new_run_id("train")
        prefix, suffix = run_id.split("-")
        assert prefix == "train"
        assert len(suffix) == 8
        int(suffix, 16)

    def test_unique(self):
        assert new_run_id("eval") != new_run_id("eval")

    def test_filter_stamps_records(self):
        record = logging.LogRecord("x", logging.INFO, __file__, 1, "hello", None, None)
        assert RunContextFilter("forecast-0000abcd").filter(record)
        assert record.run_id == "forecast-0000abcd"

    def test_filter_keeps_existing_id(self):
        record = logging.LogRecord("x", logging.INFO, __file__, 1, "hello", None, None)
        record.run_id = "synth-11111111"
        RunContextFilter("train-22222222").filter(record)
        assert record.run_id == "synth-11111111"

    def test_setup_logging_writes_run_id(self, restore_root, temp_dir):
        log_file = temp_dir / "logs" / "run.log"
        setup_logging(level="INFO", log_file=str(log_file), run_id="train-deadbeef")
        logging.getLogger("solar.test").info("epoch line")
        for handler in restore_root.handlers:
            handler.flush()
        text = log_file.read_text(encoding="utf-8")
        assert "train-deadbeef" in text
        assert "epoch line" in text

    def test_repeated_setup_does_not_duplicate(self, restore_root):
        before = len(restore_root.handlers)
        setup_logging(level="INFO")
        setup_logging(level="INFO")
        assert len(restore_root.handlers) == before + 1

    def test_foreign_handlers_survive(self, restore_root):
        foreign = _ListHandler()
        restore_root.addHandler(foreign)
        setup_logging(level="INFO")
        assert foreign in restore_root.handlers

    def test_export_loggers_quieted(self, restore_root):
        setup_logging(level="DEBUG")
        for name in EXPORT_LOGGERS:
            assert logging.getLogger(name).level >= logging.WARNING


class TestTrainingProgress:
    """Per-epoch progress lines"""

    def make(self, every):
        logger = logging.getLogger("solar.test.progress")
        logger.setLevel(logging.DEBUG)
        logger.propagate = False
        sink = _ListHandler()
        logger.handlers = [sink]
        return TrainingProgress(logger, "lstm/mle-g", every=every), sink

    def test_label_prefix(self):
        progress, sink = self.make(every=1)
        progress.info("Training on 10 windows")
        assert sink.records[0].getMessage() == "[lstm/mle-g] Training on 10 windows"

    def test_epoch_levels(self):
        progress, _ = self.make(every=5)
        assert progress.epoch_level(1) == logging.INFO
        assert progress.epoch_level(2) == logging.DEBUG
        assert progress.epoch_level(5) == logging.INFO
        assert progress.epoch_level(7) == logging.DEBUG
        assert progress.epoch_level(10) == logging.INFO

    def test_every_epoch_by_default(self):
        progress, _ = self.make(every=1)
        assert all(progress.epoch_level(e) == logging.INFO for e in range(1, 20))

    def test_non_positive_every(self):
        progress, _ = self.make(every=0)
        assert progress.every == 1

    def test_epoch_message(self):
        progress, sink = self.make(every=3)
        progress.epoch(3, "train_loss=0.1, val_loss=0.2")
        progress.epoch(4, "train_loss=0.1, val_loss=0.2")
        assert [r.levelno for r in sink.records] == [logging.INFO, logging.DEBUG]
        assert sink.records[0].getMessage() == "[lstm/mle-g] epoch 3: train_loss=0.1, val_loss=0.2"


class TestConfigSummary:
    def test_logging_keys(self):
        summary = settings.get_config_summary()
        assert summary["log_level"] == settings.LOG_LEVEL
        assert summary["log_epoch_every"] == settings.LOG_EPOCH_EVERY
