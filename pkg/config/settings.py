"""
Global settings and configuration management
"""

import os
from pathlib import Path

# Try to load from .env file if python-dotenv is available
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass


def _float_list(raw: str):
    return tuple(float(v) for v in raw.split(",") if v.strip())


# Base paths
BASE_DIR = Path(__file__).parent.parent
OUTPUT_DIR = os.getenv("SOLAR_OUTPUT_DIR", str(Path.cwd() / "runs"))

# Synthetic data settings
DEFAULT_LATITUDE = float(os.getenv("DEFAULT_LATITUDE", "60.0"))
DEFAULT_START_YEAR = int(os.getenv("DEFAULT_START_YEAR", "2016"))
DEFAULT_YEAR_COUNT = int(os.getenv("DEFAULT_YEAR_COUNT", "5"))
DEFAULT_CLOUD_AUTOCORRELATION = float(os.getenv("DEFAULT_CLOUD_AUTOCORRELATION", "0.7"))
DEFAULT_CLOUD_FLOOR = float(os.getenv("DEFAULT_CLOUD_FLOOR", "0.1"))

# Preprocessing
SCALER_OFFSET = float(os.getenv("SCALER_OFFSET", "1e-6"))

# Model settings (defaults follow the tuned LSTM: 3 days in, 36 h out)
DEFAULT_WINDOW = int(os.getenv("DEFAULT_WINDOW", "72"))
DEFAULT_HORIZON = int(os.getenv("DEFAULT_HORIZON", "36"))
DEFAULT_LAYERS = int(os.getenv("DEFAULT_LAYERS", "2"))
DEFAULT_HIDDEN = int(os.getenv("DEFAULT_HIDDEN", "128"))
DEFAULT_LEARNING_RATE = float(os.getenv("DEFAULT_LEARNING_RATE", "1e-5"))
DEFAULT_BATCH_SIZE = int(os.getenv("DEFAULT_BATCH_SIZE", "64"))
DEFAULT_QUANTILES = _float_list(os.getenv("DEFAULT_QUANTILES", "0.05,0.25,0.5,0.75,0.95"))
MLP_HIDDEN = int(os.getenv("MLP_HIDDEN", "64"))

# Training settings
MAX_EPOCHS = int(os.getenv("MAX_EPOCHS", "200"))
PATIENCE = int(os.getenv("PATIENCE", "20"))
GRAD_CLIP_NORM = float(os.getenv("GRAD_CLIP_NORM", "5.0"))
ACE_GUARD_FACTOR = float(os.getenv("ACE_GUARD_FACTOR", "1.2"))
ACE_GUARD_PATIENCE = int(os.getenv("ACE_GUARD_PATIENCE", "2"))
EVAL_BATCH_SIZE = int(os.getenv("EVAL_BATCH_SIZE", "512"))

# Loss settings
NLL_PENALTY = float(os.getenv("NLL_PENALTY", "1e4"))

# Evaluation settings
DEFAULT_COVERAGES = _float_list(os.getenv("DEFAULT_COVERAGES", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"))
RELIABILITY_LEVELS = _float_list(
    os.getenv("RELIABILITY_LEVELS", "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5,"
                                    "0.55,0.6,0.65,0.7,0.75,0.8,0.85,0.9,0.95")
)

# Checkpoint format
CHECKPOINT_VERSION = int(os.getenv("CHECKPOINT_VERSION", "1"))

# Logging settings
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FORMAT = os.getenv("LOG_FORMAT", "%(asctime)s - %(run_id)s - %(name)s - %(levelname)s - %(message)s")
LOG_FILE = os.getenv("LOG_FILE", None)
LOG_EPOCH_EVERY = int(os.getenv("LOG_EPOCH_EVERY", "1"))

# Development settings
DEBUG = os.getenv("DEBUG", "false").lower() in ("true", "1", "yes", "on")


def get_config_summary() -> dict:
    """Get a summary of current configuration"""
    return {
        "output_dir": OUTPUT_DIR,
        "default_latitude": DEFAULT_LATITUDE,
        "default_start_year": DEFAULT_START_YEAR,
        "scaler_offset": SCALER_OFFSET,
        "window": DEFAULT_WINDOW,
        "horizon": DEFAULT_HORIZON,
        "layers": DEFAULT_LAYERS,
        "hidden": DEFAULT_HIDDEN,
        "learning_rate": DEFAULT_LEARNING_RATE,
        "batch_size": DEFAULT_BATCH_SIZE,
        "quantiles": list(DEFAULT_QUANTILES),
        "max_epochs": MAX_EPOCHS,
        "patience": PATIENCE,
        "grad_clip_norm": GRAD_CLIP_NORM,
        "nll_penalty": NLL_PENALTY,
        "coverages": list(DEFAULT_COVERAGES),
        "checkpoint_version": CHECKPOINT_VERSION,
        "log_level": LOG_LEVEL,
        "log_epoch_every": LOG_EPOCH_EVERY,
        "debug": DEBUG,
    }
