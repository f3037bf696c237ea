"""
Custom exceptions for the solar irradiance forecaster
"""

from typing import Any, Optional


class ForecastError(Exception):
    """Base exception for forecaster errors"""
    pass


class InvalidArgumentError(ForecastError, ValueError):
    """Exception for invalid arguments (shapes, lengths, periods, years)"""
    pass


class InvalidParameterError(InvalidArgumentError):
    """Exception for invalid distribution parameters"""
    pass


class DatasetError(ForecastError):
    """Exception for malformed datasets"""
    pass


class ScalerFitError(DatasetError):
    """Exception when a scaler cannot be fitted on a channel"""

    def __init__(self, channel: str, message: Optional[str] = None):
        self.channel = channel
        super().__init__(message or f"Cannot fit scaler: channel '{channel}' has fewer than 2 distinct values")


class ConfigurationError(ForecastError):
    """Exception for conflicting or invalid configuration"""
    pass


class ModelStateError(ForecastError):
    """Exception for operations called in the wrong model state"""
    pass


class TrainingError(ForecastError):
    """Exception for training failures"""

    def __init__(self, message: str, block: Optional[str] = None):
        self.block = block
        super().__init__(message)


class DivergenceError(TrainingError):
    """Exception when the training loss becomes non-finite"""

    def __init__(self, message: str, result: Any = None):
        self.result = result
        super().__init__(message)


class CheckpointError(ForecastError):
    """Exception for checkpoint errors"""
    pass


class CheckpointVersionError(CheckpointError):
    """Exception for unsupported checkpoint versions"""
    pass


class CheckpointCorruptionError(CheckpointError):
    """Exception for truncated or malformed checkpoint files"""
    pass


class DataIOError(ForecastError):
    """Exception for file read/write failures"""

    def __init__(self, path: Any, message: str):
        self.path = str(path)
        super().__init__(f"{self.path}: {message}")
