"""
Utility functions for the solar irradiance forecaster
"""

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Union

import numpy as np

from .exceptions import DataIOError


# ========================================================
# NumPy type conversion
# ========================================================

def convert_numpy_types(obj: Any) -> Any:
    """
    Recursively convert NumPy types to plain Python types

    Args:
        obj: Object to convert

    Returns:
        Object built from Python builtins only
    """
    if isinstance(obj, np.ndarray):
        return [convert_numpy_types(v) for v in obj.tolist()]
    elif isinstance(obj, np.integer):
        return int(obj)
    elif isinstance(obj, np.floating):
        return float(obj)
    elif isinstance(obj, np.bool_):
        return bool(obj)
    elif isinstance(obj, dict):
        return {str(k): convert_numpy_types(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [convert_numpy_types(v) for v in obj]
    elif isinstance(obj, float) and not np.isfinite(obj):
        # JSON has no inf/nan literal
        return None
    return obj


# ========================================================
# JSON serialization
# ========================================================

def safe_json_dumps(obj: Any, **kwargs) -> str:
    """
    Deterministic JSON serialization (NumPy aware)

    Args:
        obj: Object to serialize
        **kwargs: Extra arguments for json.dumps

    Returns:
        JSON string
    """
    kwargs.setdefault('ensure_ascii', False)
    kwargs.setdefault('sort_keys', True)
    return json.dumps(convert_numpy_types(obj), **kwargs)


def safe_json_loads(s: Union[str, bytes], **kwargs) -> Any:
    """JSON deserialization counterpart of safe_json_dumps"""
    if isinstance(s, bytes):
        s = s.decode('utf-8')
    return json.loads(s, **kwargs)


# ========================================================
# Atomic file writes
# ========================================================

def atomic_write_bytes(path: Union[str, Path], data: bytes) -> Path:
    """
    Write bytes to a file atomically (temp file + rename)

    Args:
        path: Destination path
        data: Payload

    Returns:
        Resolved destination path

    Raises:
        DataIOError: on any filesystem failure
    """
    target = Path(path)
    tmp_name = None
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=str(target.parent))
        with os.fdopen(fd, 'wb') as f:
            f.write(data)
        # 原子的リネーム
        Path(tmp_name).replace(target)
        return target
    except OSError as e:
        if tmp_name is not None:
            try:
                Path(tmp_name).unlink()
            except OSError:
                pass
        raise DataIOError(target, f"write failed: {e}")


def atomic_write_text(path: Union[str, Path], text: str) -> Path:
    """Text variant of atomic_write_bytes (UTF-8, LF newlines)"""
    return atomic_write_bytes(path, text.encode('utf-8'))


def read_bytes(path: Union[str, Path]) -> bytes:
    """
    Read a whole file

    Raises:
        DataIOError: when the file is missing or unreadable
    """
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise DataIOError(path, f"read failed: {e}")
