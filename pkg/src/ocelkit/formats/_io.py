from __future__ import annotations

import os
from pathlib import Path


def read_source(source) -> bytes:
    """Bytes of ``source``: raw bytes, a path, or a binary file object."""
    if isinstance(source, (bytes, bytearray, memoryview)):
        return bytes(source)
    if isinstance(source, (str, os.PathLike)):
        return Path(source).read_bytes()
    data = source.read()
    return data.encode("utf-8") if isinstance(data, str) else data


def write_sink(sink, data: bytes) -> None:
    if isinstance(sink, (str, os.PathLike)):
        Path(sink).write_bytes(data)
    else:
        sink.write(data)
