"""Small shared CSV reader: header validation and line-numbered rows."""

from __future__ import annotations

import csv
import io
from typing import Iterator

from .errors import MalformedRowError


def _as_text(source) -> str:
    if isinstance(source, (bytes, bytearray)):
        return bytes(source).decode("utf-8-sig")
    data = source.read()
    if isinstance(data, str):
        return data
    return data.decode("utf-8-sig")


def iter_rows(source, header: tuple[str, ...]) -> Iterator[tuple[int, list[str]]]:
    """Yield (line_number, row) for each data row of a CSV byte stream.

    The first row must equal `header` exactly; every data row must have
    len(header) columns. LF and CRLF line endings are both accepted.
    """
    reader = csv.reader(io.StringIO(_as_text(source)))
    try:
        first = next(reader)
    except StopIteration:
        raise MalformedRowError(1, f"missing header {','.join(header)!r}") from None
    if first != list(header):
        raise MalformedRowError(1, f"expected header {','.join(header)!r}, got {','.join(first)!r}")
    for row in reader:
        if len(row) != len(header):
            raise MalformedRowError(reader.line_num, f"expected {len(header)} columns, got {len(row)}")
        yield reader.line_num, row
