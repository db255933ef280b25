"""
Digit-Goldbach Utilities.

This module provides helpers shared by the toolkit: logging setup, ordered
parallel mapping, chunking and JSON/CSV report serialization.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Literal, TypeVar

from pydantic import BaseModel


logger = logging.getLogger("digitgoldbach")

T = TypeVar("T")
R = TypeVar("R")

Exclude = set[str] | dict[str, Any]


def chunk_list(items: Sequence[T], chunk_size: int) -> Iterator[list[T]]:
    """
    Split a sequence into chunks of the specified size.

    Args:
        items: The sequence to split.
        chunk_size: Maximum size of each chunk.

    Yields:
        Lists of at most chunk_size items.

    Example:
        >>> list(chunk_list([1, 2, 3, 4, 5], 2))
        [[1, 2], [3, 4], [5]]
    """
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be positive: {chunk_size}")
    for i in range(0, len(items), chunk_size):
        yield list(items[i : i + chunk_size])


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """
    Apply a function to every item, optionally on a thread pool.

    Results are returned in input order whatever the thread count, so any
    reduction over them is deterministic.

    Args:
        fn: The function to apply.
        items: The inputs.
        threads: Number of worker threads; 1 runs inline.

    Returns:
        The list of results in input order.
    """
    work = list(items)
    if threads <= 1 or len(work) <= 1:
        return [fn(item) for item in work]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, work))


def flatten_record(record: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    """
    Flatten nested dictionaries into dotted keys for CSV output.

    Lists of scalars are joined with ``;``; lists of mappings are kept as
    JSON text.

    Args:
        record: A JSON-compatible mapping.
        prefix: Key prefix used during recursion.

    Returns:
        A flat mapping.

    Example:
        >>> flatten_record({"a": 1, "b": {"c": 2}, "d": [1, 2]})
        {'a': 1, 'b.c': 2, 'd': '1;2'}
    """
    flat: dict[str, Any] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten_record(value, prefix=f"{name}."))
        elif isinstance(value, list):
            if all(not isinstance(v, (dict, list)) for v in value):
                flat[name] = ";".join(str(v) for v in value)
            else:
                flat[name] = json.dumps(value, sort_keys=True)
        else:
            flat[name] = value
    return flat


def _as_records(
    payload: BaseModel | Sequence[BaseModel], exclude: Exclude
) -> list[dict[str, Any]]:
    """Dump one model or a sequence of models to JSON-compatible dicts."""
    models = [payload] if isinstance(payload, BaseModel) else list(payload)
    return [m.model_dump(mode="json", exclude=exclude) for m in models]


def render_report(
    payload: BaseModel | Sequence[BaseModel],
    format: Literal["json", "csv"] = "json",
    exclude: Exclude | None = None,
) -> str:
    """
    Serialize reports deterministically.

    JSON output is indented with sorted keys; CSV output flattens each
    record and writes a header row built from the union of keys in first
    appearance order.

    Args:
        payload: A model or a sequence of models.
        format: "json" or "csv".
        exclude: Field names to leave out (e.g. "runtime"), or a pydantic
            nested exclude mapping.

    Returns:
        The serialized text.
    """
    records = _as_records(payload, exclude or set())
    if format == "json":
        body: Any = records[0] if isinstance(payload, BaseModel) else records
        return json.dumps(body, indent=2, sort_keys=True) + "\n"

    rows = [flatten_record(r) for r in records]
    header: list[str] = []
    for row in rows:
        header.extend(k for k in row if k not in header)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def write_report(
    payload: BaseModel | Sequence[BaseModel],
    path: str | Path | None,
    format: Literal["json", "csv"] = "json",
    exclude: Exclude | None = None,
) -> str:
    """
    Serialize reports and write them to a file (or return them only).

    Args:
        payload: A model or a sequence of models.
        path: Output path; None skips writing.
        format: "json" or "csv".
        exclude: Field names to leave out.

    Returns:
        The serialized text.
    """
    text = render_report(payload, format=format, exclude=exclude)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info("Wrote %s report to %s", format, path)
    return text


def iter_data_lines(text: str) -> Iterator[tuple[int, str]]:
    """
    Iterate over non-blank, non-comment lines with 1-based line numbers.

    Args:
        text: Raw file contents.

    Yields:
        (line number, line) pairs; lines starting with ``#`` are skipped.
    """
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield number, line


def iter_csv_rows(text: str) -> Iterator[tuple[int, list[str]]]:
    """
    Iterate over CSV rows of line-oriented text with 1-based line numbers.

    Each data line from iter_data_lines goes through ``csv.reader``, so quoted
    cells are unquoted; cells are stripped of surrounding whitespace.

    Args:
        text: Raw file contents.

    Yields:
        (line number, cells) pairs.
    """
    for number, line in iter_data_lines(text):
        cells = next(csv.reader([line], skipinitialspace=True), [])
        yield number, [cell.strip() for cell in cells]


def setup_logging(
    level: int = logging.DEBUG,
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
) -> None:
    """
    Configure logging for the toolkit.

    Args:
        level: The logging level (default: DEBUG).
        format: The log message format string.

    Example:
        >>> import logging
        >>> setup_logging(logging.INFO)
    """
    logging.basicConfig(level=level, format=format)
    logging.getLogger("digitgoldbach").setLevel(level)
