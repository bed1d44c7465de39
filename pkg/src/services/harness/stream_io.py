"""
Stream I/O
CSV stream files: `x1,...,xd,y` for CMF streams and `x1,...,xd,a,y,pi1`
for CATE streams. The header is mandatory.
"""

import csv
import logging
import math
from typing import IO, Iterable, Iterator, List, Optional, Tuple

from pydantic import ValidationError

from src.models.observation import Observation, ObservationCate, ObservationCmf, StreamKind
from src.utils.errors import GaaviError, ParseError

logger = logging.getLogger(__name__)

_CATE_TAIL = ["a", "y", "pi1"]
_CMF_TAIL = ["y"]


def stream_header(kind: StreamKind, dimension: int) -> List[str]:
    features = [f"x{j}" for j in range(1, dimension + 1)]
    return features + (_CATE_TAIL if kind == StreamKind.CATE else _CMF_TAIL)


def parse_header(header: List[str]) -> Tuple[StreamKind, int]:
    """Infer stream kind and dimension; ParseError at line 1 when malformed"""
    names = [h.strip() for h in header]
    if names[-3:] == _CATE_TAIL:
        kind, dimension = StreamKind.CATE, len(names) - 3
    elif names[-1:] == _CMF_TAIL:
        kind, dimension = StreamKind.CMF, len(names) - 1
    else:
        raise ParseError(1, "header must end with 'y' or 'a,y,pi1'")
    if dimension < 1 or names != stream_header(kind, dimension):
        raise ParseError(1, f"expected header {','.join(stream_header(kind, max(dimension, 1)))}")
    return kind, dimension


def _parse_float(text: str, line: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(line, f"column {column}: not a number: {text!r}")
    if not math.isfinite(value):
        raise ParseError(line, f"column {column}: value must be finite")
    return value


def parse_row(row: List[str], kind: StreamKind, dimension: int, line: int) -> Observation:
    expected = len(stream_header(kind, dimension))
    if len(row) != expected:
        raise ParseError(line, f"expected {expected} fields, got {len(row)}")
    x = tuple(_parse_float(row[j], line, f"x{j + 1}") for j in range(dimension))
    try:
        if kind == StreamKind.CMF:
            return ObservationCmf(x=x, y=_parse_float(row[dimension], line, "y"))
        a_text = row[dimension].strip()
        if a_text not in ("0", "1"):
            raise ParseError(line, f"column a: treatment must be 0 or 1, got {a_text!r}")
        return ObservationCate(
            x=x,
            a=int(a_text),
            y=_parse_float(row[dimension + 1], line, "y"),
            pi1=_parse_float(row[dimension + 2], line, "pi1"),
        )
    except ParseError:
        raise
    except (GaaviError, ValidationError) as e:
        raise ParseError(line, str(e))


class StreamReader:
    """
    Lazily parses a stream file.

    Kind and dimension are known as soon as the reader is constructed, so a
    test can be built before the first row is consumed.
    """

    def __init__(self, handle: IO[str]):
        self._reader = csv.reader(handle)
        try:
            header = next(self._reader)
        except StopIteration:
            raise ParseError(1, "empty input, header required")
        self.kind, self.dimension = parse_header(header)

    def __iter__(self) -> Iterator[Observation]:
        # header is line 1
        for line, row in enumerate(self._reader, start=2):
            if not row:
                continue
            yield parse_row(row, self.kind, self.dimension, line)


def _format_value(value: float) -> str:
    # repr is the shortest text that parses back to the same double
    return repr(float(value))


def observation_row(obs: Observation) -> List[str]:
    row = [_format_value(v) for v in obs.x]
    if isinstance(obs, ObservationCate):
        return row + [str(obs.a), _format_value(obs.y), _format_value(obs.pi1)]
    return row + [_format_value(obs.y)]


def write_stream(
    handle: IO[str],
    observations: Iterable[Observation],
    kind: Optional[StreamKind] = None,
    dimension: int = 1,
) -> int:
    """
    Write observations with a header; returns the number of rows written

    The header comes from the first observation, or from `kind` and
    `dimension` when the iterable is empty.
    """
    writer = csv.writer(handle, lineterminator="\n")
    count = 0
    for obs in observations:
        if count == 0:
            writer.writerow(stream_header(obs.kind, obs.dimension))
        writer.writerow(observation_row(obs))
        count += 1
    if count == 0 and kind is not None:
        writer.writerow(stream_header(kind, dimension))
    logger.debug(f"Wrote {count} observations")
    return count
