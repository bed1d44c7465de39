"""
Stream Sources
Synthetic, file-backed or bootstrap-resampled observation streams together
with their kind, dimension and (when known) true nuisance functions
"""

from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable, Iterator, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.models.observation import Observation, StreamKind
from src.services.harness.stream_io import StreamReader
from src.services.regression.factory import GroundTruth
from src.services.simulation.dgp import (
    DEFAULT_DIMENSION,
    Dgp2Spec,
    Shape,
    ShapeSpec,
    cate_preset,
    dgp1_stream,
    dgp1_truth,
    dgp2_stream,
    dgp2_truth,
    shape_spec,
)
from src.utils.errors import InvalidInput
from src.utils.seeding import data_rng


class DgpName(str, Enum):
    NULL = "null"
    STEP = "step"
    BUMP = "bump"
    SINE = "sine"
    CATE = "cate"


class SourceSpec(BaseModel):
    """
    A synthetic generator choice. Unset delta/conc take the shape presets;
    the CATE generator defaults to delta = 0 (a null).
    """

    model_config = ConfigDict(frozen=True)

    dgp: DgpName = DgpName.NULL
    delta: Optional[float] = None
    conc: Optional[float] = None
    pi1: float = 0.5
    dimension: int = Field(default=DEFAULT_DIMENSION, ge=1)

    @property
    def kind(self) -> StreamKind:
        return StreamKind.CATE if self.dgp == DgpName.CATE else StreamKind.CMF

    def generator(self) -> Union[ShapeSpec, Dgp2Spec]:
        if self.dgp == DgpName.CATE:
            return cate_preset(self.delta or 0.0, self.pi1, self.dimension)
        return shape_spec(Shape(self.dgp.value), self.delta, self.conc, self.dimension)


@dataclass
class StreamSource:
    kind: StreamKind
    dimension: int
    observations: Iterable[Observation]
    truth: Optional[GroundTruth] = None


def synthetic_source(spec: SourceSpec, seed: int) -> StreamSource:
    """Unbounded synthetic stream drawn from the data stream of `seed`"""
    generator = spec.generator()
    rng = data_rng(seed)
    if isinstance(generator, Dgp2Spec):
        return StreamSource(StreamKind.CATE, spec.dimension, dgp2_stream(generator, rng), dgp2_truth(generator))
    return StreamSource(StreamKind.CMF, spec.dimension, dgp1_stream(generator, rng), dgp1_truth(generator))


def file_source(handle: IO[str]) -> StreamSource:
    reader = StreamReader(handle)
    return StreamSource(reader.kind, reader.dimension, iter(reader))


class LoggedStream:
    """
    A logged dataset held in memory so each Monte Carlo replicate can draw a
    bootstrap resample of it
    """

    def __init__(self, kind: StreamKind, dimension: int, rows: Sequence[Observation]):
        if not rows:
            raise InvalidInput("logged stream contained no observations")
        self.kind = kind
        self.dimension = dimension
        self.rows = tuple(rows)

    @classmethod
    def from_source(cls, source: StreamSource) -> "LoggedStream":
        return cls(source.kind, source.dimension, list(source.observations))

    def __len__(self) -> int:
        return len(self.rows)


def bootstrap_stream(rows: Sequence[Observation], rng: np.random.Generator) -> Iterator[Observation]:
    """Unbounded stream of rows drawn uniformly with replacement"""
    n = len(rows)
    while True:
        yield rows[int(rng.integers(n))]


def bootstrap_source(logged: LoggedStream, seed: int) -> StreamSource:
    """Bootstrap resample of `logged` driven by the data stream of `seed`"""
    return StreamSource(logged.kind, logged.dimension, bootstrap_stream(logged.rows, data_rng(seed)))
