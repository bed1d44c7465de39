"""
Context Binning
Quantile bins of a context norm, with edges frozen after a warm-up sample
"""

import logging
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np

from src.utils.errors import InvalidInput

logger = logging.getLogger(__name__)


class BinningKind(str, Enum):
    NORM = "norm"
    CENTERED_NORM = "centered-norm"


def binning_feature(kind: BinningKind, x: np.ndarray) -> float:
    """||x||_2, or ||x - 0.5||_2 for the centered variant"""
    x = np.asarray(x, dtype=float)
    if kind == BinningKind.CENTERED_NORM:
        x = x - 0.5
    return float(np.linalg.norm(x))


class Binning:
    """
    Maps a context to one of `bins` indices.

    Edges are the inner (1/b, ..., (b-1)/b) quantiles of the feature over the
    first `warmup` contexts seen through `observe`; after that they never
    move, so a context's bin does not depend on later data.
    """

    def __init__(
        self,
        bins: int,
        kind: BinningKind = BinningKind.CENTERED_NORM,
        warmup: int = 200,
        edges: Optional[Sequence[float]] = None,
    ):
        if bins < 1:
            raise InvalidInput("bins must be >= 1", {"bins": bins})
        if warmup < 1:
            raise InvalidInput("warmup must be >= 1", {"warmup": warmup})
        self.bins = bins
        self.kind = BinningKind(kind)
        self.warmup = warmup
        self._features: List[float] = []
        self.edges: Optional[np.ndarray] = None
        if edges is not None:
            self.freeze_edges(edges)

    @classmethod
    def from_edges(cls, edges: Sequence[float], kind: BinningKind = BinningKind.CENTERED_NORM) -> "Binning":
        return cls(len(edges) + 1, kind, edges=edges)

    @property
    def frozen(self) -> bool:
        return self.edges is not None

    def freeze_edges(self, edges: Sequence[float]) -> None:
        edges = np.asarray(edges, dtype=float).ravel()
        if edges.size != self.bins - 1 or np.any(np.diff(edges) < 0):
            raise InvalidInput("need bins - 1 ascending edges", {"edges": edges.tolist()})
        self.edges = edges

    def observe(self, x: np.ndarray) -> bool:
        """Record a warm-up context; returns True once edges are frozen"""
        if self.frozen:
            return True
        self._features.append(binning_feature(self.kind, x))
        if len(self._features) >= self.warmup:
            probs = np.arange(1, self.bins) / self.bins
            self.freeze_edges(np.quantile(self._features, probs))
            logger.debug(f"Froze {self.bins} bin edges after {len(self._features)} contexts: {self.edges}")
            self._features = []
        return self.frozen

    def assign(self, x: np.ndarray) -> int:
        """Bin index in {0, ..., bins - 1}"""
        if not self.frozen:
            raise InvalidInput("bin edges are not frozen yet")
        return int(np.searchsorted(self.edges, binning_feature(self.kind, x), side="right"))
