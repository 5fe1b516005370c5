"""Run configuration shared by the classifier, scanner and CLI."""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .errors import ContractError
from .monodromy import TrackOptions
from .pencil import CENTER_OFF_X_THRESHOLD
from .poly import DEFAULT_CLUSTER_TOL

MAX_DEGREE = 12


@dataclass
class Config:
    seed: int = 0
    sections: int = 3
    retry_cap: int = 5
    cluster_tol: float = DEFAULT_CLUSTER_TOL
    residual_bound: float = 1e-10
    center_off_x_threshold: float = CENTER_OFF_X_THRESHOLD
    max_degree: int = MAX_DEGREE
    workers: int = 1
    json_out: str | None = None

    def __post_init__(self):
        for name in ("cluster_tol", "residual_bound", "center_off_x_threshold"):
            if not getattr(self, name) > 0:
                raise ContractError(f"{name} must be positive")
        if self.sections < 1:
            raise ContractError("at least one section is required")
        if self.retry_cap < 0 or self.workers < 1:
            raise ContractError("retry_cap must be >= 0 and workers >= 1")
        if not 2 <= self.max_degree <= 20:
            raise ContractError("max_degree must lie in [2, 20]")

    def track_options(self) -> TrackOptions:
        return TrackOptions(residual_rel=self.residual_bound, cluster_tol=self.cluster_tol)

    def to_json(self):
        out = asdict(self)
        out.pop("json_out")
        return out
