"""
균일 (t, x) 격자
"""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Grid(BaseModel):
    """x 방향 nx 개 노드, t 방향 nt 스텝 (nt + 1 개 시각)"""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    x_lo: float = 0.0
    x_hi: float = 1.0
    nx: int = Field(101, ge=3)
    t_lo: float = 0.0
    t_hi: float = 1.0
    nt: int = Field(100, ge=1)

    @model_validator(mode="after")
    def _ordered(self) -> "Grid":
        if not self.x_hi > self.x_lo:
            raise ValueError(f"x_hi must exceed x_lo, got [{self.x_lo}, {self.x_hi}]")
        if not self.t_hi > self.t_lo:
            raise ValueError(f"t_hi must exceed t_lo, got [{self.t_lo}, {self.t_hi}]")
        return self

    @property
    def h(self) -> float:
        return (self.x_hi - self.x_lo) / (self.nx - 1)

    @property
    def dt(self) -> float:
        return (self.t_hi - self.t_lo) / self.nt

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_lo, self.x_hi, self.nx)

    @property
    def t(self) -> np.ndarray:
        return np.linspace(self.t_lo, self.t_hi, self.nt + 1)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """(T, X), shape (nt + 1, nx)"""
        return np.meshgrid(self.t, self.x, indexing="ij")
