from pydantic import BaseModel, ConfigDict, Field, model_validator

from sparta.globalopt import constants


class SolverConfig(BaseModel):
    """Tolerances and limits of a solver run.

    Attributes:
        epsilon (float): Termination threshold on the largest modified width in the active list.
        discard_margin (float): Margin added to ``v_glob`` when deciding whether a freshly solved child survives.
        inner_tol (float): Projected-gradient tolerance of the convex sub-solver; must be below ``epsilon``.
        inner_max_iters (int): Iteration cap of the convex sub-solver.
        filter_tol (float): Tolerance of the final filter over the candidate pool.
        cluster_delta (float): Euclidean radius used to merge nearby solutions.
        max_outer_iters (int): Safety cap on outer iterations.
        interval_slack (float): Relative outward widening of Hessian enclosures.
        inner_step_init (float): First trial step; later trial steps come from the Barzilai-Borwein quotient of the last two iterates.
        inner_step_shrink (float): Backtracking factor.
        inner_armijo (float): Sufficient-decrease constant.
        degenerate_width (float): Widths at or below this value are treated as zero when computing alpha.
        dump_boxes (bool): Whether reports include the final box lists.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    epsilon: float = Field(default=constants.EPSILON, gt=0)
    discard_margin: float = Field(default=constants.DISCARD_MARGIN, gt=0)
    inner_tol: float = Field(default=constants.INNER_TOL, gt=0)
    inner_max_iters: int = Field(default=constants.INNER_MAX_ITERS, gt=0)
    filter_tol: float = Field(default=constants.FILTER_TOL, gt=0)
    cluster_delta: float = Field(default=constants.CLUSTER_DELTA, gt=0)
    max_outer_iters: int = Field(default=constants.MAX_OUTER_ITERS, gt=0)
    interval_slack: float = Field(default=0.0, ge=0)
    inner_step_init: float = Field(default=constants.INNER_STEP_INIT, gt=0)
    inner_step_shrink: float = Field(default=constants.INNER_STEP_SHRINK, gt=0, lt=1)
    inner_armijo: float = Field(default=constants.INNER_ARMIJO, gt=0, lt=1)
    degenerate_width: float = Field(default=constants.DEGENERATE_WIDTH, gt=0)
    dump_boxes: bool = True

    @model_validator(mode="after")
    def _check_inner_tol(self) -> "SolverConfig":
        if self.inner_tol >= self.epsilon:
            raise ValueError(f"inner_tol ({self.inner_tol}) must be smaller than epsilon ({self.epsilon})")
        return self
