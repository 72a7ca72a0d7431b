from typing import Any, ClassVar, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from sparta.globalopt.expression import Expression, parse
from sparta.globalopt.geometry import BoxRegion
from sparta.globalopt.models.config import SolverConfig


class TestInstance(BaseModel):
    """A benchmark problem: objective text, domain and what is known about its minima.

    Attributes:
        name (str): Registry name, e.g. ``"Rastrigin"`` or ``"TestDim_3"``.
        formula (str): Objective in the expression grammar.
        dimension (int): Number of variables.
        box (BoxRegion): Feasible domain.
        known_min_value (float): Global minimum value.
        known_minimizers (List[Tuple[float, ...]]): Global minimisers, empty for instances with a continuum of minimisers.
        expected_count (Optional[int]): Expected number of clustered solutions, None where it depends on the subdivision.
        group (str): ``finite``, ``infinite`` or ``high_dimensional``.
        provenance (str): Origin of the minimiser coordinates: ``published``, ``analytic`` or ``refined``.
        argmin_description (Optional[str]): Description of the set of minimisers where it is not finite.
        filter_tol (Optional[float]): Per-instance override of the solution filter tolerance.
    """

    __test__: ClassVar[bool] = False

    model_config = ConfigDict(frozen=True)

    name: str
    formula: str
    dimension: int
    box: BoxRegion
    known_min_value: float
    known_minimizers: List[Tuple[float, ...]] = []
    expected_count: Optional[int] = None
    group: Literal["finite", "infinite", "high_dimensional"]
    provenance: Literal["published", "analytic", "refined"]
    argmin_description: Optional[str] = None
    filter_tol: Optional[float] = None

    def expression(self) -> Expression:
        return parse(self.formula, self.dimension)

    def solver_config(self, cfg: Optional[SolverConfig] = None) -> SolverConfig:
        """Merges the instance overrides into ``cfg``; fields explicitly set on ``cfg`` win over the instance, the instance wins over defaults."""
        values: dict[str, Any] = {}
        if self.filter_tol is not None:
            values["filter_tol"] = self.filter_tol
        if cfg is not None:
            values.update(cfg.model_dump(include=cfg.model_fields_set))
        return SolverConfig(**values)
