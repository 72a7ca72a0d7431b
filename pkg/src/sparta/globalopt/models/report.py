from pathlib import Path
from typing import List, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from sparta.globalopt.errors import ReportError


class BoxDump(BaseModel):
    """A box of the final subdivision and the list it ended up in."""

    membership: Literal["convex", "active", "discarded"]
    lower: List[float]
    upper: List[float]


class RunReport(BaseModel):
    """Result of one solver run.

    ``flag_ter`` is 1 if the run ended with an empty active list and 0 if it ended because every active box had a modified width of at most ``epsilon`` (or
    because the iteration cap was hit, in which case ``truncated`` is set). ``wall_time`` is kept in memory only, so report files of identical runs are
    byte-identical.
    """

    function: str
    dimension: int
    domain: str
    epsilon: float
    iterations: int
    flag_ter: Literal[0, 1]
    truncated: bool = False
    f_min: Optional[float]
    solutions: List[List[float]]
    solution_values: List[float]
    clusters: List[List[float]]
    n_eps: int
    boxes_convex: int
    boxes_active: int
    boxes_discarded: int
    pool_size: int
    boxes: Optional[List[BoxDump]] = None
    wall_time: float = Field(default=0.0, exclude=True)

    def summary(self) -> str:
        return f"iter={self.iterations} n_eps={self.n_eps} f_min={self.f_min} flag_ter={self.flag_ter}"

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.model_dump_json(indent=2) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "RunReport":
        """Reads a report file.

        Raises:
            OSError: If the file cannot be read.
            ReportError: If the content is not a valid report.
        """
        text = Path(path).read_text(encoding="utf-8")
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            raise ReportError(f"Cannot load report ({path}): {e.error_count()} validation errors") from e


class SuiteRow(BaseModel):
    """One row of a benchmark table."""

    name: str
    iter: int
    wall_ms: float
    n_eps: int
    flag_ter: Literal[0, 1]
    f_min: Optional[float]
