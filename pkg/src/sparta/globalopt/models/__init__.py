from sparta.globalopt.models.config import SolverConfig  # noqa: F401
from sparta.globalopt.models.report import BoxDump, RunReport, SuiteRow  # noqa: F401
