from sparta.globalopt.bench.registry import get_instance, registry  # noqa: F401
from sparta.globalopt.bench.suite import run_suite, run_suite_async, write_csv  # noqa: F401
from sparta.globalopt.bench.svg import emit_subdivision_svg  # noqa: F401
