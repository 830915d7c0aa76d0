"""Shared plumbing: configuration, errors, console logging, thread pool, report writers."""
from toruspdo.helper.config import RunConfig, build_run_config, is_power_of_two
from toruspdo.helper.console import log
from toruspdo.helper.errors import TorusPdoError
from toruspdo.helper.output import dump_json, dumps_json, frame_to_csv, read_csv_exact
from toruspdo.helper.parallel import parallel_map, thread_count

__all__ = [
    "RunConfig",
    "build_run_config",
    "is_power_of_two",
    "log",
    "TorusPdoError",
    "dump_json",
    "dumps_json",
    "frame_to_csv",
    "read_csv_exact",
    "parallel_map",
    "thread_count",
]
