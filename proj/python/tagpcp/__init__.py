from ._core import (
    CompiledSystem,
    Error,
    bfs_solve,
    compile,
    cyclic_trace,
    load_compiled,
    match_replay,
    reduce_to_pcp,
    simulate,
    tag_run,
    verify_solution,
)

__all__ = [
    "CompiledSystem",
    "Error",
    "bfs_solve",
    "compile",
    "cyclic_trace",
    "load_compiled",
    "match_replay",
    "reduce_to_pcp",
    "simulate",
    "tag_run",
    "verify_solution",
]
