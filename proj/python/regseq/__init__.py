"""Single-pass instruction sequences over Boolean registers."""

import json

from ._core import (
    ParseError,
    Program,
    SearchAborted,
    TruthTable,
    complement,
    complement_transform,
    computes,
    eliminate_input,
    exists_program,
    extract_function,
    family_length,
    mask_unreachable,
    minimal_length_report,
    parity,
    parse,
    pis0,
    pis1,
    reachable_positions,
    render,
    run,
    separation,
    strip_run_info,
    strip_skips,
    trace,
)


def minimal_length(table, max_len, **kwargs):
    """Iterative deepening search; returns the report as a dict."""
    return json.loads(minimal_length_report(table, max_len, **kwargs))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
