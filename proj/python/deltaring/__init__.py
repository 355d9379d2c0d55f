"""delta-ring arithmetic on truncated Witt rings and group rings."""

import json
import os
import sys

from ._core import (
    DeltaRingError,
    artin_schreier_kernel_size,
    bass_unit,
    classify_integral,
    delta,
    frobenius,
    higman_only_trivial,
    integral_delta,
    rank_one_units,
    run_command,
)

__all__ = [
    "CommandError",
    "DeltaRingError",
    "artin_schreier_kernel_size",
    "bass_unit",
    "classify_integral",
    "delta",
    "frobenius",
    "higman_only_trivial",
    "integral_delta",
    "rank_one_units",
    "run",
    "run_command",
]


class CommandError(DeltaRingError):
    """A subcommand exited nonzero; carries the exit code and error payload."""

    def __init__(self, exit_code, kind, detail):
        super().__init__(kind, detail)
        self.exit_code = exit_code
        self.kind = kind
        self.detail = detail


def run(*args):
    """Run a subcommand and return its decoded JSON payload.

    Raises CommandError when the exit code is nonzero.
    """
    code, output = run_command([str(a) for a in args])
    payload = json.loads(output)
    if code != 0:
        err = payload["error"]
        raise CommandError(code, err["kind"], err["detail"])
    return payload


def _cli():
    exe = os.path.join(os.path.dirname(__file__), "bin", "deltaring")
    os.execv(exe, [exe, *sys.argv[1:]])
