"""Blocking measures, second-class particles and partition identities for ASEP.

Thin re-export of the compiled extension. Parameters are plain floats and
lists; `q` must lie strictly inside (0, 1).
"""

from ._asep_lab import *  # noqa: F401,F403
from ._asep_lab import __doc__  # noqa: F401


def main() -> int:
    import sys

    code, out, err = run_cli(sys.argv[1:])  # noqa: F405
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
