"""
GCWSNet version information.

Read from package metadata so the CLI and the distribution stay in sync.
"""

from importlib.metadata import PackageNotFoundError
from importlib.metadata import version as _dist_version


def get_version() -> str:
    try:
        return _dist_version("gcwsnet")
    except PackageNotFoundError:
        # Fallback for source execution without install
        return "0.0.0+dev"


__version__ = get_version()
