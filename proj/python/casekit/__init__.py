"""Python face of the assurance case toolchain.

The heavy lifting lives in the compiled extension. An installed wheel
carries it inside this package; a build-tree checkout puts it on the
path as a top-level module, so both locations are tried.
"""

try:
    from ._casekit import (
        canonical,
        check,
        classify,
        confirm,
        derive_requirements,
        dpn_reach,
        dpn_replay,
        ko_measure,
        resilience_verify,
        status,
    )
except ImportError:
    from _casekit import (
        canonical,
        check,
        classify,
        confirm,
        derive_requirements,
        dpn_reach,
        dpn_replay,
        ko_measure,
        resilience_verify,
        status,
    )

__all__ = [
    "canonical",
    "check",
    "classify",
    "confirm",
    "derive_requirements",
    "dpn_reach",
    "dpn_replay",
    "ko_measure",
    "resilience_verify",
    "status",
]
