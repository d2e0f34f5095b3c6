"""Exact Okounkov bodies on surfaces and Mori dream threefolds.

Thin re-export of the compiled extension; all rationals cross the boundary
as "p/q" strings (or plain ints), so results stay exact.
"""

try:
    from ._okbody import (  # type: ignore[attr-defined]
        AdmissibilityError,
        ModelError,
        Surface,
        Threefold,
        oracle_hull,
        set_threads,
        surface_names,
        threefold_names,
    )
except ImportError:  # extension built outside the package directory
    from _okbody import (  # type: ignore[no-redef]
        AdmissibilityError,
        ModelError,
        Surface,
        Threefold,
        oracle_hull,
        set_threads,
        surface_names,
        threefold_names,
    )

__all__ = [
    "AdmissibilityError",
    "ModelError",
    "Surface",
    "Threefold",
    "oracle_hull",
    "set_threads",
    "surface_names",
    "threefold_names",
]
