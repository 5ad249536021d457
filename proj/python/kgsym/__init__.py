"""Exact symmetry, conservation-law and reduction checks for
(1/eps) u_tt + u_xx + u_yy + V u = 0."""

from pathlib import Path

from ._kgsym import (
    CheckRecord,
    DataError,
    Expr,
    MathError,
    ParseError,
    Report,
    Status,
    catalog,
    classify,
    conserved_vector,
    constraint_residual,
    default_data_dir,
    invariance_residual,
    parse,
    reduce,
    set_jobs,
)
from ._kgsym import verify as _verify

_PACKAGE_DATA = Path(__file__).parent / "data"


def data_dir() -> Path:
    """Data files shipped with the package, else the ones of the source tree."""
    return _PACKAGE_DATA if _PACKAGE_DATA.is_dir() else Path(default_data_dir())


def verify(suite, table="", data_dir=None, eps="both"):
    """Run one verification suite and return its Report.

    suite is one of catalog, brackets, subalgebras, potentials (with table
    "3", "4", "grid" or "grid1"), invariants, noether, conservation,
    reductions, wave.
    """
    return _verify(suite, table, Path(data_dir) if data_dir else globals()["data_dir"](), eps)


__all__ = [
    "CheckRecord",
    "DataError",
    "Expr",
    "MathError",
    "ParseError",
    "Report",
    "Status",
    "catalog",
    "classify",
    "conserved_vector",
    "constraint_residual",
    "data_dir",
    "invariance_residual",
    "parse",
    "reduce",
    "set_jobs",
    "verify",
]
