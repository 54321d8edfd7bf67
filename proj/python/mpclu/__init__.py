"""Multiple-precision complex matrix products and LU solves."""

from ._mpclu import (
    CSV_HEADER,
    ConfigError,
    DimensionError,
    Error,
    ParseError,
    SingularError,
    bench,
    cgemm,
    eps,
    format,
    lu,
    matmul_bench,
    parse,
    solve,
    verify,
)

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "DimensionError",
    "Error",
    "ParseError",
    "SingularError",
    "bench",
    "cgemm",
    "eps",
    "format",
    "lu",
    "matmul_bench",
    "parse",
    "solve",
    "verify",
]
