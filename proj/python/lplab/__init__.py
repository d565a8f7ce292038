"""Certified second-quotient analysis of entire functions with positive coefficients."""

import json

from ._lplab import (
    classify_roots,
    compute_c,
    from_quotients,
    hutchinson_check,
    q_infinity,
    quotients,
    verify,
    version,
)

__all__ = [
    "analyze",
    "classify_roots",
    "compute_c",
    "from_quotients",
    "hutchinson_check",
    "q_infinity",
    "quotients",
    "verify",
    "version",
]
__version__ = version()


def _strings(values):
    return [str(v) for v in values]


def analyze(family=None, params=None, coeffs=None, quotients=None, degree=None, mode="exact", bits=256,
            tol="1e-9", cache=None, disks=()):
    """Run every criterion; returns (report dict, exit code 0/3/4)."""
    from ._lplab import analyze_json

    text, code = analyze_json(
        family=family,
        params={k: str(v) for k, v in (params or {}).items()},
        coeffs=None if coeffs is None else str(coeffs),
        quotients=None if quotients is None else str(quotients),
        degree=-1 if degree is None else int(degree),
        mode=mode,
        bits=bits,
        tol=str(tol),
        cache=None if cache is None else str(cache),
        disks=list(disks),
    )
    return json.loads(text), code
