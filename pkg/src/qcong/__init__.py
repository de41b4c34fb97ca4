"""Exact verification of q-congruences for sums of q-binomial products."""

from __future__ import annotations

__version__ = "0.1.0"

from qcong._backend import NAME as BACKEND  # noqa: E402
from qcong.congruence import Modulus, Verdict, divides, quotient  # noqa: E402
from qcong.cyclotomic import CycSignature, cyclotomic, expand_signature  # noqa: E402
from qcong.laurent import LaurentPoly, parse, render  # noqa: E402

__all__ = [
    "__version__",
    "BACKEND",
    "LaurentPoly",
    "parse",
    "render",
    "CycSignature",
    "cyclotomic",
    "expand_signature",
    "Modulus",
    "Verdict",
    "divides",
    "quotient",
]
