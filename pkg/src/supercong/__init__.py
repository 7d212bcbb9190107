"""Mechanical verification of supercongruences for sums of rational binomial coefficients."""
from .arith import PadicParam, Residue, decompose, fermat_quotient, harmonic, reduce
from .catalog import CANONICAL_PARAMS, CheckResult, CongruenceCheck, Report, catalog, evaluate, scan

__version__ = "0.1.0"

__all__ = [
    "PadicParam",
    "Residue",
    "decompose",
    "fermat_quotient",
    "harmonic",
    "reduce",
    "CANONICAL_PARAMS",
    "CheckResult",
    "CongruenceCheck",
    "Report",
    "catalog",
    "evaluate",
    "scan",
]
