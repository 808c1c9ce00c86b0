"""qlab: an exact q-series laboratory.

Truncated Laurent series over exact rationals, a catalog of named
generating functions for restricted overpartitions and concave
compositions, brute-force combinatorial oracles, a registry of verified
q-series identities, and high-precision asymptotic checks.
"""

from qlab.series import (
    INF,
    DivergentProduct,
    LaurentSeries,
    Mono,
    PochSpec,
    QTerm,
    SeriesError,
    TermGenerator,
    ValuationViolation,
    ZeroLeadingCoefficient,
    ZetaPolynomial,
    parse_zeta,
    pochhammer,
    specialize_zeta,
    sum_terms,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "DivergentProduct",
    "LaurentSeries",
    "Mono",
    "PochSpec",
    "QTerm",
    "SeriesError",
    "TermGenerator",
    "ValuationViolation",
    "ZeroLeadingCoefficient",
    "ZetaPolynomial",
    "parse_zeta",
    "pochhammer",
    "specialize_zeta",
    "sum_terms",
    "__version__",
]
