"""Exact rational backend.

All spectral parameters, inhomogeneities, twists and residuals live in Q.
gmpy2.mpq is used when available (roughly an order of magnitude faster on the
dense operator products); fractions.Fraction is the drop-in fallback. Both
keep the denominator positive and the fraction reduced after every operation,
and both print as "p/q" with the sign on the numerator ("p" when q == 1),
which is the wire format used in configs and reports.
"""

from __future__ import annotations

import re

try:
    from gmpy2 import mpq as _ratio

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _ratio

    BACKEND = "fractions"

_RAT_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def rat(p, q=1):
    """Exact rational p/q."""
    return _ratio(p, q)


ZERO = rat(0)
ONE = rat(1)


def is_rational(x) -> bool:
    return isinstance(x, (int, type(ZERO)))


def rat_from_str(s: str):
    """Parse the "p/q" wire format (q omitted when 1, sign on p only)."""
    s = s.strip()
    if not _RAT_RE.match(s):
        raise ValueError(f"not a rational literal: {s!r}")
    if "/" in s:
        p, q = s.split("/")
        return rat(int(p), int(q))
    return rat(int(s))


def rat_to_str(x) -> str:
    return str(rat(x))
