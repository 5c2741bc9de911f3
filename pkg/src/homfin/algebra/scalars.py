# src/homfin/algebra/scalars.py

"""
Exact coefficient fields.

Scalars are sympy domain elements: ``QQ`` (arbitrary-precision rationals in
lowest terms) and ``GF(p)`` with canonical representatives in ``[0, p)``.
No floating point ever enters the engine.
"""

import re
from functools import lru_cache

from sympy import isprime
from sympy.polys.domains import QQ, GF
from sympy.polys.domains.domain import Domain

from homfin.core.exceptions import FieldSpecError

_GF_PATTERN = re.compile(r"^\s*(?:GF|F)\s*\(\s*(\d+)\s*\)\s*$", re.IGNORECASE)


@lru_cache(maxsize=None)
def parse_field(spec: str) -> Domain:
    """
    Turns a field spec such as ``"Q"`` or ``"GF(3)"`` into a sympy domain.

    Raises:
        FieldSpecError: if the spec is unknown or p is not prime.
    """
    text = spec.strip()
    if text.upper() in ("Q", "QQ"):
        return QQ
    match = _GF_PATTERN.match(text)
    if not match:
        raise FieldSpecError(f"Unknown field spec '{spec}'. Use Q or GF(p).")
    p = int(match.group(1))
    if not isprime(p):
        raise FieldSpecError(f"GF({p}) is not a field: {p} is not prime.")
    return GF(p, symmetric=False)


def field_name(K: Domain) -> str:
    if K == QQ:
        return "Q"
    return f"GF({K.characteristic()})"


def scalar(K: Domain, value) -> object:
    """Converts an int (or a sympy Rational) into an element of K."""
    return K.convert(value)


def format_scalar(K: Domain, c) -> str:
    return str(K.to_sympy(c))


def same_field(K1: Domain, K2: Domain) -> bool:
    return field_name(K1) == field_name(K2)
