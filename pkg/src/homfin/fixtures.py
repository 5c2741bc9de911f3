# src/homfin/fixtures.py

"""
Built-in algebras and monoids shared by the verification suite and the tests.
"""

from itertools import permutations
from typing import Callable, Dict, Tuple

from homfin.algebra.group_rings import FiniteGroup, FiniteMonoid, validate_and_build
from homfin.algebra.groebner import GradedAlgebra
from homfin.algebra.presentation import build_presentation
from homfin.algebra.scalars import parse_field


# -----------------------------------------------------------------------------
# Graded Algebras
# -----------------------------------------------------------------------------

def poly1(D: int, field: str = "Q") -> GradedAlgebra:
    return GradedAlgebra(build_presentation(parse_field(field), [("x", 1)]), D, name="K[x]")


def poly2(D: int, field: str = "Q") -> GradedAlgebra:
    pres = build_presentation(parse_field(field), [("x", 1), ("y", 1)], ["x*y - y*x"])
    return GradedAlgebra(pres, D, name="K[x,y]")


def free2(D: int, field: str = "Q") -> GradedAlgebra:
    return GradedAlgebra(build_presentation(parse_field(field), [("x", 1), ("y", 1)]), D, name="K<x,y>")


def exterior2(D: int, field: str = "Q") -> GradedAlgebra:
    pres = build_presentation(parse_field(field), [("x", 1), ("y", 1)], ["x^2", "y^2", "x*y + y*x"])
    return GradedAlgebra(pres, D, name="Λ(x,y)")


def cubic(D: int, field: str = "Q") -> GradedAlgebra:
    """K<x, y>/(x²y − yx²), a non-commutative algebra with a non-trivial opposite."""
    pres = build_presentation(parse_field(field), [("x", 1), ("y", 1)], ["x^2*y - y*x^2"])
    return GradedAlgebra(pres, D, name="K<x,y>/(x²y-yx²)")


ALGEBRAS: Dict[str, Callable[..., GradedAlgebra]] = {
    "poly1": poly1,
    "poly2": poly2,
    "free2": free2,
    "exterior2": exterior2,
    "cubic": cubic,
}


# -----------------------------------------------------------------------------
# Monoids and Groups
# -----------------------------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    names = ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
    rows = [[names[(i + j) % n] for j in range(n)] for i in range(n)]
    return validate_and_build(names, rows, name=f"C{n}")


def trivial_group() -> FiniteGroup:
    return validate_and_build(["1"], [["1"]], name="1")


def symmetric_group(k: int = 3) -> FiniteGroup:
    """S_k acting on {0, ..., k−1}; (στ)(i) = σ(τ(i))."""
    perms = sorted(permutations(range(k)))
    identity = tuple(range(k))
    perms.remove(identity)
    perms.insert(0, identity)
    names = ["".join(str(i) for i in p) for p in perms]
    lookup = {p: name for p, name in zip(perms, names)}
    rows = [[lookup[tuple(s[t[i]] for i in range(k))] for t in perms] for s in perms]
    return validate_and_build(names, rows, name=f"S{k}")


def semilattice() -> FiniteMonoid:
    """{1, e} with e² = e."""
    return validate_and_build(["1", "e"], [["1", "e"], ["e", "e"]], name="L2")


MONOIDS: Dict[str, Callable[[], FiniteMonoid]] = {
    "c2": lambda: cyclic_group(2),
    "c3": lambda: cyclic_group(3),
    "s3": lambda: symmetric_group(3),
    "trivial": trivial_group,
    "semilattice": semilattice,
}


def group_cases() -> Tuple[Tuple[FiniteGroup, str], ...]:
    """The (group, field) pairs used for the ⊗̂ round trip."""
    return (
        (cyclic_group(2), "GF(2)"),
        (cyclic_group(3), "GF(3)"),
        (symmetric_group(3), "GF(3)"),
        (cyclic_group(2), "Q"),
    )
