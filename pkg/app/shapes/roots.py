"""Root data of the classical families in dual-group coordinates.

A character lambda is handed over as the exponent multiset of a semisimple
conjugacy class in the dual group; coroots of G are roots of the dual group,
so pairings are read off that multiset directly.
"""

from fractions import Fraction
from itertools import combinations
from typing import List

from app.combinatorics.schemas import LaurentPoly
from app.errors import InputValidationError
from app.shapes.schemas import GroupFactor, GroupFamily

UNITARY = (GroupFamily.U_PLUS, GroupFamily.U_MINUS)


def dual_size(group: GroupFactor) -> int:
    """Size of the standard representation of the dual group."""
    if group.family == GroupFamily.SP:
        return group.size + 1
    if group.family == GroupFamily.SO_ODD:
        return group.size - 1
    return group.size


def coordinates(group: GroupFactor, lam: LaurentPoly) -> List[Fraction]:
    """Dominant coordinates (lambda_1 >= ... >= lambda_n) of lam for the group."""
    if any(c < 0 for _, c in lam.terms):
        raise InputValidationError(f"{lam} has a negative coefficient")
    if lam.evaluate_at_one() != dual_size(group):
        raise InputValidationError(
            f"{group} needs a character of rank {dual_size(group)}, got {lam.evaluate_at_one()}"
        )
    exponents = sorted((e.value for e in lam.expand()), reverse=True)
    if group.family in UNITARY:
        return exponents
    if not lam.is_symmetric():
        raise InputValidationError(f"{lam} is not invariant under X -> X^-1")
    positives = [e for e in exponents if e > 0]
    zeros = sum(1 for e in exponents if e == 0)
    coords = positives + [Fraction(0)] * (zeros // 2)
    if len(coords) != group.rank:
        raise InputValidationError(f"{lam} does not fit the torus of {group}")
    return coords


def pairings(family: GroupFamily, coords: List[Fraction]) -> List[Fraction]:
    """<alpha^vee, lambda> over the positive roots alpha of G."""
    values = [a - b for a, b in combinations(coords, 2)]
    if family in UNITARY:
        return values
    values += [a + b for a, b in combinations(coords, 2)]
    if family == GroupFamily.SO_ODD:
        values += [2 * a for a in coords]
    elif family == GroupFamily.SP:
        values += list(coords)
    return values


def rho(group: GroupFactor) -> List[Fraction]:
    n = group.rank
    if group.family == GroupFamily.SO_ODD:
        return [Fraction(2 * (n - i) - 1, 2) for i in range(n)]
    if group.family == GroupFamily.SP:
        return [Fraction(n - i) for i in range(n)]
    if group.family == GroupFamily.SO_EVEN:
        return [Fraction(n - 1 - i) for i in range(n)]
    return [Fraction(n - 1, 2) - i for i in range(n)]


def raw_product(group: GroupFactor, coords: List[Fraction]) -> Fraction:
    product = Fraction(1)
    for value in pairings(group.family, coords):
        product *= value
    return product


def positive_root_count(group: GroupFactor) -> int:
    n = group.rank
    if group.family in UNITARY:
        return n * (n - 1) // 2
    if group.family == GroupFamily.SO_EVEN:
        return n * (n - 1)
    return n * n


def group_dimension(group: GroupFactor) -> int:
    return 2 * positive_root_count(group) + group.rank
